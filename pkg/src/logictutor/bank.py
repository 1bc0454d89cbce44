"""Question bank, attempt state, hint escalation, and session persistence.

Bank files are plain UTF-8 text: one record per question, records separated
by blank lines, each record made of ``key: value`` lines with required keys
id, level, premise and target. Every entry is truth-table checked on load;
a single bad entry rejects the whole file with a line-precise error.

Sessions are anonymous server-issued tokens. State is kept in a small
file-backed JSON store (versioned with a format tag) so progress survives
process restarts; no external database is involved.
"""

from __future__ import annotations

import json
import os
import secrets
import threading
import time
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from typing import Optional

from .expr import Expr, LexError, ParseError, normalize, parse_text, print_canonical, variables
from .frontier import Containment, frontier_contains, frontier_gen
from .rules import RuleId
from .search import (
    HeuristicWeights,
    PRODUCTION_WEIGHTS,
    Proof,
    SearchConfig,
    astar_solve,
)
from .truth import equivalent

LEVELS = ("novice", "learner", "expert")

STORE_FORMAT = "logictutor-sessions/1"


def level_for_steps(steps: int) -> str:
    if steps <= 2:
        return "novice"
    if steps <= 5:
        return "learner"
    return "expert"


class BankFormatError(ValueError):
    def __init__(self, reason: str, line: Optional[int] = None, entry_id: Optional[str] = None):
        self.reason = reason
        self.line = line
        self.entry_id = entry_id
        where = f" (line {line})" if line is not None else ""
        who = f" in entry {entry_id!r}" if entry_id else ""
        super().__init__(f"bank format error{who}{where}: {reason}")


class NonEquivalentQuestion(ValueError):
    def __init__(self, entry_id: str):
        self.entry_id = entry_id
        super().__init__(f"question {entry_id!r}: premise and target are not equivalent")


class UnknownQuestion(KeyError):
    pass


class UnknownSession(KeyError):
    pass


class QuestionCompleted(RuntimeError):
    """Raised when a hint is requested on an already completed question."""


@dataclass(frozen=True)
class Question:
    id: str
    level: str
    premise: Expr
    target: Expr
    witness: Optional[Proof] = field(default=None, compare=False)

    @property
    def phrasing(self) -> str:
        premise = print_canonical(self.premise)
        from .expr import Const

        if self.target == Const(True):
            return f"Prove that {premise} is a Tautology"
        if self.target == Const(False):
            return f"Prove that {premise} is a Fallacy"
        return (
            f"Prove that {premise} is logically equivalent to "
            f"{print_canonical(self.target)}"
        )

    @property
    def vocab(self) -> set[str]:
        return variables(self.premise) | variables(self.target)


def parse_bank(text: str, origin: str = "<bank>") -> list[Question]:
    """Parse and fully validate a bank file's contents."""
    questions: list[Question] = []
    seen_ids: set[str] = set()
    record: dict[str, str] = {}
    record_line = 0

    def flush(at_line: int) -> None:
        nonlocal record
        if not record:
            return
        entry_id = record.get("id")
        for key in ("id", "level", "premise", "target"):
            if key not in record:
                raise BankFormatError(f"missing field {key!r}", record_line, entry_id)
        extra = set(record) - {"id", "level", "premise", "target"}
        if extra:
            raise BankFormatError(
                f"unknown field(s) {sorted(extra)}", record_line, entry_id
            )
        if entry_id in seen_ids:
            raise BankFormatError("duplicate id", record_line, entry_id)
        seen_ids.add(entry_id)
        if record["level"] not in LEVELS:
            raise BankFormatError(
                f"level must be one of {LEVELS}", record_line, entry_id
            )
        try:
            premise = normalize(parse_text(record["premise"]))
            target = normalize(parse_text(record["target"]))
        except (LexError, ParseError) as exc:
            raise BankFormatError(str(exc), record_line, entry_id) from exc
        if not equivalent(premise, target):
            raise NonEquivalentQuestion(entry_id)
        questions.append(
            Question(id=entry_id, level=record["level"], premise=premise, target=target)
        )
        record = {}

    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            if not line:
                flush(number)
            continue
        if ":" not in line:
            raise BankFormatError("expected 'key: value'", number)
        key, _, value = line.partition(":")
        key = key.strip().lower()
        if not record:
            record_line = number
        if key in record:
            raise BankFormatError(f"repeated field {key!r}", number, record.get("id"))
        record[key] = value.strip()
    flush(len(text.splitlines()) + 1)
    if not questions:
        raise BankFormatError("bank contains no questions", None)
    return questions


def load_bank(path: str) -> list[Question]:
    with open(path, encoding="utf-8") as fh:
        return parse_bank(fh.read(), origin=path)


def format_bank(questions: list[Question]) -> str:
    """Serialize questions in the bank file format."""
    blocks = []
    for q in questions:
        blocks.append(
            "\n".join(
                (
                    f"id: {q.id}",
                    f"level: {q.level}",
                    f"premise: {print_canonical(q.premise)}",
                    f"target: {print_canonical(q.target)}",
                )
            )
        )
    return "\n\n".join(blocks) + "\n"


def default_bank_path() -> str:
    return str(resources.files("logictutor").joinpath("data/bank.txt"))


class Bank:
    def __init__(self, questions: list[Question]):
        self.questions = list(questions)
        self.by_id = {q.id: q for q in self.questions}

    @classmethod
    def load(cls, path: Optional[str] = None) -> "Bank":
        return cls(load_bank(path or default_bank_path()))

    def get(self, question_id: str) -> Question:
        try:
            return self.by_id[question_id]
        except KeyError:
            raise UnknownQuestion(question_id) from None

    def filtered(self, level: Optional[str] = None) -> list[Question]:
        if level is None:
            return sorted(self.questions, key=lambda q: q.id)
        return sorted(
            (q for q in self.questions if q.level == level), key=lambda q: q.id
        )


# ---------------------------------------------------------------------------
# Session state

class Status(str, Enum):
    UNTOUCHED = "untouched"
    IN_PROGRESS = "in_progress"
    COMPLETED = "completed"


def _fresh_state(question: Question) -> dict:
    return {
        "status": Status.UNTOUCHED.value,
        "current": print_canonical(question.premise),
        "history": [],  # [rule, expression text, verdict]
        "hint_level": 0,
        "hint_counts": {"rule": 0, "expression": 0, "solution": 0},
        "solved_via_solution": False,
        "created": time.time(),
        "updated": time.time(),
    }


class SessionStore:
    """File-backed key-value store of per-session question state.

    Mutations are serialized under one lock and written atomically, so two
    service replicas sharing the file see a single consistent order.
    """

    def __init__(self, path: Optional[str] = None):
        self.path = path
        self._lock = threading.RLock()
        self._sessions: dict[str, dict] = {}
        if path and os.path.exists(path):
            with open(path, encoding="utf-8") as fh:
                data = json.load(fh)
            if data.get("format") != STORE_FORMAT:
                raise ValueError(f"unsupported session store format: {data.get('format')!r}")
            self._sessions = data["sessions"]

    def _save(self) -> None:
        if not self.path:
            return
        payload = {"format": STORE_FORMAT, "sessions": self._sessions}
        tmp = self.path + ".tmp"
        with open(tmp, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, ensure_ascii=False)
        os.replace(tmp, self.path)

    def create_session(self) -> str:
        with self._lock:
            token = secrets.token_hex(16)
            self._sessions[token] = {}
            self._save()
            return token

    def has_session(self, token: str) -> bool:
        with self._lock:
            return token in self._sessions

    def get_state(self, token: str, question: Question) -> dict:
        with self._lock:
            try:
                session = self._sessions[token]
            except KeyError:
                raise UnknownSession(token) from None
            if question.id not in session:
                session[question.id] = _fresh_state(question)
            return json.loads(json.dumps(session[question.id]))

    def put_state(self, token: str, question_id: str, state: dict) -> None:
        with self._lock:
            try:
                session = self._sessions[token]
            except KeyError:
                raise UnknownSession(token) from None
            state["updated"] = time.time()
            session[question_id] = state
            self._save()

    def question_ids(self, token: str) -> list[str]:
        with self._lock:
            try:
                return sorted(self._sessions[token])
            except KeyError:
                raise UnknownSession(token) from None


# ---------------------------------------------------------------------------
# Tutoring engine

class Verdict(str, Enum):
    VALID = "valid"
    SYNTAX_ERROR = "syntax_error"
    RULE_MISMATCH = "rule_mismatch"
    NOT_ENTAILED = "not_entailed"
    ALREADY_COMPLETE = "already_complete"

    @property
    def student_facing(self) -> str:
        """Collapse the mistake kind: students only see valid/invalid."""
        if self is Verdict.VALID:
            return "valid"
        if self is Verdict.SYNTAX_ERROR:
            return "syntax_error"
        if self is Verdict.ALREADY_COMPLETE:
            return "already_complete"
        return "invalid"


@dataclass(frozen=True)
class StepOutcome:
    verdict: Verdict
    current_expression: str
    completed: bool
    detail: Optional[str] = None
    position: Optional[int] = None


@dataclass(frozen=True)
class HintPayload:
    level: int  # 1 = rule, 2 = rule + expression, 3 = full remaining proof
    rule: Optional[RuleId]
    expression: Optional[str]
    proof: Optional[list] = None  # [(rule, expression text)] for level 3
    completed: bool = False


class Tutor:
    """Session-aware facade over validation, hints and solutions."""

    def __init__(
        self,
        bank: Bank,
        store: SessionStore,
        weights: HeuristicWeights = PRODUCTION_WEIGHTS,
        search_config: Optional[SearchConfig] = None,
    ):
        self.bank = bank
        self.store = store
        self.weights = weights
        self.search_config = search_config or SearchConfig()

    def _solve(self, premise: Expr, target: Expr) -> Proof:
        return astar_solve(premise, target, self.weights, self.search_config)

    def validate_step(
        self, session: str, question_id: str, rule: RuleId, input_text: str
    ) -> StepOutcome:
        question = self.bank.get(question_id)
        state = self.store.get_state(session, question)
        if state["status"] == Status.COMPLETED.value:
            return StepOutcome(
                verdict=Verdict.ALREADY_COMPLETE,
                current_expression=state["current"],
                completed=True,
            )
        try:
            candidate = normalize(parse_text(input_text))
        except (LexError, ParseError) as exc:
            state["status"] = Status.IN_PROGRESS.value
            state["history"].append([rule.value, input_text, Verdict.SYNTAX_ERROR.value])
            self.store.put_state(session, question_id, state)
            return StepOutcome(
                verdict=Verdict.SYNTAX_ERROR,
                current_expression=state["current"],
                completed=False,
                detail=str(exc),
                position=exc.position,
            )
        current = parse_text(state["current"])
        frontier = frontier_gen(current, question.vocab)
        containment = frontier_contains(frontier, rule, candidate)
        state["status"] = Status.IN_PROGRESS.value
        if containment is Containment.HIT:
            text = print_canonical(candidate)
            state["history"].append([rule.value, text, Verdict.VALID.value])
            state["current"] = text
            state["hint_level"] = 0
            completed = candidate == question.target
            if completed:
                state["status"] = Status.COMPLETED.value
            self.store.put_state(session, question_id, state)
            return StepOutcome(
                verdict=Verdict.VALID, current_expression=text, completed=completed
            )
        verdict = (
            Verdict.RULE_MISMATCH
            if containment is Containment.RULE_MISMATCH
            else Verdict.NOT_ENTAILED
        )
        state["history"].append([rule.value, print_canonical(candidate), verdict.value])
        self.store.put_state(session, question_id, state)
        return StepOutcome(
            verdict=verdict,
            current_expression=state["current"],
            completed=False,
        )

    def request_hint(self, session: str, question_id: str) -> HintPayload:
        question = self.bank.get(question_id)
        state = self.store.get_state(session, question)
        if state["status"] == Status.COMPLETED.value:
            raise QuestionCompleted(question_id)
        current = parse_text(state["current"])
        state["status"] = Status.IN_PROGRESS.value
        proof = self._solve(current, question.target)
        if state["hint_level"] == 0:
            state["hint_level"] = 1
            state["hint_counts"]["rule"] += 1
            payload = HintPayload(
                level=1,
                rule=proof.steps[0].rule if proof.steps else None,
                expression=None,
            )
        elif state["hint_level"] == 1:
            state["hint_level"] = 2
            state["hint_counts"]["expression"] += 1
            step = proof.steps[0] if proof.steps else None
            payload = HintPayload(
                level=2,
                rule=step.rule if step else None,
                expression=print_canonical(step.expr) if step else None,
            )
        else:
            state["hint_counts"]["solution"] += 1
            state["status"] = Status.COMPLETED.value
            state["solved_via_solution"] = True
            steps = [
                (step.rule.value, print_canonical(step.expr)) for step in proof.steps
            ]
            payload = HintPayload(
                level=3,
                rule=None,
                expression=None,
                proof=steps,
                completed=True,
            )
        self.store.put_state(session, question_id, state)
        return payload

    def solution(self, question_id: str) -> Proof:
        question = self.bank.get(question_id)
        return self._solve(question.premise, question.target)

    def reset(self, session: str, question_id: str) -> None:
        question = self.bank.get(question_id)
        self.store.get_state(session, question)  # raises UnknownSession
        self.store.put_state(session, question_id, _fresh_state(question))

    def progress(self, session: str) -> dict:
        if not self.store.has_session(session):
            raise UnknownSession(session)
        statuses: dict[str, str] = {}
        for question in self.bank.questions:
            state = self.store.get_state(session, question)
            statuses[question.id] = state["status"]
        by_level = {}
        for level in LEVELS:
            questions = [q for q in self.bank.questions if q.level == level]
            by_level[level] = {
                "total": len(questions),
                "completed": sum(
                    1
                    for q in questions
                    if statuses[q.id] == Status.COMPLETED.value
                ),
            }
        return {"questions": statuses, "levels": by_level}

    def step_history(self, session: str, question_id: str) -> list:
        question = self.bank.get(question_id)
        return self.store.get_state(session, question)["history"]
