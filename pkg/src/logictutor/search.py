"""Time-bound, depth-limited A* over the rewrite graph.

Edges cost 1, so g is the proof length. h is a weighted linear combination
of surface comparators between a candidate and the target plus a per-rule
prior; the weights carry no admissibility or consistency guarantee (several
are negative), so the search is budgeted rather than optimal: on timeout it
returns the path to the lowest-f node seen.
"""

from __future__ import annotations

import heapq
import json
import re
import time
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Optional

from .expr import Expr, normalize, parse_text, print_canonical, variables
from .frontier import frontier_gen
from .rules import RuleId, neighbor_texts, rule_from_name

WEIGHT_MIN, WEIGHT_MAX = -10.0, 10.0


@dataclass(frozen=True)
class HeuristicWeights:
    """Weight vector over the comparator ensemble and per-rule priors."""

    unitary: float
    levenshtein: float
    variable_mismatch: float
    length_difference: float
    start: float
    rules: Mapping[RuleId, float]

    def __post_init__(self):
        for name, value in self.components():
            if not WEIGHT_MIN <= value <= WEIGHT_MAX:
                raise ValueError(f"weight {name} = {value} outside [-10, 10]")
        missing = [r for r in RuleId if r not in self.rules]
        if missing:
            raise ValueError(f"missing rule weights: {[r.value for r in missing]}")

    def components(self) -> list[tuple[str, float]]:
        out = [
            ("unitary", self.unitary),
            ("levenshtein", self.levenshtein),
            ("variable_mismatch", self.variable_mismatch),
            ("length_difference", self.length_difference),
            ("start", self.start),
        ]
        out.extend((r.value, self.rules[r]) for r in RuleId)
        return out

    def to_dict(self) -> dict:
        return {
            "unitary": self.unitary,
            "levenshtein": self.levenshtein,
            "variable_mismatch": self.variable_mismatch,
            "length_difference": self.length_difference,
            "start": self.start,
            "rules": {r.value: w for r, w in self.rules.items()},
        }

    @classmethod
    def from_dict(cls, data: dict) -> "HeuristicWeights":
        return cls(
            unitary=float(data["unitary"]),
            levenshtein=float(data["levenshtein"]),
            variable_mismatch=float(data["variable_mismatch"]),
            length_difference=float(data["length_difference"]),
            start=float(data["start"]),
            rules={
                rule_from_name(name): float(w)
                for name, w in data["rules"].items()
            },
        )

    def save(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_dict(), fh, indent=2, ensure_ascii=False)
            fh.write("\n")

    @classmethod
    def load(cls, path: str) -> "HeuristicWeights":
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))


# Shipped weights for the comparator ensemble, tuned for the deployed rule
# set; the double-negation prior defaults to neutral.
PRODUCTION_WEIGHTS = HeuristicWeights(
    unitary=3.76,
    levenshtein=3.36,
    variable_mismatch=6.09,
    length_difference=1.53,
    start=1.44,
    rules={
        RuleId.ABSORPTION: -3.88,
        RuleId.ASSOCIATIVITY: 1.94,
        RuleId.COMMUTATIVITY: -8.07,
        RuleId.DE_MORGAN: 3.71,
        RuleId.DISTRIBUTIVITY: 3.94,
        RuleId.DOMINATION: 4.09,
        RuleId.IDEMPOTENCE: -7.03,
        RuleId.IDENTITY: -9.85,
        RuleId.IFF_AS_IMPLICATION: -4.20,
        RuleId.IMPLICATION_AS_DISJUNCTION: 6.92,
        RuleId.NEGATION: -0.55,
        RuleId.DOUBLE_NEGATION: 0.0,
    },
)


@dataclass
class SearchConfig:
    time_budget: float = 3.0  # seconds
    depth_limit: int = 10  # steps
    max_expansions: int = 50_000

    def __post_init__(self):
        if self.time_budget <= 0 or self.depth_limit <= 0 or self.max_expansions <= 0:
            raise ValueError("search limits must be positive")


@dataclass(frozen=True)
class ProofStep:
    rule: RuleId
    expr: Expr


@dataclass(frozen=True)
class Proof:
    premise: Expr
    target: Expr
    steps: tuple[ProofStep, ...]
    complete: bool


def levenshtein(a: str, b: str) -> int:
    """Single-character edit distance."""
    if a == b:
        return 0
    if len(a) < len(b):
        a, b = b, a
    nb = len(b)
    previous = list(range(nb + 1))
    for i, ca in enumerate(a):
        current = [i + 1]
        append = current.append
        left = i + 1
        prev_diag = previous[0]
        for j in range(nb):
            up = previous[j + 1]
            best = prev_diag if ca == b[j] else prev_diag + 1
            if up + 1 < best:
                best = up + 1
            if left + 1 < best:
                best = left + 1
            append(best)
            left = best
            prev_diag = up
        previous = current
    return previous[nb]


def heuristic_eval(
    candidate: Expr,
    target: Expr,
    via_rule: Optional[RuleId],
    w: HeuristicWeights,
) -> float:
    """Weighted comparator ensemble between *candidate* and *target*."""
    ctext, ttext = print_canonical(candidate), print_canonical(target)
    value = (
        w.unitary
        + w.levenshtein * levenshtein(ctext, ttext)
        + w.variable_mismatch
        * len(variables(candidate) ^ variables(target))
        + w.length_difference * abs(len(ctext) - len(ttext))
    )
    value += w.rules[via_rule] if via_rule is not None else w.start
    return value


def _heuristic_from_text(
    ctext: str,
    cvars: set[str],
    ttext: str,
    tvars: set[str],
    via_rule: Optional[RuleId],
    w: HeuristicWeights,
) -> float:
    value = (
        w.unitary
        + w.levenshtein * levenshtein(ctext, ttext)
        + w.variable_mismatch * len(cvars ^ tvars)
        + w.length_difference * abs(len(ctext) - len(ttext))
    )
    value += w.rules[via_rule] if via_rule is not None else w.start
    return value


_VAR_TOKEN = re.compile(r"[a-z][a-z0-9_]*")


def _text_vars(canonical: str) -> frozenset[str]:
    # canonical text has glyph operators only, so every letter run is a name
    return frozenset(_VAR_TOKEN.findall(canonical))


_neighbors = lru_cache(maxsize=8192)(neighbor_texts)


def astar_solve(
    premise: Expr,
    target: Expr,
    w: HeuristicWeights = PRODUCTION_WEIGHTS,
    cfg: Optional[SearchConfig] = None,
) -> Proof:
    """Best-first search for a rewrite path from *premise* to *target*.

    Deterministic: ties on f break by lower h, then insertion order. When the
    time or expansion budget runs out the path to the lowest-f node seen is
    returned with ``complete=False``.

    The Levenshtein term is evaluated lazily: nodes enter the queue with a
    lower bound on f and get their exact value when they first reach the
    front, which cannot change the expansion order.
    """
    cfg = cfg or SearchConfig()
    premise = normalize(premise)
    target = normalize(target)
    vocab = frozenset(variables(premise) | variables(target))
    ttext = print_canonical(target)
    tvars = _text_vars(ttext)
    tlen = len(ttext)
    deadline = time.monotonic() + cfg.time_budget
    root_len = len(print_canonical(premise))
    # Growth guard: adversarial weight vectors can reward ballooning
    # expressions, whose frontiers get arbitrarily expensive; states this far
    # beyond both endpoints cannot help a desk-scale proof.
    text_cap = max(64, 4 * max(root_len, tlen) + 32)

    if premise == target:
        return Proof(premise, target, (), complete=True)

    # For single-character names (the usual case) membership in canonical
    # text is a plain substring test; otherwise fall back to token scanning.
    vocab_chars = [v for v in sorted(vocab) if len(v) == 1]
    simple_vars = len(vocab_chars) == len(vocab)
    vocab_pairs = [(v, v in tvars) for v in vocab_chars]
    w_unitary = w.unitary
    w_lev = w.levenshtein
    w_mismatch = w.variable_mismatch
    w_lendiff = w.length_difference
    w_rule_table = w.rules
    lev_nonneg = w_lev >= 0

    def h_parts(text: str, via_rule: Optional[RuleId]) -> tuple[float, float]:
        """(exact h without the Levenshtein term, its Levenshtein bound)."""
        if simple_vars:
            mismatch = 0
            for name, in_target in vocab_pairs:
                if (name in text) != in_target:
                    mismatch += 1
        else:
            mismatch = len(_text_vars(text) ^ tvars)
        diff = len(text) - tlen
        if diff < 0:
            diff = -diff
        rest = (
            w_unitary
            + w_mismatch * mismatch
            + w_lendiff * diff
            + (w_rule_table[via_rule] if via_rule is not None else w.start)
        )
        # lev is bounded below by |len difference| and above by max(len)
        bound = diff if lev_nonneg else max(len(text), tlen)
        return rest, w_lev * bound

    # node arena: [text, g, parent_index, via_rule, h_rest]
    root_text = print_canonical(premise)
    rest, lev_bound = h_parts(root_text, None)
    nodes: list[list] = [[root_text, 0, -1, None, rest]]
    # heap entries: (f, h, insertion counter, node index, exact flag)
    heap: list[tuple[float, float, int, int, bool]] = [
        (0 + rest + lev_bound, rest + lev_bound, 0, 0, False)
    ]
    best_g: dict[str, int] = {root_text: 0}
    counter = 1
    best_seen = 0  # index of the lowest-f node among exact pops
    best_seen_f: Optional[float] = None
    expansions = 0

    goal_index: Optional[int] = None
    while heap:
        f, h, tie, index, exact = heapq.heappop(heap)
        text, g, _, via_rule, h_rest = nodes[index]
        if g > best_g.get(text, g):
            continue  # superseded by a shorter route to the same text
        if not exact:
            h = h_rest + w.levenshtein * levenshtein(text, ttext)
            heapq.heappush(heap, (g + h, h, tie, index, True))
            continue
        if text == ttext:
            goal_index = index
            break
        if best_seen_f is None or f < best_seen_f:
            best_seen_f = f
            best_seen = index
        if expansions >= cfg.max_expansions or time.monotonic() > deadline:
            break
        if g >= cfg.depth_limit:
            continue
        expansions += 1
        child_g = g + 1
        at_rim = child_g >= cfg.depth_limit
        # admission loop, with h_parts unrolled: it runs for every candidate
        for rule, child_text in _neighbors(text, vocab):
            if at_rim and child_text != ttext:
                continue  # cannot be expanded further nor end a proof
            clen = len(child_text)
            if clen > text_cap:
                continue
            known = best_g.get(child_text)
            if known is not None and known <= child_g:
                continue
            best_g[child_text] = child_g
            if simple_vars:
                mismatch = 0
                for name, in_target in vocab_pairs:
                    if (name in child_text) != in_target:
                        mismatch += 1
            else:
                mismatch = len(_text_vars(child_text) ^ tvars)
            diff = clen - tlen
            if diff < 0:
                diff = -diff
            rest = (
                w_unitary
                + w_mismatch * mismatch
                + w_lendiff * diff
                + w_rule_table[rule]
            )
            lev_bound = (
                w_lev * diff
                if lev_nonneg
                else w_lev * (clen if clen > tlen else tlen)
            )
            nodes.append([child_text, child_g, index, rule, rest])
            h_bound = rest + lev_bound
            heapq.heappush(
                heap,
                (child_g + h_bound, h_bound, counter, len(nodes) - 1, False),
            )
            counter += 1

    chosen = goal_index if goal_index is not None else best_seen
    return Proof(
        premise, target, _path(nodes, chosen), complete=goal_index is not None
    )


def _path(nodes: list[list], index: int) -> tuple[ProofStep, ...]:
    steps: list[ProofStep] = []
    while nodes[index][2] >= 0:
        text, _, parent, via_rule, _ = nodes[index]
        steps.append(ProofStep(rule=via_rule, expr=parse_text(text)))
        index = parent
    steps.reverse()
    return tuple(steps)


class NoStepAvailable(RuntimeError):
    pass


@dataclass(frozen=True)
class Hint:
    rule: Optional[RuleId]
    expression: Optional[Expr]
    complete: bool  # True when the search reached the target


def next_step_hint(
    current: Expr,
    target: Expr,
    level: str = "rule",
    w: HeuristicWeights = PRODUCTION_WEIGHTS,
    cfg: Optional[SearchConfig] = None,
) -> Hint:
    """First step of a fresh solve from *current* toward *target*.

    ``level`` is "rule" (rule only) or "expression" (rule and expression).
    """
    if level not in ("rule", "expression"):
        raise ValueError(f"unknown hint level {level!r}")
    if normalize(current) == normalize(target):
        return Hint(rule=None, expression=None, complete=True)
    proof = astar_solve(current, target, w, cfg)
    if not proof.steps:
        # Budget ran out with the start node still cheapest; fall back to the
        # heuristically best neighbour so a hint is always available.
        vocab = variables(current) | variables(target)
        entries = frontier_gen(current, vocab).entries
        if not entries:
            raise NoStepAvailable("no rewrite applies at the current expression")
        best = min(
            entries,
            key=lambda t: (
                heuristic_eval(t.result, target, t.rule, w),
                t.rule.value,
                print_canonical(t.result),
            ),
        )
        step = ProofStep(rule=best.rule, expr=best.result)
        found = False
    else:
        step = proof.steps[0]
        found = proof.complete
    return Hint(
        rule=step.rule,
        expression=step.expr if level == "expression" else None,
        complete=found,
    )
