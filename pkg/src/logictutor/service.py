"""Stateless HTTP facade over the tutoring engine.

All state lives in the session store, so any number of replicas sharing a
store file answer identically. Students never receive the distinction
between a wrong-rule step and a non-entailed step; both surface as
"invalid". Syntax errors keep their position detail.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Optional

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .bank import (
    Bank,
    QuestionCompleted,
    SessionStore,
    Tutor,
    UnknownQuestion,
    UnknownSession,
    Verdict,
    LEVELS,
    default_bank_path,
)
from .expr import LexError, ParseError, parse_text, print_canonical, normalize
from .generator import make_dataset
from .rules import RULE_BY_NAME, RuleId
from .search import PRODUCTION_WEIGHTS, HeuristicWeights, SearchConfig


@dataclass
class ServiceConfig:
    bank_path: Optional[str] = None  # default: shipped bank
    store_path: Optional[str] = None  # default: in-memory
    time_budget: float = 3.0
    depth_limit: int = 10
    generation_enabled: bool = False
    weights: HeuristicWeights = PRODUCTION_WEIGHTS
    static_dir: Optional[str] = None  # serve a built frontend from /


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str, detail=None):
        self.status = status
        self.code = code
        self.message = message
        self.detail = detail
        super().__init__(message)


class StepRequest(BaseModel):
    session: str
    rule: str
    expression: str


class SessionRequest(BaseModel):
    session: str


class ParseRequest(BaseModel):
    expression: str


class GenerateRequest(BaseModel):
    target: str
    steps: int
    count: int
    seed: int


def _question_payload(question) -> dict:
    return {
        "id": question.id,
        "level": question.level,
        "phrasing": question.phrasing,
        "premise": print_canonical(question.premise),
        "target": print_canonical(question.target),
    }


def _rule_of(name: str) -> RuleId:
    rule = RULE_BY_NAME.get(name)
    if rule is None:
        raise ApiError(400, "bad_request", f"unknown rule name {name!r}")
    return rule


def create_app(config: Optional[ServiceConfig] = None) -> FastAPI:
    config = config or ServiceConfig()
    bank = Bank.load(config.bank_path or default_bank_path())
    store = SessionStore(config.store_path)
    tutor = Tutor(
        bank,
        store,
        weights=config.weights,
        search_config=SearchConfig(
            time_budget=config.time_budget, depth_limit=config.depth_limit
        ),
    )
    app = FastAPI(title="logictutor", docs_url=None, redoc_url=None)
    app.state.tutor = tutor
    app.state.config = config

    @app.exception_handler(ApiError)
    async def api_error_handler(request: Request, exc: ApiError):
        body = {"code": exc.code, "message": exc.message}
        if exc.detail is not None:
            body["detail"] = exc.detail
        return JSONResponse(status_code=exc.status, content=body)

    @app.exception_handler(RequestValidationError)
    async def validation_handler(request: Request, exc: RequestValidationError):
        detail = [
            {"loc": [str(part) for part in e["loc"]], "message": e["msg"]}
            for e in exc.errors()
        ]
        return JSONResponse(
            status_code=400,
            content={
                "code": "bad_request",
                "message": "malformed request body",
                "detail": detail,
            },
        )

    @app.exception_handler(UnknownQuestion)
    async def unknown_question_handler(request: Request, exc: UnknownQuestion):
        return JSONResponse(
            status_code=404,
            content={"code": "not_found", "message": f"unknown question {exc.args[0]!r}"},
        )

    @app.exception_handler(UnknownSession)
    async def unknown_session_handler(request: Request, exc: UnknownSession):
        return JSONResponse(
            status_code=404,
            content={"code": "not_found", "message": "unknown session"},
        )

    @app.exception_handler(QuestionCompleted)
    async def completed_handler(request: Request, exc: QuestionCompleted):
        return JSONResponse(
            status_code=409,
            content={
                "code": "conflict",
                "message": "question already completed; reset to re-attempt",
            },
        )

    @app.post("/api/session")
    def create_session():
        return {"session": store.create_session()}

    @app.get("/api/questions")
    def list_questions(level: Optional[str] = None):
        if level is not None and level not in LEVELS:
            raise ApiError(400, "bad_request", f"unknown level {level!r}")
        return {"questions": [_question_payload(q) for q in bank.filtered(level)]}

    @app.get("/api/rules")
    def list_rules():
        rules = sorted(RuleId, key=lambda r: r.display_name)
        return {
            "rules": [{"name": r.value, "display_name": r.display_name} for r in rules]
        }

    @app.post("/api/parse")
    def parse_preview(body: ParseRequest):
        try:
            canonical = print_canonical(normalize(parse_text(body.expression)))
        except (LexError, ParseError) as exc:
            return {"ok": False, "error": str(exc), "position": exc.position}
        return {"ok": True, "canonical": canonical}

    @app.post("/api/attempt/{question_id}/step")
    def submit_step(question_id: str, body: StepRequest):
        outcome = tutor.validate_step(
            body.session, question_id, _rule_of(body.rule), body.expression
        )
        payload = {
            "verdict": outcome.verdict.student_facing,
            "current_expression": outcome.current_expression,
            "completed": outcome.completed,
        }
        if outcome.verdict is Verdict.SYNTAX_ERROR:
            payload["detail"] = outcome.detail
            payload["position"] = outcome.position
        return payload

    @app.post("/api/attempt/{question_id}/hint")
    def request_hint(question_id: str, body: SessionRequest):
        hint = tutor.request_hint(body.session, question_id)
        payload: dict = {"level": hint.level, "completed": hint.completed}
        if hint.rule is not None:
            payload["rule"] = hint.rule.value
            payload["display_name"] = hint.rule.display_name
        if hint.expression is not None:
            payload["expression"] = hint.expression
        if hint.proof is not None:
            payload["proof"] = [
                {
                    "rule": rule,
                    "display_name": RULE_BY_NAME[rule].display_name,
                    "expression": expression,
                }
                for rule, expression in hint.proof
            ]
        return payload

    @app.get("/api/attempt/{question_id}/solution")
    def full_solution(question_id: str):
        proof = tutor.solution(question_id)
        return {
            "premise": print_canonical(proof.premise),
            "target": print_canonical(proof.target),
            "complete": proof.complete,
            "steps": [
                {
                    "rule": step.rule.value,
                    "display_name": step.rule.display_name,
                    "expression": print_canonical(step.expr),
                }
                for step in proof.steps
            ],
        }

    @app.post("/api/attempt/{question_id}/reset")
    def reset_question(question_id: str, body: SessionRequest):
        tutor.reset(body.session, question_id)
        return {"ok": True}

    @app.get("/api/progress")
    def progress(session: str):
        return tutor.progress(session)

    @app.post("/api/generate")
    def generate(body: GenerateRequest):
        if not config.generation_enabled:
            raise ApiError(403, "bad_request", "generation is disabled on this server")
        if body.steps < 0 or body.count <= 0:
            raise ApiError(400, "bad_request", "steps must be >= 0 and count > 0")
        try:
            target = parse_text(body.target)
        except (LexError, ParseError) as exc:
            raise ApiError(
                400, "bad_request", str(exc), detail={"position": exc.position}
            )
        questions = make_dataset([target], body.steps, body.count, body.seed)
        return {
            "questions": [
                {
                    **_question_payload(q),
                    "witness": [
                        {"rule": s.rule.value, "expression": print_canonical(s.expr)}
                        for s in q.witness.steps
                    ],
                }
                for q in questions
            ]
        }

    if config.static_dir and os.path.isdir(config.static_dir):
        app.mount(
            "/", StaticFiles(directory=config.static_dir, html=True), name="frontend"
        )

    return app
