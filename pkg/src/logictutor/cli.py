"""Command-line surface over every engine capability.

Exit codes: 0 success (solve: complete proof), 1 input or configuration
error, 2 best-effort incomplete result. Subcommands taking a seed are
bit-reproducible; --format json emits machine-readable output.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from typing import Optional

from .bank import Bank, BankFormatError, NonEquivalentQuestion, load_bank
from .expr import LexError, ParseError, normalize, parse_text, print_canonical, variables
from .frontier import frontier_gen
from .generator import make_dataset

from .search import (
    PRODUCTION_WEIGHTS,
    HeuristicWeights,
    SearchConfig,
    astar_solve,
    next_step_hint,
)
from .tuner import GAConfig, evolve


def _parse_expr(text: str):
    try:
        return normalize(parse_text(text))
    except (LexError, ParseError) as exc:
        raise SystemExit(f"error: {exc}") from exc


def _load_weights(path: Optional[str]) -> HeuristicWeights:
    if path is None:
        return PRODUCTION_WEIGHTS
    try:
        return HeuristicWeights.load(path)
    except (OSError, ValueError, KeyError) as exc:
        raise SystemExit(f"error: cannot load weights from {path}: {exc}") from exc


def _search_config(args) -> SearchConfig:
    return SearchConfig(time_budget=args.time, depth_limit=args.depth)


def cmd_parse(args) -> int:
    try:
        expr = normalize(parse_text(args.expression))
    except (LexError, ParseError) as exc:
        if args.format == "json":
            print(json.dumps({"ok": False, "error": str(exc), "position": exc.position}))
        else:
            print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.format == "json":
        print(
            json.dumps(
                {
                    "ok": True,
                    "canonical": print_canonical(expr),
                    "variables": sorted(variables(expr)),
                },
                ensure_ascii=False,
            )
        )
    else:
        print(print_canonical(expr))
    return 0


def cmd_frontier(args) -> int:
    expr = _parse_expr(args.expression)
    vocab = variables(expr)
    if args.vocab:
        vocab |= {name.strip() for name in args.vocab.split(",") if name.strip()}
    frontier = frontier_gen(expr, vocab)
    if args.format == "json":
        print(
            json.dumps(
                {
                    "source": print_canonical(frontier.source),
                    "entries": [
                        {
                            "rule": t.rule.value,
                            "site": list(t.site),
                            "result": t.result_text,
                        }
                        for t in frontier.entries
                    ],
                },
                ensure_ascii=False,
            )
        )
    else:
        for t in frontier.entries:
            print(f"{t.rule.display_name}\t[{t.site[0]}:{t.site[1]}]\t{t.result_text}")
    return 0


def cmd_solve(args) -> int:
    premise = _parse_expr(args.premise)
    target = _parse_expr(args.target)
    proof = astar_solve(premise, target, _load_weights(args.weights), _search_config(args))
    if args.format == "json":
        print(
            json.dumps(
                {
                    "complete": proof.complete,
                    "premise": print_canonical(proof.premise),
                    "target": print_canonical(proof.target),
                    "steps": [
                        {"rule": s.rule.value, "expression": print_canonical(s.expr)}
                        for s in proof.steps
                    ],
                },
                ensure_ascii=False,
            )
        )
    else:
        if proof.complete and not proof.steps:
            print("already equal")
        for k, step in enumerate(proof.steps, start=1):
            print(f"{k}. {step.rule.display_name}: {print_canonical(step.expr)}")
        if not proof.complete:
            print("(incomplete: best-effort path)", file=sys.stderr)
    return 0 if proof.complete else 2


def cmd_hint(args) -> int:
    current = _parse_expr(args.current)
    target = _parse_expr(args.target)
    hint = next_step_hint(
        current, target, args.level, _load_weights(args.weights), _search_config(args)
    )
    if args.format == "json":
        print(
            json.dumps(
                {
                    "rule": hint.rule.value if hint.rule else None,
                    "expression": print_canonical(hint.expression)
                    if hint.expression
                    else None,
                    "complete": hint.complete,
                },
                ensure_ascii=False,
            )
        )
    elif hint.rule is None:
        print("already equal")
    elif hint.expression is None:
        print(hint.rule.display_name)
    else:
        print(f"{hint.rule.display_name}: {print_canonical(hint.expression)}")
    return 0


def cmd_gen(args) -> int:
    target = _parse_expr(args.target)
    questions = make_dataset([target], args.steps, args.count, args.seed)
    if args.format == "json":
        print(
            json.dumps(
                {
                    "questions": [
                        {
                            "id": q.id,
                            "level": q.level,
                            "premise": print_canonical(q.premise),
                            "target": print_canonical(q.target),
                            "witness": [
                                {
                                    "rule": s.rule.value,
                                    "expression": print_canonical(s.expr),
                                }
                                for s in q.witness.steps
                            ],
                        }
                        for q in questions
                    ]
                },
                ensure_ascii=False,
            )
        )
    else:
        from .bank import format_bank

        sys.stdout.write(format_bank(questions))
    return 0


def cmd_tune(args) -> int:
    try:
        with open(args.config, encoding="utf-8") as fh:
            raw = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise SystemExit(f"error: cannot read GA config {args.config}: {exc}")
    try:
        questions = load_bank(raw["bank"])
        if raw.get("level"):
            questions = [q for q in questions if q.level == raw["level"]]
        if raw.get("limit"):
            questions = questions[: int(raw["limit"])]
        cfg = GAConfig(
            population_size=int(raw["population_size"]),
            generations=int(raw["generations"]),
            per_question_time=float(raw["per_question_time"]),
            training_set=questions,
            elitism=int(raw["elitism"]),
            crossover_prob=float(raw["crossover_prob"]),
            mutation_prob=float(raw["mutation_prob"]),
            rng_seed=int(raw["rng_seed"]),
            depth_limit=int(raw.get("depth_limit", 10)),
        )
    except (KeyError, ValueError, BankFormatError, NonEquivalentQuestion) as exc:
        raise SystemExit(f"error: bad GA config: {exc}")
    best, history = evolve(cfg)
    best.weights.save(args.weights_out)
    with open(args.history_out, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["generation", "best", "mean"])
        for row in history:
            writer.writerow([row.generation, row.best, f"{row.mean:.3f}"])
    print(
        f"best fitness {best.fitness}/{len(cfg.training_set)}; "
        f"weights -> {args.weights_out}, history -> {args.history_out}"
    )
    return 0


def cmd_eval(args) -> int:
    try:
        questions = load_bank(args.bank)
    except (OSError, BankFormatError, NonEquivalentQuestion) as exc:
        raise SystemExit(f"error: {exc}")
    weights = _load_weights(args.weights)
    cfg = _search_config(args)
    rows = []
    solved = 0
    for question in questions:
        start = time.monotonic()
        proof = astar_solve(question.premise, question.target, weights, cfg)
        elapsed = time.monotonic() - start
        solved += proof.complete
        rows.append((question.id, proof.complete, len(proof.steps), elapsed))
    if args.format == "json":
        print(
            json.dumps(
                {
                    "solved": solved,
                    "total": len(questions),
                    "questions": [
                        {
                            "id": qid,
                            "solved": ok,
                            "steps": steps,
                            "seconds": round(elapsed, 3),
                        }
                        for qid, ok, steps, elapsed in rows
                    ],
                }
            )
        )
    else:
        print(f"solved {solved}/{len(questions)}")
        out = io.StringIO()
        writer = csv.writer(out)
        writer.writerow(["id", "solved", "steps", "seconds"])
        for qid, ok, steps, elapsed in rows:
            writer.writerow([qid, int(ok), steps, f"{elapsed:.3f}"])
        sys.stdout.write(out.getvalue())
    return 0


def cmd_bank_check(args) -> int:
    try:
        questions = load_bank(args.bank)
    except (OSError, BankFormatError, NonEquivalentQuestion) as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return 1
    print(f"ok: {len(questions)} questions")
    for level in ("novice", "learner", "expert"):
        count = sum(1 for q in questions if q.level == level)
        print(f"  {level}: {count}")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import ServiceConfig, create_app

    host, _, port = args.bind.rpartition(":")
    app = create_app(
        ServiceConfig(
            bank_path=args.bank,
            store_path=args.store,
            time_budget=args.time,
            depth_limit=args.depth,
            generation_enabled=args.enable_generation,
            weights=_load_weights(args.weights),
            static_dir=args.static,
        )
    )
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="logictutor",
        description="Practice engine for propositional-logic equivalence proofs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("text", "json"), default="text")

    def add_search_flags(p):
        p.add_argument("--weights", help="weights JSON file (default: production)")
        p.add_argument("--time", type=float, default=3.0, help="time budget seconds")
        p.add_argument("--depth", type=int, default=10, help="depth limit")

    p = sub.add_parser("parse", help="parse and print the canonical form")
    p.add_argument("expression")
    add_format(p)
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("frontier", help="list all one-step rewrites")
    p.add_argument("expression")
    p.add_argument("--vocab", help="extra variables, comma separated")
    add_format(p)
    p.set_defaults(func=cmd_frontier)

    p = sub.add_parser("solve", help="search for a proof")
    p.add_argument("premise")
    p.add_argument("target")
    add_search_flags(p)
    add_format(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("hint", help="next-step hint toward the target")
    p.add_argument("current")
    p.add_argument("target")
    p.add_argument("--level", choices=("rule", "expression"), default="rule")
    add_search_flags(p)
    add_format(p)
    p.set_defaults(func=cmd_hint)

    p = sub.add_parser("gen", help="generate questions by random reverse walk")
    p.add_argument("--target", required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    add_format(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("tune", help="run the genetic-algorithm weight tuner")
    p.add_argument("--config", required=True, help="GA config JSON file")
    p.add_argument("--weights-out", required=True)
    p.add_argument("--history-out", required=True)
    p.set_defaults(func=cmd_tune)

    p = sub.add_parser("eval", help="score a weights file against a bank")
    p.add_argument("--bank", required=True)
    add_search_flags(p)
    add_format(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("bank-check", help="validate a question bank file")
    p.add_argument("bank")
    p.set_defaults(func=cmd_bank_check)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--bind", default="127.0.0.1:8734")
    p.add_argument("--bank")
    p.add_argument("--store")
    p.add_argument("--weights")
    p.add_argument("--time", type=float, default=3.0)
    p.add_argument("--depth", type=int, default=10)
    p.add_argument("--enable-generation", action="store_true")
    p.add_argument("--static", help="directory of built frontend files")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
