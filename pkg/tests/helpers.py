"""Shared helpers: a seeded random expression generator used across suites."""

from __future__ import annotations

import random

from logictutor.expr import (
    Chain,
    Const,
    Expr,
    Iff,
    Implies,
    Not,
    Var,
    normalize,
    parse_text,
    tokenize,
    print_canonical,
)

DEFAULT_VARS = ("a", "b", "c", "d", "e", "f2", "p", "q")


def random_expr(
    rng: random.Random,
    max_depth: int = 6,
    var_names: tuple[str, ...] = DEFAULT_VARS[:6],
) -> Expr:
    """A random well-formed expression of bounded depth."""
    if max_depth <= 0:
        if rng.random() < 0.85:
            return Var(rng.choice(var_names))
        return Const(rng.random() < 0.5)
    roll = rng.random()
    if roll < 0.25:
        if rng.random() < 0.85:
            return Var(rng.choice(var_names))
        return Const(rng.random() < 0.5)
    if roll < 0.45:
        return normalize(Not(random_expr(rng, max_depth - 1, var_names)))
    if roll < 0.85:
        op = rng.choice(("and", "or"))
        width = rng.choice((2, 2, 2, 3))
        operands = tuple(
            random_expr(rng, max_depth - 1, var_names) for _ in range(width)
        )
        return normalize(Chain(op, operands))
    lhs = random_expr(rng, max_depth - 1, var_names)
    rhs = random_expr(rng, max_depth - 1, var_names)
    if roll < 0.95:
        return Implies(lhs, rhs)
    return Iff(lhs, rhs)


def random_expr_bounded(
    rng: random.Random,
    max_tokens: int = 25,
    max_vars: int = 6,
    max_depth: int = 6,
) -> Expr:
    """Random expression with at most *max_tokens* canonical tokens."""
    names = DEFAULT_VARS[:max_vars]
    while True:
        e = random_expr(rng, max_depth, names)
        if len(tokenize(print_canonical(e))) <= max_tokens:
            return e


def p(text: str) -> Expr:
    return normalize(parse_text(text))
