"""Brute-force truth-table semantics: evaluation, equivalence, classification.

This is the independent correctness oracle for the rewrite engine; it never
looks at rules, only at variable assignments.
"""

from __future__ import annotations

from itertools import product
from typing import Mapping

from .expr import Chain, Const, Expr, Implies, Not, Var, variables

# 2^20 assignments worst case keeps the oracle sub-second at desk scale.
MAX_VARIABLES = 20

Assignment = Mapping[str, bool]


class UnboundVariable(KeyError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"no value for variable {name!r}")


class TooManyVariables(ValueError):
    def __init__(self, count: int):
        self.count = count
        super().__init__(
            f"{count} variables exceeds the {MAX_VARIABLES}-variable oracle guard"
        )


def evaluate(e: Expr, assignment: Assignment) -> bool:
    """Truth value of *e* under *assignment* (standard semantics)."""
    if isinstance(e, Var):
        try:
            return assignment[e.name]
        except KeyError:
            raise UnboundVariable(e.name) from None
    if isinstance(e, Const):
        return e.value
    if isinstance(e, Not):
        return not evaluate(e.child, assignment)
    if isinstance(e, Chain):
        if e.op == "and":
            return all(evaluate(o, assignment) for o in e.operands)
        return any(evaluate(o, assignment) for o in e.operands)
    if isinstance(e, Implies):
        return (not evaluate(e.lhs, assignment)) or evaluate(e.rhs, assignment)
    return evaluate(e.lhs, assignment) == evaluate(e.rhs, assignment)


def equivalent(a: Expr, b: Expr) -> bool:
    """True iff *a* and *b* agree on every assignment over their variables."""
    names = sorted(variables(a) | variables(b))
    if len(names) > MAX_VARIABLES:
        raise TooManyVariables(len(names))
    for values in product((False, True), repeat=len(names)):
        assignment = dict(zip(names, values))
        if evaluate(a, assignment) != evaluate(b, assignment):
            return False
    return True


def classify(e: Expr) -> str:
    """'tautology', 'fallacy', or 'contingent'."""
    if equivalent(e, Const(True)):
        return "tautology"
    if equivalent(e, Const(False)):
        return "fallacy"
    return "contingent"
