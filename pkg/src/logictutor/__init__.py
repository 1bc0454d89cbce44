"""Guided-practice engine for propositional-logic equivalence proofs."""

from .expr import (
    Chain,
    Const,
    Expr,
    Iff,
    Implies,
    LexError,
    Not,
    ParseError,
    Token,
    TokenKind,
    Var,
    normalize,
    parse,
    parse_text,
    print_canonical,
    structural_eq,
    tokenize,
    variables,
)
from .frontier import Containment, Frontier, frontier_contains, frontier_gen
from .rules import RuleId, Transform, apply_rule, rule_directions
from .search import (
    HeuristicWeights,
    PRODUCTION_WEIGHTS,
    Proof,
    ProofStep,
    SearchConfig,
    astar_solve,
    heuristic_eval,
    next_step_hint,
)
from .truth import classify, equivalent, evaluate

__all__ = [
    "Chain",
    "Const",
    "Containment",
    "Expr",
    "Frontier",
    "HeuristicWeights",
    "Iff",
    "Implies",
    "LexError",
    "Not",
    "PRODUCTION_WEIGHTS",
    "ParseError",
    "Proof",
    "ProofStep",
    "RuleId",
    "SearchConfig",
    "Token",
    "TokenKind",
    "Transform",
    "Var",
    "apply_rule",
    "astar_solve",
    "classify",
    "equivalent",
    "evaluate",
    "frontier_contains",
    "frontier_gen",
    "heuristic_eval",
    "next_step_hint",
    "normalize",
    "parse",
    "parse_text",
    "print_canonical",
    "rule_directions",
    "structural_eq",
    "tokenize",
    "variables",
]
