"""Frontier generation: the set of all one-step rewrites of an expression.

A single leaf-to-root traversal applies every rule at every subtree and
splices each local result back into the whole expression at the subtree's
token span. Entries are deduplicated by (rule, normalized result), since a
hint or a validation verdict cannot distinguish two sites that produce the
same expression under the same rule.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .expr import Expr, normalize
from .rules import RuleId, Transform, annotate, require_vocab, scan

ALL_RULES = tuple(RuleId)


class Containment(Enum):
    HIT = "hit"
    RULE_MISMATCH = "rule-mismatch"
    MISS = "miss"


@dataclass(frozen=True)
class Frontier:
    source: Expr  # annotated normalized source
    entries: tuple[Transform, ...]
    nodes_visited: int

    def results_for(self, rule: RuleId) -> list[Expr]:
        return [t.result for t in self.entries if t.rule is rule]


def frontier_gen(e: Expr, vocab: set[str]) -> Frontier:
    """All expressions one rule application away from *e*."""
    require_vocab(e, vocab)
    source = annotate(e)
    transforms, visited = scan(source, ALL_RULES, vocab)
    return Frontier(source=source, entries=tuple(transforms), nodes_visited=visited)


def frontier_contains(f: Frontier, rule: RuleId, candidate: Expr) -> Containment:
    """Whether (rule, candidate) is a frontier entry, a wrong-rule entry,
    or absent."""
    wanted = normalize(candidate)
    found_other = False
    for t in f.entries:
        if t.result == wanted:
            if t.rule is rule:
                return Containment.HIT
            found_other = True
    return Containment.RULE_MISMATCH if found_other else Containment.MISS
