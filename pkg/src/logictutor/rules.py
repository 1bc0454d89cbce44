"""Bidirectional equivalence rewrite rules applied at any subtree position.

Every rule is usable in both directions under a single rule id, and the set
is closed under inverses: any transform the engine emits can be undone by
another transform of the same rule. Two disciplines make that possible with
a finite frontier:

* Directions that delete a subexpression outright (Domination and Negation
  collapses, the absorbed tail of Absorption) only ever delete a single atom,
  mirroring the expansion directions, which instantiate fresh material from
  the question vocabulary plus the constants.
* Chain rewrites bind pattern variables to single operands or to contiguous
  operand segments, never to arbitrary operand subsets.

In the flattened-chain representation Associativity is the identity: any
regrouping of a chain re-flattens to the same tree. It is still emitted (as
a transform from a chain to itself) so that a regrouping step entered by a
student validates.

A local rewrite is expressed as a replacement piece plus the region it
replaces: either the whole node or a contiguous operand segment of a chain
node. A piece that is itself a same-operator chain stands for several
operands and melts into the enclosing chain, both in tree form (normalize)
and in canonical text (chains print without inner parentheses).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, Optional

from .expr import (
    Chain,
    Const,
    Expr,
    Iff,
    Implies,
    Not,
    Span,
    Token,
    TokenKind,
    Var,
    _level,
    _print,
    normalize,
    parse,
    parse_text,
    print_canonical,
    tokenize,
)

FRESH_CONSTANTS = (Const(True), Const(False))


class RuleId(str, Enum):
    ABSORPTION = "Absorption"
    ASSOCIATIVITY = "Associativity"
    COMMUTATIVITY = "Commutativity"
    DE_MORGAN = "DeMorgan"
    DISTRIBUTIVITY = "Distributivity"
    DOMINATION = "Domination"
    IDEMPOTENCE = "Idempotence"
    IDENTITY = "Identity"
    IFF_AS_IMPLICATION = "IffAsImplication"
    IMPLICATION_AS_DISJUNCTION = "ImplicationAsDisjunction"
    NEGATION = "Negation"
    DOUBLE_NEGATION = "DoubleNegation"

    @property
    def display_name(self) -> str:
        return _DISPLAY_NAMES[self]


_DISPLAY_NAMES = {
    RuleId.ABSORPTION: "Absorption",
    RuleId.ASSOCIATIVITY: "Associativity",
    RuleId.COMMUTATIVITY: "Commutativity",
    RuleId.DE_MORGAN: "De Morgan's Law",
    RuleId.DISTRIBUTIVITY: "Distributivity",
    RuleId.DOMINATION: "Domination",
    RuleId.IDEMPOTENCE: "Idempotence",
    RuleId.IDENTITY: "Identity",
    RuleId.IFF_AS_IMPLICATION: "Iff as Implication",
    RuleId.IMPLICATION_AS_DISJUNCTION: "Implication as Disjunction",
    RuleId.NEGATION: "Negation",
    RuleId.DOUBLE_NEGATION: "Double Negation",
}

RULE_BY_NAME = {r.value: r for r in RuleId}


def rule_from_name(name: str) -> RuleId:
    try:
        return RULE_BY_NAME[name]
    except KeyError:
        raise ValueError(f"unknown rule name {name!r}") from None


@dataclass(frozen=True)
class Transform:
    """One rule application at one site, linking two equivalent expressions."""

    source: Expr
    rule: RuleId
    site: Span  # token span within the canonical text of source
    result: Expr  # normalized
    result_text: str = field(compare=False, default="")  # canonical form of result


@dataclass(frozen=True)
class RuleVariant:
    """One directional rewrite schema, with a checkable exemplar pair."""

    rule: RuleId
    direction: str  # "forward" (left-to-right in the schema) or "reverse"
    description: str
    lhs: Expr
    rhs: Expr


def _variants() -> dict[RuleId, tuple[RuleVariant, ...]]:
    p, q, r = Var("p"), Var("q"), Var("r")
    t, f = Const(True), Const(False)

    def v(rule, direction, description, lhs, rhs):
        return RuleVariant(rule, direction, description, lhs, rhs)

    def both(rule, description_fwd, description_rev, lhs, rhs):
        return [
            v(rule, "forward", description_fwd, lhs, rhs),
            v(rule, "reverse", description_rev, rhs, lhs),
        ]

    o = lambda *xs: Chain("or", xs)
    a = lambda *xs: Chain("and", xs)

    table: dict[RuleId, list[RuleVariant]] = {
        RuleId.ABSORPTION: [
            *both(RuleId.ABSORPTION, "p∨(p∧q) ⇒ p", "p ⇒ p∨(p∧q)", o(p, a(p, q)), p),
            *both(RuleId.ABSORPTION, "p∧(p∨q) ⇒ p", "p ⇒ p∧(p∨q)", a(p, o(p, q)), p),
        ],
        RuleId.ASSOCIATIVITY: [
            *both(
                RuleId.ASSOCIATIVITY,
                "p∨(q∨r) ⇒ (p∨q)∨r",
                "(p∨q)∨r ⇒ p∨(q∨r)",
                o(p, o(q, r)),
                o(o(p, q), r),
            ),
            *both(
                RuleId.ASSOCIATIVITY,
                "p∧(q∧r) ⇒ (p∧q)∧r",
                "(p∧q)∧r ⇒ p∧(q∧r)",
                a(p, a(q, r)),
                a(a(p, q), r),
            ),
        ],
        RuleId.COMMUTATIVITY: [
            v(RuleId.COMMUTATIVITY, "forward", "p∨q ⇒ q∨p", o(p, q), o(q, p)),
            v(RuleId.COMMUTATIVITY, "forward", "p∧q ⇒ q∧p", a(p, q), a(q, p)),
        ],
        RuleId.DE_MORGAN: [
            *both(
                RuleId.DE_MORGAN,
                "¬(p∨q) ⇒ ¬p∧¬q",
                "¬p∧¬q ⇒ ¬(p∨q)",
                Not(o(p, q)),
                a(Not(p), Not(q)),
            ),
            *both(
                RuleId.DE_MORGAN,
                "¬(p∧q) ⇒ ¬p∨¬q",
                "¬p∨¬q ⇒ ¬(p∧q)",
                Not(a(p, q)),
                o(Not(p), Not(q)),
            ),
        ],
        RuleId.DISTRIBUTIVITY: [
            *both(
                RuleId.DISTRIBUTIVITY,
                "p∨(q∧r) ⇒ (p∨q)∧(p∨r)",
                "(p∨q)∧(p∨r) ⇒ p∨(q∧r)",
                o(p, a(q, r)),
                a(o(p, q), o(p, r)),
            ),
            *both(
                RuleId.DISTRIBUTIVITY,
                "p∧(q∨r) ⇒ (p∧q)∨(p∧r)",
                "(p∧q)∨(p∧r) ⇒ p∧(q∨r)",
                a(p, o(q, r)),
                o(a(p, q), a(p, r)),
            ),
            *both(
                RuleId.DISTRIBUTIVITY,
                "p∨(q∨r) ⇒ (p∨q)∨(p∨r)",
                "(p∨q)∨(p∨r) ⇒ p∨(q∨r)",
                o(p, o(q, r)),
                o(o(p, q), o(p, r)),
            ),
            *both(
                RuleId.DISTRIBUTIVITY,
                "p∧(q∧r) ⇒ (p∧q)∧(p∧r)",
                "(p∧q)∧(p∧r) ⇒ p∧(q∧r)",
                a(p, a(q, r)),
                a(a(p, q), a(p, r)),
            ),
        ],
        RuleId.DOMINATION: [
            *both(RuleId.DOMINATION, "p∨T ⇒ T", "T ⇒ p∨T", o(p, t), t),
            *both(RuleId.DOMINATION, "p∧F ⇒ F", "F ⇒ p∧F", a(p, f), f),
        ],
        RuleId.IDEMPOTENCE: [
            *both(RuleId.IDEMPOTENCE, "p∨p ⇒ p", "p ⇒ p∨p", o(p, p), p),
            *both(RuleId.IDEMPOTENCE, "p∧p ⇒ p", "p ⇒ p∧p", a(p, p), p),
        ],
        RuleId.IDENTITY: [
            *both(RuleId.IDENTITY, "p∨F ⇒ p", "p ⇒ p∨F", o(p, f), p),
            *both(RuleId.IDENTITY, "p∧T ⇒ p", "p ⇒ p∧T", a(p, t), p),
        ],
        RuleId.IFF_AS_IMPLICATION: [
            *both(
                RuleId.IFF_AS_IMPLICATION,
                "p↔q ⇒ (p→q)∧(q→p)",
                "(p→q)∧(q→p) ⇒ p↔q",
                Iff(p, q),
                a(Implies(p, q), Implies(q, p)),
            ),
        ],
        RuleId.IMPLICATION_AS_DISJUNCTION: [
            *both(
                RuleId.IMPLICATION_AS_DISJUNCTION,
                "p→q ⇒ ¬p∨q",
                "¬p∨q ⇒ p→q",
                Implies(p, q),
                o(Not(p), q),
            ),
        ],
        RuleId.NEGATION: [
            *both(RuleId.NEGATION, "p∨¬p ⇒ T", "T ⇒ p∨¬p", o(p, Not(p)), t),
            *both(RuleId.NEGATION, "p∧¬p ⇒ F", "F ⇒ p∧¬p", a(p, Not(p)), f),
        ],
        RuleId.DOUBLE_NEGATION: [
            *both(
                RuleId.DOUBLE_NEGATION, "¬¬p ⇒ p", "p ⇒ ¬¬p", Not(Not(p)), p
            ),
        ],
    }
    return {rule: tuple(vs) for rule, vs in table.items()}


_VARIANTS = _variants()


def rule_directions(rule: RuleId) -> tuple[RuleVariant, ...]:
    """The directional rewrite variants implemented for *rule*."""
    return _VARIANTS[rule]


# ---------------------------------------------------------------------------
# Local rewriting

def _is_atom(e: Expr) -> bool:
    return isinstance(e, (Var, Const))


def _dual(op: str) -> str:
    return "and" if op == "or" else "or"


def _chain_of(op: str, operands: list[Expr]) -> Expr:
    if len(operands) == 1:
        return operands[0]
    return Chain(op, tuple(operands))


# (piece, segment): the piece replaces the whole node when segment is None,
# otherwise the operand range [i, j) of the chain node.
_Local = tuple[Expr, Optional[tuple[int, int]]]


def _expansions(node: Expr, atoms: tuple[Expr, ...]) -> Iterator[tuple[RuleId, Expr]]:
    """Node-level expansion directions (the piece always wraps the node)."""
    yield RuleId.IDEMPOTENCE, Chain("or", (node, node))
    yield RuleId.IDEMPOTENCE, Chain("and", (node, node))
    yield RuleId.IDENTITY, Chain("or", (node, Const(False)))
    yield RuleId.IDENTITY, Chain("and", (node, Const(True)))
    yield RuleId.DOUBLE_NEGATION, Not(Not(node))
    for atom in atoms:
        yield RuleId.ABSORPTION, Chain("or", (node, Chain("and", (node, atom))))
        yield RuleId.ABSORPTION, Chain("and", (node, Chain("or", (node, atom))))
    if isinstance(node, Const):
        if node.value:
            for atom in atoms:
                yield RuleId.DOMINATION, Chain("or", (atom, Const(True)))
                yield RuleId.NEGATION, Chain("or", (atom, Not(atom)))
        else:
            for atom in atoms:
                yield RuleId.DOMINATION, Chain("and", (atom, Const(False)))
                yield RuleId.NEGATION, Chain("and", (atom, Not(atom)))


def _local_rewrites(
    rule: RuleId, node: Expr, atoms: tuple[Expr, ...]
) -> Iterator[_Local]:
    """All results of applying *rule* at *node* (or a chain segment of it)."""
    for expansion_rule, piece in _expansions(node, atoms):
        if expansion_rule is rule:
            yield piece, None
    for structural_rule, piece, seg in _structural_all(node):
        if structural_rule is rule:
            yield piece, seg


def _structural_all(node: Expr) -> Iterator[tuple[RuleId, Expr, Optional[tuple[int, int]]]]:
    """Every non-expansion rewrite of every rule at *node*."""
    if isinstance(node, Not):
        child = node.child
        if isinstance(child, Chain):
            # De Morgan break: negation distributes over every operand
            yield RuleId.DE_MORGAN, Chain(
                _dual(child.op), tuple(Not(o) for o in child.operands)
            ), None
        elif isinstance(child, Not):
            yield RuleId.DOUBLE_NEGATION, child.child, None
        return
    if isinstance(node, Implies):
        yield RuleId.IMPLICATION_AS_DISJUNCTION, Chain(
            "or", (Not(node.lhs), node.rhs)
        ), None
        return
    if isinstance(node, Iff):
        yield RuleId.IFF_AS_IMPLICATION, Chain(
            "and", (Implies(node.lhs, node.rhs), Implies(node.rhs, node.lhs))
        ), None
        return
    if not isinstance(node, Chain):
        return

    ops = node.operands
    op = node.op
    dual = _dual(op)
    n = len(ops)

    # Regrouping a flattened chain re-flattens to the same tree.
    yield RuleId.ASSOCIATIVITY, node, None

    sink = Const(op == "or")  # absorbing constant: p∨T ⇒ T / p∧F ⇒ F
    unit = Const(op == "and")  # neutral constant: p∨F ⇒ p / p∧T ⇒ p

    for i in range(n - 1):
        a, b = ops[i], ops[i + 1]
        yield RuleId.COMMUTATIVITY, Chain(op, (b, a)), (i, i + 2)
        if a == b:
            yield RuleId.IDEMPOTENCE, a, (i, i + 2)
        if b == unit:
            yield RuleId.IDENTITY, a, (i, i + 2)
        if _is_atom(a):
            if b == sink:
                yield RuleId.DOMINATION, sink, (i, i + 2)
            if isinstance(b, Not) and b.child == a:
                yield RuleId.NEGATION, sink, (i, i + 2)
        if (
            op == "and"
            and isinstance(a, Implies)
            and isinstance(b, Implies)
            and a.lhs == b.rhs
            and a.rhs == b.lhs
        ):
            yield RuleId.IFF_AS_IMPLICATION, Iff(a.lhs, a.rhs), (i, i + 2)

    half = n // 2
    if n >= 4 and ops[:half] == ops[half:]:
        yield RuleId.IDEMPOTENCE, _chain_of(op, list(ops[:half])), (0, n)

    # Absorption collapse: a (possibly multi-operand) head absorbs an
    # adjacent dual chain consisting of that head plus one trailing atom.
    for j, d in enumerate(ops):
        if not (isinstance(d, Chain) and d.op == dual):
            continue
        if not _is_atom(d.operands[-1]):
            continue
        head = _chain_of(dual, list(d.operands[:-1]))
        if isinstance(head, Chain) and head.op == op:
            width = len(head.operands)
            if j >= width and ops[j - width:j] == head.operands:
                yield RuleId.ABSORPTION, head, (j - width, j + 1)
        elif j >= 1 and ops[j - 1] == head:
            yield RuleId.ABSORPTION, head, (j - 1, j + 1)

    # De Morgan build over a segment of negated operands
    for i in range(n):
        if not isinstance(ops[i], Not):
            continue
        for j in range(i + 2, n + 1):
            if not isinstance(ops[j - 1], Not):
                break
            children = [o.child for o in ops[i:j]]
            # a dual-op child would flatten inside the new ¬(...)
            if any(isinstance(c, Chain) and c.op == dual for c in children):
                continue
            yield RuleId.DE_MORGAN, Not(_chain_of(dual, children)), (i, j)

    # Distributivity: p∨(q∧r) ⇒ (p∨q)∧(p∨r) over an (operand, dual-chain) pair
    for i in range(n - 1):
        d = ops[i + 1]
        if isinstance(d, Chain) and d.op == dual:
            yield RuleId.DISTRIBUTIVITY, Chain(
                dual, tuple(Chain(op, (ops[i], dk)) for dk in d.operands)
            ), (i, i + 2)
    # and its inverse over a segment of dual-chains sharing a head
    for i in range(n):
        if not (isinstance(ops[i], Chain) and ops[i].op == dual):
            continue
        head = ops[i].operands[0]
        for j in range(i + 2, n + 1):
            part = ops[j - 1]
            if not (
                isinstance(part, Chain)
                and part.op == dual
                and part.operands[0] == head
            ):
                break
            rests = [_chain_of(dual, list(c.operands[1:])) for c in ops[i:j]]
            # an op-chain rest would flatten inside the factored tail
            if any(isinstance(x, Chain) and x.op == op for x in rests):
                continue
            yield RuleId.DISTRIBUTIVITY, Chain(
                dual, (head, Chain(op, tuple(rests)))
            ), (i, j)
    # same-operator distributivity p∨(q∨r) ⇒ (p∨q)∨(p∨r): x,y,z ⇒ x,y,x,z
    for i in range(n - 2):
        yield RuleId.DISTRIBUTIVITY, Chain(
            op, (ops[i], ops[i + 1], ops[i], ops[i + 2])
        ), (i, i + 3)
    for i in range(n - 3):
        if ops[i] == ops[i + 2]:
            yield RuleId.DISTRIBUTIVITY, Chain(
                op, (ops[i], ops[i + 1], ops[i + 3])
            ), (i, i + 4)

    if op == "or":
        # implication fold: ¬p ∨ q… ⇒ p → q…
        for i in range(n - 1):
            if not isinstance(ops[i], Not):
                continue
            for j in range(i + 2, n + 1):
                yield RuleId.IMPLICATION_AS_DISJUNCTION, Implies(
                    ops[i].child, _chain_of("or", list(ops[i + 1:j]))
                ), (i, j)

    # double-negation wrap of a proper segment (node-level wraps are
    # expansions; this keeps segment wraps invertible by the strip direction)
    for i in range(n):
        for j in range(i + 2, n + 1):
            yield RuleId.DOUBLE_NEGATION, Not(
                Not(_chain_of(op, list(ops[i:j])))
            ), (i, j)


# ---------------------------------------------------------------------------
# Whole-expression application (tree form)

def _splice(root: Expr, path: tuple[int, ...], replacement: Expr) -> Expr:
    if not path:
        return replacement
    head, rest = path[0], path[1:]
    if isinstance(root, Not):
        return Not(_splice(root.child, rest, replacement), span=root.span)
    if isinstance(root, Chain):
        operands = list(root.operands)
        operands[head] = _splice(operands[head], rest, replacement)
        return Chain(root.op, tuple(operands), span=root.span)
    if isinstance(root, Implies):
        if head == 0:
            return Implies(_splice(root.lhs, rest, replacement), root.rhs, span=root.span)
        return Implies(root.lhs, _splice(root.rhs, rest, replacement), span=root.span)
    if isinstance(root, Iff):
        if head == 0:
            return Iff(_splice(root.lhs, rest, replacement), root.rhs, span=root.span)
        return Iff(root.lhs, _splice(root.rhs, rest, replacement), span=root.span)
    raise AssertionError("cannot splice into a leaf")


def _walk(e: Expr, path: tuple[int, ...]) -> Iterator[tuple[tuple[int, ...], Expr]]:
    """Post-order traversal yielding (path, node); visits each subtree once."""
    if isinstance(e, Not):
        yield from _walk(e.child, path + (0,))
    elif isinstance(e, Chain):
        for k, o in enumerate(e.operands):
            yield from _walk(o, path + (k,))
    elif isinstance(e, (Implies, Iff)):
        yield from _walk(e.lhs, path + (0,))
        yield from _walk(e.rhs, path + (1,))
    yield path, e


def annotate(e: Expr) -> Expr:
    """Normalized copy of *e* whose nodes carry canonical-text token spans."""
    return parse_text(print_canonical(normalize(e)))


def _prefill_normal(e: Expr, cache: dict[int, Expr]) -> None:
    cache[id(e)] = e
    if isinstance(e, Not):
        _prefill_normal(e.child, cache)
    elif isinstance(e, Chain):
        for o in e.operands:
            _prefill_normal(o, cache)
    elif isinstance(e, (Implies, Iff)):
        _prefill_normal(e.lhs, cache)
        _prefill_normal(e.rhs, cache)


def _norm_cached(e: Expr, cache: dict[int, Expr]) -> Expr:
    """normalize(), but subtrees of the scanned source resolve in O(1).

    The cache maps id(subtree) -> subtree for the already-normal source; the
    dict holds those objects, so their ids stay valid for its lifetime. Fresh
    candidate nodes are never cached.
    """
    hit = cache.get(id(e))
    if hit is not None:
        return hit
    if isinstance(e, (Var, Const)):
        return e
    if isinstance(e, Not):
        child = _norm_cached(e.child, cache)
        return e if child is e.child else Not(child)
    if isinstance(e, Implies):
        lhs, rhs = _norm_cached(e.lhs, cache), _norm_cached(e.rhs, cache)
        return e if lhs is e.lhs and rhs is e.rhs else Implies(lhs, rhs)
    if isinstance(e, Iff):
        lhs, rhs = _norm_cached(e.lhs, cache), _norm_cached(e.rhs, cache)
        return e if lhs is e.lhs and rhs is e.rhs else Iff(lhs, rhs)
    flat: list[Expr] = []
    changed = False
    for o in e.operands:
        no = _norm_cached(o, cache)
        if isinstance(no, Chain) and no.op == e.op:
            flat.extend(no.operands)
            changed = True
        else:
            flat.append(no)
            if no is not o:
                changed = True
    if len(flat) == 1:
        return flat[0]
    if not changed:
        return e
    return Chain(e.op, tuple(flat))


def _seg_span(node: Chain, i: int, j: int) -> Optional[Span]:
    first, last = node.operands[i].span, node.operands[j - 1].span
    if first is None or last is None:
        return node.span
    return (first[0], last[1])


def scan(
    source: Expr, rules: tuple[RuleId, ...], vocab: set[str]
) -> tuple[list[Transform], int]:
    """Apply *rules* at every subtree of *source* in one leaf-to-root pass.

    Returns the transforms (deduplicated by rule and normalized result, first
    site kept, deterministic order) and the number of subtrees visited.
    *source* must already be annotated (see :func:`annotate`).
    """
    atoms = tuple(Var(name) for name in sorted(vocab)) + FRESH_CONSTANTS
    norm_cache: dict[int, Expr] = {}
    _prefill_normal(source, norm_cache)
    seen: dict[tuple[RuleId, str], Transform] = {}
    visited = 0
    for path, node in _walk(source, ()):
        visited += 1
        node_span = node.span if node.span is not None else (0, 0)
        for rule in rules:
            for piece, seg in _local_rewrites(rule, node, atoms):
                if seg is None:
                    replacement = piece
                    site = node_span
                else:
                    i, j = seg
                    ops = node.operands
                    replacement = _chain_of(
                        node.op, list(ops[:i]) + [piece] + list(ops[j:])
                    )
                    site = _seg_span(node, i, j) or node_span
                result = _norm_cached(_splice(source, path, replacement), norm_cache)
                text = print_canonical(result)
                key = (rule, text)
                if key not in seen:
                    seen[key] = Transform(
                        source=source,
                        rule=rule,
                        site=site,
                        result=result,
                        result_text=text,
                    )
    ordered = sorted(seen.values(), key=lambda t: (t.rule.value, t.result_text))
    return ordered, visited


def require_vocab(e: Expr, vocab: set[str]) -> None:
    """The vocabulary must cover the expression, or deleting rewrites would
    have no inverse (their expansions only instantiate vocabulary atoms)."""
    from .expr import variables

    missing = variables(e) - vocab
    if missing:
        raise ValueError(f"vocabulary is missing variables: {sorted(missing)}")


def apply_rule(rule: RuleId, e: Expr, vocab: set[str]) -> list[Transform]:
    """Every transform obtainable by applying any directional variant of
    *rule* at any subtree or contiguous chain segment of *e*.

    Non-applicability is the empty list. Expansion directions instantiate
    fresh atoms from *vocab* plus the constants.
    """
    require_vocab(e, vocab)
    transforms, _ = scan(annotate(e), (rule,), vocab)
    return transforms


# ---------------------------------------------------------------------------
# Text-splicing fast path for search
#
# A rewrite only changes the characters of the replaced region, so a
# neighbour's canonical text is the source text with that region's character
# range swapped for the piece printed at the region's precedence level. This
# skips rebuilding and reprinting whole trees in the search hot loop and
# produces exactly the (rule, canonical result) pairs of the tree frontier.

def _walk_levels(e: Expr, required: int) -> Iterator[tuple[Expr, int]]:
    yield e, required
    if isinstance(e, Not):
        yield from _walk_levels(e.child, 4)
    elif isinstance(e, Chain):
        own = 2 if e.op == "or" else 3
        for o in e.operands:
            yield from _walk_levels(o, own)
    elif isinstance(e, Implies):
        yield from _walk_levels(e.lhs, 2)
        yield from _walk_levels(e.rhs, 1)
    elif isinstance(e, Iff):
        yield from _walk_levels(e.lhs, 1)
        yield from _walk_levels(e.rhs, 0)


def _char_range(
    tokens: list[Token], ts: int, te: int, starts: list[int], ends: list[int]
) -> tuple[int, int]:
    # A group's parentheses sit just outside its token span; a '(' directly
    # before and a ')' directly after always pair, so widen over them and let
    # the replacement re-add parentheses only if it needs them.
    if (
        ts > 0
        and te < len(tokens)
        and tokens[ts - 1].kind is TokenKind.LPAREN
        and tokens[te].kind is TokenKind.RPAREN
    ):
        return starts[ts - 1], ends[te]
    return starts[ts], ends[te - 1]


# Local rewrite results depend only on the node's own canonical text, the
# precedence level its context requires, and the vocabulary, so they are
# cached across nodes, expressions, and searches. An entry is a list of
# (rule, piece text, relative range): range None means the piece replaces
# the node (at its context range); otherwise it replaces the given character
# range relative to the node's first character.
_LocalEntry = tuple[RuleId, str, Optional[tuple[int, int]]]
_LOCAL_CACHE: dict[tuple[str, int, frozenset], list[_LocalEntry]] = {}
_LOCAL_CACHE_LIMIT = 100_000


def _build_local_entries(
    node: Expr,
    required: int,
    bare: str,
    base: int,
    tokens: list[Token],
    starts: list[int],
    ends: list[int],
    atom_names: list[str],
) -> list[_LocalEntry]:
    entries: list[_LocalEntry] = []
    emit = entries.append
    is_chain = isinstance(node, Chain)
    own = (2 if node.op == "or" else 3) if is_chain else 0
    width = len(node.operands) if is_chain else 0

    # Expansion directions as string templates over the node's own text.
    lvl = _level(node)
    at2 = "(" + bare + ")" if lvl < 2 else bare
    at3 = "(" + bare + ")" if lvl < 3 else bare

    def template(rule: RuleId, piece: str, level: int) -> None:
        emit((rule, "(" + piece + ")" if level < required else piece, None))

    template(RuleId.IDEMPOTENCE, at2 + "∨" + at2, 2)
    template(RuleId.IDEMPOTENCE, at3 + "∧" + at3, 3)
    template(RuleId.IDENTITY, at2 + "∨F", 2)
    template(RuleId.IDENTITY, at3 + "∧T", 3)
    template(RuleId.DOUBLE_NEGATION, "¬¬" + ("(" + bare + ")" if lvl < 4 else bare), 4)
    for name in atom_names:
        template(RuleId.ABSORPTION, at2 + "∨" + at3 + "∧" + name, 2)
        template(RuleId.ABSORPTION, at3 + "∧(" + at2 + "∨" + name + ")", 3)
    if isinstance(node, Const):
        if node.value:
            for name in atom_names:
                template(RuleId.DOMINATION, name + "∨T", 2)
                template(RuleId.NEGATION, name + "∨¬" + name, 2)
        else:
            for name in atom_names:
                template(RuleId.DOMINATION, name + "∧F", 3)
                template(RuleId.NEGATION, name + "∧¬" + name, 3)

    for rule, piece, seg in _structural_all(node):
        if seg is None or (seg[0] == 0 and seg[1] == width):
            emit((rule, _print(piece, required), None))
        else:
            i, j = seg
            # widen each boundary operand over its own parentheses
            left, _ = _char_range(tokens, *node.operands[i].span, starts, ends)
            _, right = _char_range(tokens, *node.operands[j - 1].span, starts, ends)
            emit((rule, _print(piece, own), (left - base, right - base)))
    return entries


def neighbor_texts(text: str, vocab: frozenset[str]) -> tuple[tuple[RuleId, str], ...]:
    """All (rule, canonical result text) pairs one rewrite away from the
    expression whose canonical text is *text*."""
    tokens = tokenize(text)
    tree = parse(tokens)
    starts = [t.pos for t in tokens]
    ends = [t.pos + len(t.lexeme) for t in tokens]
    atom_names = sorted(vocab) + ["T", "F"]
    if len(_LOCAL_CACHE) > _LOCAL_CACHE_LIMIT:
        _LOCAL_CACHE.clear()
    # dict dedup keeps the (deterministic) traversal order; no hash-order
    # dependence, so output is stable across processes
    seen: dict[tuple[RuleId, str], None] = {}
    for node, required in _walk_levels(tree, 0):
        ts, te = node.span
        base = starts[ts]
        bare = text[base:ends[te - 1]]
        key = (bare, required, vocab)
        entries = _LOCAL_CACHE.get(key)
        if entries is None:
            entries = _build_local_entries(
                node, required, bare, base, tokens, starts, ends, atom_names
            )
            _LOCAL_CACHE[key] = entries
        ncs, nce = _char_range(tokens, ts, te, starts, ends)
        nprefix, nsuffix = text[:ncs], text[nce:]
        for rule, piece, rel in entries:
            if rel is None:
                seen[(rule, nprefix + piece + nsuffix)] = None
            else:
                seen[
                    (rule, text[: base + rel[0]] + piece + text[base + rel[1]:])
                ] = None
    return tuple(seen)
