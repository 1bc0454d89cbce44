"""Boolean expression core: tokenizer, parser, canonical printer, tree utilities.

Expressions are immutable trees. ``and``/``or`` sequences are kept as flattened
n-ary ``Chain`` nodes so that chain-level rewrites (dropping a duplicated
operand, swapping neighbours, ...) are single-node operations. ``->`` and
``<->`` are binary and right-associative. Precedence, tightest first:
``not > and > or > implies > iff``.

The grammar below is LL(1) (one token of look-ahead), hence LALR(1):

    iff     : implies ( IFF iff )?
    implies : or ( IMPLIES implies )?
    or      : and ( OR and )*
    and     : unary ( AND unary )*
    unary   : NOT unary | atom
    atom    : VAR | TRUE | FALSE | LPAREN iff RPAREN
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Union


class TokenKind(Enum):
    VARIABLE = "variable"
    CONST_TRUE = "const-true"
    CONST_FALSE = "const-false"
    NOT = "not"
    AND = "and"
    OR = "or"
    IMPLIES = "implies"
    IFF = "iff"
    LPAREN = "lparen"
    RPAREN = "rparen"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    lexeme: str
    pos: int  # 0-based character offset


class LexError(ValueError):
    def __init__(self, position: int, char: str):
        self.position = position
        self.char = char
        super().__init__(f"unexpected character {char!r} at offset {position}")


class ParseError(ValueError):
    def __init__(self, position: int, expected: tuple[str, ...]):
        self.position = position
        self.expected = expected
        super().__init__(
            f"parse error at offset {position}: expected {' or '.join(expected)}"
        )


# Reserved words, compared case-insensitively. "t"/"f" are the word forms of
# the constant glyphs, so they are not available as variable names.
_WORDS = {
    "not": TokenKind.NOT,
    "and": TokenKind.AND,
    "or": TokenKind.OR,
    "t": TokenKind.CONST_TRUE,
    "true": TokenKind.CONST_TRUE,
    "f": TokenKind.CONST_FALSE,
    "false": TokenKind.CONST_FALSE,
}

# Multi-character operators must be tried before single characters.
_MULTI = (
    ("<->", TokenKind.IFF),
    ("<=>", TokenKind.IFF),
    ("->", TokenKind.IMPLIES),
    ("=>", TokenKind.IMPLIES),
    ("/\\", TokenKind.AND),
    ("\\/", TokenKind.OR),
)

_SINGLE = {
    "¬": TokenKind.NOT,
    "~": TokenKind.NOT,
    "!": TokenKind.NOT,
    "∧": TokenKind.AND,
    "&": TokenKind.AND,
    "∨": TokenKind.OR,
    "|": TokenKind.OR,
    "→": TokenKind.IMPLIES,
    "↔": TokenKind.IFF,
    "(": TokenKind.LPAREN,
    ")": TokenKind.RPAREN,
    "⊤": TokenKind.CONST_TRUE,
    "⊥": TokenKind.CONST_FALSE,
    "1": TokenKind.CONST_TRUE,
    "0": TokenKind.CONST_FALSE,
}


def _is_word_char(c: str) -> bool:
    return c.isascii() and (c.isalnum() or c == "_")


def tokenize(text: str) -> list[Token]:
    """Split *text* into tokens, accepting every alias spelling."""
    tokens: list[Token] = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        hit = False
        for lexeme, kind in _MULTI:
            if text.startswith(lexeme, i):
                tokens.append(Token(kind, lexeme, i))
                i += len(lexeme)
                hit = True
                break
        if hit:
            continue
        if c.isascii() and c.isalpha():
            j = i + 1
            while j < n and _is_word_char(text[j]):
                j += 1
            word = text[i:j]
            kind = _WORDS.get(word.lower())
            if kind is not None:
                tokens.append(Token(kind, word, i))
            elif word[0].islower():
                tokens.append(Token(TokenKind.VARIABLE, word.lower(), i))
            else:
                raise LexError(i, c)
            i = j
            continue
        kind = _SINGLE.get(c)
        if kind is None:
            raise LexError(i, c)
        tokens.append(Token(kind, c, i))
        i += 1
    return tokens


# ---------------------------------------------------------------------------
# Expression trees

Span = tuple[int, int]  # half-open token-index range, set when parsed


@dataclass(frozen=True)
class Var:
    name: str
    span: Optional[Span] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Const:
    value: bool
    span: Optional[Span] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Not:
    child: "Expr"
    span: Optional[Span] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Chain:
    op: str  # "and" | "or"
    operands: tuple["Expr", ...]
    span: Optional[Span] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Implies:
    lhs: "Expr"
    rhs: "Expr"
    span: Optional[Span] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Iff:
    lhs: "Expr"
    rhs: "Expr"
    span: Optional[Span] = field(default=None, compare=False, repr=False)


Expr = Union[Var, Const, Not, Chain, Implies, Iff]

TRUE = Const(True)
FALSE = Const(False)


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.i = 0

    def _peek(self) -> Optional[Token]:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def _error_pos(self) -> int:
        if self.i < len(self.tokens):
            return self.tokens[self.i].pos
        if self.tokens:
            last = self.tokens[-1]
            return last.pos + len(last.lexeme)
        return 0

    def parse(self) -> Expr:
        expr = self._iff()
        if self.i < len(self.tokens):
            raise ParseError(
                self._error_pos(), ("and", "or", "implies", "iff", "end of input")
            )
        return expr

    def _iff(self) -> Expr:
        start = self.i
        lhs = self._implies()
        tok = self._peek()
        if tok is not None and tok.kind is TokenKind.IFF:
            self.i += 1
            rhs = self._iff()
            return Iff(lhs, rhs, span=(start, self.i))
        return lhs

    def _implies(self) -> Expr:
        start = self.i
        lhs = self._or()
        tok = self._peek()
        if tok is not None and tok.kind is TokenKind.IMPLIES:
            self.i += 1
            rhs = self._implies()
            return Implies(lhs, rhs, span=(start, self.i))
        return lhs

    def _or(self) -> Expr:
        return self._chain(TokenKind.OR, "or", self._and)

    def _and(self) -> Expr:
        return self._chain(TokenKind.AND, "and", self._unary)

    def _chain(self, sep: TokenKind, op: str, sub) -> Expr:
        start = self.i
        operands = [sub()]
        tok = self._peek()
        while tok is not None and tok.kind is sep:
            self.i += 1
            operands.append(sub())
            tok = self._peek()
        if len(operands) == 1:
            return operands[0]
        flat: list[Expr] = []
        for o in operands:
            # parenthesised same-operator groups collapse into the chain
            if isinstance(o, Chain) and o.op == op:
                flat.extend(o.operands)
            else:
                flat.append(o)
        return Chain(op, tuple(flat), span=(start, self.i))

    def _unary(self) -> Expr:
        tok = self._peek()
        if tok is not None and tok.kind is TokenKind.NOT:
            start = self.i
            self.i += 1
            child = self._unary()
            return Not(child, span=(start, self.i))
        return self._atom()

    def _atom(self) -> Expr:
        tok = self._peek()
        if tok is None:
            raise ParseError(self._error_pos(), ("expression",))
        if tok.kind is TokenKind.VARIABLE:
            self.i += 1
            return Var(tok.lexeme, span=(self.i - 1, self.i))
        if tok.kind is TokenKind.CONST_TRUE:
            self.i += 1
            return Const(True, span=(self.i - 1, self.i))
        if tok.kind is TokenKind.CONST_FALSE:
            self.i += 1
            return Const(False, span=(self.i - 1, self.i))
        if tok.kind is TokenKind.LPAREN:
            self.i += 1
            inner = self._iff()
            closing = self._peek()
            if closing is None or closing.kind is not TokenKind.RPAREN:
                raise ParseError(self._error_pos(), ("rparen",))
            self.i += 1
            return inner
        raise ParseError(self._error_pos(), ("expression",))


def parse(tokens: list[Token]) -> Expr:
    """Parse a token list into an expression tree with token spans."""
    return _Parser(tokens).parse()


def parse_text(text: str) -> Expr:
    return parse(tokenize(text))


# Precedence level of each node kind; parentheses are emitted when a child's
# level is strictly below what its context requires.
def _level(e: Expr) -> int:
    if isinstance(e, Iff):
        return 0
    if isinstance(e, Implies):
        return 1
    if isinstance(e, Chain):
        return 2 if e.op == "or" else 3
    if isinstance(e, Not):
        return 4
    return 5


_GLYPH = {"or": "∨", "and": "∧"}


def print_canonical(e: Expr) -> str:
    """Deterministic space-free text form using canonical glyphs."""
    return _print(e, 0)


def _print(e: Expr, required: int) -> str:
    # `required` is at most 4 (a Not child), so Not/Var/Const never wrap
    kind = type(e)
    if kind is Var:
        return e.name
    if kind is Const:
        return "T" if e.value else "F"
    if kind is Not:
        return "¬" + _print(e.child, 4)
    if kind is Chain:
        if e.op == "or":
            text = "∨".join([_print(o, 2) for o in e.operands])
            return "(" + text + ")" if required > 2 else text
        text = "∧".join([_print(o, 3) for o in e.operands])
        return "(" + text + ")" if required > 3 else text
    if kind is Implies:
        text = _print(e.lhs, 2) + "→" + _print(e.rhs, 1)
        return "(" + text + ")" if required > 1 else text
    text = _print(e.lhs, 1) + "↔" + _print(e.rhs, 0)
    return "(" + text + ")" if required > 0 else text


def normalize(e: Expr) -> Expr:
    """Flatten nested same-operator chains; no logical simplification.

    Returns the original object when nothing changes, so parser-produced
    token spans survive.
    """
    if isinstance(e, (Var, Const)):
        return e
    if isinstance(e, Not):
        child = normalize(e.child)
        return e if child is e.child else Not(child, span=e.span)
    if isinstance(e, Implies):
        lhs, rhs = normalize(e.lhs), normalize(e.rhs)
        if lhs is e.lhs and rhs is e.rhs:
            return e
        return Implies(lhs, rhs, span=e.span)
    if isinstance(e, Iff):
        lhs, rhs = normalize(e.lhs), normalize(e.rhs)
        if lhs is e.lhs and rhs is e.rhs:
            return e
        return Iff(lhs, rhs, span=e.span)
    operands = [normalize(o) for o in e.operands]
    flat: list[Expr] = []
    for o in operands:
        if isinstance(o, Chain) and o.op == e.op:
            flat.extend(o.operands)
        else:
            flat.append(o)
    if len(flat) == 1:
        return flat[0]
    if len(flat) == len(e.operands) and all(
        a is b for a, b in zip(flat, e.operands)
    ):
        return e
    return Chain(e.op, tuple(flat), span=e.span)


def structural_eq(a: Expr, b: Expr) -> bool:
    """Identical trees after normalization; operand order matters."""
    return normalize(a) == normalize(b)


def variables(e: Expr) -> set[str]:
    """The set of distinct variable names occurring in *e*."""
    out: set[str] = set()
    _collect_vars(e, out)
    return out


def _collect_vars(e: Expr, out: set[str]) -> None:
    if isinstance(e, Var):
        out.add(e.name)
    elif isinstance(e, Not):
        _collect_vars(e.child, out)
    elif isinstance(e, Chain):
        for o in e.operands:
            _collect_vars(o, out)
    elif isinstance(e, (Implies, Iff)):
        _collect_vars(e.lhs, out)
        _collect_vars(e.rhs, out)


def subtree_count(e: Expr) -> int:
    """Number of nodes in the tree (each node is one subtree)."""
    if isinstance(e, (Var, Const)):
        return 1
    if isinstance(e, Not):
        return 1 + subtree_count(e.child)
    if isinstance(e, Chain):
        return 1 + sum(subtree_count(o) for o in e.operands)
    return 1 + subtree_count(e.lhs) + subtree_count(e.rhs)
