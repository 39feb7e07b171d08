"""LTL without the next-step operator: AST, parser, printer, negation normal form.

Grammar (loosest binding first)::

    formula := impl
    impl    := or ('->' impl)?
    or      := and ('|' and)*
    and     := until ('&' until)*
    until   := unary (('U' | 'R') until)?
    unary   := ('!' | 'F' | 'G') unary | atom | 'true' | 'false' | '(' formula ')'

`X` is reserved and rejected.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import ParseError, XNotAllowed


@dataclass(frozen=True)
class Formula:
    def __str__(self):
        return _show(self)

    # convenience constructors keep test code readable
    def __and__(self, other):
        return And(self, other)

    def __or__(self, other):
        return Or(self, other)

    def __invert__(self):
        return Not(self)


@dataclass(frozen=True)
class TrueConst(Formula):
    pass


@dataclass(frozen=True)
class FalseConst(Formula):
    pass


@dataclass(frozen=True)
class Prop(Formula):
    name: str


@dataclass(frozen=True)
class Not(Formula):
    operand: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Until(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Release(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Eventually(Formula):
    operand: Formula


@dataclass(frozen=True)
class Always(Formula):
    operand: Formula


TRUE = TrueConst()
FALSE = FalseConst()

_UNARY = {Not: "!", Eventually: "F", Always: "G"}
_BINARY = {And: "&", Or: "|", Implies: "->", Until: "U", Release: "R"}


def _show(f: Formula) -> str:
    if isinstance(f, Prop):
        return f.name
    if isinstance(f, TrueConst):
        return "true"
    if isinstance(f, FalseConst):
        return "false"
    if type(f) in _UNARY:
        inner = _show(f.operand)
        if type(f.operand) in _BINARY:
            return f"{_UNARY[type(f)]}({inner})"
        if isinstance(f, Not):
            return "!" + inner
        return f"{_UNARY[type(f)]} {inner}"
    op = type(f)
    left, right = _show(f.left), _show(f.right)
    if type(f.left) in _BINARY and not (type(f.left) is op and op in (And, Or)):
        left = f"({left})"
    if type(f.right) in _BINARY:
        right = f"({right})"
    return f"{left} {_BINARY[op]} {right}"


_TOKEN = re.compile(r"\s*(?:(->)|([!&|()])|([A-Za-z_][A-Za-z0-9_.]*)|(\S))")
_RESERVED = {"F", "G", "U", "R", "X", "true", "false"}


def _tokenize(text: str) -> list[str]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.group(4):
            raise ParseError(f"syntax error: unexpected character {m.group(4)!r} at {m.start(4)}")
        tok = m.group(1) or m.group(2) or m.group(3)
        if tok == "X":
            raise XNotAllowed("the next-step operator X is not allowed")
        tokens.append(tok)
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None:
            raise ParseError("syntax error: unexpected end of formula")
        if expected is not None and tok != expected:
            raise ParseError(f"syntax error: expected {expected!r}, found {tok!r}")
        self.i += 1
        return tok

    def formula(self):
        left = self.disjunction()
        if self.peek() == "->":
            self.take()
            return Implies(left, self.formula())
        return left

    def disjunction(self):
        left = self.conjunction()
        while self.peek() == "|":
            self.take()
            left = Or(left, self.conjunction())
        return left

    def conjunction(self):
        left = self.until()
        while self.peek() == "&":
            self.take()
            left = And(left, self.until())
        return left

    def until(self):
        left = self.unary()
        if self.peek() in ("U", "R"):
            op = Until if self.take() == "U" else Release
            return op(left, self.until())
        return left

    def unary(self):
        tok = self.take()
        if tok == "!":
            return Not(self.unary())
        if tok == "F":
            return Eventually(self.unary())
        if tok == "G":
            return Always(self.unary())
        if tok == "(":
            inner = self.formula()
            self.take(")")
            return inner
        if tok == "true":
            return TRUE
        if tok == "false":
            return FALSE
        if tok in _RESERVED or not re.match(r"[A-Za-z_]", tok):
            raise ParseError(f"syntax error: unexpected {tok!r}")
        return Prop(tok)


def parse_formula(text: str) -> Formula:
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("syntax error: empty formula")
    p = _Parser(tokens)
    f = p.formula()
    if p.peek() is not None:
        raise ParseError(f"syntax error: unexpected {p.peek()!r}")
    return f


def atoms(f: Formula) -> set[str]:
    if isinstance(f, Prop):
        return {f.name}
    if isinstance(f, (TrueConst, FalseConst)):
        return set()
    if type(f) in _UNARY:
        return atoms(f.operand)
    return atoms(f.left) | atoms(f.right)


def nnf(f: Formula) -> Formula:
    """Negation normal form over true/false, literals, &, |, U, R."""
    if isinstance(f, (Prop, TrueConst, FalseConst)):
        return f
    if isinstance(f, And):
        return And(nnf(f.left), nnf(f.right))
    if isinstance(f, Or):
        return Or(nnf(f.left), nnf(f.right))
    if isinstance(f, Implies):
        return Or(nnf(Not(f.left)), nnf(f.right))
    if isinstance(f, Until):
        return Until(nnf(f.left), nnf(f.right))
    if isinstance(f, Release):
        return Release(nnf(f.left), nnf(f.right))
    if isinstance(f, Eventually):
        return Until(TRUE, nnf(f.operand))
    if isinstance(f, Always):
        return Release(FALSE, nnf(f.operand))
    g = f.operand
    if isinstance(g, Prop):
        return f
    if isinstance(g, TrueConst):
        return FALSE
    if isinstance(g, FalseConst):
        return TRUE
    if isinstance(g, Not):
        return nnf(g.operand)
    if isinstance(g, And):
        return Or(nnf(Not(g.left)), nnf(Not(g.right)))
    if isinstance(g, Or):
        return And(nnf(Not(g.left)), nnf(Not(g.right)))
    if isinstance(g, Implies):
        return And(nnf(g.left), nnf(Not(g.right)))
    if isinstance(g, Until):
        return Release(nnf(Not(g.left)), nnf(Not(g.right)))
    if isinstance(g, Release):
        return Until(nnf(Not(g.left)), nnf(Not(g.right)))
    if isinstance(g, Eventually):
        return Release(FALSE, nnf(Not(g.operand)))
    if isinstance(g, Always):
        return Until(TRUE, nnf(Not(g.operand)))
    raise TypeError(f"not a formula: {f!r}")


def conjunction(parts: list[Formula]) -> Formula:
    if not parts:
        return TRUE
    out = parts[0]
    for p in parts[1:]:
        out = And(out, p)
    return out
