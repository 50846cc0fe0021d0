"""Intuitionistic propositional formulas: AST, parser and printer.

Concrete syntax, loosest binding first::

    phi ::= disj [ "->" phi ]          (right associative)
    disj ::= conj { "|" conj }
    conj ::= unary { "&" unary }
    unary ::= "~" unary | atom | "0" | "false" | "1" | "true" | "(" phi ")"

``~p`` is sugar for ``p -> 0`` and ``1`` for ``0 -> 0``; the printer emits the
sugar back and uses as few parentheses as the grammar allows.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Union

from .errors import FormulaSyntaxError


@dataclass(frozen=True)
class Atom:
    name: str

    def __post_init__(self):
        if not self.name:
            raise ValueError("atom names must be nonempty")


@dataclass(frozen=True)
class Bot:
    pass


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Imp:
    left: "Formula"
    right: "Formula"


Formula = Union[Atom, Bot, And, Or, Imp]

BOT = Bot()
TOP = Imp(BOT, BOT)


def Neg(f: Formula) -> Imp:
    return Imp(f, BOT)


def atoms(f: Formula) -> list[str]:
    """Atom names occurring in ``f``, sorted."""
    seen: set[str] = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, Atom):
            seen.add(g.name)
        elif not isinstance(g, Bot):
            stack.extend((g.left, g.right))
    return sorted(seen)


def depth(f: Formula) -> int:
    if isinstance(f, (Atom, Bot)):
        return 0
    return 1 + max(depth(f.left), depth(f.right))


def subformulas(f: Formula) -> Iterator[Formula]:
    """Post-order, children before parents."""
    if not isinstance(f, (Atom, Bot)):
        yield from subformulas(f.left)
        yield from subformulas(f.right)
    yield f


_TOKEN = re.compile(r"\s*(?:(->)|([~&|()])|([A-Za-z_][A-Za-z0-9_]*)|([01]))")
_KEYWORDS = {"true": "1", "false": "0"}
IDENTIFIER = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise FormulaSyntaxError(pos, "a formula token", text)
        start = m.start(m.lastindex)
        arrow, punct, ident, const = m.groups()
        if arrow:
            out.append(("->", arrow, start))
        elif punct:
            out.append((punct, punct, start))
        elif ident:
            if ident in _KEYWORDS:
                out.append(("const", _KEYWORDS[ident], start))
            else:
                out.append(("atom", ident, start))
        else:
            out.append(("const", const, start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> str:
        return self.tokens[self.i][0]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, expected: str):
        raise FormulaSyntaxError(self.tokens[self.i][2], expected, self.text)

    def formula(self) -> Formula:
        left = self.disj()
        if self.peek() == "->":
            self.take()
            return Imp(left, self.formula())
        return left

    def disj(self) -> Formula:
        f = self.conj()
        while self.peek() == "|":
            self.take()
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unary()
        while self.peek() == "&":
            self.take()
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        kind = self.peek()
        if kind == "~":
            self.take()
            return Neg(self.unary())
        if kind == "atom":
            return Atom(self.take()[1])
        if kind == "const":
            return BOT if self.take()[1] == "0" else TOP
        if kind == "(":
            self.take()
            f = self.formula()
            if self.peek() != ")":
                self.fail("')'")
            self.take()
            return f
        self.fail("an atom, a constant, '~' or '('")


def parse_formula(text: str) -> Formula:
    """Parse ``text``; raises FormulaSyntaxError with the offending position."""
    p = _Parser(text)
    f = p.formula()
    if p.peek() != "end":
        p.fail("end of input or a binary connective")
    return f


_PREC = {Imp: 1, Or: 2, And: 3}


def _prec(f: Formula) -> int:
    if isinstance(f, Imp) and f.right == BOT:
        return 4
    return _PREC.get(type(f), 4)


def pretty(f: Formula) -> str:
    """Render with minimal parentheses; ``parse_formula(pretty(f)) == f``."""

    def wrap(g: Formula, need: int) -> str:
        s = pretty(g)
        return f"({s})" if _prec(g) < need else s

    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Bot):
        return "0"
    if f == TOP:
        return "1"
    if isinstance(f, Imp) and f.right == BOT:
        return "~" + wrap(f.left, 4)
    if isinstance(f, And):
        return f"{wrap(f.left, 3)} & {wrap(f.right, 4)}"
    if isinstance(f, Or):
        return f"{wrap(f.left, 2)} | {wrap(f.right, 3)}"
    return f"{wrap(f.left, 2)} -> {wrap(f.right, 1)}"
