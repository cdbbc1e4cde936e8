"""Recursive-descent parser shared by the rational-function and
regular-function text grammars.

Both grammars accept integer literals, ``+ - * / ^``, parentheses and a
set of identifiers; they differ only in which identifiers exist and which
value type the arithmetic produces.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable

from .algebra import Poly, RatFunc


class ParseError(ValueError):
    """Malformed expression; ``position`` is a 0-based character offset."""

    def __init__(self, message: str, text: str, position: int):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position}: {text!r}")


_TOKEN = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<zij>Z\[\s*\d+\s*\]\[\s*\d+\s*\])|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*/^()]))"
)


@dataclass
class _Tok:
    kind: str
    value: str
    pos: int


def tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            off = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ParseError(f"unexpected character {text[off]!r}", text, off)
        kind = m.lastgroup
        start = m.start(kind)
        toks.append(_Tok(kind, m.group(kind), start))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


class ExprParser:
    """Precedence: unary sign < ``* /`` < ``^``; ``^`` takes an integer
    exponent and is right-associative."""

    def __init__(
        self,
        text: str,
        atom: Callable[[_Tok], object],
        const: Callable[[int], object],
        divide: Callable[[object, object], object],
        power: Callable[[object, int], object],
    ):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self._atom = atom
        self._const = const
        self._divide = divide
        self._power = power

    def error(self, message, tok=None):
        tok = tok or self.toks[self.i]
        return ParseError(message, self.text, tok.pos)

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def accept(self, op: str) -> bool:
        tok = self.peek()
        if tok.kind == "op" and tok.value == op:
            self.i += 1
            return True
        return False

    def parse(self):
        if self.peek().kind == "end":
            raise self.error("empty expression")
        value = self.expr()
        if self.peek().kind != "end":
            raise self.error(f"unexpected token {self.peek().value!r}")
        return value

    def expr(self):
        value = self.term()
        while True:
            if self.accept("+"):
                value = value + self.term()
            elif self.accept("-"):
                value = value - self.term()
            else:
                return value

    def term(self):
        value = self.unary()
        while True:
            if self.accept("*"):
                value = value * self.unary()
            elif self.peek().kind == "op" and self.peek().value == "/":
                tok = self.take()
                rhs = self.unary()
                try:
                    value = self._divide(value, rhs)
                except (ZeroDivisionError, ValueError) as exc:
                    raise ParseError(str(exc), self.text, tok.pos) from None
            else:
                return value

    def unary(self):
        if self.accept("-"):
            return -self.unary()
        if self.accept("+"):
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek().kind == "op" and self.peek().value == "^":
            tok = self.take()
            sign = -1 if self.accept("-") else 1
            etok = self.peek()
            if etok.kind != "int":
                raise self.error("exponent must be an integer literal")
            self.take()
            try:
                return self._power(base, sign * int(etok.value))
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(str(exc), self.text, tok.pos) from None
        return base

    def atom(self):
        tok = self.peek()
        if tok.kind == "int":
            self.take()
            return self._const(int(tok.value))
        if tok.kind in ("name", "zij"):
            self.take()
            return self._atom(tok)
        if self.accept("("):
            value = self.expr()
            if not self.accept(")"):
                raise self.error("expected ')'")
            return value
        if tok.kind == "end":
            raise self.error("unexpected end of input")
        raise self.error(f"unexpected token {tok.value!r}")


def parse_ratfunc(text: str) -> RatFunc:
    """Parse e.g. ``"(z^2+1)/(z-3)"`` into a canonical :class:`RatFunc`."""

    def atom(tok):
        if tok.value == "z":
            return RatFunc(Poly.z())
        raise ParseError(f"unknown symbol {tok.value!r}", text, tok.pos)

    def divide(a, b):
        if b.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        return a / b

    def power(a, e):
        if e < 0:
            raise ValueError("negative exponents are not allowed")
        return a ** e

    return ExprParser(text, atom, lambda k: RatFunc(k), divide, power).parse()
