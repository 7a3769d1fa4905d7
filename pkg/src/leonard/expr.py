"""Parser for scalar expressions such as "3/2", "q^2 - 1/q", "(q+1)^-2"."""

from __future__ import annotations

import re

from .errors import ParseError
from .qfield import Q, RationalFunction, rf

_TOKEN = re.compile(r"\s*(?:(\d+)|(q)|(\*\*|[-+*/^()]))")


def _tokenize(text: str) -> list[str]:
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos:].lstrip()[:1]!r} in {text!r}")
        tok = m.group(m.lastindex)
        out.append("^" if tok == "**" else tok)
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, want=None):
        tok = self.peek()
        if tok is None or (want is not None and tok != want):
            raise ParseError(f"expected {want or 'a token'} in {self.text!r}")
        self.i += 1
        return tok

    def parse(self) -> RationalFunction:
        if not self.toks:
            raise ParseError("empty expression")
        val = self.expr()
        if self.peek() is not None:
            raise ParseError(f"trailing {self.peek()!r} in {self.text!r}")
        return val

    def expr(self):
        val = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.unary()
        while True:
            tok = self.peek()
            if tok in ("*", "/"):
                self.take()
                rhs = self.unary()
                if tok == "*":
                    val = val * rhs
                else:
                    if not rhs:
                        raise ParseError(f"division by zero in {self.text!r}")
                    val = val / rhs
            elif tok in ("q", "("):
                val = val * self.power()  # juxtaposition, as in 2q or 3(q+1)
            else:
                return val

    def unary(self):
        tok = self.peek()
        if tok in ("+", "-"):
            self.take()
            val = self.unary()
            return -val if tok == "-" else val
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == "^":
            self.take()
            sign = 1
            while self.peek() in ("+", "-"):
                if self.take() == "-":
                    sign = -sign
            if self.peek() == "(":
                self.take()
                exp = self.signed_int()
                self.take(")")
            else:
                tok = self.take()
                if not tok.isdigit():
                    raise ParseError(f"exponent must be an integer in {self.text!r}")
                exp = int(tok)
            exp *= sign
            if exp < 0 and not base:
                raise ParseError(f"zero to a negative power in {self.text!r}")
            return base ** exp
        return base

    def signed_int(self):
        sign = 1
        while self.peek() in ("+", "-"):
            if self.take() == "-":
                sign = -sign
        tok = self.take()
        if not tok.isdigit():
            raise ParseError(f"exponent must be an integer in {self.text!r}")
        return sign * int(tok)

    def atom(self):
        tok = self.take()
        if tok.isdigit():
            return rf(int(tok))
        if tok == "q":
            return Q
        if tok == "(":
            val = self.expr()
            self.take(")")
            return val
        raise ParseError(f"unexpected {tok!r} in {self.text!r}")


def parse_scalar(text) -> RationalFunction:
    """Exact element of Q(q) from a string, int or Fraction."""
    if isinstance(text, str):
        return _Parser(text).parse()
    return rf(text)
