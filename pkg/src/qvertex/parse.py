"""Recursive-descent parser for rational expressions.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := ('+' | '-') factor | atom ('^' integer)?
    atom   := number | identifier | '(' expr ')'

Juxtaposition is not multiplication; write ``2*x``.  The result is a pair of
Polys (numerator, denominator).
"""
import re

from gmpy2 import mpq

from .errors import ParseError, ZeroDenominator
from .poly import Poly
from .scalar import ONE

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\^|\*\*)|(.))")


def _tokenize(s):
    out = []
    pos = 0
    s = s.rstrip()
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m or m.end() == pos:
            raise ParseError("unexpected input at %d in %r" % (pos, s))
        num, ident, caret, other = m.groups()
        if num is not None:
            out.append(("num", num))
        elif ident is not None:
            out.append(("id", ident))
        elif caret is not None:
            out.append(("op", "^"))
        elif other is not None:
            if other not in "+-*/()":
                raise ParseError("unexpected character %r in %r" % (other, s))
            out.append(("op", other))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text, allowed):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.allowed = allowed

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, value=None):
        tok = self.peek()
        if tok[0] is None or (value is not None and tok[1] != value):
            raise ParseError("expected %r at token %d in %r" % (value, self.i, self.text))
        self.i += 1
        return tok

    def expr(self):
        n, d = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            n2, d2 = self.term()
            if op == "-":
                n2 = -n2
            n, d = n * d2 + n2 * d, d * d2
        return n, d

    def term(self):
        n, d = self.factor()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            n2, d2 = self.factor()
            if op == "*":
                n, d = n * n2, d * d2
            else:
                if n2.is_zero():
                    raise ZeroDenominator("division by zero in %r" % self.text)
                n, d = n * d2, d * n2
        return n, d

    def factor(self):
        tok = self.peek()
        if tok == ("op", "-"):
            self.take()
            n, d = self.factor()
            return -n, d
        if tok == ("op", "+"):
            self.take()
            return self.factor()
        n, d = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            sign = 1
            if self.peek() in (("op", "-"), ("op", "+")):
                sign = -1 if self.take()[1] == "-" else 1
            kind, val = self.take()
            if kind != "num":
                raise ParseError("exponent must be an integer in %r" % self.text)
            k = sign * int(val)
            if k < 0:
                if n.is_zero():
                    raise ZeroDenominator("negative power of zero in %r" % self.text)
                n, d = d, n
                k = -k
            n, d = n ** k, d ** k
        return n, d

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return Poly.const(mpq(val)), Poly.const(ONE)
        if kind == "id":
            if self.allowed is not None and val not in self.allowed:
                raise ParseError("unknown symbol %r (allowed: %s)" % (val, ", ".join(self.allowed)))
            return Poly.var(val), Poly.const(ONE)
        if val == "(":
            out = self.expr()
            self.take(")")
            return out
        raise ParseError("unexpected %r in %r" % (val, self.text))


def parse_expression(text, allowed=None):
    """Parse text into (numerator, denominator) Polys."""
    p = _Parser(text, allowed)
    if not p.toks:
        raise ParseError("empty expression")
    n, d = p.expr()
    if p.i != len(p.toks):
        raise ParseError("trailing input in %r" % text)
    if d.is_zero():
        raise ZeroDenominator("denominator is identically zero in %r" % text)
    return n, d
