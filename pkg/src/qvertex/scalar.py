"""Exact scalars: rationals, univariate rational functions and truncated t-series.

Rationals are gmpy2 ``mpq`` values.  ``QFunc`` is an element of Q(q) (or Q(t),
the variable name is a parameter) kept in lowest terms with a monic
denominator.  Constant results collapse back to ``mpq`` so that numeric
specialisations stay on the fast path.
"""
import re

from gmpy2 import mpq

from .errors import DivisionByZero, ParseError, NonInvertibleAtOrder

ZERO = mpq(0)
ONE = mpq(1)


def rat(x, d=1):
    """Coerce an int, string or rational to mpq."""
    if isinstance(x, str):
        return parse_rational(x)
    return mpq(x, d) if d != 1 else mpq(x)


def parse_rational(s):
    s = s.strip()
    m = re.fullmatch(r"([+-]?\d+)(?:\s*/\s*(\d+))?", s)
    if not m:
        raise ParseError("not a rational literal: %r" % s)
    den = int(m.group(2) or 1)
    if den == 0:
        raise DivisionByZero("zero denominator in %r" % s)
    return mpq(int(m.group(1)), den)


def fmt_rat(c):
    c = mpq(c)
    if c.denominator == 1:
        return str(c.numerator)
    return "%d/%d" % (c.numerator, c.denominator)


def is_zero(c):
    return not c


# -- dense univariate polynomials over Q, stored low degree first ----------

def _strip(p):
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return tuple(p)


def padd(a, b):
    n = max(len(a), len(b))
    return _strip([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def pneg(a):
    return tuple(-c for c in a)


def psub(a, b):
    return padd(a, pneg(b))


def pmul(a, b):
    if not a or not b:
        return ()
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _strip(out)


def pscale(a, c):
    return _strip([c * x for x in a]) if c else ()


def pdivmod(a, b):
    if not b:
        raise DivisionByZero("polynomial division by zero")
    a = list(a)
    q = [ZERO] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1] / lead
        q[k] = c
        if c:
            for j, y in enumerate(b):
                a[k + j] -= c * y
    return _strip(q), _strip(a)


def pmonic(a):
    return pscale(a, ONE / a[-1]) if a else ()


def pgcd(a, b):
    while b:
        a, b = b, pdivmod(a, b)[1]
    return pmonic(a)


def peval(a, x):
    acc = ZERO
    for c in reversed(a):
        acc = acc * x + c
    return acc


def pderiv(a):
    return _strip([i * a[i] for i in range(1, len(a))])


def pformat(a, var="q"):
    if not a:
        return "0"
    parts = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if not c:
            continue
        neg = c < 0
        mag = -c if neg else c
        if i == 0:
            body = fmt_rat(mag)
        else:
            mono = var if i == 1 else "%s^%d" % (var, i)
            body = mono if mag == 1 else "%s*%s" % (fmt_rat(mag), mono)
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)


class QFunc:
    """Element of Q(var) in lowest terms, denominator monic."""

    __slots__ = ("num", "den", "var")

    def __init__(self, num, den=(ONE,), var="q", _normal=False):
        self.var = var
        if _normal:
            self.num, self.den = num, den
            return
        num = _strip(mpq(c) for c in num)
        den = _strip(mpq(c) for c in den)
        if not den:
            raise DivisionByZero("zero denominator")
        if not num:
            self.num, self.den = (), (ONE,)
            return
        g = pgcd(num, den)
        if len(g) > 1:
            num = pdivmod(num, g)[0]
            den = pdivmod(den, g)[0]
        lead = den[-1]
        self.num = pscale(num, ONE / lead)
        self.den = pscale(den, ONE / lead)

    @classmethod
    def gen(cls, var="q"):
        return cls((ZERO, ONE), var=var, _normal=True)

    @staticmethod
    def lift(x, var="q"):
        if isinstance(x, QFunc):
            return x
        x = mpq(x)
        return QFunc((x,) if x else (), (ONE,), var, _normal=True)

    def collapse(self):
        """Return an mpq when the value is constant."""
        if len(self.den) == 1 and len(self.num) <= 1:
            return self.num[0] if self.num else ZERO
        return self

    def _other(self, o):
        if isinstance(o, QFunc):
            if o.var != self.var:
                raise TypeError("mixing Q(%s) and Q(%s)" % (self.var, o.var))
            return o
        if isinstance(o, (int, type(ONE))):
            return QFunc.lift(o, self.var)
        return NotImplemented

    def __add__(self, o):
        o = self._other(o)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return QFunc(padd(self.num, o.num), self.den, self.var).collapse()
        return QFunc(padd(pmul(self.num, o.den), pmul(o.num, self.den)),
                     pmul(self.den, o.den), self.var).collapse()

    __radd__ = __add__

    def __neg__(self):
        return QFunc(pneg(self.num), self.den, self.var, _normal=True)

    def __sub__(self, o):
        o = self._other(o)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        o = self._other(o)
        if o is NotImplemented:
            return o
        if len(o.num) <= 1 and len(o.den) == 1:
            if not o.num:
                return ZERO
            return QFunc(pscale(self.num, o.num[0]), self.den, self.var, _normal=True).collapse()
        return QFunc(pmul(self.num, o.num), pmul(self.den, o.den), self.var).collapse()

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise DivisionByZero("inverse of zero")
        return QFunc(self.den, self.num, self.var).collapse()

    def __truediv__(self, o):
        o = self._other(o)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, o):
        return self.inverse() * o

    def __pow__(self, n):
        if n < 0:
            return QFunc.lift(self.inverse(), self.var) ** (-n)
        out = QFunc.lift(ONE, self.var)
        base = self
        while n:
            if n & 1:
                out = QFunc.lift(out * base, self.var)
            base = QFunc.lift(base * base, self.var)
            n >>= 1
        return out.collapse()

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, o):
        if isinstance(o, QFunc):
            return self.var == o.var and self.num == o.num and self.den == o.den
        try:
            o = mpq(o)
        except (TypeError, ValueError):
            return NotImplemented
        c = self.collapse()
        return not isinstance(c, QFunc) and c == o

    def __hash__(self):
        c = self.collapse()
        if not isinstance(c, QFunc):
            return hash(c)
        return hash((self.var, self.num, self.den))

    def __call__(self, x):
        d = peval(self.den, x)
        if not d:
            raise DivisionByZero("pole at %s=%s" % (self.var, x))
        return peval(self.num, x) / d

    def deriv(self):
        n = psub(pmul(pderiv(self.num), self.den), pmul(self.num, pderiv(self.den)))
        return QFunc(n, pmul(self.den, self.den), self.var).collapse()

    def __str__(self):
        n = pformat(self.num, self.var)
        if self.den == (ONE,):
            return n
        d = pformat(self.den, self.var)
        if len([c for c in self.num if c]) > 1 or "/" in n:
            n = "(%s)" % n
        if len([c for c in self.den if c]) > 1:
            d = "(%s)" % d
        return "%s/%s" % (n, d)

    def __repr__(self):
        return "QFunc(%s)" % self


def qgen(var="q"):
    return QFunc.gen(var)


def fmt_scalar(c):
    if isinstance(c, QFunc):
        return str(c)
    return fmt_rat(c)


def parse_scalar(s, var="q"):
    """Parse '3/4' or a rational expression in one variable such as '(q^2-1)/(q+1)'."""
    s = s.strip()
    try:
        return parse_rational(s)
    except ParseError:
        pass
    from .parse import parse_expression
    num, den = parse_expression(s, allowed=(var,))
    f = QFunc(_upoly(num, var), _upoly(den, var), var)
    return f.collapse()


def _upoly(poly, var):
    out = {}
    for mono, c in poly.terms.items():
        e = dict(mono).get(var, 0)
        out[e] = c
    if not out:
        return ()
    if min(out) < 0:
        raise ParseError("negative power left in a univariate numerator")
    return _strip(out.get(i, ZERO) for i in range(max(out) + 1))


def field_inverse(c):
    if not c:
        raise DivisionByZero("inverse of zero scalar")
    if isinstance(c, QFunc):
        return c.inverse()
    return ONE / c


def specialize(c, value):
    """Evaluate a Q(q) scalar at a rational q; rationals pass through."""
    if isinstance(c, QFunc):
        return c(mpq(value))
    return c


class TSeries:
    """Laurent series in t known modulo t^prec (prec None means exact)."""

    __slots__ = ("coeffs", "prec")

    def __init__(self, coeffs=None, prec=None):
        cs = {}
        for k, c in (coeffs or {}).items():
            if c and (prec is None or k < prec):
                cs[k] = c
        self.coeffs = cs
        self.prec = prec

    @classmethod
    def monomial(cls, k, c=ONE, prec=None):
        return cls({k: c}, prec)

    @property
    def exact(self):
        return self.prec is None

    def valuation(self):
        if not self.coeffs:
            raise NonInvertibleAtOrder("series is zero to the known order")
        return min(self.coeffs)

    def __add__(self, o):
        o = _tlift(o)
        prec = _minprec(self.prec, o.prec)
        cs = dict(self.coeffs)
        for k, c in o.coeffs.items():
            cs[k] = cs.get(k, ZERO) + c
        return TSeries(cs, prec)

    __radd__ = __add__

    def __neg__(self):
        return TSeries({k: -c for k, c in self.coeffs.items()}, self.prec)

    def __sub__(self, o):
        return self + (-_tlift(o))

    def __rsub__(self, o):
        return _tlift(o) - self

    def __mul__(self, o):
        o = _tlift(o)
        if (not self.coeffs and self.prec is None) or (not o.coeffs and o.prec is None):
            return TSeries()
        va = min(self.coeffs) if self.coeffs else self.prec
        vb = min(o.coeffs) if o.coeffs else o.prec
        precs = []
        if o.prec is not None:
            precs.append(o.prec + va)
        if self.prec is not None:
            precs.append(self.prec + vb)
        cs = {}
        for i, a in self.coeffs.items():
            for j, b in o.coeffs.items():
                cs[i + j] = cs.get(i + j, ZERO) + a * b
        return TSeries(cs, min(precs) if precs else None)

    __rmul__ = __mul__

    def inverse(self, prec=None):
        """Inverse; prec is the absolute precision wanted when self is not a monomial."""
        v = self.valuation()
        lead = self.coeffs[v]
        rest = {k - v: c / lead for k, c in self.coeffs.items() if k != v}
        if not rest and self.prec is None:
            return TSeries({-v: field_inverse(lead)})
        rel = None if self.prec is None else self.prec - v
        if prec is not None:
            want = prec + v
            rel = want if rel is None else min(rel, want)
        if rel is None:
            raise NonInvertibleAtOrder("need a target precision to invert a non-monomial")
        out = {0: ONE}
        for n in range(1, rel):
            acc = ZERO
            for k, c in rest.items():
                if k <= n and (n - k) in out:
                    acc -= c * out[n - k]
            if acc:
                out[n] = acc
        inv = field_inverse(lead)
        return TSeries({k - v: c * inv for k, c in out.items()}, rel - v)

    def __truediv__(self, o):
        o = _tlift(o)
        return self * o.inverse(self.prec)

    def shift(self, xprec):
        """Substitute t -> t + x and return {k: k-th x coefficient} for k < xprec."""
        out = {}
        for k in range(xprec):
            cs = {}
            for e, c in self.coeffs.items():
                b = gbinom(e, k)
                if b:
                    cs[e - k] = cs.get(e - k, ZERO) + b * c
            prec = None if self.prec is None else self.prec - k
            out[k] = TSeries(cs, prec)
        return out

    def __eq__(self, o):
        o = _tlift(o)
        p = _minprec(self.prec, o.prec)
        a = {k: c for k, c in self.coeffs.items() if p is None or k < p}
        b = {k: c for k, c in o.coeffs.items() if p is None or k < p}
        return a == b

    def __str__(self):
        parts = []
        for k in sorted(self.coeffs):
            c = self.coeffs[k]
            parts.append("%s*t^%d" % (_paren(fmt_scalar(c)), k) if c != 1 else "t^%d" % k)
        if self.prec is not None:
            parts.append("O(t^%d)" % self.prec)
        return " + ".join(parts) if parts else "0"

    __repr__ = __str__


def _paren(s):
    return "(%s)" % s if (" " in s or "+" in s or "-" in s[1:]) else s


def _minprec(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _tlift(o):
    if isinstance(o, TSeries):
        return o
    return TSeries({0: o} if o else {})


_TERM = re.compile(r"^\s*(?:(.*?)\s*\*\s*)?t\s*\^\s*(-?\d+)\s*$")


def parse_tseries(s, var="q"):
    """Parse strings like 't^-1 + 2*t^0 + O(t^5)'."""
    prec = None
    coeffs = {}
    # split on top-level '+' only, keeping parenthesised coefficients intact
    depth, cur, pieces = 0, "", []
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "+" and depth == 0 and cur.strip() and not cur.rstrip().endswith("^"):
            pieces.append(cur)
            cur = ""
        else:
            cur += ch
    pieces.append(cur)
    for piece in pieces:
        piece = piece.strip()
        if not piece:
            continue
        m = re.fullmatch(r"O\(\s*t\s*\^\s*(-?\d+)\s*\)", piece)
        if m:
            prec = int(m.group(1))
            continue
        m = _TERM.match(piece)
        if not m:
            raise ParseError("cannot parse t-series term %r" % piece)
        cstr = m.group(1)
        if cstr is None or cstr == "":
            c = ONE
        elif cstr == "-":
            c = -ONE
        else:
            c = parse_scalar(cstr.strip("()") if cstr.startswith("(") and cstr.endswith(")") else cstr, var)
        k = int(m.group(2))
        coeffs[k] = coeffs.get(k, ZERO) + c
    return TSeries(coeffs, prec)


def gbinom(n, k):
    """Generalised binomial coefficient n choose k for integer n and k >= 0."""
    if k < 0:
        return 0
    num = 1
    den = 1
    for i in range(k):
        num *= n - i
        den *= i + 1
    return num // den
