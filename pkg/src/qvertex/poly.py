"""Sparse multivariate Laurent polynomials with named variables.

A monomial is a tuple of (name, exponent) pairs sorted by name with zero
exponents dropped.  Coefficients are any exact scalars (mpq or QFunc).
"""
from .scalar import ZERO, ONE, fmt_scalar, QFunc, field_inverse
from .errors import DivisionByZero


def _mono_mul(a, b):
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted((v, e) for v, e in d.items() if e))


class Poly:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    @classmethod
    def const(cls, c):
        return cls({(): c})

    @classmethod
    def var(cls, name, power=1):
        return cls({((name, power),) if power else (): ONE})

    @classmethod
    def from_exponents(cls, names, terms):
        """Build from {exponent tuple: coeff} in the given variable order."""
        out = {}
        for e, c in terms.items():
            m = tuple(sorted((v, k) for v, k in zip(names, e) if k))
            out[m] = out.get(m, ZERO) + c
        return cls(out)

    def to_exponents(self, names):
        idx = {v: i for i, v in enumerate(names)}
        out = {}
        for m, c in self.terms.items():
            e = [0] * len(names)
            for v, k in m:
                if v not in idx:
                    raise KeyError("variable %s not in %s" % (v, names))
                e[idx[v]] = k
            out[tuple(e)] = c
        return out

    def variables(self):
        return sorted({v for m in self.terms for v, _ in m})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, o):
        o = _plift(o)
        t = dict(self.terms)
        for m, c in o.terms.items():
            t[m] = t.get(m, ZERO) + c
        return Poly(t)

    __radd__ = __add__

    def __neg__(self):
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, o):
        return self + (-_plift(o))

    def __rsub__(self, o):
        return _plift(o) - self

    def __mul__(self, o):
        o = _plift(o)
        t = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                m = _mono_mul(m1, m2)
                t[m] = t.get(m, ZERO) + c1 * c2
        return Poly(t)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            if len(self.terms) != 1:
                raise ValueError("negative power of a non-monomial")
            (m, c), = self.terms.items()
            return Poly({tuple((v, -e) for v, e in m): field_inverse(c)}) ** (-n)
        out = Poly.const(ONE)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, o):
        return (self - _plift(o)).is_zero()

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def scale(self, c):
        return Poly({m: c * x for m, x in self.terms.items()})

    def degree(self, var):
        return max((dict(m).get(var, 0) for m in self.terms), default=0)

    def low_degree(self, var):
        return min((dict(m).get(var, 0) for m in self.terms), default=0)

    def substitute(self, mapping):
        """Replace variables by Polys (other variables are kept)."""
        out = Poly()
        cache = {}
        for m, c in self.terms.items():
            term = Poly.const(c)
            rest = []
            for v, e in m:
                if v in mapping:
                    key = (v, e)
                    if key not in cache:
                        cache[key] = _plift(mapping[v]) ** e
                    term = term * cache[key]
                else:
                    rest.append((v, e))
            out = out + term * Poly({tuple(rest): ONE})
        return out

    def evaluate(self, values):
        """Evaluate at scalars for every variable present."""
        acc = ZERO
        for m, c in self.terms.items():
            x = c
            for v, e in m:
                val = values[v]
                if e < 0 and not val:
                    raise DivisionByZero("negative power of zero at %s" % v)
                x = x * (val ** e if e >= 0 else field_inverse(val) ** (-e))
            acc = acc + x
        return acc

    def derivative(self, var):
        t = {}
        for m, c in self.terms.items():
            d = dict(m)
            e = d.get(var, 0)
            if e:
                d[var] = e - 1
                nm = tuple(sorted((v, k) for v, k in d.items() if k))
                t[nm] = t.get(nm, ZERO) + e * c
        return Poly(t)

    def absorb(self, var):
        """Move the variable var into QFunc coefficients (Q -> Q(var))."""
        if var not in self.variables():
            return self
        out = {}
        for m, c in self.terms.items():
            d = dict(m)
            e = d.pop(var, 0)
            rest = tuple(sorted(d.items()))
            g = QFunc.gen(var) ** e
            out[rest] = out.get(rest, ZERO) + c * g
        return Poly(out)

    def divexact(self, other):
        """Exact quotient self/other, or None when other does not divide self.

        Uses lex division with the monomial order on sorted variable names;
        negative exponents are cleared by a common monomial first.
        """
        if other.is_zero():
            raise DivisionByZero("division by the zero polynomial")
        names = sorted(set(self.variables()) | set(other.variables()))
        a, b = self.to_exponents(names), other.to_exponents(names)
        shift = [min([0] + [e[i] for e in a] + [e[i] for e in b]) for i in range(len(names))]
        a = {tuple(x - s for x, s in zip(e, shift)): c for e, c in a.items()}
        b = {tuple(x - s for x, s in zip(e, shift)): c for e, c in b.items()}
        lead_b = max(b)
        cb = b[lead_b]
        q = {}
        rem = dict(a)
        while rem:
            lead = max(rem)
            d = tuple(x - y for x, y in zip(lead, lead_b))
            if any(x < 0 for x in d):
                return None
            c = rem[lead] / cb
            q[d] = q.get(d, ZERO) + c
            for e, cc in b.items():
                k = tuple(x + y for x, y in zip(e, d))
                v = rem.get(k, ZERO) - c * cc
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        # quotient exponents live in the shifted frame; shifting both by the same amount cancels
        return Poly.from_exponents(names, q)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=lambda m: [(v, -e) for v, e in m]):
            c = self.terms[m]
            mono = "*".join(v if e == 1 else "%s^%d" % (v, e) for v, e in m)
            cs = fmt_scalar(c)
            if not mono:
                body = cs
            elif c == 1:
                body = mono
            elif c == -1:
                body = "-" + mono
            else:
                if " " in cs or "+" in cs or "-" in cs[1:] or ("/" in cs and isinstance(c, QFunc)):
                    cs = "(%s)" % cs
                body = cs + "*" + mono
            parts.append(body)
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    __repr__ = __str__


def _plift(o):
    if isinstance(o, Poly):
        return o
    return Poly.const(o)
