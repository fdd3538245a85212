"""Field operators A(x) in Hom(W, W((x))) on modules with a countable basis.

Vectors are dicts {basis key: scalar}.  Over the truncated base F((t)) a
basis key is a pair (w, p) standing for w (x) t^p, and every operator is
F((t))-linear, so it is enough to know its action on keys (w, 0).
"""
from .scalar import ZERO, ONE, gbinom
from .vec import vadd


def tshift(vec, k):
    """Multiply a vector over F((t)) by t^k."""
    if not k:
        return vec
    return {(w, p + k): c for (w, p), c in vec.items()}


def tmul(vec, poly):
    """Multiply a vector over F((t)) by the Laurent polynomial {power: coeff}."""
    out = {}
    for k, c in poly.items():
        if c:
            vadd(out, tshift(vec, k), c)
    return out


def tpart(vec):
    """Split a vector over F((t)) into {w: {p: c}}."""
    out = {}
    for (w, p), c in vec.items():
        out.setdefault(w, {})[p] = c
    return out


class FieldOperator:
    """A(x) given by coefficients: coeff(key, j) is the x^j coefficient of A(x)key.

    coeff and low receive the t-free key w when tbase is set; the operator
    then acts on (w, p) by shifting the result by t^p.  low(w) must be a
    global lower bound for the x-exponents of A(x)w.
    """

    def __init__(self, coeff, low, label="", tbase=False):
        self._coeff = coeff
        self._low = low
        self.label = label
        self.tbase = tbase
        self._memo = {}

    def __repr__(self):
        return "FieldOperator(%s)" % self.label

    def coeff(self, key, j):
        if self.tbase:
            w, p = key
            return tshift(self._coeff0(w, j), p)
        return self._coeff0(key, j)

    def _coeff0(self, w, j):
        m = (w, j)
        r = self._memo.get(m)
        if r is None:
            r = {} if j < self._low(w) else self._coeff(w, j)
            self._memo[m] = r
        return r

    def low(self, key):
        return self._low(key[0] if self.tbase else key)

    def low_vec(self, vec):
        return min((self.low(k) for k in vec), default=0)

    def apply(self, vec, j):
        """x^j coefficient of A(x)vec."""
        out = {}
        for k, c in vec.items():
            if j >= self.low(k):
                vadd(out, self.coeff(k, j), c)
        return out

    def on(self, vec, lo, hi):
        """{j: coefficient} of A(x)vec for lo <= j <= hi."""
        return {j: self.apply(vec, j) for j in range(lo, hi + 1)}


def identity_field(tbase=False):
    """1_W: the identity operator, constant in x."""
    if tbase:
        return FieldOperator(lambda w, j: {(w, 0): ONE} if j == 0 else {}, lambda w: 0, "1", True)
    return FieldOperator(lambda w, j: {w: ONE} if j == 0 else {}, lambda w: 0, "1", False)


def derivative_field(a, order=1):
    """(1/order!) (d/dx)^order A(x)."""
    def coeff(w, j):
        e = j + order
        c = gbinom(e, order)
        if not c:
            return {}
        v = a._coeff0(w, e)
        return {k: c * x for k, x in v.items()}
    return FieldOperator(coeff, lambda w: a._low(w) - order, "d%d(%s)" % (order, a.label), a.tbase)


def scaled_field(a, scalar, label=None):
    """g(x) A(x) where scalar(i) gives the x^i coefficient (i >= 0) of g.

    Over F((t)) scalar(i) is a Laurent polynomial in t given as {power: coeff};
    over F it is a plain scalar.  When g is a polynomial in x the caller may
    set scalar.max_degree to stop the sum early.
    """
    top = getattr(scalar, "max_degree", None)

    def coeff(w, j):
        out = {}
        lo = a._low(w)
        hi = j - lo if top is None else min(j - lo, top)
        for i in range(0, hi + 1):
            s = scalar(i)
            if not s:
                continue
            v = a._coeff0(w, j - i)
            if a.tbase:
                vadd(out, tmul(v, s))
            else:
                vadd(out, v, s)
        return out
    return FieldOperator(coeff, a._low, label or "g*%s" % a.label, a.tbase)


def combine_fields(terms, label="sum"):
    """Sum of c*A(x) over (c, A) pairs sharing the same base."""
    terms = [(c, a) for c, a in terms if c]
    tbase = terms[0][1].tbase if terms else False

    def coeff(w, j):
        out = {}
        for c, a in terms:
            if j >= a._low(w):
                vadd(out, a._coeff0(w, j), c)
        return out

    def low(w):
        return min((a._low(w) for _, a in terms), default=0)
    return FieldOperator(coeff, low, label, tbase)
