"""Truncated iterated Laurent series F((v1))...((vr)) and delta windows.

A tower lists variable names in iota order: the last name is the outermost
series variable.  A series stores every term of the underlying element that
lies in the box {e_i < prec_i}; ``prec`` None means no truncation in that
variable.  ``low`` is a global lower bound on the exponents of that variable
when known, otherwise the string "tracked".
"""
import json

from .errors import TowerMismatch, IllegalSubstitution, MatchFailure, ZeroLeadingWindow
from .scalar import ZERO, ONE, fmt_scalar, parse_scalar, gbinom
from .vec import vadd, vscale

TRACKED = "tracked"


def _minp(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class LaurentTowerSeries:
    __slots__ = ("tower", "terms", "low", "prec", "exact")

    def __init__(self, tower, terms=None, low=None, prec=None, exact=None):
        self.tower = tuple(tower)
        if len(set(self.tower)) != len(self.tower):
            raise TowerMismatch("repeated variable in tower %s" % (self.tower,))
        r = len(self.tower)
        self.prec = tuple(prec) if prec is not None else (None,) * r
        terms = {tuple(e): c for e, c in (terms or {}).items() if c}
        self.terms = {e: c for e, c in terms.items() if self._inbox(e)}
        if low is None:
            low = []
            for i in range(r):
                low.append(min((e[i] for e in self.terms), default=0) if self.prec[i] is None else TRACKED)
        self.low = tuple(low)
        for i, lo in enumerate(self.low):
            if lo != TRACKED and any(e[i] < lo for e in self.terms):
                raise ValueError("term below declared lower bound in %s" % self.tower[i])
        self.exact = all(p is None for p in self.prec) if exact is None else exact

    def _inbox(self, e):
        return all(p is None or x < p for x, p in zip(e, self.prec))

    # -- construction ---------------------------------------------------
    @classmethod
    def from_poly(cls, poly, tower, prec=None):
        terms = poly.to_exponents(list(tower))
        r = len(tower)
        low = [min((e[i] for e in terms), default=0) for i in range(r)]
        s = cls(tower, terms, low=low, prec=prec)
        s.exact = prec is None or all(s._inbox(e) for e in terms)
        return s

    @classmethod
    def one(cls, tower):
        return cls(tower, {(0,) * len(tower): ONE})

    def profile(self):
        return {v: (lo, p) for v, lo, p in zip(self.tower, self.low, self.prec)}

    def coefficient(self, exps):
        """Coefficient at an exponent dict or tuple; must lie in the box."""
        e = self._tuple(exps)
        if not self._inbox(e):
            raise ValueError("exponent %s outside the truncation box" % (e,))
        return self.terms.get(e, ZERO)

    def _tuple(self, exps):
        if isinstance(exps, dict):
            return tuple(exps.get(v, 0) for v in self.tower)
        return tuple(exps)

    # -- arithmetic -----------------------------------------------------
    def _align(self, o):
        if not isinstance(o, LaurentTowerSeries):
            return LaurentTowerSeries(self.tower, {(0,) * len(self.tower): o} if o else {})
        if o.tower == self.tower:
            return o
        if set(o.tower) <= set(self.tower):
            pos = [self.tower.index(v) for v in o.tower]
            if pos != sorted(pos):
                raise TowerMismatch("variable order of %s conflicts with %s" % (o.tower, self.tower))
            idx = {v: i for i, v in enumerate(o.tower)}
            def lift(e):
                return tuple(e[idx[v]] if v in idx else 0 for v in self.tower)
            low = [o.low[idx[v]] if v in idx else 0 for v in self.tower]
            prec = [o.prec[idx[v]] if v in idx else None for v in self.tower]
            return LaurentTowerSeries(self.tower, {lift(e): c for e, c in o.terms.items()},
                                      low=low, prec=prec, exact=o.exact)
        raise TowerMismatch("towers %s and %s are incompatible" % (self.tower, o.tower))

    def __add__(self, o):
        if isinstance(o, LaurentTowerSeries) and len(o.tower) > len(self.tower):
            return o + self
        o = self._align(o)
        prec = tuple(_minp(a, b) for a, b in zip(self.prec, o.prec))
        low = tuple(min(a, b) if TRACKED not in (a, b) else TRACKED for a, b in zip(self.low, o.low))
        terms = dict(self.terms)
        vadd(terms, o.terms)
        return LaurentTowerSeries(self.tower, terms, low=low, prec=prec,
                                  exact=self.exact and o.exact and prec == self.prec == o.prec)

    __radd__ = __add__

    def __neg__(self):
        return LaurentTowerSeries(self.tower, vscale(self.terms, -1), self.low, self.prec, self.exact)

    def __sub__(self, o):
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if isinstance(o, LaurentTowerSeries) and len(o.tower) > len(self.tower):
            return o * self
        o = self._align(o)
        prec = []
        for i in range(len(self.tower)):
            pa, pb = self.prec[i], o.prec[i]
            la = self.low[i] if self.low[i] != TRACKED else min((e[i] for e in self.terms), default=0)
            lb = o.low[i] if o.low[i] != TRACKED else min((e[i] for e in o.terms), default=0)
            cands = []
            if pa is not None:
                cands.append(pa + lb)
            if pb is not None:
                cands.append(pb + la)
            prec.append(min(cands) if cands else None)
        terms = {}
        for ea, ca in self.terms.items():
            for eb, cb in o.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                terms[e] = terms.get(e, ZERO) + ca * cb
        low = tuple(TRACKED if TRACKED in (a, b) else a + b for a, b in zip(self.low, o.low))
        exact = self.exact and o.exact
        return LaurentTowerSeries(self.tower, terms, low=low, prec=prec, exact=exact)

    __rmul__ = __mul__

    def scale(self, c):
        return LaurentTowerSeries(self.tower, vscale(self.terms, c), self.low, self.prec, self.exact)

    def truncate(self, prec):
        prec = tuple(_minp(a, b) for a, b in zip(self.prec, prec))
        return LaurentTowerSeries(self.tower, self.terms, self.low, prec,
                                  exact=self.exact and prec == self.prec)

    # -- calculus ---------------------------------------------------------
    def derivative(self, var):
        i = self._index(var)
        terms = {}
        for e, c in self.terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                terms[tuple(f)] = e[i] * c
        low = list(self.low)
        prec = list(self.prec)
        if low[i] != TRACKED:
            low[i] -= 1
        if prec[i] is not None:
            prec[i] -= 1
        return LaurentTowerSeries(self.tower, terms, low, prec, self.exact)

    def residue(self, var):
        i = self._index(var)
        if self.prec[i] is not None and self.prec[i] <= -1:
            raise ValueError("residue in %s lies outside the truncation box" % var)
        terms = {e[:i] + e[i + 1:]: c for e, c in self.terms.items() if e[i] == -1}
        cut = lambda t: t[:i] + t[i + 1:]
        return LaurentTowerSeries(cut(self.tower), terms, cut(self.low), cut(self.prec), self.exact)

    def _index(self, var):
        try:
            return self.tower.index(var)
        except ValueError:
            raise TowerMismatch("%s not in tower %s" % (var, self.tower))

    def substitute_shift(self, source, base, offset, prec, sign=1, placement="outer"):
        """Replace source by base + sign*offset, expanded in nonnegative powers of offset.

        placement "outer": offset becomes (or merges with) the outermost
        variable.  placement "inner": base takes the place of source and the
        offset is inserted right after it, as in t -> t1 + x2 inside
        F((t1))((x2))((x0)).  Raises IllegalSubstitution when a retained
        coefficient would need terms that are not certified to be stored.
        """
        i = self._index(source)
        r = len(self.tower)
        if placement == "inner":
            if base in self.tower or offset in self.tower:
                raise IllegalSubstitution("inner placement needs fresh base and offset names")
            new_tower = self.tower[:i] + (base, offset) + self.tower[i + 1:]
            terms = {}
            for e, c in self.terms.items():
                n = e[i]
                for k in range(prec):
                    b = gbinom(n, k)
                    if b:
                        f = e[:i] + (n - k, k) + e[i + 1:]
                        terms[f] = terms.get(f, ZERO) + c * b * sign ** k
            ps = self.prec[i]
            out_prec = self.prec[:i] + ((None if ps is None else ps - prec + 1), prec) + self.prec[i + 1:]
            out_low = self.low[:i] + (TRACKED, 0) + self.low[i + 1:]
            return LaurentTowerSeries(new_tower, terms, out_low, out_prec, exact=False)

        merged = offset in self.tower
        if merged and self.tower[-1] != offset:
            raise IllegalSubstitution("offset %s must be the outermost variable" % offset)
        if merged and self.low[-1] == TRACKED:
            raise IllegalSubstitution("offset %s has no global lower bound" % offset)
        has_base = base in self.tower
        j = self.tower.index(base) if has_base else None
        jmax = prec - 1 - (self.low[-1] if merged else 0)
        cmax = None
        if not self.exact:
            ps, ls = self.prec[i], self.low[i]
            pb = self.prec[j] if has_base else None
            lb = self.low[j] if has_base else 0
            bounds = []
            if ps is not None:
                if lb == TRACKED:
                    raise IllegalSubstitution("%s is truncated and %s has no global lower bound" % (source, base))
                bounds.append(ps + lb)
            if pb is not None:
                if ls == TRACKED:
                    raise IllegalSubstitution("%s is truncated and %s has no global lower bound" % (base, source))
                bounds.append(pb + ls)
            cmax = min(bounds) if bounds else None
        keep = [v for v in self.tower if v != source and v != offset]
        if not has_base:
            keep = [base if v == source else v for v in self.tower if v != offset]
        new_tower = tuple(keep) + (offset,)
        pos = {v: n for n, v in enumerate(new_tower)}
        bi = pos[base]
        terms = {}
        for e, c in self.terms.items():
            n = e[i]
            f0 = [0] * len(new_tower)
            for v, x in zip(self.tower, e):
                if v == source:
                    continue
                f0[pos[v]] += x
            for k in range(prec + (-self.low[-1] if merged else 0)):
                b = gbinom(n, k)
                if not b:
                    continue
                f = list(f0)
                f[bi] += n - k
                f[-1] += k
                if f[-1] >= prec:
                    continue
                f = tuple(f)
                terms[f] = terms.get(f, ZERO) + c * b * sign ** k
        out_prec = []
        out_low = []
        for v in new_tower[:-1]:
            if v == base:
                out_prec.append(None if cmax is None else cmax - jmax)
                out_low.append(TRACKED)
            else:
                out_prec.append(self.prec[self.tower.index(v)])
                out_low.append(self.low[self.tower.index(v)])
        out_prec.append(prec)
        out_low.append(self.low[-1] if merged else 0)
        return LaurentTowerSeries(new_tower, terms, out_low, out_prec, exact=False)

    # -- comparison and output --------------------------------------------
    def equal_on_box(self, o):
        """Compare on the intersected truncation box."""
        o = self._align(o)
        prec = tuple(_minp(a, b) for a, b in zip(self.prec, o.prec))
        inbox = lambda e: all(p is None or x < p for x, p in zip(e, prec))
        a = {e: c for e, c in self.terms.items() if inbox(e)}
        b = {e: c for e, c in o.terms.items() if inbox(e)}
        return not vadd(a, b, -1)

    def __eq__(self, o):
        return self.equal_on_box(o)

    def leading_exponent(self):
        if not self.terms:
            raise ZeroLeadingWindow("no nonzero coefficient inside the truncation box")
        return min(self.terms, key=lambda e: e[::-1])

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: t[0][::-1])

    def to_json(self):
        prof = {}
        for v, lo, p in zip(self.tower, self.low, self.prec):
            prof[v] = {"low": lo, "prec": p}
        terms = []
        for e, c in self.sorted_terms():
            terms.append({"e": {v: x for v, x in zip(self.tower, e) if x}, "c": fmt_scalar(c)})
        return json.dumps({"tower": list(self.tower), "profile": prof, "terms": terms,
                           "exact": self.exact})

    @classmethod
    def from_json(cls, text, var="q"):
        d = json.loads(text)
        tower = d["tower"]
        low = [d["profile"][v]["low"] for v in tower]
        prec = [d["profile"][v]["prec"] for v in tower]
        terms = {}
        for t in d["terms"]:
            e = tuple(t["e"].get(v, 0) for v in tower)
            terms[e] = parse_scalar(t["c"], var)
        return cls(tower, terms, low=low, prec=prec, exact=d.get("exact", False))

    def __str__(self):
        parts = []
        names = sorted(self.tower)
        idx = {v: i for i, v in enumerate(self.tower)}
        for e, c in self.sorted_terms():
            mono = "*".join(v if e[idx[v]] == 1 else "%s^%d" % (v, e[idx[v]]) for v in names if e[idx[v]])
            cs = fmt_scalar(c)
            if not mono:
                body = cs
            elif c == 1:
                body = mono
            elif c == -1:
                body = "-" + mono
            else:
                if " " in cs or "+" in cs or "-" in cs[1:]:
                    cs = "(%s)" % cs
                body = cs + "*" + mono
            parts.append(body)
        for v, p in zip(self.tower, self.prec):
            if p is not None:
                parts.append("O(%s^%d)" % (v, p))
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    __repr__ = __str__


# -- delta distributions on finite windows ------------------------------------

class WindowTable:
    """Coefficients of a bi-series on a box, with the trustworthy sub-box tracked.

    Values are scalars or sparse vectors (dicts).  ``lo``/``hi`` are the
    inclusive bounds of the materialized box; ``vlo`` the lower corner of the
    valid region (multiplying by polynomials shifts it up).
    """

    def __init__(self, lo, hi, data=None, vlo=None):
        self.lo, self.hi = tuple(lo), tuple(hi)
        self.data = {k: v for k, v in (data or {}).items() if v}
        self.vlo = tuple(vlo) if vlo is not None else self.lo

    def indices(self, valid=True):
        lo = self.vlo if valid else self.lo
        from itertools import product
        return product(*[range(a, b + 1) for a, b in zip(lo, self.hi)])

    def get(self, idx):
        return self.data.get(tuple(idx), ZERO)

    def mul_poly(self, poly_terms):
        """Multiply by a polynomial given as {exponent tuple (nonnegative): scalar}."""
        deg = [max(e[i] for e in poly_terms) for i in range(len(self.lo))]
        out = {}
        for idx in self.indices(valid=False):
            acc = None
            for e, c in poly_terms.items():
                src = tuple(x - d for x, d in zip(idx, e))
                v = self.data.get(src)
                if v is None or any(s < l for s, l in zip(src, self.lo)):
                    continue
                if isinstance(v, dict):
                    acc = vadd(acc if isinstance(acc, dict) else {}, v, c)
                else:
                    acc = (acc or ZERO) + c * v
            if acc:
                out[idx] = acc
        vlo = tuple(v + d for v, d in zip(self.vlo, deg))
        return WindowTable(self.lo, self.hi, out, vlo)

    def nonzero_on_valid(self):
        for idx in self.indices(valid=True):
            if self.data.get(idx):
                return idx
        return None

    def sub(self, other):
        data = {}
        for idx in set(self.data) | set(other.data):
            a, b = self.data.get(idx), other.data.get(idx)
            if isinstance(a, dict) or isinstance(b, dict):
                v = vadd(dict(a or {}), b or {}, -1)
            else:
                v = (a or ZERO) - (b or ZERO)
            if v:
                data[idx] = v
        vlo = tuple(max(a, b) for a, b in zip(self.vlo, other.vlo))
        return WindowTable(self.lo, self.hi, data, vlo)


def delta_window(j, window):
    """Coefficients of (1/j!) d^j/dx2^j x1^-1 delta(x2/x1) on a box.

    window is ((lo1, hi1), (lo2, hi2)) for the exponents of (x1, x2).  The
    term x2^n x1^(-n-1) differentiates to binom(n, j) x2^(n-j) x1^(-n-1).
    """
    (lo1, hi1), (lo2, hi2) = window
    data = {}
    for i2 in range(lo2, hi2 + 1):
        n = i2 + j
        i1 = -n - 1
        if lo1 <= i1 <= hi1:
            c = gbinom(n, j)
            if c:
                data[(i1, i2)] = ZERO + c
    return WindowTable((lo1, lo2), (hi1, hi2), data)


def delta_annihilated(j, window):
    """Check (x1 - x2)^(j+1) kills the j-th delta derivative on the valid interior."""
    table = delta_window(j, window)
    poly = {}
    for a in range(j + 2):
        # (x1 - x2)^(j+1) = sum binom(j+1, a) x1^a (-x2)^(j+1-a)
        poly[(a, j + 1 - a)] = ZERO + gbinom(j + 1, a) * (-1) ** (j + 1 - a)
    prod = table.mul_poly(poly)
    bad = prod.nonzero_on_valid()
    return bad is None, bad, prod


class DeltaExpression:
    """sum_j c_j(x2) (1/j!) d^j/dx2^j x1^-1 delta(x2/x1), plus a regular part.

    Each c_j is a dict {x2 exponent: value}.  ``regular`` is a dict
    {(i1, i2): value} (usually empty).
    """

    def __init__(self, singular, regular=None, pair=("x1", "x2")):
        js = [j for j, _ in singular]
        if len(set(js)) != len(js):
            raise ValueError("repeated derivative order in delta expression")
        self.singular = list(singular)
        self.regular = dict(regular or {})
        self.pair = pair

    def coefficient(self, i1, i2):
        """Coefficient of x1^i1 x2^i2."""
        acc = None
        # x1^(-n-1) with n = -i1-1; c_j contributes binom(n, j) x2^(n-j) * c_j[m]
        n = -i1 - 1
        for j, cj in self.singular:
            b = gbinom(n, j)
            if not b:
                continue
            m = i2 - (n - j)
            v = cj.get(m)
            if v is None:
                continue
            acc = _accum(acc, v, b)
        r = self.regular.get((i1, i2))
        if r is not None:
            acc = _accum(acc, r, 1)
        return acc if acc is not None else ZERO


def _accum(acc, v, c):
    if isinstance(v, dict):
        return vadd(dict(acc) if isinstance(acc, dict) else {}, v, c)
    return (acc if acc is not None else ZERO) + c * v


def _diff(a, b):
    if isinstance(a, dict) or isinstance(b, dict):
        return vadd(dict(a or {}), b or {}, -1)
    return (a or ZERO) - (b or ZERO)


def three_term_match(A, B, window, n, candidate=None, max_order=None):
    """Match A - B against sum_{j<n} c_j(x2) delta-derivatives on a window.

    A, B: callables (i1, i2) -> scalar or vector, giving the coefficients of
    x1^i1 x2^i2 of the two products (A in the x1-dominant expansion, B the
    braided reversed product).  n: clearing exponent, so (x1-x2)^n (A-B) must
    vanish on the valid interior.  The c_j are read off from the residue
    moments Res_x1 x1^m (A-B) = sum_{j<=m} binom(m,j) x2^(m-j) c_j(x2), then
    A - B is compared with the reconstructed delta expression on the whole
    window.  Returns (DeltaExpression, report dict); raises MatchFailure.
    """
    (lo1, hi1), (lo2, hi2) = window
    diff = {}
    for i1 in range(lo1, hi1 + 1):
        for i2 in range(lo2, hi2 + 1):
            v = _diff(A(i1, i2), B(i1, i2))
            if v:
                diff[(i1, i2)] = v
    orders = n if max_order is None else max_order
    # extract c_j from the x1^(-m-1) slices, m = 0..orders-1
    cs = []
    for m in range(orders):
        i1 = -m - 1
        if not lo1 <= i1 <= hi1:
            raise MatchFailure("window in x1 does not reach x1^%d" % i1)
        cm = {}
        for i2 in range(lo2, hi2 + 1):
            v = diff.get((i1, i2))
            # subtract sum_{j<m} binom(m,j) x2^(m-j) c_j: c_j at x2^(i2-(m-j))
            for j, cj in enumerate(cs):
                w = cj.get(i2 - (m - j))
                if w is not None:
                    v = _accum(v, w, -gbinom(m, j))
            if v:
                cm[i2] = v
        cs.append(cm)
    expr = DeltaExpression(list(enumerate(cs)))
    # c_j is trustworthy on x2 exponents [lo2 + j, hi2]; compare where every c_j read is trusted
    checked = 0
    for i1 in range(lo1, hi1 + 1):
        nn = -i1 - 1
        for i2 in range(lo2, hi2 + 1):
            if not lo2 <= i2 - nn <= hi2 - max(orders - 1, 0):
                continue
            checked += 1
            if _diff(diff.get((i1, i2), ZERO), expr.coefficient(i1, i2)):
                raise MatchFailure("delta expansion mismatch at x1^%d x2^%d" % (i1, i2))
    if candidate is not None:
        for j, cj in candidate.singular:
            mine = cs[j] if j < len(cs) else {}
            for m in range(lo2 + j, hi2 + 1):
                if _diff(mine.get(m), cj.get(m)):
                    raise MatchFailure("extracted c_%d differs from the candidate at x2^%d" % (j, m))
    return expr, {"orders": orders, "window": window, "checked": checked}
