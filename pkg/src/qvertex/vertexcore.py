"""Vertex-operator engine: Y_E products, closures and identity checkers.

Everything works on FieldOperators over a module with a countable basis,
either over F (keys are basis words) or over a truncated F((t)) (keys are
pairs (word, t-power)).  Operator identities are compared coefficient by
coefficient on finite exponent windows; each report entry records the
window it was checked on.
"""
from itertools import product as iproduct

from .errors import (AxiomFailure, CertificateFailure, NoKWithinWindow, WitnessDisagreement)
from .fields import FieldOperator, tshift, tmul, identity_field, scaled_field, combine_fields
from .fock import (VACUUM, FockSpace, grade, parity, word_str, vertex_operator, fock_D,
                   generator_field)
from .linalg import Echelon, kernel
from .poly import Poly
from .ratfun import RationalElement, iota_expand, shift_t
from .scalar import ZERO, ONE, gbinom, field_inverse, fmt_scalar
from .vec import vadd, vscale, vsub


def entry(suite, check, window, ok, witness=None, **extra):
    e = {"suite": suite, "check": check, "window": window,
         "result": "pass" if ok else "fail"}
    if witness is not None:
        e["witness"] = witness
    e.update(extra)
    return e


def key_str(key):
    if isinstance(key, tuple) and len(key) == 2 and isinstance(key[1], int):
        return "%s*t^%d" % (word_str(key[0]), key[1])
    return word_str(key)


def vec_str(vec):
    if not vec:
        return "0"
    return " + ".join("(%s)*%s" % (fmt_scalar(c), key_str(k)) for k, c in sorted(vec.items()))


def clear_poly(k):
    """(x1 - x2)^k as {(e1, e2): coefficient}."""
    return {(k - i, i): gbinom(k, i) * (-1) ** i for i in range(k + 1)}


def tpoly_shift(p):
    """(t + x)^p, expanded in nonnegative powers of x: a scalar callback for scaled_field."""
    def scalar(i):
        c = gbinom(p, i)
        return {p - i: ONE * c} if c else {}
    if p >= 0:
        scalar.max_degree = p
    return scalar


# -- exchange coefficients ---------------------------------------------------------

class ExchangeSeries:
    """Coefficients of iota f(x1+t, x2+t) (or of f(x1, x2) over F), grown on demand.

    Over F((t)) the expansion is t-dominant (the tower t, x2, x1); over F it
    is iota_{x2,x1}.  get(a, b) returns a Laurent polynomial {t-power: c}
    over F((t)) and a scalar over F.
    """

    def __init__(self, f, tbase):
        self.f = f
        self.tbase = tbase
        self.prec = 0
        self.terms = {}
        self.low = 0
        if tbase:
            g = shift_t(f, ["x1", "x2"])
            self.g = g
            self.tmax = g.num.degree("t") - g.den.degree("t") + 1
        else:
            self.g = f

    def ensure(self, need):
        if need < self.prec:
            return
        p = max(need + 1, 2 * self.prec, 8)
        if self.tbase:
            s = iota_expand(self.g, ("t", "x2", "x1"), {"t": self.tmax, "x2": p, "x1": p})
            terms = {}
            for (et, e2, e1), c in s.terms.items():
                terms.setdefault((e1, e2), {})[et] = c
        else:
            s = iota_expand(self.g, ("x2", "x1"), {"x2": p, "x1": p})
            terms = {(e1, e2): c for (e2, e1), c in s.terms.items()}
        self.terms = terms
        self.prec = p

    def items(self, amax, bmax):
        self.ensure(max(amax, bmax))
        return [(a, b, c) for (a, b), c in self.terms.items() if a <= amax and b <= bmax]

    def get(self, a, b):
        self.ensure(max(a, b))
        return self.terms.get((a, b))


def _mul_coeff(vec, c, tbase):
    if tbase and isinstance(c, dict):
        return tmul(vec, c)
    return vscale(vec, c)


def product_coeff(A, B, vec, j1, j2, clear=0):
    """[(x1-x2)^clear A(x1) B(x2) vec] at x1^j1 x2^j2."""
    out = {}
    for (c1, c2), cc in clear_poly(clear).items():
        vadd(out, A.apply(B.apply(vec, j2 - c2), j1 - c1), cc)
    return out


def braided_coeff(terms, vec, j1, j2, clear=0, tbase=True):
    """[(x1-x2)^clear sum_i f_i Y_i'(x2) Y_i(x1) vec] at x1^j1 x2^j2.

    terms: list of (A, B, ExchangeSeries) meaning f(x1,x2) B(x2) A(x1).
    """
    out = {}
    for A, B, F in terms:
        L1 = A.low_vec(vec)
        for (c1, c2), cc in clear_poly(clear).items():
            r1 = j1 - c1
            cache = {}
            # F has x1 exponents >= F.low1; the A index is i1 = r1 - a >= L1
            F.ensure(r1 - L1 + 1)
            for (a, b), f in F.terms.items():
                i1 = r1 - a
                if i1 < L1:
                    continue
                u = cache.get(i1)
                if u is None:
                    u = cache[i1] = A.apply(vec, i1)
                if not u:
                    continue
                i2 = j2 - c2 - b
                if i2 < B.low_vec(u):
                    continue
                v = B.apply(u, i2)
                if v:
                    vadd(out, _mul_coeff(v, f, tbase), cc)
            need2 = j2 - c2 - min((B.low_vec(u) for u in cache.values() if u), default=0)
            if need2 >= F.prec:
                F.ensure(need2 + 1)
                return braided_coeff(terms, vec, j1, j2, clear, tbase)
    return out


# -- the Y_E product -----------------------------------------------------------------

def ye_product(a, b, n, k):
    """a(x)_n b(x) from the cleared product (x1-x)^k a(x1) b(x).

    Y_E(a,x0)b(x) = x0^-k ((x1-x)^k a(x1)b(x))|_{x1=x+x0}; the x0^{-n-1}
    coefficient needs the x0^m part of the substitution with m = k-n-1, so
    a(x)_n b(x) at x^J is sum_{i1} binom(i1, m) G(i1, J-i1+m), where
    G(i1, i2) is the x1^i1 x^i2 coefficient of the cleared product.
    """
    m = k - n - 1
    label = "%s_(%d)%s" % (a.label, n, b.label)
    if m < 0:
        return FieldOperator(lambda w, j: {}, lambda w: 0, label, a.tbase)
    poly = clear_poly(k)
    tb = a.tbase

    def coeff(w, J):
        vec = {(w, 0): ONE} if tb else {w: ONE}
        L1 = a._low(w)
        LB = b._low(w)
        out = {}
        for i1 in range(L1, J + m - LB + 1):
            bc = gbinom(i1, m)
            if not bc:
                continue
            i2 = J - i1 + m
            for (c1, c2), cc in poly.items():
                u = b.apply(vec, i2 - c2)
                if u:
                    vadd(out, a.apply(u, i1 - c1), bc * cc)
        return out

    def low(w):
        return a._low(w) + b._low(w) - m
    return FieldOperator(coeff, low, label, tb)


def field_window_diff(A, B, keys, window):
    """First (key, j) where the two operators differ, or None."""
    lo, hi = window
    for key in keys:
        vec = {key: ONE}
        for j in range(lo, hi + 1):
            if vsub(A.apply(vec, j), B.apply(vec, j)):
                return key, j
    return None


def check_witness_independence(a, b, n, k, keys, window, suite="vertexcore"):
    """Two-witness agreement: the product computed with (x1-x)^k and (x1-x)^(k+1)."""
    bad = field_window_diff(ye_product(a, b, n, k), ye_product(a, b, n, k + 1), keys, window)
    return entry(suite, "Y_E product witness independence %s_(%d)%s" % (a.label, n, b.label),
                 {"x": list(window), "k": [k, k + 1]}, bad is None,
                 None if bad is None else [key_str(bad[0]), bad[1]])


def ye_product_checked(a, b, n, k, keys, window):
    """ye_product, raising WitnessDisagreement when the second witness disagrees."""
    e = check_witness_independence(a, b, n, k, keys, window)
    if e["result"] != "pass":
        raise WitnessDisagreement("witness (x1-x)^%d and (x1-x)^%d disagree at %s" % (k, k + 1, e["witness"]))
    return ye_product(a, b, n, k)


# -- compatibility -------------------------------------------------------------------

def _poly_terms(p):
    """A witness given as k (meaning (x1-x2)^k), a Poly in x1, x2, or a dict."""
    if isinstance(p, int):
        return clear_poly(p)
    if isinstance(p, Poly):
        terms = p.to_exponents(["x1", "x2"])
        return {tuple(e): c for e, c in terms.items()}
    return dict(p)


class CompatibilityCertificate:
    def __init__(self, ops, p, kind, window, passed, witness=None):
        self.ops = ops
        self.p = p
        self.kind = kind
        self.window = window
        self.passed = passed
        self.witness = witness

    def report(self, suite="vertexcore"):
        return entry(suite, "compatibility %s" % ",".join(o.label for o in self.ops),
                     self.window, self.passed,
                     None if self.witness is None else self.witness, kind=self.kind)


def check_compatibility(ops, p, keys, window, depth=3, raise_on_fail=False):
    """Check that p(x1,x2) A(x1) B(x2) is lower truncated in x1 on every key.

    The global bound used is the low bound of A on the input vector.  For a
    list of more than two operators every ordered pair (i < j) is checked.
    """
    terms = _poly_terms(p)
    lo, hi = window
    witness = None
    for i in range(len(ops)):
        for j in range(i + 1, len(ops)):
            A, B = ops[i], ops[j]
            for key in keys:
                vec = {key: ONE}
                L1 = A.low_vec(vec)
                for i1 in range(L1 - depth, L1):
                    for i2 in range(lo, hi + 1):
                        out = {}
                        for (e1, e2), c in terms.items():
                            vadd(out, A.apply(B.apply(vec, i2 - e2), i1 - e1), c)
                        if out:
                            witness = [A.label, B.label, key_str(key), i1, i2]
                            break
                    if witness:
                        break
                if witness:
                    break
            if witness:
                break
        if witness:
            break
    kind = "compatible" if isinstance(p, int) else "quasi"
    cert = CompatibilityCertificate(ops, p, kind, {"x": list(window), "below": depth},
                                    witness is None, witness)
    if raise_on_fail and witness is not None:
        raise CertificateFailure("not compatible: %s" % witness, witness)
    return cert


def find_clearing_order(A, B, keys, window, kmax=4):
    for k in range(kmax + 1):
        if check_compatibility([A, B], k, keys, window).passed:
            return k
    raise NoKWithinWindow("no (x1-x2)^k with k <= %d clears %s %s" % (kmax, A.label, B.label))


# -- closure -------------------------------------------------------------------------

def _signature(F, keys, window):
    out = {}
    lo, hi = window
    for key in keys:
        vec = {key: ONE}
        for j in range(lo, hi + 1):
            for k2, c in F.apply(vec, j).items():
                out[(key, j, k2)] = c
    return out


def generate_closure(U, keys, window, depth=2, nrange=(-2, None), kmax=3, tbase=False):
    """Fields reachable from U by Y_E products, deduplicated by windowed span.

    Returns (fields, table) where table lists (i, n, j, index or None):
    field i, n-th product with field j, and the index of the result (None
    when it was already in the windowed span of earlier fields).
    """
    ident = identity_field(tbase)
    fields = [ident]
    span = Echelon()
    span.add(_signature(ident, keys, window))
    for F in U:
        if span.add(_signature(F, keys, window)) is None:
            fields.append(F)
    table = []
    frontier = list(range(len(fields)))
    for _ in range(depth - 1):
        new = []
        for i in range(len(fields)):
            for j in range(len(fields)):
                if i not in frontier and j not in frontier:
                    continue
                A, B = fields[i], fields[j]
                k = find_clearing_order(A, B, keys, window, kmax)
                nmin = nrange[0]
                nmax = k - 1 if nrange[1] is None else nrange[1]
                for n in range(nmin, nmax + 1):
                    C = ye_product(A, B, n, k)
                    sig = _signature(C, keys, window)
                    if not sig:
                        table.append((i, n, j, None))
                        continue
                    if span.add(sig) is None:
                        fields.append(C)
                        new.append(len(fields) - 1)
                        table.append((i, n, j, len(fields) - 1))
                    else:
                        table.append((i, n, j, None))
        frontier = new
        if not new:
            break
    return fields, table


# -- vertex algebra models -------------------------------------------------------------

class VertexModel:
    """A vertex algebra acting on itself: vacuum, D and the state-field map.

    Subclasses provide word_field (Y of a t-free basis key), D, vacuum and
    basis.  Over F((t)) the scalar law Y(t^p w, x) = (t+x)^p Y(w, x) extends
    Y to all vectors.
    """

    tbase = False
    suite = "vertexcore"

    def __init__(self):
        self._fields = {}

    def vacuum(self):
        raise NotImplementedError

    def D(self, vec):
        raise NotImplementedError

    def word_field(self, w):
        raise NotImplementedError

    def basis(self, cutoff):
        raise NotImplementedError

    def wkey(self, w, p=0):
        return (w, p) if self.tbase else w

    def field(self, vec):
        """Y(vec, x) as a FieldOperator."""
        sig = tuple(sorted(vec.items()))
        F = self._fields.get(sig)
        if F is not None:
            return F
        terms = []
        for key, c in vec.items():
            if self.tbase:
                w, p = key
                Fw = self.word_field(w)
                if p:
                    Fw = scaled_field(Fw, tpoly_shift(p), "(t+x)^%d%s" % (p, Fw.label))
                terms.append((c, Fw))
            else:
                terms.append((c, self.word_field(key)))
        if len(terms) == 1 and terms[0][0] == 1:
            F = terms[0][1]
        else:
            F = combine_fields(terms, "Y(%s)" % vec_str(vec))
        self._fields[sig] = F
        return F

    def D_power(self, vec, r, _cache=None):
        out = vec
        for _ in range(r):
            out = self.D(out)
        return out


def _exp_D_coeffs(model, vec, N):
    """[D^r vec / r! for r = 0..N]."""
    out = [vec]
    fact = ONE
    cur = vec
    for r in range(1, N + 1):
        cur = model.D(cur)
        fact = fact * r
        out.append(vscale(cur, ONE / fact))
    return out


# -- identity checkers -------------------------------------------------------------------

def check_vacuum(model, vectors, cutoff, window):
    """Y(1,x) = id on the basis, and Y(v,x)1 = v + O(x) for the given vectors."""
    lo, hi = window
    keys = model.basis(cutoff)
    ident = model.field(model.vacuum())
    bad = None
    for key in keys:
        for j in range(lo, hi + 1):
            got = ident.apply({key: ONE}, j)
            want = {key: ONE} if j == 0 else {}
            if vsub(got, want):
                bad = [key_str(key), j]
                break
        if bad:
            break
    out = [entry(model.suite, "vacuum: Y(1,x) = identity", {"grade": str(cutoff), "x": list(window)},
                 bad is None, bad)]
    bad = None
    vac = model.vacuum()
    for name, v in vectors.items():
        F = model.field(v)
        for j in range(lo, 1):
            got = F.apply(vac, j)
            want = v if j == 0 else {}
            if vsub(got, want):
                bad = [name, j]
                break
        if bad:
            break
    out.append(entry(model.suite, "creation: Y(v,x)1 = v + O(x)", {"x": [lo, 0]}, bad is None, bad))
    return out


def verify_d_properties(model, vectors, cutoff, window):
    """D-properties: Y(v,x)1 = e^{xD}v, [D, Y(v,x)] = d/dx Y(v,x) and, over F((t)),
    e^{xD}(t^p v) = (t+x)^p e^{xD} v for p = 1, -1."""
    lo, hi = window
    vac = model.vacuum()
    win = {"grade": str(cutoff), "x": list(window)}
    out = []
    bad = None
    for name, v in vectors.items():
        F = model.field(v)
        ex = _exp_D_coeffs(model, v, max(hi, 0))
        for j in range(lo, hi + 1):
            want = ex[j] if j >= 0 else {}
            if vsub(F.apply(vac, j), want):
                bad = [name, j]
                break
        if bad:
            break
    out.append(entry(model.suite, "Y(v,x)1 = exp(xD)v", win, bad is None, bad))
    bad = None
    keys = model.basis(cutoff)
    for name, v in vectors.items():
        F = model.field(v)
        for key in keys:
            w = {key: ONE}
            Dw = model.D(w)
            for j in range(lo, hi + 1):
                lhs = vsub(model.D(F.apply(w, j)), F.apply(Dw, j))
                rhs = vscale(F.apply(w, j + 1), j + 1)
                if vsub(lhs, rhs):
                    bad = [name, key_str(key), j]
                    break
            if bad:
                break
        if bad:
            break
    out.append(entry(model.suite, "[D, Y(v,x)] = d/dx Y(v,x)", win, bad is None, bad))
    if model.tbase:
        bad = None
        for name, v in vectors.items():
            for p in (1, -1):
                tv = tshift(v, p)
                ex_tv = _exp_D_coeffs(model, tv, max(hi, 0))
                ex_v = _exp_D_coeffs(model, v, max(hi, 0))
                for j in range(0, hi + 1):
                    rhs = {}
                    for i in range(0, j + 1):
                        c = gbinom(p, i)
                        if c:
                            vadd(rhs, tshift(ex_v[j - i], p - i), c)
                    if vsub(ex_tv[j], rhs):
                        bad = [name, p, j]
                        break
                if bad:
                    break
            if bad:
                break
        out.append(entry(model.suite, "exp(xD)(f(t)v) = f(t+x)exp(xD)v", win, bad is None, bad))
    return out


def braiding_terms(model, terms):
    """[(u_i, v_i, f_i)] -> [(Y(u_i), Y(v_i), ExchangeSeries(f_i))]."""
    return [(model.field(u), model.field(v), ExchangeSeries(f, model.tbase)) for u, v, f in terms]


def check_st_locality(model, u, v, terms, k, cutoff, window, tshifts=(0,), label=None):
    """(x1-x2)^k Y(u,x1)Y(v,x2) = sum_i (x1-x2)^k iota f_i(x1+t,x2+t) Y(v_i,x2)Y(u_i,x1)."""
    lo, hi = window
    A, B = model.field(u), model.field(v)
    bt = braiding_terms(model, terms)
    keys = _shifted_basis(model, cutoff, tshifts)
    bad = None
    for key in keys:
        vec = {key: ONE}
        for j1 in range(lo, hi + 1):
            for j2 in range(lo, hi + 1):
                lhs = product_coeff(A, B, vec, j1, j2, k)
                rhs = braided_coeff(bt, vec, j1, j2, k, model.tbase)
                if vsub(lhs, rhs):
                    bad = [key_str(key), j1, j2]
                    break
            if bad:
                break
        if bad:
            break
    return entry(model.suite, "S_t-locality %s" % (label or ""), {"grade": str(cutoff), "x": list(window), "t": list(tshifts)},
                 bad is None, bad, k=k)


def locality_order(model, u, v, terms, cutoff, window, kmax=3, **kw):
    """Smallest k for which check_st_locality passes."""
    for k in range(kmax + 1):
        if check_st_locality(model, u, v, terms, k, cutoff, window, **kw)["result"] == "pass":
            return k
    raise NoKWithinWindow("locality fails for every k <= %d" % kmax)


def _shifted_basis(model, cutoff, tshifts):
    keys = model.basis(cutoff)
    if not model.tbase:
        return keys
    return [(w, p + s) for (w, p) in keys for s in tshifts]


def _single_var_series(f, tbase, prec):
    """iota_{t,x} f(x+t, t) as {i: coefficient} for 0 <= i < prec (constants over F)."""
    if tbase:
        g = shift_t(f, ["x1", "x2"]).substitute({"x1": Poly.var("x"), "x2": Poly.const(ZERO)})
        tmax = g.num.degree("t") - g.den.degree("t") + 1
        s = iota_expand(g, ("t", "x"), {"t": tmax, "x": prec})
        out = {}
        for (et, ex), c in s.terms.items():
            out.setdefault(ex, {})[et] = c
        return out
    g = f.substitute({"x1": Poly.var("x"), "x2": Poly.const(ZERO)})
    s = iota_expand(g, ("x",), {"x": prec})
    return {e[0]: c for e, c in s.terms.items()}


def check_skew_symmetry(model, u, v, terms, window, label=None):
    """Y(u,x)v = sum_i iota_{t,x} f_i(x+t,t) e^{xD} Y(v_i,-x) u_i on an x-window."""
    lo, hi = window
    lhs_F = model.field(u)
    pre = []
    for ui, vi, f in terms:
        Fv = model.field(vi)
        low = Fv.low_vec(ui)
        g = _single_var_series(f, model.tbase, hi - low + 2)
        # s-th coefficient of Y(v_i, -x) u_i and its D-powers
        ys = {s: vscale(Fv.apply(ui, s), (-1) ** s) for s in range(low, hi + 1)}
        # e^{xD} coefficients D^r y / r! for each s, up to r = hi - s
        dps = {s: _exp_D_coeffs(model, y, hi - s) for s, y in ys.items() if y}
        pre.append((g, dps, low))
    bad = None
    for N in range(lo, hi + 1):
        rhs = {}
        for g, dps, low in pre:
            for a, ga in g.items():
                for s in range(low, N - a + 1):
                    dp = dps.get(s)
                    if dp:
                        vadd(rhs, _mul_coeff(dp[N - a - s], ga, model.tbase))
        if vsub(lhs_F.apply(v, N), rhs):
            bad = [N]
            break
    return entry(model.suite, "skew-symmetry %s" % (label or ""), {"x": list(window)}, bad is None, bad)


def check_jacobi(model, u, v, terms, cutoff, window, tshifts=(0,), label=None, keys=None):
    """The S_t-Jacobi identity, all three delta terms, on window^3 in (x0, x1, x2).

    Term 1: x0^-1 delta((x1-x2)/x0) Y(u,x1)Y(v,x2)
    Term 2: x0^-1 delta((x2-x1)/(-x0)) sum_i iota f_i(x1+t,x2+t) Y(v_i,x2)Y(u_i,x1)
    Term 3: x2^-1 delta((x1-x0)/x2) Y(Y(u,x0)v, x2)
    """
    lo, hi = window
    A, B = model.field(u), model.field(v)
    bt = braiding_terms(model, terms)
    if keys is None:
        keys = _shifted_basis(model, cutoff, tshifts)
    # u_m v for the Term 3 fields
    Lu_v = A.low_vec(v)
    umv = {}
    bad = None
    for key in keys:
        w = {key: ONE}
        Lv = B.low_vec(w)
        Lu = A.low_vec(w)
        for i0, i1, i2 in iproduct(range(lo, hi + 1), repeat=3):
            n = -i0 - 1
            t1 = {}
            for j in range(0, i2 - Lv + 1):
                c = gbinom(n, j)
                if c:
                    vadd(t1, product_coeff(A, B, w, i1 - n + j, i2 - j), c * (-1) ** j)
            t2 = {}
            for j in range(0, i1 - Lu + 1):
                c = gbinom(n, j)
                if c:
                    vadd(t2, braided_coeff(bt, w, i1 - j, i2 - n + j, 0, model.tbase),
                         c * (-1) ** j * (-1) ** n)
            t3 = {}
            j = 0
            while True:
                m = j - i0 - 1
                if -m - 1 < Lu_v:
                    break
                y = umv.get(m)
                if y is None:
                    y = umv[m] = A.apply(v, -m - 1)
                nn = i1 + j
                c = gbinom(nn, j)
                if c and y:
                    vadd(t3, model.field(y).apply(w, i2 + nn + 1), c * (-1) ** j)
                j += 1
            if vsub(vsub(t1, t2), t3):
                bad = [key_str(key), i0, i1, i2]
                break
        if bad:
            break
    return entry(model.suite, "S_t-Jacobi %s" % (label or ""),
                 {"grade": str(cutoff), "x0,x1,x2": list(window), "t": list(tshifts)}, bad is None, bad)


def check_weak_associativity(model, u, v, w, window, kmax=3, label=None):
    """Smallest k <= kmax with x0^k Y(Y(u,x0)v,x2)w = ((x1-x2)^k Y(u,x1)Y(v,x2)w)|_{x1=x2+x0}."""
    lo, hi = window
    A, B = model.field(u), model.field(v)
    L1 = A.low_vec(w)
    Lv = B.low_vec(w)
    for k in range(kmax + 1):
        ok = True
        for i0 in range(lo, hi + 1):
            y = A.apply(v, i0 - k)
            Fy = model.field(y) if y else None
            for i2 in range(lo, hi + 1):
                lhs = Fy.apply(w, i2) if Fy is not None else {}
                rhs = {}
                if i0 >= 0:
                    for a in range(L1, i2 + i0 - Lv + 1):
                        c = gbinom(a, i0)
                        if c:
                            vadd(rhs, product_coeff(A, B, w, a, i2 + i0 - a, k), c)
                if vsub(lhs, rhs):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return entry(model.suite, "weak associativity %s" % (label or ""), {"x0,x2": list(window)},
                         True, k=k)
    return entry(model.suite, "weak associativity %s" % (label or ""), {"x0,x2": list(window)}, False,
                 ["no k <= %d" % kmax])


def lemma_jacobi_fast_path(model, u, v, terms, cutoff, window, tshifts=(0,), kmax=3, label=None):
    """Locality with some k and weak associativity with some l on every basis vector
    imply the Jacobi identity; reports the pair (k, l)."""
    k = None
    for kk in range(kmax + 1):
        if check_st_locality(model, u, v, terms, kk, cutoff, window, tshifts)["result"] == "pass":
            k = kk
            break
    ls = []
    for key in _shifted_basis(model, cutoff, tshifts):
        e = check_weak_associativity(model, u, v, {key: ONE}, window, kmax)
        if e["result"] != "pass":
            ls = None
            break
        ls.append(e["k"])
    ok = k is not None and ls is not None
    return entry(model.suite, "S_t-Jacobi via locality + associativity %s" % (label or ""),
                 {"grade": str(cutoff), "x": list(window)}, ok, k=k, l=max(ls) if ls else None)


def check_module_axioms(module_field, V, W_keys, vectors, kind, window, tbase_W=False, kmax=3):
    """Vacuum axiom, weak associativity and the type-specific scalar law for a module.

    module_field(vec) gives Y_W(vec, x) on W; V is the VertexModel acting.
    kind 'zero': Y_W(t v, x) = x Y_W(v, x).  kind 'one': Y_W(t v, x)(t w) =
    (t+x) t Y_W(v, x) w (W over F((t))).
    """
    lo, hi = window
    out = []
    ident = module_field(V.vacuum())
    bad = None
    for key in W_keys:
        for j in range(lo, hi + 1):
            if vsub(ident.apply({key: ONE}, j), {key: ONE} if j == 0 else {}):
                bad = [key_str(key), j]
                break
        if bad:
            break
    out.append(entry("module", "vacuum: Y_W(1,x) = identity", {"x": list(window)}, bad is None, bad))
    # weak associativity
    bad = None
    found = []
    for (nu, u), (nv, v) in iproduct(vectors.items(), repeat=2):
        A, B = module_field(u), module_field(v)
        AV = V.field(u)
        for key in W_keys:
            w = {key: ONE}
            L1, Lv = A.low_vec(w), B.low_vec(w)
            kk = None
            for k in range(kmax + 1):
                ok = True
                for i0 in range(lo, hi + 1):
                    y = AV.apply(v, i0 - k)
                    Fy = module_field(y) if y else None
                    for i2 in range(lo, hi + 1):
                        lhs = Fy.apply(w, i2) if Fy is not None else {}
                        rhs = {}
                        if i0 >= 0:
                            for a in range(L1, i2 + i0 - Lv + 1):
                                c = gbinom(a, i0)
                                if c:
                                    vadd(rhs, product_coeff(A, B, w, a, i2 + i0 - a, k), c)
                        if vsub(lhs, rhs):
                            ok = False
                            break
                    if not ok:
                        break
                if ok:
                    kk = k
                    break
            if kk is None:
                bad = [nu, nv, key_str(key)]
                break
            found.append(kk)
        if bad:
            break
    out.append(entry("module", "weak associativity on W", {"x0,x2": list(window)}, bad is None, bad,
                     k=max(found) if found else None))
    # scalar law with f(t) = t
    bad = None
    for name, v in vectors.items():
        Fv = module_field(v)
        Ftv = module_field(tshift(v, 1))
        for key in W_keys:
            for j in range(lo, hi + 1):
                if kind == "zero":
                    lhs = Ftv.apply({key: ONE}, j)
                    rhs = Fv.apply({key: ONE}, j - 1)
                else:
                    w, p = key
                    tw = {(w, p + 1): ONE}
                    lhs = Ftv.apply(tw, j)
                    rhs = vadd(tshift(Fv.apply(tw, j), 1), Fv.apply(tw, j - 1))
                if vsub(lhs, rhs):
                    bad = [name, key_str(key), j]
                    break
            if bad:
                break
        if bad:
            break
    law = "Y_W(f(t)v,x) = f(x)Y_W(v,x)" if kind == "zero" else "Y_W(f(t)v,x)g(t)w = f(t+x)g(t)Y_W(v,x)w"
    out.append(entry("module", "type %s scalar law %s" % (kind, law), {"x": list(window)}, bad is None, bad))
    return out


# -- non-degeneracy probe ----------------------------------------------------------------

def zn_probe(model, n, V0, E, window, tshift_window=None):
    """Rank of Z_n on V0^{(x)n} (x) span{x_1^e1 ... x_n^en : 0 <= e_i <= E}.

    Columns are x^e Y(v_1,x_1)...Y(v_n,x_n)1 flattened over the exponent
    window (and the t-window over F((t))).  Returns a report with the exact
    rank and, if any, explicit kernel candidates.  n is 1 or 2.
    """
    lo, hi = window
    names = list(V0)
    vac = model.vacuum()
    cols = []
    labels = []
    if n == 1:
        for nm in names:
            F = model.field(V0[nm])
            coeffs = {j: F.apply(vac, j) for j in range(lo, hi + 1)}
            for e in range(E + 1):
                col = {}
                for j, vec in coeffs.items():
                    if lo <= j + e <= hi:
                        for kk, c in vec.items():
                            col[(j + e, kk)] = c
                cols.append(_tclip(col, tshift_window, model.tbase))
                labels.append([nm, e])
    elif n == 2:
        inner = {}
        for nm in names:
            F = model.field(V0[nm])
            inner[nm] = {j: F.apply(vac, j) for j in range(lo, hi + 1)}
        for n1, n2 in iproduct(names, repeat=2):
            F1 = model.field(V0[n1])
            prod = {}
            for j2, vec in inner[n2].items():
                if not vec:
                    continue
                for j1 in range(lo, hi + 1):
                    r = F1.apply(vec, j1)
                    if r:
                        prod[(j1, j2)] = r
            for e1, e2 in iproduct(range(E + 1), repeat=2):
                col = {}
                for (j1, j2), vec in prod.items():
                    a, b = j1 + e1, j2 + e2
                    if lo <= a <= hi and lo <= b <= hi:
                        for kk, c in vec.items():
                            col[(a, b, kk)] = c
                cols.append(_tclip(col, tshift_window, model.tbase))
                labels.append([n1, n2, e1, e2])
    else:
        raise ValueError("zn_probe supports n = 1 and n = 2")
    rels = kernel(cols)
    rk = len(cols) - len(rels)
    kern = []
    for rel in rels[:3]:
        kern.append([[labels[i], fmt_scalar(c)] for i, c in sorted(rel.items())])
    return {"n": n, "columns": len(cols), "rank": rk, "full_rank": not rels,
            "kernel": kern, "window": {"x": list(window), "E": E}}


def _tclip(col, tw, tbase):
    if not tbase or tw is None:
        return col
    lo, hi = tw
    return {k: c for k, c in col.items() if lo <= k[-1][1] <= hi}


# -- braiding data ----------------------------------------------------------------------

class BraidingDatum:
    """Generator-level S(x1,x2): pairs (u, v) -> [(u_i, v_i, f_i)].

    Locality reads (x1-x2)^k Y(u,x1)Y(v,x2) = sum_i (x1-x2)^k f_i Y(v_i,x2)Y(u_i,x1).
    """

    def __init__(self, vectors, pairs):
        self.vectors = vectors
        self.pairs = pairs

    def terms(self, un, vn):
        return [(self.vectors[a], self.vectors[b], f) for a, b, f in self.pairs[(un, vn)]]

    def is_diagonal(self):
        return all(len(t) == 1 and t[0][0] == u and t[0][1] == v for (u, v), t in self.pairs.items())

    def scalar(self, un, vn):
        return self.pairs[(un, vn)][0][2]


def _swap(f):
    return f.substitute({"x1": Poly.var("x2"), "x2": Poly.var("x1")})


def _relabel(f, a, b):
    return f.substitute({"x1": Poly.var(a), "x2": Poly.var(b)})


def braiding_axioms(datum, domain, suite="braiding", model=None, cutoff=1, window=(-2, 2), tshifts=(0,)):
    """Unitarity and YBE exactly (diagonal data), the scalar and D-bracket laws
    windowed through locality when a model is supplied.  The hexagon axiom is not checked."""
    out = []
    diag = datum.is_diagonal()
    if diag:
        bad = None
        for u in domain:
            for v in domain:
                prod = datum.scalar(u, v) * _swap(datum.scalar(v, u))
                if not prod == RationalElement(Poly.const(ONE)):
                    bad = [u, v, str(prod)]
                    break
            if bad:
                break
        out.append(entry(suite, "unitarity S21(x2,x1)S(x1,x2) = 1", "exact", bad is None, bad))
        bad = None
        for u, v, w in iproduct(domain, repeat=3):
            f12 = _relabel(datum.scalar(u, v), "x1", "x2")
            f13 = _relabel(datum.scalar(u, w), "x1", "x3")
            f23 = _relabel(datum.scalar(v, w), "x2", "x3")
            left = f12 * f13 * f23
            right = f23 * f13 * f12
            if not left == right:
                bad = [u, v, w]
                break
        out.append(entry(suite, "quantum Yang-Baxter equation", "exact", bad is None, bad))
    else:
        out.append(entry(suite, "unitarity S21(x2,x1)S(x1,x2) = 1", "exact", False, ["non-diagonal datum"]))
        out.append({"suite": suite, "check": "quantum Yang-Baxter equation", "window": "non-diagonal",
                    "result": "not checked"})
    if model is not None:
        bad = None
        for u in domain:
            for v in domain:
                k = datum_order(model, datum, u, v, cutoff, window, tshifts)
                # scalar law: S(t u (x) t v) carries the same coefficients
                terms = [(tshift(a, 1), tshift(b, 1), f) for a, b, f in datum.terms(u, v)]
                e = check_st_locality(model, tshift(datum.vectors[u], 1), tshift(datum.vectors[v], 1),
                                      terms, k, cutoff, window, tshifts)
                if e["result"] != "pass":
                    bad = [u, v] + e["witness"]
                    break
            if bad:
                break
        out.append(entry(suite, "scalar law S(f(t)u (x) g(t)v)", {"grade": str(cutoff), "x": list(window)},
                         bad is None, bad))
        bad = None
        for u in domain:
            for v in domain:
                k = datum_order(model, datum, u, v, cutoff, window, tshifts)
                terms = []
                for a, b, f in datum.terms(u, v):
                    terms.append((model.D(a), b, f))
                    d1 = f.derivative("x1")
                    if not d1.is_zero():
                        terms.append((a, b, d1))
                e = check_st_locality(model, model.D(datum.vectors[u]), datum.vectors[v], terms, k + 1,
                                      cutoff, window, tshifts)
                if e["result"] != "pass":
                    bad = [u, v] + e["witness"]
                    break
            if bad:
                break
        out.append(entry(suite, "D-bracket [D (x) 1, S] = -d/dx1 S", {"grade": str(cutoff), "x": list(window)},
                         bad is None, bad))
    return out


def datum_order(model, datum, u, v, cutoff, window, tshifts=(0,), kmax=3):
    return locality_order(model, datum.vectors[u], datum.vectors[v], datum.terms(u, v), cutoff, window,
                          kmax, tshifts=tshifts)


# -- the free-fermion model ---------------------------------------------------------------

class FockModel(VertexModel):
    """V_B as a vertex superalgebra over F with the parity braiding."""

    suite = "fock"

    def __init__(self):
        super().__init__()

    def vacuum(self):
        return {VACUUM: ONE}

    def D(self, vec):
        return fock_D(vec)

    def word_field(self, w):
        F = self._fields.get(("word", w))
        if F is None:
            F = self._fields[("word", w)] = vertex_operator(w)
        return F

    def basis(self, cutoff):
        return FockSpace(cutoff).basis()

    def generators(self):
        return {"a": {((1,), ()): ONE}, "b": {((), (1,)): ONE}}

    def braiding(self, names=("a", "b"), sign=-1):
        """The constant braiding f = sign for every pair of odd generators."""
        gens = self.generators()
        f = RationalElement(Poly.const(ONE * sign))
        pairs = {(u, v): [(u, v, f)] for u in names for v in names}
        return BraidingDatum(gens, pairs)


class ToyModel(VertexModel):
    """F1 + Fu with u.u = 0, D = 0 and Y(u,x)v = u.v: a degenerate algebra."""

    suite = "toy"

    def vacuum(self):
        return {"1": ONE}

    def D(self, vec):
        return {}

    def word_field(self, w):
        if w == "1":
            return FieldOperator(lambda k, j: {k: ONE} if j == 0 else {}, lambda k: 0, "Y(1)")
        return FieldOperator(lambda k, j: ({"u": ONE} if k == "1" else {}) if j == 0 else {},
                             lambda k: 0, "Y(u)")

    def basis(self, cutoff):
        return ["1", "u"]


def fock_identity_suite(cutoff=2, window=(-2, 2), jwindow=(-2, 2)):
    """Vacuum, D-properties, locality, skew-symmetry and Jacobi for V_B with f = -1."""
    M = FockModel()
    gens = M.generators()
    datum = M.braiding()
    out = check_vacuum(M, gens, cutoff, window)
    out += verify_d_properties(M, gens, cutoff, window)
    for u, v in iproduct(gens, repeat=2):
        terms = datum.terms(u, v)
        out.append(check_st_locality(M, gens[u], gens[v], terms, 1 if u != v else 0, cutoff, window,
                                     label="(%s,%s)" % (u, v)))
        out.append(check_skew_symmetry(M, gens[u], gens[v], terms, window, label="(%s,%s)" % (u, v)))
        out.append(check_jacobi(M, gens[u], gens[v], terms, cutoff, jwindow, label="(%s,%s)" % (u, v)))
    out += braiding_axioms(datum, list(gens), suite="fock")
    return out
