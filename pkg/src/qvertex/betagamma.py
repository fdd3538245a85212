"""The quantum beta-gamma system realized on V_B (x) F((t)).

beta_t(x)  = (1-q)(t+x) Y(a,qx) Phi^+((1-q)t+x)
gamma_t(x) = q Y(b,qx) Phi^-((1-q)t+x)

Phi^{+-}(z) w is a Laurent polynomial in z; each power z^p is expanded as
((1-q)t + x)^p in nonnegative powers of x, i.e. with t dominant.  The extra
factor q on gamma_t makes the delta term of the third relation come out with
coefficient 1.
"""
from gmpy2 import mpq

from .errors import QEqualsOne, ConfigError, RelationFailure, RewriteDivergence
from .fields import (FieldOperator, tshift, tmul, identity_field, scaled_field,
                     combine_fields)
from .fock import (VACUUM, FockSpace, grade, word_str, mode_on_word, phi_map, fock_D,
                   _fermion_low, HALF)
from .linalg import Echelon, kernel
from .poly import Poly
from .ratfun import RationalElement, iota_expand
from .scalar import ZERO, ONE, QFunc, qgen, rat, gbinom, field_inverse
from .vec import vadd, vscale, vsub
from .vertexcore import (ExchangeSeries, VertexModel, BraidingDatum, ye_product, entry,
                         tpoly_shift, product_coeff, braided_coeff, check_module_axioms,
                         check_vacuum, verify_d_properties, check_st_locality, locality_order,
                         check_skew_symmetry, check_jacobi, check_weak_associativity,
                         check_witness_independence, field_window_diff, braiding_axioms,
                         zn_probe, ToyModel, key_str)
from itertools import product as iproduct


def q_scalar(q):
    """The deformation parameter: None or 'symbolic' keeps q in Q(q)."""
    if q is None or q == "symbolic":
        return qgen()
    v = rat(q)
    if v == 1:
        raise QEqualsOne("q = 1 is excluded: the construction needs q != 1")
    if v == 0:
        raise ConfigError("q must be nonzero")
    return v


def _pow(c, n):
    if n >= 0:
        return c ** n
    return field_inverse(c) ** (-n)


class BetaGammaRealization:
    """V_B (x) F((t)) with the fields beta_t(x), gamma_t(x).

    Vectors are dicts {(word, t-power): scalar}.
    """

    def __init__(self, q=2):
        self.qspec = None if (q is None or q == "symbolic") else rat(q)
        self.q = q_scalar(q)
        one_minus_q = ONE - self.q
        self.c = one_minus_q
        self.beta = FieldOperator(self._beta_coeff, _fermion_low, "beta_t(x)", tbase=True)
        self.gamma = FieldOperator(self._gamma_coeff, _fermion_low, "gamma_t(x)", tbase=True)
        self._zpow = {}

    def field(self, name):
        return self.beta if name == "beta" else self.gamma

    def _z_power(self, p, i):
        """x^i coefficient of ((1-q)t + x)^p: binom(p,i) (1-q)^(p-i) t^(p-i)."""
        key = (p, i)
        r = self._zpow.get(key)
        if r is None:
            b = gbinom(p, i)
            r = (p - i, b * _pow(self.c, p - i)) if b else None
            self._zpow[key] = r
        return r

    def _twisted(self, letter, sign, w, J, extra):
        """x^J coefficient of x^e * Y(letter, qx) Phi^{sign}((1-q)t+x) w, summed over
        (e, t-power, scalar) in extra."""
        out = {}
        q = self.q
        for (u, p), c in phi_map(sign, w).items():
            lo = _fermion_low(u)
            for e, tp, s in extra:
                i = 0
                while True:
                    jy = J - e - i
                    if jy < lo:
                        break
                    zp = self._z_power(p, i)
                    if zp is not None:
                        r = mode_on_word(letter, -jy - 1, u)
                        if r is not None:
                            coef = c * s * zp[1] * _pow(q, jy) * r[0]
                            vadd(out, {(r[1], tp + zp[0]): coef})
                    if p >= 0 and i >= p:
                        break
                    i += 1
        return out

    def _beta_coeff(self, w, J):
        # (1-q)(t+x): t-part (e=0, t^1) and x-part (e=1, t^0)
        return self._twisted("a", 1, w, J, [(0, 1, self.c), (1, 0, self.c)])

    def _gamma_coeff(self, w, J):
        return self._twisted("b", -1, w, J, [(0, 0, self.q)])

    def vacuum(self):
        return {(VACUUM, 0): ONE}

    def D(self, vec):
        """Translation operator q D_B + d/dt on V_B (x) F((t))."""
        out = {}
        for (w, p), c in vec.items():
            if p:
                vadd(out, {(w, p - 1): c * p})
            d = fock_D({w: ONE})
            for u, cu in d.items():
                vadd(out, {(u, p): c * cu * self.q})
        return out

    def basis(self, cutoff, tshifts=(0,)):
        return [(w, k) for w in FockSpace(cutoff).basis() for k in tshifts]

    # -- relation coefficients -----------------------------------------------------
    def exchange_function(self, kind):
        """f(x1+t, x2+t) for kind 'like' ((qx2-x1)/(x2-qx1)) or 'mixed' (its inverse)."""
        q = self.q
        t, x1, x2 = Poly.var("t"), Poly.var("x1"), Poly.var("x2")
        a = (t.scale(q - ONE) + x2.scale(q) - x1)
        b = (t.scale(ONE - q) + x2 - x1.scale(q))
        return RationalElement(a, b) if kind == "like" else RationalElement(b, a)

    def exchange_series(self, kind, prec):
        """t-dominant expansion {(i1, i2): {t-power: c}} with x-exponents < prec."""
        f = self.exchange_function(kind)
        s = iota_expand(f, ("t", "x1", "x2"), {"t": 1, "x1": prec, "x2": prec})
        out = {}
        for (et, e1, e2), c in s.terms.items():
            out.setdefault((e1, e2), {})[et] = c
        return out


def _window_entry(suite, check, window, ok, witness=None):
    e = {"suite": suite, "check": check, "window": window, "result": "pass" if ok else "fail"}
    if witness is not None:
        e["witness"] = witness
    return e


def product_coeff(A, B, vec, j1, j2):
    """[A(x1) B(x2) vec] at x1^j1 x2^j2."""
    return A.apply(B.apply(vec, j2), j1)


def reversed_product_coeff(A, B, vec, j1, j2):
    """[B(x2) A(x1) vec] at x1^j1 x2^j2."""
    return B.apply(A.apply(vec, j1), j2)


def braided_reversed(F, A, B, vec, j1, j2, clear=0):
    """[(x1-x2)^clear F(x1,x2) B(x2) A(x1) vec] at x1^j1 x2^j2, F given by exchange_series."""
    out = {}
    L1 = A.low_vec(vec)
    terms = _clear_poly(clear)
    for (c1, c2), cc in terms.items():
        for a in range(0, j1 - c1 - L1 + 1):
            i1 = j1 - c1 - a
            u = A.apply(vec, i1)
            if not u:
                continue
            L2 = B.low_vec(u)
            for b in range(0, j2 - c2 - L2 + 1):
                f = F.get((a, b))
                if not f:
                    continue
                v = B.apply(u, j2 - c2 - b)
                if v:
                    vadd(out, tmul(v, f), cc)
    return out


def _clear_poly(k):
    """(x1 - x2)^k as {(e1, e2): coeff}."""
    return {(k - i, i): gbinom(k, i) * (-1) ** i for i in range(k + 1)}


def cleared_product(A, B, vec, j1, j2, clear=0):
    """[(x1-x2)^clear A(x1) B(x2) vec] at x1^j1 x2^j2."""
    out = {}
    for (c1, c2), cc in _clear_poly(clear).items():
        vadd(out, product_coeff(A, B, vec, j1 - c1, j2 - c2), cc)
    return out


def verify_Atq_relations(bg, cutoff=2, twindow=(-4, 4), xwindow=(-4, 4), tshifts=None):
    """Check the three defining relations of A_{t,q}(beta gamma) on basis vectors.

    Coefficients are compared at every (x1, x2) exponent pair in xwindow^2
    for every basis word of grade <= cutoff and t-shift in tshifts
    (default: 0 and both window ends; the fields are F((t))-linear).
    """
    lo, hi = xwindow
    prec = hi - lo + 2 * int(mpq(cutoff)) + 6
    Fl = bg.exchange_series("like", prec)
    Fm = bg.exchange_series("mixed", prec)
    if tshifts is None:
        tshifts = sorted({0, twindow[0], twindow[1]})
    report = []
    win = {"grade": str(mpq(cutoff)), "t": list(twindow), "x": list(xwindow)}
    rels = [("beta beta exchange", bg.beta, bg.beta, Fl, False),
            ("gamma gamma exchange", bg.gamma, bg.gamma, Fl, False),
            ("beta gamma relation with delta", bg.beta, bg.gamma, Fm, True)]
    basis = bg.basis(cutoff, tshifts)
    for name, A, B, F, delta in rels:
        bad = None
        for key in basis:
            vec = {key: ONE}
            for j1 in range(lo, hi + 1):
                for j2 in range(lo, hi + 1):
                    lhs = product_coeff(A, B, vec, j1, j2)
                    rhs = braided_reversed(F, A, B, vec, j1, j2)
                    diff = vsub(lhs, rhs)
                    if delta and j1 + j2 == -1:
                        diff = vsub(diff, vec)
                    if diff:
                        bad = [word_str(key[0]), key[1], j1, j2]
                        break
                if bad:
                    break
            if bad:
                break
        report.append(_window_entry("betagamma", name, win, bad is None, bad))
    return report


# -- the universal vacuum module by PBW rewriting -------------------------------------

def _first_mode(mono):
    A, B = mono
    if A:
        return "a", -A[0], (A[1:], B)
    return "b", -B[0], (A, B[1:])


def _prepend(letter, n, mono):
    A, B = mono
    return ((-n,) + A, B) if letter == "a" else (A, (-n,) + B)


def _before(x, n, y, n1):
    """Does x_n stand to the left of y_{n1} in a normal monomial?"""
    if x != y:
        return x == "a"
    return n < n1


def _as_tpoly(c):
    return c if isinstance(c, dict) else {0: c}


class PBWModule:
    """Vacuum module spanned by normal monomials, with modes acting by rewriting.

    A normal monomial has the shape of a Fock word: beta (letter a) modes
    strictly decreasing, then gamma (letter b) modes strictly decreasing.
    coeffs[(x, y)] is the exchange series C with
        x_n y_m = sum_{i,j} C_ij y_{m+j} x_{n+i}  (+ delta_{n+m+1,0} when x != y),
    read off from x(x1)y(x2) = C(x1,x2) y(x2)x(x1) (+ x1^-1 delta(x2/x1)).
    Vectors are dicts {(monomial, t-power): scalar}.
    """

    def __init__(self, coeffs, label="W"):
        self.coeffs = coeffs
        self.label = label
        self._memo = {}
        self._diag = {}

    def apply(self, letter, n, vec):
        out = {}
        for (mono, p), c in vec.items():
            r = self.apply_mono(letter, n, mono)
            if r:
                vadd(out, tshift(r, p), c)
        return out

    def apply_mono(self, x, n, mono):
        key = (x, n, mono)
        r = self._memo.get(key)
        if r is not None:
            return r
        try:
            r = self._rewrite(x, n, mono)
        except RecursionError:
            raise RewriteDivergence("rewriting %s_%d on %s does not terminate" % (x, n, word_str(mono)))
        self._memo[key] = r
        return r

    def _rewrite(self, x, n, mono):
        if mono == VACUUM:
            return {} if n >= 0 else {(_prepend(x, n, mono), 0): ONE}
        y, n1, rest = _first_mode(mono)
        if n < 0 and _before(x, n, y, n1):
            return {(_prepend(x, n, mono), 0): ONE}
        C = self.coeffs[(x, y)]
        g = grade(rest)
        imax = int(g - HALF - n) if g - HALF - n >= 0 else -1
        out = {}
        same = x == y and n == n1
        for i in range(0, imax + 1):
            inner = self.apply_mono(x, n + i, rest)
            if not inner:
                continue
            gi = max(grade(w) for (w, _) in inner)
            jmax_f = gi - HALF - n1
            if jmax_f < 0:
                continue
            C.ensure(max(i, int(jmax_f)) + 1)
            for (a, b), c in C.terms.items():
                if a != i or b > jmax_f or (same and a == 0 and b == 0):
                    continue
                outer = self.apply(y, n1 + b, inner)
                if outer:
                    vadd(out, tmul(outer, _as_tpoly(c)))
        if same:
            # x_n x_n = C_00 x_n x_n + rest  =>  x_n x_n = rest / (1 - C_00)
            c00 = _as_tpoly(C.get(0, 0))
            if set(c00) - {0}:
                raise RewriteDivergence("equal-mode coefficient is not a constant")
            inv = field_inverse(ONE - c00.get(0, ZERO))
            out = vscale(out, inv)
        elif x != y and n + n1 + 1 == 0:
            vadd(out, {(rest, 0): ONE})
        return out

    def field(self, letter):
        """The generating field letter(x) acting on the module."""
        def coeff(mono, j):
            return self.apply_mono(letter, -j - 1, mono)
        return FieldOperator(coeff, _fermion_low, "%s(x)" % letter, tbase=True)


def _exchange(q, kind):
    """f(x1, x2): 'like' (q x2 - x1)/(x2 - q x1), 'mixed' its inverse."""
    x1, x2 = Poly.var("x1"), Poly.var("x2")
    a = x2.scale(q) - x1
    b = x2 - x1.scale(q)
    return RationalElement(a, b) if kind == "like" else RationalElement(b, a)


def _swap12(f):
    return f.substitute({"x1": Poly.var("x2"), "x2": Poly.var("x1")})


def pbw_coefficients(q, tbase):
    """Exchange series for the four ordered letter pairs.

    tbase: coefficients f(x1+t, x2+t) expanded t-dominant (A_{t,q}); else
    f(x1, x2) expanded with iota_{x2,x1} (A_q).  For gamma before beta the
    relation is gamma(x1)beta(x2) = like(x2, x1) beta(x2)gamma(x1) + delta.
    """
    like = _exchange(q, "like")
    mixed = _exchange(q, "mixed")
    return {("a", "a"): ExchangeSeries(like, tbase), ("b", "b"): ExchangeSeries(like, tbase),
            ("a", "b"): ExchangeSeries(mixed, tbase), ("b", "a"): ExchangeSeries(_swap12(like), tbase)}


class UniversalVacuum:
    """V_{t,q}(beta gamma) by PBW rewriting, with the realization map to V_B (x) F((t))."""

    def __init__(self, q=2):
        self.bg = BetaGammaRealization(q)
        self.q = self.bg.q
        self.pbw = PBWModule(pbw_coefficients(self.q, True), "V_tq")
        self._R = {VACUUM: self.bg.vacuum()}
        self._dec = {}

    def realize_mono(self, mono):
        r = self._R.get(mono)
        if r is None:
            x, n, rest = _first_mode(mono)
            r = self.bg.field("beta" if x == "a" else "gamma").apply(self.realize_mono(rest), -n - 1)
            self._R[mono] = r
        return r

    def realize(self, vec):
        out = {}
        for (mono, p), c in vec.items():
            vadd(out, tshift(self.realize_mono(mono), p), c)
        return out

    def lead(self, w):
        """R(w) = c t^e w + lower Fock grade: returns (e, c)."""
        r = self.realize_mono(w)
        g = grade(w)
        top = {p: c for (u, p), c in r.items() if u == w}
        if len(top) != 1:
            raise RelationFailure("realized monomial %s has no single leading term" % word_str(w))
        for (u, p) in r:
            if u != w and grade(u) >= g:
                raise RelationFailure("realized monomial %s is not triangular" % word_str(w))
        (e, c), = top.items()
        return e, c

    def decompose(self, vec):
        """Write a realized vector as a combination of realized normal monomials."""
        vec = dict(vec)
        out = {}
        guard = 0
        while vec:
            guard += 1
            if guard > 100000:
                raise RewriteDivergence("decomposition does not terminate")
            w = max((k[0] for k in vec), key=lambda u: (grade(u), u))
            e, c0 = self.lead(w)
            inv = field_inverse(c0)
            Rw = self.realize_mono(w)
            for p, c in [(p, c) for (u, p), c in vec.items() if u == w]:
                s = c * inv
                vadd(out, {(w, p - e): s})
                vadd(vec, tshift(Rw, p - e), -s)
        return out

    def decompose_word(self, w):
        r = self._dec.get(w)
        if r is None:
            r = self._dec[w] = self.decompose({(w, 0): ONE})
        return r


def check_intertwining(U, cutoff, nrange=None, suite="betagamma"):
    """R(x_n m) = x_n R(m) for every normal monomial m of grade <= cutoff."""
    bad = None
    for mono in FockSpace(cutoff).basis():
        g = grade(mono)
        lo, hi = (-3, int(g + HALF)) if nrange is None else nrange
        for x in ("a", "b"):
            F = U.bg.field("beta" if x == "a" else "gamma")
            for n in range(lo, hi + 1):
                lhs = U.realize(U.pbw.apply_mono(x, n, mono))
                rhs = F.apply(U.realize_mono(mono), -n - 1)
                if vsub(lhs, rhs):
                    bad = [x, n, word_str(mono)]
                    break
            if bad:
                break
        if bad:
            break
    return entry(suite, "realization intertwines PBW mode actions", {"grade": str(cutoff)}, bad is None, bad)


def laurent_to_tfunc(poly):
    """A Laurent polynomial {p: c} in t as an element of Q(t)."""
    if not poly:
        return ZERO
    lo = min(poly)
    hi = max(poly)
    num = [poly.get(lo + i, ZERO) for i in range(hi - lo + 1)]
    if lo >= 0:
        return QFunc([ZERO] * lo + num, (ONE,), "t").collapse()
    return QFunc(num, [ZERO] * (-lo) + [ONE], "t").collapse()


def to_tfunc_vector(vec, tag=()):
    """{(w, p): c} -> {tag + (w,): element of Q(t)}."""
    acc = {}
    for (w, p), c in vec.items():
        acc.setdefault(w, {})[p] = c
    return {tag + (w,): laurent_to_tfunc(pp) for w, pp in acc.items()}


def _require_rational(q):
    if isinstance(q, QFunc):
        raise ConfigError("this computation runs over Q(t) and needs a rational q")


def graded_dimensions(U, cutoff):
    """Per grade: number of normal monomials and the Q(t)-rank of their realizations."""
    _require_rational(U.q)
    out = {}
    space = FockSpace(cutoff)
    for g in space.grades():
        words = space.words_of_grade(g)
        e = Echelon()
        for w in words:
            e.add(to_tfunc_vector(U.realize_mono(w)))
        out[g] = (len(words), len(e))
    return out


def omega_space(U, cutoff):
    """Vectors of grade <= cutoff killed by beta_t(n), gamma_t(n), n >= 0, over Q(t).

    Returns the list of kernel vectors as {word: Q(t) scalar}.
    """
    _require_rational(U.q)
    words = FockSpace(cutoff).basis()
    hi = int(mpq(cutoff) + HALF)
    cols = []
    for w in words:
        col = {}
        for name in ("beta", "gamma"):
            F = U.bg.field(name)
            for n in range(0, hi + 1):
                col.update(to_tfunc_vector(F.apply({(w, 0): ONE}, -n - 1), (name, n)))
        cols.append(col)
    rels = kernel(cols)
    return [{words[i]: c for i, c in rel.items()} for rel in rels]


# -- V_{t,q}(beta gamma) as a vertex algebra --------------------------------------------

class BetaGammaModel(VertexModel):
    """V_{t,q}(beta gamma), realized on V_B (x) F((t)), with Y built from products of fields.

    Y(x_n m, x) = x(x)_n Y(m, x) for a normal monomial x_n m, and a realized
    vector is first written in the realized monomials.
    """

    tbase = True
    suite = "betagamma"

    def __init__(self, q=2):
        super().__init__()
        self.U = UniversalVacuum(q)
        self.bg = self.U.bg
        self.q = self.bg.q
        self._psi = {}

    def vacuum(self):
        return self.bg.vacuum()

    def D(self, vec):
        return self.bg.D(vec)

    def basis(self, cutoff):
        return [(w, 0) for w in FockSpace(cutoff).basis()]

    def psi(self, mono):
        F = self._psi.get(mono)
        if F is None:
            if mono == VACUUM:
                F = identity_field(True)
            else:
                x, n, rest = _first_mode(mono)
                other = "b" if x == "a" else "a"
                # Y(y_{-m}1) is a derivative of order m-1 of y(x): pole order m against x(x)
                k = sum(-m for y, m in _modes(rest) if y == other)
                F = ye_product(self.bg.field("beta" if x == "a" else "gamma"), self.psi(rest), n, k)
            self._psi[mono] = F
        return F

    def word_field(self, w):
        F = self._fields.get(("word", w))
        if F is None:
            terms = []
            for (mono, p), c in self.U.decompose_word(w).items():
                P = self.psi(mono)
                if p:
                    P = scaled_field(P, tpoly_shift(p))
                terms.append((c, P))
            F = combine_fields(terms, "Y(%s)" % word_str(w))
            self._fields[("word", w)] = F
        return F

    def generators(self):
        return {"beta": self.U.realize_mono(((1,), ())), "gamma": self.U.realize_mono(((), (1,)))}

    def braiding(self):
        return generator_braiding(self.q, self.generators())


def _modes(mono):
    A, B = mono
    return [("a", -m) for m in A] + [("b", -m) for m in B]


def generator_braiding(q, vectors=None):
    """Diagonal braiding on the generators: like pairs (q x2 - x1)/(x2 - q x1),
    mixed pairs (x2 - q x1)/(q x2 - x1)."""
    qs = q_scalar(q) if not isinstance(q, QFunc) and not isinstance(q, type(ONE)) else q
    like, mixed = _exchange(qs, "like"), _exchange(qs, "mixed")
    pairs = {("beta", "beta"): [("beta", "beta", like)], ("gamma", "gamma"): [("gamma", "gamma", like)],
             ("beta", "gamma"): [("beta", "gamma", mixed)], ("gamma", "beta"): [("gamma", "beta", mixed)]}
    return BraidingDatum(vectors or {}, pairs)


def build_universal_vacuum(q=2, cutoff=3):
    """The PBW module, its graded dimensions against the realization, and the intertwiner check."""
    U = UniversalVacuum(q)
    report = []
    dims = graded_dimensions(U, cutoff)
    fock = FockSpace(cutoff).graded_dims()
    ok = all(dims[g][0] == dims[g][1] == fock[g] for g in fock)
    report.append(entry("betagamma", "graded dimensions: PBW = realized = V_B", {"grade": str(cutoff)}, ok,
                        None if ok else {str(g): list(d) for g, d in dims.items()},
                        dims={str(g): dims[g][0] for g in sorted(dims)}))
    report.append(check_intertwining(U, min(mpq(cutoff), 2)))
    return U, report


# -- the classical-parameter algebra A_q(beta gamma) -----------------------------------

def xshift_field(F, p):
    """x^p F(x)."""
    if not p:
        return F
    return FieldOperator(lambda w, j: F._coeff0(w, j - p), lambda w: F._low(w) + p,
                         "x^%d%s" % (p, F.label), F.tbase)


def module_relations(W_fields, coeffs, keys, xwindow, suite):
    """The three exchange relations on a PBW module, with the given coefficient series."""
    lo, hi = xwindow
    out = []
    rels = [("beta beta exchange", "a", "a", False), ("gamma gamma exchange", "b", "b", False),
            ("beta gamma relation with delta", "a", "b", True)]
    for name, x, y, delta in rels:
        A, B = W_fields[x], W_fields[y]
        terms = [(A, B, coeffs[(x, y)])]
        bad = None
        for key in keys:
            vec = {key: ONE}
            for j1 in range(lo, hi + 1):
                for j2 in range(lo, hi + 1):
                    diff = vsub(product_coeff(A, B, vec, j1, j2), braided_coeff(terms, vec, j1, j2, 0, True))
                    if delta and j1 + j2 == -1:
                        diff = vsub(diff, vec)
                    if diff:
                        bad = {"vector": word_str(key[0]), "x1": j1, "x2": j2, "defect": _vstr(diff)}
                        break
                if bad:
                    break
            if bad:
                break
        out.append(entry(suite, name, {"x": list(xwindow)}, bad is None, bad))
    return out


def _vstr(vec):
    from .vertexcore import vec_str
    return vec_str(vec)


def collapse_certificate(W):
    """Test whether the PBW span forces w0 = 0.

    In the vacuum module beta_0 gamma_{-1} w0 = w0.  If the beta gamma
    relation at modes (0, -1) applied to gamma_{-1} w0 leaves a nonzero
    multiple of gamma_{-1} w0, the quotient by the relations kills
    gamma_{-1} w0 and then w0 itself.
    """
    g1 = {(((), (1,)), 0): ONE}
    w0 = {(VACUUM, 0): ONE}
    first = W.apply("a", 0, g1)
    # relation at x1^{-1} x2^{0}: beta_0 gamma_{-1} - sum C gamma beta - delta_{0-1+1,0}
    A, B = W.field("a"), W.field("b")
    C = W.coeffs[("a", "b")]
    lhs = product_coeff(A, B, g1, -1, 0)
    rhs = braided_coeff([(A, B, C)], g1, -1, 0, 0, True)
    vadd(rhs, g1)
    defect = vsub(lhs, rhs)
    multiple = None
    if defect and set(defect) == set(g1):
        multiple = defect[next(iter(g1))]
    collapses = (not vsub(first, w0)) and multiple is not None and multiple != 0
    return {"beta_0 gamma_-1 w0": _vstr(first), "defect on gamma_-1 w0": _vstr(defect),
            "multiple": None if multiple is None else str(multiple), "w0 = 0 forced": collapses}


class TypeZeroAction:
    """Y_W(v, x) for v in V_{t,q}(beta gamma) on a PBW module W of A_q(beta gamma).

    Normal monomials act through products of the fields of W; a scalar
    f(t) acts as f(x) (the type zero law).
    """

    def __init__(self, V, W):
        self.V = V
        self.W = W
        self.fields = {"a": W.field("a"), "b": W.field("b")}
        self._psi = {}
        self._cache = {}

    def psi(self, mono):
        F = self._psi.get(mono)
        if F is None:
            if mono == VACUUM:
                F = identity_field(True)
            else:
                x, n, rest = _first_mode(mono)
                other = "b" if x == "a" else "a"
                k = sum(-m for y, m in _modes(rest) if y == other)
                F = ye_product(self.fields[x], self.psi(rest), n, k)
            self._psi[mono] = F
        return F

    def __call__(self, vec):
        sig = tuple(sorted(vec.items()))
        F = self._cache.get(sig)
        if F is None:
            terms = []
            for (w, p), c in vec.items():
                for (mono, e), d in self.V.U.decompose_word(w).items():
                    terms.append((c * d, xshift_field(self.psi(mono), p + e)))
            F = combine_fields(terms, "Y_W")
            self._cache[sig] = F
        return F


def build_Aq_module(q=2, cutoff=2, xwindow=(-2, 2), module_window=(-1, 1), check_module=True):
    """The vacuum module of A_q(beta gamma) by PBW rewriting, coefficients expanded with iota_{x2,x1}.

    Reports the three relations on the PBW span, the collapse test for
    the vacuum vector, and the type zero module axioms against V_{t,q}.
    """
    qs = q_scalar(q)
    coeffs = pbw_coefficients(qs, False)
    W = PBWModule(coeffs, "A_q")
    keys = [(w, 0) for w in FockSpace(cutoff).basis()]
    fields = {"a": W.field("a"), "b": W.field("b")}
    suite = "Aq-module"
    report = module_relations(fields, coeffs, keys, xwindow, suite)
    cert = collapse_certificate(W)
    report.append(entry(suite, "vacuum vector survives the relations", "modes (0,-1) on gamma_-1 w0",
                        not cert["w0 = 0 forced"], cert))
    if check_module:
        V = BetaGammaModel(q)
        act = TypeZeroAction(V, W)
        gens = V.generators()
        report += check_module_axioms(act, V, keys, gens, "zero", module_window)
    return W, report


# -- suites ---------------------------------------------------------------------------

def _inverted(datum):
    """The same datum with every coefficient replaced by its inverse (a wrong braiding)."""
    pairs = {k: [(a, b, RationalElement(Poly.const(ONE)) / f) for a, b, f in v] for k, v in datum.pairs.items()}
    return BraidingDatum(datum.vectors, pairs)


def quantum_va_structure(q=2, cutoff=2, window=(-2, 2), jwindow=(-2, 2), tshifts=(0,), negative=True):
    """The vertex algebra identities for V_{t,q}(beta gamma) on the generators."""
    suite = "betagamma"
    M = BetaGammaModel(q)
    gens = M.generators()
    datum = M.braiding()
    keys = M.basis(cutoff)
    out = check_vacuum(M, gens, cutoff, window)
    out += verify_d_properties(M, gens, cutoff, window)
    for name, F in (("beta", M.bg.beta), ("gamma", M.bg.gamma)):
        bad = field_window_diff(M.field(gens[name]), F, keys, window)
        out.append(entry(suite, "Y(%s_t(-1)1, x) = %s_t(x)" % (name, name), {"grade": str(cutoff), "x": list(window)},
                         bad is None, None if bad is None else [key_str(bad[0]), bad[1]]))
    wrong = _inverted(datum) if negative else None
    for u, v in iproduct(sorted(gens), repeat=2):
        label = "(%s,%s)" % (u, v)
        terms = datum.terms(u, v)
        expected = 0 if u == v else 1
        k = locality_order(M, gens[u], gens[v], terms, cutoff, window, tshifts=tshifts)
        out.append(entry(suite, "S_t-locality order %s" % label, {"grade": str(cutoff), "x": list(window)},
                         k == expected, None if k == expected else {"found": k, "expected": expected}, k=k))
        loc = check_st_locality(M, gens[u], gens[v], terms, k, cutoff, window, tshifts, label=label)
        skew = check_skew_symmetry(M, gens[u], gens[v], terms, window, label=label)
        out += [loc, skew]
        if wrong is not None:
            wterms = wrong.terms(u, v)
            wl = check_st_locality(M, gens[u], gens[v], wterms, 2, cutoff, window, tshifts, label=label)
            ws = check_skew_symmetry(M, gens[u], gens[v], wterms, window, label=label)
            agree = (loc["result"] == skew["result"]) and (wl["result"] == ws["result"] == "fail")
            out.append(entry(suite, "skew-symmetry agrees with locality %s (true and inverted braiding)" % label,
                             {"x": list(window)}, agree, None if agree else [wl["result"], ws["result"]]))
        out.append(check_jacobi(M, gens[u], gens[v], terms, cutoff, jwindow, tshifts, label=label))
    for u, v in iproduct(sorted(gens), repeat=2):
        e = check_weak_associativity(M, gens[u], gens[v], M.vacuum(), window)
        out.append(e)
    out += _scalar_law(M, gens, cutoff, window)
    out += psi_witness_checks(M, cutoff, window)
    return out


def _scalar_law(M, gens, cutoff, window):
    """Y(f(t)u,x)g(t)v = f(t+x)g(t)Y(u,x)v with f = g = t, for V acting on itself."""
    rows = check_module_axioms(M.field, M, M.basis(cutoff), gens, "one", window)
    law = rows[-1]
    law["suite"] = "betagamma"
    law["check"] = "scalar law Y(f(t)u,x)g(t)v = f(t+x)g(t)Y(u,x)v"
    return [law]


def psi_witness_checks(M, cutoff, window, depth=2):
    """For each normal monomial x_n m up to grade depth, the product x(x)_n Y(m,x)
    agrees when cleared with (x1-x)^k and (x1-x)^(k+1)."""
    keys = M.basis(cutoff - 1 if cutoff > 1 else cutoff)
    out = []
    bad = None
    for w in FockSpace(depth).basis():
        mono = w
        if mono == VACUUM:
            continue
        x, n, rest = _first_mode(mono)
        if rest == VACUUM:
            continue
        other = "b" if x == "a" else "a"
        k = sum(-m for y, m in _modes(rest) if y == other)
        e = check_witness_independence(M.bg.field("beta" if x == "a" else "gamma"), M.psi(rest), n, k, keys,
                                       window, suite="betagamma")
        if e["result"] != "pass":
            bad = [word_str(mono), k]
            break
    out.append(entry("betagamma", "state-field map clearing order is witness independent",
                     {"grade": str(depth), "x": list(window)}, bad is None, bad))
    return out


def braiding_suite(q=2, cutoff=1, window=(-2, 2)):
    M = BetaGammaModel(q)
    datum = M.braiding()
    names = sorted(datum.vectors)
    symbolic = generator_braiding(qgen(), {n: None for n in names})
    out = braiding_axioms(symbolic, names, suite="braiding (q symbolic)")
    out += braiding_axioms(datum, names, suite="braiding", model=M, cutoff=cutoff, window=window)
    one = RationalElement(Poly.const(ONE))
    out.append(entry("braiding", "q = 1 limit of the like coefficient is 1", "exact",
                     _exchange(ONE, "like") == one))
    return out


def nondegeneracy_suite(q=2, cutoff=2, E=2, window=(-3, 4)):
    """Z_1 and Z_2 ranks on V_{t,q}(beta gamma), and the planted kernel in the toy model."""
    M = BetaGammaModel(q)
    V0 = {word_str(w): {(w, 0): ONE} for w in FockSpace(cutoff).basis()}
    out = []
    for n in (1, 2):
        r = zn_probe(M, n, V0, E, window)
        out.append(entry("nondegeneracy", "Z_%d full rank" % n, {"grade": str(cutoff), "E": E, "x": list(window)},
                         r["full_rank"], None if r["full_rank"] else r["kernel"][:1],
                         columns=r["columns"], rank=r["rank"]))
    T = ToyModel()
    V0t = {"1": {"1": ONE}, "u": {"u": ONE}}
    r = zn_probe(T, 2, V0t, 0, (0, 0))
    ok = not r["full_rank"] and bool(r["kernel"])
    out.append(entry("nondegeneracy", "planted degenerate toy: Z_2 kernel vector", "exact", ok,
                     r["kernel"][0] if r["kernel"] else None, columns=r["columns"], rank=r["rank"]))
    return out
