"""The free-fermion vertex superalgebra V_B and the maps Phi^+ and Phi^-.

A basis word is a pair (A, B) of strictly decreasing tuples of positive
integers and stands for a_{-A[0]} ... a_{-A[-1]} b_{-B[0]} ... b_{-B[-1]} 1.
The modes satisfy a_m a_n = -a_n a_m, b_m b_n = -b_n b_m and
a_m b_n + b_n a_m = delta_{m+n+1,0}; a_n 1 = b_n 1 = 0 for n >= 0.
"""
from itertools import combinations

from gmpy2 import mpq

from .errors import ParseError
from .fields import FieldOperator, tshift
from .scalar import ZERO, ONE, gbinom
from .vec import vadd, vscale

VACUUM = ((), ())
HALF = mpq(1, 2)


def grade(w):
    A, B = w
    return mpq(sum(A) + sum(B)) - HALF * (len(A) + len(B))


def parity(w):
    return (len(w[0]) + len(w[1])) % 2


def charge(w):
    return len(w[0]) - len(w[1])


def word_str(w):
    A, B = w
    parts = ["a_%d" % -m for m in A] + ["b_%d" % -m for m in B]
    return "*".join(parts + ["1"]) if parts else "1"


def parse_word(text):
    """Inverse of word_str for canonical words, e.g. 'a_-2*b_-1*1'."""
    A, B = [], []
    for tok in text.replace(" ", "").split("*"):
        if tok == "1":
            continue
        try:
            letter, n = tok.split("_")
            m = -int(n)
        except ValueError:
            raise ParseError("bad mode %r in word %r" % (tok, text))
        if letter not in ("a", "b") or m <= 0:
            raise ParseError("bad mode %r in word %r" % (tok, text))
        (A if letter == "a" else B).append(m)
    return (tuple(A), tuple(B))


def _insert(seq, m):
    """Insert m into a strictly decreasing tuple; returns (sign, tuple) or None."""
    if m in seq:
        return None
    pos = sum(1 for x in seq if x > m)
    return (-1) ** pos, seq[:pos] + (m,) + seq[pos:]


def mode_on_word(letter, n, w):
    """letter_n applied to a basis word: (coefficient, word) or None."""
    A, B = w
    if n < 0:
        m = -n
        if letter == "a":
            r = _insert(A, m)
            return None if r is None else (r[0], (r[1], B))
        r = _insert(B, m)
        if r is None:
            return None
        return (-1) ** len(A) * r[0], (A, r[1])
    # annihilation: contracts with the partner letter of mode n+1
    m = n + 1
    if letter == "a":
        if m not in B:
            return None
        i = B.index(m)
        return (-1) ** (len(A) + i), (A, B[:i] + B[i + 1:])
    if m not in A:
        return None
    i = A.index(m)
    return (-1) ** i, (A[:i] + A[i + 1:], B)


def mode_action(letter, n, vec):
    """letter_n applied to a vector (dict word -> scalar)."""
    out = {}
    for w, c in vec.items():
        r = mode_on_word(letter, n, w)
        if r is not None:
            s, w2 = r
            vadd(out, {w2: c}, s)
    return out


def word_modes(w):
    """The word as its list of modes, left to right."""
    A, B = w
    return [("a", -m) for m in A] + [("b", -m) for m in B]


def apply_modes(modes, vec):
    """Apply a list of modes (leftmost acts last) to vec."""
    for letter, n in reversed(modes):
        vec = mode_action(letter, n, vec)
        if not vec:
            break
    return vec


# -- the space -----------------------------------------------------------------------

def _strict_partitions(total2, parts_max=None):
    """Strictly decreasing tuples of positive m with sum(2m-1) == total2."""
    out = []

    def rec(rem, top, acc):
        if rem == 0:
            out.append(tuple(acc))
            return
        for m in range(min(top, (rem + 1) // 2), 0, -1):
            if 2 * m - 1 <= rem:
                rec(rem - (2 * m - 1), m - 1, acc + [m])
    rec(total2, total2 + 1, [])
    return out


class FockSpace:
    """The graded space V_B truncated at a grade cutoff."""

    def __init__(self, cutoff):
        self.cutoff = mpq(cutoff)

    def words_of_grade(self, g):
        g2 = int(2 * mpq(g))
        out = []
        for ga in range(g2 + 1):
            for A in _strict_partitions(ga):
                for B in _strict_partitions(g2 - ga):
                    out.append((A, B))
        return sorted(out)

    def grades(self):
        return [mpq(k, 2) for k in range(int(2 * self.cutoff) + 1)]

    def basis(self):
        out = []
        for g in self.grades():
            out.extend(self.words_of_grade(g))
        return out

    def graded_dims(self):
        return {g: len(self.words_of_grade(g)) for g in self.grades()}


def character_dims(cutoff):
    """Coefficients of prod_{n>=1} (1 + x^(n-1/2))^2 up to x^cutoff, keyed by grade."""
    N = int(2 * mpq(cutoff))
    poly = [0] * (N + 1)
    poly[0] = 1
    for n in range(1, N + 2):
        step = 2 * n - 1
        if step > N:
            break
        for _ in range(2):
            for e in range(N, step - 1, -1):
                poly[e] += poly[e - step]
    return {mpq(e, 2): c for e, c in enumerate(poly)}


# -- vertex operators on V_B -----------------------------------------------------------

def _fermion_low(w):
    # a_n w = 0 once n > grade(w) - 1/2; exponent -n-1 >= -(grade + 1/2)
    return -int(grade(w) + HALF)


def generator_field(letter):
    """a(x) or b(x) on V_B."""
    def coeff(w, j):
        r = mode_on_word(letter, -j - 1, w)
        return {} if r is None else {r[1]: ONE * r[0]}
    return FieldOperator(coeff, _fermion_low, letter + "(x)")


def generator_fields():
    return generator_field("a"), generator_field("b")


def _wick_coeff(factors, j, w):
    """x^j coefficient of :d^(k1)f1(x) ... d^(kr)fr(x): applied to w.

    factors: list of (letter, k).  Annihilation modes (n >= 0) are moved to
    the right with the fermionic sign.
    """
    g = grade(w)
    r = len(factors)
    out = {}
    # choose which factors take annihilation modes
    for ann in _subsets(r):
        ann_set = set(ann)
        cre = [i for i in range(r) if i not in ann_set]
        # sign of moving annihilators right, order kept within each group
        inv = sum(1 for i in ann for c in cre if c > i)
        sign = -1 if inv % 2 else 1
        # annihilation modes n in [0, g] ; exponent of factor i is -n-1-k_i
        for ann_modes in _mode_ranges([0] * len(ann), [int(g)] * len(ann)):
            e_ann = sum(-n - 1 - factors[i][1] for i, n in zip(ann, ann_modes))
            rest = j - e_ann
            # creation modes n <= -1, exponents -n-1-k >= -k; they must sum to rest
            for cre_modes in _creation_splits([factors[i][1] for i in cre], rest):
                coef = ONE * sign
                modes = {}
                for i, n in zip(ann, ann_modes):
                    coef *= gbinom(-n - 1, factors[i][1])
                    modes[i] = n
                for i, n in zip(cre, cre_modes):
                    coef *= gbinom(-n - 1, factors[i][1])
                    modes[i] = n
                if not coef:
                    continue
                seq = [(factors[i][0], modes[i]) for i in cre] + [(factors[i][0], modes[i]) for i in ann]
                v = apply_modes(seq, {w: ONE})
                vadd(out, v, coef)
    return out


def _subsets(r):
    for k in range(r + 1):
        yield from combinations(range(r), k)


def _mode_ranges(lows, highs):
    if not lows:
        yield ()
        return
    for n in range(lows[0], highs[0] + 1):
        for rest in _mode_ranges(lows[1:], highs[1:]):
            yield (n,) + rest


def _creation_splits(ks, total):
    """Creation modes n_i <= -1 with sum(-n_i - 1 - k_i) == total."""
    if not ks:
        if total == 0:
            yield ()
        return
    k0 = ks[0]
    min_rest = sum(-k for k in ks[1:])
    # exponent e0 = -n0-1-k0 ranges over [-k0, total - min_rest]
    for e0 in range(-k0, total - min_rest + 1):
        n0 = -e0 - 1 - k0
        for rest in _creation_splits(ks[1:], total - e0):
            yield (n0,) + rest


def vertex_operator(w):
    """Y(w, x) on V_B, as a normally ordered product of derivatives of a(x), b(x)."""
    if w == VACUUM:
        return FieldOperator(lambda u, j: {u: ONE} if j == 0 else {}, lambda u: 0, "Y(1)")
    factors = [(letter, -n - 1) for letter, n in word_modes(w)]
    gw = grade(w)

    def coeff(u, j):
        return _wick_coeff(factors, j, u)

    def low(u):
        # output grade = grade(w) + grade(u) + j >= 0
        return -int(gw + grade(u))
    return FieldOperator(coeff, low, "Y(%s)" % word_str(w))


def fock_D(vec):
    """D on V_B: D 1 = 0 and [D, a_n] = -n a_{n-1}."""
    out = {}
    for w, c in vec.items():
        modes = word_modes(w)
        for i, (letter, n) in enumerate(modes):
            if n == 0:
                continue
            seq = modes[:i] + [(letter, n - 1)] + modes[i + 1:]
            vadd(out, apply_modes(seq, {VACUUM: ONE}), c * (-n))
    return out


# -- Phi^+ and Phi^- -------------------------------------------------------------------

def twisted_mode(letter, n, e, tvec):
    """(letter (x) t^e)_n on V_B (x) F((t)): the x^{-n-1} coefficient of Y(letter,x)(t-x)^e.

    (t-x)^e is expanded in nonnegative powers of x, so the mode is
    sum_j binom(e, j) (-1)^j t^(e-j) letter_{n+j}; the sum is finite on each vector.
    """
    out = {}
    for (w, p), c in tvec.items():
        g = grade(w)
        j = 0
        while n + j <= g:
            b = gbinom(e, j) * (-1) ** j
            if b:
                r = mode_on_word(letter, n + j, w)
                if r is not None:
                    vadd(out, {(r[1], p + e - j): c * b * r[0]})
            if e >= 0 and j >= e:
                break
            j += 1
    return out


def phi_map(sign, w, _cache={}):
    """Phi^+(t) w or Phi^-(t) w as a dict {(word, t-power): coeff}.

    Phi^+ twists a by t and b by t^-1; Phi^- twists a by t^-1 and b by t.
    Computed from the B-module property on the word's modes.
    """
    key = (sign, w)
    if key in _cache:
        return _cache[key]
    ea = 1 if sign > 0 else -1
    if w == VACUUM:
        out = {(VACUUM, 0): ONE}
    else:
        (letter, n), rest = word_modes(w)[0], _drop_first(w)
        inner = phi_map(sign, rest)
        out = twisted_mode(letter, n, ea if letter == "a" else -ea, inner)
    _cache[key] = out
    return out


def _drop_first(w):
    A, B = w
    if A:
        return (A[1:], B)
    return (A, B[1:])


def phi_apply(sign, tvec):
    """Phi^{sign}(t) extended F((t))-linearly to V_B (x) F((t))."""
    out = {}
    for (w, p), c in tvec.items():
        vadd(out, tshift(phi_map(sign, w), p), c)
    return out


# -- checks ----------------------------------------------------------------------------

def _entry(check, window, ok, witness=None):
    e = {"suite": "fock", "check": check, "window": window, "result": "pass" if ok else "fail"}
    if witness is not None:
        e["witness"] = witness
    return e


def verify_phi(cutoff=2, twindow=(-4, 4)):
    """Check Phi^+ Phi^- = Phi^- Phi^+ = 1, commutativity and the intertwining law.

    Windowed on basis words of grade <= cutoff and t-shifts in twindow.
    """
    space = FockSpace(cutoff)
    basis = space.basis()
    report = []
    win = {"grade": str(space.cutoff), "t": list(twindow)}
    # (ii) inverse pair, on shifted vectors too
    bad = None
    for w in basis:
        for k in range(twindow[0], twindow[1] + 1):
            v = {(w, k): ONE}
            for s1, s2 in ((1, -1), (-1, 1)):
                if phi_apply(s2, phi_apply(s1, v)) != v:
                    bad = bad or [word_str(w), k, s1]
    report.append(_entry("Phi+ Phi- = Phi- Phi+ = 1", win, bad is None, bad))
    # (iii) Phi(x1) Phi(x2) = Phi(x2) Phi(x1)
    bad = None
    for s in (1, -1):
        for w in basis:
            lhs = _phi_two(s, w, first="x2")
            rhs = _phi_two(s, w, first="x1")
            if lhs != rhs:
                bad = bad or [word_str(w), s]
    report.append(_entry("Phi(x1) Phi(x2) = Phi(x2) Phi(x1)", win, bad is None, bad))
    # (i) intertwining Phi(x1) Y(v,x2) u = Y(Phi(x1-x2) v, x2) Phi(x1) u
    bad = None
    for s in (1, -1):
        for v in basis:
            for u in basis:
                r = intertwining_defect(s, v, u, xwin=(-3, 3))
                if r is not None:
                    bad = bad or [word_str(v), word_str(u), s, list(r)]
    report.append(_entry("Phi(x1) Y(v,x2) = Y(Phi(x1-x2)v,x2) Phi(x1)",
                         dict(win, x=[-3, 3]), bad is None, bad))
    return report


def _phi_two(s, w, first):
    """Phi(x1)Phi(x2)w (first='x2' applies Phi(x2) first) as {(word, p1, p2): c}."""
    out = {}
    for (w1, pa), c1 in phi_map(s, w).items():
        for (w2, pb), c2 in phi_map(s, w1).items():
            key = (w2, pb, pa) if first == "x2" else (w2, pa, pb)
            vadd(out, {key: c1 * c2})
    return out


def intertwining_defect(s, v, u, xwin=(-3, 3)):
    """First (x1-exponent, x2-exponent, word) where the intertwining law fails, or None.

    Both sides are Laurent polynomials in x1 with coefficients in V_B((x2)); the
    right side's (x1-x2)^p is expanded in nonnegative powers of x2.
    """
    Yv = vertex_operator(v)
    lhs = {}
    lo2 = Yv.low(u)
    for j2 in range(lo2, xwin[1] + 1):
        vec = Yv.apply({u: ONE}, j2)
        for w, c in vec.items():
            for (w2, p), c2 in phi_map(s, w).items():
                vadd(lhs, {(p, j2, w2): c * c2})
    rhs = {}
    phv = phi_map(s, v)
    phu = phi_map(s, u)
    for (v1, p), c in phv.items():
        Y1 = vertex_operator(v1)
        for (u1, pu), cu in phu.items():
            lo = Y1.low(u1)
            for j2 in range(lo, xwin[1] + 1):
                vec = Y1.apply({u1: ONE}, j2)
                if not vec:
                    continue
                # (x1 - x2)^p = sum_i binom(p,i) x1^(p-i) (-x2)^i
                i = 0
                while j2 + i <= xwin[1]:
                    b = gbinom(p, i) * (-1) ** i
                    if b:
                        for w, cw in vec.items():
                            vadd(rhs, {(p - i + pu, j2 + i, w): c * cu * cw * b})
                    if p >= 0 and i >= p:
                        break
                    i += 1
    for key in set(lhs) | set(rhs):
        if key[1] < xwin[0] or key[1] > xwin[1]:
            continue
        if lhs.get(key, ZERO) != rhs.get(key, ZERO):
            return key[0], key[1], word_str(key[2])
    return None


def verify_fock(cutoff=3):
    """Graded dimensions against the character, and basic mode relations."""
    space = FockSpace(cutoff)
    dims = space.graded_dims()
    ref = character_dims(cutoff)
    ok = all(dims[g] == ref[g] for g in dims)
    report = [_entry("graded dimensions match prod (1+x^(n-1/2))^2",
                     {"grade": str(space.cutoff)}, ok,
                     None if ok else {str(g): [dims[g], ref[g]] for g in dims})]
    # anticommutators on all basis words
    bad = None
    basis = space.basis()
    N = int(space.cutoff) + 2
    for w in basis:
        v = {w: ONE}
        for m in range(-N, N):
            for n in range(-N, N):
                for x, y, d in (("a", "a", 0), ("b", "b", 0), ("a", "b", 1)):
                    lhs = mode_action(x, m, mode_action(y, n, v))
                    vadd(lhs, mode_action(y, n, mode_action(x, m, v)))
                    want = vscale(v, ONE) if (d and m + n + 1 == 0) else {}
                    if lhs != want:
                        bad = bad or [word_str(w), x, m, y, n]
    report.append(_entry("Clifford relations on basis words", {"grade": str(space.cutoff), "modes": [-N, N - 1]},
                         bad is None, bad))
    return report


def dump_basis(cutoff):
    space = FockSpace(cutoff)
    out = {"grades": []}
    for g in space.grades():
        words = space.words_of_grade(g)
        out["grades"].append({"grade": str(g), "dimension": len(words),
                              "words": [word_str(w) for w in words]})
    return out


def fermion_delta_match(cutoff=3, window=((-5, 5), (-5, 5))):
    """a(x1)b(x2) + b(x2)a(x1) = x1^-1 delta(x2/x1) on V_B, read off by the three-term match.

    Checks that the only delta coefficient is c_0 = identity on every basis word.
    """
    from .series import three_term_match
    a, b = generator_fields()
    bad = None
    for w in FockSpace(cutoff).basis():
        v = {w: ONE}
        A = lambda i1, i2: a.apply(b.apply(v, i2), i1)
        B = lambda i1, i2: vscale(b.apply(a.apply(v, i1), i2), -ONE)
        expr, _ = three_term_match(A, B, window, 1, max_order=2)
        c0, c1 = expr.singular[0][1], expr.singular[1][1]
        if c0 != {0: v} or c1:
            bad = [word_str(w), {str(k): len(x) for k, x in c0.items()}]
            break
    return _entry("three-term match a(x1)b(x2)+b(x2)a(x1): c_0 = identity",
                  {"grade": str(mpq(cutoff)), "x1": list(window[0]), "x2": list(window[1])},
                  bad is None, bad)
