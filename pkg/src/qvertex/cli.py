"""Command-line front end: suite runner, series expansion and Fock basis dumps.

Reports are lists of entries {suite, check, window, result, witness?}; the
exit code is 0 exactly when every entry has result "pass".
"""
import argparse
import configparser
import json
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor

from gmpy2 import mpq

from .errors import ConfigError, QVertexError
from .scalar import fmt_scalar, parse_rational, qgen

SUITES = ["appendix", "iota", "fock", "betagamma", "affine-gij"]
BG_SUITES = ["all", "relations", "jacobi", "braiding", "nondegeneracy", "aq-module"]


# -- configuration --------------------------------------------------------------------

def threads():
    raw = os.environ.get("QVERTEX_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise ConfigError("QVERTEX_THREADS must be an integer, got %r" % raw)
    return max(1, n)


def parse_q(text, allow_symbolic=True, forbid_one=True):
    """'symbolic' or a rational; q = 0 is always rejected, q = 1 for the beta-gamma suites."""
    if text is None:
        return None
    if str(text).strip().lower() == "symbolic":
        if not allow_symbolic:
            raise ConfigError("this suite needs a rational q")
        return "symbolic"
    try:
        q = parse_rational(str(text))
    except Exception:
        raise ConfigError("q must be 'symbolic' or a rational number, got %r" % text)
    if q == 0:
        raise ConfigError("q = 0 is not allowed")
    if forbid_one and q == 1:
        raise ConfigError("q = 1 is excluded: the quantum beta-gamma structure requires q != 1")
    return q


def parse_window(text):
    """'4' means [-4, 4]; 'a,b' means [a, b]."""
    if isinstance(text, tuple):
        return text
    parts = [p.strip() for p in str(text).split(",")]
    try:
        if len(parts) == 1:
            n = int(parts[0])
            win = (-n, n)
        elif len(parts) == 2:
            win = (int(parts[0]), int(parts[1]))
        else:
            raise ValueError
    except ValueError:
        raise ConfigError("bad window %r" % text)
    if win[0] > win[1]:
        raise ConfigError("empty window %r" % text)
    return win


def read_config(path):
    """Defaults from an ini-style file; keys mirror the long flags (section [qvertex])."""
    cp = configparser.ConfigParser()
    if not cp.read(path):
        raise ConfigError("cannot read config file %s" % path)
    if "qvertex" not in cp:
        raise ConfigError("config file %s has no [qvertex] section" % path)
    return {k.replace("-", "_"): v for k, v in cp["qvertex"].items()}


# -- suites ---------------------------------------------------------------------------

def _appendix_one(args):
    from .ratfun import random_rational, verify_appendix_lemmas
    seed, prec = args
    f, k = random_rational(random.Random(seed), 3)
    rows = verify_appendix_lemmas(f, prec)
    found = [e.get("k") for e in rows if "k" in e]
    ok = bool(found) and all(x == k for x in found)
    rows.append({"suite": "appendix", "check": "minimal k equals the (x1-x2)-adic order of the denominator",
                 "window": [prec] * 3, "result": "pass" if ok else "fail"})
    if not ok:
        rows[-1]["witness"] = {"denominator order": k, "reported": found}
    for e in rows:
        e["input"] = "seed %d: %s" % (seed, f)
    return rows


def _iota_one(args):
    from .ratfun import random_rational, iota_product_exact, iota_expand, recover_numerator
    seed, prec = args
    rng = random.Random(seed)
    f, _ = random_rational(rng, 2)
    g, _ = random_rational(rng, 2)
    rows = []
    for tower in (("x1", "x2"), ("x2", "x1")):
        ok = iota_product_exact(f, g, tower, prec) == iota_expand(f * g, tower, prec)
        e = {"suite": "iota", "check": "expand(fg) = expand(f) expand(g) in %s" % ",".join(tower),
             "window": [prec, prec], "result": "pass" if ok else "fail", "input": "seed %d" % seed}
        rows.append(e)
        ok, bad = recover_numerator(f, tower, prec)
        e = {"suite": "iota", "check": "denominator times expansion recovers numerator in %s" % ",".join(tower),
             "window": [prec, prec], "result": "pass" if ok else "fail", "input": "seed %d" % seed}
        if bad is not None:
            e["witness"] = list(bad)
        rows.append(e)
    return rows


def _pmap(fn, items):
    n = threads()
    if n > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=n) as ex:
            chunks = list(ex.map(fn, items))
    else:
        chunks = [fn(x) for x in items]
    return [e for chunk in chunks for e in chunk]


def suite_appendix(prec=8, count=50, seed=0):
    return _pmap(_appendix_one, [(seed + i, prec) for i in range(count)])


def suite_iota(prec=8, count=100, seed=0):
    from .series import delta_annihilated
    out = _pmap(_iota_one, [(seed + 10_000 + i, prec) for i in range(count)])
    for j in range(5):
        ok, bad, _ = delta_annihilated(j, ((-8, 8), (-8, 8)))
        e = {"suite": "iota", "check": "(x1-x2)^%d annihilates the order %d delta derivative" % (j + 1, j),
             "window": [[-8, 8], [-8, 8]], "result": "pass" if ok else "fail"}
        if bad is not None:
            e["witness"] = list(bad)
        out.append(e)
    return out


def suite_fock(grade=3, twindow=(-4, 4)):
    from .fock import verify_fock, verify_phi, fermion_delta_match
    from .vertexcore import fock_identity_suite
    out = verify_fock(grade)
    out.append(fermion_delta_match(grade))
    out += verify_phi(min(mpq(grade), 2), twindow)
    out += fock_identity_suite(2)
    return out


def suite_affine(prec=10, q=None):
    from .ratfun import gij_expand, affine_exchange_identities
    from .scalar import ONE
    out = []
    for a in (-2, -1, 1, 2):
        g = gij_expand(a, 1, prec, q)
        h = gij_expand(a, -1, prec, q)
        c0 = g.terms.get((0,))
        want = qgen() ** -a if q is None else mpq(q) ** -a
        out.append({"suite": "affine-gij", "check": "g(x) constant term q^%d (a = %d)" % (-a, a),
                    "window": [prec], "result": "pass" if c0 == want else "fail"})
        prod = {}
        for (i,), c in g.terms.items():
            for (j,), d in h.terms.items():
                if i + j < prec:
                    prod[i + j] = prod.get(i + j, 0) + c * d
        ok = all((c == (ONE if k == 0 else 0)) for k, c in prod.items()) and prod.get(0) == ONE
        out.append({"suite": "affine-gij", "check": "g g^-1 = 1 (a = %d)" % a, "window": [prec],
                    "result": "pass" if ok else "fail"})
        for name, ok in affine_exchange_identities(a, q):
            out.append({"suite": "affine-gij", "check": "%s (a = %d)" % (name, a), "window": "exact",
                        "result": "pass" if ok else "fail"})
    return out


def suite_betagamma(which, q=2, grade=2, trunc_t=4, window=(-4, 4)):
    from . import betagamma as bg
    out = []
    twin = (-trunc_t, trunc_t)
    if which in ("all", "relations"):
        real = bg.BetaGammaRealization(q)
        out += bg.verify_Atq_relations(real, grade, twin, window)
        if q != "symbolic":
            _, rep = bg.build_universal_vacuum(q, max(grade, 3) if which == "all" else grade)
            out += rep
            U = bg.UniversalVacuum(q)
            omega = bg.omega_space(U, grade)
            ok = len(omega) == 1
            out.append({"suite": "betagamma", "check": "Omega-space is the vacuum line",
                        "window": {"grade": str(grade)}, "result": "pass" if ok else "fail"})
            if not ok:
                out[-1]["witness"] = {"dimension": len(omega)}
    if q == "symbolic" and which != "relations":
        raise ConfigError("suite %r needs a rational q" % which)
    if which in ("all", "jacobi"):
        out += bg.quantum_va_structure(q, grade, (-2, 2), (-2, 2))
    if which in ("all", "braiding"):
        out += bg.braiding_suite(q, 1)
    if which in ("all", "nondegeneracy"):
        out += bg.nondegeneracy_suite(q, min(grade, 2))
    if which == "aq-module":
        _, rep = bg.build_Aq_module(q, grade)
        out += rep
    return out


# -- output ---------------------------------------------------------------------------

def _jsonable(o):
    if isinstance(o, dict):
        return {str(k): _jsonable(v) for k, v in o.items()}
    if isinstance(o, (list, tuple)):
        return [_jsonable(v) for v in o]
    if isinstance(o, (bool, int, float, str)) or o is None:
        return o
    try:
        return fmt_scalar(o)
    except Exception:
        return str(o)


def serialize(report, fmt="json"):
    """Stable serialization: sorted keys in JSON, one line per entry in text."""
    report = _jsonable(report)
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=1) if report else "[]"
    lines = []
    for e in report:
        line = "%-4s %s: %s" % ("PASS" if e.get("result") == "pass" else "FAIL", e.get("suite"), e.get("check"))
        if "witness" in e:
            line += "  witness=" + json.dumps(e["witness"], sort_keys=True)
        lines.append(line)
    return "\n".join(lines) if lines else "[]"


def all_pass(report):
    return all(e.get("result") == "pass" for e in report)


# -- commands -------------------------------------------------------------------------

def cmd_expand(ns):
    from .ratfun import expand_string
    order = [v.strip() for v in ns.order.split(",") if v.strip()]
    q = parse_q(ns.q, forbid_one=False) if ns.q is not None else None
    s = expand_string(ns.expr, order, int(ns.prec), q=None if q == "symbolic" else q)
    if ns.format == "json":
        print(s.to_json())
    else:
        print(str(s))
    return 0


def cmd_verify(ns):
    prec = int(ns.prec) if ns.prec is not None else None
    if ns.suite == "appendix":
        rep = suite_appendix(prec or 8, int(ns.count or 50), int(ns.seed))
    elif ns.suite == "iota":
        rep = suite_iota(prec or 8, int(ns.count or 100), int(ns.seed))
    elif ns.suite == "fock":
        rep = suite_fock(int(ns.grade or 3), parse_window(ns.trunc_t or 4))
    elif ns.suite == "betagamma":
        q = parse_q(ns.q or 2)
        rep = suite_betagamma("relations", q, int(ns.grade or 2), int(ns.trunc_t or 4), parse_window(ns.window or 4))
    else:
        q = parse_q(ns.q, forbid_one=False) if ns.q is not None else None
        rep = suite_affine(prec or 10, None if q in (None, "symbolic") else q)
    return _emit(rep, ns.format)


def cmd_betagamma(ns):
    q = parse_q(ns.q if ns.q is not None else 2)
    rep = suite_betagamma(ns.suite, q, int(ns.grade or 2), int(ns.trunc_t or 4), parse_window(ns.window or 4))
    return _emit(rep, ns.format)


def cmd_fock(ns):
    from .fock import dump_basis
    grade = mpq(str(ns.grade or 4))
    if ns.dump_basis:
        data = dump_basis(grade)
        if ns.format == "json":
            print(json.dumps(data, sort_keys=True, indent=1))
        else:
            for g in data["grades"]:
                print("grade %s (dim %d): %s" % (g["grade"], g["dimension"], " ".join(g["words"])))
        return 0
    return _emit(suite_fock(int(grade)), ns.format)


def _emit(report, fmt):
    print(serialize(report, fmt))
    return 0 if all_pass(report) else 1


def build_parser():
    p = argparse.ArgumentParser(prog="qvertex", description="Exact checks for quantum vertex algebras over F((t)).")
    p.add_argument("--config", help="ini file with a [qvertex] section of flag defaults")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--format", choices=["json", "text"], default=None)
        sp.add_argument("--q", default=None, help="'symbolic' or a rational, q != 1")
        sp.add_argument("--grade", default=None)
        sp.add_argument("--window", default=None, help="x-window: N for [-N,N] or a,b")
        sp.add_argument("--trunc-t", dest="trunc_t", default=None, help="t-window half width")

    e = sub.add_parser("expand", help="iota-expand a rational function")
    e.add_argument("expr")
    e.add_argument("--order", required=True, help="tower, dominant variable first, e.g. x2,x1")
    e.add_argument("--prec", default=6)
    e.add_argument("--q", default=None)
    e.add_argument("--format", choices=["json", "text"], default=None)
    e.set_defaults(func=cmd_expand)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", choices=SUITES, required=True)
    v.add_argument("--prec", default=None)
    v.add_argument("--count", default=None, help="number of random inputs")
    v.add_argument("--seed", default=0)
    common(v)
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("betagamma", help="quantum beta-gamma suites")
    b.add_argument("--suite", choices=BG_SUITES, default="all")
    common(b)
    b.set_defaults(func=cmd_betagamma)

    f = sub.add_parser("fock", help="the free-fermion Fock space")
    f.add_argument("--dump-basis", dest="dump_basis", action="store_true")
    common(f)
    f.set_defaults(func=cmd_fock)
    return p


def main(argv=None):
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        if ns.config:
            for k, val in read_config(ns.config).items():
                if getattr(ns, k, None) is None:
                    setattr(ns, k, val)
        if ns.format is None:
            ns.format = "json"
        if ns.format not in ("json", "text"):
            raise ConfigError("format must be json or text")
        return ns.func(ns)
    except ConfigError as exc:
        print("config error: %s" % exc, file=sys.stderr)
        return 2
    except QVertexError as exc:
        print("error: %s: %s" % (type(exc).__name__, exc), file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
