import pytest
import sympy
from gmpy2 import mpq
from hypothesis import given, settings, strategies as st

from qvertex.fock import FockSpace, generator_field, parse_word, vertex_operator
from qvertex.linalg import Echelon, kernel, rank
from qvertex.poly import Poly
from qvertex.ratfun import RationalElement
from qvertex.scalar import ONE
from qvertex.vertexcore import (BraidingDatum, ExchangeSeries, FockModel, ToyModel, braiding_axioms,
                                check_jacobi, check_skew_symmetry, check_st_locality,
                                check_witness_independence, field_window_diff, find_clearing_order,
                                fock_identity_suite, locality_order, ye_product, zn_probe)

matrices = st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=6)


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_rank_matches_sympy(rows):
    vecs = [{i: mpq(x) for i, x in enumerate(r) if x} for r in rows]
    assert rank(vecs) == sympy.Matrix(rows).rank()


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_kernel_relations_annihilate(rows):
    cols = [{i: mpq(x) for i, x in enumerate(r) if x} for r in rows]
    rels = kernel(cols)
    assert len(rels) == len(rows) - sympy.Matrix(rows).rank()
    for rel in rels:
        acc = {}
        for idx, c in rel.items():
            for k, x in cols[idx].items():
                acc[k] = acc.get(k, 0) + c * x
        assert not any(acc.values())


def test_echelon_reports_dependency():
    e = Echelon(track=True)
    assert e.add({0: ONE, 1: ONE}, "u") is None
    assert e.add({1: ONE}, "v") is None
    assert e.add({0: ONE}, "w") == {"u": -ONE, "v": ONE, "w": ONE}


def like(q):
    x1, x2 = Poly.var("x1"), Poly.var("x2")
    return RationalElement(x2.scale(mpq(q)) - x1, x2 - x1.scale(mpq(q)))


def test_exchange_series_constant_terms():
    # iota_{x2,x1} (q x2 - x1)/(x2 - q x1) starts with q
    assert ExchangeSeries(like(2), False).get(0, 0) == 2
    # f(x1+t, x2+t) = ((q-1)t + q x2 - x1)/((1-q)t + x2 - q x1): t-dominant leading value -1
    assert ExchangeSeries(like(2), True).get(0, 0) == {0: -1}


def test_ye_products_of_fermions():
    a, b = generator_field("a"), generator_field("b")
    keys = FockSpace(mpq(3, 2)).basis()
    # a(x)_{-1} b(x) is the normal ordered product Y(a_-1 b_-1 1, x)
    nop = ye_product(a, b, -1, 1)
    assert field_window_diff(nop, vertex_operator(parse_word("a_-1*b_-1*1")), keys, (-3, 3)) is None
    # a(x)_0 b(x) is the identity field
    ident = ye_product(a, b, 0, 1)
    for w in keys:
        for j in range(-3, 3):
            assert ident.apply({w: ONE}, j) == ({w: ONE} if j == 0 else {})


def test_witness_independence_detects_insufficient_clearing():
    a, b = generator_field("a"), generator_field("b")
    keys = FockSpace(1).basis()
    assert check_witness_independence(a, b, -1, 1, keys, (-2, 2))["result"] == "pass"
    assert check_witness_independence(a, b, -1, 0, keys, (-2, 2))["result"] == "fail"


def test_clearing_orders():
    a, b = generator_field("a"), generator_field("b")
    keys = FockSpace(1).basis()
    assert find_clearing_order(a, a, keys, (-2, 2)) == 0
    assert find_clearing_order(a, b, keys, (-2, 2)) == 1


def test_fock_identity_suite_passes():
    for e in fock_identity_suite(2):
        assert e["result"] == "pass", e


def test_wrong_sign_braiding_fails():
    M = FockModel()
    gens = M.generators()
    datum = M.braiding(sign=1)
    terms = datum.terms("a", "b")
    assert check_st_locality(M, gens["a"], gens["b"], terms, 1, 1, (-2, 2))["result"] == "fail"
    assert check_skew_symmetry(M, gens["a"], gens["b"], terms, (-2, 2))["result"] == "fail"
    assert check_jacobi(M, gens["a"], gens["b"], terms, 1, (-1, 1))["result"] == "fail"


def test_fermion_locality_orders():
    M = FockModel()
    gens = M.generators()
    datum = M.braiding()
    assert locality_order(M, gens["a"], gens["a"], datum.terms("a", "a"), 1, (-2, 2)) == 0
    assert locality_order(M, gens["a"], gens["b"], datum.terms("a", "b"), 1, (-2, 2)) == 1


def test_braiding_axioms_exact():
    q = mpq(3)
    f = like(q)
    good = BraidingDatum({}, {("u", "u"): [("u", "u", f)]})
    assert all(e["result"] == "pass" for e in braiding_axioms(good, ["u"]))
    bad = BraidingDatum({}, {("u", "u"): [("u", "u", RationalElement(Poly.const(ONE * 2)))]})
    rows = {e["check"]: e["result"] for e in braiding_axioms(bad, ["u"])}
    assert rows["unitarity S21(x2,x1)S(x1,x2) = 1"] == "fail"


def test_zn_probe_planted_kernel():
    T = ToyModel()
    V0 = {"1": {"1": ONE}, "u": {"u": ONE}}
    assert zn_probe(T, 1, V0, 0, (0, 0))["full_rank"]
    r = zn_probe(T, 2, V0, 0, (0, 0))
    assert not r["full_rank"]
    kern = [{tuple(lbl[:2]): c for lbl, c in rel} for rel in r["kernel"]]
    assert {("1", "u"): "-1", ("u", "1"): "1"} in kern


def test_zn_probe_fermions_full_rank():
    M = FockModel()
    V0 = {str(i): {w: ONE} for i, w in enumerate(FockSpace(1).basis())}
    assert zn_probe(M, 1, V0, 2, (-3, 3))["full_rank"]
    assert zn_probe(M, 2, V0, 1, (-3, 3))["full_rank"]
