import sympy
from gmpy2 import mpq
from hypothesis import given, settings, strategies as st

from qvertex.fields import derivative_field
from qvertex.fock import (VACUUM, FockSpace, character_dims, dump_basis, fermion_delta_match, fock_D,
                          generator_field, grade, mode_action, parse_word, phi_apply, verify_fock,
                          verify_phi, vertex_operator, word_str)
from qvertex.scalar import ONE

BASIS3 = FockSpace(3).basis()


def sympy_dims(cutoff):
    y = sympy.Symbol("y")  # y = x^(1/2)
    N = int(2 * cutoff)
    prod = sympy.Integer(1)
    for n in range(1, N + 1):
        prod *= (1 + y ** (2 * n - 1)) ** 2
    poly = sympy.Poly(sympy.expand(prod), y)
    coeffs = dict(zip((m[0] for m in poly.monoms()), poly.coeffs()))
    return {mpq(e, 2): int(coeffs.get(e, 0)) for e in range(N + 1)}


def test_graded_dims_match_independent_character():
    dims = FockSpace(4).graded_dims()
    assert dims == sympy_dims(4)
    assert dims == character_dims(4)
    assert dims[mpq(1, 2)] == 2 and dims[mpq(1)] == 1


def test_words_and_grades():
    w = parse_word("a_-2*b_-1*1")
    assert grade(w) == mpq(2)
    assert word_str(w) == "a_-2*b_-1*1"
    assert parse_word(word_str(w)) == w


def test_dump_basis_shape():
    data = dump_basis(1)
    dims = [g["dimension"] for g in data["grades"]]
    assert dims == [1, 2, 1]
    assert data["grades"][0]["words"] == ["1"]


def test_D_examples():
    a1 = {parse_word("a_-1*1"): ONE}
    assert fock_D(a1) == {parse_word("a_-2*1"): ONE}
    assert fock_D({VACUUM: ONE}) == {}


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(BASIS3), st.integers(-4, 3), st.integers(-4, 3),
       st.sampled_from([("a", "a"), ("b", "b"), ("a", "b"), ("b", "a")]))
def test_clifford_anticommutators(w, m, n, letters):
    x, y = letters
    v = {w: ONE}
    lhs = mode_action(x, m, mode_action(y, n, v))
    for k, c in mode_action(y, n, mode_action(x, m, v)).items():
        lhs[k] = lhs.get(k, 0) + c
    lhs = {k: c for k, c in lhs.items() if c}
    want = v if (x != y and m + n + 1 == 0) else {}
    assert lhs == want


def test_state_field_map_on_generators():
    for letter in "ab":
        Y = vertex_operator(parse_word("%s_-1*1" % letter))
        F = generator_field(letter)
        dY = vertex_operator(parse_word("%s_-2*1" % letter))
        dF = derivative_field(F)
        for w in FockSpace(2).basis():
            for j in range(-4, 4):
                assert Y.apply({w: ONE}, j) == F.apply({w: ONE}, j)
                assert dY.apply({w: ONE}, j) == dF.apply({w: ONE}, j)


def test_vertex_operator_creates_state():
    for w in FockSpace(2).basis():
        Y = vertex_operator(w)
        assert Y.apply({VACUUM: ONE}, 0) == {w: ONE}
        for j in range(-3, 0):
            assert Y.apply({VACUUM: ONE}, j) == {}


def test_phi_inverse_pair_on_shifted_vector():
    v = {(parse_word("a_-1*b_-1*1"), 2): ONE}
    assert phi_apply(-1, phi_apply(1, v)) == v
    assert phi_apply(1, v) != v


def test_suites_pass():
    for e in verify_fock(3) + verify_phi(2, (-2, 2)) + [fermion_delta_match(2)]:
        assert e["result"] == "pass", e


def test_parse_word_rejects_garbage():
    import pytest
    from qvertex.errors import ParseError
    for bad in ("a_-1b", "c_-1*1", "a_2*1"):
        with pytest.raises(ParseError):
            parse_word(bad)


def test_phi_plus_on_derivative_state():
    # (a (x) t)_{-2} = t a_{-2} - a_{-1}: the twist is Y(a,x)(t-x)
    from qvertex.fock import phi_map
    out = phi_map(1, parse_word("a_-2*1"))
    assert out == {(parse_word("a_-2*1"), 1): 1, (parse_word("a_-1*1"), 0): -1}
    assert phi_map(1, parse_word("a_-1*1")) == {(parse_word("a_-1*1"), 1): 1}
    assert phi_map(1, parse_word("b_-1*1")) == {(parse_word("b_-1*1"), -1): 1}
