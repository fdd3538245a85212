import pytest
from gmpy2 import mpq
from hypothesis import given, settings, strategies as st

from qvertex.betagamma import (BetaGammaModel, BetaGammaRealization, UniversalVacuum, build_Aq_module,
                               build_universal_vacuum, collapse_certificate, generator_braiding,
                               omega_space, pbw_coefficients, PBWModule, q_scalar, verify_Atq_relations,
                               braiding_suite)
from qvertex.errors import ConfigError, QEqualsOne
from qvertex.fock import VACUUM, parse_word
from qvertex.poly import Poly
from qvertex.ratfun import RationalElement
from qvertex.scalar import ONE, qgen
from qvertex.vertexcore import braiding_axioms, field_window_diff, locality_order


def passed(rows):
    return all(e["result"] == "pass" for e in rows)


def test_q_guards():
    with pytest.raises(QEqualsOne):
        BetaGammaRealization(1)
    with pytest.raises(ConfigError):
        q_scalar(0)
    assert q_scalar("symbolic") == qgen()


def test_generator_states():
    bg = BetaGammaRealization(2)
    vac = bg.vacuum()
    a1, b1 = parse_word("a_-1*1"), parse_word("b_-1*1")
    # beta_t(-1)1 = (1-q) t a and gamma_t(-1)1 = q b
    assert bg.beta.apply(vac, 0) == {(a1, 1): -1}
    assert bg.gamma.apply(vac, 0) == {(b1, 0): 2}
    for j in range(-4, 0):
        assert bg.beta.apply(vac, j) == {} and bg.gamma.apply(vac, j) == {}


def test_relations_at_q2_grade1():
    assert passed(verify_Atq_relations(BetaGammaRealization(2), 1, (-2, 2), (-3, 3)))


def test_relations_symbolic_q_small():
    assert passed(verify_Atq_relations(BetaGammaRealization("symbolic"), mpq(1, 2), (-1, 1), (-2, 2)))


@settings(max_examples=4, deadline=None)
@given(st.fractions(min_value=-3, max_value=3, max_denominator=3).filter(lambda x: x not in (0, 1)))
def test_relations_random_rational_q(q):
    bg = BetaGammaRealization(mpq(q.numerator, q.denominator))
    assert passed(verify_Atq_relations(bg, mpq(1, 2), (-1, 1), (-2, 2)))


class _NoQFactor(BetaGammaRealization):
    def _gamma_coeff(self, w, J):
        return self._twisted("b", -1, w, J, [(0, 0, ONE)])


def test_gamma_normalization_is_needed():
    rows = {e["check"]: e["result"] for e in verify_Atq_relations(_NoQFactor(2), mpq(1, 2), (-1, 1), (-2, 2))}
    assert rows["beta gamma relation with delta"] == "fail"
    assert rows["beta beta exchange"] == "pass"


def test_universal_vacuum_dims_and_intertwiner():
    U, rep = build_universal_vacuum(2, 2)
    assert passed(rep), rep
    assert rep[0]["dims"]["1/2"] == 2


def test_omega_space_is_vacuum_line():
    U = UniversalVacuum(2)
    om = omega_space(U, 2)
    assert len(om) == 1


def test_intertwiner_detects_wrong_coefficient():
    from qvertex.betagamma import check_intertwining
    U = UniversalVacuum(2)
    coeffs = dict(pbw_coefficients(U.q, True))
    C = coeffs[("a", "b")]
    C.ensure(4)
    (key, val) = next(iter(sorted(C.terms.items())))
    C.terms[key] = {t: 2 * c for t, c in val.items()} if isinstance(val, dict) else 2 * val
    U.pbw = PBWModule(coeffs, "broken")
    assert check_intertwining(U, 1)["result"] == "fail"


def test_generator_braiding_exact():
    d = generator_braiding(qgen(), {"beta": None, "gamma": None})
    assert passed(braiding_axioms(d, ["beta", "gamma"]))
    # like coefficient at q = 1 is identically 1
    like1 = generator_braiding(ONE, {"beta": None}).scalar("beta", "beta")
    assert like1 == RationalElement(Poly.const(ONE))


def test_braiding_suite_with_model():
    assert passed(braiding_suite(2, 1))


def test_state_field_map_on_generators():
    M = BetaGammaModel(2)
    gens = M.generators()
    keys = M.basis(1)
    assert field_window_diff(M.field(gens["beta"]), M.bg.beta, keys, (-2, 2)) is None
    assert field_window_diff(M.field(gens["gamma"]), M.bg.gamma, keys, (-2, 2)) is None


def test_locality_orders():
    M = BetaGammaModel(2)
    gens = M.generators()
    d = M.braiding()
    assert locality_order(M, gens["beta"], gens["beta"], d.terms("beta", "beta"), 1, (-2, 2)) == 0
    assert locality_order(M, gens["beta"], gens["gamma"], d.terms("beta", "gamma"), 1, (-2, 2)) == 1


def test_clifford_point_module():
    W, rep = build_Aq_module(-1, 2)
    assert passed(rep), rep


@pytest.mark.parametrize("q", [2, 3, mpq(1, 2)])
def test_collapse_multiple(q):
    W = PBWModule(pbw_coefficients(q_scalar(q), False), "A_q")
    cert = collapse_certificate(W)
    assert cert["w0 = 0 forced"]
    assert mpq(cert["multiple"]) == -(1 + 1 / mpq(q))
