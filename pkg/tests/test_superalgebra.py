"""Graded algebras: rule derivation, Serre elements, coproduct tails,
Hopf axioms, and the graded R-matrices."""

from fractions import Fraction

import pytest

from qhopf.algebra import TensorElement, q_commutator
from qhopf.hopf import cartan_exp_multi, two_sinh_over_hbar
from qhopf.rmatrix import rmat_d21e, rmat_max_ext
from qhopf.scalars import ExactScalar, HbarSeries, exp_scalar
from qhopf.superalg import (
    DegenerateParameter,
    build_max_ext_sl22,
    build_uq_d21e,
    verify_nonsimple_coproduct_tail,
)

EPS = Fraction(1, 3)


@pytest.fixture(scope="module")
def d21e():
    return build_uq_d21e(EPS, 2)


@pytest.fixture(scope="module")
def maxext():
    return build_max_ext_sl22(1, 2)


def test_degenerate_parameters_rejected():
    for bad in (0, -1, "0", "-1"):
        with pytest.raises(DegenerateParameter):
            build_uq_d21e(bad, 2)


def test_rule_table_complete_and_confluent(d21e):
    assert len(d21e.alg.rules) == 144
    assert d21e.alg.check_local_confluence() == []


def test_parities(d21e):
    alg = d21e.alg
    odd = {n for n, p in zip(alg.names, alg.parities) if p == 1}
    assert odd == {"E_2", "E_12", "E_32", "E_132",
                   "F_2", "F_21", "F_23", "F_213"}


def test_cartan_action(d21e):
    # [H_i, E_j] = a_ij E_j on the simple letters
    alg = d21e.alg
    s1, s2, s3 = Fraction(1), EPS, -1 - EPS
    amat = [[2, -1, 0], [s1, 0, s3], [0, -1, 2]]
    for i, hn in enumerate(("H_1", "H_2", "H_3")):
        for j, en in enumerate(("E_1", "E_2", "E_3")):
            h, e = alg.gen(hn), alg.gen(en)
            assert (h * e - e * h - e.scale(amat[i][j])).is_zero()
            f = alg.gen("F_" + en[2:])
            assert (h * f - f * h + f.scale(amat[i][j])).is_zero()


def test_defining_brackets_reproduce_composites(d21e):
    alg = d21e.alg
    g = {n: alg.gen(n) for n in alg.names}
    s1, s3 = Fraction(1), Fraction(-1) - EPS
    assert (q_commutator(g["E_1"], g["E_2"], s1) - g["E_12"]).is_zero()
    assert (q_commutator(g["E_3"], g["E_2"], s3) - g["E_32"]).is_zero()
    assert (q_commutator(g["E_1"], g["E_32"], s1) - g["E_132"]).is_zero()
    assert (q_commutator(g["F_2"], g["F_1"], -s1) - g["F_21"]).is_zero()
    assert (q_commutator(g["F_2"], g["F_3"], -s3) - g["F_23"]).is_zero()
    assert (q_commutator(g["F_23"], g["F_1"], -s1) - g["F_213"]).is_zero()
    # the second route to the length-three letters (rearranged bracket)
    assert (q_commutator(g["E_3"], g["E_12"], s3) - g["E_132"]).is_zero()
    assert (q_commutator(g["F_21"], g["F_3"], -s3) - g["F_213"]).is_zero()


def test_serre_elements_vanish(d21e):
    alg = d21e.alg
    g = {n: alg.gen(n) for n in alg.names}
    s1, s3 = Fraction(1), Fraction(-1) - EPS
    assert (g["E_2"] * g["E_2"]).is_zero()
    assert (g["F_2"] * g["F_2"]).is_zero()
    assert (g["E_1"] * g["E_3"] - g["E_3"] * g["E_1"]).is_zero()
    assert (g["F_1"] * g["F_3"] - g["F_3"] * g["F_1"]).is_zero()
    assert q_commutator(g["E_1"], g["E_12"], -s1).is_zero()
    assert q_commutator(g["E_3"], g["E_32"], -s3).is_zero()
    assert q_commutator(g["F_21"], g["F_1"], s1).is_zero()
    assert q_commutator(g["F_23"], g["F_3"], s3).is_zero()


def test_even_composite_bracket(d21e):
    # [E_B, F_B] reproduces the rank-one quotient of Cartan exponentials
    alg = d21e.alg
    s1, s2, s3 = Fraction(1), EPS, -1 - EPS
    eb, fb = alg.gen("E_B"), alg.gen("F_B")
    expected = cartan_exp_multi(
        alg, ("H_1", "H_2", "H_3"),
        [(1, (s1, -2, s3)), (-1, (-s1, 2, -s3))], hbar_shift=1,
    ).scale(two_sinh_over_hbar(s2, alg.order).inverse())
    assert (eb * fb - fb * eb - expected).is_zero()


def test_even_composite_is_charged_sl2(d21e):
    # s_2 H_B = s_1 H_1 - 2 H_2 + s_3 H_3 acts with charges +-2
    alg = d21e.alg
    s1, s2, s3 = Fraction(1), EPS, -1 - EPS
    hb = (alg.gen("H_1").scale(s1) - alg.gen("H_2").scale(2)
          + alg.gen("H_3").scale(s3)).scale(ExactScalar.coerce(s2).inverse())
    for name, charge in (("E_B", 2), ("F_B", -2)):
        x = alg.gen(name)
        assert (hb * x - x * hb - x.scale(charge)).is_zero()


def test_nonsimple_coproduct_tail(d21e):
    report = verify_nonsimple_coproduct_tail(d21e)
    assert report["status"] == "pass"
    assert report["E_B"] == 0 and report["F_B"] == 0


def test_d21e_hopf_axioms(d21e):
    assert d21e.check_all_axioms() == {}


def test_d21e_rmatrix_properties(d21e):
    R = rmat_d21e(d21e)
    assert R.check_quasi_cocommutativity() == {}
    assert R.check_ybe().is_zero()


def test_d21e_other_epsilon():
    # the symmetric point s3 = s2 = -1/2 exercises a different branch
    hopf = build_uq_d21e("-1/2", 2)
    assert hopf.check_all_axioms() == {}


# ---------------------------------------------------------------------------
# the maximally extended contraction
# ---------------------------------------------------------------------------


def test_maxext_table_complete_and_confluent(maxext):
    assert len(maxext.alg.rules) == 198
    assert maxext.alg.check_local_confluence() == []


def test_central_letters_commute_with_simples(maxext):
    alg = maxext.alg
    h_c = alg.gen("H_1") - alg.gen("H_2").scale(2) - alg.gen("H_3")
    simples = [alg.gen("E_" + i) for i in "123"] \
        + [alg.gen("F_" + i) for i in "123"] \
        + [alg.gen("H_" + i) for i in "123"]
    for c in (alg.gen("E_C"), alg.gen("F_C"), h_c):
        for s in simples:
            assert (c * s - s * c).is_zero()


def test_extension_letter_commutators(maxext):
    alg = maxext.alg
    g = {n: alg.gen(n) for n in alg.names}
    h = HbarSeries.hbar(alg.order)
    # [E_A, E_2] = -hbar E_2 E_C, and mirror
    assert (g["E_A"] * g["E_2"] - g["E_2"] * g["E_A"]
            + (g["E_2"] * g["E_C"]).scale(h)).is_zero()
    assert (g["F_A"] * g["F_2"] - g["F_2"] * g["F_A"]
            + (g["F_2"] * g["F_C"]).scale(h)).is_zero()
    # [H_C, E_A] = 2 E_C with the Cartan alias
    h_c = g["H_1"] - g["H_2"].scale(2) - g["H_3"]
    assert (h_c * g["E_A"] - g["E_A"] * h_c - g["E_C"].scale(2)).is_zero()
    assert (h_c * g["F_A"] - g["F_A"] * h_c + g["F_C"].scale(2)).is_zero()


def test_central_letter_definitions(maxext):
    # E_C is the anticommutator of the two odd composites, rescaled
    alg = maxext.alg
    g = {n: alg.gen(n) for n in alg.names}
    tsh1 = two_sinh_over_hbar(1, alg.order)
    anti_e = g["E_32"] * g["E_12"] + g["E_12"] * g["E_32"]
    assert (anti_e.scale(tsh1 * Fraction(-1, 2)) - g["E_C"]).is_zero()
    anti_f = g["F_21"] * g["F_23"] + g["F_23"] * g["F_21"]
    assert (anti_f.scale(tsh1 * Fraction(1, 2)) - g["F_C"]).is_zero()


def test_maxext_hopf_axioms(maxext):
    assert maxext.check_all_axioms() == {}


def test_maxext_coproduct_tails(maxext):
    # the A-sector tails carry the Cartan alias
    alg = maxext.alg
    cop = maxext.coproducts["E_C"]
    one = alg.one()
    qc_m = cartan_exp_multi(alg, ("H_1", "H_2", "H_3"), [(1, (-1, 2, 1))])
    expected = TensorElement.of(alg.gen("E_C"), one) \
        + TensorElement.of(qc_m, alg.gen("E_C"))
    assert (cop - expected).is_zero()


def test_maxext_identification_metadata(maxext):
    ident = maxext.meta["identification"]
    assert ident["kappa"] == ExactScalar(2)
    assert ident["L"] == "E_A + xi*E_C"


def test_maxext_rmatrix_properties(maxext):
    R = rmat_max_ext(maxext)
    assert R.check_quasi_cocommutativity() == {}
    assert R.check_ybe().is_zero()


def test_maxext_rmatrix_xi_zero():
    hopf = build_max_ext_sl22(0, 2)
    R = rmat_max_ext(hopf)
    assert R.check_quasi_cocommutativity() == {}
    assert R.check_ybe().is_zero()
