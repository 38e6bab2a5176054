"""R-matrix constructions: braiding identities, conjugation, limits."""

from fractions import Fraction

import pytest

from qhopf.algebra import TensorElement
from qhopf.algebras import build_k_xi, build_rot_momentum, build_uq_sl2
from qhopf.contraction import ContractionMap
from qhopf.rmatrix import (
    NonlinearFirstOrder,
    RMatrixSeries,
    check_momentum_conjugation,
    prelimit_rmat_residual,
    residual_report,
    rmat_k_xi,
    rmat_product_prelimit,
    rmat_rot,
    rmat_uq_sl2,
)
from qhopf.scalars import ExactScalar, HbarSeries

XI = Fraction(1, 3)


@pytest.fixture(scope="module")
def sl2_r():
    hopf = build_uq_sl2(1, 3)
    return hopf, rmat_uq_sl2(hopf, 1)


@pytest.fixture(scope="module")
def kxi_r():
    hopf = build_k_xi(XI, 3)
    return hopf, rmat_k_xi(hopf, XI)


def test_sl2_quasi_cocommutativity(sl2_r):
    _, R = sl2_r
    assert R.check_quasi_cocommutativity() == {}


def test_sl2_ybe(sl2_r):
    _, R = sl2_r
    assert R.check_ybe().is_zero()


def test_sl2_hexagons(sl2_r):
    _, R = sl2_r
    assert R.check_hexagons() == {}


def test_sl2_inverse(sl2_r):
    hopf, R = sl2_r
    assert (R.value * R.inverse - TensorElement.unit(hopf.alg, 2)).is_zero()


def test_kxi_first_order_term(kxi_r):
    # R = 1 + 2h [E_C(x)F_A + E_A(x)F_C + xi E_C(x)F_C
    #             + (H_C(x)H_A + H_A(x)H_C + xi H_C(x)H_C)/4] + O(h^2)
    hopf, R = kxi_r
    g = {n: hopf.alg.gen(n) for n in hopf.alg.names}
    lin = (
        TensorElement.of(g["E_C"], g["F_A"])
        + TensorElement.of(g["E_A"], g["F_C"])
        + TensorElement.of(g["E_C"], g["F_C"]).scale(XI)
        + (
            TensorElement.of(g["H_C"], g["H_A"])
            + TensorElement.of(g["H_A"], g["H_C"])
            + TensorElement.of(g["H_C"], g["H_C"]).scale(XI)
        ).scale(Fraction(1, 4))
    ).scale(2)
    got = {
        k: c.coeffs[1]
        for k, c in R.value.terms.items()
        if len(c.coeffs) > 1 and not c.coeffs[1].is_zero()
    }
    want = {k: c.coeffs[0] for k, c in lin.terms.items() if not c.coeffs[0].is_zero()}
    assert got == want


def test_kxi_quasi_cocommutativity(kxi_r):
    _, R = kxi_r
    assert R.check_quasi_cocommutativity() == {}


def test_kxi_ybe(kxi_r):
    _, R = kxi_r
    assert R.check_ybe().is_zero()


def test_kxi_hexagons(kxi_r):
    _, R = kxi_r
    assert R.check_hexagons() == {}


@pytest.mark.parametrize("xi", [0, XI])
def test_momentum_conjugation(xi):
    hopf = build_k_xi(xi, 3)
    R = rmat_k_xi(hopf, xi)
    assert check_momentum_conjugation(hopf, R) == {}


def test_rot_quasi_cocommutativity():
    hopf = build_rot_momentum(XI, 3)
    R = rmat_rot(hopf, XI)
    assert R.check_quasi_cocommutativity() == {}


def test_prelimit_product_is_quasi_cocommutative():
    cm = ContractionMap(Fraction(1, 10), XI, 3)
    R = rmat_product_prelimit(cm)
    assert R.check_quasi_cocommutativity() == {}


def test_prelimit_rmat_residual_falls_off_linearly():
    r10 = prelimit_rmat_residual(ContractionMap(Fraction(1, 10), XI, 3))
    r20 = prelimit_rmat_residual(ContractionMap(Fraction(1, 20), XI, 3))
    assert Fraction(3, 2) < Fraction(r10 / r20) < Fraction(5, 2)


def test_wrong_pairing_diverges():
    # the inverse-opposite pairing grows like 1/epsilon at first order
    w10 = prelimit_rmat_residual(
        ContractionMap(Fraction(1, 10), XI, 3), pairing="wrong", hbar_order=1
    )
    w20 = prelimit_rmat_residual(
        ContractionMap(Fraction(1, 20), XI, 3), pairing="wrong", hbar_order=1
    )
    ratio = Fraction(w10 / w20)
    assert Fraction(1, 4) < ratio < Fraction(3, 4)


def test_classical_limit_extract(sl2_r):
    _, R = sl2_r
    got = R.classical_limit_extract()
    assert got[("E", "F")] == ExactScalar(1)
    assert got[("H", "H")] == ExactScalar(Fraction(1, 4))


def test_classical_limit_extract_rejects_nonlinear():
    hopf = build_uq_sl2(1, 3)
    alg = hopf.alg
    e, f = alg.gen("E"), alg.gen("F")
    bad = TensorElement.unit(alg, 2) + TensorElement.of(e * e, f).scale(
        HbarSeries.monomial(1, 1, 3)
    )
    R = RMatrixSeries(hopf, bad)
    with pytest.raises(NonlinearFirstOrder):
        R.classical_limit_extract()


def test_residual_report(kxi_r):
    hopf, R = kxi_r
    ok = residual_report("ybe", "k_xi", 3, XI, R.check_ybe())
    assert ok["status"] == "pass"
    assert ok["first_failing_order"] is None
    bad = residual_report("ybe", "k_xi", 3, XI, R.value - R.value.flip())
    assert bad["status"] == "fail"
    assert bad["first_failing_order"] == 1
    assert bad["failing_term_count"] > 0
