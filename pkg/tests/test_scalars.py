from fractions import Fraction

import pytest
from gmpy2 import mpq
from hypothesis import given, strategies as st

from qhopf.scalars import (
    ExactScalar,
    HbarSeries,
    NonzeroConstantTerm,
    ZeroConstantTerm,
    dilog_series,
    exp_scalar,
    log1m_over_x_series,
    parse_rational,
    q_factorial,
    q_number,
    qdilog_coefficients,
)


def F(a, b=1):
    return ExactScalar(Fraction(a, b))


rationals = st.fractions(min_value=-50, max_value=50, max_denominator=20)
scalars = st.builds(ExactScalar, rationals, rationals)


class TestExactScalar:
    def test_complex_product(self):
        z = ExactScalar(1, 2) * ExactScalar(3, -1)
        assert z == ExactScalar(5, 5)

    def test_inverse(self):
        z = ExactScalar(Fraction(1, 2), Fraction(-1, 3))
        assert (z * z.inverse()) == ExactScalar(1)

    def test_zero_inverse_raises(self):
        with pytest.raises(ZeroDivisionError):
            ExactScalar(0).inverse()

    @given(scalars, scalars, scalars)
    def test_distributive(self, a, b, c):
        assert a * (b + c) == a * b + a * c

    @given(scalars)
    def test_field_inverse(self, a):
        if not a.is_zero():
            assert a * a.inverse() == ExactScalar(1)

    def test_parse(self):
        assert parse_rational("3/5") == ExactScalar(Fraction(3, 5))
        assert parse_rational("-2") == ExactScalar(-2)
        assert parse_rational("1/2+1/3i") == ExactScalar(
            Fraction(1, 2), Fraction(1, 3)
        )
        assert parse_rational("-i") == ExactScalar(0, -1)
        assert parse_rational("i") == ExactScalar(0, 1)
        assert parse_rational("2-3i") == ExactScalar(2, -3)


class TestHbarSeries:
    def test_geometric_inverse(self):
        # (1 - h)^(-1) = 1 + h + h^2 + h^3 at order 3
        s = HbarSeries.one(3) - HbarSeries.hbar(3)
        assert s.inverse() == HbarSeries([1, 1, 1, 1], 3)

    def test_affine_inverse(self):
        s = HbarSeries([2, 1], 1)
        assert s.inverse() == HbarSeries([F(1, 2), F(-1, 4)], 1)

    def test_inverse_zero_constant_raises(self):
        with pytest.raises(ZeroConstantTerm):
            HbarSeries.hbar(2).inverse()

    def test_shift_down_requires_valuation(self):
        s = HbarSeries([0, 0, 1, 5], 3)
        assert s.shift(-2) == HbarSeries([1, 5], 1)
        with pytest.raises(ArithmeticError):
            s.shift(-3)

    def test_exp_log_roundtrip(self):
        s = HbarSeries([0, 2, F(-1, 3), 1, F(5, 7)], 4)
        assert (s.exp() - 1).log1p() == s

    def test_exp_homomorphism(self):
        a = HbarSeries([0, 1, F(1, 2)], 5)
        b = HbarSeries([0, F(-2, 3), 0, 4], 5)
        assert (a + b).exp() == a.exp() * b.exp()

    def test_exp_nonzero_constant_raises(self):
        with pytest.raises(NonzeroConstantTerm):
            HbarSeries.one(2).exp()

    def test_exp_scalar(self):
        # e^(2h) = 1 + 2h + 2h^2 + 4/3 h^3
        assert exp_scalar(2, 3) == HbarSeries([1, 2, 2, F(4, 3)], 3)

    def test_truncation_to_min_order(self):
        a = HbarSeries([1, 1, 1], 2)
        b = HbarSeries([1, 1, 1, 1, 1], 4)
        assert (a * b).order == 2


class TestQNumbers:
    def test_q_number_3(self):
        # [3] at q = e^(2h), i.e. alpha=2: (1-q^3)/(1-q)
        got = q_number(3, 2, 2)
        # independent evaluation: 1 + q + q^2 with q = e^(2h)
        q = exp_scalar(2, 2)
        assert got == 1 + q + q * q

    def test_q_number_alpha1(self):
        # [3] at alpha=1 is 3 + 3h + 5/2 h^2 + ...
        assert q_number(3, 1, 2) == HbarSeries([3, 3, F(5, 2)], 2)

    def test_q_number_zero_alpha(self):
        assert q_number(5, 0, 4) == HbarSeries.constant(5, 4)

    def test_q_factorial(self):
        # [3]! at alpha=1, order 1: 6 + 4h? check against [1][2][3]
        direct = q_number(1, 1, 1) * q_number(2, 1, 1) * q_number(3, 1, 1)
        assert q_factorial(3, 1, 1) == direct

    @given(st.integers(1, 6), st.fractions(min_value=-5, max_value=5, max_denominator=3))
    def test_q_number_defining_identity(self, n, alpha):
        # [n] * (1 - q) == 1 - q^n
        order = 5
        qn = q_number(n, alpha, order)
        q = exp_scalar(alpha, order)
        qpn = exp_scalar(ExactScalar(alpha) * n, order)
        assert qn * (1 - q) == 1 - qpn

    def test_qdilog_matches_log_of_qexp(self):
        # With a commuting formal X, sum_n X^n/[n]! should equal
        # exp(sum_n c_n X^n) with c_n the q-dilog coefficients.
        order, n_max, alpha = 4, 6, 1
        cs = qdilog_coefficients(n_max, alpha, order)
        # represent polynomials in X as dicts degree -> series, mod X^(n_max+1)
        def pmul(p, q):
            out = {}
            for i, a in p.items():
                for j, b in q.items():
                    if i + j <= n_max:
                        out[i + j] = out.get(i + j, HbarSeries.zero(order)) + a * b
            return out

        arg = {n + 1: cs[n] for n in range(n_max)}
        expd = {0: HbarSeries.one(order)}
        term = {0: HbarSeries.one(order)}
        for k in range(1, n_max + 1):
            term = pmul(term, arg)
            term = {d: c * F(1, k) for d, c in term.items()}
            for d, c in term.items():
                expd[d] = expd.get(d, HbarSeries.zero(order)) + c
        for n in range(0, n_max + 1):
            want = q_factorial(n, alpha, order).inverse()
            assert expd.get(n, HbarSeries.zero(order)) == want

    def test_dilog_series(self):
        assert dilog_series(3) == [F(1), F(1, 4), F(1, 9)]

    def test_log1m_over_x(self):
        assert log1m_over_x_series(2) == [F(-1), F(-1, 2), F(-1, 3)]
