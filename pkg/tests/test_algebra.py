from fractions import Fraction

import pytest

from qhopf.algebra import (
    AlgebraElement,
    GradedAlgebra,
    MissingRule,
    Monomial,
    TensorElement,
    commutator,
    exp_element,
    q_commutator,
    q_power,
    qexp_element,
)
from qhopf.scalars import ExactScalar, HbarSeries, exp_scalar, q_factorial


def classical_sl2(order=0):
    """sl(2) with basis E < F < H and integer structure constants."""
    alg = GradedAlgebra(["E", "F", "H"], [0, 0, 0], order)
    E, F, H = alg.gen("E"), alg.gen("F"), alg.gen("H")
    alg.add_swap_rule("F", "E", tail=-H)
    alg.add_swap_rule("H", "E", tail=2 * E)
    alg.add_swap_rule("H", "F", tail=-2 * F)
    return alg


class TestRewriting:
    def test_normal_form_sorts(self):
        alg = classical_sl2()
        E, F, H = alg.gen("E"), alg.gen("F"), alg.gen("H")
        assert F * E == E * F - H
        assert H * E == E * H + 2 * E

    def test_casimir_is_central(self):
        alg = classical_sl2()
        E, F, H = alg.gen("E"), alg.gen("F"), alg.gen("H")
        cas = E * F + F * E + H * H.scale(Fraction(1, 2))
        for g in (E, F, H):
            assert cas * g == g * cas

    def test_associativity_random_words(self):
        alg = classical_sl2()
        E, F, H = alg.gen("E"), alg.gen("F"), alg.gen("H")
        x = E + 2 * F
        y = F * H - E
        z = H + E * F
        assert (x * y) * z == x * (y * z)

    def test_missing_rule_raises(self):
        alg = GradedAlgebra(["a", "b"], [0, 0], 0)
        with pytest.raises(MissingRule):
            alg.gen("b") * alg.gen("a")

    def test_confluence_clean_table(self):
        alg = classical_sl2()
        assert alg.check_local_confluence() == []

    def test_confluence_detects_corruption(self):
        alg = GradedAlgebra(["E", "F", "H"], [0, 0, 0], 0)
        E, F, H = alg.gen("E"), alg.gen("F"), alg.gen("H")
        alg.add_swap_rule("F", "E", tail=-H)
        alg.add_swap_rule("H", "E", tail=2 * E)
        alg.add_swap_rule("H", "F", tail=2 * F)  # wrong sign
        assert alg.check_local_confluence() != []

    def test_qh_conjugation_scales_e(self):
        # with [H, E] = 2E, e^(hbar H) E e^(-hbar H) = e^(2 hbar) E
        alg = classical_sl2(order=5)
        E, H = alg.gen("E"), alg.gen("H")
        lhs = q_power(H, 1) * E * q_power(H, -1)
        assert lhs == E.scale(exp_scalar(2, 5))


class TestGradedStructure:
    def make_super(self, order=2):
        alg = GradedAlgebra(["a", "b"], [1, 1], order)
        alg.add_swap_rule("b", "a")
        alg.add_rule("a", "a", alg.zero())
        alg.add_rule("b", "b", alg.zero())
        return alg

    def test_odd_squares_vanish(self):
        alg = self.make_super()
        a, b = alg.gen("a"), alg.gen("b")
        assert (a * a).is_zero()
        assert ((a + b) * (a + b)).is_zero()  # ab = -ba here

    def test_graded_commutator(self):
        alg = self.make_super()
        a, b = alg.gen("a"), alg.gen("b")
        # [a, b] = ab + ba for odd a, b; with ba = -ab it vanishes
        assert commutator(a, b).is_zero()

    def test_koszul_tensor_sign(self):
        alg = self.make_super()
        a, b = alg.gen("a"), alg.gen("b")
        one = alg.one()
        # (1 (x) b)(b (x) 1) = -(b (x) b) since both crossing slots are odd
        lhs = TensorElement.of(one, b) * TensorElement.of(b, one)
        assert lhs == -TensorElement.of(b, b)
        # even crossing picks up no sign
        assert TensorElement.of(a, one) * TensorElement.of(one, b) == TensorElement.of(a, b)

    def test_odd_square_tensor(self):
        alg = self.make_super()
        a, b = alg.gen("a"), alg.gen("b")
        t = TensorElement.of(a, b)
        assert (t * t).is_zero()

    def test_flip_sign(self):
        alg = self.make_super()
        a, b = alg.gen("a"), alg.gen("b")
        assert TensorElement.of(a, b).flip() == -TensorElement.of(b, a)

    def test_q_commutator_odd(self):
        alg = self.make_super(order=3)
        a, b = alg.gen("a"), alg.gen("b")
        # odd-odd q-bracket is ab + e^(alpha h) ba = (1 - e^(alpha h)) ab
        got = q_commutator(a, b, Fraction(1, 2))
        want = (a * b).scale(1 - exp_scalar(Fraction(1, 2), 3))
        assert got == want


class TestExponentials:
    def test_exp_zero(self):
        alg = classical_sl2(order=2)
        assert exp_element(alg.zero()) == alg.one()

    def test_exp_inverse(self):
        alg = classical_sl2(order=4)
        H = alg.gen("H")
        x = H.scale(HbarSeries.hbar(4))
        assert exp_element(x) * exp_element(-x) == alg.one()

    def test_exp_order_zero_nonnilpotent_raises(self):
        alg = classical_sl2(order=2)
        with pytest.raises(ArithmeticError):
            exp_element(alg.gen("H"), max_terms=10)

    def test_qexp_nilpotent(self):
        alg = GradedAlgebra(["x"], [1], 2)
        alg.add_rule("x", "x", alg.zero())
        x = alg.gen("x")
        inv = [q_factorial(n, 1, 2).inverse() for n in range(3)]
        assert qexp_element(x, inv) == alg.one() + x

    def test_exp_tensor(self):
        alg = classical_sl2(order=3)
        E, F = alg.gen("E"), alg.gen("F")
        h = HbarSeries.hbar(3)
        t = TensorElement.of(E.scale(h), F)
        one2 = TensorElement.unit(alg, 2)
        assert exp_element(t, one=one2) * exp_element(-t, one=one2) == one2

    def test_insert_unit_leg(self):
        alg = classical_sl2()
        E, F = alg.gen("E"), alg.gen("F")
        t = TensorElement.of(E, F)
        assert t.insert_unit_leg(1) == TensorElement.of(E, alg.one(), F)
