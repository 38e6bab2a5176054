"""Contraction of two commuting deformed sl(2) copies onto the
six-generator algebra, with exact residual measurement.

The combined generators (A/C basis) are finite in the limit.  At finite
epsilon their relations and coproducts can be written exactly in the
A/C basis (the pre-limit presentation); comparing the pre-limit data
against the limit algebra gives residuals that are exact rationals, so
the O(epsilon) falloff is tested by halving epsilon and taking ratios.
The divergent misconfiguration tilde_epsilon ~ +epsilon shows up as a
1/epsilon coefficient in the pre-limit coproduct of E_A, flipping the
ratio from about 2 to about 1/2.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict

from gmpy2 import mpq

from .algebra import AlgebraElement, GradedAlgebra, TensorElement, q_power
from .algebras import build_k_xi, build_sl2_pair
from .hopf import (
    HopfAlgebraDef,
    apply_hom,
    apply_hom_tensor,
    cartan_exp_combo,
    cartan_exp_multi,
    check_hopf_morphism,
    two_sinh_over_hbar,
)
from .scalars import ExactScalar, HbarSeries


def element_distance(a: AlgebraElement, b: AlgebraElement) -> mpq:
    """Max |coefficient| of a - b, matching monomials structurally
    (the elements may live in different algebra instances with the
    same generator list)."""
    keys = {m.powers for m in a.terms} | {m.powers for m in b.terms}
    out = mpq(0)
    for k in keys:
        ca = next((c for m, c in a.terms.items() if m.powers == k), None)
        cb = next((c for m, c in b.terms.items() if m.powers == k), None)
        if ca is None:
            d = cb.max_abs()
        elif cb is None:
            d = ca.max_abs()
        else:
            d = (ca - cb).max_abs()
        out = max(out, d)
    return out


def tensor_distance(a: TensorElement, b: TensorElement) -> mpq:
    keys = {tuple(m.powers for m in k) for k in a.terms}
    keys |= {tuple(m.powers for m in k) for k in b.terms}
    out = mpq(0)
    for k in keys:
        ca = next((c for kk, c in a.terms.items()
                   if tuple(m.powers for m in kk) == k), None)
        cb = next((c for kk, c in b.terms.items()
                   if tuple(m.powers for m in kk) == k), None)
        if ca is None:
            d = cb.max_abs()
        elif cb is None:
            d = ca.max_abs()
        else:
            d = (ca - cb).max_abs()
        out = max(out, d)
    return out


class ContractionMap:
    """Pre-limit A/C presentation at finite epsilon, plus the embedding
    of the A/C generators into the two-copy algebra.

    tilde_epsilon = beta*epsilon + xi*epsilon^2 with beta = -1 for the
    convergent limit; beta = +1 reproduces the divergent alternative.
    """

    def __init__(self, epsilon: Fraction, xi: Fraction, order: int, beta: int = -1):
        if epsilon == 0:
            raise ZeroDivisionError("epsilon must be nonzero")
        self.epsilon = Fraction(epsilon)
        self.xi = Fraction(xi)
        self.beta = beta
        self.order = order
        self.tilde_epsilon = beta * self.epsilon + self.xi * self.epsilon ** 2
        self.target = build_k_xi(self.xi, order)
        self.prelimit = self._build_prelimit()
        self.source = build_sl2_pair(self.epsilon, self.tilde_epsilon, order)
        s = self.source.alg
        e = ExactScalar(self.epsilon)
        self.gen_map: Dict[str, AlgebraElement] = {
            "E_A": s.gen("E") + s.gen("Et"),
            "F_A": s.gen("F") + s.gen("Ft"),
            "H_A": s.gen("H") + s.gen("Ht"),
            "E_C": s.gen("E").scale(e),
            "F_C": s.gen("F").scale(e),
            "H_C": s.gen("H").scale(e),
        }

    def _build_prelimit(self) -> HopfAlgebraDef:
        eps = self.epsilon
        teps = self.tilde_epsilon
        u = teps / eps
        order = self.order
        names = ["E_A", "E_C", "F_A", "F_C", "H_A", "H_C"]
        alg = GradedAlgebra(names, [0] * 6, order)
        g = {n: alg.gen(n) for n in names}

        sC = cartan_exp_combo(alg, "H_C", [(1, 1), (-1, -1)], hbar_shift=1)
        inv_e = two_sinh_over_hbar(eps, order).inverse()
        inv_te = two_sinh_over_hbar(teps, order).inverse()
        # [E_A, F_A]: the two copy contributions in A/C variables
        ea_fa = sC.scale(inv_e) + cartan_exp_multi(
            alg, ["H_A", "H_C"],
            [(1, (teps, -u)), (-1, (-teps, u))],
            hbar_shift=1,
        ).scale(inv_te)
        ea_fc = sC.scale(inv_e * ExactScalar(eps))
        ec_fc = sC.scale(inv_e * ExactScalar(eps * eps))

        alg.add_swap_rule("F_A", "E_A", tail=-ea_fa)
        alg.add_swap_rule("E_C", "E_A")
        alg.add_swap_rule("F_C", "E_A", tail=-ea_fc)
        alg.add_swap_rule("H_A", "E_A", tail=2 * g["E_A"])
        alg.add_swap_rule("H_C", "E_A", tail=2 * g["E_C"])
        alg.add_swap_rule("F_A", "E_C", tail=-ea_fc)
        alg.add_swap_rule("F_C", "E_C", tail=-ec_fc)
        alg.add_swap_rule("H_A", "E_C", tail=2 * g["E_C"])
        alg.add_swap_rule("H_C", "E_C", tail=g["E_C"].scale(ExactScalar(2 * eps)))
        alg.add_swap_rule("F_C", "F_A")
        alg.add_swap_rule("H_A", "F_A", tail=-2 * g["F_A"])
        alg.add_swap_rule("H_C", "F_A", tail=-2 * g["F_C"])
        alg.add_swap_rule("H_A", "F_C", tail=-2 * g["F_C"])
        alg.add_swap_rule("H_C", "F_C", tail=g["F_C"].scale(ExactScalar(-2 * eps)))
        alg.add_swap_rule("H_C", "H_A")

        one = alg.one()
        qmC = q_power(g["H_C"], -1)
        qpC = q_power(g["H_C"], 1)
        # q^(-teps H_A + u H_C) and its mirror
        qm_t = cartan_exp_multi(alg, ["H_A", "H_C"], [(1, (-teps, u))])
        qp_t = cartan_exp_multi(alg, ["H_A", "H_C"], [(1, (teps, -u))])
        inv_eps = ExactScalar(Fraction(1, 1) / eps)
        # (1/eps) (q^(-teps H_A + u H_C) - q^(-H_C)); finite iff u -> -1
        div_e = cartan_exp_multi(
            alg, ["H_A", "H_C"],
            [(inv_eps, (-teps, u)), (-inv_eps, (0, -1))],
        )
        div_f = cartan_exp_multi(
            alg, ["H_A", "H_C"],
            [(inv_eps, (0, 1)), (-inv_eps, (teps, -u))],
        )
        cop = {
            "E_A": TensorElement.of(g["E_A"], one)
            + TensorElement.of(qm_t, g["E_A"])
            - TensorElement.of(div_e, g["E_C"]),
            "F_A": TensorElement.of(g["F_A"], qp_t)
            + TensorElement.of(one, g["F_A"])
            + TensorElement.of(g["F_C"], div_f),
            "H_A": TensorElement.of(g["H_A"], one) + TensorElement.of(one, g["H_A"]),
            "E_C": TensorElement.of(g["E_C"], one) + TensorElement.of(qmC, g["E_C"]),
            "F_C": TensorElement.of(g["F_C"], qpC) + TensorElement.of(one, g["F_C"]),
            "H_C": TensorElement.of(g["H_C"], one) + TensorElement.of(one, g["H_C"]),
        }
        eps0 = {n: ExactScalar(0) for n in names}
        return HopfAlgebraDef(alg, cop, eps0)

    # -- validation of the pre-limit presentation ---------------------------

    def check_prelimit_embedding(self) -> dict:
        """The pre-limit presentation must map exactly (not just up to
        O(epsilon)) into the two-copy algebra."""
        return check_hopf_morphism(self.prelimit, self.source, self.gen_map)

    # -- residuals vs the limit algebra ------------------------------------

    def algebra_residuals(self) -> Dict[str, mpq]:
        out = {}
        palg, talg = self.prelimit.alg, self.target.alg
        for (i, j), rhs in talg.rules.items():
            li, lj = talg.names[i], talg.names[j]
            out[f"{li}*{lj}"] = element_distance(palg.rules[(i, j)], rhs)
        return out

    def coproduct_residuals(self) -> Dict[str, mpq]:
        return {
            name: tensor_distance(self.prelimit.coproducts[name], cop)
            for name, cop in self.target.coproducts.items()
        }

    def residual(self) -> mpq:
        vals = list(self.algebra_residuals().values())
        vals += list(self.coproduct_residuals().values())
        return max(vals, default=mpq(0))


def falloff_ratio(xi: Fraction, order: int, epsilon: Fraction = Fraction(1, 10),
                  beta: int = -1, which: str = "all"):
    """Residual ratio between epsilon and epsilon/2.

    A convergent contraction gives a ratio near 2 (first-order falloff);
    the beta = +1 misconfiguration keeps a 1/epsilon term in the
    coproduct of E_A, giving a ratio near 1/2 instead.
    """
    def res(eps):
        cm = ContractionMap(eps, xi, order, beta=beta)
        if which == "coproduct":
            return max(cm.coproduct_residuals().values())
        if which == "algebra":
            return max(cm.algebra_residuals().values())
        return cm.residual()

    r1 = res(epsilon)
    r2 = res(epsilon / 2)
    if r2 == 0:
        raise ArithmeticError("residual vanished; ratio undefined")
    return r1 / r2
