"""Concrete Hopf algebras: q-deformed sl(2), two commuting copies,
their contraction K_xi(iso(3)), and the rotation/momentum presentation
of the latter with its invariants.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict

import sympy

from .algebra import (
    AlgebraElement,
    GradedAlgebra,
    Monomial,
    TensorElement,
    exp_element,
    q_power,
)
from .hopf import (
    HopfAlgebraDef,
    cartan_exp_combo,
    element_unit_inverse,
    two_sinh_over_hbar,
)
from .scalars import ExactScalar, HbarSeries

I = ExactScalar.i()


def build_uq_sl2(alpha, order: int) -> HopfAlgebraDef:
    """U_(alpha*hbar)(sl(2)) with generators E < F < H.

    alpha = 0 gives the undeformed enveloping algebra.
    """
    alg = GradedAlgebra(["E", "F", "H"], [0, 0, 0], order)
    E, F, H = alg.gen("E"), alg.gen("F"), alg.gen("H")
    a = ExactScalar.coerce(alpha)
    if a.is_zero():
        ef = H
        qmH = alg.one()
        qpH = alg.one()
    else:
        num = cartan_exp_combo(alg, "H", [(1, a), (-1, -a)], hbar_shift=1)
        ef = num.scale(two_sinh_over_hbar(a, order).inverse())
        qmH = q_power(H, -a)
        qpH = q_power(H, a)
    alg.add_swap_rule("F", "E", tail=-ef)
    alg.add_swap_rule("H", "E", tail=2 * E)
    alg.add_swap_rule("H", "F", tail=-2 * F)
    one = alg.one()
    cop = {
        "E": TensorElement.of(E, one) + TensorElement.of(qmH, E),
        "F": TensorElement.of(F, qpH) + TensorElement.of(one, F),
        "H": TensorElement.of(H, one) + TensorElement.of(one, H),
    }
    eps = {"E": ExactScalar(0), "F": ExactScalar(0), "H": ExactScalar(0)}
    return HopfAlgebraDef(alg, cop, eps)


def build_sl2_pair(alpha1, alpha2, order: int) -> HopfAlgebraDef:
    """Two mutually commuting deformed sl(2) copies in one algebra.

    First copy (E, F, H) deformed at alpha1, second copy (Et, Ft, Ht)
    at alpha2.
    """
    names = ["E", "F", "H", "Et", "Ft", "Ht"]
    alg = GradedAlgebra(names, [0] * 6, order)
    gens = {n: alg.gen(n) for n in names}

    def install(e, f, h, a):
        a = ExactScalar.coerce(a)
        if a.is_zero():
            ef = gens[h]
        else:
            num = cartan_exp_combo(alg, h, [(1, a), (-1, -a)], hbar_shift=1)
            ef = num.scale(two_sinh_over_hbar(a, order).inverse())
        alg.add_swap_rule(f, e, tail=-ef)
        alg.add_swap_rule(h, e, tail=2 * gens[e])
        alg.add_swap_rule(h, f, tail=-2 * gens[f])

    install("E", "F", "H", alpha1)
    install("Et", "Ft", "Ht", alpha2)
    for second in ("Et", "Ft", "Ht"):
        for first in ("E", "F", "H"):
            alg.add_swap_rule(second, first)

    one = alg.one()
    a1, a2 = ExactScalar.coerce(alpha1), ExactScalar.coerce(alpha2)

    def copy_cop(e, f, h, a):
        qm = q_power(gens[h], -a) if not a.is_zero() else one
        qp = q_power(gens[h], a) if not a.is_zero() else one
        return {
            e: TensorElement.of(gens[e], one) + TensorElement.of(qm, gens[e]),
            f: TensorElement.of(gens[f], qp) + TensorElement.of(one, gens[f]),
            h: TensorElement.of(gens[h], one) + TensorElement.of(one, gens[h]),
        }

    cop = {}
    cop.update(copy_cop("E", "F", "H", a1))
    cop.update(copy_cop("Et", "Ft", "Ht", a2))
    eps = {n: ExactScalar(0) for n in names}
    return HopfAlgebraDef(alg, cop, eps)


def build_k_xi(xi, order: int) -> HopfAlgebraDef:
    """The contracted one-parameter Hopf algebra on six generators.

    Generators E_A < E_C < F_A < F_C < H_A < H_C; the C-sector is a
    commutative ideal and the deformation enters through exponentials
    of H_C divided by exact hbar powers.
    """
    names = ["E_A", "E_C", "F_A", "F_C", "H_A", "H_C"]
    alg = GradedAlgebra(names, [0] * 6, order)
    g = {n: alg.gen(n) for n in names}
    xi = ExactScalar.coerce(xi)

    # (q^(H_C) - q^(-H_C)) / (2 hbar) and (q^(H_C) + q^(-H_C)) / 2
    sC = cartan_exp_combo(
        alg, "H_C", [(Fraction(1, 2), 1), (Fraction(-1, 2), -1)], hbar_shift=1
    )
    cC = cartan_exp_combo(
        alg, "H_C", [(Fraction(1, 2), 1), (Fraction(1, 2), -1)]
    )
    ea_fa = (g["H_A"] + g["H_C"].scale(xi)) * cC - sC.scale(xi)

    alg.add_swap_rule("F_A", "E_A", tail=-ea_fa)
    alg.add_swap_rule("E_C", "E_A")
    alg.add_swap_rule("F_C", "E_A", tail=-sC)
    alg.add_swap_rule("H_A", "E_A", tail=2 * g["E_A"])
    alg.add_swap_rule("H_C", "E_A", tail=2 * g["E_C"])
    alg.add_swap_rule("F_A", "E_C", tail=-sC)
    alg.add_swap_rule("F_C", "E_C")
    alg.add_swap_rule("H_A", "E_C", tail=2 * g["E_C"])
    alg.add_swap_rule("H_C", "E_C")
    alg.add_swap_rule("F_C", "F_A")
    alg.add_swap_rule("H_A", "F_A", tail=-2 * g["F_A"])
    alg.add_swap_rule("H_C", "F_A", tail=-2 * g["F_C"])
    alg.add_swap_rule("H_A", "F_C", tail=-2 * g["F_C"])
    alg.add_swap_rule("H_C", "F_C")
    alg.add_swap_rule("H_C", "H_A")

    one = alg.one()
    h = HbarSeries.hbar(order)
    qm = q_power(g["H_C"], -1)
    qp = q_power(g["H_C"], 1)
    ha_xi = g["H_A"] + g["H_C"].scale(xi)
    cop = {
        "E_A": TensorElement.of(g["E_A"], one)
        + TensorElement.of(qm, g["E_A"])
        - TensorElement.of((ha_xi * qm).scale(h), g["E_C"]),
        "F_A": TensorElement.of(g["F_A"], qp)
        + TensorElement.of(one, g["F_A"])
        + TensorElement.of(g["F_C"].scale(h), qp * ha_xi),
        "H_A": TensorElement.of(g["H_A"], one) + TensorElement.of(one, g["H_A"]),
        "E_C": TensorElement.of(g["E_C"], one) + TensorElement.of(qm, g["E_C"]),
        "F_C": TensorElement.of(g["F_C"], qp) + TensorElement.of(one, g["F_C"]),
        "H_C": TensorElement.of(g["H_C"], one) + TensorElement.of(one, g["H_C"]),
    }
    eps = {n: ExactScalar(0) for n in names}
    return HopfAlgebraDef(alg, cop, eps)


def build_rot_momentum(xi, order: int) -> HopfAlgebraDef:
    """The same Hopf algebra in the rotation/momentum basis.

    Generators P0 < P+ < P- < L0 < L+ < L-; the momenta commute and
    deformations enter through exponentials of the energy P0.
    """
    names = ["P0", "P+", "P-", "L0", "L+", "L-"]
    alg = GradedAlgebra(names, [0] * 6, order)
    g = {n: alg.gen(n) for n in names}
    xi = ExactScalar.coerce(xi)

    # (q^(2iP0) - q^(-2iP0)) / (8 hbar)
    s2 = cartan_exp_combo(
        alg, "P0",
        [(Fraction(1, 8), I * 2), (Fraction(-1, 8), I * (-2))],
        hbar_shift=1,
    )
    # (i/4)(q^(2iP0) + q^(-2iP0))
    c2 = cartan_exp_combo(
        alg, "P0",
        [(I * Fraction(1, 4), I * 2), (I * Fraction(1, 4), I * (-2))],
    )
    l0_xi = g["L0"] + g["P0"].scale(xi)
    lp_lm = c2 * l0_xi - s2.scale(xi)

    alg.add_swap_rule("P+", "P0")
    alg.add_swap_rule("P-", "P0")
    alg.add_swap_rule("P-", "P+")
    alg.add_swap_rule("L0", "P0")
    alg.add_swap_rule("L0", "P+", tail=g["P+"].scale(-I))
    alg.add_swap_rule("L0", "P-", tail=g["P-"].scale(I))
    alg.add_swap_rule("L+", "P0", tail=g["P+"].scale(I))
    alg.add_swap_rule("L+", "P+")
    alg.add_swap_rule("L+", "P-", tail=s2)
    alg.add_swap_rule("L+", "L0", tail=g["L+"].scale(I))
    alg.add_swap_rule("L-", "P0", tail=g["P-"].scale(-I))
    alg.add_swap_rule("L-", "P+", tail=-s2)
    alg.add_swap_rule("L-", "P-")
    alg.add_swap_rule("L-", "L0", tail=g["L-"].scale(-I))
    alg.add_swap_rule("L-", "L+", tail=-lp_lm)

    one = alg.one()
    ih = HbarSeries.monomial(I, 1, order)
    qm = q_power(g["P0"], -I)
    qp = q_power(g["P0"], I)

    def momentum_like(x):
        return TensorElement.of(g[x], qp) + TensorElement.of(qm, g[x])

    cop = {
        "P0": TensorElement.of(g["P0"], one) + TensorElement.of(one, g["P0"]),
        "L0": TensorElement.of(g["L0"], one) + TensorElement.of(one, g["L0"]),
        "P+": momentum_like("P+"),
        "P-": momentum_like("P-"),
        "L+": momentum_like("L+")
        + TensorElement.of(g["P+"].scale(ih), qp * l0_xi)
        - TensorElement.of((l0_xi * qm).scale(ih), g["P+"]),
        "L-": momentum_like("L-")
        + TensorElement.of(g["P-"].scale(ih), qp * l0_xi)
        - TensorElement.of((l0_xi * qm).scale(ih), g["P-"]),
    }
    eps = {n: ExactScalar(0) for n in names}
    return HopfAlgebraDef(alg, cop, eps)


def basis_change_map(kxi: HopfAlgebraDef, rot: HopfAlgebraDef) -> Dict[str, AlgebraElement]:
    """Images of the contracted-basis generators inside the
    rotation/momentum presentation (with the same xi)."""
    alg = rot.alg
    g = {n: alg.gen(n) for n in alg.names}
    order = alg.order
    qm = q_power(g["P0"], -I)
    qp = q_power(g["P0"], I)
    # xi recovered from the rule table is awkward; take it as the L-L tail
    # owner's parameter, passed through the coproduct of L+: instead require
    # the caller built both at the same xi and read it from kxi below.
    xi = _extract_xi(kxi)
    l0_xi = g["L0"] + g["P0"].scale(xi)
    ih = HbarSeries.monomial(I, 1, order)
    return {
        "H_C": g["P0"].scale(I * 2),
        "H_A": g["L0"].scale(I * 2),
        "E_C": (qm * g["P+"]).scale(2),
        "F_C": (qp * g["P-"]).scale(2),
        "E_A": (qm * (g["L+"] - (g["P+"] * l0_xi).scale(ih))).scale(2),
        "F_A": (qp * (g["L-"] + (g["P-"] * l0_xi).scale(ih))).scale(2),
    }


def _extract_xi(kxi: HopfAlgebraDef) -> ExactScalar:
    """Read xi back out of the E_A coproduct tail (coefficient of
    1 (x) E_C at the H_C (x) E_C slot divided by -hbar)."""
    alg = kxi.alg
    cop = kxi.coproducts["E_A"]
    ihc = alg.index["H_C"]
    iec = alg.index["E_C"]
    key = (Monomial(((ihc, 1),)), Monomial(((iec, 1),)))
    c = cop.terms.get(key)
    if c is None:
        return ExactScalar(0)
    # coefficient is -hbar*xi at leading order
    return -c.coeffs[1]


def t_element(rot: HopfAlgebraDef, xi) -> AlgebraElement:
    """The conjugation element q^(P0 L0 + xi P0^2 / 2)."""
    alg = rot.alg
    P0, L0 = alg.gen("P0"), alg.gen("L0")
    xi = ExactScalar.coerce(xi)
    arg = P0 * L0 + (P0 * P0).scale(xi * Fraction(1, 2))
    return exp_element(arg.scale(HbarSeries.hbar(alg.order)))


def invariant_x_kxi(kxi: HopfAlgebraDef) -> AlgebraElement:
    """The deformed momentum invariant in the contracted basis."""
    alg = kxi.alg
    cart = cartan_exp_combo(
        alg, "H_C",
        [(Fraction(1, 4), 1), (Fraction(-1, 2), 0), (Fraction(1, 4), -1)],
        hbar_shift=2,
    )
    return alg.gen("E_C") * alg.gen("F_C") + cart


def invariant_x_rot(rot: HopfAlgebraDef) -> AlgebraElement:
    """The same invariant in the rotation/momentum basis."""
    alg = rot.alg
    cart = cartan_exp_combo(
        alg, "P0",
        [(Fraction(1, 4), I * 2), (Fraction(-1, 2), 0), (Fraction(1, 4), I * (-2))],
        hbar_shift=2,
    )
    return (alg.gen("P+") * alg.gen("P-")).scale(4) + cart


def invariant_xtilde_rot(rot: HopfAlgebraDef, xi) -> AlgebraElement:
    """The deformed spin invariant in the rotation/momentum basis."""
    alg = rot.alg
    xi = ExactScalar.coerce(xi)
    g = {n: alg.gen(n) for n in alg.names}
    s2 = cartan_exp_combo(
        alg, "P0",
        [(I * Fraction(1, 2), I * 2), (-I * Fraction(1, 2), I * (-2))],
        hbar_shift=1,
    )
    cart = cartan_exp_combo(
        alg, "P0",
        [(Fraction(-1, 2), I * 2), (Fraction(1), 0), (Fraction(-1, 2), I * (-2))],
        hbar_shift=2,
    )
    return (
        (g["P+"] * g["L-"]).scale(4)
        + (g["P-"] * g["L+"]).scale(4)
        + s2 * (g["L0"] + g["P0"].scale(xi))
        + cart.scale(xi)
    )


def check_central(hopf: HopfAlgebraDef, x: AlgebraElement) -> dict:
    """Commutators of x with every generator; empty means central."""
    bad = {}
    for name in hopf.alg.names:
        g = hopf.alg.gen(name)
        diff = x * g - g * x
        if not diff.is_zero():
            bad[name] = diff
    return bad


# ---------------------------------------------------------------------------
# the Y element removing xi from the E_A/F_A commutator
# ---------------------------------------------------------------------------


def y_polynomials(order: int):
    """Coefficients Y_k(X, H) of the Y element as exact polynomials.

    Y is determined by Y + 1 = Nu / D where both Nu and D are series in
    hbar with polynomial coefficients in the invariant X and the Cartan
    generator H, and D = hbar^2 (H^2 - 4X) + higher orders.  The ratio
    is computed order by order with exact polynomial division.
    """
    X, H = sympy.symbols("X H")
    half = sympy.Rational(1, 2)
    # arsinh(sqrt(u))/sqrt(u) and sqrt(1+u) Taylor coefficients
    nmax = order // 2 + 1
    g = [
        sympy.Rational((-1) ** k * sympy.binomial(2 * k, k), 4 ** k * (2 * k + 1))
        for k in range(nmax + 1)
    ]
    sq = [sympy.binomial(half, k) for k in range(nmax + 1)]
    prod = [
        sum(g[j] * sq[k - j] for j in range(k + 1)) for k in range(nmax + 1)
    ]
    nu = {}
    dd = {}
    for k in range(0, order + 1, 2):
        # (q^H - q^-H) H / (2 hbar) -> H^(k+2)/(k+1)! at hbar^k
        nu[k] = H ** (k + 2) / sympy.factorial(k + 1) - 4 * prod[k // 2] * X ** (k // 2 + 1)
        if k == 0:
            dd[k] = H ** 2 - 4 * X
        else:
            dd[k] = 2 * H ** (k + 2) / sympy.factorial(k + 2)
    d0 = dd[0]
    yk = {0: sympy.Integer(1)}
    for k in range(2, order + 1, 2):
        acc = nu.get(k, 0)
        for j in range(2, k + 1, 2):
            if j in dd and (k - j) in yk:
                acc = acc - yk[k - j] * dd[j]
        q, r = sympy.div(sympy.expand(acc), d0, X, H)
        if sympy.simplify(r) != 0:
            raise ArithmeticError(f"division by H^2-4X not exact at order {k}")
        yk[k] = sympy.expand(q)
    yk[0] = yk[0] - 1  # Y = ratio - 1
    return {k: v for k, v in yk.items() if v != 0}


def y_element(kxi: HopfAlgebraDef) -> AlgebraElement:
    """The Y element evaluated on the invariant X and H_C."""
    alg = kxi.alg
    X, H = sympy.symbols("X H")
    x_el = invariant_x_kxi(kxi)
    h_el = alg.gen("H_C")
    out = alg.zero()
    for k, poly in y_polynomials(alg.order).items():
        p = sympy.Poly(poly, X, H)
        piece = alg.zero()
        for (ax, ah), coeff in p.terms():
            c = ExactScalar(Fraction(int(coeff.p), int(coeff.q)))
            piece = piece + ((x_el ** ax) * (h_el ** ah)).scale(c)
        out = out + piece.scale(HbarSeries.monomial(1, k, alg.order))
    return out


def y_transform_check(kxi: HopfAlgebraDef) -> dict:
    """Shift E_A, F_A by the central Y element and verify that the
    parameter drops out of their commutator.

    E'_A = E_A - xi Y E_C and F'_A = F_A - xi Y F_C must satisfy the
    parameter-free bracket [E'_A, F'_A] = H_A (q^(H_C) + q^(-H_C))/2.
    """
    alg = kxi.alg
    xi = _extract_xi(kxi)
    g = {n: alg.gen(n) for n in alg.names}
    y = y_element(kxi)
    ea = g["E_A"] - (y * g["E_C"]).scale(xi)
    fa = g["F_A"] - (y * g["F_C"]).scale(xi)
    cC = cartan_exp_combo(
        alg, "H_C", [(Fraction(1, 2), 1), (Fraction(1, 2), -1)]
    )
    resid = (ea * fa - fa * ea - g["H_A"] * cC).max_abs()
    return {
        "xi": xi,
        "residual": resid,
        "status": "pass" if resid == 0 else "fail",
    }
