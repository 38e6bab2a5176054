"""Universal R-matrices as truncated rank-2 tensor series.

Each construction multiplies exponential factors in the exact order of
the defining product.  Operator-valued functions (dilogarithm,
log(1-x)/x, geometric inverses) are expanded through scalar coefficient
tables applied to powers of a central argument whose hbar-order is at
least 2, so every stored term has hbar-order >= 1 and the series
truncate on their own.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Optional

from .algebra import (
    AlgebraElement,
    GradedAlgebra,
    Monomial,
    TensorElement,
    exp_element,
    q_power,
    qexp_element,
)
from .contraction import ContractionMap, tensor_distance
from .hopf import HopfAlgebraDef, tensor_unit_inverse
from .scalars import ExactScalar, HbarSeries, q_factorial


class NonlinearFirstOrder(ValueError):
    """The hbar^1 term of an R-matrix is not bilinear in generators."""


class RMatrixSeries:
    """An invertible tensor-square element attached to its Hopf algebra."""

    def __init__(self, hopf: HopfAlgebraDef, value: TensorElement):
        self.hopf = hopf
        self.value = value
        self.order = hopf.alg.order
        unit_key = (Monomial.unit(), Monomial.unit())
        c0 = value.terms.get(unit_key)
        if c0 is None or not (c0 - HbarSeries.one(self.order)).is_zero():
            # the constant term must be exactly the unit
            low = TensorElement(
                hopf.alg, 2,
                {k: HbarSeries([c.coeffs[0]], 0) for k, c in value.terms.items()},
            )
            if not (low - TensorElement.unit(hopf.alg, 2)).is_zero():
                raise ValueError("R-matrix must start at 1 (x) 1")
        self.inverse = tensor_unit_inverse(value)

    # -- defining properties -------------------------------------------------

    def check_quasi_cocommutativity(self) -> dict:
        """R * coproduct(g) - flipped_coproduct(g) * R per generator."""
        bad = {}
        for name, cop in self.hopf.coproducts.items():
            diff = self.value * cop - cop.flip() * self.value
            if not diff.is_zero():
                bad[name] = diff
        return bad

    def check_ybe(self) -> TensorElement:
        """R12 R13 R23 - R23 R13 R12 in the tensor cube."""
        r12 = self.value.insert_unit_leg(2)
        r13 = self.value.insert_unit_leg(1)
        r23 = self.value.insert_unit_leg(0)
        return r12 * r13 * r23 - r23 * r13 * r12

    def check_hexagons(self) -> dict:
        """(coproduct (x) id) R = R13 R23 and (id (x) coproduct) R = R13 R12."""
        cop = self.hopf.coproduct_monomial
        r13 = self.value.insert_unit_leg(1)
        bad = {}
        d1 = self.value.apply_leg(0, cop, 2) - r13 * self.value.insert_unit_leg(0)
        if not d1.is_zero():
            bad["coproduct_left"] = d1
        d2 = self.value.apply_leg(1, cop, 2) - r13 * self.value.insert_unit_leg(2)
        if not d2.is_zero():
            bad["coproduct_right"] = d2
        return bad

    def conjugate(self, x: TensorElement) -> TensorElement:
        """R^(-1) x R."""
        return self.inverse * x * self.value

    def classical_limit_extract(self) -> Dict[tuple, ExactScalar]:
        """Coefficient of hbar^1 divided by 2, as {(name, name): scalar}.

        Raises NonlinearFirstOrder unless every hbar^1 monomial is a
        single generator in each leg (or the unit).
        """
        alg = self.hopf.alg
        half = ExactScalar(Fraction(1, 2))
        out: Dict[tuple, ExactScalar] = {}
        for (ma, mb), c in self.value.terms.items():
            if len(c.coeffs) < 2 or c.coeffs[1].is_zero():
                continue
            names = []
            for m in (ma, mb):
                if m.degree() == 0:
                    names.append("1")
                elif m.degree() == 1:
                    names.append(alg.names[m.powers[0][0]])
                else:
                    raise NonlinearFirstOrder(f"term {ma} (x) {mb} at order 1")
            out[tuple(names)] = c.coeffs[1] * half
        return out


# ---------------------------------------------------------------------------
# scalar coefficient tables applied to central tensor arguments
# ---------------------------------------------------------------------------


def _series_of_argument(u: TensorElement, coeff_of_power, order: int,
                        arg_hbar_order: int = 2) -> TensorElement:
    """sum_n coeff_of_power(n) * u^n where coeff_of_power(n) is an exact
    hbar-monomial series; summation stops once the hbar orders exceed N."""
    alg = u.algebra
    out = TensorElement.zero(alg, 2)
    power = TensorElement.unit(alg, 2)
    n = 0
    while True:
        n += 1
        power = power * u
        if power.is_zero():
            break
        c = coeff_of_power(n)
        if c is None:
            break
        out = out + power.scale(c)
    return out


def dilog_factor_exponent(u: TensorElement, xi, order: int) -> TensorElement:
    """-(xi/2hbar) Li2(4 hbar^2 u) - (xi/hbar) log(1 - 4 hbar^2 u).

    The n-th power of u carries hbar^(2n-1), so the sum is finite.
    """
    xi = ExactScalar.coerce(xi)

    def coeff(n):
        k = 2 * n - 1
        if k > order:
            return None
        c = -xi * ExactScalar(Fraction(4 ** n, 2 * n * n)) \
            + xi * ExactScalar(Fraction(4 ** n, n))
        return HbarSeries.monomial(c, k, order)

    return _series_of_argument(u, coeff, order)


def half_log_ratio_over_hbar(u: TensorElement, order: int) -> TensorElement:
    """-(1/2 hbar) log(1 - 4 hbar^2 u) / u
    = sum_n (4^n / 2n) hbar^(2n-1) u^(n-1), a polynomial in u starting
    at 2 hbar.  Built directly from hbar-monomials so no division by
    hbar (which would lose the top truncation order) is needed."""
    alg = u.algebra
    out = TensorElement.zero(alg, 2)
    power = TensorElement.unit(alg, 2)
    n = 0
    while True:
        n += 1
        k = 2 * n - 1
        if k > order:
            break
        c = HbarSeries.monomial(ExactScalar(Fraction(4 ** n, 2 * n)), k, order)
        out = out + power.scale(c)
        power = power * u
        if power.is_zero():
            break
    return out


def log_geometric(u: TensorElement, order: int, sign: int = -1) -> TensorElement:
    """(sign/hbar) log(1 - 4 hbar^2 u): hbar-order 2n-1 at u^n."""

    def coeff(n):
        k = 2 * n - 1
        if k > order:
            return None
        return HbarSeries.monomial(
            ExactScalar(Fraction(-sign * 4 ** n, n)), k, order
        )

    return _series_of_argument(u, coeff, order)


def geometric_inverse(u: TensorElement, order: int) -> TensorElement:
    """(1 - 4 hbar^2 u)^(-1) = sum_n 4^n hbar^(2n) u^n."""
    alg = u.algebra
    out = TensorElement.unit(alg, 2)
    power = TensorElement.unit(alg, 2)
    n = 0
    while True:
        n += 1
        k = 2 * n
        if k > order:
            break
        power = power * u
        if power.is_zero():
            break
        out = out + power.scale(HbarSeries.monomial(4 ** n, k, order))
    return out


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------


def _qfact_inverses(alpha, order: int):
    return [q_factorial(n, alpha, order).inverse() for n in range(order + 2)]


def rmat_uq_sl2(hopf: HopfAlgebraDef, alpha,
                names=("E", "F", "H")) -> RMatrixSeries:
    """qexp_(-2 alpha hbar)[(q^alpha - q^(-alpha)) E (x) F]
    times exp[(alpha hbar / 2) H (x) H]."""
    alg = hopf.alg
    order = alg.order
    a = ExactScalar.coerce(alpha)
    e, f, h = (alg.gen(n) for n in names)
    from .hopf import two_sinh_over_hbar

    # (q^alpha - q^(-alpha)) = hbar * two_sinh_over_hbar(alpha)
    coeff = HbarSeries.monomial(1, 1, order) * two_sinh_over_hbar(a, order)
    arg = TensorElement.of(e, f).scale(coeff)
    one2 = TensorElement.unit(alg, 2)
    factor1 = qexp_element(arg, _qfact_inverses(a * (-2), order), one=one2)
    cart = TensorElement.of(h, h).scale(
        HbarSeries.monomial(a * Fraction(1, 2), 1, order)
    )
    return RMatrixSeries(hopf, factor1 * exp_element(cart, one=one2))


def rmat_k_xi(kxi: HopfAlgebraDef, xi) -> RMatrixSeries:
    """The contracted R-matrix: dilog factor, mixed-log factor, Cartan factor."""
    alg = kxi.alg
    order = alg.order
    xi = ExactScalar.coerce(xi)
    g = {n: alg.gen(n) for n in alg.names}
    one2 = TensorElement.unit(alg, 2)
    u = TensorElement.of(g["E_C"], g["F_C"])

    f1 = exp_element(dilog_factor_exponent(u, xi, order), one=one2)

    mixed = TensorElement.of(g["E_C"], g["F_A"]) + TensorElement.of(g["E_A"], g["F_C"])
    f2 = exp_element(mixed * half_log_ratio_over_hbar(u, order), one=one2)

    cart = (
        TensorElement.of(g["H_C"], g["H_A"])
        + TensorElement.of(g["H_A"], g["H_C"])
        + TensorElement.of(g["H_C"], g["H_C"]).scale(xi)
    ).scale(HbarSeries.monomial(Fraction(1, 2), 1, order))
    f3 = exp_element(cart, one=one2)
    return RMatrixSeries(kxi, f1 * f2 * f3)


def rmat_rot(rot: HopfAlgebraDef, xi) -> RMatrixSeries:
    """The R-matrix in the rotation/momentum basis, with the first two
    factors conjugated by T (x) T."""
    from .algebras import t_element
    from .hopf import element_unit_inverse

    alg = rot.alg
    order = alg.order
    xi = ExactScalar.coerce(xi)
    g = {n: alg.gen(n) for n in alg.names}
    one2 = TensorElement.unit(alg, 2)
    # 16 hbar^2 P+ (x) P- = 4 hbar^2 u with u = 4 P+ (x) P-
    u = TensorElement.of(g["P+"], g["P-"]).scale(4)

    f1 = exp_element(dilog_factor_exponent(u, xi, order), one=one2)
    mixed = TensorElement.of(g["P+"], g["L-"]) + TensorElement.of(g["L+"], g["P-"])
    f2 = exp_element((mixed * half_log_ratio_over_hbar(u, order)).scale(4),
                     one=one2)

    T = t_element(rot, xi)
    t2 = TensorElement.of(T, T)
    t2inv = tensor_unit_inverse(t2)
    f1 = t2 * f1 * t2inv
    f2 = t2 * f2 * t2inv

    cart = (
        TensorElement.of(g["P0"], g["L0"])
        + TensorElement.of(g["L0"], g["P0"])
        + TensorElement.of(g["P0"], g["P0"]).scale(xi)
    ).scale(HbarSeries.monomial(-2, 1, order))
    f3 = exp_element(cart, one=one2)
    return RMatrixSeries(rot, f1 * f2 * f3)


def rmat_d21e(hopf: HopfAlgebraDef) -> RMatrixSeries:
    """Ordered product of exponential factors for the 17-letter graded
    algebra: five nilpotent odd factors, three q-exponentials for the
    even pairs, and the Cartan exponent."""
    from .hopf import two_sinh_over_hbar

    alg = hopf.alg
    order = alg.order
    s1, s2, s3 = hopf.meta["s"]
    g = {n: alg.gen(n) for n in alg.names}
    one2 = TensorElement.unit(alg, 2)
    h = HbarSeries.hbar(order)
    cq = h * two_sinh_over_hbar(1, order)       # q - q^-1 = -(q_2 - q_2^-1)

    def odd_factor(e, f):
        return exp_element(TensorElement.of(g[e], g[f]).scale(cq), one=one2)

    def even_factor(e, f, si):
        arg = TensorElement.of(g[e], g[f]).scale(
            h * two_sinh_over_hbar(si, order))
        return qexp_element(arg, _qfact_inverses(-2 * si, order), one=one2)

    out = odd_factor("E_2", "F_2")
    out = out * odd_factor("E_12", "F_21")
    out = out * even_factor("E_B", "F_B", s2)
    out = out * odd_factor("E_32", "F_23")
    out = out * odd_factor("E_132", "F_213")
    out = out * even_factor("E_1", "F_1", s1)
    out = out * even_factor("E_3", "F_3", s3)
    kb = g["H_1"].scale(s1) - g["H_2"].scale(2) + g["H_3"].scale(s3)
    cart = (
        TensorElement.of(g["H_1"], g["H_1"]).scale(s1)
        + TensorElement.of(g["H_3"], g["H_3"]).scale(s3)
        + TensorElement.of(kb, kb).scale(ExactScalar.coerce(s2).inverse())
    ).scale(HbarSeries.monomial(Fraction(1, 2), 1, order))
    return RMatrixSeries(hopf, out * exp_element(cart, one=one2))


def rmat_max_ext(hopf: HopfAlgebraDef) -> RMatrixSeries:
    """The contracted graded R-matrix: odd factors, the central
    dilog/log factors of the six-generator construction, q-exponentials
    for E_1, E_3, and the Cartan exponent with the H_C alias."""
    from .hopf import two_sinh_over_hbar

    alg = hopf.alg
    order = alg.order
    xi = ExactScalar.coerce(hopf.meta["xi"])
    g = {n: alg.gen(n) for n in alg.names}
    one2 = TensorElement.unit(alg, 2)
    h = HbarSeries.hbar(order)
    cq = h * two_sinh_over_hbar(1, order)

    def odd_factor(e, f):
        return exp_element(TensorElement.of(g[e], g[f]).scale(cq), one=one2)

    u = TensorElement.of(g["E_C"], g["F_C"])
    out = odd_factor("E_2", "F_2")
    out = out * odd_factor("E_12", "F_21")
    out = out * exp_element(dilog_factor_exponent(u, xi, order), one=one2)
    mixed = TensorElement.of(g["E_C"], g["F_A"]) \
        + TensorElement.of(g["E_A"], g["F_C"])
    out = out * exp_element(mixed * half_log_ratio_over_hbar(u, order),
                            one=one2)
    out = out * odd_factor("E_32", "F_23")
    out = out * odd_factor("E_132", "F_213")
    out = out * qexp_element(TensorElement.of(g["E_1"], g["F_1"]).scale(cq),
                             _qfact_inverses(-2, order), one=one2)
    out = out * qexp_element(TensorElement.of(g["E_3"], g["F_3"]).scale(-cq),
                             _qfact_inverses(2, order), one=one2)
    hc = g["H_1"] - g["H_2"].scale(2) - g["H_3"]
    cart = (
        TensorElement.of(g["H_1"], g["H_1"])
        - TensorElement.of(g["H_3"], g["H_3"])
        + TensorElement.of(hc, g["H_A"])
        + TensorElement.of(g["H_A"], hc)
        + TensorElement.of(hc, hc).scale(xi)
    ).scale(HbarSeries.monomial(Fraction(1, 2), 1, order))
    return RMatrixSeries(hopf, out * exp_element(cart, one=one2))


def rmat_product_prelimit(cm: ContractionMap, pairing: str = "standard") -> RMatrixSeries:
    """Product of the two copy R-matrices in the pre-limit A/C basis.

    ``pairing="wrong"`` replaces the second factor by its
    inverse-opposite, which does not converge in the contraction and
    shows up as a 1/epsilon coefficient.
    """
    from .hopf import two_sinh_over_hbar

    hopf = cm.prelimit
    alg = hopf.alg
    order = alg.order
    eps = ExactScalar(cm.epsilon)
    teps = ExactScalar(cm.tilde_epsilon)
    inv_eps = eps.inverse()
    g = {n: alg.gen(n) for n in alg.names}
    one2 = TensorElement.unit(alg, 2)

    e1, f1c, h1 = (
        g["E_C"].scale(inv_eps),
        g["F_C"].scale(inv_eps),
        g["H_C"].scale(inv_eps),
    )
    e2, f2c, h2 = g["E_A"] - e1, g["F_A"] - f1c, g["H_A"] - h1

    def copy_rmat(e, f, h, a):
        coeff = HbarSeries.monomial(1, 1, order) * two_sinh_over_hbar(a, order)
        arg = TensorElement.of(e, f).scale(coeff)
        qx = qexp_element(arg, _qfact_inverses(a * (-2), order), one=one2)
        cart = TensorElement.of(h, h).scale(
            HbarSeries.monomial(a * Fraction(1, 2), 1, order)
        )
        return qx * exp_element(cart, one=one2)

    r1 = copy_rmat(e1, f1c, h1, eps)
    r2 = copy_rmat(e2, f2c, h2, teps)
    if pairing == "wrong":
        r2 = tensor_unit_inverse(r2).flip()
    elif pairing != "standard":
        raise ValueError("pairing must be 'standard' or 'wrong'")
    return RMatrixSeries(hopf, r1 * r2)


def prelimit_rmat_residual(cm: ContractionMap, pairing: str = "standard",
                           hbar_order: Optional[int] = None):
    """Max coefficient distance between the pre-limit product R-matrix
    and the limit R-matrix, exact.

    With ``hbar_order`` set, only the coefficient of that power of hbar
    contributes; the wrong pairing diverges at every odd order, so the
    lowest one (hbar^1, growing as 1/epsilon) gives the cleanest rate.
    """
    r_pre = rmat_product_prelimit(cm, pairing=pairing).value
    r_lim = rmat_k_xi(cm.target, cm.xi).value
    if hbar_order is not None:
        r_pre = _single_order(r_pre, hbar_order)
        r_lim = _single_order(r_lim, hbar_order)
    return tensor_distance(r_pre, r_lim)


def _single_order(t: TensorElement, k: int) -> TensorElement:
    terms = {}
    for key, c in t.terms.items():
        if len(c.coeffs) > k and not c.coeffs[k].is_zero():
            terms[key] = HbarSeries.monomial(c.coeffs[k], k, t.algebra.order)
    return TensorElement(t.algebra, t.rank, terms)


# ---------------------------------------------------------------------------
# momentum-sector conjugation identities
# ---------------------------------------------------------------------------


def check_momentum_conjugation(kxi: HopfAlgebraDef, R: RMatrixSeries) -> dict:
    """The six conjugation identities for the commuting momentum sector."""
    alg = kxi.alg
    order = alg.order
    g = {n: alg.gen(n) for n in alg.names}
    one = alg.one()
    qm = q_power(g["H_C"], -1)
    qp = q_power(g["H_C"], 1)
    # central argument v = q^(H_C) E_C (x) q^(-H_C) F_C
    v = TensorElement.of(qp * g["E_C"], qm * g["F_C"])
    logv = log_geometric(v, order, sign=-1)   # -(1/hbar) log(1 - 4h^2 v)
    geo = geometric_inverse(v, order)

    expected = {
        "E_C (x) 1": (
            TensorElement.of(g["E_C"], one),
            TensorElement.of(g["E_C"], qm),
        ),
        "1 (x) F_C": (
            TensorElement.of(one, g["F_C"]),
            TensorElement.of(qp, g["F_C"]),
        ),
        "H_C (x) 1": (
            TensorElement.of(g["H_C"], one),
            TensorElement.of(g["H_C"], one) + logv,
        ),
        "1 (x) H_C": (
            TensorElement.of(one, g["H_C"]),
            TensorElement.of(one, g["H_C"]) - logv,
        ),
        "F_C (x) 1": (
            TensorElement.of(g["F_C"], one),
            TensorElement.of(g["F_C"], qp)
            + TensorElement.of(one, g["F_C"])
            - TensorElement.of(qp * qp, g["F_C"]) * geo,
        ),
        "1 (x) E_C": (
            TensorElement.of(one, g["E_C"]),
            TensorElement.of(qm, g["E_C"])
            + TensorElement.of(g["E_C"], one)
            - TensorElement.of(g["E_C"], qm * qm) * geo,
        ),
        "E_C (x) F_C": (
            TensorElement.of(g["E_C"], g["F_C"]),
            v,
        ),
    }
    bad = {}
    for label, (lhs, rhs) in expected.items():
        diff = R.conjugate(lhs) - rhs
        if not diff.is_zero():
            bad[label] = diff
    return bad


# ---------------------------------------------------------------------------
# structured reports
# ---------------------------------------------------------------------------


def residual_report(check: str, algebra: str, order: int, xi, residual) -> dict:
    """JSON-ready verification record for a residual element/tensor."""
    if hasattr(residual, "is_zero"):
        ok = residual.is_zero()
        ffo = None if ok else residual.valuation()
        count = 0 if ok else sum(
            1 for c in residual.terms.values() for x in c.coeffs if not x.is_zero()
        )
    else:
        ok = not residual
        ffo = None
        count = len(residual) if residual else 0
    return {
        "check": check,
        "algebra": algebra,
        "order": order,
        "xi": str(xi),
        "status": "pass" if ok else "fail",
        "first_failing_order": ffo,
        "failing_term_count": count,
    }
