"""Hopf-algebra structure on top of the PBW rewriting engine.

A HopfAlgebraDef couples a GradedAlgebra with coproducts and counits on
generators, extends them homomorphically, derives antipodes, and checks
the axioms order by order in hbar.  Nothing is assumed: every axiom is
an executable test returning the exact residual.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Optional

from .algebra import AlgebraElement, GradedAlgebra, Monomial, TensorElement
from .scalars import ExactScalar, HbarSeries, ONE, ZERO


def element_unit_inverse(u: AlgebraElement) -> AlgebraElement:
    """Inverse of u = c*1 + R with c an invertible series and R of
    positive hbar valuation (Neumann series)."""
    alg = u.algebra
    c = u.coefficient(Monomial.unit())
    if c.constant_term().is_zero():
        raise ArithmeticError("element has no invertible unit part")
    cinv = c.inverse()
    rest = (u - alg.one().scale(c)).scale(cinv)
    if rest.valuation() < 1:
        raise ArithmeticError("non-unit part must have positive hbar valuation")
    # Neumann series: (1 + rest)^(-1) = sum (-rest)^n
    out = alg.one()
    power = alg.one()
    for _ in range(alg.order + 1):
        power = (power * rest).scale(ExactScalar(-1))
        if power.is_zero():
            break
        out = out + power
    return out.scale(cinv)


def cartan_exp_combo(alg: GradedAlgebra, name: str, combo, hbar_shift: int = 0,
                     extra=None) -> AlgebraElement:
    """Exact combination sum_j c_j * q^(a_j * X) / hbar^shift for a Cartan
    generator X.

    ``combo`` is a list of (c_j, a_j) with exact scalar entries.  The
    coefficient of X^k is (sum_j c_j a_j^k / k!) * hbar^(k - shift), an
    exact monomial, so no truncation error is incurred by the division.
    The combination must vanish at every k < shift.
    """
    order = alg.order
    idx = alg.index[name]
    combo = [(ExactScalar.coerce(c), ExactScalar.coerce(a)) for c, a in combo]
    terms: Dict[Monomial, HbarSeries] = {}
    kfact = ExactScalar(1)
    powers = [ExactScalar(1) for _ in combo]
    for k in range(0, order + hbar_shift + 1):
        if k:
            kfact = kfact * ExactScalar(Fraction(1, k))
            powers = [p * a for p, (_, a) in zip(powers, combo)]
        s = ZERO
        for p, (c, _) in zip(powers, combo):
            s = s + c * p
        s = s * kfact
        if k < hbar_shift:
            if not s.is_zero():
                raise ArithmeticError(
                    f"combination does not vanish at order {k} < shift"
                )
            continue
        if s.is_zero() or k - hbar_shift > order:
            continue
        mono = Monomial(((idx, k),)) if k else Monomial.unit()
        terms[mono] = HbarSeries.monomial(s, k - hbar_shift, order)
    out = AlgebraElement(alg, terms)
    if extra is not None:
        out = out + extra
    return out


def cartan_exp_multi(alg: GradedAlgebra, names, combo, hbar_shift: int = 0) -> AlgebraElement:
    """Exact sum_j c_j q^(sum_i a_ji X_i) / hbar^shift for commuting
    Cartan generators X_i.

    ``combo`` is a list of (c_j, (a_j1, a_j2, ...)).  The coefficient of
    X_1^k1 ... X_r^kr is (sum_j c_j prod_i a_ji^ki / prod ki!) times the
    exact monomial hbar^(k1+...+kr-shift); the combination must vanish
    whenever the total degree is below the shift.
    """
    import itertools

    order = alg.order
    idxs = [alg.index[n] for n in names]
    if idxs != sorted(idxs):
        raise ValueError("pass Cartan names in sort order")
    combo = [
        (ExactScalar.coerce(c), [ExactScalar.coerce(a) for a in avec])
        for c, avec in combo
    ]
    terms: Dict[Monomial, HbarSeries] = {}
    maxdeg = order + hbar_shift
    r = len(idxs)
    for ks in itertools.product(range(maxdeg + 1), repeat=r):
        total = sum(ks)
        if total > maxdeg:
            continue
        fact = Fraction(1)
        for k in ks:
            for m in range(2, k + 1):
                fact /= m
        s = ZERO
        for c, avec in combo:
            p = c
            for a, k in zip(avec, ks):
                for _ in range(k):
                    p = p * a
            s = s + p
        s = s * ExactScalar(fact)
        if total < hbar_shift:
            if not s.is_zero():
                raise ArithmeticError(
                    f"combination does not vanish at degree {total} < shift"
                )
            continue
        if s.is_zero():
            continue
        powers = tuple((i, k) for i, k in zip(idxs, ks) if k)
        mono = Monomial(powers)
        terms[mono] = HbarSeries.monomial(s, total - hbar_shift, order)
    return AlgebraElement(alg, terms)


def two_sinh_over_hbar(a, order: int) -> HbarSeries:
    """(q^a - q^(-a))/hbar as an exact unit series (constant term 2a)."""
    av = ExactScalar.coerce(a)
    coeffs = []
    kfact = ExactScalar(1)
    p = ExactScalar(1)
    for k in range(1, order + 2):
        kfact = kfact * ExactScalar(Fraction(1, k))
        p = p * av
        coeffs.append((p - (-1) ** k * p) * kfact)
    return HbarSeries(coeffs, order)


class HopfAlgebraDef:
    """Algebra plus coproduct/counit/antipode data on generators."""

    def __init__(self, alg: GradedAlgebra,
                 coproducts: Dict[str, TensorElement],
                 counits: Dict[str, ExactScalar],
                 antipodes: Optional[Dict[str, AlgebraElement]] = None):
        self.alg = alg
        self.coproducts = coproducts
        self.counits = {k: ExactScalar.coerce(v) for k, v in counits.items()}
        self.antipodes = antipodes
        self._cop_cache: Dict[Monomial, TensorElement] = {}
        self._anti_cache: Dict[Monomial, AlgebraElement] = {}

    # -- structure maps, extended to the whole algebra ----------------------

    def coproduct_monomial(self, mono: Monomial) -> TensorElement:
        got = self._cop_cache.get(mono)
        if got is not None:
            return got
        out = TensorElement.unit(self.alg, 2)
        for idx in mono.letters():
            out = out * self.coproducts[self.alg.names[idx]]
        self._cop_cache[mono] = out
        return out

    def coproduct(self, x: AlgebraElement) -> TensorElement:
        out = TensorElement.zero(self.alg, 2)
        for mono, c in x.terms.items():
            out = out + self.coproduct_monomial(mono).scale(c)
        return out

    def coproduct_op(self, x: AlgebraElement) -> TensorElement:
        return self.coproduct(x).flip()

    def counit(self, x: AlgebraElement) -> HbarSeries:
        out = HbarSeries.zero(self.alg.order)
        for mono, c in x.terms.items():
            f = ONE
            for idx in mono.letters():
                f = f * self.counits[self.alg.names[idx]]
                if f.is_zero():
                    break
            if not f.is_zero():
                out = out + c * f
        return out

    def antipode(self, x: AlgebraElement) -> AlgebraElement:
        if self.antipodes is None:
            raise RuntimeError("antipodes not derived yet")
        out = self.alg.zero()
        for mono, c in x.terms.items():
            out = out + self._antipode_monomial(mono).scale(c)
        return out

    def _antipode_monomial(self, mono: Monomial) -> AlgebraElement:
        got = self._anti_cache.get(mono)
        if got is not None:
            return got
        letters = mono.letters()
        pars = [self.alg.parities[i] for i in letters]
        # anti-homomorphism with Koszul sign from reversing the word
        s = 0
        for i in range(len(pars)):
            for j in range(i + 1, len(pars)):
                s += pars[i] * pars[j]
        out = self.alg.one().scale(ExactScalar((-1) ** (s % 2)))
        for idx in reversed(letters):
            out = out * self.antipodes[self.alg.names[idx]]
        self._anti_cache[mono] = out
        return out

    # -- antipode derivation ----------------------------------------------

    def derive_antipodes(self):
        """Solve m(S (x) id) coproduct = unit*counit generator by generator.

        For each generator g the coproduct contains exactly one term
        whose left leg is the bare letter g; its right leg U is
        invertible.  Terms whose left legs use only already-solved
        letters move to the right-hand side, and unsolvable generators
        are retried until a full pass makes no progress.
        """
        alg = self.alg
        solved: Dict[str, AlgebraElement] = {}
        pending = list(alg.names)
        while pending:
            progress = False
            for name in list(pending):
                gi = alg.index[name]
                gmono = Monomial(((gi, 1),))
                cop = self.coproducts[name]
                u = alg.zero()
                others = []
                ok = True
                for (ma, mb), c in cop.terms.items():
                    if ma == gmono:
                        u = u + alg.monomial_element(mb, c)
                        continue
                    if any(alg.names[i] not in solved for i in ma.letters()):
                        ok = False
                        break
                    others.append((ma, mb, c))
                if not ok:
                    continue
                rhs = alg.one().scale(self.counits[name])
                for ma, mb, c in others:
                    sa = self._apply_partial_antipode(ma, solved)
                    rhs = rhs - (sa * alg.monomial_element(mb)).scale(c)
                solved[name] = rhs * element_unit_inverse(u)
                pending.remove(name)
                progress = True
            if not progress:
                raise ArithmeticError(
                    f"antipode recursion is stuck on {pending}"
                )
        self.antipodes = solved
        self._anti_cache = {}
        return solved

    def _apply_partial_antipode(self, mono: Monomial, solved) -> AlgebraElement:
        letters = mono.letters()
        pars = [self.alg.parities[i] for i in letters]
        s = 0
        for i in range(len(pars)):
            for j in range(i + 1, len(pars)):
                s += pars[i] * pars[j]
        out = self.alg.one().scale(ExactScalar((-1) ** (s % 2)))
        for idx in reversed(letters):
            out = out * solved[self.alg.names[idx]]
        return out

    # -- axiom checks (return residuals, empty dict means pass) --------------

    def check_coproduct_homomorphism(self) -> dict:
        """coproduct(x*y) - coproduct(x)*coproduct(y) on every rewrite rule."""
        bad = {}
        alg = self.alg
        for (i, j), rhs in alg.rules.items():
            lhs = self.coproducts[alg.names[i]] * self.coproducts[alg.names[j]]
            diff = lhs - self.coproduct(rhs)
            if not diff.is_zero():
                bad[(alg.names[i], alg.names[j])] = diff
        return bad

    def check_coassociativity(self) -> dict:
        bad = {}
        for name, cop in self.coproducts.items():
            left = cop.apply_leg(0, self.coproduct_monomial, 2)
            right = cop.apply_leg(1, self.coproduct_monomial, 2)
            diff = left - right
            if not diff.is_zero():
                bad[name] = diff
        return bad

    def check_counit(self) -> dict:
        bad = {}
        alg = self.alg
        for name, cop in self.coproducts.items():
            g = alg.gen(name)
            left = alg.zero()
            right = alg.zero()
            for (ma, mb), c in cop.terms.items():
                left = left + alg.monomial_element(mb).scale(
                    c * self.counit(alg.monomial_element(ma))
                )
                right = right + alg.monomial_element(ma).scale(
                    c * self.counit(alg.monomial_element(mb))
                )
            if not (left - g).is_zero() or not (right - g).is_zero():
                bad[name] = (left - g, right - g)
        return bad

    def check_antipode(self) -> dict:
        bad = {}
        alg = self.alg
        for name, cop in self.coproducts.items():
            target = alg.one().scale(self.counits[name])
            left = alg.zero()
            right = alg.zero()
            for (ma, mb), c in cop.terms.items():
                left = left + (
                    self._antipode_monomial(ma) * alg.monomial_element(mb)
                ).scale(c)
                right = right + (
                    alg.monomial_element(ma) * self._antipode_monomial(mb)
                ).scale(c)
            if not (left - target).is_zero() or not (right - target).is_zero():
                bad[name] = (left - target, right - target)
        return bad

    def check_all_axioms(self) -> dict:
        """Run the full axiom battery; maps check name to failure dict."""
        if self.antipodes is None:
            self.derive_antipodes()
        out = {}
        for label, fn in (
            ("coproduct_homomorphism", self.check_coproduct_homomorphism),
            ("coassociativity", self.check_coassociativity),
            ("counit", self.check_counit),
            ("antipode", self.check_antipode),
        ):
            got = fn()
            if got:
                out[label] = got
        return out


# ---------------------------------------------------------------------------
# homomorphisms between presentations
# ---------------------------------------------------------------------------


def apply_hom(gen_map: Dict[str, AlgebraElement], x: AlgebraElement,
              dst: GradedAlgebra) -> AlgebraElement:
    """Extend a generator assignment to an algebra map on x."""
    out = dst.zero()
    for mono, c in x.terms.items():
        acc = dst.one()
        for idx in mono.letters():
            acc = acc * gen_map[x.algebra.names[idx]]
        out = out + acc.scale(c)
    return out


def apply_hom_tensor(gen_map: Dict[str, AlgebraElement], t: TensorElement,
                     dst: GradedAlgebra) -> TensorElement:
    src = t.algebra
    out = TensorElement.zero(dst, t.rank)
    for key, c in t.terms.items():
        acc = TensorElement.unit(dst, t.rank)
        for leg, mono in enumerate(key):
            img = apply_hom(gen_map, src.monomial_element(mono), dst)
            legfuls = [dst.one()] * t.rank
            legfuls[leg] = img
            acc = acc * TensorElement.of(*legfuls)
        out = out + acc.scale(c)
    return out


def check_hopf_morphism(src: HopfAlgebraDef, dst: HopfAlgebraDef,
                        gen_map: Dict[str, AlgebraElement]) -> dict:
    """Residuals of the algebra and coalgebra morphism conditions.

    Checks every rewrite rule of the source under the map, and the
    intertwining of the coproducts on generators.
    """
    bad = {}
    salg, dalg = src.alg, dst.alg
    for (i, j), rhs in salg.rules.items():
        li, lj = salg.names[i], salg.names[j]
        diff = gen_map[li] * gen_map[lj] - apply_hom(gen_map, rhs, dalg)
        if not diff.is_zero():
            bad[("rule", li, lj)] = diff
    for name, cop in src.coproducts.items():
        diff = dst.coproduct(gen_map[name]) - apply_hom_tensor(gen_map, cop, dalg)
        if not diff.is_zero():
            bad[("coproduct", name)] = diff
    return bad


def conjugate(t: AlgebraElement, x: AlgebraElement) -> AlgebraElement:
    """t x t^(-1) for invertible t (unit part plus positive valuation)."""
    return t * x * element_unit_inverse(t)


def conjugate_tensor(t2: TensorElement, x: TensorElement) -> TensorElement:
    """t2 x t2^(-1) in the tensor square."""
    return t2 * x * tensor_unit_inverse(t2)


def tensor_unit_inverse(u: TensorElement) -> TensorElement:
    alg = u.algebra
    unit_key = tuple(Monomial.unit() for _ in range(u.rank))
    c = u.terms.get(unit_key, HbarSeries.zero(alg.order))
    if c.constant_term().is_zero():
        raise ArithmeticError("tensor has no invertible unit part")
    cinv = c.inverse()
    one = TensorElement.unit(alg, u.rank)
    rest = (u - one.scale(c)).scale(cinv)
    if rest.valuation() < 1:
        raise ArithmeticError("non-unit part must have positive hbar valuation")
    out = one
    power = one
    for _ in range(alg.order + 1):
        power = (power * rest).scale(ExactScalar(-1))
        if power.is_zero():
            break
        out = out + power
    return out.scale(cinv)
