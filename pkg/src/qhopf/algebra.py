"""Noncommutative algebras of PBW type over truncated hbar-series.

An algebra is described by an ordered list of generators, each with a
Z/2 parity, together with rewrite rules that replace a descending pair
of adjacent letters y*x (y later than x in the order) by a linear
combination of sorted words.  Odd generators square to a prescribed
element (often zero).  Normal-form computation repeatedly applies the
leftmost applicable rule; products of basis monomials are memoized.

Tensor powers carry the graded product with Koszul signs.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Dict, Iterable, Optional, Sequence, Tuple

from .scalars import ExactScalar, HbarSeries, ONE, ZERO, exp_scalar


class MissingRule(KeyError):
    """A descending letter pair has no rewrite rule."""


class Monomial:
    """A sorted PBW word: tuple of (letter index, exponent) pairs.

    Indices are strictly increasing and odd letters carry exponent 1.
    """

    __slots__ = ("powers",)

    def __init__(self, powers: Iterable[Tuple[int, int]] = ()):
        self.powers = tuple(powers)

    @staticmethod
    def unit() -> "Monomial":
        return Monomial(())

    def letters(self) -> Tuple[int, ...]:
        """Flatten to the underlying word of letter indices."""
        out = []
        for idx, e in self.powers:
            out.extend([idx] * e)
        return tuple(out)

    def degree(self) -> int:
        return sum(e for _, e in self.powers)

    def parity(self, parities: Sequence[int]) -> int:
        return sum(parities[i] * e for i, e in self.powers) % 2

    def __eq__(self, other):
        return isinstance(other, Monomial) and self.powers == other.powers

    def __hash__(self):
        return hash(self.powers)

    def __lt__(self, other):
        return (self.degree(), self.powers) < (other.degree(), other.powers)

    def __repr__(self):
        return "*".join(
            f"g{i}" + (f"^{e}" if e > 1 else "") for i, e in self.powers
        ) or "1"


class GradedAlgebra:
    """A PBW rewrite system at a fixed hbar truncation order."""

    def __init__(self, names: Sequence[str], parities: Sequence[int], order: int):
        if len(names) != len(parities):
            raise ValueError("names and parities must align")
        self.names = list(names)
        self.parities = list(parities)
        self.order = order
        self.index = {n: k for k, n in enumerate(names)}
        # rules[(i, j)] with i > j (or i == j odd): normal form of x_i * x_j
        self.rules: Dict[Tuple[int, int], "AlgebraElement"] = {}
        self._product_cache: Dict[Tuple[Monomial, Monomial], dict] = {}

    # -- element constructors -------------------------------------------

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, {})

    def one(self) -> "AlgebraElement":
        return AlgebraElement(self, {Monomial.unit(): HbarSeries.one(self.order)})

    def gen(self, name: str) -> "AlgebraElement":
        i = self.index[name]
        return AlgebraElement(
            self, {Monomial(((i, 1),)): HbarSeries.one(self.order)}
        )

    def monomial_element(self, mono: Monomial, coeff=None) -> "AlgebraElement":
        c = coeff if coeff is not None else HbarSeries.one(self.order)
        return AlgebraElement(self, {mono: HbarSeries.coerce(c, self.order)})

    def series(self, x) -> HbarSeries:
        return HbarSeries.coerce(x, self.order)

    # -- rule installation ------------------------------------------------

    def add_rule(self, left: str, right: str, rhs: "AlgebraElement"):
        """Install a rewrite x_left * x_right -> rhs (left after right)."""
        i, j = self.index[left], self.index[right]
        if i < j:
            raise ValueError(f"rule {left}*{right} is not descending")
        if i == j and self.parities[i] == 0:
            raise ValueError("square rules only apply to odd generators")
        for mono in rhs.terms:
            if not self._is_normal(mono.letters()):
                raise ValueError(f"rule rhs contains unsorted word {mono}")
        self.rules[(i, j)] = rhs

    def add_swap_rule(self, left: str, right: str, koszul_exponent=0, tail=None):
        """x_l * x_r -> (-1)^(p_l p_r) e^(alpha*hbar) x_r x_l + tail.

        ``koszul_exponent`` is the rational alpha in the scalar factor.
        """
        i, j = self.index[left], self.index[right]
        sign = (-1) ** (self.parities[i] * self.parities[j])
        coeff = exp_scalar(koszul_exponent, self.order) * ExactScalar(sign)
        swapped = Monomial(((j, 1), (i, 1))) if j != i else Monomial(((j, 2),))
        rhs = AlgebraElement(self, {swapped: coeff})
        if tail is not None:
            rhs = rhs + tail
        self.add_rule(left, right, rhs)

    # -- normal form ------------------------------------------------------

    def _is_normal(self, word: Tuple[int, ...]) -> bool:
        for a, b in zip(word, word[1:]):
            if a > b or (a == b and self.parities[a] == 1):
                return False
        return True

    def _word_to_monomial(self, word: Tuple[int, ...]) -> Monomial:
        powers = []
        for idx in word:
            if powers and powers[-1][0] == idx:
                powers[-1][1] += 1
            else:
                powers.append([idx, 1])
        return Monomial(tuple((i, e) for i, e in powers))

    def reduce_word(self, word: Tuple[int, ...]) -> dict:
        """Normal form of a free word as {Monomial: HbarSeries}."""
        result: Dict[Monomial, HbarSeries] = {}
        pending = [(tuple(word), HbarSeries.one(self.order))]
        while pending:
            w, c = pending.pop()
            if c.is_zero():
                continue
            k = self._first_descent(w)
            if k is None:
                mono = self._word_to_monomial(w)
                acc = result.get(mono)
                result[mono] = c if acc is None else acc + c
                continue
            key = (w[k], w[k + 1])
            rhs = self.rules.get(key)
            if rhs is None:
                raise MissingRule(
                    f"no rule for {self.names[key[0]]}*{self.names[key[1]]}"
                )
            for mono, rc in rhs.terms.items():
                nc = c * rc
                if nc.is_zero():
                    continue
                pending.append((w[:k] + mono.letters() + w[k + 2:], nc))
        return {m: c for m, c in result.items() if not c.is_zero()}

    def _first_descent(self, w: Tuple[int, ...]) -> Optional[int]:
        for k in range(len(w) - 1):
            a, b = w[k], w[k + 1]
            if a > b or (a == b and self.parities[a] == 1):
                return k
        return None

    def multiply_monomials(self, m1: Monomial, m2: Monomial) -> dict:
        key = (m1, m2)
        got = self._product_cache.get(key)
        if got is None:
            got = self.reduce_word(m1.letters() + m2.letters())
            self._product_cache[key] = got
        return got

    # -- diagnostics -------------------------------------------------------

    def check_local_confluence(self, triples=None) -> list:
        """Compare the two reduction orders on overlap words z*y*x.

        Returns a list of offending (z, y, x) name triples; empty means
        all checked overlaps resolve consistently.
        """
        bad = []
        pairs = list(self.rules)
        rule_of = self.rules
        if triples is None:
            triples = [
                (i, j, k)
                for (i, j) in pairs
                for (j2, k) in pairs
                if j2 == j
            ]
        for (i, j, k) in triples:
            word = (i, j, k)
            # path A: leftmost first (the default strategy)
            nf_a = self.reduce_word(word)
            # path B: apply the inner rule j*k first, then normalize
            nf_b: Dict[Monomial, HbarSeries] = {}
            for mono, c in rule_of[(j, k)].terms.items():
                sub = self.reduce_word((i,) + mono.letters())
                for m2, c2 in sub.items():
                    v = nf_b.get(m2, HbarSeries.zero(self.order)) + c * c2
                    nf_b[m2] = v
            nf_b = {m: c for m, c in nf_b.items() if not c.is_zero()}
            if nf_a != nf_b:
                bad.append((self.names[i], self.names[j], self.names[k]))
        return bad


class AlgebraElement:
    """A finite linear combination of PBW monomials with series coefficients."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: GradedAlgebra, terms: Dict[Monomial, HbarSeries]):
        self.algebra = algebra
        self.terms = {m: c for m, c in terms.items() if not c.is_zero()}

    # -- linear structure ---------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, AlgebraElement):
            other = self.algebra.one() * other
        out = dict(self.terms)
        for m, c in other.terms.items():
            got = out.get(m)
            out[m] = c if got is None else got + c
        return AlgebraElement(self.algebra, out)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraElement(self.algebra, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, AlgebraElement):
            other = self.algebra.one() * other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, s) -> "AlgebraElement":
        s = HbarSeries.coerce(s, self.algebra.order)
        return AlgebraElement(self.algebra, {m: c * s for m, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, AlgebraElement):
            return self.scale(other)
        alg = self.algebra
        out: Dict[Monomial, HbarSeries] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                c = c1 * c2
                if c.is_zero():
                    continue
                for m, rc in alg.multiply_monomials(m1, m2).items():
                    v = c * rc
                    got = out.get(m)
                    out[m] = v if got is None else got + v
        return AlgebraElement(alg, out)

    def __rmul__(self, other):
        # scalars commute, so only the scalar case lands here
        return self.scale(other)

    def __pow__(self, n: int):
        out = self.algebra.one()
        for _ in range(n):
            out = out * self
        return out

    # -- predicates -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            other = self.algebra.one() * other
        return (self - other).is_zero()

    def __hash__(self):
        raise TypeError("AlgebraElement is unhashable")

    def parity(self) -> int:
        """Parity of a homogeneous element (0 for the zero element)."""
        ps = {m.parity(self.algebra.parities) for m in self.terms}
        if len(ps) > 1:
            raise ValueError("element is not parity homogeneous")
        return ps.pop() if ps else 0

    def valuation(self) -> int:
        return min(
            (c.valuation() for c in self.terms.values()),
            default=self.algebra.order + 1,
        )

    def max_abs(self):
        return max((c.max_abs() for c in self.terms.values()), default=0)

    def coefficient(self, mono: Monomial) -> HbarSeries:
        return self.terms.get(mono, HbarSeries.zero(self.algebra.order))

    def map_coefficients(self, fn) -> "AlgebraElement":
        return AlgebraElement(self.algebra, {m: fn(c) for m, c in self.terms.items()})

    def __repr__(self):
        alg = self.algebra
        parts = []
        for m in sorted(self.terms, key=lambda m: (m.degree(), m.powers)):
            word = "*".join(
                alg.names[i] + (f"^{e}" if e > 1 else "") for i, e in m.powers
            ) or "1"
            parts.append(f"({self.terms[m]!r})*{word}")
        return " + ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# brackets and exponentials
# ---------------------------------------------------------------------------


def commutator(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """Graded commutator ab - (-1)^(|a||b|) ba for homogeneous a, b."""
    sign = (-1) ** (a.parity() * b.parity())
    return a * b - (b * a).scale(sign)


def q_commutator(a: AlgebraElement, b: AlgebraElement, exponent) -> AlgebraElement:
    """ab - (-1)^(|a||b|) e^(exponent*hbar) ba for homogeneous a, b."""
    order = a.algebra.order
    sign = (-1) ** (a.parity() * b.parity())
    factor = exp_scalar(exponent, order) * ExactScalar(sign)
    return a * b - (b * a).scale(factor)


def exp_element(x, one=None, max_terms: int = 400):
    """exp of a nilpotent-or-positive-valuation element (algebra or tensor)."""
    if one is None:
        one = x.algebra.one() if isinstance(x, AlgebraElement) else None
    if one is None:
        raise ValueError("need a unit to exponentiate against")
    out = one
    term = one
    for n in range(1, max_terms + 1):
        term = (term * x).scale(ExactScalar(Fraction(1, n)))
        if term.is_zero():
            return out
        out = out + term
    raise ArithmeticError("exp did not terminate; element is not topologically nilpotent")


def qexp_element(x, qfact_inverses: Sequence[HbarSeries], one=None):
    """q-exponential sum_n x^n / [n]! with precomputed inverse q-factorials.

    ``qfact_inverses[n]`` is 1/[n]! as a series; the list length bounds
    the number of terms, and the power of x must vanish by the end.
    """
    if one is None:
        one = x.algebra.one() if isinstance(x, AlgebraElement) else None
    if one is None:
        raise ValueError("need a unit to exponentiate against")
    out = one.scale(qfact_inverses[0])
    power = one
    for n in range(1, len(qfact_inverses)):
        power = power * x
        if power.is_zero():
            return out
        out = out + power.scale(qfact_inverses[n])
    if not (power * x).is_zero():
        raise ArithmeticError("q-exponential needs more terms than provided")
    return out


def q_power(gen: AlgebraElement, c) -> AlgebraElement:
    """The grouplike e^(c*hbar*X) for a generator (or any even element) X."""
    order = gen.algebra.order
    arg = gen.scale(HbarSeries.monomial(ExactScalar.coerce(c), 1, order))
    return exp_element(arg)


# ---------------------------------------------------------------------------
# graded tensor powers
# ---------------------------------------------------------------------------


class TensorElement:
    """An element of a tensor power of a GradedAlgebra, with Koszul signs."""

    __slots__ = ("algebra", "rank", "terms")

    def __init__(self, algebra: GradedAlgebra, rank: int,
                 terms: Dict[Tuple[Monomial, ...], HbarSeries]):
        self.algebra = algebra
        self.rank = rank
        self.terms = {k: c for k, c in terms.items() if not c.is_zero()}

    @staticmethod
    def unit(algebra: GradedAlgebra, rank: int) -> "TensorElement":
        key = tuple(Monomial.unit() for _ in range(rank))
        return TensorElement(algebra, rank, {key: HbarSeries.one(algebra.order)})

    @staticmethod
    def zero(algebra: GradedAlgebra, rank: int) -> "TensorElement":
        return TensorElement(algebra, rank, {})

    @staticmethod
    def of(*factors: AlgebraElement) -> "TensorElement":
        """Simple tensor a1 (x) a2 (x) ... from algebra elements."""
        alg = factors[0].algebra
        out = {(): HbarSeries.one(alg.order)}
        for f in factors:
            nxt = {}
            for key, c in out.items():
                for m, c2 in f.terms.items():
                    v = c * c2
                    if v.is_zero():
                        continue
                    k2 = key + (m,)
                    got = nxt.get(k2)
                    nxt[k2] = v if got is None else got + v
            out = nxt
        return TensorElement(alg, len(factors), out)

    # -- linear structure ----------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, TensorElement):
            other = TensorElement.unit(self.algebra, self.rank).scale(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            got = out.get(k)
            out[k] = c if got is None else got + c
        return TensorElement(self.algebra, self.rank, out)

    __radd__ = __add__

    def __neg__(self):
        return TensorElement(
            self.algebra, self.rank, {k: -c for k, c in self.terms.items()}
        )

    def __sub__(self, other):
        if not isinstance(other, TensorElement):
            other = TensorElement.unit(self.algebra, self.rank).scale(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, s) -> "TensorElement":
        s = HbarSeries.coerce(s, self.algebra.order)
        return TensorElement(
            self.algebra, self.rank, {k: c * s for k, c in self.terms.items()}
        )

    def __mul__(self, other):
        if not isinstance(other, TensorElement):
            return self.scale(other)
        if other.rank != self.rank:
            raise ValueError("tensor ranks differ")
        alg = self.algebra
        par = alg.parities
        out: Dict[Tuple[Monomial, ...], HbarSeries] = {}
        for ka, ca in self.terms.items():
            pa = [m.parity(par) for m in ka]
            for kb, cb in other.terms.items():
                pb = [m.parity(par) for m in kb]
                # move each b_i left across a_(i+1..r)
                s = sum(pb[i] * sum(pa[i + 1:]) for i in range(self.rank - 1))
                c = ca * cb * ExactScalar((-1) ** (s % 2))
                if c.is_zero():
                    continue
                # legwise products, distributing over normal forms
                partial = [((), c)]
                for i in range(self.rank):
                    prod = alg.multiply_monomials(ka[i], kb[i])
                    partial = [
                        (key + (m,), cc * mc)
                        for key, cc in partial
                        for m, mc in prod.items()
                        if not (cc * mc).is_zero()
                    ]
                for key, cc in partial:
                    got = out.get(key)
                    out[key] = cc if got is None else got + cc
        return TensorElement(alg, self.rank, out)

    def __rmul__(self, other):
        return self.scale(other)

    # -- structural maps -------------------------------------------------------

    def flip(self, i: int = 0, j: int = 1) -> "TensorElement":
        """Graded swap of legs i and j (adjacent legs)."""
        if j != i + 1:
            raise ValueError("only adjacent legs can be flipped")
        par = self.algebra.parities
        out: Dict[Tuple[Monomial, ...], HbarSeries] = {}
        for k, c in self.terms.items():
            sign = (-1) ** (k[i].parity(par) * k[j].parity(par))
            k2 = k[:i] + (k[j], k[i]) + k[j + 1:]
            v = c * ExactScalar(sign)
            got = out.get(k2)
            out[k2] = v if got is None else got + v
        return TensorElement(self.algebra, self.rank, out)

    def insert_unit_leg(self, position: int) -> "TensorElement":
        """View a rank-r tensor inside rank r+1 by inserting a unit leg."""
        out = {}
        for k, c in self.terms.items():
            out[k[:position] + (Monomial.unit(),) + k[position:]] = c
        return TensorElement(self.algebra, self.rank + 1, out)

    def apply_leg(self, leg: int, fn: Callable[[Monomial], "TensorElement"],
                  out_leg_rank: int) -> "TensorElement":
        """Apply a linear map (given on monomials) to one leg.

        ``fn`` sends a Monomial to a TensorElement of rank
        ``out_leg_rank``; the result has rank r - 1 + out_leg_rank.
        Signs do not arise because the maps we use are parity even.
        """
        alg = self.algebra
        new_rank = self.rank - 1 + out_leg_rank
        out: Dict[Tuple[Monomial, ...], HbarSeries] = {}
        for k, c in self.terms.items():
            img = fn(k[leg])
            for k2, c2 in img.terms.items():
                key = k[:leg] + k2 + k[leg + 1:]
                v = c * c2
                if v.is_zero():
                    continue
                got = out.get(key)
                out[key] = v if got is None else got + v
        return TensorElement(alg, new_rank, out)

    def leg_product(self) -> AlgebraElement:
        """Multiply all legs together inside the algebra."""
        alg = self.algebra
        out = alg.zero()
        for k, c in self.terms.items():
            acc = alg.one().scale(c)
            for m in k:
                acc = acc * alg.monomial_element(m)
            out = out + acc
        return out

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            other = TensorElement.unit(self.algebra, self.rank).scale(other)
        return (self - other).is_zero()

    def __hash__(self):
        raise TypeError("TensorElement is unhashable")

    def valuation(self) -> int:
        return min(
            (c.valuation() for c in self.terms.values()),
            default=self.algebra.order + 1,
        )

    def max_abs(self):
        return max((c.max_abs() for c in self.terms.values()), default=0)

    def __repr__(self):
        alg = self.algebra
        parts = []
        for k in sorted(self.terms, key=lambda k: tuple((m.degree(), m.powers) for m in k)):
            legs = " (x) ".join(
                "*".join(
                    alg.names[i] + (f"^{e}" if e > 1 else "") for i, e in m.powers
                ) or "1"
                for m in k
            )
            parts.append(f"({self.terms[k]!r})*[{legs}]")
        return " + ".join(parts) if parts else "0"
