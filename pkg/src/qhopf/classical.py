"""Classical r-matrices for inhomogeneous rotation algebras.

Everything here lives at hbar = 0: a Lie algebra with exact structure
constants, small tensor powers of it, the three-term Yang-Baxter
bracket, and the cobracket extracted from the first order of a deformed
coproduct.
"""

from fractions import Fraction
from itertools import permutations
from typing import Dict, Tuple

from .scalars import ExactScalar

I = ExactScalar.i()


class LieAlgebra:
    """Finite-dimensional Lie algebra with scalar structure constants."""

    def __init__(self, names):
        self.names = list(names)
        self.index = {n: k for k, n in enumerate(self.names)}
        # brackets[(i, j)] with i < j maps index -> coefficient
        self.brackets: Dict[Tuple[int, int], Dict[int, ExactScalar]] = {}

    def set_bracket(self, a: str, b: str, value: Dict[str, object]):
        i, j = self.index[a], self.index[b]
        if i == j:
            raise ValueError("bracket of a generator with itself")
        vec = {self.index[n]: ExactScalar.coerce(c) for n, c in value.items()}
        vec = {k: c for k, c in vec.items() if not c.is_zero()}
        if i < j:
            self.brackets[(i, j)] = vec
        else:
            self.brackets[(j, i)] = {k: -c for k, c in vec.items()}

    def bracket_basis(self, i: int, j: int) -> Dict[int, ExactScalar]:
        if i == j:
            return {}
        if i < j:
            return self.brackets.get((i, j), {})
        return {k: -c for k, c in self.brackets.get((j, i), {}).items()}

    def check_jacobi(self):
        """All Jacobi identities; returns the violating triples."""
        n = len(self.names)
        bad = []
        for a in range(n):
            for b in range(a + 1, n):
                for c in range(b + 1, n):
                    acc: Dict[int, ExactScalar] = {}
                    for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
                        for k, s in self.bracket_basis(x, y).items():
                            for m, t in self.bracket_basis(k, z).items():
                                acc[m] = acc.get(m, ExactScalar(0)) + s * t
                    if any(not v.is_zero() for v in acc.values()):
                        bad.append((self.names[a], self.names[b], self.names[c]))
        return bad


class Tensor:
    """Element of a tensor power of a Lie algebra, with exact coefficients."""

    def __init__(self, lie: LieAlgebra, rank: int, terms=None):
        self.lie = lie
        self.rank = rank
        self.terms: Dict[tuple, ExactScalar] = {}
        for k, c in (terms or {}).items():
            c = ExactScalar.coerce(c)
            if not c.is_zero():
                self.terms[k] = c

    @staticmethod
    def zero(lie: LieAlgebra, rank: int) -> "Tensor":
        return Tensor(lie, rank)

    @staticmethod
    def vector(lie: LieAlgebra, combo: Dict[str, object]) -> "Tensor":
        return Tensor(lie, 1, {(lie.index[n],): c for n, c in combo.items()})

    def __add__(self, other: "Tensor") -> "Tensor":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, ExactScalar(0)) + c
        return Tensor(self.lie, self.rank, out)

    def __sub__(self, other: "Tensor") -> "Tensor":
        return self + other.scale(-1)

    def scale(self, s) -> "Tensor":
        s = ExactScalar.coerce(s)
        return Tensor(self.lie, self.rank, {k: c * s for k, c in self.terms.items()})

    def __matmul__(self, other: "Tensor") -> "Tensor":
        out: Dict[tuple, ExactScalar] = {}
        for ka, ca in self.terms.items():
            for kb, cb in other.terms.items():
                k = ka + kb
                out[k] = out.get(k, ExactScalar(0)) + ca * cb
        return Tensor(self.lie, self.rank + other.rank, out)

    def is_zero(self) -> bool:
        return not self.terms

    def flip(self) -> "Tensor":
        if self.rank != 2:
            raise ValueError("flip is for rank 2")
        return Tensor(self.lie, 2, {(b, a): c for (a, b), c in self.terms.items()})

    def max_abs(self):
        return max((c.abs1() for c in self.terms.values()), default=Fraction(0))

    def __repr__(self):
        bits = []
        for k, c in sorted(self.terms.items()):
            word = " (x) ".join(self.lie.names[i] for i in k)
            bits.append(f"({c})*{word}")
        return " + ".join(bits) or "0"


def wedge(a: Tensor, b: Tensor) -> Tensor:
    return a @ b - b @ a


def odot(a: Tensor, b: Tensor) -> Tensor:
    return a @ b + b @ a


def antisymmetrize(t: Tensor) -> Tensor:
    """Full antisymmetrization without normalization (sum over signed
    permutations), so wedge(a, b) == antisymmetrize(a (x) b)."""
    out: Dict[tuple, ExactScalar] = {}
    for k, c in t.terms.items():
        for perm in permutations(range(t.rank)):
            sign = _perm_sign(perm)
            key = tuple(k[p] for p in perm)
            out[key] = out.get(key, ExactScalar(0)) + c * sign
    return Tensor(t.lie, t.rank, out)


def _perm_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def ad_action(lie: LieAlgebra, gen: str, t: Tensor) -> Tensor:
    """[g (x) 1 ... + ... 1 (x) g, t]: the bracket applied leg by leg."""
    gi = lie.index[gen]
    out: Dict[tuple, ExactScalar] = {}
    for k, c in t.terms.items():
        for leg in range(t.rank):
            for m, s in lie.bracket_basis(gi, k[leg]).items():
                key = k[:leg] + (m,) + k[leg + 1:]
                out[key] = out.get(key, ExactScalar(0)) + c * s
    return Tensor(t.lie, t.rank, out)


def is_invariant(lie: LieAlgebra, t: Tensor) -> bool:
    return all(ad_action(lie, g, t).is_zero() for g in lie.names)


def yb_bracket(r: Tensor, s: Tensor) -> Tensor:
    """[r12, s13] + [r12, s23] + [r13, s23] in the third tensor power."""
    if r.rank != 2 or s.rank != 2:
        raise ValueError("Yang-Baxter bracket needs rank-2 arguments")
    lie = r.lie
    out: Dict[tuple, ExactScalar] = {}

    def put(key, c):
        out[key] = out.get(key, ExactScalar(0)) + c

    for (a, b), ca in r.terms.items():
        for (c, d), cb in s.terms.items():
            w = ca * cb
            for m, t in lie.bracket_basis(a, c).items():   # [r12, s13]
                put((m, b, d), w * t)
            for m, t in lie.bracket_basis(b, c).items():   # [r12, s23]
                put((a, m, d), w * t)
            for m, t in lie.bracket_basis(b, d).items():   # [r13, s23]
                put((a, c, m), w * t)
    return Tensor(lie, 3, out)


def cybe_lhs(r: Tensor) -> Tensor:
    return yb_bracket(r, r)


def coboundary(lie: LieAlgebra, r: Tensor, gen: str) -> Tensor:
    return ad_action(lie, gen, r)


# ---------------------------------------------------------------------------
# the three-dimensional algebra in the rotation/momentum basis
# ---------------------------------------------------------------------------

ISO3_NAMES = ["P0", "P+", "P-", "L0", "L+", "L-"]


def build_iso3() -> LieAlgebra:
    """Rotations and translations in three dimensions, lightcone-style
    basis with X_pm = (X_1 pm i X_2)/2 and metric diag(-1, 1, 1)."""
    lie = LieAlgebra(ISO3_NAMES)
    half_i = I * Fraction(1, 2)
    lie.set_bracket("L0", "L+", {"L+": -I})
    lie.set_bracket("L0", "L-", {"L-": I})
    lie.set_bracket("L+", "L-", {"L0": half_i})
    lie.set_bracket("L0", "P+", {"P+": -I})
    lie.set_bracket("L0", "P-", {"P-": I})
    lie.set_bracket("P0", "L+", {"P+": -I})
    lie.set_bracket("P0", "L-", {"P-": I})
    lie.set_bracket("L+", "P-", {"P0": half_i})
    lie.set_bracket("L-", "P+", {"P0": -half_i})
    return lie


def covariant_vector(lie: LieAlgebra, family: str, mu: int) -> Tensor:
    """P_mu or L_mu (lower index) expressed in the plus/minus basis."""
    if mu == 0:
        return Tensor.vector(lie, {family + "0": 1})
    if mu == 1:
        return Tensor.vector(lie, {family + "+": 1, family + "-": 1})
    if mu == 2:
        return Tensor.vector(lie, {family + "+": -I, family + "-": I})
    raise ValueError("index out of range")


ETA3 = (-1, 1, 1)


def casimir_x(lie: LieAlgebra, xi) -> Tensor:
    """P_mu odot L^mu + (xi/2) P_mu odot P^mu."""
    xi = ExactScalar.coerce(xi)
    out = Tensor.zero(lie, 2)
    for mu in range(3):
        p = covariant_vector(lie, "P", mu)
        l_ = covariant_vector(lie, "L", mu)
        out = out + odot(p, l_).scale(ETA3[mu])
        out = out + odot(p, p).scale(xi * Fraction(ETA3[mu], 2))
    return out


def classical_r(lie: LieAlgebra, xi) -> Tensor:
    """The full classical r-matrix: twice the antisymmetric kernel plus
    the invariant symmetric part."""
    return r_hat(lie, xi) + casimir_x(lie, xi)


def r_hat(lie: LieAlgebra, xi) -> Tensor:
    pp = Tensor.vector(lie, {"P+": 1})
    pm = Tensor.vector(lie, {"P-": 1})
    lp = Tensor.vector(lie, {"L+": 1})
    lm = Tensor.vector(lie, {"L-": 1})
    return (wedge(pp, lm) - wedge(pm, lp) + wedge(pp, pm).scale(xi)).scale(2)


def omega(lie: LieAlgebra, xi) -> Tensor:
    """The invariant cubic antisymmetric tensor with [[r_hat, r_hat]]
    equal to omega and [[x, x]] equal to minus omega: an epsilon
    contraction of P ^ P ^ L plus (2 xi / 3) P ^ P ^ P, where the triple
    wedge is the plain signed permutation sum."""
    xi = ExactScalar.coerce(xi)
    out = Tensor.zero(lie, 3)
    for perm in permutations(range(3)):
        sign = _perm_sign(perm)
        mu, nu, rho = perm
        p1 = covariant_vector(lie, "P", mu)
        p2 = covariant_vector(lie, "P", nu)
        l3 = covariant_vector(lie, "L", rho)
        p3 = covariant_vector(lie, "P", rho)
        term = antisymmetrize(p1 @ p2 @ l3)
        term = term + antisymmetrize(p1 @ p2 @ p3).scale(
            xi * Fraction(2, 3)
        )
        out = out + term.scale(Fraction(sign, 2))
    return out


def cobracket_from_hopf(hopf) -> Dict[str, Tensor]:
    """First-order cobracket of a deformed coproduct:
    coproduct(g) - flipped coproduct(g) = 2 hbar delta(g) + higher."""
    alg = hopf.alg
    lie = LieAlgebra(alg.names)
    out = {}
    for name, cop in hopf.coproducts.items():
        diff = cop - cop.flip()
        terms = {}
        for (ma, mb), c in diff.terms.items():
            if len(c.coeffs) < 2 or c.coeffs[1].is_zero():
                continue
            if ma.degree() != 1 or mb.degree() != 1:
                raise ValueError("cobracket term is not bilinear")
            key = (ma.powers[0][0], mb.powers[0][0])
            terms[key] = c.coeffs[1] * Fraction(1, 2)
        out[name] = Tensor(lie, 2, terms)
    return out


# ---------------------------------------------------------------------------
# the d-dimensional family in the covariant basis
# ---------------------------------------------------------------------------


def build_iso_d(d: int) -> LieAlgebra:
    """Translations P_mu and rotations M(mu,nu) for metric
    diag(-1, 1, ..., 1)."""
    eta = [-1] + [1] * (d - 1)
    names = [f"P{m}" for m in range(d)]
    pairs = [(a, b) for a in range(d) for b in range(a + 1, d)]
    names += [f"M{a}{b}" for a, b in pairs]
    lie = LieAlgebra(names)

    def m_name(a, b):
        # M(b,a) = -M(a,b); return (name, sign)
        return (f"M{a}{b}", 1) if a < b else (f"M{b}{a}", -1)

    for a, b in pairs:
        for c in range(d):
            val = {}
            if b == c:
                val[f"P{a}"] = eta[b]
            if a == c:
                val[f"P{b}"] = val.get(f"P{b}", 0) - eta[a]
            if val:
                lie.set_bracket(f"M{a}{b}", f"P{c}", val)
        for c, e in pairs:
            if (a, b) == (c, e):
                continue
            val: Dict[str, object] = {}
            for (x, y, z, w, s) in (
                (b, c, a, e, 1), (a, c, b, e, -1),
                (b, e, a, c, -1), (a, e, b, c, 1),
            ):
                if x == y and z != w:
                    n, sg = m_name(z, w)
                    val[n] = ExactScalar.coerce(val.get(n, 0)) + s * sg * eta[x]
            val = {k: v for k, v in val.items()
                   if not ExactScalar.coerce(v).is_zero()}
            if val:
                lie.set_bracket(f"M{a}{b}", f"M{c}{e}", val)
    return lie


def _default_n(d: int):
    return [ExactScalar(0) - I] + [ExactScalar(0)] * (d - 1)


def r_hat_d(lie: LieAlgebra, d: int, n=None) -> Tensor:
    """n_mu P_nu ^ M^(mu nu) for a fixed covector n, defaulting to
    (-i, 0, ..., 0) which has n.n = 1."""
    eta = [-1] + [1] * (d - 1)
    n = _default_n(d) if n is None else [ExactScalar.coerce(c) for c in n]
    out = Tensor.zero(lie, 2)
    for mu in range(d):
        if n[mu].is_zero():
            continue
        for nu in range(d):
            if nu == mu:
                continue
            a, b = min(mu, nu), max(mu, nu)
            sign = 1 if mu < nu else -1
            out = out + wedge(
                Tensor.vector(lie, {f"P{nu}": 1}),
                Tensor.vector(lie, {f"M{a}{b}": 1}),
            ).scale(n[mu] * (sign * eta[mu] * eta[nu]))
    return out


def n_squared(d: int, n=None) -> ExactScalar:
    eta = [-1] + [1] * (d - 1)
    n = _default_n(d) if n is None else [ExactScalar.coerce(c) for c in n]
    out = ExactScalar(0)
    for mu in range(d):
        out = out + n[mu] * n[mu] * eta[mu]
    return out


def omega_d(lie: LieAlgebra, d: int, n=None) -> Tensor:
    """-(n.n) times the epsilon-free invariant sum over mu < nu of
    eta eta P ^ P ^ M, with the plain signed triple wedge."""
    eta = [-1] + [1] * (d - 1)
    out = Tensor.zero(lie, 3)
    for a in range(d):
        for b in range(a + 1, d):
            t = antisymmetrize(
                Tensor.vector(lie, {f"P{a}": 1})
                @ Tensor.vector(lie, {f"P{b}": 1})
                @ Tensor.vector(lie, {f"M{a}{b}": 1})
            )
            out = out + t.scale(-eta[a] * eta[b])
    return out.scale(n_squared(d, n))


def momentum_casimir_d(lie: LieAlgebra, d: int) -> Tensor:
    """P_mu odot P^mu."""
    eta = [-1] + [1] * (d - 1)
    out = Tensor.zero(lie, 2)
    for a in range(d):
        p = Tensor.vector(lie, {f"P{a}": 1})
        out = out + odot(p, p).scale(Fraction(eta[a], 2))
    return out


def completion_obstruction_d(d: int) -> dict:
    """Try to complete the antisymmetric d-dimensional kernel to a full
    Yang-Baxter solution with an invariant symmetric piece c * P odot P.

    Returns the pieces of [[r + s, r + s]] = [[r, r]] + cross * c
    (the c^2 term vanishes since the P commute).  Away from d = 3 the
    cross term is zero while [[r, r]] is not, so no c works.
    """
    lie = build_iso_d(d)
    r = r_hat_d(lie, d)
    s = momentum_casimir_d(lie, d)
    quad = yb_bracket(s, s)
    cross = yb_bracket(r, s) + yb_bracket(s, r)
    const = cybe_lhs(r)
    return {
        "constant": const,
        "cross": cross,
        "quadratic": quad,
        "solvable": const.is_zero() or not cross.is_zero(),
    }


def completion_solutions_3d(xi) -> list:
    """Solve [[r_hat + a P.L + b P.P, same]] = 0 for exact (a, b) using
    the two invariant quadratic Casimirs of the three-dimensional
    algebra; the known solution has a^2 = 1."""
    import sympy

    lie = build_iso3()
    xi = ExactScalar.coerce(xi)
    rh = r_hat(lie, xi)
    pl = Tensor.zero(lie, 2)
    pp = Tensor.zero(lie, 2)
    for mu in range(3):
        p = covariant_vector(lie, "P", mu)
        l_ = covariant_vector(lie, "L", mu)
        pl = pl + odot(p, l_).scale(ETA3[mu])
        pp = pp + odot(p, p).scale(Fraction(ETA3[mu], 2))

    a, b = sympy.symbols("a b")

    def sympy_scalar(x: ExactScalar):
        return sympy.Rational(str(x.re)) + sympy.I * sympy.Rational(str(x.im))

    pieces = {
        (): cybe_lhs(rh),
        ("a",): yb_bracket(rh, pl) + yb_bracket(pl, rh),
        ("b",): yb_bracket(rh, pp) + yb_bracket(pp, rh),
        ("a", "a"): yb_bracket(pl, pl),
        ("a", "b"): yb_bracket(pl, pp) + yb_bracket(pp, pl),
        ("b", "b"): yb_bracket(pp, pp),
    }
    monos = {(): 1, ("a",): a, ("b",): b,
             ("a", "a"): a * a, ("a", "b"): a * b, ("b", "b"): b * b}
    eqs: Dict[tuple, object] = {}
    for tag, tensor in pieces.items():
        for key, c in tensor.terms.items():
            eqs[key] = eqs.get(key, 0) + sympy_scalar(c) * monos[tag]
    sols = sympy.solve([sympy.Eq(v, 0) for v in eqs.values()], [a, b], dict=True)
    return sols
