"""Exact scalar arithmetic: Gaussian rationals and truncated hbar-power series.

Every computation in the package bottoms out here.  Scalars are pairs of
arbitrary-precision rationals (re + i*im), so equality-with-zero tests are
exact.  Series are tuples of scalars truncated at a fixed order in the
deformation parameter hbar.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Union

import gmpy2
from gmpy2 import mpq


class ZeroConstantTerm(ArithmeticError):
    """Series inversion requested for a series with zero constant term."""


class NonzeroConstantTerm(ArithmeticError):
    """exp/log1p requested for a series whose constant term is not zero."""


RationalLike = Union[int, str, Fraction, "mpq"]


def _to_mpq(x) -> mpq:
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


class ExactScalar:
    """A Gaussian rational re + i*im with exact field arithmetic."""

    __slots__ = ("re", "im")

    def __init__(self, re: RationalLike = 0, im: RationalLike = 0):
        self.re = _to_mpq(re)
        self.im = _to_mpq(im)

    # -- constructors -------------------------------------------------

    @staticmethod
    def i() -> "ExactScalar":
        return ExactScalar(0, 1)

    @staticmethod
    def coerce(x) -> "ExactScalar":
        if isinstance(x, ExactScalar):
            return x
        return ExactScalar(x)

    # -- ring/field operations ----------------------------------------

    def __add__(self, other):
        other = ExactScalar.coerce(other)
        return ExactScalar(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return ExactScalar(-self.re, -self.im)

    def __sub__(self, other):
        other = ExactScalar.coerce(other)
        return ExactScalar(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return ExactScalar.coerce(other) - self

    def __mul__(self, other):
        other = ExactScalar.coerce(other)
        return ExactScalar(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def inverse(self) -> "ExactScalar":
        n = self.re * self.re + self.im * self.im
        if n == 0:
            raise ZeroDivisionError("inverse of zero Gaussian rational")
        return ExactScalar(self.re / n, -self.im / n)

    def __truediv__(self, other):
        return self * ExactScalar.coerce(other).inverse()

    def __rtruediv__(self, other):
        return ExactScalar.coerce(other) * self.inverse()

    def conjugate(self) -> "ExactScalar":
        return ExactScalar(self.re, -self.im)

    # -- predicates ----------------------------------------------------

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, type(mpq(0)))):
            return self.im == 0 and self.re == other
        if not isinstance(other, ExactScalar):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def abs1(self) -> mpq:
        """|re| + |im|, an exact rational proxy for the magnitude."""
        return abs(self.re) + abs(self.im)

    def to_complex(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*i"
        return f"({self.re}{'+' if self.im > 0 else '-'}{abs(self.im)}*i)"


ZERO = ExactScalar(0)
ONE = ExactScalar(1)


def parse_rational(text: str) -> ExactScalar:
    """Parse strings like ``3/5``, ``-2``, ``1/2+1/3i``, ``-i`` exactly."""
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty rational literal")
    # split into real and imaginary pieces
    if s.endswith("i") or s.endswith("I"):
        body = s[:-1]
        # find split point: a +/- not at position 0 and not after '/'
        for k in range(len(body) - 1, 0, -1):
            if body[k] in "+-" and body[k - 1] not in "/+-":
                re_part, im_part = body[:k], body[k:]
                break
        else:
            re_part, im_part = "0", body
        if im_part in ("", "+"):
            im_part = "1"
        elif im_part == "-":
            im_part = "-1"
        return ExactScalar(mpq(re_part), mpq(im_part.lstrip("+")))
    return ExactScalar(mpq(s))


class HbarSeries:
    """Truncated power series in hbar with ExactScalar coefficients.

    ``coeffs[k]`` is the coefficient of hbar**k; the series is known
    modulo hbar**(order+1).  All arithmetic truncates at the minimum of
    the operands' orders.
    """

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Iterable, order: int):
        cs = [ExactScalar.coerce(c) for c in coeffs]
        if len(cs) < order + 1:
            cs += [ZERO] * (order + 1 - len(cs))
        self.coeffs = tuple(cs[: order + 1])
        self.order = order

    # -- constructors --------------------------------------------------

    @staticmethod
    def constant(c, order: int) -> "HbarSeries":
        return HbarSeries([ExactScalar.coerce(c)], order)

    @staticmethod
    def zero(order: int) -> "HbarSeries":
        return HbarSeries([], order)

    @staticmethod
    def one(order: int) -> "HbarSeries":
        return HbarSeries([ONE], order)

    @staticmethod
    def hbar(order: int) -> "HbarSeries":
        return HbarSeries([ZERO, ONE], order)

    @staticmethod
    def monomial(c, k: int, order: int) -> "HbarSeries":
        """c * hbar**k as a series (zero if k exceeds the order)."""
        if k > order:
            return HbarSeries.zero(order)
        return HbarSeries([ZERO] * k + [ExactScalar.coerce(c)], order)

    @staticmethod
    def coerce(x, order: int) -> "HbarSeries":
        if isinstance(x, HbarSeries):
            return x if x.order == order else x.truncate(order)
        return HbarSeries.constant(x, order)

    # -- basic queries ---------------------------------------------------

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, HbarSeries):
            n = min(self.order, other.order)
            return self.coeffs[: n + 1] == other.coeffs[: n + 1]
        return self == HbarSeries.constant(other, self.order)

    def __hash__(self):
        return hash((self.coeffs, self.order))

    def constant_term(self) -> ExactScalar:
        return self.coeffs[0]

    def valuation(self) -> int:
        """Index of the first nonzero coefficient; order+1 for the zero series."""
        for k, c in enumerate(self.coeffs):
            if not c.is_zero():
                return k
        return self.order + 1

    def truncate(self, order: int) -> "HbarSeries":
        return HbarSeries(self.coeffs[: order + 1], order)

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, HbarSeries):
            other = HbarSeries.constant(other, self.order)
        n = min(self.order, other.order)
        return HbarSeries(
            [self.coeffs[k] + other.coeffs[k] for k in range(n + 1)], n
        )

    __radd__ = __add__

    def __neg__(self):
        return HbarSeries([-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        if not isinstance(other, HbarSeries):
            other = HbarSeries.constant(other, self.order)
        return self + (-other)

    def __rsub__(self, other):
        return HbarSeries.constant(other, self.order) - self

    def __mul__(self, other):
        if not isinstance(other, HbarSeries):
            c = ExactScalar.coerce(other)
            return HbarSeries([a * c for a in self.coeffs], self.order)
        n = min(self.order, other.order)
        out = [ZERO] * (n + 1)
        for i, a in enumerate(self.coeffs[: n + 1]):
            if a.is_zero():
                continue
            for j in range(n + 1 - i):
                b = other.coeffs[j]
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return HbarSeries(out, n)

    __rmul__ = __mul__

    def shift(self, k: int) -> "HbarSeries":
        """Multiply by hbar**k (k may be negative if the valuation allows)."""
        if k >= 0:
            return HbarSeries([ZERO] * k + list(self.coeffs), self.order)
        if self.valuation() < -k:
            raise ArithmeticError("negative-power shift below the valuation")
        return HbarSeries(list(self.coeffs[-k:]), self.order + k)

    def inverse(self) -> "HbarSeries":
        if self.coeffs[0].is_zero():
            raise ZeroConstantTerm("series has no constant term")
        inv0 = self.coeffs[0].inverse()
        out = [inv0]
        for k in range(1, self.order + 1):
            acc = ZERO
            for j in range(1, k + 1):
                acc = acc + self.coeffs[j] * out[k - j]
            out.append(-inv0 * acc)
        return HbarSeries(out, self.order)

    def __truediv__(self, other):
        if isinstance(other, HbarSeries):
            return self * other.inverse()
        return self * ExactScalar.coerce(other).inverse()

    def __pow__(self, n: int):
        out = HbarSeries.one(self.order)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- transcendental maps -------------------------------------------

    def exp(self) -> "HbarSeries":
        if not self.coeffs[0].is_zero():
            raise NonzeroConstantTerm("exp needs zero constant term")
        out = HbarSeries.one(self.order)
        term = HbarSeries.one(self.order)
        for n in range(1, self.order + 1):
            term = term * self * ExactScalar(Fraction(1, n))
            out = out + term
        return out

    def log1p(self) -> "HbarSeries":
        if not self.coeffs[0].is_zero():
            raise NonzeroConstantTerm("log1p needs zero constant term")
        out = HbarSeries.zero(self.order)
        power = HbarSeries.one(self.order)
        for n in range(1, self.order + 1):
            power = power * self
            out = out + power * ExactScalar(Fraction((-1) ** (n + 1), n))
        return out

    def max_abs(self) -> mpq:
        return max((c.abs1() for c in self.coeffs), default=mpq(0))

    def __repr__(self):
        parts = []
        for k, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            if k == 0:
                parts.append(repr(c))
            elif k == 1:
                parts.append(f"{c!r}*h")
            else:
                parts.append(f"{c!r}*h^{k}")
        return " + ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# q-special functions
# ---------------------------------------------------------------------------


def exp_scalar(alpha, order: int) -> HbarSeries:
    """e**(alpha*hbar) as an exact series, alpha a rational (or scalar)."""
    a = ExactScalar.coerce(alpha)
    coeffs = [ONE]
    fac = ONE
    p = ONE
    for k in range(1, order + 1):
        p = p * a
        fac = fac * ExactScalar(Fraction(1, k))
        coeffs.append(p * fac)
    return HbarSeries(coeffs, order)


def q_number(n: int, alpha, order: int) -> HbarSeries:
    """The q-number (1 - q**n)/(1 - q) at q -> e**(alpha*hbar).

    The constant term is n; at alpha = 0 the analytic limit n is returned.
    """
    a = ExactScalar.coerce(alpha)
    if a.is_zero():
        return HbarSeries.constant(n, order)
    # (1 - e^{n a h}) / (1 - e^{a h}): both have valuation 1; shift out one h
    num = (1 - exp_scalar(a * n, order + 1)).shift(-1)
    den = (1 - exp_scalar(a, order + 1)).shift(-1)
    return (num * den.inverse()).truncate(order)


def q_factorial(n: int, alpha, order: int) -> HbarSeries:
    """Product of q-numbers [1][2]...[n]; constant term n!."""
    if n < 0:
        raise ValueError("q_factorial needs n >= 0")
    out = HbarSeries.one(order)
    for k in range(1, n + 1):
        out = out * q_number(k, alpha, order)
    return out


def qdilog_coefficients(n_max: int, alpha, order: int) -> list:
    """Coefficients c_n of X**n in log of the q-exponential, n = 1..n_max.

    c_n = (1-q)**(n-1) / (n * [n]) with q -> e**(alpha*hbar).
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    a = ExactScalar.coerce(alpha)
    one_minus_q = 1 - exp_scalar(a, order)
    out = []
    pw = HbarSeries.one(order)
    for n in range(1, n_max + 1):
        if n > 1:
            pw = pw * one_minus_q
        qn = q_number(n, alpha, order)
        out.append(pw * qn.inverse() * ExactScalar(Fraction(1, n)))
    return out


def dilog_series(n_max: int) -> list:
    """Taylor coefficients of Li2(x) = sum x**n / n**2 for n = 1..n_max."""
    return [ExactScalar(Fraction(1, n * n)) for n in range(1, n_max + 1)]


def log1m_over_x_series(n_max: int) -> list:
    """Coefficients of log(1-x)/x = -sum_{n>=0} x**n/(n+1), n = 0..n_max."""
    return [ExactScalar(Fraction(-1, n + 1)) for n in range(0, n_max + 1)]
