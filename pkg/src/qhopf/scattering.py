"""Two-particle momentum scattering map in closed form.

Plain complex floating point: the map involves square roots and
logarithms, so this module trades the exact arithmetic of the rest of
the package for double precision and a configurable tolerance.
"""

import cmath
from dataclasses import dataclass


class SingularKinematics(ValueError):
    """The scattering factor r vanished; the map is undefined."""


class BranchAmbiguity(ValueError):
    """r lies on (or too close to) the branch cut of sqrt/log."""


@dataclass
class Momentum3:
    """Lightcone components (p0, p+, p-), complex and unconstrained."""

    p0: complex
    plus: complex
    minus: complex

    def __post_init__(self):
        for c in (self.p0, self.plus, self.minus):
            c = complex(c)
            if not (cmath.isfinite(c)):
                raise ValueError("momentum components must be finite")

    def as_tuple(self):
        return (complex(self.p0), complex(self.plus), complex(self.minus))


@dataclass
class ScatterConfig:
    kappa: complex = 1.0
    branch: bool = False     # True selects the other sheet of sqrt/log
    tolerance: float = 1e-12

    def __post_init__(self):
        if self.kappa == 0:
            raise ValueError("kappa must be nonzero")


def scatter_factor(p: Momentum3, q: Momentum3, cfg: ScatterConfig) -> complex:
    """r = 1 - (4/kappa^2) e^(i(p0-q0)/2kappa) p+ q-."""
    k = cfg.kappa
    return 1 - 4 / k**2 * cmath.exp(1j * (p.p0 - q.p0) / (2 * k)) * p.plus * q.minus


def _sqrt_log(r: complex, cfg: ScatterConfig):
    if abs(r) < cfg.tolerance:
        raise SingularKinematics(f"scattering factor r = {r} is singular")
    if r.real < 0 and abs(r.imag) < cfg.tolerance * abs(r):
        raise BranchAmbiguity(f"r = {r} sits on the branch cut")
    root = cmath.sqrt(r)
    logr = cmath.log(r)
    if cfg.branch:
        root = -root
        logr = logr + 2j * cmath.pi
    return root, logr


def scatter(p: Momentum3, q: Momentum3, cfg: ScatterConfig):
    """Outgoing momenta (p', q') of the two-particle map."""
    k = cfg.kappa
    r = scatter_factor(p, q, cfg)
    root, logr = _sqrt_log(r, cfg)
    e = cmath.exp
    i = 1j
    pp = Momentum3(
        p0=p.p0 + i * k * logr,
        plus=e(-i * q.p0 / k) / root * p.plus,
        minus=e(i * q.p0 / k) * root * p.minus
        + e(i * (q.p0 - p.p0) / (2 * k)) * root * q.minus
        - e(i * (3 * p.p0 + q.p0) / (2 * k)) / root * q.minus,
    )
    qp = Momentum3(
        p0=q.p0 - i * k * logr,
        plus=e(-i * p.p0 / k) * root * q.plus
        + e(i * (q.p0 - p.p0) / (2 * k)) * root * p.plus
        - e(-i * (p.p0 + 3 * q.p0) / (2 * k)) / root * p.plus,
        minus=e(i * p.p0 / k) / root * q.minus,
    )
    return pp, qp


def mass_shell(p: Momentum3, cfg: ScatterConfig) -> complex:
    """p+ p- - kappa^2 sin^2(p0 / 2 kappa)."""
    k = cfg.kappa
    return p.plus * p.minus - k**2 * cmath.sin(p.p0 / (2 * k)) ** 2


def conservation_report(p, q, pp, qp, cfg: ScatterConfig) -> dict:
    """The six residuals conserved by the map."""
    k = cfg.kappa
    e = cmath.exp
    i = 1j

    def dressed(a, b, sign):
        comp_a = a.plus if sign > 0 else a.minus
        comp_b = b.plus if sign > 0 else b.minus
        return e(-i * b.p0 / (2 * k)) * comp_a + e(i * a.p0 / (2 * k)) * comp_b

    res = {
        "energy_sum": (pp.p0 + qp.p0) - (p.p0 + q.p0),
        "dressed_plus": dressed(pp, qp, +1)
        - (e(i * q.p0 / (2 * k)) * p.plus + e(-i * p.p0 / (2 * k)) * q.plus),
        "dressed_minus": dressed(pp, qp, -1)
        - (e(i * q.p0 / (2 * k)) * p.minus + e(-i * p.p0 / (2 * k)) * q.minus),
        "mass_shell_p": mass_shell(pp, cfg) - mass_shell(p, cfg),
        "mass_shell_q": mass_shell(qp, cfg) - mass_shell(q, cfg),
        "sixth_law": e(i * (qp.p0 - pp.p0) / (2 * k)) * pp.plus * qp.minus
        - e(i * (p.p0 - q.p0) / (2 * k)) * p.plus * q.minus,
    }
    return {name: abs(v) for name, v in res.items()}


def sixth_law_contrast(p: Momentum3, q: Momentum3, cfg: ScatterConfig) -> dict:
    """Compare the conserved sixth combination against the alternative
    law that would preserve each particle's energy separately."""
    pp, qp = scatter(p, q, cfg)
    report = conservation_report(p, q, pp, qp, cfg)
    return {
        "sixth_law": report["sixth_law"],
        "alternative_law": abs((pp.p0 - qp.p0) - (p.p0 - q.p0)),
    }


def random_momentum(rng) -> Momentum3:
    def c():
        return complex(rng.uniform(-1, 1), rng.uniform(-1, 1))

    return Momentum3(c(), c(), c())
