"""Convergence certificates and coefficient-growth verification.

For a quartic-seed series with parameter c, the coefficient estimates

    |beta_l''(y)| <= |c| |y|^(l*)     M^(l-3)
    |beta_l'(y)|  <= 3|c| |y|^(l*+1) / (l*+2)   M^(l-3)
    |beta_l(y)|   <= 3|c| |y|^(l*+2) / (l*+2)^2 M^(l-3),   l* = (l-1)/2 - 2,

hold on |y| <= delta with the growth constant

    M_delta = 3 max(144 tau |c| delta^(3/2), (192 c^2 tau)^(1/4)),

where tau bounds t * integral_t^(1-t) du / (u^2 (1-u)^2) on 0 < t < 1/2.
They guarantee the series converges on the open rectangle

    V_delta = (-1/C_delta, 1/C_delta) x (-delta, delta),   C_delta = sqrt(delta) M_delta,

and the union U of the V_delta over delta >= 1 therefore carries the graph.
U contains the whole y-axis but is not convex, which this module exhibits
with an explicit witness pair.

Every inequality that feeds a "pass" verdict is evaluated with directed
rounding: measured quantities are nudged up and bounds nudged down by a few
ulps, so double-precision roundoff can produce spurious failures but never
spurious passes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from scipy.integrate import quad
from scipy.optimize import minimize_scalar

from .series import GraphSeries, SeriesCase

# ---------------------------------------------------------------------------
# directed rounding helpers (conservative toward "fail")
# ---------------------------------------------------------------------------


def round_up(x: float, steps: int = 4) -> float:
    if x == 0.0:
        return x  # exact zeros carry no roundoff
    for _ in range(steps):
        x = math.nextafter(x, math.inf)
    return x


def round_down(x: float, steps: int = 4) -> float:
    if x == 0.0:
        return x
    for _ in range(steps):
        x = math.nextafter(x, -math.inf)
    return x


# ---------------------------------------------------------------------------
# the integral constant tau
# ---------------------------------------------------------------------------


def tau_integrand_scaled(t: float) -> float:
    """g(t) = t * integral_t^(1-t) du / (u^2 (1-u)^2), in closed form.

    Partial fractions give 1/(u^2(1-u)^2) = 1/u^2 + 2/u + 2/(1-u) + 1/(1-u)^2,
    whose antiderivative is -1/u + 1/(1-u) + 2 ln(u/(1-u)); evaluating across
    the symmetric interval collapses to the expression below.
    """
    if not 0.0 < t <= 0.5:
        raise ValueError("t must lie in (0, 1/2]")
    return 2.0 - 2.0 * t / (1.0 - t) + 4.0 * t * math.log((1.0 - t) / t)


def tau_integrand_quadrature(t: float) -> float:
    """The same g(t) by adaptive quadrature, for cross-validation."""
    if not 0.0 < t <= 0.5:
        raise ValueError("t must lie in (0, 1/2]")
    val, _ = quad(
        lambda u: 1.0 / (u * u * (1.0 - u) * (1.0 - u)),
        t,
        1.0 - t,
        epsabs=1e-13,
        epsrel=1e-13,
    )
    return t * val


@lru_cache(maxsize=1)
def tau_constant() -> tuple[float, float]:
    """(tau, t_star): a valid upper bound for sup g and its maximizer.

    The supremum is located by bounded scalar minimization of -g and then
    rounded up at the fourth decimal, so g(t) <= tau holds for every t.
    """
    res = minimize_scalar(
        lambda t: -tau_integrand_scaled(t),
        bounds=(1e-9, 0.5 - 1e-9),
        method="bounded",
        options={"xatol": 1e-13},
    )
    sup = -res.fun
    tau = math.ceil(sup * 1e4) / 1e4
    return tau, float(res.x)


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConvergenceCert:
    """Rectangle of guaranteed definition for one delta."""

    c: Fraction
    delta: float
    tau: float
    M: float
    C_delta: float
    theta0: float
    rect: tuple[tuple[float, float], tuple[float, float]]

    def to_json(self) -> dict:
        return {
            "c": f"{self.c.numerator}/{self.c.denominator}",
            "delta": self.delta,
            "tau": self.tau,
            "M": self.M,
            "C_delta": self.C_delta,
            "theta0": self.theta0,
            "rect": {"x": list(self.rect[0]), "y": list(self.rect[1])},
        }


def growth_constant(c: Fraction, delta: float, tau: float | None = None) -> float:
    """M_delta = 3 max(144 tau |c| delta^(3/2), (192 c^2 tau)^(1/4))."""
    if c == 0:
        raise ValueError("c must be nonzero")
    if tau is None:
        tau, _ = tau_constant()
    ca = abs(float(c))
    first = 144.0 * tau * ca * delta**1.5
    second = (192.0 * float(c) ** 2 * tau) ** 0.25
    return 3.0 * max(first, second)


def certificate(c: Fraction, delta: float = 1.0) -> ConvergenceCert:
    """Certified rectangle V_delta for the series with parameter c."""
    c = Fraction(c)
    if c == 0:
        raise ValueError("c must be nonzero")
    if delta < 1.0:
        raise ValueError("delta must be at least 1")
    tau, _ = tau_constant()
    M = growth_constant(c, delta, tau)
    C = math.sqrt(delta) * M
    theta0 = 3.0 * abs(float(c)) / (math.sqrt(delta) * M**3)
    rect = ((-1.0 / C, 1.0 / C), (-delta, delta))
    return ConvergenceCert(c, delta, tau, M, C, theta0, rect)


# interior margin used when the optimal delta sits exactly at |y|;
# the rectangles are open, so membership needs a strictly larger delta
_ETA = 1e-9


def u_halfwidth(c: Fraction, y: float) -> float:
    """Half-width in x of the certified union U at height y.

    C_delta is strictly increasing in delta, so the widest admissible
    rectangle through height y is the one with delta = max(1, |y| + eta).
    """
    delta = max(1.0, abs(y) + _ETA)
    return 1.0 / (math.sqrt(delta) * growth_constant(c, delta))


def u_membership(c: Fraction, x: float, y: float) -> bool:
    """Whether (x, y) lies in the certified union U = U_(delta>=1) V_delta."""
    return abs(x) < u_halfwidth(c, y)


@dataclass(frozen=True)
class ConvexityWitness:
    p1: tuple[float, float]
    p2: tuple[float, float]
    midpoint: tuple[float, float]
    midpoint_in_u: bool
    non_convex: bool

    def to_json(self) -> dict:
        return {
            "p1": list(self.p1),
            "p2": list(self.p2),
            "midpoint": list(self.midpoint),
            "midpoint_in_u": self.midpoint_in_u,
            "non_convex": self.non_convex,
        }


def convexity_witness(c: Fraction) -> ConvexityWitness:
    """Concrete certificate that U is not convex.

    Takes points just inside U at heights 2 and 4; the half-width decays
    like |y|^(-2) there, a strictly convex profile, so the chord midpoint at
    height 3 pokes outside.  Raises if the midpoint unexpectedly lands in U.
    """
    c = Fraction(c)
    if c == 0:
        raise ValueError("c must be nonzero")
    p1 = (0.999 * u_halfwidth(c, 2.0), 2.0)
    p2 = (0.999 * u_halfwidth(c, 4.0), 4.0)
    mid = ((p1[0] + p2[0]) / 2.0, (p1[1] + p2[1]) / 2.0)
    inside = u_membership(c, *mid)
    if inside:
        raise ArithmeticError(
            "non-convexity witness failed: chord midpoint lies in U "
            f"(c = {c}); the width profile is not convex at these heights"
        )
    return ConvexityWitness(p1, p2, mid, inside, not inside)


# ---------------------------------------------------------------------------
# coefficient-estimate sweep
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BoundCheck:
    l: int
    inequality: str
    delta: float
    worst_y: float
    lhs: float
    rhs: float
    passed: bool

    def to_json(self) -> dict:
        return {
            "l": self.l,
            "inequality": self.inequality,
            "delta": self.delta,
            "worst_y": self.worst_y,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "pass": self.passed,
        }


def verify_growth_estimates(
    s: GraphSeries, delta: float = 1.0, samples: int = 101
) -> list[BoundCheck]:
    """Check the three growth estimates and the chained bound on a y-grid.

    For each stored l >= 5 and each of ``samples`` points y in [-delta, delta],
    verifies (with measured side rounded up and bound side rounded down):

        d2-bound:    |beta_l''(y)| <= |c| |y|^(l*) M^(l-3)
        d1-bound:    |beta_l'(y)|  <= 3|c| |y|^(l*+1)/(l*+2) M^(l-3)
        value-bound: |beta_l(y)|   <= 3|c| |y|^(l*+2)/(l*+2)^2 M^(l-3)
        chain-bound: 3|c| |y|^(l*+2)/(l*+2)^2 M^(l-3) <= theta0 C_delta^l

    Returns one row per (l, inequality) with the worst margin over the grid.
    """
    if s.seed.case is SeriesCase.MIXED_I:
        raise ValueError("growth estimates cover quartic seeds only")
    if delta < 1.0:
        raise ValueError("delta must be at least 1")
    if samples < 2:
        raise ValueError("need at least 2 sample points")
    cert = certificate(s.seed.c, delta)
    ca = abs(float(s.seed.c))
    M = cert.M
    rows: list[BoundCheck] = []
    ys = [-delta + 2.0 * delta * i / (samples - 1) for i in range(samples)]
    for l in range(5, s.order + 1):
        bl = s.betas[l]
        bld = bl.derivative()
        bldd = bld.derivative()
        lstar = 0.5 * (l - 1) - 2.0
        mpow = M ** (l - 3)
        checks = {
            "d2-bound": lambda y, _l=lstar, _m=mpow: (
                abs(bldd(y)),
                ca * abs(y) ** _l * _m,
            ),
            "d1-bound": lambda y, _l=lstar, _m=mpow: (
                abs(bld(y)),
                3.0 * ca * abs(y) ** (_l + 1.0) / (_l + 2.0) * _m,
            ),
            "value-bound": lambda y, _l=lstar, _m=mpow: (
                abs(bl(y)),
                3.0 * ca * abs(y) ** (_l + 2.0) / (_l + 2.0) ** 2 * _m,
            ),
            "chain-bound": lambda y, _l=lstar, _m=mpow: (
                3.0 * ca * abs(y) ** (_l + 2.0) / (_l + 2.0) ** 2 * _m,
                cert.theta0 * cert.C_delta**l,
            ),
        }
        for name, fn in checks.items():
            worst_margin = math.inf
            worst = (0.0, 0.0, 0.0)
            for y in ys:
                lhs, rhs = fn(y)
                lhs, rhs = round_up(lhs), round_down(rhs)
                margin = rhs - lhs
                if margin < worst_margin:
                    worst_margin = margin
                    worst = (y, lhs, rhs)
            rows.append(
                BoundCheck(
                    l, name, delta, worst[0], worst[1], worst[2], worst_margin >= 0.0
                )
            )
    return rows
