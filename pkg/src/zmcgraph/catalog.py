"""Closed-form reference surfaces used as the geometry test corpus.

Each entry packages an evaluator producing second-order jets (analytic where
the parametrization is explicit, Newton-plus-finite-differences for the
implicit entry), the expected causal character, any known straight null lines
on the surface, and a sampling domain with documented exclusions around
singular sets.  The corpus contract is that every entry's zero-mean-curvature
residual vanishes numerically on its sampling domain.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .lorentz import (
    GraphJet,
    Jet2,
    Vec3M,
    classify,
    degenerate_test,
    fd_graph_jet,
    first_form,
    graph_to_parametric,
    jet_scale,
    null_line_check,
    zmc_residual,
)

SURFACE_NAMES = (
    "elliptic_catenoid",
    "light_cone",
    "hyperbolic_catenoid",
    "mixed_cone_type",
    "timelike_tanh",
    "lightlike_plane",
)


@dataclass(frozen=True)
class NullLineSpec:
    """A straight light-like line known to lie on the surface."""

    point: Vec3M
    direction: Vec3M
    label: str
    span: float = 10.0

    def sample_points(self, n: int = 21) -> list[Vec3M]:
        return [
            Vec3M(
                self.point.x + s * self.direction.x,
                self.point.y + s * self.direction.y,
                self.point.t + s * self.direction.t,
            )
            for s in np.linspace(-self.span, self.span, n)
        ]


@dataclass(frozen=True)
class SurfaceEntry:
    name: str
    kind: str  # parametric | graph | implicit
    expected_causal: str  # spacelike | timelike | lightlike | mixed
    jet: Callable[[float, float], Jet2]
    domain: tuple[tuple[float, float], tuple[float, float]]
    known_null_lines: tuple[NullLineSpec, ...] = ()
    excluded: Callable[[float, float], bool] | None = None
    notes: str = ""

    def B_field(self) -> Callable[[float, float], float]:
        return lambda u, v: first_form(self.jet(u, v))[1]


# ---------------------------------------------------------------------------
# analytic parametric entries
# ---------------------------------------------------------------------------


def _elliptic_catenoid_jet(u: float, v: float) -> Jet2:
    sh, ch = math.sinh(v), math.cosh(v)
    cu, su = math.cos(u), math.sin(u)
    return Jet2(
        f=Vec3M(sh * cu, sh * su, v),
        f_u=Vec3M(-sh * su, sh * cu, 0.0),
        f_v=Vec3M(ch * cu, ch * su, 1.0),
        f_uu=Vec3M(-sh * cu, -sh * su, 0.0),
        f_uv=Vec3M(-ch * su, ch * cu, 0.0),
        f_vv=Vec3M(sh * cu, sh * su, 0.0),
    )


def _light_cone_jet(u: float, v: float) -> Jet2:
    cu, su = math.cos(u), math.sin(u)
    return Jet2(
        f=Vec3M(v * cu, v * su, v),
        f_u=Vec3M(-v * su, v * cu, 0.0),
        f_v=Vec3M(cu, su, 1.0),
        f_uu=Vec3M(-v * cu, -v * su, 0.0),
        f_uv=Vec3M(-su, cu, 0.0),
        f_vv=Vec3M(0.0, 0.0, 0.0),
    )


def _timelike_tanh_jet(theta: float, t: float) -> Jet2:
    """Tube (tanh t cos th, t - tanh t + tanh t sin th, t).

    Solves (y - t + tanh t)^2 + x^2 = tanh^2 t; time-like with the entire
    null line x = 0, y = t along theta = pi/2 and a cone point at t = 0.
    """
    T = math.tanh(t)
    S = 1.0 / math.cosh(t) ** 2
    dS = -2.0 * S * T
    ct, st = math.cos(theta), math.sin(theta)
    return Jet2(
        f=Vec3M(T * ct, t - T + T * st, t),
        f_u=Vec3M(-T * st, T * ct, 0.0),
        f_v=Vec3M(S * ct, 1.0 - S + S * st, 1.0),
        f_uu=Vec3M(-T * ct, -T * st, 0.0),
        f_uv=Vec3M(-S * st, S * ct, 0.0),
        f_vv=Vec3M(dS * ct, -dS + dS * st, 0.0),
    )


# ---------------------------------------------------------------------------
# analytic graph entries
# ---------------------------------------------------------------------------


def hyperbolic_catenoid_height(x: float, y: float) -> float:
    """Upper sheet of sin^2 x + y^2 = t^2."""
    return math.sqrt(math.sin(x) ** 2 + y * y)


def _hyperbolic_catenoid_graph_jet(x: float, y: float) -> GraphJet:
    g = math.sin(x) ** 2 + y * y
    gx = math.sin(2.0 * x)
    gxx = 2.0 * math.cos(2.0 * x)
    s = math.sqrt(g)
    return GraphJet(
        value=s,
        px=gx / (2.0 * s),
        py=y / s,
        pxx=gxx / (2.0 * s) - gx * gx / (4.0 * g * s),
        pxy=-gx * y / (2.0 * g * s),
        pyy=1.0 / s - y * y / (g * s),
    )


def _lightlike_plane_graph_jet(x: float, y: float) -> GraphJet:
    return GraphJet(y, 0.0, 1.0, 0.0, 0.0, 0.0)


# ---------------------------------------------------------------------------
# the implicit cone-type entry
# ---------------------------------------------------------------------------


def cone_type_implicit(x: float, y: float, t: float) -> float:
    """F(x, y, t) = 2(y-t) cos t - (x^2 + (y-t)^2) sin t.

    The zero set carries the entire null line x = 0, y = t, and the graph
    branch through it has x^2-coefficient alpha(y) = -tan y, the mu = 1
    solution family at zero shift, as the constant-mu constraint requires.
    Cone points sit on the line at y = pi/2 + k pi where the t-derivative
    degenerates.
    """
    s = y - t
    return 2.0 * s * math.cos(t) - (x * x + s * s) * math.sin(t)


def cone_type_dt(x: float, y: float, t: float) -> float:
    s = y - t
    return -(2.0 + x * x + s * s) * math.cos(t)


class ImplicitSolveError(RuntimeError):
    pass


def implicit_solve(
    F: Callable[[float, float, float], float],
    x: float,
    y: float,
    t_seed: float,
    dF_dt: Callable[[float, float, float], float] | None = None,
    tol: float = 1e-12,
    max_steps: int = 50,
) -> float:
    """Newton-solve F(x, y, t) = 0 for t from a seed value.

    Uses the supplied t-derivative or a central difference.  Raises
    ImplicitSolveError on a vanishing derivative or non-convergence.
    """
    t = t_seed
    for _ in range(max_steps):
        ft = F(x, y, t)
        if abs(ft) <= tol:
            return t
        if dF_dt is not None:
            d = dF_dt(x, y, t)
        else:
            h = 1e-7 * max(1.0, abs(t))
            d = (F(x, y, t + h) - F(x, y, t - h)) / (2.0 * h)
        if abs(d) < 1e-14:
            raise ImplicitSolveError(
                f"vanishing t-derivative near t = {t!r} at ({x!r}, {y!r})"
            )
        t -= ft / d
    raise ImplicitSolveError(
        f"Newton iteration did not converge within {max_steps} steps "
        f"at ({x!r}, {y!r}); |F| = {abs(F(x, y, t)):.3e}"
    )


def cone_type_height(x: float, y: float) -> float:
    """Graph branch of the cone-type surface through the null line."""
    seed = y - 0.5 * x * x * math.tan(y)
    return implicit_solve(cone_type_implicit, x, y, seed, cone_type_dt)


def _cone_type_graph_jet(x: float, y: float) -> GraphJet:
    return fd_graph_jet(cone_type_height, x, y)


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------


def _graph_entry_jet(graph_jet_fn):
    def jet(x: float, y: float) -> Jet2:
        return graph_to_parametric(x, y, graph_jet_fn(x, y))

    return jet


_L_DIR = Vec3M(0.0, 1.0, 1.0)

_ENTRIES: dict[str, SurfaceEntry] = {}


def _register(e: SurfaceEntry) -> None:
    _ENTRIES[e.name] = e


_register(
    SurfaceEntry(
        name="elliptic_catenoid",
        kind="parametric",
        expected_causal="spacelike",
        jet=_elliptic_catenoid_jet,
        domain=((-math.pi, math.pi), (-1.5, 1.5)),
        excluded=lambda u, v: abs(v) < 0.05,
        notes="cone point at v = 0; spacelike everywhere else, sampling "
        "excludes |v| < 0.05 where the causal field degenerates",
    )
)

_register(
    SurfaceEntry(
        name="light_cone",
        kind="parametric",
        expected_causal="lightlike",
        jet=_light_cone_jet,
        domain=((0.0, 2.0 * math.pi), (-1.0, 1.0)),
        known_null_lines=(
            NullLineSpec(Vec3M(0.0, 0.0, 0.0), Vec3M(1.0, 0.0, 1.0), "generator u=0"),
        ),
        notes="every point is a degenerate null point",
    )
)

_register(
    SurfaceEntry(
        name="hyperbolic_catenoid",
        kind="graph",
        expected_causal="spacelike",
        jet=_graph_entry_jet(_hyperbolic_catenoid_graph_jet),
        domain=((-4.0, 4.0), (-2.0, 2.0)),
        known_null_lines=tuple(
            NullLineSpec(
                Vec3M(k * math.pi, 0.0, 0.0),
                Vec3M(0.0, 1.0, sign),
                f"y = {'+t' if sign > 0 else '-t'} at x = {k} pi",
            )
            for k in (-1, 0, 1)
            for sign in (1.0, -1.0)
        ),
        excluded=lambda x, y: math.sin(x) ** 2 + y * y < 1e-2,
        notes="upper sheet of sin^2 x + y^2 = t^2; cone points at "
        "(k pi, 0) where the graph jets blow up, excluded via "
        "sin^2 x + y^2 >= 1e-2; null columns along x = k pi",
    )
)

_register(
    SurfaceEntry(
        name="mixed_cone_type",
        kind="implicit",
        expected_causal="spacelike",
        jet=_graph_entry_jet(_cone_type_graph_jet),
        domain=((-0.3, 0.3), (0.35, 0.9)),
        known_null_lines=(
            NullLineSpec(Vec3M(0.0, 0.0, 0.0), _L_DIR, "y = t at x = 0"),
        ),
        excluded=None,
        notes="Newton-solved graph branch through the null line y = t, "
        "x = 0; sampled on a window clear of the fold |x| ~ cot(t) and "
        "of the cone points at y = pi/2 + k pi",
    )
)

_register(
    SurfaceEntry(
        name="timelike_tanh",
        kind="parametric",
        expected_causal="timelike",
        jet=_timelike_tanh_jet,
        domain=((0.0, 2.0 * math.pi), (0.25, 1.5)),
        known_null_lines=(
            NullLineSpec(Vec3M(0.0, 0.0, 0.0), _L_DIR, "y = t at x = 0"),
        ),
        excluded=None,
        notes="cone point at t = 0 excluded by the sampling window; the "
        "null line runs along theta = pi/2",
    )
)

_register(
    SurfaceEntry(
        name="lightlike_plane",
        kind="graph",
        expected_causal="lightlike",
        jet=_graph_entry_jet(_lightlike_plane_graph_jet),
        domain=((-2.0, 2.0), (-2.0, 2.0)),
        known_null_lines=(
            NullLineSpec(Vec3M(0.0, 0.0, 0.0), _L_DIR, "y = t at x = 0"),
            NullLineSpec(Vec3M(1.0, 0.0, 0.0), _L_DIR, "y = t at x = 1"),
        ),
        notes="the graph t = y",
    )
)


def entry(name: str) -> SurfaceEntry:
    try:
        return _ENTRIES[name]
    except KeyError:
        raise ValueError(
            f"unknown surface {name!r}; available: {', '.join(SURFACE_NAMES)}"
        ) from None


# ---------------------------------------------------------------------------
# corpus verification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CorpusRow:
    name: str
    max_scaled_residual: float
    residual_pass: bool
    histogram: dict[str, int]
    causal_pass: bool
    null_lines: tuple[tuple[str, bool], ...]
    null_pass: bool
    degenerate_fraction: float | None
    passed: bool

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "max_scaled_residual": self.max_scaled_residual,
            "residual_pass": self.residual_pass,
            "histogram": self.histogram,
            "causal_pass": self.causal_pass,
            "null_lines": [list(r) for r in self.null_lines],
            "null_pass": self.null_pass,
            "degenerate_fraction": self.degenerate_fraction,
            "pass": self.passed,
        }


def _histogram_matches(expected: str, hist: dict[str, int]) -> bool:
    ns, nt, nn = hist["spacelike"], hist["timelike"], hist["null"]
    if expected == "spacelike":
        return nt == 0 and ns > 0
    if expected == "timelike":
        return ns == 0 and nt > 0
    if expected == "lightlike":
        return ns == 0 and nt == 0 and nn > 0
    if expected == "mixed":
        return ns > 0 and nt > 0
    raise ValueError(f"unknown expected causal kind {expected!r}")


def corpus_verify(
    samples_per_surface: int = 13,
    residual_tol: float = 1e-6,
    causal_tol: float = 1e-10,
    line_tol: float = 1e-9,
    names: Sequence[str] = SURFACE_NAMES,
) -> list[CorpusRow]:
    """Run residual, causal-histogram and null-line checks on the corpus.

    The residual check is |A| / max(1, jet magnitude)^3 <= residual_tol at
    every non-excluded grid point.  Light-like entries additionally measure
    the fraction of sampled points that are degenerate null points.
    """
    rows = []
    for name in names:
        e = entry(name)
        (u0, u1), (v0, v1) = e.domain
        us = [float(u) for u in np.linspace(u0, u1, samples_per_surface)]
        vs = [float(v) for v in np.linspace(v0, v1, samples_per_surface)]
        worst = 0.0
        hist = {"spacelike": 0, "timelike": 0, "null": 0}
        n_deg = n_pts = 0
        b_field = e.B_field() if e.expected_causal == "lightlike" else None
        for u in us:
            for v in vs:
                if e.excluded is not None and e.excluded(u, v):
                    continue
                j = e.jet(u, v)
                _, B = first_form(j)
                worst = max(worst, abs(zmc_residual(j)) / jet_scale(j))
                hist[classify(B, causal_tol).kind.value] += 1
                n_pts += 1
                if b_field is not None:
                    n_deg += degenerate_test(b_field, (u, v), tol=1e-8)
        line_results = []
        for line in e.known_null_lines:
            verdict = null_line_check(line.sample_points(21), tol=line_tol)
            line_results.append((line.label, verdict.is_null_line))
        residual_pass = worst <= residual_tol
        causal_pass = _histogram_matches(e.expected_causal, hist)
        null_pass = all(ok for _, ok in line_results)
        rows.append(
            CorpusRow(
                name=name,
                max_scaled_residual=worst,
                residual_pass=residual_pass,
                histogram=hist,
                causal_pass=causal_pass,
                null_lines=tuple(line_results),
                null_pass=null_pass,
                degenerate_fraction=(n_deg / n_pts) if b_field is not None else None,
                passed=residual_pass and causal_pass and null_pass,
            )
        )
    return rows
