"""Casimir force between two impedances terminating a transmission line.

Zero temperature, after rotation to the positive imaginary frequency
axis (u = dimensionless imaginary frequency, omega = i u c / l):

    f = (hbar c / pi l^2) * Integral_0^inf du  u p(u) e^(-2u)
                                               / (1 - p(u) e^(-2u))

with p(u) = r1(iu) r2(iu), both reflections real in [-1, 1].  The
denominator is then strictly positive and the sign of the force is the
sign of p.  Finite temperature replaces the integral by the sum over
u_n = 2 pi n l k_B T / (hbar c) with half weight at n = 0:

    f = (2 k_B T / l) * [F(0+)/2 + sum_{n>=1} F(u_n)]

Forces are reported both in newtons (positive = attractive) and
normalized by f0 = pi hbar c / (24 l^2), the value for two identical
perfect mirrors.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

import numpy as np
from scipy.integrate import quad

from .circuit import ImpedanceExpr, LineSpec, eval_impedance_imaginary
from .constants import HBAR, K_B
from .errors import InvariantViolationError, QuadratureError
from .mirrors import MirrorFlavor, reflection_imaginary_axis

__all__ = [
    "QuadratureConfig",
    "ForceResult",
    "IntegrationResult",
    "BoundaryPair",
    "integrate_semi_infinite",
    "force_zero_temperature",
    "force_finite_temperature",
    "sign_profile",
    "SignSample",
    "mode_sum_oracle",
    "reference_force",
]


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances and truncation policy for the semi-infinite integrals.

    u_max = None picks the smallest truncation point whose closed-form
    tail bound stays below abs_tol/10.
    """

    rel_tol: float = 1e-9
    abs_tol: float = 1e-12
    max_subdivisions: int = 2000
    u_max: float | None = None

    def __post_init__(self):
        if self.rel_tol <= 0 or self.abs_tol <= 0:
            raise ValueError("tolerances must be > 0")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")


DEFAULT_CONFIG = QuadratureConfig()


class IntegrationResult(NamedTuple):
    value: float
    error_estimate: float
    evaluations: int
    u_max: float
    tail_bound: float


@dataclass(frozen=True)
class ForceResult:
    """Force in SI and normalized form, with error estimate and diagnostics.

    force_si > 0 means attraction.  f_normalized = f/f0 with
    f0 = pi hbar c / (24 l^2); error_estimate is in the same
    dimensionless units.
    """

    force_si: float
    f_normalized: float
    error_estimate: float
    diagnostics: dict = field(default_factory=dict)


def tail_bound(u_max: float) -> float:
    """Closed-form bound on Integral_{u_max}^inf of u e^(-2u)/(1-e^(-2u)).

    Valid for every integrand of the force family since |p(u)| <= 1
    implies |F(u)| <= u e^(-2u)/(1 - e^(-2 u_max)) beyond u_max.
    """
    e = math.exp(-2.0 * u_max)
    return e * (2.0 * u_max + 1.0) / (4.0 * (1.0 - e))


def _auto_u_max(abs_tol: float) -> float:
    u = 2.0
    while tail_bound(u) > abs_tol / 10.0 and u < 400.0:
        u += 0.5
    return u


def integrate_semi_infinite(
    integrand: Callable[[float], float], cfg: QuadratureConfig = DEFAULT_CONFIG
) -> IntegrationResult:
    """Adaptive quadrature of integrand over (0, inf).

    The integrand must be finite on (0, inf) with a limit at 0+ and decay
    at least as fast as u e^(-2u)/(1 - e^(-2 u_max)) beyond the truncation
    point; the truncated tail is bounded in closed form and folded into
    the returned error estimate.
    """
    u_max = cfg.u_max if cfg.u_max is not None else _auto_u_max(cfg.abs_tol)
    evaluations = 0

    def checked(u: float) -> float:
        nonlocal evaluations
        evaluations += 1
        value = integrand(u)
        if not math.isfinite(value):
            raise QuadratureError(f"non-finite integrand sample {value} at u={u}")
        return value

    value, abserr, info = quad(
        checked,
        0.0,
        u_max,
        epsabs=cfg.abs_tol,
        epsrel=cfg.rel_tol,
        limit=cfg.max_subdivisions,
        full_output=True,
    )[:3]
    if info.get("last", 0) >= cfg.max_subdivisions:
        raise QuadratureError(
            f"subdivision limit {cfg.max_subdivisions} exceeded on (0, {u_max}]"
        )
    tail = tail_bound(u_max)
    return IntegrationResult(
        value=value,
        error_estimate=abserr + tail,
        evaluations=evaluations,
        u_max=u_max,
        tail_bound=tail,
    )


def reference_force(line: LineSpec, l: float) -> float:
    """f0 = pi hbar c / (24 l^2), the attractive perfect-mirror value."""
    return math.pi * HBAR * line.c / (24.0 * l * l)


def _reflection_product(
    z1: ImpedanceExpr,
    z2: ImpedanceExpr,
    line: LineSpec,
    l: float,
    flavor: MirrorFlavor,
) -> Callable[[float], float]:
    """p(u) = r1(iu) r2(iu) with reflections evaluated at omega = i u c / l."""
    scale = line.c / l

    def p(u: float) -> float:
        xi = u * scale
        r1 = reflection_imaginary_axis(z1, line, xi, flavor)
        r2 = reflection_imaginary_axis(z2, line, xi, flavor)
        return r1 * r2

    return p


def _integrand_zero_limit(p: Callable[[float], float]) -> float:
    """u -> 0+ limit of u p e^(-2u)/(1 - p e^(-2u)).

    Zero unless p(0) = 1, in which case the denominator vanishes linearly
    and the limit is 1/(2 - p'(0)).
    """
    p0 = p(0.0)
    if abs(p0 - 1.0) > 1e-12:
        return 0.0
    h = 1e-6
    slope = (p(h) - p0) / h
    return 1.0 / (2.0 - slope)


def _make_force_integrand(
    p: Callable[[float], float]
) -> tuple[Callable[[float], float], dict]:
    stats = {"min_denominator": math.inf}

    def integrand(u: float) -> float:
        if u == 0.0:
            return _integrand_zero_limit(p)
        damp = math.exp(-2.0 * u)
        g = p(u) * damp
        den = 1.0 - g
        if den < stats["min_denominator"]:
            stats["min_denominator"] = den
        if den <= 0.0:
            raise InvariantViolationError(
                f"cavity denominator 1 - r1 r2 e^(-2u) = {den} <= 0 at u={u}"
            )
        return u * g / den

    return integrand, stats


def force_zero_temperature(
    z1: ImpedanceExpr,
    z2: ImpedanceExpr,
    line: LineSpec,
    l: float,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
    flavor: MirrorFlavor = MirrorFlavor.TERMINATING,
) -> ForceResult:
    """Zero-temperature force between two passive terminations.

    Evaluates the Wick-rotated integral; the result is real and the
    denominator is checked positive at every quadrature sample.
    """
    if not (l > 0 and math.isfinite(l)):
        raise ValueError(f"l must be finite and > 0, got {l}")
    p = _reflection_product(z1, z2, line, l, flavor)
    integrand, stats = _make_force_integrand(p)
    result = integrate_semi_infinite(integrand, cfg)
    f0 = reference_force(line, l)
    force_si = HBAR * line.c / (math.pi * l * l) * result.value
    norm = 24.0 / (math.pi**2)
    return ForceResult(
        force_si=force_si,
        f_normalized=norm * result.value,
        error_estimate=norm * result.error_estimate,
        diagnostics={
            "evaluations": result.evaluations,
            "matsubara_terms": None,
            "u_max": result.u_max,
            "tail_bound": result.tail_bound,
            "min_denominator": stats["min_denominator"],
            "f0_si": f0,
        },
    )


def force_finite_temperature(
    z1: ImpedanceExpr,
    z2: ImpedanceExpr,
    line: LineSpec,
    l: float,
    th,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
    flavor: MirrorFlavor = MirrorFlavor.TERMINATING,
) -> ForceResult:
    """Finite-temperature force as the discrete-frequency sum.

    Terms run over u_n = 2 pi n l k_B T / (hbar c), half weight at n = 0
    (evaluated as the u -> 0+ limit); the series is truncated once the
    geometric tail bound drops below abs_tol in f/f0 units.
    """
    if not (l > 0 and math.isfinite(l)):
        raise ValueError(f"l must be finite and > 0, got {l}")
    if th.temperature <= 0:
        raise ValueError("force_finite_temperature requires T > 0; use force_zero_temperature")
    p = _reflection_product(z1, z2, line, l, flavor)
    integrand, stats = _make_force_integrand(p)

    spacing = 2.0 * math.pi * l * K_B * th.temperature / (HBAR * line.c)
    u_stop = max(_auto_u_max(cfg.abs_tol) if cfg.u_max is None else cfg.u_max, 1.0)
    prefactor = 2.0 * K_B * th.temperature / l
    f0 = reference_force(line, l)

    total = 0.5 * integrand(0.0)
    n = 1
    while n * spacing <= u_stop:
        total += integrand(n * spacing)
        n += 1
        if n > 50_000_000:
            raise QuadratureError("Matsubara sum did not truncate (T too small)")
    u_last = max(n * spacing, u_stop)
    # Sum tail bounded by the integral of the decreasing envelope.
    tail = tail_bound(u_last) / spacing

    force_si = prefactor * total
    return ForceResult(
        force_si=force_si,
        f_normalized=force_si / f0,
        error_estimate=prefactor * tail / f0,
        diagnostics={
            "evaluations": n,
            "matsubara_terms": n,
            "u_max": u_last,
            "tail_bound": tail,
            "min_denominator": stats["min_denominator"],
            "f0_si": f0,
        },
    )


@dataclass(frozen=True)
class SignSample:
    """Sign information of the force integrand at one grid point."""

    u: float
    r1: float
    r2: float
    product_sign: int
    impedances_bracket_z0: bool


def sign_profile(
    z1: ImpedanceExpr,
    z2: ImpedanceExpr,
    line: LineSpec,
    l: float,
    u_grid,
) -> list[SignSample]:
    """Per-u reflection signs and the repulsion bracket Z1 < Z0 < Z2.

    A strict bracket (either ordering) at a grid point is equivalent to a
    negative reflection product there, hence a repulsive contribution.
    """
    scale = line.c / l
    samples = []
    for u in u_grid:
        if u <= 0:
            raise ValueError(f"u grid must be > 0, got {u}")
        r1 = reflection_imaginary_axis(z1, line, u * scale, MirrorFlavor.TERMINATING)
        r2 = reflection_imaginary_axis(z2, line, u * scale, MirrorFlavor.TERMINATING)
        za = eval_impedance_imaginary(z1, u * scale)
        zb = eval_impedance_imaginary(z2, u * scale)
        product = r1 * r2
        sign = 0 if product == 0 else (1 if product > 0 else -1)
        bracket = (za < line.z0 < zb) or (zb < line.z0 < za)
        samples.append(
            SignSample(u=u, r1=r1, r2=r2, product_sign=sign, impedances_bracket_z0=bracket)
        )
    return samples


class BoundaryPair(enum.Enum):
    LIKE = "like"        # short/short or open/open: modes at n pi / l
    UNLIKE = "unlike"    # short/open: modes at (n + 1/2) pi / l


def mode_sum_oracle(bc: BoundaryPair, l: float, c: float) -> float:
    """Force from the regularized zero-point mode sum (newtons).

    The divergent sum over mode numbers minus its continuum part is
    evaluated numerically through the Abel-Plana formula (the boundary
    term integral), not by citing the regularized constant:

        sum_{n>=0} n     - int_0^inf x dx = -2 int_0^inf t dt/(e^(2 pi t)-1)
        sum_{n>=0} (n+.5) - int_0^inf x dx = +2 int_0^inf t dt/(e^(2 pi t)+1)

    The interaction energy is (pi hbar c / 2 l) times that, and the
    attractive-positive force is its l-derivative.
    """
    if not (l > 0 and math.isfinite(l)):
        raise ValueError(f"l must be finite and > 0, got {l}")
    if bc is BoundaryPair.LIKE:
        def boundary_term(t: float) -> float:
            x = 2.0 * math.pi * t
            if x == 0.0:
                return 1.0 / (2.0 * math.pi)
            if x > 700.0:
                return t * math.exp(-x)
            return t / math.expm1(x)

        integral, _ = quad(boundary_term, 0.0, np.inf, epsabs=1e-15, epsrel=1e-13)
        regularized_sum = -2.0 * integral
    else:
        def boundary_term(t: float) -> float:
            x = 2.0 * math.pi * t
            if x > 700.0:
                return t * math.exp(-x)
            return t / (math.exp(x) + 1.0)

        integral, _ = quad(boundary_term, 0.0, np.inf, epsabs=1e-15, epsrel=1e-13)
        regularized_sum = 2.0 * integral
    return -math.pi * HBAR * c * regularized_sum / (2.0 * l * l)
