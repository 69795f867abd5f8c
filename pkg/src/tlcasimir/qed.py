"""Scattering route: cavity matrices and per-mode energy densities.

Two mirrors at separation l define a Fabry-Perot response
D = 1 - r1*r2*e^(2ikl).  Inputs map onto cavity amplitudes through Rmat
and onto outgoing amplitudes through Smat; for lossless mirrors the
spectral energy density inside the cavity is

    (1/2pi) * [hbar c k / tanh(beta hbar c k / 2)]
            * (1 - |r1|^2 |r2|^2) / |D|^2

and the free line carries (1/2pi) * hbar c k / tanh(...) with no mirror
dependence.  The difference of the two is the per-mode force integrand,
an algebraic identity in g = r1*r2*e^(2ikl).

Total forces are *not* integrated here: on the real axis the force
integrand is oscillatory and only conditionally convergent, so force
evaluation lives in the Wick-rotated route (module force).  This module
exposes integrands for identity tests and the lossless cross-check.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .circuit import LineSpec
from .constants import HBAR, K_B
from .errors import LossyMirrorError, ResonanceError
from .mirrors import Mirror

__all__ = [
    "ThermalSpec",
    "ScatterMatrices",
    "scattering_matrices",
    "thermal_weight",
    "free_density_integrand",
    "cavity_density_integrand",
    "force_integrand_real_axis",
]

LOSSLESS_TOL = 1e-10
RESONANCE_TOL = 1e-14


@dataclass(frozen=True)
class ThermalSpec:
    """Temperature of the thermal state; T = 0 means beta = inf."""

    temperature: float = 0.0

    def __post_init__(self):
        if not (self.temperature >= 0 and math.isfinite(self.temperature)):
            raise ValueError(f"temperature must be finite and >= 0, got {self.temperature}")

    @property
    def beta(self) -> float:
        if self.temperature == 0.0:
            return math.inf
        return 1.0 / (K_B * self.temperature)


@dataclass(frozen=True)
class ScatterMatrices:
    """Cavity (Rmat) and outgoing (Smat) response, inputs -> amplitudes.

    Smat = [[tau, rho2], [rho1, tau]]: equal diagonals by reciprocity.
    """

    rmat: tuple[tuple[complex, complex], tuple[complex, complex]]
    smat: tuple[tuple[complex, complex], tuple[complex, complex]]

    @property
    def tau(self) -> complex:
        return self.smat[0][0]

    @property
    def rho1(self) -> complex:
        return self.smat[1][0]

    @property
    def rho2(self) -> complex:
        return self.smat[0][1]


def scattering_matrices(m1: Mirror, m2: Mirror, kl: float) -> ScatterMatrices:
    """Cavity and scattering matrices for two mirrors a phase kl apart."""
    r1, t1 = m1.r, m1.t
    r2, t2 = m2.r, m2.t
    phase = cmath.exp(2j * kl)
    den = 1 - r1 * r2 * phase
    if abs(den) < RESONANCE_TOL:
        raise ResonanceError(
            f"undamped cavity resonance: |1 - r1 r2 e^(2ikl)| = {abs(den):.3e}"
        )
    rmat = (
        (t1 / den, r1 * t2 / den),
        (r2 * t1 * phase / den, t2 / den),
    )
    tau = t1 * t2 / den
    rho1 = r1 + r2 * t1 * t1 * phase / den
    rho2 = r2 / phase + r1 * t2 * t2 / den
    smat = ((tau, rho2), (rho1, tau))
    return ScatterMatrices(rmat=rmat, smat=smat)


def thermal_weight(k: float, line: LineSpec, th: ThermalSpec) -> float:
    """hbar*c*k / tanh(beta*hbar*c*k / 2); reduces to hbar*c*k at T = 0."""
    energy = HBAR * line.c * k
    if th.temperature == 0.0:
        return energy
    x = 0.5 * th.beta * energy
    return energy / math.tanh(x)


def free_density_integrand(k: float, line: LineSpec, th: ThermalSpec) -> float:
    """Free-line spectral energy density (J/m per unit k), mirror-independent."""
    if k <= 0:
        raise ValueError(f"k must be > 0, got {k}")
    return thermal_weight(k, line, th) / (2 * math.pi)


def _require_lossless(mirror: Mirror, which: str) -> None:
    defect = abs(abs(mirror.r) ** 2 + abs(mirror.t) ** 2 - 1.0)
    if defect > LOSSLESS_TOL:
        raise LossyMirrorError(
            f"{which} is lossy (|r|^2+|t|^2 deviates by {defect:.2e}); "
            "use fdt.fdt_energy_density_integrand for lossy terminations"
        )


def cavity_density_integrand(
    k: float, m1: Mirror, m2: Mirror, l: float, line: LineSpec, th: ThermalSpec
) -> float:
    """Cavity spectral energy density between two *lossless* mirrors.

    The numerator 1 - |r1|^2 |r2|^2 is evaluated as
    |t1|^2 + |r1|^2 |t2|^2 (equal under losslessness), which stays
    accurate for near-perfect mirrors where the direct subtraction would
    cancel catastrophically.
    """
    if k <= 0:
        raise ValueError(f"k must be > 0, got {k}")
    _require_lossless(m1, "mirror 1")
    _require_lossless(m2, "mirror 2")
    g = m1.r * m2.r * cmath.exp(2j * k * l)
    den2 = abs(1 - g) ** 2
    if den2 < RESONANCE_TOL**2:
        raise ResonanceError("undamped cavity resonance in density integrand")
    numerator = abs(m1.t) ** 2 + abs(m1.r) ** 2 * abs(m2.t) ** 2
    return free_density_integrand(k, line, th) * numerator / den2


def force_integrand_real_axis(
    k: float, m1: Mirror, m2: Mirror, l: float, line: LineSpec, th: ThermalSpec
) -> float:
    """Per-k force integrand -(1/2pi) W(k) 2Re[g/(1-g)], g = r1 r2 e^(2ikl).

    Equals free_density_integrand - cavity_density_integrand identically
    for lossless mirrors at real k.
    """
    if k <= 0:
        raise ValueError(f"k must be > 0, got {k}")
    g = m1.r * m2.r * cmath.exp(2j * k * l)
    if abs(1 - g) < RESONANCE_TOL:
        raise ResonanceError("undamped cavity resonance in force integrand")
    return -free_density_integrand(k, line, th) * 2.0 * (g / (1 - g)).real
