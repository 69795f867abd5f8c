"""Fluctuation-dissipation route: noise spectra and the Kirchhoff cavity.

Every dissipative element of resistance R carries a shunt current noise
source with two-sided spectrum

    S_I(omega) = (2 hbar omega / R) / (1 - e^(-beta hbar omega))

(Johnson-Nyquist, quantum form; the omega < 0 branch carries the
detailed-balance asymmetry).  Feeding these sources into the Kirchhoff
laws of a line terminated by two impedances gives the wave amplitudes
inside the cavity and, from them, the spectral energy density.  The
noise injected into a line by a resistor R equals, for every (R, Z0,
omega, T), the noise arriving from a semi-infinite line of impedance R
in a thermal state -- the bridge between this route and the scattering
one.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .circuit import ImpedanceExpr, LineSpec, decompose_parallel_rx, eval_impedance
from .constants import HBAR
from .errors import PassivityError, ResonanceError
from .mirrors import Mirror, MirrorFlavor, reflect_termination
from .qed import RESONANCE_TOL, ThermalSpec, thermal_weight

__all__ = [
    "NoiseSpectrum",
    "CavityWaveAmplitudes",
    "bose_weight",
    "nyquist_current_spectrum",
    "charge_and_current_spectrum",
    "input_spectrum_resistor",
    "input_spectrum_line",
    "cavity_wave_currents",
    "fdt_energy_density_integrand",
    "cavity_density_closed_form",
    "energy_density_dual",
]


@dataclass(frozen=True)
class NoiseSpectrum:
    """Spectral density sample: value at a single omega."""

    omega: float
    value: float


@dataclass(frozen=True)
class CavityWaveAmplitudes:
    """Forward/backward current amplitudes at x = 0.

    Amplitudes propagate as I+(x) = I+(0) e^(ikx), I-(x) = I-(0) e^(-ikx).
    """

    i_plus_0: complex
    i_minus_0: complex


def bose_weight(omega: float, th: ThermalSpec) -> float:
    """1/(1 - e^(-beta hbar omega)), both frequency branches.

    At T = 0 this is the step function (1 for omega > 0, 0 for omega < 0).
    Always has the sign of omega, so omega * bose_weight >= 0.
    """
    if omega == 0:
        raise ValueError("bose weight is singular at omega = 0")
    if th.temperature == 0.0:
        return 1.0 if omega > 0 else 0.0
    x = th.beta * HBAR * omega
    if x > 0:
        return 1.0 / -math.expm1(-x)
    # 1/(1-e^(-x)) = e^x/expm1(x): overflow-free for x < 0
    return math.exp(x) / math.expm1(x)


def nyquist_current_spectrum(r_ohms: float, omega: float, th: ThermalSpec) -> NoiseSpectrum:
    """Current-noise spectrum (2 hbar omega / R) * bose_weight of a resistor."""
    if not (r_ohms > 0 and math.isfinite(r_ohms)):
        raise ValueError(f"resistance must be finite and > 0, got {r_ohms}")
    value = (2.0 * HBAR * omega / r_ohms) * bose_weight(omega, th)
    return NoiseSpectrum(omega=omega, value=value)


def charge_and_current_spectrum(
    expr: ImpedanceExpr, omega: float, th: ThermalSpec
) -> tuple[NoiseSpectrum, NoiseSpectrum]:
    """Charge and current fluctuation spectra of a lumped impedance.

    S_Q = 2 hbar Re[Z]/(omega |Z|^2) * bose_weight and S_I = omega^2 S_Q.
    A purely reactive Z has no dissipation and returns zero spectra; for
    Z = R the current spectrum reproduces nyquist_current_spectrum.
    """
    imm = eval_impedance(expr, omega)
    if imm.is_open:
        return NoiseSpectrum(omega, 0.0), NoiseSpectrum(omega, 0.0)
    z = imm.value()
    if z.real < 0:
        raise PassivityError(f"Re[Z] < 0 at omega={omega}: {z}")
    if z.real == 0 or z == 0:
        return NoiseSpectrum(omega, 0.0), NoiseSpectrum(omega, 0.0)
    s_q = 2.0 * HBAR * z.real / (omega * abs(z) ** 2) * bose_weight(omega, th)
    s_i = omega * omega * s_q
    return NoiseSpectrum(omega, s_q), NoiseSpectrum(omega, s_i)


def input_spectrum_resistor(
    r_ohms: float, line: LineSpec, omega: float, th: ThermalSpec
) -> NoiseSpectrum:
    """Forward-voltage noise a resistor R injects into the line at x = 0.

    Circuit route: the line is replaced by its characteristic impedance,
    the Kirchhoff laws give I+(0) = I_N R/(R+Z0), and S_{V+} follows from
    the Nyquist source.
    """
    if not (r_ohms > 0 and math.isfinite(r_ohms)):
        raise ValueError(f"resistance must be finite and > 0, got {r_ohms}")
    z0 = line.z0
    prefactor = r_ohms * z0 * z0 / (r_ohms + z0) ** 2
    value = prefactor * 2.0 * HBAR * omega * bose_weight(omega, th)
    return NoiseSpectrum(omega=omega, value=value)


def input_spectrum_line(
    r_ohms: float, line: LineSpec, omega: float, th: ThermalSpec
) -> NoiseSpectrum:
    """Forward-voltage noise from a semi-infinite line of impedance R.

    Wave route: the thermal free-line spectrum (hbar omega R / 2) *
    bose_weight is transmitted through the R -> Z0 junction with
    t+ = 2 Z0/(Z0 + R).  Must equal input_spectrum_resistor for all
    inputs; the two are kept as separate code paths on purpose.
    """
    if not (r_ohms > 0 and math.isfinite(r_ohms)):
        raise ValueError(f"resistance must be finite and > 0, got {r_ohms}")
    t_plus = 2.0 * line.z0 / (line.z0 + r_ohms)
    free_line = 0.5 * HBAR * omega * r_ohms * bose_weight(omega, th)
    return NoiseSpectrum(omega=omega, value=t_plus * t_plus * free_line)


def cavity_wave_currents(
    i_n1: complex, i_n2: complex, m1: Mirror, m2: Mirror, kl: float
) -> CavityWaveAmplitudes:
    """Solve the Kirchhoff laws for the wave amplitudes driven by noise.

    The two terminating mirrors and the noise currents I_N1 (at x = 0)
    and I_N2 (at x = l) determine

        I+(0) = [t1 I_N1 + r1 t2 e^(ikl) I_N2] / (2 (1 - r1 r2 e^(2ikl)))
        I-(0) = -e^(ikl) [t2 I_N2 + r2 t1 e^(ikl) I_N1] / (2 (1 - ...))
    """
    if m1.flavor is not MirrorFlavor.TERMINATING or m2.flavor is not MirrorFlavor.TERMINATING:
        raise ValueError("cavity_wave_currents expects terminating mirrors")
    phase = cmath.exp(1j * kl)
    den = 2.0 * (1.0 - m1.r * m2.r * phase * phase)
    if abs(den) < 2 * RESONANCE_TOL:
        raise ResonanceError("undamped cavity resonance in Kirchhoff solution")
    i_plus = (m1.t * i_n1 + m1.r * m2.t * phase * i_n2) / den
    i_minus = -phase * (m2.t * i_n2 + m2.r * m1.t * phase * i_n1) / den
    return CavityWaveAmplitudes(i_plus_0=i_plus, i_minus_0=i_minus)


def _injection_term(t: complex, r_par: float, other_r: complex) -> float:
    """(|t|^2 / R) (1 + |r_other|^2) with the lossless/short limits -> 0."""
    t2 = abs(t) ** 2
    if t2 == 0.0 or math.isinf(r_par):
        return 0.0
    return t2 / r_par * (1.0 + abs(other_r) ** 2)


def fdt_energy_density_integrand(
    omega: float,
    m1: Mirror,
    m2: Mirror,
    l: float,
    line: LineSpec,
    th: ThermalSpec,
    r1_parallel: float,
    r2_parallel: float,
) -> float:
    """Spectral energy density at x = 0 from the noise-driven cavity.

    Built from the Kirchhoff solution with uncorrelated sources in the
    two parallel resistances (J/m per unit omega, 1/2pi included):

        (1/2pi) L' hbar omega bose(omega)
            * [ (|t1|^2/R1)(1+|r2|^2) + (|t2|^2/R2)(1+|r1|^2) ]
            / (2 |1 - r1 r2 e^(2ikl)|^2)

    Folding +/-omega onto k = |omega|/c reproduces the closed form
    cavity_density_closed_form for any passive terminations.
    """
    if omega == 0:
        raise ValueError("energy density integrand is singular at omega = 0")
    if r1_parallel <= 0 or r2_parallel <= 0:
        raise PassivityError("parallel resistances must be positive (or inf)")
    k = omega / line.c
    den2 = abs(1.0 - m1.r * m2.r * cmath.exp(2j * k * l)) ** 2
    if den2 < RESONANCE_TOL**2:
        raise ResonanceError("undamped cavity resonance in energy density")
    injection = _injection_term(m1.t, r1_parallel, m2.r) + _injection_term(
        m2.t, r2_parallel, m1.r
    )
    lprime = line.inductance_per_m
    return (
        lprime
        * HBAR
        * omega
        * bose_weight(omega, th)
        * injection
        / (2.0 * den2)
        / (2.0 * math.pi)
    )


def cavity_density_closed_form(
    k: float, m1: Mirror, m2: Mirror, l: float, line: LineSpec, th: ThermalSpec
) -> float:
    """Closed-form cavity density, valid for lossy terminations too.

    (1/2pi) [hbar c k / tanh(beta hbar c k / 2)]
        * (1 - |r1|^2 |r2|^2) / |1 - r1 r2 e^(2ikl)|^2
    """
    if k <= 0:
        raise ValueError(f"k must be > 0, got {k}")
    g = m1.r * m2.r * cmath.exp(2j * k * l)
    den2 = abs(1.0 - g) ** 2
    if den2 < RESONANCE_TOL**2:
        raise ResonanceError("undamped cavity resonance in closed-form density")
    numerator = 1.0 - (abs(m1.r) * abs(m2.r)) ** 2
    return thermal_weight(k, line, th) * numerator / den2 / (2.0 * math.pi)


def energy_density_dual(
    z1: ImpedanceExpr,
    z2: ImpedanceExpr,
    line: LineSpec,
    l: float,
    omega: float,
    th: ThermalSpec,
) -> tuple[float, float]:
    """Both routes to the per-k energy density at k = omega/c.

    Returns (folded noise-driven form, closed form).  The first is
    c * [F(+omega) + F(-omega)] of fdt_energy_density_integrand with the
    parallel-R decomposition done independently at each branch; the two
    agree for every pair of passive terminations.
    """
    if omega <= 0:
        raise ValueError(f"omega must be > 0, got {omega}")
    folded = 0.0
    for w in (omega, -omega):
        m1 = reflect_termination(z1, line, w)
        m2 = reflect_termination(z2, line, w)
        r1_par = _parallel_resistance(z1, w)
        r2_par = _parallel_resistance(z2, w)
        folded += fdt_energy_density_integrand(w, m1, m2, l, line, th, r1_par, r2_par)
    folded *= line.c

    m1 = reflect_termination(z1, line, omega)
    m2 = reflect_termination(z2, line, omega)
    closed = cavity_density_closed_form(omega / line.c, m1, m2, l, line, th)
    return folded, closed


def _parallel_resistance(expr: ImpedanceExpr, omega: float) -> float:
    imm = eval_impedance(expr, omega)
    if imm.is_open:
        return math.inf
    z = imm.value()
    if z == 0:
        # A short absorbs nothing; its t = 0 kills the term anyway.
        return math.inf
    r_par, _ = decompose_parallel_rx(z)
    return r_par
