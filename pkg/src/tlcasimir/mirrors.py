"""Reflection and transmission of lumped impedances on a transmission line.

A *terminating* impedance closes the end of a line:

    r = (Z - Z0)/(Z + Z0),       t = 1 + r

An *embedded* impedance sits between two semi-infinite line sections and
sees the far side's characteristic impedance in parallel:

    r = (Z||Z0 - Z0)/(Z||Z0 + Z0) = -Z0/(2Z + Z0),   t = 1 + r

Both are computed projectively so Z = 0 and Z = inf give exact r = -1/+1.
For a lossy terminating impedance the energy balance is

    1 = |r|^2 + (Z0/R)|t|^2

with R the parallel-resistance part of Z (decompose_parallel_rx); the
lossless limit R -> inf recovers |r| = 1.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .circuit import (
    ImpedanceExpr,
    LineSpec,
    decompose_parallel_rx,
    eval_impedance,
)
from .errors import InvariantViolationError

__all__ = [
    "MirrorFlavor",
    "Mirror",
    "reflect_termination",
    "reflect_embedded",
    "reflection_imaginary_axis",
    "energy_identity_residual",
]


class MirrorFlavor(enum.Enum):
    TERMINATING = "terminating"
    EMBEDDED = "embedded"


@dataclass(frozen=True)
class Mirror:
    """Frequency-local reflection/transmission pair at a given omega."""

    r: complex
    t: complex
    flavor: MirrorFlavor
    omega: complex


def reflect_termination(expr: ImpedanceExpr, line: LineSpec, omega: complex) -> Mirror:
    """Mirror for an impedance that terminates the line, r = (Z-Z0)/(Z+Z0)."""
    imm = eval_impedance(expr, omega)
    denom = imm.num + line.z0 * imm.den
    if denom == 0:
        # Z == -Z0 is impossible for a passive tree.
        raise InvariantViolationError(f"reflection pole: Z = -Z0 at omega={omega}")
    r = (imm.num - line.z0 * imm.den) / denom
    return Mirror(r=r, t=1 + r, flavor=MirrorFlavor.TERMINATING, omega=complex(omega))


def reflect_embedded(expr: ImpedanceExpr, line: LineSpec, omega: complex) -> Mirror:
    """Mirror for an impedance embedded in the line, r from Z||Z0."""
    imm = eval_impedance(expr, omega)
    denom = 2 * imm.num + line.z0 * imm.den
    if denom == 0:
        raise InvariantViolationError(f"reflection pole: Z||Z0 = -Z0 at omega={omega}")
    r = -line.z0 * imm.den / denom
    return Mirror(r=r, t=1 + r, flavor=MirrorFlavor.EMBEDDED, omega=complex(omega))


def reflection_imaginary_axis(
    expr: ImpedanceExpr,
    line: LineSpec,
    xi: float,
    flavor: MirrorFlavor = MirrorFlavor.TERMINATING,
) -> float:
    """Real reflection coefficient at omega = i*xi, xi >= 0.

    xi = 0 is the projective limit (capacitor -> +1, inductor -> -1),
    which is what integrands approach at the low-frequency endpoint.
    Returns a value in [-1, 1]; the float-noise imaginary residue is
    checked and dropped.
    """
    if xi < 0 or not math.isfinite(xi):
        raise ValueError(f"xi must be finite and >= 0, got {xi}")
    if flavor is MirrorFlavor.TERMINATING:
        mirror = reflect_termination(expr, line, 1j * xi)
    else:
        mirror = reflect_embedded(expr, line, 1j * xi)
    r = mirror.r
    if abs(r.imag) > 1e-13 * max(1.0, abs(r)):
        raise InvariantViolationError(f"r(i xi) not numerically real: {r}")
    return min(1.0, max(-1.0, r.real))


def energy_identity_residual(expr: ImpedanceExpr, line: LineSpec, omega: float) -> float:
    """|1 - |r|^2 - (Z0/R)|t|^2| for the terminating mirror at real omega.

    R is the parallel-resistance part of Z(omega); the lossless limit
    R = inf (and the short, where t = 0) contribute zero to the second
    term.  Passive inputs keep this residual at float-rounding level.
    """
    mirror = reflect_termination(expr, line, omega)
    imm = eval_impedance(expr, omega)
    t2 = abs(mirror.t) ** 2
    if t2 == 0.0:
        absorbed = 0.0
    else:
        r_par, _ = decompose_parallel_rx(imm.value())
        absorbed = 0.0 if math.isinf(r_par) else (line.z0 / r_par) * t2
    return abs(1.0 - abs(mirror.r) ** 2 - absorbed)
