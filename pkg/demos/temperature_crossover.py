"""Force between perfect mirrors from zero temperature to the classical regime.

The discrete-frequency sum replaces the zero-temperature integral; its
spacing is set by beta hbar c / l.  Cold means many terms and the
zero-point result pi hbar c/(24 l^2); hot means only the half-weight
zero term survives and the force grows linearly as k_B T/(2 l).
"""

import numpy as np

from tlcasimir import (
    HBAR,
    K_B,
    LineSpec,
    Short,
    ThermalSpec,
    force_finite_temperature,
    force_zero_temperature,
)

LINE = LineSpec(z0=50.0, c=2.998e8)
L_SEP = 0.01


def main():
    cold = force_zero_temperature(Short(), Short(), LINE, L_SEP)
    print(f"T = 0 force: {cold.force_si:.6e} N  (f/f0 = {cold.f_normalized:.9f})")
    print()
    print(f"{'beta*hbar*c/l':>14} {'T [K]':>10} {'f [N]':>13} {'f/f(T=0)':>10} "
          f"{'k_B T/(2l) [N]':>15} {'terms':>6}")
    for beta_scale in np.logspace(2, -3, 11):
        temperature = HBAR * LINE.c / (L_SEP * K_B * beta_scale)
        warm = force_finite_temperature(Short(), Short(), LINE, L_SEP, ThermalSpec(temperature))
        classical = K_B * temperature / (2 * L_SEP)
        print(
            f"{beta_scale:14.0e} {temperature:10.2e} {warm.force_si:13.4e} "
            f"{warm.force_si / cold.force_si:10.4f} {classical:15.4e} "
            f"{warm.diagnostics['matsubara_terms']:6d}"
        )
    print()
    print("cold end: ratio -> 1 (zero-point value); hot end: force -> k_B T/(2l)")


if __name__ == "__main__":
    main()
