"""When is the force repulsive?

On the imaginary frequency axis both reflections are real, the force
integrand's denominator is positive, and the sign at each u is just the
sign of r1(iu) r2(iu) -- equivalently, whether the two impedances
bracket the line impedance (Z1 < Z0 < Z2 or the reverse).

A capacitor in series with a resistor reflects with
r(iu) = ((R/Z0 - 1)u + u_C)/((R/Z0 + 1)u + u_C), which changes sign at
u = u_C/(1 - R/Z0) when R < Z0.  Against a short circuit this splits the
spectrum into attractive and repulsive bands; the resistor value decides
which band wins.
"""

import numpy as np

from tlcasimir import (
    Capacitor,
    LineSpec,
    Resistor,
    Series,
    Short,
    force_zero_temperature,
    sign_profile,
)

LINE = LineSpec(z0=50.0, c=2.998e8)
L_SEP = 0.01
U_C = 1.0


def rc_termination(r_over_z0: float) -> Series:
    capacitance = (L_SEP / LINE.c) / (LINE.z0 * U_C)
    return Series((Resistor(r_over_z0 * LINE.z0), Capacitor(capacitance)))


def main():
    r_over_z0 = 0.5
    z1 = rc_termination(r_over_z0)
    flip = U_C / (1 - r_over_z0)
    print(f"series RC with R/Z0 = {r_over_z0}, u_C = {U_C}: predicted sign flip at u = {flip}")
    print(f"{'u':>8} {'r1(iu)':>9} {'r2(iu)':>7} {'sign':>5} {'Z1<Z0<Z2 or rev':>16}")
    for sample in sign_profile(z1, Short(), LINE, L_SEP, np.logspace(-1, 1, 9)):
        print(
            f"{sample.u:8.3f} {sample.r1:+9.4f} {sample.r2:+7.1f} "
            f"{sample.product_sign:+5d} {str(sample.impedances_bracket_z0):>16}"
        )

    print("\nnet force vs resistor value (z2 = short):")
    print(f"{'R/Z0':>6} {'f/f0':>10}")
    for rho in (0.0, 0.25, 0.5, 1.0, 2.0, 5.0):
        result = force_zero_temperature(rc_termination(rho), Short(), LINE, L_SEP)
        print(f"{rho:6.2f} {result.f_normalized:+10.5f}")
    print("\nlarger R pushes r1(iu) positive everywhere: the attraction of")
    print("a matched-ish load beats the low-frequency repulsion of the capacitor")


if __name__ == "__main__":
    main()
