"""Two derivations of the noise a dissipative element feeds into a line.

Route 1 (circuit): a resistor R with its Johnson-Nyquist current source,
solved through the Kirchhoff laws with the line replaced by its
characteristic impedance.

Route 2 (waves): a semi-infinite line of impedance R in a thermal state,
its free-field spectrum transmitted through the R -> Z0 junction.

The two spectra coincide for every (R, Z0, omega, T), which is what lets
the circuit picture replace field quantization entirely.
"""

import numpy as np

from tlcasimir import LineSpec, ThermalSpec, input_spectrum_line, input_spectrum_resistor

LINE = LineSpec(z0=50.0, c=2.998e8)


def main():
    omegas = np.logspace(6, 12, 7)
    print(f"{'T [K]':>8} {'R [ohm]':>9} {'omega':>10} {'circuit route':>15} {'wave route':>15} {'rel diff':>10}")
    worst = 0.0
    for temperature in (0.0, 4.2, 300.0):
        th = ThermalSpec(temperature)
        for r_ohms in (5.0, 50.0, 500.0):
            for omega in omegas:
                a = input_spectrum_resistor(r_ohms, LINE, float(omega), th).value
                b = input_spectrum_line(r_ohms, LINE, float(omega), th).value
                rel = abs(a - b) / a
                worst = max(worst, rel)
                if omega in (omegas[0], omegas[-1]):
                    print(f"{temperature:8.1f} {r_ohms:9.1f} {omega:10.1e} {a:15.6e} {b:15.6e} {rel:10.1e}")
    print(f"\nworst relative difference over the whole scan: {worst:.2e}")

    # matched termination maximizes the injected noise
    th = ThermalSpec(0.0)
    omega = 1e10
    values = [(r, input_spectrum_resistor(r, LINE, omega, th).value) for r in np.logspace(0, 4, 41)]
    best = max(values, key=lambda rv: rv[1])
    print(f"injection is maximal at R = {best[0]:.1f} ohm (line impedance {LINE.z0:.0f} ohm)")


if __name__ == "__main__":
    main()
