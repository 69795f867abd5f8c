"""Force between a capacitor and an inductor terminating a line.

Scans the dimensionless element parameters u_C = l/(c Z0 C) and
u_L = l Z0/(c L).  Large u_C makes the capacitor look like an open
circuit, large u_L makes the inductor look like a short, and the force
surface interpolates between the attractive like-pair value f/f0 = +1
and the repulsive unlike-pair value f/f0 = -1/2.
"""

import numpy as np

from tlcasimir import Capacitor, Inductor, LineSpec, force_zero_temperature

LINE = LineSpec(z0=50.0, c=2.998e8)
L_SEP = 0.01  # meters


def capacitor_for(u_c: float) -> Capacitor:
    return Capacitor((L_SEP / LINE.c) / (LINE.z0 * u_c))


def inductor_for(u_l: float) -> Inductor:
    return Inductor((L_SEP / LINE.c) * LINE.z0 / u_l)


def force_surface(u_c_grid, u_l_grid) -> np.ndarray:
    surface = np.empty((len(u_l_grid), len(u_c_grid)))
    for i, u_l in enumerate(u_l_grid):
        for j, u_c in enumerate(u_c_grid):
            result = force_zero_temperature(
                capacitor_for(u_c), inductor_for(u_l), LINE, L_SEP
            )
            surface[i, j] = result.f_normalized
    return surface


def main():
    u_c_grid = np.logspace(-2, 3, 11)
    u_l_grid = np.logspace(-2, 3, 11)
    surface = force_surface(u_c_grid, u_l_grid)

    print("f/f0 over (u_C across, u_L down), f0 = pi hbar c/(24 l^2)")
    header = "u_L\\u_C " + " ".join(f"{u:8.0e}" for u in u_c_grid)
    print(header)
    for u_l, row in zip(u_l_grid, surface):
        print(f"{u_l:7.0e} " + " ".join(f"{v:+8.4f}" for v in row))

    print()
    print(f"corner u_C=u_L=1e3   : f/f0 = {surface[-1, -1]:+.4f}  (open vs short, -> -1/2)")
    print(f"corner u_C=1e-2,uL=1e3: f/f0 = {surface[-1, 0]:+.4f}  (short-like pair, -> +1, slow)")
    print(f"corner u_C=u_L=1e-2  : f/f0 = {surface[0, 0]:+.4f}  (short vs open-like, -> -1/2)")

    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        fig, ax = plt.subplots(figsize=(6, 5))
        mesh = ax.pcolormesh(u_c_grid, u_l_grid, surface, cmap="RdBu_r", vmin=-1, vmax=1)
        ax.set_xscale("log")
        ax.set_yscale("log")
        ax.set_xlabel("u_C")
        ax.set_ylabel("u_L")
        ax.set_title("f / f0 between capacitor and inductor")
        fig.colorbar(mesh, ax=ax)
        fig.tight_layout()
        fig.savefig("force_surface.png", dpi=150)
        print("\nwrote force_surface.png")
    except ImportError:
        pass


if __name__ == "__main__":
    main()
