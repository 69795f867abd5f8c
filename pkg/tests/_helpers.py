"""Shared test oracles, independent of the library's evaluation paths."""

import math

from scipy.integrate import quad

from tlcasimir import (
    HBAR,
    K_B,
    Capacitor,
    Inductor,
    Open,
    Parallel,
    Resistor,
    Series,
    Short,
)

INF = math.inf


# ---------------------------------------------------------------------------
# Extended-real recursive impedance oracle (imaginary axis)
# ---------------------------------------------------------------------------

def impedance_extended_real(expr, xi: float) -> float:
    """Z(i*xi) on [0, inf] by direct extended-real recursion."""
    if isinstance(expr, Resistor):
        return expr.ohms
    if isinstance(expr, Inductor):
        return xi * expr.henries
    if isinstance(expr, Capacitor):
        return 1.0 / (xi * expr.farads)
    if isinstance(expr, Short):
        return 0.0
    if isinstance(expr, Open):
        return INF
    if isinstance(expr, Series):
        total = 0.0
        for child in expr.children:
            z = impedance_extended_real(child, xi)
            if math.isinf(z):
                return INF
            total += z
        return total
    if isinstance(expr, Parallel):
        admittance = 0.0
        for child in expr.children:
            z = impedance_extended_real(child, xi)
            if z == 0.0:
                return 0.0
            admittance += 0.0 if math.isinf(z) else 1.0 / z
        return INF if admittance == 0.0 else 1.0 / admittance
    raise TypeError(expr)


# ---------------------------------------------------------------------------
# Random passive trees (seeded numpy generator for bulk statistics)
# ---------------------------------------------------------------------------

def random_tree(rng, depth: int = 3, allow_degenerate: bool = True):
    """Random passive impedance tree with sane element values."""
    if depth <= 0 or rng.random() < 0.45:
        kinds = ["R", "L", "C"] + (["short", "open"] if allow_degenerate else [])
        kind = kinds[rng.integers(len(kinds))]
        if kind == "R":
            return Resistor(10.0 ** rng.uniform(-1, 4))
        if kind == "L":
            return Inductor(10.0 ** rng.uniform(-12, -4))
        if kind == "C":
            return Capacitor(10.0 ** rng.uniform(-15, -7))
        return Short() if kind == "short" else Open()
    children = tuple(
        random_tree(rng, depth - 1, allow_degenerate)
        for _ in range(rng.integers(2, 4))
    )
    return Series(children) if rng.random() < 0.5 else Parallel(children)


# ---------------------------------------------------------------------------
# Independent quadrature: trapezoid refinement with Richardson extrapolation
# ---------------------------------------------------------------------------

def romberg(f, a: float, b: float, max_level: int = 18, rel_tol: float = 1e-13) -> float:
    """Romberg integration on [a, b]; evaluates the endpoints."""
    h = b - a
    table = [[0.5 * h * (f(a) + f(b))]]
    n = 1
    for level in range(1, max_level + 1):
        n *= 2
        h *= 0.5
        midsum = sum(f(a + (2 * i - 1) * h) for i in range(1, n // 2 + 1))
        row = [0.5 * table[level - 1][0] + h * midsum]
        for j in range(1, level + 1):
            row.append(row[j - 1] + (row[j - 1] - table[level - 1][j - 1]) / (4**j - 1))
        table.append(row)
        if level > 3 and abs(table[level][level] - table[level - 1][level - 1]) < rel_tol * max(
            1.0, abs(table[level][level])
        ):
            break
    return table[-1][-1]


def force_normalized_oracle(p, zero_limit: float = 0.0, u_max: float = 40.0) -> float:
    """f/f0 by Romberg refinement of the rotated integrand.

    p(u) is the reflection product; zero_limit is the u -> 0+ value of the
    integrand (1/2 for a perfect-mirror pair, 0 when p(0) != 1).
    """

    def integrand(u: float) -> float:
        if u == 0.0:
            return zero_limit
        g = p(u) * math.exp(-2.0 * u)
        return u * g / (1.0 - g)

    return 24.0 / math.pi**2 * romberg(integrand, 0.0, u_max)


# ---------------------------------------------------------------------------
# Finite-temperature oracle: thermal mode sum for like perfect mirrors
# ---------------------------------------------------------------------------

def _abel_plana_like() -> float:
    def term(t: float) -> float:
        x = 2.0 * math.pi * t
        if x == 0.0:
            return 1.0 / (2.0 * math.pi)
        if x > 700.0:
            return t * math.exp(-x)
        return t / math.expm1(x)

    return -2.0 * quad(term, 0.0, math.inf, epsabs=1e-15, epsrel=1e-13)[0]


def _basel_constant() -> float:
    # pi^2/6, computed rather than cited
    def term(t: float) -> float:
        if t == 0.0:
            return 1.0
        if t > 700.0:
            return t * math.exp(-t)
        return t / math.expm1(t)

    return quad(term, 0.0, math.inf, epsabs=1e-15, epsrel=1e-13)[0]


def thermal_mode_sum_force(l: float, c: float, temperature: float) -> float:
    """Finite-T force between like perfect mirrors from mode thermodynamics.

    Interaction free energy = regularized zero-point part (Abel-Plana)
    plus the Bose-occupation sum over cavity modes n*pi/l minus its
    continuum reference; the attractive-positive force is its
    l-derivative, taken analytically term by term.
    """
    zero_point = -math.pi * HBAR * c * _abel_plana_like() / (2.0 * l * l)
    x = HBAR * math.pi * c / (l * K_B * temperature)
    occupation_sum = 0.0
    n = 1
    while True:
        term = n / math.expm1(x * n) if x * n < 700.0 else n * math.exp(-x * n)
        occupation_sum += term
        if term < 1e-18 * (1.0 + occupation_sum):
            break
        n += 1
        if n > 10**8:
            raise RuntimeError("thermal sum did not converge")
    thermal = (
        -(x * K_B * temperature / l) * occupation_sum
        + K_B * temperature * _basel_constant() / (x * l)
    )
    return zero_point + thermal
