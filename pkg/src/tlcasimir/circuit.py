"""Passive lumped-element impedance networks at complex frequency.

Impedances are expression trees of R/L/C/short/open under series and
parallel composition.  Evaluation uses a projective (numerator,
denominator) representation so that shorts (0) and opens (inf) are exact
values rather than float infinities.

Frequency convention is e^(-i omega t) throughout:

    Z_R = R,   Z_L = -i*omega*L,   Z_C = i/(omega*C)

so that on the positive imaginary axis omega = i*xi (xi > 0) every
passive tree evaluates to a nonnegative extended real:

    Z_L(i xi) = xi*L,   Z_C(i xi) = 1/(xi*C)
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvariantViolationError, NetlistError, PassivityError

__all__ = [
    "Resistor",
    "Inductor",
    "Capacitor",
    "Short",
    "Open",
    "Series",
    "Parallel",
    "ImpedanceExpr",
    "ComplexImmittance",
    "LineSpec",
    "parse_netlist",
    "format_netlist",
    "eval_impedance",
    "eval_impedance_imaginary",
    "decompose_parallel_rx",
]

# Relative threshold below which a value evaluated on the imaginary axis
# is considered numerically real and clamped onto the real axis.
IMAG_CLAMP_REL = 1e-13


# ---------------------------------------------------------------------------
# Expression tree
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Resistor:
    ohms: float

    def __post_init__(self):
        if not (math.isfinite(self.ohms) and self.ohms >= 0):
            raise ValueError(f"resistance must be finite and >= 0, got {self.ohms}")


@dataclass(frozen=True)
class Inductor:
    henries: float

    def __post_init__(self):
        if not (math.isfinite(self.henries) and self.henries >= 0):
            raise ValueError(f"inductance must be finite and >= 0, got {self.henries}")


@dataclass(frozen=True)
class Capacitor:
    farads: float

    def __post_init__(self):
        if not (math.isfinite(self.farads) and self.farads > 0):
            raise ValueError(f"capacitance must be finite and > 0, got {self.farads}")


@dataclass(frozen=True)
class Short:
    pass


@dataclass(frozen=True)
class Open:
    pass


@dataclass(frozen=True)
class Series:
    children: tuple

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))
        if len(self.children) < 2:
            raise ValueError("series() requires at least two children")


@dataclass(frozen=True)
class Parallel:
    children: tuple

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))
        if len(self.children) < 2:
            raise ValueError("parallel() requires at least two children")


ImpedanceExpr = Resistor | Inductor | Capacitor | Short | Open | Series | Parallel


# ---------------------------------------------------------------------------
# Projective immittance
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ComplexImmittance:
    """Impedance as a projective pair: value = num/den.

    Open circuit is (1, 0) and short is (0, 1); both are exact, no
    division by zero ever happens.  (num, den) == (0, 0) is invalid.
    """

    num: complex
    den: complex

    def __post_init__(self):
        if self.num == 0 and self.den == 0:
            raise ValueError("immittance (0, 0) is undefined")

    @property
    def is_open(self) -> bool:
        return self.den == 0

    @property
    def is_short(self) -> bool:
        return self.num == 0

    def value(self) -> complex:
        """Plain complex impedance; complex(inf) for an open circuit."""
        if self.den == 0:
            return complex(math.inf, 0.0)
        return self.num / self.den

    def _normalized(self) -> "ComplexImmittance":
        if self.num == 0:
            return ComplexImmittance(0j, 1 + 0j)
        if self.den == 0:
            return ComplexImmittance(1 + 0j, 0j)
        scale = max(abs(self.num), abs(self.den))
        return ComplexImmittance(self.num / scale, self.den / scale)


OPEN_IMMITTANCE = ComplexImmittance(1 + 0j, 0j)
SHORT_IMMITTANCE = ComplexImmittance(0j, 1 + 0j)


def _series_pair(a: ComplexImmittance, b: ComplexImmittance) -> ComplexImmittance:
    # Series with an exact open is open; the generic formula would hit (0, 0)
    # when both sides are open.
    if a.is_open or b.is_open:
        return OPEN_IMMITTANCE
    return ComplexImmittance(a.num * b.den + b.num * a.den, a.den * b.den)._normalized()


def _parallel_pair(a: ComplexImmittance, b: ComplexImmittance) -> ComplexImmittance:
    if a.is_short or b.is_short:
        return SHORT_IMMITTANCE
    return ComplexImmittance(a.num * b.num, a.num * b.den + b.num * a.den)._normalized()


def eval_impedance(expr: ImpedanceExpr, omega: complex) -> ComplexImmittance:
    """Evaluate the tree at complex frequency omega (rad/s), projectively.

    Series sums impedances, parallel sums admittances.  omega = 0 with a
    capacitor yields the projective open (1, 0); no NaN can escape.
    """
    omega = complex(omega)
    if not (math.isfinite(omega.real) and math.isfinite(omega.imag)):
        raise ValueError(f"frequency must be finite, got {omega}")

    if isinstance(expr, Resistor):
        return ComplexImmittance(complex(expr.ohms), 1 + 0j)._normalized()
    if isinstance(expr, Inductor):
        return ComplexImmittance(-1j * omega * expr.henries, 1 + 0j)._normalized()
    if isinstance(expr, Capacitor):
        return ComplexImmittance(1j, omega * expr.farads)._normalized()
    if isinstance(expr, Short):
        return SHORT_IMMITTANCE
    if isinstance(expr, Open):
        return OPEN_IMMITTANCE
    if isinstance(expr, Series):
        acc = eval_impedance(expr.children[0], omega)
        for child in expr.children[1:]:
            acc = _series_pair(acc, eval_impedance(child, omega))
        return acc
    if isinstance(expr, Parallel):
        acc = eval_impedance(expr.children[0], omega)
        for child in expr.children[1:]:
            acc = _parallel_pair(acc, eval_impedance(child, omega))
        return acc
    raise TypeError(f"not an impedance expression: {expr!r}")


def eval_impedance_imaginary(expr: ImpedanceExpr, xi: float) -> float:
    """Impedance at omega = i*xi, xi > 0, as an extended nonnegative real.

    Passive trees are real on the positive imaginary axis; the residual
    imaginary part (float noise) is checked against IMAG_CLAMP_REL and
    clamped away.  Returns math.inf for an open.
    """
    if not (xi > 0 and math.isfinite(xi)):
        raise ValueError(f"xi must be finite and > 0, got {xi}")
    imm = eval_impedance(expr, 1j * xi)
    if imm.is_open:
        return math.inf
    z = imm.value()
    if abs(z.imag) > IMAG_CLAMP_REL * max(1.0, abs(z)):
        raise InvariantViolationError(
            f"impedance not numerically real on the imaginary axis: {z}"
        )
    return max(z.real, 0.0)


def decompose_parallel_rx(z: complex) -> tuple[float, float]:
    """Split Z into parallel resistance R and reactance X with Z = iXR/(R+iX).

    R = |Z|^2/Re[Z], X = |Z|^2/Im[Z].  Purely real Z gives (Z, inf);
    purely imaginary Z gives (inf, Im[Z]).  Re[Z] < 0 is rejected.
    """
    z = complex(z)
    if z.real < 0:
        # rounding noise on a nearly reactive Z is clamped, true gain rejected
        if abs(z.real) > IMAG_CLAMP_REL * abs(z):
            raise PassivityError(f"Re[Z] must be >= 0, got {z}")
        z = complex(0.0, z.imag)
    mag2 = z.real * z.real + z.imag * z.imag
    if z.imag == 0:
        return (z.real, math.inf)
    if z.real == 0:
        return (math.inf, z.imag)
    return (mag2 / z.real, mag2 / z.imag)


# ---------------------------------------------------------------------------
# Line parameters
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LineSpec:
    """Transmission-line parameters: characteristic impedance and speed.

    Equivalent per-unit-length form: z0 = sqrt(L'/C'), c = 1/sqrt(L'C').
    """

    z0: float
    c: float

    def __post_init__(self):
        if not (math.isfinite(self.z0) and self.z0 > 0):
            raise ValueError(f"z0 must be finite and > 0, got {self.z0}")
        if not (math.isfinite(self.c) and self.c > 0):
            raise ValueError(f"c must be finite and > 0, got {self.c}")

    @classmethod
    def from_per_length(cls, inductance_per_m: float, capacitance_per_m: float) -> "LineSpec":
        if inductance_per_m <= 0 or capacitance_per_m <= 0:
            raise ValueError("per-unit-length parameters must be > 0")
        return cls(
            z0=math.sqrt(inductance_per_m / capacitance_per_m),
            c=1.0 / math.sqrt(inductance_per_m * capacitance_per_m),
        )

    @property
    def inductance_per_m(self) -> float:
        return self.z0 / self.c

    @property
    def capacitance_per_m(self) -> float:
        return 1.0 / (self.z0 * self.c)


# ---------------------------------------------------------------------------
# Netlist parser
# ---------------------------------------------------------------------------
#
# expr := elem | "series" "(" expr ("," expr)+ ")"
#              | "parallel" "(" expr ("," expr)+ ")"
# elem := "R(" float ")" | "L(" float ")" | "C(" float ")" | "short" | "open"
#
# Keywords are case-insensitive, whitespace is insignificant, floats are
# plain SI-unit decimal/scientific literals (no unit suffixes).

_NUMBER_CHARS = set("0123456789+-.eE")


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, char: str):
        self.skip_ws()
        if self.pos >= len(self.text) or self.text[self.pos] != char:
            raise NetlistError("syntax error", self.pos, {repr(char)})
        self.pos += 1

    def word(self) -> tuple[str, int]:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isalpha():
            self.pos += 1
        return self.text[start:self.pos].lower(), start

    def number(self) -> float:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] in _NUMBER_CHARS:
            # '+'/'-' only at the start or right after an exponent marker
            ch = self.text[self.pos]
            if ch in "+-" and self.pos > start and self.text[self.pos - 1] not in "eE":
                break
            self.pos += 1
        token = self.text[start:self.pos]
        try:
            value = float(token)
        except ValueError:
            raise NetlistError("expected a number", start, {"float literal"}) from None
        return value


def parse_netlist(text: str) -> ImpedanceExpr:
    """Parse a netlist string into an impedance expression tree."""
    scanner = _Scanner(text)
    expr = _parse_expr(scanner)
    scanner.skip_ws()
    if scanner.pos != len(scanner.text):
        raise NetlistError("trailing input", scanner.pos, {"end of input"})
    return expr


_EXPECTED_EXPR = {"R(", "L(", "C(", "short", "open", "series(", "parallel("}


def _parse_expr(scanner: _Scanner) -> ImpedanceExpr:
    word, start = scanner.word()
    if word == "short":
        return Short()
    if word == "open":
        return Open()
    if word in ("r", "l", "c"):
        scanner.expect("(")
        value = scanner.number()
        if value < 0:
            raise NetlistError(f"negative element value {value}", start, set())
        scanner.expect(")")
        try:
            if word == "r":
                return Resistor(value)
            if word == "l":
                return Inductor(value)
            return Capacitor(value)
        except ValueError as exc:
            raise NetlistError(str(exc), start, set()) from None
    if word in ("series", "parallel"):
        scanner.expect("(")
        children = [_parse_expr(scanner)]
        while scanner.peek() == ",":
            scanner.expect(",")
            children.append(_parse_expr(scanner))
        scanner.expect(")")
        if len(children) < 2:
            raise NetlistError(f"{word}() needs at least 2 elements", start, set())
        return Series(tuple(children)) if word == "series" else Parallel(tuple(children))
    raise NetlistError("syntax error", start, _EXPECTED_EXPR)


def format_netlist(expr: ImpedanceExpr) -> str:
    """Canonical netlist text; parse(format_netlist(e)) reproduces e exactly."""
    if isinstance(expr, Resistor):
        return f"R({expr.ohms!r})"
    if isinstance(expr, Inductor):
        return f"L({expr.henries!r})"
    if isinstance(expr, Capacitor):
        return f"C({expr.farads!r})"
    if isinstance(expr, Short):
        return "short"
    if isinstance(expr, Open):
        return "open"
    if isinstance(expr, Series):
        return "series(" + ", ".join(format_netlist(c) for c in expr.children) + ")"
    if isinstance(expr, Parallel):
        return "parallel(" + ", ".join(format_netlist(c) for c in expr.children) + ")"
    raise TypeError(f"not an impedance expression: {expr!r}")
