"""Exception types shared across the package."""


class NetlistError(ValueError):
    """Netlist text failed to parse.

    Carries the byte offset of the failure and the set of tokens that
    would have been accepted there.
    """

    def __init__(self, message: str, offset: int, expected: set[str] | None = None):
        self.offset = offset
        self.expected = frozenset(expected or ())
        detail = f"{message} at offset {offset}"
        if self.expected:
            detail += " (expected: " + ", ".join(sorted(self.expected)) + ")"
        super().__init__(detail)


class PassivityError(ValueError):
    """An impedance with negative real part (non-passive) was supplied."""


class ResonanceError(ArithmeticError):
    """Cavity denominator 1 - r1*r2*e^(2ikl) vanished (undamped resonance)."""


class LossyMirrorError(ValueError):
    """A lossy mirror was passed to a lossless-only operation."""


class QuadratureError(RuntimeError):
    """Numerical integration failed (subdivision limit, non-finite sample)."""


class InvariantViolationError(RuntimeError):
    """A quantity that is provably constrained for passive inputs broke its bound."""
