"""Structured exceptions raised across the library.

Every exception that carries a diagnostic quantity exposes it as an
attribute so callers (and the service layer) can report it without
parsing messages.
"""

from __future__ import annotations


class DistmeasError(Exception):
    """Base class for all library errors."""


class ShapeMismatchError(DistmeasError):
    """Operands have incompatible shapes or dimensions."""

    def __init__(self, expected, actual, what: str = "operand"):
        self.expected = expected
        self.actual = actual
        self.what = what
        super().__init__(f"{what}: expected {expected}, got {actual}")


class DimensionCapError(DistmeasError):
    """A composite dimension exceeds the desk-scale cap."""

    def __init__(self, dim: int, cap: int):
        self.dim = dim
        self.cap = cap
        super().__init__(f"composite dimension {dim} exceeds the cap of {cap}")


class NonHermitianError(DistmeasError):
    """Input expected to be Hermitian is not; carries the measured asymmetry."""

    def __init__(self, asymmetry: float, tol: float):
        self.asymmetry = asymmetry
        self.tol = tol
        super().__init__(
            f"matrix is not Hermitian: asymmetry {asymmetry:.3e} exceeds {tol:.1e}"
        )


class NotOrthonormalError(DistmeasError):
    """Columns expected to be orthonormal are not; carries the Gram deviation."""

    def __init__(self, gram_deviation: float, tol: float):
        self.gram_deviation = gram_deviation
        self.tol = tol
        super().__init__(
            f"columns are not orthonormal: max Gram deviation {gram_deviation:.3e} "
            f"exceeds {tol:.1e}"
        )


class ZeroProbabilityError(DistmeasError):
    """An outcome below the probability floor was conditioned on."""

    def __init__(self, probability: float, floor: float):
        self.probability = probability
        self.floor = floor
        super().__init__(
            f"zero-probability condition: probability {probability:.3e} is below "
            f"the floor {floor:.1e}"
        )


class NotAMeasurementError(DistmeasError):
    """A coupling unitary violates the pointer-dynamics condition."""

    def __init__(self, residual: float, tol: float):
        self.residual = residual
        self.tol = tol
        super().__init__(
            f"not a measurement: dynamics residual {residual:.3e} exceeds {tol:.1e}"
        )


class TwinGroupingError(DistmeasError):
    """A grouping of Schmidt indices does not yield matched projector families."""

    def __init__(self, residual: float, tol: float):
        self.residual = residual
        self.tol = tol
        super().__init__(
            f"not a twin grouping: matching residual {residual:.3e} exceeds {tol:.1e}"
        )


class ScenarioInputError(DistmeasError):
    """A scenario is structurally valid JSON but semantically inconsistent."""
