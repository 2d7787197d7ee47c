"""Small report value type shared by the verifier functions."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class ResidualReport:
    """Labeled residuals measured against a single tolerance.

    ``passed`` is true exactly when every residual is below ``tolerance``;
    an empty residual set passes vacuously.
    """

    residuals: dict[str, float]
    tolerance: float

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values(), default=0.0)

    @property
    def passed(self) -> bool:
        return self.max_residual < self.tolerance

    def worst(self) -> tuple[str, float] | None:
        """Label and value of the largest residual, or None if empty."""
        if not self.residuals:
            return None
        label = max(self.residuals, key=self.residuals.__getitem__)
        return label, self.residuals[label]
