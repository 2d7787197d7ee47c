"""Scenario schema: the JSON contract shared by files, the CLI, and the service.

A scenario pins everything needed to reproduce a batch of checks: a 64-bit
seed, the three dimensions (remote subsystem, nearby subsystem, pointer),
specs for the state, the measured observable, and the measurement models,
an optional grouping of Schmidt indices for twin checks, the remote
evolution switch, the list of check ids, and a tolerance.
"""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .linalg import DIM_CAP
from .theorems import CHECK_ALIASES, CHECK_IDS


class Dims(BaseModel):
    """Subsystem and pointer dimensions; the product is capped."""

    model_config = ConfigDict(extra="forbid")

    a1: int = Field(ge=1, description="dimension of the remote subsystem")
    a2: int = Field(ge=1, description="dimension of the nearby (measured) subsystem")
    pointer: int = Field(ge=1, description="dimension of the pointer (instrument)")

    @model_validator(mode="after")
    def _check_cap(self):
        product = self.a1 * self.a2 * self.pointer
        if product > DIM_CAP:
            raise ValueError(f"dims: product {product} exceeds the cap of {DIM_CAP}")
        return self


class StateSpec(BaseModel):
    """How to obtain the bipartite state.

    ``random`` draws Gaussian amplitudes from the scenario seed;
    ``random_schmidt`` draws random bases with the given coefficients
    (positive, squares summing to 1); ``explicit`` takes amplitudes as
    ``[re, im]`` pairs under the global index convention.
    """

    model_config = ConfigDict(extra="forbid")

    kind: Literal["random", "random_schmidt", "explicit"] = "random"
    coefficients: list[float] | None = None
    amplitudes: list[list[float]] | None = None

    @model_validator(mode="after")
    def _check_fields(self):
        if self.kind == "random_schmidt" and not self.coefficients:
            raise ValueError("state.coefficients is required for kind 'random_schmidt'")
        if self.kind == "explicit" and not self.amplitudes:
            raise ValueError("state.amplitudes is required for kind 'explicit'")
        if self.amplitudes is not None and any(len(p) != 2 for p in self.amplitudes):
            raise ValueError("state.amplitudes entries must be [re, im] pairs")
        return self


class MatrixSpec(BaseModel):
    """Dense complex matrix as row-major ``[re, im]`` pairs."""

    model_config = ConfigDict(extra="forbid")

    rows: int = Field(ge=1)
    cols: int = Field(ge=1)
    entries: list[list[float]]

    @model_validator(mode="after")
    def _check_entries(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"entries: expected {self.rows * self.cols} pairs, got {len(self.entries)}"
            )
        if any(len(p) != 2 for p in self.entries):
            raise ValueError("entries must be [re, im] pairs")
        return self


class ObservableSpec(BaseModel):
    """Measured observable on the nearby subsystem."""

    model_config = ConfigDict(extra="forbid")

    type: Literal["random_degenerate", "explicit"]
    multiplicities: list[int] | None = None
    eigenvalues: list[float] | None = None
    projectors: list[MatrixSpec] | None = None

    @model_validator(mode="after")
    def _check_fields(self):
        if self.type == "random_degenerate":
            if not self.multiplicities:
                raise ValueError("observable.multiplicities is required for 'random_degenerate'")
            if any(m < 1 for m in self.multiplicities):
                raise ValueError("observable.multiplicities must be >= 1")
        else:
            if not self.eigenvalues or not self.projectors:
                raise ValueError(
                    "observable.eigenvalues and observable.projectors are required for 'explicit'"
                )
            if len(self.eigenvalues) != len(self.projectors):
                raise ValueError(
                    "observable: eigenvalues and projectors must have the same length"
                )
        return self


class MeasurementSpec(BaseModel):
    """Shape of one measurement model.

    ``ideal`` uses the full pointer dimension with rank-one outcome sectors
    (surplus absorbed by the last outcome).  ``intricate`` needs explicit
    per-outcome pointer sector dimensions and applies random feedback and
    in-sector scrambling unless disabled.
    """

    model_config = ConfigDict(extra="forbid")

    kind: Literal["ideal", "intricate"]
    pointer_sector_dims: list[int] | None = None
    feedback: Literal["random", "none"] = "random"
    scramble: Literal["random", "none"] = "random"

    @model_validator(mode="after")
    def _check_fields(self):
        if self.kind == "intricate":
            if not self.pointer_sector_dims:
                raise ValueError(
                    "measurement.pointer_sector_dims is required for kind 'intricate'"
                )
            if any(s < 1 for s in self.pointer_sector_dims):
                raise ValueError("measurement.pointer_sector_dims must be >= 1")
        return self


class Scenario(BaseModel):
    """One reproducible batch of checks."""

    model_config = ConfigDict(extra="forbid")

    seed: int = Field(ge=0, lt=2**64)
    dims: Dims
    state: StateSpec = Field(default_factory=StateSpec)
    observable: ObservableSpec
    measurements: list[MeasurementSpec] = Field(
        default_factory=lambda: [MeasurementSpec(kind="ideal")], min_length=1
    )
    twin_grouping: list[list[int]] | None = None
    remote_evolution: Literal["identity", "random"] = "identity"
    checks: list[str] = Field(min_length=1)
    tolerance: float = Field(default=1e-10, gt=0)
    negative_control: bool = False

    @model_validator(mode="after")
    def _cross_validate(self):
        resolved = []
        for check in self.checks:
            canonical = CHECK_ALIASES.get(check, check)
            if canonical not in CHECK_IDS:
                raise ValueError(
                    f"checks: unknown check id {check!r}; known ids are {sorted(CHECK_IDS)}"
                )
            resolved.append(canonical)
        object.__setattr__(self, "checks", resolved)

        a2 = self.dims.a2
        obs = self.observable
        if obs.type == "random_degenerate":
            total = sum(obs.multiplicities)
            if total != a2:
                raise ValueError(
                    f"observable.multiplicities: sum {total} must equal dims.a2 = {a2}"
                )
        else:
            for i, proj in enumerate(obs.projectors):
                if proj.rows != a2 or proj.cols != a2:
                    raise ValueError(
                        f"observable.projectors[{i}]: expected {a2}x{a2}, "
                        f"got {proj.rows}x{proj.cols}"
                    )

        if self.state.kind == "explicit":
            expected = self.dims.a1 * a2
            if len(self.state.amplitudes) != expected:
                raise ValueError(
                    f"state.amplitudes: expected {expected} pairs for dims "
                    f"{self.dims.a1}x{a2}, got {len(self.state.amplitudes)}"
                )
        if self.state.kind == "random_schmidt":
            if len(self.state.coefficients) > min(self.dims.a1, a2):
                raise ValueError(
                    "state.coefficients: at most min(a1, a2) coefficients are possible"
                )

        for i, ms in enumerate(self.measurements):
            if ms.kind == "intricate":
                total = sum(ms.pointer_sector_dims)
                if total != self.dims.pointer:
                    raise ValueError(
                        f"measurements[{i}].pointer_sector_dims: sum {total} must equal "
                        f"dims.pointer = {self.dims.pointer}"
                    )

        if self.twin_grouping is not None:
            flat = [i for g in self.twin_grouping for i in g]
            if any(i < 0 for i in flat):
                raise ValueError("twin_grouping: indices must be >= 0")
            if len(set(flat)) != len(flat):
                raise ValueError("twin_grouping: groups must be disjoint")
            if any(not g for g in self.twin_grouping):
                raise ValueError("twin_grouping: groups must be non-empty")

        if self.negative_control and len(self.checks) != 1:
            raise ValueError("negative_control scenarios must request exactly one check")
        return self


class SweepRequest(BaseModel):
    """Grid of dimensions with a count of seeded scenarios per combination."""

    model_config = ConfigDict(extra="forbid")

    a1: list[int] = Field(min_length=1)
    a2: list[int] = Field(min_length=1)
    pointer: list[int] = Field(min_length=1)
    count: int = Field(default=10, ge=0)
    seed: int = Field(default=0, ge=0, lt=2**64)
    checks: list[str] = Field(default_factory=lambda: list(CHECK_IDS), min_length=1)
    tolerance: float = Field(default=1e-10, gt=0)
    negative_controls: bool = False

    @model_validator(mode="after")
    def _check_values(self):
        for name, values in (("a1", self.a1), ("a2", self.a2), ("pointer", self.pointer)):
            if any(v < 1 for v in values):
                raise ValueError(f"{name}: dimensions must be >= 1")
        resolved = []
        for check in self.checks:
            canonical = CHECK_ALIASES.get(check, check)
            if canonical not in CHECK_IDS:
                raise ValueError(f"checks: unknown check id {check!r}")
            resolved.append(canonical)
        object.__setattr__(self, "checks", resolved)
        return self
