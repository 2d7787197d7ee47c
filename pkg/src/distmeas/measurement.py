"""Unitary measurement models and their application to bipartite states.

A measurement couples an object to a pointer (instrument) through a
unitary on object (x) pointer.  The defining property, checked by
:func:`verify_dynamical`, is that for every object vector the coupling
sends the ready sector into the pointer sector of the same outcome index:
``(I (x) F_k) U (|a> (x) |ready>) = U (E_k |a>) (x) |ready>``.  That is
equivalent to the calibration property checked by
:func:`verify_calibration`: an object eigenstate of outcome k ends with
pointer value k with certainty.

Two constructors are provided.  :func:`build_ideal` is the canonical
premeasurement.  :func:`build_intricate` post-composes it with
outcome-conditioned object unitaries ("feedback") and with unitaries
acting inside each pointer sector, producing couplings that disturb the
object arbitrarily while remaining exact measurements of the same
observable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import linalg
from .errors import NotAMeasurementError, ShapeMismatchError, ZeroProbabilityError
from .observables import SpectralForm
from .reports import ResidualReport
from .states import (
    PROBABILITY_FLOOR,
    BipartiteState,
    DensityOperator,
)

UNITARITY_TOL = 1e-10
GATE_TOL = 1e-8  # looser than construction-time 1e-10: refuse only broken models


@dataclass(frozen=True)
class MeasurementModel:
    """Coupling unitary with its object observable and pointer family.

    The composite space is object (x) pointer under the global index
    convention (object factor slowest).  The pointer family must have at
    least as many outcomes as the measured observable; outcome k of the
    observable corresponds to pointer outcome k.
    """

    object_dim: int
    pointer_dim: int
    ready_state: np.ndarray
    pointer: SpectralForm
    measured: SpectralForm
    unitary: np.ndarray
    kind: str = "custom"

    def __post_init__(self):
        ready = np.asarray(self.ready_state, dtype=complex).reshape(-1)
        object.__setattr__(self, "ready_state", ready)
        if self.measured.dim != self.object_dim:
            raise ShapeMismatchError(self.object_dim, self.measured.dim, what="measured observable dimension")
        if self.pointer.dim != self.pointer_dim:
            raise ShapeMismatchError(self.pointer_dim, self.pointer.dim, what="pointer observable dimension")
        if ready.size != self.pointer_dim:
            raise ShapeMismatchError(self.pointer_dim, ready.size, what="ready-state dimension")
        if abs(float(np.linalg.norm(ready)) - 1.0) > UNITARITY_TOL:
            raise ValueError("ready state must be a unit vector")
        if self.pointer.n_outcomes < self.measured.n_outcomes:
            raise ValueError(
                f"pointer family has {self.pointer.n_outcomes} outcomes but the measured "
                f"observable has {self.measured.n_outcomes}"
            )
        u = linalg.as_complex_matrix(self.unitary, "coupling unitary")
        total = self.object_dim * self.pointer_dim
        if u.shape != (total, total):
            raise ShapeMismatchError((total, total), u.shape, what="coupling unitary")
        dev = float(np.linalg.norm(u.conj().T @ u - np.eye(total)))
        if dev > UNITARITY_TOL:
            raise ValueError(f"coupling matrix deviates from unitarity by {dev:.3e}")
        object.__setattr__(self, "unitary", u)

    @property
    def total_dim(self) -> int:
        return self.object_dim * self.pointer_dim


@dataclass(frozen=True)
class SubsystemMeasurementOutcome:
    """Everything a subsystem measurement produces about the distant half.

    ``selective_distant_states[k]`` is None when outcome k has probability
    below the floor.  ``final_tripartite_state`` holds the post-coupling
    amplitudes on remote (x) nearby (x) pointer with ``dims`` recording the
    three factor dimensions.
    """

    probabilities: np.ndarray
    selective_distant_states: tuple[DensityOperator | None, ...]
    nonselective_distant_state: DensityOperator
    final_tripartite_state: np.ndarray
    dims: tuple[int, int, int]

    def __post_init__(self):
        probs = np.asarray(self.probabilities, dtype=float).reshape(-1)
        object.__setattr__(self, "probabilities", probs)
        if abs(float(np.sum(probs)) - 1.0) > 1e-10:
            raise ValueError(f"probabilities sum to {float(np.sum(probs))!r}")
        if np.any(probs < -1e-12) or np.any(probs > 1 + 1e-12):
            raise ValueError(f"probabilities out of range: {probs}")


def _ready_embedding(object_dim: int, pointer_dim: int, ready: np.ndarray) -> np.ndarray:
    """Isometry mapping object vectors into the ready sector."""
    return np.kron(np.eye(object_dim, dtype=complex), ready.reshape(-1, 1))


def _ready_sector_targets(measured: SpectralForm, chis: Sequence[np.ndarray]) -> np.ndarray:
    """Columns ``sum_k (E_k e_j) (x) chi_k`` defining the coupling on the ready sector."""
    d = measured.dim
    m = chis[0].size
    targets = np.zeros((d * m, d), dtype=complex)
    for proj, chi in zip(measured.projectors, chis):
        targets += np.kron(proj, chi.reshape(-1, 1))
    return targets


def _coupling_from_targets(targets: np.ndarray, embedding: np.ndarray) -> np.ndarray:
    u_out = linalg.complete_to_unitary(targets)
    u_in = linalg.complete_to_unitary(embedding)
    return u_out @ u_in.conj().T


def _sector_pointer_family(sector_dims: Sequence[int]) -> tuple[tuple[np.ndarray, ...], list[int]]:
    """Consecutive-block pointer projectors and the block offsets."""
    m = sum(sector_dims)
    projectors = []
    offsets = []
    start = 0
    for sd in sector_dims:
        p = np.zeros((m, m), dtype=complex)
        p[start:start + sd, start:start + sd] = np.eye(sd)
        projectors.append(p)
        offsets.append(start)
        start += sd
    return tuple(projectors), offsets


def build_ideal(measured: SpectralForm, pointer_dim: int) -> MeasurementModel:
    """Canonical premeasurement of an observable.

    On the ready sector the coupling acts as ``|a> (x) |ready> ->
    sum_k (E_k |a>) (x) |chi_k>`` with the pointer states ``chi_k`` taken
    from the standard basis and the ready state ``chi_0``; the action is
    extended to a full unitary deterministically.  Pointer outcome k gets a
    rank-one projector, except the last outcome, which absorbs any surplus
    pointer dimensions so the family stays complete.
    """
    n_out = measured.n_outcomes
    if pointer_dim < n_out:
        raise ValueError(
            f"pointer dimension {pointer_dim} cannot register {n_out} outcomes"
        )
    surplus = pointer_dim - n_out
    sector_dims = [1] * (n_out - 1) + [1 + surplus]
    pointer_projectors, offsets = _sector_pointer_family(sector_dims)
    pointer = SpectralForm(np.arange(n_out, dtype=float), pointer_projectors)
    chis = [np.eye(pointer_dim, dtype=complex)[:, off] for off in offsets]
    ready = chis[0]
    unitary = _coupling_from_targets(
        _ready_sector_targets(measured, chis),
        _ready_embedding(measured.dim, pointer_dim, ready),
    )
    return MeasurementModel(
        object_dim=measured.dim,
        pointer_dim=pointer_dim,
        ready_state=ready,
        pointer=pointer,
        measured=measured,
        unitary=unitary,
        kind="ideal",
    )


def _resolve_unitaries(spec, dims: Sequence[int], rng, what: str) -> list[np.ndarray]:
    if isinstance(spec, str):
        if spec == "none":
            return [np.eye(d, dtype=complex) for d in dims]
        if spec == "random":
            if rng is None:
                raise ValueError(f"{what}='random' requires an rng")
            return [linalg.random_unitary(d, rng) for d in dims]
        raise ValueError(f"{what} must be 'random', 'none', or explicit unitaries")
    mats = [linalg.as_complex_matrix(u, what) for u in spec]
    if len(mats) != len(dims):
        raise ShapeMismatchError(len(dims), len(mats), what=f"{what} count")
    for u, d in zip(mats, dims):
        if u.shape != (d, d):
            raise ShapeMismatchError((d, d), u.shape, what=what)
        if float(np.linalg.norm(u.conj().T @ u - np.eye(d))) > UNITARITY_TOL:
            raise ValueError(f"{what} entries must be unitary")
    return mats


def build_intricate(
    measured: SpectralForm,
    pointer_sector_dims: Sequence[int],
    rng: np.random.Generator | None = None,
    feedback="random",
    pointer_scramble="random",
) -> MeasurementModel:
    """Exact measurement that disturbs the object and scrambles the pointer.

    Pointer outcome k occupies a sector of dimension
    ``pointer_sector_dims[k]``.  The canonical coupling is post-composed
    with ``sum_k W_k (x) (S_k F_k)`` where ``W_k`` is an object unitary
    applied when outcome k fires and ``S_k`` acts inside pointer sector k.
    The post-composition commutes with every pointer projector sector-wise,
    so the pointer dynamics condition is preserved while the object is
    transformed non-ideally.

    With all sectors of size 1 and no feedback or scramble this reduces to
    :func:`build_ideal` exactly.
    """
    n_out = measured.n_outcomes
    sector_dims = [int(s) for s in pointer_sector_dims]
    if len(sector_dims) != n_out:
        raise ShapeMismatchError(n_out, len(sector_dims), what="pointer sector count")
    if any(s < 1 for s in sector_dims):
        raise ValueError(f"pointer sectors must have dimension >= 1, got {sector_dims}")
    m = sum(sector_dims)
    d = measured.dim

    pointer_projectors, offsets = _sector_pointer_family(sector_dims)
    pointer = SpectralForm(np.arange(n_out, dtype=float), pointer_projectors)
    chis = [np.eye(m, dtype=complex)[:, off] for off in offsets]
    ready = chis[0]
    base = _coupling_from_targets(
        _ready_sector_targets(measured, chis),
        _ready_embedding(d, m, ready),
    )

    feedbacks = _resolve_unitaries(feedback, [d] * n_out, rng, "feedback")
    scrambles = _resolve_unitaries(pointer_scramble, sector_dims, rng, "pointer_scramble")
    post = np.zeros((d * m, d * m), dtype=complex)
    for k, (w, s) in enumerate(zip(feedbacks, scrambles)):
        embedded = np.zeros((m, m), dtype=complex)
        lo = offsets[k]
        hi = lo + sector_dims[k]
        embedded[lo:hi, lo:hi] = s
        post += np.kron(w, embedded)
    unitary = post @ base

    return MeasurementModel(
        object_dim=d,
        pointer_dim=m,
        ready_state=ready,
        pointer=pointer,
        measured=measured,
        unitary=unitary,
        kind="intricate",
    )


def verify_calibration(model: MeasurementModel, tol: float = 1e-10) -> ResidualReport:
    """Check that object eigenstates end with the matching pointer value.

    For an orthonormal basis of each eigenspace of the measured observable
    (sufficient by linearity) the final composite vector must be fixed by
    the matching pointer projector, and must carry pointer probability 1.
    Reports the worst vector and probability residual per outcome.
    """
    u = model.unitary
    embed = _ready_embedding(model.object_dim, model.pointer_dim, model.ready_state)
    eye_obj = np.eye(model.object_dim, dtype=complex)
    residuals: dict[str, float] = {}
    for k, proj in enumerate(model.measured.projectors):
        vals, vecs = np.linalg.eigh(proj)
        basis = vecs[:, vals > 0.5]
        finals = u @ (embed @ basis)
        f_big = np.kron(eye_obj, model.pointer.projectors[k])
        projected = f_big @ finals
        vec_resid = float(np.max(np.linalg.norm(finals - projected, axis=0))) if basis.size else 0.0
        probs = np.einsum("ij,ij->j", finals.conj(), projected).real
        prob_resid = float(np.max(np.abs(probs - 1.0))) if basis.size else 0.0
        residuals[f"vector_k{k}"] = vec_resid
        residuals[f"probability_k{k}"] = prob_resid
    return ResidualReport(residuals, tol)


def verify_dynamical(model: MeasurementModel, tol: float = 1e-10) -> ResidualReport:
    """Check the pointer dynamics condition on a full object basis.

    For every outcome k and every object basis vector, projecting the final
    vector onto pointer outcome k must equal coupling the projected object
    vector: ``(I (x) F_k) U (|e_j> (x) |ready>) = U (E_k |e_j>) (x) |ready>``.
    Linearity extends the check to every object vector.
    """
    u = model.unitary
    embed = _ready_embedding(model.object_dim, model.pointer_dim, model.ready_state)
    evolved = u @ embed
    eye_obj = np.eye(model.object_dim, dtype=complex)
    residuals: dict[str, float] = {}
    for k, proj in enumerate(model.measured.projectors):
        lhs = np.kron(eye_obj, model.pointer.projectors[k]) @ evolved
        rhs = u @ (embed @ proj)
        residuals[f"k{k}"] = float(np.max(np.linalg.norm(lhs - rhs, axis=0)))
    return ResidualReport(residuals, tol)


def measure_subsystem(
    phi: BipartiteState,
    model: MeasurementModel,
    remote_evolution: np.ndarray | None = None,
) -> SubsystemMeasurementOutcome:
    """Measure the nearby half of a bipartite state and reduce to the remote half.

    The coupling acts on subsystem 2 and the pointer; subsystem 1 evolves
    only under ``remote_evolution`` (identity by default).  Outcome
    probabilities are the pointer-side norms ``||F_k |Phi_f>||^2``.
    Selective distant states project onto a pointer outcome, renormalize,
    and trace out the nearby subsystem and pointer; the nonselective state
    traces the unprojected final state.

    The model is refused (``NotAMeasurementError``) when it fails the
    pointer dynamics condition at ``GATE_TOL``; the distant-state theorems
    hold only for exact measurements.
    """
    if model.object_dim != phi.d2:
        raise ShapeMismatchError(phi.d2, model.object_dim, what="model object dimension")
    gate = verify_dynamical(model, GATE_TOL)
    if not gate.passed:
        raise NotAMeasurementError(gate.max_residual, GATE_TOL)

    d1, d2, m = phi.d1, phi.d2, model.pointer_dim
    if remote_evolution is None:
        v = np.eye(d1, dtype=complex)
    else:
        v = linalg.as_complex_matrix(remote_evolution, "remote evolution")
        if v.shape != (d1, d1):
            raise ShapeMismatchError((d1, d1), v.shape, what="remote evolution")
        if float(np.linalg.norm(v.conj().T @ v - np.eye(d1))) > UNITARITY_TOL:
            raise ValueError("remote evolution must be unitary")

    u_full = linalg.tensor(v, model.unitary)
    psi0 = np.kron(phi.amplitudes, model.ready_state)
    phif = u_full @ psi0
    dims = (d1, d2, m)

    phif_r = phif.reshape(dims)
    n_out = model.measured.n_outcomes
    probabilities = np.zeros(n_out)
    selective: list[DensityOperator | None] = []
    for k in range(n_out):
        w = np.tensordot(phif_r, model.pointer.projectors[k], axes=([2], [1]))
        p = float(np.vdot(w, w).real)
        probabilities[k] = p
        if p > PROBABILITY_FLOOR:
            wn = w.reshape(-1) / np.sqrt(p)
            rho = linalg.partial_trace(np.outer(wn, wn.conj()), dims, (1, 2))
            selective.append(DensityOperator(d1, rho))
        else:
            selective.append(None)
    # Pointer outcomes beyond the measured family (if any) contribute the
    # remaining probability; fold it in so the total stays 1.
    for k in range(n_out, model.pointer.n_outcomes):
        w = np.tensordot(phif_r, model.pointer.projectors[k], axes=([2], [1]))
        probabilities[-1] += float(np.vdot(w, w).real)

    rho_ns = linalg.partial_trace(np.outer(phif, phif.conj()), dims, (1, 2))
    return SubsystemMeasurementOutcome(
        probabilities=probabilities,
        selective_distant_states=tuple(selective),
        nonselective_distant_state=DensityOperator(d1, rho_ns),
        final_tripartite_state=phif,
        dims=dims,
    )


def luders_update(rho: DensityOperator, projector) -> DensityOperator:
    """Selective ideal state change ``E rho E / tr(rho E)``."""
    e = linalg.as_complex_matrix(projector, "projector")
    if e.shape != rho.matrix.shape:
        raise ShapeMismatchError(rho.matrix.shape, e.shape, what="projector")
    p = float(np.trace(rho.matrix @ e).real)
    if p <= PROBABILITY_FLOOR:
        raise ZeroProbabilityError(p, PROBABILITY_FLOOR)
    return DensityOperator(rho.dim, (e @ rho.matrix @ e) / p)


def luders_nonselective(rho: DensityOperator, family) -> DensityOperator:
    """Nonselective ideal state change ``sum_k E_k rho E_k``.

    The family must be a complete orthogonal projector family; otherwise
    the map would not preserve the trace.
    """
    mats = [linalg.as_complex_matrix(e, "family projector") for e in family]
    total = sum(mats)
    dev = float(np.max(np.abs(total - np.eye(rho.dim))))
    if dev > 1e-8:
        raise ValueError(f"projector family is not complete (deviation {dev:.3e})")
    out = np.zeros_like(rho.matrix)
    for e in mats:
        out += e @ rho.matrix @ e
    return DensityOperator(rho.dim, out)
