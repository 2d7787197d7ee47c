"""Pure bipartite states, density operators, and Schmidt decompositions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import linalg
from .errors import ShapeMismatchError, ZeroProbabilityError

NORM_TOL = 1e-12
DENSITY_TOL = 1e-10
PROBABILITY_FLOOR = 1e-12
PROJECTOR_TOL = 1e-8
SCHMIDT_CUTOFF = 1e-12


@dataclass(frozen=True)
class BipartiteState:
    """Pure state of two subsystems with explicit dimensions.

    Amplitudes are stored under the global index convention: entry
    ``i1*d2 + i2`` is the coefficient of the ``(i1, i2)`` product basis
    vector.  The norm must be 1 within ``NORM_TOL``.
    """

    d1: int
    d2: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        object.__setattr__(self, "amplitudes", amps)
        if self.d1 < 1 or self.d2 < 1:
            raise ValueError(f"subsystem dimensions must be >= 1, got {self.d1}, {self.d2}")
        if amps.size != self.d1 * self.d2:
            raise ShapeMismatchError(self.d1 * self.d2, amps.size, what="amplitude count")
        if not np.all(np.isfinite(amps.real)) or not np.all(np.isfinite(amps.imag)):
            raise ValueError("amplitudes contain non-finite entries")
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state norm {norm!r} deviates from 1 by more than {NORM_TOL}")

    def as_matrix(self) -> np.ndarray:
        """Amplitudes reshaped to a (d1, d2) coefficient matrix."""
        return self.amplitudes.reshape(self.d1, self.d2)

    def density(self) -> np.ndarray:
        """Rank-one density matrix |phi><phi| on the composite space."""
        return np.outer(self.amplitudes, self.amplitudes.conj())


@dataclass(frozen=True)
class DensityOperator:
    """Hermitian, unit-trace, positive-semidefinite operator."""

    dim: int
    matrix: np.ndarray

    def __post_init__(self):
        m = linalg.as_complex_matrix(self.matrix, "density matrix")
        object.__setattr__(self, "matrix", m)
        if m.shape != (self.dim, self.dim):
            raise ShapeMismatchError((self.dim, self.dim), m.shape, what="density matrix")
        herm = float(np.max(np.abs(m - m.conj().T)))
        if herm > DENSITY_TOL:
            raise ValueError(f"density matrix asymmetry {herm:.3e} exceeds {DENSITY_TOL}")
        tr = complex(np.trace(m))
        if abs(tr - 1.0) > DENSITY_TOL:
            raise ValueError(f"density matrix trace {tr!r} deviates from 1")
        lo = float(np.linalg.eigvalsh((m + m.conj().T) / 2.0)[0])
        if lo < -DENSITY_TOL:
            raise ValueError(f"density matrix has negative eigenvalue {lo:.3e}")


@dataclass(frozen=True)
class SchmidtDecomposition:
    """Biorthogonal expansion of a bipartite pure state.

    ``coefficients`` are the positive weights in nonincreasing order, with
    squares summing to 1; ``left_vectors`` / ``right_vectors`` hold the
    matched orthonormal bases as columns.
    """

    coefficients: np.ndarray
    left_vectors: np.ndarray
    right_vectors: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coefficients, dtype=float).reshape(-1)
        lv = np.asarray(self.left_vectors, dtype=complex)
        rv = np.asarray(self.right_vectors, dtype=complex)
        object.__setattr__(self, "coefficients", c)
        object.__setattr__(self, "left_vectors", lv)
        object.__setattr__(self, "right_vectors", rv)
        r = c.size
        if r == 0:
            raise ValueError("at least one Schmidt coefficient is required")
        if np.any(c <= 0) or np.any(np.diff(c) > 0):
            raise ValueError("coefficients must be positive and nonincreasing")
        if abs(float(np.sum(c**2)) - 1.0) > DENSITY_TOL:
            raise ValueError("squared coefficients must sum to 1")
        if lv.shape[1] != r or rv.shape[1] != r:
            raise ShapeMismatchError(r, (lv.shape[1], rv.shape[1]), what="vector families")
        for name, fam in (("left", lv), ("right", rv)):
            dev = float(np.max(np.abs(fam.conj().T @ fam - np.eye(r))))
            if dev > DENSITY_TOL:
                raise ValueError(f"{name} vectors are not orthonormal (deviation {dev:.3e})")

    @property
    def rank(self) -> int:
        return self.coefficients.size

    def state_vector(self) -> np.ndarray:
        """Reassemble the composite amplitudes from the expansion."""
        m = (self.left_vectors * self.coefficients) @ self.right_vectors.T
        return m.reshape(-1)


def _check_subsystem(keep: int) -> int:
    if keep not in (1, 2):
        raise ValueError(f"keep must be 1 or 2, got {keep}")
    return keep


def reduced_state(phi: BipartiteState, keep: int) -> DensityOperator:
    """State of one subsystem, the other traced out."""
    m = phi.as_matrix()
    if _check_subsystem(keep) == 1:
        rho = m @ m.conj().T
        return DensityOperator(phi.d1, rho)
    rho = m.T @ m.conj()
    return DensityOperator(phi.d2, rho)


def conditional_state(phi: BipartiteState, projector_on_a2) -> DensityOperator:
    """State of subsystem 1 given that an event occurred on subsystem 2.

    The event is a projector G on subsystem 2 with occurrence probability
    ``<phi|(I (x) G)|phi>``; below ``PROBABILITY_FLOOR`` the outcome is
    treated as impossible and refused.  The result is computed in the
    manifestly positive form ``tr_2(G|phi><phi|G) / p``; the one-sided form
    ``tr_2(|phi><phi| G) / p`` is evaluated as well and the two must agree
    (they do, because a subsystem-2 operator commutes under the
    subsystem-2 trace).
    """
    g = linalg.as_complex_matrix(projector_on_a2, "conditioning projector")
    if g.shape != (phi.d2, phi.d2):
        raise ShapeMismatchError((phi.d2, phi.d2), g.shape, what="conditioning projector")
    if float(np.max(np.abs(g - g.conj().T))) > PROJECTOR_TOL:
        raise ValueError("conditioning event must be Hermitian")
    if float(np.max(np.abs(g @ g - g))) > PROJECTOR_TOL:
        raise ValueError("conditioning event must be idempotent")

    m = phi.as_matrix()
    w = m @ g.T  # (I (x) G)|phi> as a coefficient matrix
    prob = float(np.vdot(m, w).real)
    if prob <= PROBABILITY_FLOOR:
        raise ZeroProbabilityError(prob, PROBABILITY_FLOOR)

    rho_sym = (w @ w.conj().T) / prob
    rho_one = (m @ w.conj().T) / prob
    gap = float(np.linalg.norm(rho_sym - rho_one))
    if gap > 1e-10:
        raise RuntimeError(
            f"one-sided and symmetrized conditional states disagree by {gap:.3e}"
        )
    return DensityOperator(phi.d1, rho_sym)


def schmidt(phi: BipartiteState) -> SchmidtDecomposition:
    """Schmidt decomposition with a fixed phase convention.

    Coefficients below ``SCHMIDT_CUTOFF`` are dropped.  Phases are fixed by
    making the first nonzero entry of each left vector real positive, so the
    output is reproducible across runs.
    """
    m = phi.as_matrix()
    u, s, vh = np.linalg.svd(m, full_matrices=False)
    keep = s > SCHMIDT_CUTOFF
    s = s[keep]
    left = u[:, keep].copy()
    right = vh[keep, :].T.copy()  # right vectors are rows of vh, unconjugated
    for i in range(s.size):
        col = left[:, i]
        nz = np.flatnonzero(np.abs(col) > 1e-12)
        if nz.size:
            phase = col[nz[0]] / abs(col[nz[0]])
            left[:, i] = col * phase.conjugate()
            right[:, i] = right[:, i] * phase
    return SchmidtDecomposition(s, left, right)


def random_state(d1: int, d2: int, rng: np.random.Generator) -> BipartiteState:
    """Haar-uniform pure state: normalized complex Gaussian amplitudes."""
    amps = linalg.random_complex_matrix(d1 * d2, 1, rng).reshape(-1)
    return BipartiteState(d1, d2, amps / np.linalg.norm(amps))


def random_state_with_schmidt(
    d1: int, d2: int, coefficients: Sequence[float], rng: np.random.Generator
) -> BipartiteState:
    """Random state with prescribed Schmidt coefficients.

    ``coefficients`` must be positive with squares summing to 1 (within
    1e-10; they are then renormalized exactly) and there can be at most
    ``min(d1, d2)`` of them.  The matched bases are Haar-random.
    """
    c = np.asarray(coefficients, dtype=float).reshape(-1)
    if c.size < 1 or c.size > min(d1, d2):
        raise ValueError(
            f"need between 1 and min(d1, d2) = {min(d1, d2)} coefficients, got {c.size}"
        )
    if np.any(c <= 0):
        raise ValueError("coefficients must be positive")
    total = float(np.sum(c**2))
    if abs(total - 1.0) > 1e-10:
        raise ValueError(f"squared coefficients sum to {total!r}, expected 1")
    c = np.sort(c / np.sqrt(total))[::-1]
    left = linalg.random_unitary(d1, rng)[:, : c.size]
    right = linalg.random_unitary(d2, rng)[:, : c.size]
    amps = ((left * c) @ right.T).reshape(-1)
    return BipartiteState(d1, d2, amps)


def born_probabilities(phi: BipartiteState, projectors_on_a2) -> np.ndarray:
    """Occurrence probabilities ``<phi|(I (x) E_k)|phi>`` for a projector family."""
    m = phi.as_matrix()
    probs = []
    for e in projectors_on_a2:
        em = linalg.as_complex_matrix(e, "projector")
        if em.shape != (phi.d2, phi.d2):
            raise ShapeMismatchError((phi.d2, phi.d2), em.shape, what="projector")
        probs.append(float(np.vdot(m, m @ em.T).real))
    return np.array(probs)


def state_to_json(phi: BipartiteState) -> dict:
    """Serialize as ``{"d1", "d2", "amplitudes"}`` with ``[re, im]`` pairs."""
    return {
        "d1": phi.d1,
        "d2": phi.d2,
        "amplitudes": linalg.vector_to_pairs(phi.amplitudes),
    }


def state_from_json(obj: dict) -> BipartiteState:
    """Inverse of :func:`state_to_json`."""
    return BipartiteState(
        int(obj["d1"]), int(obj["d2"]), linalg.vector_from_pairs(obj["amplitudes"])
    )
