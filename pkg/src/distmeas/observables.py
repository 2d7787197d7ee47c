"""Observables in unique spectral form and matched projector families.

A :class:`SpectralForm` is the canonical representation of an observable:
strictly increasing distinct eigenvalues, one maximal projector each,
summing to the identity.  A :class:`TwinPair` holds projector families on
the two halves of a bipartite state that act identically on that state,
the structure that lets a measurement on one half update the other half.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import linalg
from .errors import ShapeMismatchError, TwinGroupingError
from .reports import ResidualReport
from .states import BipartiteState, schmidt

DEFAULT_GROUP_TOL = 1e-8
FAMILY_TOL = 1e-8
TWIN_TOL = 1e-10


def _validate_projector_family(projectors, dim: int, what: str, require_complete: bool):
    """Check Hermiticity, idempotency, and pairwise orthogonality."""
    mats = []
    for i, p in enumerate(projectors):
        m = linalg.as_complex_matrix(p, f"{what}[{i}]")
        if m.shape != (dim, dim):
            raise ShapeMismatchError((dim, dim), m.shape, what=f"{what}[{i}]")
        if float(np.max(np.abs(m - m.conj().T))) > FAMILY_TOL:
            raise ValueError(f"{what}[{i}] is not Hermitian")
        if float(np.max(np.abs(m @ m - m))) > FAMILY_TOL:
            raise ValueError(f"{what}[{i}] is not idempotent")
        mats.append(m)
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            if float(np.max(np.abs(mats[i] @ mats[j]))) > FAMILY_TOL:
                raise ValueError(f"{what}[{i}] and {what}[{j}] are not orthogonal")
    if require_complete:
        dev = float(np.max(np.abs(sum(mats) - np.eye(dim))))
        if dev > FAMILY_TOL:
            raise ValueError(f"{what} does not sum to the identity (deviation {dev:.3e})")
    return tuple(mats)


@dataclass(frozen=True)
class SpectralForm:
    """Observable as distinct eigenvalues paired with orthogonal projectors.

    Eigenvalues are strictly increasing; the projector family is complete.
    """

    eigenvalues: np.ndarray
    projectors: tuple[np.ndarray, ...]

    def __post_init__(self):
        vals = np.asarray(self.eigenvalues, dtype=float).reshape(-1)
        object.__setattr__(self, "eigenvalues", vals)
        if vals.size == 0:
            raise ValueError("at least one outcome is required")
        if np.any(np.diff(vals) <= 0):
            raise ValueError(f"eigenvalues must be strictly increasing, got {vals}")
        if len(self.projectors) != vals.size:
            raise ShapeMismatchError(vals.size, len(self.projectors), what="projector count")
        dim = np.asarray(self.projectors[0]).shape[0]
        mats = _validate_projector_family(self.projectors, dim, "projector", True)
        object.__setattr__(self, "projectors", mats)

    @property
    def dim(self) -> int:
        return self.projectors[0].shape[0]

    @property
    def n_outcomes(self) -> int:
        return len(self.projectors)

    def to_matrix(self) -> np.ndarray:
        """Reassemble the observable as a dense Hermitian matrix."""
        out = np.zeros((self.dim, self.dim), dtype=complex)
        for val, proj in zip(self.eigenvalues, self.projectors):
            out += val * proj
        return out

    def rank_of(self, k: int) -> int:
        """Multiplicity of outcome k (rank of its projector)."""
        return int(round(np.trace(self.projectors[k]).real))


@dataclass(frozen=True)
class TwinPair:
    """Matched projector families on the two halves of a bipartite state.

    ``e1[k]`` and ``e2[k]`` act identically on ``state``; the optional
    residual operators ``o1_prime`` / ``o2_prime`` annihilate the state.
    Each family is internally orthogonal but need not be complete: the
    residual absorbs the rest of the spectrum.
    """

    state: BipartiteState
    e1: tuple[np.ndarray, ...]
    e2: tuple[np.ndarray, ...]
    o1_prime: np.ndarray | None = None
    o2_prime: np.ndarray | None = None

    def __post_init__(self):
        if len(self.e1) != len(self.e2):
            raise ShapeMismatchError(len(self.e1), len(self.e2), what="family lengths")
        if not self.e1:
            raise ValueError("at least one projector pair is required")
        e1 = _validate_projector_family(self.e1, self.state.d1, "e1", False)
        e2 = _validate_projector_family(self.e2, self.state.d2, "e2", False)
        object.__setattr__(self, "e1", e1)
        object.__setattr__(self, "e2", e2)
        for name, op, dim in (("o1_prime", self.o1_prime, self.state.d1),
                              ("o2_prime", self.o2_prime, self.state.d2)):
            if op is None:
                continue
            m = linalg.as_complex_matrix(op, name)
            if m.shape != (dim, dim):
                raise ShapeMismatchError((dim, dim), m.shape, what=name)
            if float(np.max(np.abs(m - m.conj().T))) > FAMILY_TOL:
                raise ValueError(f"{name} must be Hermitian")
            object.__setattr__(self, name, m)

    def __len__(self) -> int:
        return len(self.e1)


def spectral_decompose(h, group_tol: float = DEFAULT_GROUP_TOL) -> SpectralForm:
    """Unique spectral form of a Hermitian matrix.

    Eigenvalues closer than ``group_tol`` (relative to the spectral range,
    floored at 1 so that near-degenerate noise merges even for flat spectra)
    are clustered into a single outcome whose eigenvalue is the cluster mean
    and whose projector sums the corresponding eigenvector dyads.
    """
    vals, vecs = linalg.eig_hermitian(h)
    spread = float(vals[-1] - vals[0]) if vals.size > 1 else 0.0
    tol_abs = group_tol * max(spread, 1.0)
    boundaries = [0]
    for i in range(1, vals.size):
        if vals[i] - vals[i - 1] > tol_abs:
            boundaries.append(i)
    boundaries.append(vals.size)
    eigenvalues = []
    projectors = []
    for lo, hi in zip(boundaries[:-1], boundaries[1:]):
        eigenvalues.append(float(np.mean(vals[lo:hi])))
        block = vecs[:, lo:hi]
        projectors.append(block @ block.conj().T)
    return SpectralForm(np.array(eigenvalues), tuple(projectors))


def random_degenerate_observable(
    dim: int, multiplicities: Sequence[int], rng: np.random.Generator
) -> SpectralForm:
    """Random observable with prescribed eigenvalue multiplicities.

    Eigenvalues are the consecutive integers 0, 1, ...; eigenspaces are
    spanned by consecutive columns of a Haar-random unitary.
    """
    mults = [int(m) for m in multiplicities]
    if any(m < 1 for m in mults):
        raise ValueError(f"multiplicities must be >= 1, got {mults}")
    if sum(mults) != dim:
        raise ValueError(f"multiplicities {mults} sum to {sum(mults)}, expected {dim}")
    basis = linalg.random_unitary(dim, rng)
    projectors = []
    start = 0
    for m in mults:
        block = basis[:, start:start + m]
        projectors.append(block @ block.conj().T)
        start += m
    return SpectralForm(np.arange(len(mults), dtype=float), tuple(projectors))


def _normalize_grouping(grouping, rank: int) -> list[list[int]]:
    groups = [sorted(int(i) for i in g) for g in grouping]
    if any(not g for g in groups):
        raise ValueError("groups must be non-empty")
    flat = sorted(i for g in groups for i in g)
    if flat != list(range(rank)):
        raise ValueError(
            f"grouping must cover each nonzero Schmidt index 0..{rank - 1} exactly once, "
            f"got {groups}"
        )
    return groups


def build_twins(
    phi: BipartiteState,
    grouping: Sequence[Sequence[int]],
    residual: str = "zero",
    rng: np.random.Generator | None = None,
) -> TwinPair:
    """Construct matched projector families from a grouping of Schmidt indices.

    Group k contributes ``sum_i |l_i><l_i|`` on subsystem 1 and the matching
    ``sum_i |r_i><r_i|`` on subsystem 2.  Residual operators on the null
    spaces of the reduced states are zero by default; ``residual="random"``
    injects random Hermitian operators supported there, which still
    annihilate the state.  The construction is verified before returning.
    """
    sd = schmidt(phi)
    groups = _normalize_grouping(grouping, sd.rank)
    e1 = []
    e2 = []
    for g in groups:
        lblock = sd.left_vectors[:, g]
        rblock = sd.right_vectors[:, g]
        e1.append(lblock @ lblock.conj().T)
        e2.append(rblock @ rblock.conj().T)

    if residual not in ("zero", "random"):
        raise ValueError(f"residual must be 'zero' or 'random', got {residual!r}")
    null1 = np.eye(phi.d1, dtype=complex) - sd.left_vectors @ sd.left_vectors.conj().T
    null2 = np.eye(phi.d2, dtype=complex) - sd.right_vectors @ sd.right_vectors.conj().T
    if residual == "random":
        if rng is None:
            raise ValueError("residual='random' requires an rng")
        o1 = null1 @ linalg.random_hermitian(phi.d1, rng) @ null1
        o2 = null2 @ linalg.random_hermitian(phi.d2, rng) @ null2
    else:
        o1 = np.zeros((phi.d1, phi.d1), dtype=complex)
        o2 = np.zeros((phi.d2, phi.d2), dtype=complex)

    pair = TwinPair(phi, tuple(e1), tuple(e2), o1, o2)
    report = verify_twins(pair, TWIN_TOL)
    if not report.passed:
        raise TwinGroupingError(report.max_residual, TWIN_TOL)
    return pair


def verify_twins(pair: TwinPair, tol: float = TWIN_TOL) -> ResidualReport:
    """Residuals of the matching and annihilation conditions.

    For each k the matching residual is ``||(E1_k (x) I - I (x) E2_k)|phi>||``;
    the annihilation residuals are ``||(O'_1 (x) I)|phi>||`` and
    ``||(I (x) O'_2)|phi>||``.  Passes when all are below ``tol``.
    """
    m = pair.state.as_matrix()
    residuals: dict[str, float] = {}
    for k, (p1, p2) in enumerate(zip(pair.e1, pair.e2)):
        if p1.shape != (pair.state.d1,) * 2 or p2.shape != (pair.state.d2,) * 2:
            raise ShapeMismatchError(
                (pair.state.d1, pair.state.d2), (p1.shape[0], p2.shape[0]),
                what="twin projector dimensions",
            )
        residuals[f"twin_{k}"] = float(np.linalg.norm(p1 @ m - m @ p2.T))
    o1 = pair.o1_prime
    o2 = pair.o2_prime
    residuals["residual_a1"] = 0.0 if o1 is None else float(np.linalg.norm(o1 @ m))
    residuals["residual_a2"] = 0.0 if o2 is None else float(np.linalg.norm(m @ o2.T))
    return ResidualReport(residuals, tol)
