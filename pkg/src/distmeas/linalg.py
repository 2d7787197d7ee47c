"""Dense complex-matrix kernel.

Everything downstream is built on the operations here: Kronecker products,
partial traces over arbitrary tensor factors, Hermitian eigendecomposition,
completion of isometries to unitaries, norms, and a seeded random source.

Index convention (fixed globally): composite bases are ordered with the
first factor **slowest**, i.e. a composite index unpacks as
``i = ((i1*d2 + i2)*d3 + i3)...``.  This is exactly the convention of
row-major (C-order) reshapes and of ``numpy.kron``, so a vector on a
composite space reshapes to an array with one axis per factor.

All arithmetic is double precision.  Composite dimensions are capped at
``DIM_CAP`` as a desk-scale guardrail.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DimensionCapError,
    NonHermitianError,
    NotOrthonormalError,
    ShapeMismatchError,
)

DIM_CAP = 4096
HERMITICITY_TOL = 1e-10
ORTHONORMALITY_TOL = 1e-10


def make_rng(seed: int) -> np.random.Generator:
    """Deterministic random stream for a 64-bit seed.

    The generator is NumPy's ``Generator`` over the PCG64 bit generator;
    for a fixed NumPy version the same seed always yields the same stream,
    which is what makes scenario files reproducible.
    """
    if not 0 <= int(seed) < 2**64:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return np.random.default_rng(int(seed))


def _check_cap(dim: int) -> None:
    if dim > DIM_CAP:
        raise DimensionCapError(dim, DIM_CAP)


def as_complex_matrix(x, what: str = "matrix") -> np.ndarray:
    """Coerce to a 2-D complex array, rejecting non-finite entries."""
    m = np.asarray(x, dtype=complex)
    if m.ndim != 2:
        raise ShapeMismatchError("a 2-D array", f"{m.ndim}-D array", what=what)
    if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
        raise ValueError(f"{what} contains non-finite entries")
    return m


@dataclass(frozen=True)
class DimSpec:
    """Ordered tensor-factor dimensions of a composite space.

    The product of the factors is the dimension of the matrices it indexes;
    factor 0 varies slowest in the composite index.
    """

    factors: tuple[int, ...]

    def __post_init__(self):
        factors = tuple(int(f) for f in self.factors)
        object.__setattr__(self, "factors", factors)
        if not factors:
            raise ValueError("DimSpec needs at least one factor")
        if any(f < 1 for f in factors):
            raise ValueError(f"factor dimensions must be >= 1, got {factors}")
        _check_cap(prod(factors))

    @property
    def dim(self) -> int:
        return prod(self.factors)

    def __len__(self) -> int:
        return len(self.factors)


def _as_dimspec(dims) -> DimSpec:
    if isinstance(dims, DimSpec):
        return dims
    return DimSpec(tuple(dims))


def tensor(a, b) -> np.ndarray:
    """Kronecker product under the global index convention.

    Satisfies the mixed-product identity ``(a (x) b) @ (c (x) d)
    = (a @ c) (x) (b @ d)`` for compatible shapes.
    """
    am = as_complex_matrix(a, "left tensor factor")
    bm = as_complex_matrix(b, "right tensor factor")
    _check_cap(am.shape[0] * bm.shape[0])
    _check_cap(am.shape[1] * bm.shape[1])
    return np.kron(am, bm)


def partial_trace(x, dims, traced_factors: Iterable[int]) -> np.ndarray:
    """Trace out the given tensor factors of a square operator.

    Args:
        x: square matrix on the composite space described by ``dims``.
        dims: factor dimensions (a :class:`DimSpec` or a sequence of ints).
        traced_factors: positions (0-based) of the factors to trace over.

    Returns:
        The operator on the remaining factors, in their original order.
        The total trace is preserved: ``tr(result) == tr(x)``.
    """
    spec = _as_dimspec(dims)
    xm = as_complex_matrix(x, "partial-trace input")
    if xm.shape[0] != xm.shape[1]:
        raise ShapeMismatchError("a square matrix", xm.shape, what="partial-trace input")
    if xm.shape[0] != spec.dim:
        raise ShapeMismatchError(spec.dim, xm.shape[0], what="partial-trace dimension")
    traced = sorted(set(int(t) for t in traced_factors))
    if any(t < 0 or t >= len(spec) for t in traced):
        raise ValueError(f"traced factors {traced} outside range 0..{len(spec) - 1}")
    if not traced:
        return xm.copy()

    n = len(spec)
    kept = [i for i in range(n) if i not in traced]
    t = xm.reshape(spec.factors + spec.factors)
    # Row axis i gets label i; column axis i gets the same label when traced
    # (contracting the pair) and label n+i when kept.
    col_labels = [i if i in traced else n + i for i in range(n)]
    out_labels = kept + [n + i for i in kept]
    result = np.einsum(t, list(range(n)) + col_labels, out_labels)
    kept_dim = prod(spec.factors[i] for i in kept) if kept else 1
    return np.asarray(result, dtype=complex).reshape(kept_dim, kept_dim)


def eig_hermitian(h) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix.

    Returns ``(eigenvalues, eigenvectors)`` with eigenvalues real ascending
    and eigenvectors as orthonormal columns.  The input must be Hermitian
    within ``HERMITICITY_TOL`` (max absolute row sum of ``h - h^dag``); it is
    then symmetrized before the decomposition for numerical stability.
    """
    hm = as_complex_matrix(h, "eigendecomposition input")
    if hm.shape[0] != hm.shape[1]:
        raise ShapeMismatchError("a square matrix", hm.shape, what="eigendecomposition input")
    asymmetry = float(np.linalg.norm(hm - hm.conj().T, np.inf)) if hm.size else 0.0
    if asymmetry > HERMITICITY_TOL:
        raise NonHermitianError(asymmetry, HERMITICITY_TOL)
    sym = (hm + hm.conj().T) / 2.0
    vals, vecs = np.linalg.eigh(sym)
    return vals, vecs


def complete_to_unitary(isometry_columns) -> np.ndarray:
    """Extend orthonormal columns to a full unitary matrix.

    The input columns are kept verbatim as the first columns of the result.
    The remaining columns are produced by Gram-Schmidt against the standard
    basis, at each step pivoting on the basis vector with the largest
    residual norm (ties resolve to the lowest index), so the completion is
    deterministic.  Each accepted vector is orthogonalized twice against the
    running basis to keep ``U^dag U = I`` at the 1e-14 level.
    """
    v = as_complex_matrix(isometry_columns, "isometry")
    n, k = v.shape
    if k > n:
        raise ShapeMismatchError(f"at most {n} columns", k, what="isometry columns")
    if k:
        gram_dev = float(np.max(np.abs(v.conj().T @ v - np.eye(k))))
        if gram_dev > ORTHONORMALITY_TOL:
            raise NotOrthonormalError(gram_dev, ORTHONORMALITY_TOL)

    q = v.copy()
    # Columns of `resid` are the standard basis vectors with the span of the
    # accepted columns projected out.
    resid = np.eye(n, dtype=complex)
    if k:
        resid -= q @ (q.conj().T)
    while q.shape[1] < n:
        norms = np.linalg.norm(resid, axis=0)
        j = int(np.argmax(norms))
        if norms[j] < 1e-12:
            raise RuntimeError("residual basis collapsed; input columns are defective")
        w = resid[:, j] / norms[j]
        w = w - q @ (q.conj().T @ w)
        w = w / np.linalg.norm(w)
        q = np.column_stack([q, w])
        resid -= np.outer(w, w.conj() @ resid)
    return q


def frobenius_distance(a, b) -> float:
    """Frobenius norm of the difference of two equally-shaped matrices."""
    am = as_complex_matrix(a, "distance operand")
    bm = as_complex_matrix(b, "distance operand")
    if am.shape != bm.shape:
        raise ShapeMismatchError(am.shape, bm.shape, what="distance operands")
    return float(np.linalg.norm(am - bm))


def operator_norm_estimate(a) -> float:
    """Largest singular value (spectral norm)."""
    return float(np.linalg.norm(as_complex_matrix(a, "norm operand"), 2))


def random_complex_matrix(rows: int, cols: int, rng: np.random.Generator) -> np.ndarray:
    """Matrix with independent standard complex Gaussian entries."""
    re = rng.standard_normal((rows, cols))
    im = rng.standard_normal((rows, cols))
    return (re + 1j * im) / np.sqrt(2.0)


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via phase-fixed QR of a Gaussian matrix."""
    z = random_complex_matrix(dim, dim, rng)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_hermitian(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Random Hermitian matrix (Hermitized complex Gaussian)."""
    a = random_complex_matrix(dim, dim, rng)
    return (a + a.conj().T) / 2.0


def matrix_to_json(m) -> dict:
    """Serialize a matrix as ``{"rows", "cols", "entries"}`` with row-major
    ``[re, im]`` entry pairs."""
    mm = as_complex_matrix(m, "matrix")
    entries = [[float(z.real), float(z.imag)] for z in mm.reshape(-1)]
    return {"rows": int(mm.shape[0]), "cols": int(mm.shape[1]), "entries": entries}


def matrix_from_json(obj: dict) -> np.ndarray:
    """Inverse of :func:`matrix_to_json`."""
    rows, cols = int(obj["rows"]), int(obj["cols"])
    entries = obj["entries"]
    if rows < 1 or cols < 1:
        raise ValueError(f"matrix dimensions must be positive, got {rows}x{cols}")
    if len(entries) != rows * cols:
        raise ShapeMismatchError(rows * cols, len(entries), what="matrix entry count")
    flat = np.array([complex(re, im) for re, im in entries])
    return as_complex_matrix(flat.reshape(rows, cols))


def vector_from_pairs(pairs: Sequence[Sequence[float]]) -> np.ndarray:
    """Complex vector from ``[re, im]`` pairs."""
    v = np.array([complex(re, im) for re, im in pairs])
    if not np.all(np.isfinite(v.real)) or not np.all(np.isfinite(v.imag)):
        raise ValueError("vector contains non-finite entries")
    return v


def vector_to_pairs(v) -> list[list[float]]:
    """Inverse of :func:`vector_from_pairs`."""
    arr = np.asarray(v, dtype=complex).reshape(-1)
    return [[float(z.real), float(z.imag)] for z in arr]
