"""Shared test helpers: hand-rolled oracles and canonical states.

The oracles here deliberately use naive index-sum loops so they share no
code path with the library implementations they are checked against.
"""

from __future__ import annotations

import numpy as np

from distmeas import BipartiteState


def partial_trace_oracle(x: np.ndarray, factors: tuple[int, ...], traced) -> np.ndarray:
    """Explicit index-sum partial trace."""
    traced = sorted(set(traced))
    kept = [i for i in range(len(factors)) if i not in traced]
    kept_dims = [factors[i] for i in kept]
    out_dim = int(np.prod(kept_dims)) if kept else 1
    out = np.zeros((out_dim, out_dim), dtype=complex)

    def unpack(i):
        idx = []
        for d in reversed(factors):
            idx.append(i % d)
            i //= d
        return list(reversed(idx))

    def pack(idx, dims):
        i = 0
        for j, d in zip(idx, dims):
            i = i * d + j
        return i

    n = int(np.prod(factors))
    for row in range(n):
        ridx = unpack(row)
        for col in range(n):
            cidx = unpack(col)
            if any(ridx[t] != cidx[t] for t in traced):
                continue
            r_out = pack([ridx[i] for i in kept], kept_dims)
            c_out = pack([cidx[i] for i in kept], kept_dims)
            out[r_out, c_out] += x[row, col]
    return out


def reduced_state_oracle(phi: BipartiteState, keep: int) -> np.ndarray:
    """Explicit double-loop reduced density matrix."""
    d1, d2 = phi.d1, phi.d2
    amps = phi.amplitudes
    if keep == 1:
        out = np.zeros((d1, d1), dtype=complex)
        for a in range(d1):
            for ap in range(d1):
                for b in range(d2):
                    out[a, ap] += amps[a * d2 + b] * np.conj(amps[ap * d2 + b])
        return out
    out = np.zeros((d2, d2), dtype=complex)
    for b in range(d2):
        for bp in range(d2):
            for a in range(d1):
                out[b, bp] += amps[a * d2 + b] * np.conj(amps[a * d2 + bp])
    return out


def bell_state() -> BipartiteState:
    """(|00> + |11>)/sqrt(2)."""
    return BipartiteState(2, 2, np.array([1.0, 0.0, 0.0, 1.0]) / np.sqrt(2.0))


def basis_projector(dim: int, index: int) -> np.ndarray:
    p = np.zeros((dim, dim), dtype=complex)
    p[index, index] = 1.0
    return p
