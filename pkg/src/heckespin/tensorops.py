"""Index arithmetic on tensor legs of (C^2)^(x m).

Basis convention used everywhere: legs are numbered left to right, the
leftmost leg is the most significant bit, spin-up is bit 0.  So for m legs
the basis index of a configuration (b_1, ..., b_m) is sum b_l * 2^(m-l),
matching the order produced by iterated numpy.kron.
"""

from __future__ import annotations

import numpy as np


def op_on_legs(op: np.ndarray, legs, m: int) -> np.ndarray:
    """Embed ``op`` acting on the listed legs (in that order) into m legs.

    ``op`` must be a 2^k x 2^k matrix with k = len(legs); legs are 1-based
    and pairwise distinct but need not be adjacent or increasing, so the same
    helper places r_{a b} for a > b.
    """
    legs = list(legs)
    k = len(legs)
    if op.shape != (2**k, 2**k):
        raise ValueError("operator size does not match leg count")
    if len(set(legs)) != k or any(not 1 <= l <= m for l in legs):
        raise ValueError("legs must be distinct and within range")
    full = op.reshape((2,) * (2 * k))
    t = np.eye(2**m, dtype=complex).reshape((2,) * (2 * m))
    # contract the output axes of ``op`` against the chosen legs of identity
    out_axes = [l - 1 for l in legs]
    t = np.tensordot(full, t, axes=(list(range(k, 2 * k)), out_axes))
    # tensordot moved the k new axes to the front; put them back in place
    order = [0] * m
    placed = {l - 1 for l in legs}
    src = {l - 1: idx for idx, l in enumerate(legs)}
    j = k
    for axis in range(m):
        if axis in placed:
            order[axis] = src[axis]
        else:
            order[axis] = j
            j += 1
    t = np.transpose(t, order + [m + a for a in range(m)])
    return t.reshape(2**m, 2**m)


def kron_all(mats) -> np.ndarray:
    out = np.array([[1.0 + 0j]])
    for m in mats:
        out = np.kron(out, m)
    return out


def partial_trace_first(mat: np.ndarray, m: int) -> np.ndarray:
    """Trace out the first of m legs of a 2^m x 2^m matrix."""
    t = mat.reshape(2, 2 ** (m - 1), 2, 2 ** (m - 1))
    return np.trace(t, axis1=0, axis2=2)


def partial_transpose_leg(mat: np.ndarray, leg: int, m: int) -> np.ndarray:
    """Transpose a 2^m x 2^m matrix on one leg only (1-based)."""
    t = mat.reshape((2,) * (2 * m))
    a = leg - 1
    t = np.swapaxes(t, a, m + a)
    return t.reshape(2**m, 2**m)


PERMUTE_TWO = np.array(
    [
        [1, 0, 0, 0],
        [0, 0, 1, 0],
        [0, 1, 0, 0],
        [0, 0, 0, 1],
    ],
    dtype=complex,
)
