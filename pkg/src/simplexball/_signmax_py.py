"""Pure numpy fallback for the sign-assignment enumeration kernel.

Maximizes   radius * ||sum_j f_j grad_j|| + |sum_j f_j const_j|
over sign vectors f in {-1, +1}^(n+1) with the last component fixed to
+1 (negating f leaves the value unchanged, so this loses nothing).

Enumeration runs in lexicographic order of (f_1, ..., f_n) with -1
ordered before +1, and ties keep the earliest maximizer, so the
reported argmax is the lexicographically smallest maximizing vector.
"""

from __future__ import annotations

import numpy as np

_CHUNK = 1 << 16


def _sign_block(start: int, stop: int, n: int) -> np.ndarray:
    """Rows start..stop-1 of the 2^n x (n+1) sign table.

    Bit n-1-j of the row index encodes f_j (set bit = +1), so ascending
    index order is lexicographic order with -1 < +1.  The final column
    is the fixed +1 sign.
    """
    idx = np.arange(start, stop, dtype=np.uint64)[:, None]
    shifts = np.arange(n - 1, -1, -1, dtype=np.uint64)[None, :]
    bits = (idx >> shifts) & np.uint64(1)
    signs = np.empty((stop - start, n + 1), dtype=np.float64)
    signs[:, :n] = 2.0 * bits - 1.0
    signs[:, n] = 1.0
    return signs


def max_sign_value(grads, consts, radius):
    """Exact maximum over all 2^n sign classes.

    grads: (n+1, n) gradient rows, consts: (n+1,), radius: scalar.
    Returns (value, signs) with signs an int8 array of length n+1.
    """
    grads = np.asarray(grads, dtype=np.float64)
    consts = np.asarray(consts, dtype=np.float64)
    n = grads.shape[1]
    total = 1 << n
    best_value = -np.inf
    best_signs = None
    for start in range(0, total, _CHUNK):
        stop = min(start + _CHUNK, total)
        signs = _sign_block(start, stop, n)
        values = radius * np.linalg.norm(signs @ grads, axis=1) \
            + np.abs(signs @ consts)
        j = int(np.argmax(values))
        if values[j] > best_value:
            best_value = float(values[j])
            best_signs = signs[j].astype(np.int8)
    return best_value, best_signs


def sign_value_table(grads, consts, radius) -> np.ndarray:
    """All 2^n sign-class values in enumeration order (small n only)."""
    grads = np.asarray(grads, dtype=np.float64)
    consts = np.asarray(consts, dtype=np.float64)
    n = grads.shape[1]
    signs = _sign_block(0, 1 << n, n)
    return radius * np.linalg.norm(signs @ grads, axis=1) + np.abs(signs @ consts)
