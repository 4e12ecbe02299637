# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled sign-assignment enumeration kernel.

Walks all 2^n sign vectors (last component fixed to +1) in Gray-code
order, so each step flips a single sign and updates the running
gradient sum, its squared norm, and the constant-term sum in O(n).
The running sums are recomputed from scratch every 2^14 steps to keep
accumulated rounding far below the comparison tolerances, and the
winning class is re-evaluated freshly before returning.

Ties resolve to the lexicographically smallest sign vector (-1 before
+1), matching the pure numpy fallback.
"""

import numpy as np

from libc.math cimport fabs, sqrt

cdef enum:
    REFRESH_MASK = 0x3FFF  # recompute running sums every 2^14 steps


cdef inline bint _lex_smaller(signed char[::1] a, signed char[::1] b,
                              Py_ssize_t m) noexcept nogil:
    cdef Py_ssize_t j
    for j in range(m):
        if a[j] != b[j]:
            return a[j] < b[j]
    return False


def max_sign_value(grads, consts, double radius):
    """Exact maximum of radius*||sum f_j grad_j|| + |sum f_j const_j|.

    grads: (n+1, n) array of gradient rows, consts: (n+1,) array.
    Returns (value, signs) with signs an int8 array of length n+1 whose
    last entry is +1.
    """
    cdef const double[:, ::1] V = np.ascontiguousarray(grads, dtype=np.float64)
    cdef const double[::1] c = np.ascontiguousarray(consts, dtype=np.float64)
    cdef Py_ssize_t m = V.shape[0]
    cdef Py_ssize_t n = V.shape[1]
    if m != n + 1 or c.shape[0] != m:
        raise ValueError("expected grads of shape (n+1, n) and consts (n+1,)")

    g_arr = np.empty(n, dtype=np.float64)
    vn2_arr = np.empty(m, dtype=np.float64)
    f_arr = np.empty(m, dtype=np.int8)
    best_arr = np.empty(m, dtype=np.int8)
    cdef double[::1] g = g_arr
    cdef double[::1] vn2 = vn2_arr
    cdef signed char[::1] f = f_arr
    cdef signed char[::1] best_f = best_arr

    cdef Py_ssize_t i, j, t
    cdef unsigned long long step, total, bits
    cdef double s, q, acc, delta, dot, gv, vv, value, best_value

    for j in range(m):
        acc = 0.0
        for i in range(n):
            acc += V[j, i] * V[j, i]
        vn2[j] = acc

    # Gray start: all enumerated signs -1, fixed last sign +1.
    for j in range(n):
        f[j] = -1
    f[n] = 1
    for i in range(n):
        acc = V[n, i]
        for j in range(n):
            acc -= V[j, i]
        g[i] = acc
    s = c[n]
    for j in range(n):
        s -= c[j]
    q = 0.0
    for i in range(n):
        q += g[i] * g[i]

    best_value = radius * sqrt(q if q > 0.0 else 0.0) + fabs(s)
    for j in range(m):
        best_f[j] = f[j]

    total = (<unsigned long long> 1) << n
    with nogil:
        for step in range(1, total):
            # Gray code flips the position of the lowest set bit.
            bits = step
            t = 0
            while (bits & 1) == 0:
                bits >>= 1
                t += 1
            delta = -2.0 * f[t]
            f[t] = <signed char> (-f[t])
            dot = 0.0
            for i in range(n):
                gv = g[i]
                vv = V[t, i]
                dot += gv * vv
                g[i] = gv + delta * vv
            q += 2.0 * delta * dot + 4.0 * vn2[t]
            s += delta * c[t]
            if (step & REFRESH_MASK) == 0:
                for i in range(n):
                    acc = 0.0
                    for j in range(m):
                        acc += f[j] * V[j, i]
                    g[i] = acc
                q = 0.0
                for i in range(n):
                    q += g[i] * g[i]
                s = 0.0
                for j in range(m):
                    s += f[j] * c[j]
            value = radius * sqrt(q if q > 0.0 else 0.0) + fabs(s)
            if value > best_value:
                best_value = value
                for j in range(m):
                    best_f[j] = f[j]
            elif value == best_value and _lex_smaller(f, best_f, m):
                for j in range(m):
                    best_f[j] = f[j]

    # Fresh evaluation of the winner removes incremental rounding.
    q = 0.0
    for i in range(n):
        acc = 0.0
        for j in range(m):
            acc += best_f[j] * V[j, i]
        q += acc * acc
    s = 0.0
    for j in range(m):
        s += best_f[j] * c[j]
    best_value = radius * sqrt(q) + fabs(s)
    return best_value, best_arr
