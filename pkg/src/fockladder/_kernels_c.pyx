# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for the hot inner loops.

Arithmetic and evaluation order match ``_kernels_py`` exactly; the module
is built with FP contraction disabled so both backends agree bit for bit.
"""

import numpy as np

BACKEND = "compiled"


def recurrence_grid(double alpha, double beta, double gamma, double chi,
                    Py_ssize_t i_max, Py_ssize_t n_max):
    """Fill the transition table T[i][n] for 0 <= i <= i_max, 0 <= n <= n_max."""
    rows = np.zeros((i_max + 1, n_max + 1), dtype=np.float64)
    cdef double[:, ::1] T = rows
    cdef Py_ssize_t i, n
    T[0, 0] = chi
    for n in range(1, n_max + 1):
        T[0, n] = beta * T[0, n - 1]
    for i in range(1, i_max + 1):
        T[i, 0] = alpha * T[i - 1, 0]
        for n in range(1, n_max + 1):
            T[i, n] = alpha * T[i - 1, n] + beta * T[i, n - 1] + gamma * T[i - 1, n - 1]
    return rows


def ladder_matvec(double alpha, double beta, double nu, const double[::1] v,
                  Py_ssize_t out_len):
    """Apply the banded lower-triangular ladder matrix to v."""
    out = np.zeros(out_len, dtype=np.float64)
    cdef double[::1] y = out
    cdef Py_ssize_t m = v.shape[0]
    cdef Py_ssize_t k
    cdef double s = 0.0
    for k in range(out_len):
        if k > 0:
            s = beta * s + (v[k - 1] if k - 1 < m else 0.0)
        y[k] = (alpha * v[k] if k < m else 0.0) + nu * s
    return out
