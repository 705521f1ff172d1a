"""Pure-Python twins of the compiled kernels.

Same arithmetic, same evaluation order as ``_kernels_c.pyx`` so that both
backends produce bit-identical results (the extension is compiled with
FP contraction disabled).
"""

import numpy as np

BACKEND = "python"


def recurrence_grid(alpha, beta, gamma, chi, i_max, n_max):
    """Fill the transition table T[i][n] for 0 <= i <= i_max, 0 <= n <= n_max.

    T[0][0] = chi, T[i][n] = alpha*T[i-1][n] + beta*T[i][n-1]
    + gamma*T[i-1][n-1], with out-of-range entries treated as zero.
    """
    prev = [0.0] * (n_max + 1)
    prev[0] = chi
    for n in range(1, n_max + 1):
        prev[n] = beta * prev[n - 1]
    rows = [prev]
    for _ in range(i_max):
        cur = [0.0] * (n_max + 1)
        cur[0] = alpha * prev[0]
        for n in range(1, n_max + 1):
            cur[n] = alpha * prev[n] + beta * cur[n - 1] + gamma * prev[n - 1]
        rows.append(cur)
        prev = cur
    return np.array(rows, dtype=np.float64)


def ladder_matvec(alpha, beta, nu, v, out_len):
    """Apply the banded lower-triangular ladder matrix to v.

    out[k] = alpha*v[k] + nu * sum_{m>=1} beta**(m-1) * v[k-m], evaluated
    through the running sum s[k] = beta*s[k-1] + v[k-1].
    """
    m = len(v)
    out = [0.0] * out_len
    s = 0.0
    for k in range(out_len):
        if k > 0:
            s = beta * s + (v[k - 1] if k - 1 < m else 0.0)
        out[k] = (alpha * v[k] if k < m else 0.0) + nu * s
    return np.array(out, dtype=np.float64)
