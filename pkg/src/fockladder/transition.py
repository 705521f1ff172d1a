"""Output photon-number distributions for Fock-state inputs.

The table T[i][n] (probability of n output photons given i input photons)
is generated by h(x, z) = chi / (1 - alpha*x - beta*z - gamma*x*z), which
is equivalent to the two-index recurrence

    T[i][n] = alpha*T[i-1][n] + beta*T[i][n-1] + gamma*T[i-1][n-1],

seeded by T[0][0] = chi. ``grid_recurrence`` runs that recurrence (the
production path, backed by the compiled kernel). Two independent oracles
recompute single rows: ``row_multinomial`` evaluates the closed-form
trinomial-expansion sum, and ``row_series`` extracts coefficients of
h(x, z) by iterated truncated polynomial multiplication of geometric
series. ``analytic_special`` supplies textbook laws for the physically
solvable corners.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext

import numpy as np

from .channel import ChannelParams, ChannelSpec, Family, abgx
from .errors import TruncationError
from .kernels import recurrence_grid

HARD_CAP = 20000          # absolute photon-number cutoff
DEFAULT_TAIL_TOL = 1e-10  # two orders below the 1e-12 comparison tolerances


@dataclass(frozen=True)
class TransitionGrid:
    """Rows i = 0..i_max of output distributions, truncated at n_max.

    tails[i] = 1 - sum(rows[i]) is the probability mass beyond n_max,
    clamped at zero against rounding. raw_min is the most negative entry
    produced by the recurrence before clamping (diagnostic; should never
    fall below -1e-15).
    """

    params: ChannelParams
    i_max: int
    n_max: int
    rows: np.ndarray
    tails: np.ndarray
    raw_min: float

    def row(self, i: int) -> np.ndarray:
        return self.rows[i]

    def to_csv(self) -> str:
        """One line per input index i; columns are n = 0..n_max, then the tail."""
        lines = []
        for i in range(self.i_max + 1):
            cells = [f"{v:.17g}" for v in self.rows[i]]
            cells.append(f"{self.tails[i]:.17g}")
            lines.append(",".join(cells))
        return "\n".join(lines) + "\n"

    def to_json_dict(self) -> dict:
        return {
            "params": self.params.to_json_dict(),
            "i_max": self.i_max,
            "n_max": self.n_max,
            "rows": [list(r) for r in self.rows],
            "tails": list(self.tails),
        }


def _initial_cutoff(beta: float, i_max: int, tail_tol: float) -> int:
    # Geometric-envelope guess: rows decay like beta**n past the bulge,
    # with a 0.05 guard for the pre-asymptotic polynomial factor.
    base = min(beta + 0.05, 0.999)
    return i_max + max(8, math.ceil(math.log(tail_tol) / math.log(base)))


def grid_recurrence(params: ChannelParams, i_max: int,
                    tail_tol: float = DEFAULT_TAIL_TOL,
                    n_max: int | None = None,
                    hard_cap: int = HARD_CAP) -> TransitionGrid:
    """Fill rows 0..i_max by the recurrence, choosing n_max adaptively.

    The cutoff starts at the geometric-envelope estimate and doubles until
    every row's tail is at most tail_tol. Passing n_max explicitly skips
    adaptation (tails are then whatever they are). Raises TruncationError
    if the cap would be exceeded before meeting tail_tol.
    """
    if tail_tol <= 0:
        raise ValueError("tail_tol must be positive")
    adaptive = n_max is None
    if adaptive:
        n_max = min(_initial_cutoff(params.beta, i_max, tail_tol), hard_cap)
    while True:
        rows = recurrence_grid(params.alpha, params.beta, params.gamma,
                               params.chi, i_max, n_max)
        tails = 1.0 - rows.sum(axis=1)
        if not adaptive or tails.max() <= tail_tol:
            break
        if n_max >= hard_cap:
            raise TruncationError(
                f"tail {tails.max():.3e} > {tail_tol:.3e} at the hard cap "
                f"n_max={hard_cap}")
        n_max = min(2 * n_max, hard_cap)
    raw_min = float(rows.min())
    np.clip(rows, 0.0, None, out=rows)
    np.clip(tails, 0.0, None, out=tails)
    rows.setflags(write=False)
    tails.setflags(write=False)
    return TransitionGrid(params=params, i_max=i_max, n_max=n_max,
                          rows=rows, tails=tails, raw_min=raw_min)


def _trinomial_coeff(i: int, n: int, c: int) -> int:
    # (i+n-c)! / ((i-c)! (n-c)! c!)
    return math.comb(i + n - c, i - c) * math.comb(n, c)


def _row_multinomial_float(params: ChannelParams, i: int, n_max: int) -> np.ndarray:
    """All-terms-positive evaluation (gamma >= 0): exact binomials for small
    totals, log-domain accumulation beyond (factorials would overflow)."""
    alpha, beta, gamma, chi = params.alpha, params.beta, params.gamma, params.chi
    la = math.log(alpha) if alpha > 0 else None
    lb = math.log(beta) if beta > 0 else None
    lg = math.log(gamma) if gamma > 0 else None
    out = np.zeros(n_max + 1)
    for n in range(n_max + 1):
        if i + n <= 60:
            total = 0.0
            for c in range(min(i, n) + 1):
                total += (_trinomial_coeff(i, n, c)
                          * alpha ** (i - c) * beta ** (n - c) * gamma ** c)
            out[n] = chi * total
            continue
        logs = []
        for c in range(min(i, n) + 1):
            if (i - c and la is None) or (n - c and lb is None) or (c and lg is None):
                continue
            lt = math.log(_trinomial_coeff(i, n, c))
            lt += (i - c) * la if i - c else 0.0
            lt += (n - c) * lb if n - c else 0.0
            lt += c * lg if c else 0.0
            logs.append(lt)
        if not logs:
            continue
        top = max(logs)
        if top < -740.0:  # every term underflows; the entry is numerically 0
            continue
        out[n] = chi * math.exp(top) * math.fsum(math.exp(lt - top) for lt in logs)
    return out


def _row_multinomial_signed(params: ChannelParams, i: int, n_max: int) -> np.ndarray:
    """gamma < 0: the alternating sum cancels catastrophically in binary64
    (terms grow like (alpha+beta+|gamma|)**(i+n) while the result stays
    below 1), so accumulate in decimal with enough digits to absorb it."""
    growth = params.alpha + params.beta + abs(params.gamma)
    digits = 50
    if growth > 1.0:
        digits += math.ceil((i + n_max) * math.log10(growth))
    out = np.zeros(n_max + 1)
    with localcontext() as ctx:
        ctx.prec = digits + 35
        a_pow = [Decimal(1)]
        for _ in range(i):
            a_pow.append(a_pow[-1] * Decimal(params.alpha))
        b_pow = [Decimal(1)]
        for _ in range(n_max):
            b_pow.append(b_pow[-1] * Decimal(params.beta))
        g_pow = [Decimal(1)]
        for _ in range(min(i, n_max)):
            g_pow.append(g_pow[-1] * Decimal(params.gamma))
        chi = Decimal(params.chi)
        for n in range(n_max + 1):
            total = Decimal(0)
            for c in range(min(i, n) + 1):
                total += (Decimal(_trinomial_coeff(i, n, c))
                          * a_pow[i - c] * b_pow[n - c] * g_pow[c])
            out[n] = float(chi * total)
    return out


def row_multinomial(params: ChannelParams, i: int, n_max: int) -> np.ndarray:
    """Closed-form oracle for row i: expanding the generating function as a
    geometric series in (alpha*x + beta*z + gamma*x*z) gives

        T[i][n] = chi * sum_c (i+n-c)!/((i-c)!(n-c)!c!)
                             * alpha**(i-c) * beta**(n-c) * gamma**c,

    with c running over 0..min(i, n). Independent of the recurrence."""
    if params.gamma < 0.0:
        return _row_multinomial_signed(params, i, n_max)
    return _row_multinomial_float(params, i, n_max)


def series_rectangle(params: ChannelParams, i_max: int, n_max: int) -> np.ndarray:
    """Coefficients of h(x, z) on the rectangle [0..i_max] x [0..n_max] by
    iterated truncated polynomial multiplication of geometric series.

    Uses the factored form h = chi * U / (1 - nu*x*z*U) with
    U(x, z) = 1/((1 - alpha*x)(1 - beta*z)), iterating H <- U + nu*xz*(U*H)
    to the fixed point. Every quantity is nonnegative, so the extraction
    is stable for all four families (the raw trinomial expansion is not
    once gamma < 0). Multiplication by U is carried out as one geometric
    scan per variable.
    """
    alpha, beta, nu, chi = params.alpha, params.beta, params.nu, params.chi
    a_pow = alpha ** np.arange(i_max + 1, dtype=np.float64)
    b_pow = beta ** np.arange(n_max + 1, dtype=np.float64)
    U = np.outer(a_pow, b_pow)
    H = U.copy()
    scratch = np.empty_like(U)
    for _ in range(min(i_max, n_max)):
        # scratch = U (*) H, i.e. C[a,b] = sum_{a'<=a,b'<=b} a_pow[a-a'] b_pow[b-b'] H[a',b']
        scratch[0] = H[0]
        for a in range(1, i_max + 1):
            scratch[a] = H[a] + alpha * scratch[a - 1]
        for b in range(1, n_max + 1):
            scratch[:, b] += beta * scratch[:, b - 1]
        new = U.copy()
        new[1:, 1:] += nu * scratch[:-1, :-1]
        H = new
    return chi * H


def row_series(params: ChannelParams, i: int, n_max: int) -> np.ndarray:
    """Row i of the generating-function coefficient rectangle (second oracle)."""
    return series_rectangle(params, i, n_max)[i]


def _is_identity(spec: ChannelSpec) -> bool:
    return ((spec.family is Family.LOSSY and spec.eta == 1.0)
            or (spec.family is Family.AMP and spec.g == 1.0)
            or (spec.family is Family.NOISE and spec.added_n == 0.0))


def analytic_special(spec: ChannelSpec, i: int, n_max: int) -> np.ndarray | None:
    """Known closed-form output laws, or None when no law applies.

    identity channel          -> delta at n = i
    noiseless loss (N=0)      -> Binomial(i, eta)
    noiseless amplifier (N=0) -> C(n, i) g**-(i+1) (1-1/g)**(n-i) for n >= i
    vacuum input (i=0), any   -> geometric chi * beta**n
    """
    out = np.zeros(n_max + 1)
    if _is_identity(spec):
        if i <= n_max:
            out[i] = 1.0
        return out
    if spec.family is Family.LOSSY and spec.thermal_N == 0.0:
        eta = spec.eta
        for n in range(min(i, n_max) + 1):
            out[n] = math.comb(i, n) * eta ** n * (1.0 - eta) ** (i - n)
        return out
    if spec.family is Family.AMP and spec.thermal_N == 0.0:
        g = spec.g
        for n in range(i, n_max + 1):
            out[n] = math.comb(n, i) * (1.0 / g) ** (i + 1) * (1.0 - 1.0 / g) ** (n - i)
        return out
    if i == 0:
        p = abgx(spec)
        out[0] = p.chi
        for n in range(1, n_max + 1):
            out[n] = out[n - 1] * p.beta
        return out
    return None
