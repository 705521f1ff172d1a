"""Majorization on truncated photon-number distributions and the ladder matrix.

p majorizes q when every prefix sum of the descending-sorted p dominates
the corresponding prefix of q. Certifying matrix form: q = D p for a
column-stochastic D (nonnegative, columns sum to 1, row sums <= 1 in the
half-infinite convention). The ladder matrix implemented here is banded
lower-triangular Toeplitz,

    D[k][l] = alpha * delta(k-l) + nu * beta**(k-l-1) * theta(k-l-1),

whose columns sum to (alpha+gamma)/(1-beta) = 1; it maps the output
distribution for input Fock state i-1 onto the one for input i.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .channel import ChannelParams
from .errors import NormalizationError
from .kernels import ladder_matvec

NORMALIZATION_TOL = 1e-12
DEFAULT_TOL = 1e-12


@dataclass(frozen=True)
class FockDiagonalState:
    """Probability weights over Fock indices 0..len-1 plus truncated tail mass."""

    weights: np.ndarray
    tail: float = 0.0

    @classmethod
    def from_weights(cls, weights, tail: float = 0.0) -> "FockDiagonalState":
        w = np.asarray(weights, dtype=np.float64).copy()
        w.setflags(write=False)
        return cls(weights=w, tail=float(tail))

    @classmethod
    def point_mass(cls, k: int, length: int | None = None) -> "FockDiagonalState":
        w = np.zeros((length if length is not None else k + 1), dtype=np.float64)
        w[k] = 1.0
        w.setflags(write=False)
        return cls(weights=w, tail=0.0)

    @classmethod
    def from_grid_row(cls, grid, i: int) -> "FockDiagonalState":
        return cls.from_weights(grid.rows[i], tail=float(grid.tails[i]))

    @property
    def energy(self) -> float:
        """Mean photon number of the retained weights (tail mass excluded)."""
        return float(np.arange(len(self.weights)) @ self.weights)

    def energy_bounds(self, cap: int = 20000) -> tuple[float, float]:
        """Interval containing the true energy: tail mass sits somewhere
        between index len(weights) and the cap used as an upper flag."""
        e = self.energy
        return (e + len(self.weights) * self.tail, e + cap * self.tail)

    def check_normalized(self, tol: float = NORMALIZATION_TOL) -> None:
        total = float(self.weights.sum()) + self.tail
        if abs(total - 1.0) > tol or self.tail < -tol or float(self.weights.min(initial=0.0)) < -tol:
            raise NormalizationError(
                f"weights+tail={total!r}, tail={self.tail!r} not a distribution "
                f"within {tol}")


def mix(states: list[FockDiagonalState], coeffs) -> FockDiagonalState:
    """Convex combination of states, zero-padded to the longest one."""
    c = np.asarray(coeffs, dtype=np.float64)
    if len(c) != len(states):
        raise ValueError("one coefficient per state required")
    if float(c.min(initial=0.0)) < 0 or abs(float(c.sum()) - 1.0) > NORMALIZATION_TOL:
        raise NormalizationError(f"mixture coefficients {coeffs!r} not a distribution")
    length = max(len(s.weights) for s in states)
    w = np.zeros(length)
    tail = 0.0
    for ci, s in zip(c, states):
        w[:len(s.weights)] += ci * s.weights
        tail += ci * s.tail
    return FockDiagonalState.from_weights(w, tail)


class Relation(str, enum.Enum):
    LEFT_MAJORIZES = "left_majorizes"
    RIGHT_MAJORIZES = "right_majorizes"
    EQUIVALENT = "equivalent"
    INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class MajorizationVerdict:
    """Outcome of a prefix-sum comparison.

    worst_slack is the most negative margin along the direction that
    decided the verdict (for incomparable pairs: the better of the two
    failing directions); at_index is the prefix where it occurs.
    left_slack and right_slack keep both directions auditable.
    """

    relation: Relation
    worst_slack: float
    at_index: int
    left_slack: float
    right_slack: float

    @property
    def holds_left(self) -> bool:
        return self.relation in (Relation.LEFT_MAJORIZES, Relation.EQUIVALENT)

    def to_json_dict(self) -> dict:
        return {"relation": self.relation.value, "worst_slack": self.worst_slack,
                "at_index": self.at_index, "left_slack": self.left_slack,
                "right_slack": self.right_slack}


def _padded_pair(p: FockDiagonalState, q: FockDiagonalState):
    length = max(len(p.weights), len(q.weights))
    wp = np.zeros(length)
    wq = np.zeros(length)
    wp[:len(p.weights)] = p.weights
    wq[:len(q.weights)] = q.weights
    return wp, wq


def _prefix_verdict(wp, wq, tol_eff) -> MajorizationVerdict:
    margins = np.cumsum(wp) - np.cumsum(wq)
    i_left = int(np.argmin(margins))
    left = float(margins[i_left])
    i_right = int(np.argmax(margins))
    right = float(-margins[i_right])
    left_ok = left >= -tol_eff
    right_ok = right >= -tol_eff
    if left_ok and right_ok:
        relation = Relation.EQUIVALENT
    elif left_ok:
        relation = Relation.LEFT_MAJORIZES
    elif right_ok:
        relation = Relation.RIGHT_MAJORIZES
    else:
        relation = Relation.INCOMPARABLE
    if relation is Relation.RIGHT_MAJORIZES:
        worst, at = right, i_right
    elif relation is Relation.LEFT_MAJORIZES:
        worst, at = left, i_left
    elif left <= right and relation is Relation.EQUIVALENT:
        worst, at = left, i_left
    elif relation is Relation.EQUIVALENT:
        worst, at = right, i_right
    else:  # incomparable: report the near-miss direction
        worst, at = (left, i_left) if left >= right else (right, i_right)
    return MajorizationVerdict(relation, worst, at, left, right)


def majorize_compare(p: FockDiagonalState, q: FockDiagonalState,
                     tol: float = DEFAULT_TOL) -> MajorizationVerdict:
    """Compare descending-sorted prefix sums of p against q.

    The tolerance is inflated by both tail masses so that truncation can
    never flip a verdict silently. Raises NormalizationError if either
    state is off normalization by more than 1e-12.
    """
    p.check_normalized()
    q.check_normalized()
    wp, wq = _padded_pair(p, q)
    wp = np.sort(wp)[::-1]
    wq = np.sort(wq)[::-1]
    return _prefix_verdict(wp, wq, tol + p.tail + q.tail)


def fock_compare(p: FockDiagonalState, q: FockDiagonalState,
                 tol: float = DEFAULT_TOL) -> MajorizationVerdict:
    """Unsorted variant: prefix sums taken in Fock-index order."""
    p.check_normalized()
    q.check_normalized()
    wp, wq = _padded_pair(p, q)
    return _prefix_verdict(wp, wq, tol + p.tail + q.tail)


@dataclass(frozen=True)
class LadderMatrix:
    """Banded lower-triangular Toeplitz matrix stored implicitly.

    Only (alpha, beta, nu, dim) are kept; entries are evaluated on demand
    and a dense realization is materialized only on explicit export.
    """

    params: ChannelParams
    dim: int

    @property
    def alpha(self) -> float:
        return self.params.alpha

    @property
    def beta(self) -> float:
        return self.params.beta

    @property
    def nu(self) -> float:
        return self.params.nu

    def entry(self, k: int, l: int) -> float:
        if k == l:
            return self.alpha
        if k > l:
            return self.nu * self.beta ** (k - l - 1)
        return 0.0

    def band(self) -> np.ndarray:
        """Entries alpha, nu, nu*beta, nu*beta**2, ... down the first column.

        Scalar pow throughout, so band values match entry() bit for bit.
        """
        out = np.empty(self.dim)
        out[0] = self.alpha
        for m in range(1, self.dim):
            out[m] = self.nu * self.beta ** (m - 1)
        return out

    def dense(self) -> np.ndarray:
        out = np.zeros((self.dim, self.dim))
        band = self.band()
        for l in range(self.dim):
            out[l:, l] = band[:self.dim - l]
        return out

    def to_json_dict(self) -> dict:
        return {"alpha": self.alpha, "beta": self.beta, "nu": self.nu,
                "dim": self.dim}

    def to_csv(self) -> str:
        if self.dim > 512:
            raise ValueError("dense CSV export is limited to dim <= 512; "
                             "use the JSON band descriptor instead")
        return "\n".join(
            ",".join(f"{v:.17g}" for v in row) for row in self.dense()) + "\n"


def build_D(params: ChannelParams, dim: int) -> LadderMatrix:
    """The ladder matrix at a given truncation."""
    if dim < 1:
        raise ValueError("dim must be >= 1")
    return LadderMatrix(params=params, dim=dim)


@dataclass(frozen=True)
class StochasticityReport:
    """Numerical column-stochasticity audit of a truncated ladder matrix.

    A column is counted as interior when its band fits inside the
    truncation, i.e. the discarded geometric remainder
    nu * beta**(dim-1-l) / (1-beta) is at most tol; only those columns
    can sum to 1 at tolerance. All columns are additionally checked
    against the analytic truncated sum alpha + nu*(1-beta**(dim-1-l))/(1-beta).
    """

    dim: int
    tol: float
    min_entry: float
    n_interior: int
    max_interior_col_dev: float
    max_col_sum: float
    max_row_sum: float
    max_col_truncation_dev: float
    ok: bool

    def to_json_dict(self) -> dict:
        return {
            "dim": self.dim, "tol": self.tol, "min_entry": self.min_entry,
            "n_interior": self.n_interior,
            "max_interior_col_dev": self.max_interior_col_dev,
            "max_col_sum": self.max_col_sum, "max_row_sum": self.max_row_sum,
            "max_col_truncation_dev": self.max_col_truncation_dev,
            "ok": self.ok,
        }


def check_column_stochastic(D: LadderMatrix, tol: float = DEFAULT_TOL) -> StochasticityReport:
    """Audit entries, column sums and row sums of the truncated matrix.

    Sums are accumulated numerically from the band entries (shared prefix
    sums, identical accumulation order to per-column summation).
    """
    alpha, beta, nu, dim = D.alpha, D.beta, D.nu, D.dim
    band = D.band()
    # prefix[t] = alpha + sum of the first t band entries below the diagonal
    prefix = np.concatenate(([alpha], alpha + np.cumsum(band[1:])))
    col_sums = prefix[::-1]            # column l keeps dim-1-l sub-diagonal entries
    row_sums = prefix                  # row k is the truncated reversed column
    min_entry = float(band.min()) if dim > 1 else alpha
    min_entry = min(min_entry, 0.0) if dim > 1 else min_entry

    if beta < 1.0:
        remainders = nu * beta ** np.arange(dim - 1, -1, -1) / (1.0 - beta)
    else:
        remainders = np.full(dim, np.inf)
    interior = remainders <= tol
    n_interior = int(interior.sum())
    if n_interior:
        max_interior_col_dev = float(np.abs(col_sums[interior] - 1.0).max())
    else:
        max_interior_col_dev = float("nan")
    expected_truncated = 1.0 - remainders  # analytic column sum at this truncation
    max_col_truncation_dev = float(np.abs(col_sums - expected_truncated).max())
    max_col_sum = float(col_sums.max())
    max_row_sum = float(row_sums.max())
    ok = (min_entry >= -1e-15
          and max_col_sum <= 1.0 + tol
          and max_row_sum <= 1.0 + tol
          and max_col_truncation_dev <= tol
          and (n_interior == 0 or max_interior_col_dev <= tol))
    return StochasticityReport(
        dim=dim, tol=tol, min_entry=min_entry, n_interior=n_interior,
        max_interior_col_dev=max_interior_col_dev, max_col_sum=max_col_sum,
        max_row_sum=max_row_sum, max_col_truncation_dev=max_col_truncation_dev,
        ok=ok)


def _growth_stride(beta: float) -> int:
    # room for the geometric band to decay below ~1e-18 per application
    if beta <= 0.0:
        return 1
    return max(1, min(4000, int(np.ceil(np.log(1e-18) / np.log(beta)))))


def apply_D_power(params: ChannelParams, k: int, v: FockDiagonalState,
                  out_len: int | None = None) -> FockDiagonalState:
    """Apply the ladder matrix k times by banded multiplications.

    The dense power is never materialized. Entries inside the output
    window are exact images of the retained input entries (the matrix is
    lower-triangular); mass pushed past the window joins the tail.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    if k == 0:
        return v
    if out_len is None:
        out_len = min(len(v.weights) + k * _growth_stride(params.beta), 200000)
    w = np.zeros(out_len)
    w[:len(v.weights)] = v.weights
    for _ in range(k):
        w = ladder_matvec(params.alpha, params.beta, params.nu, w, out_len)
    tail = max(0.0, 1.0 - float(w.sum()))
    return FockDiagonalState.from_weights(w, tail)


def convex_power_combination_column(params: ChannelParams, coeffs, col: int,
                                    out_len: int) -> np.ndarray:
    """Column `col` of sum_i coeffs[i] * D**i, via powers applied to a basis
    vector. Supports the convexity witness: the combination stays
    column-stochastic, so interior columns sum to 1."""
    c = np.asarray(coeffs, dtype=np.float64)
    v = np.zeros(out_len)
    v[col] = 1.0
    acc = c[0] * v
    for ci in c[1:]:
        v = ladder_matvec(params.alpha, params.beta, params.nu, v, out_len)
        acc = acc + ci * v
    return acc
