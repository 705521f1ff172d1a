"""Shannon and Renyi entropies of Fock-diagonal states, and the chain check.

All values are in nats (the CLI offers a bits conversion). Entries below
1e-300 are treated as exact zeros to keep denormal noise out of the sums.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import ChannelParams
from .errors import DomainError
from .majorization import FockDiagonalState
from .transition import TransitionGrid

ZERO_FLOOR = 1e-300
CHAIN_TOL = 1e-12


def shannon(p: FockDiagonalState) -> float:
    """-sum p_n ln p_n with 0 ln 0 = 0."""
    w = p.weights[p.weights > ZERO_FLOOR]
    return float(-(w * np.log(w)).sum())


def renyi(p: FockDiagonalState, order: float) -> float:
    """Renyi entropy of the given order: ln(sum p**order) / (1-order).

    order=1 delegates to shannon, order=0 gives the log support size,
    order=inf gives -ln(max p). Negative orders are out of domain.
    """
    if order < 0:
        raise DomainError("order", order, "order >= 0")
    w = p.weights[p.weights > ZERO_FLOOR]
    if order == 1:
        return shannon(p)
    if order == 0:
        return float(math.log(len(w)))
    if math.isinf(order):
        return float(-math.log(w.max()))
    return float(math.log((w ** order).sum()) / (1.0 - order))


def thermal_entropy(mean: float) -> float:
    """Closed form for a geometric (thermal) distribution of given mean:
    (mean+1) ln(mean+1) - mean ln(mean)."""
    if mean == 0.0:
        return 0.0
    return (mean + 1.0) * math.log(mean + 1.0) - mean * math.log(mean)


@dataclass(frozen=True)
class EntropyChainReport:
    """Entropies S_i of the output rows and their monotonicity in i."""

    params: ChannelParams          # channel echo
    order: float | None            # None means Shannon
    values: np.ndarray
    monotone: bool
    worst_violation: float         # max over i of S_i - S_{i+1}; <= tol when monotone

    def to_json_dict(self) -> dict:
        return {
            "params": self.params.to_json_dict(),
            "order": (None if self.order is None
                      else ("inf" if math.isinf(self.order) else self.order)),
            "values": list(self.values),
            "monotone": self.monotone,
            "worst_violation": self.worst_violation,
        }

    def to_csv(self) -> str:
        lines = ["i,entropy"]
        lines += [f"{i},{v:.17g}" for i, v in enumerate(self.values)]
        return "\n".join(lines) + "\n"


def chain_check(grid: TransitionGrid, order: float | None = None) -> EntropyChainReport:
    """Entropy of each grid row, asserting S_i <= S_{i+1} within 1e-12."""
    values = np.empty(grid.i_max + 1)
    for i in range(grid.i_max + 1):
        state = FockDiagonalState.from_grid_row(grid, i)
        values[i] = shannon(state) if order is None else renyi(state, order)
    if len(values) > 1:
        worst = float((values[:-1] - values[1:]).max())
    else:
        worst = 0.0
    values.setflags(write=False)
    return EntropyChainReport(params=grid.params, order=order, values=values,
                              monotone=worst <= CHAIN_TOL, worst_violation=worst)
