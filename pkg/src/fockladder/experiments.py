"""Runnable verifications: the output-majorization ladder, its mixture
consequences, the passive-path scan over binary Fock mixtures, and the
counterexample searches for the generalizations that fail.

Everything here is deterministic: random corpora come from seeded
generators and aggregation follows input order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .channel import ChannelSpec, Family, abgx, make_channel
from .errors import WitnessError
from .kernels import ladder_matvec
from .majorization import (FockDiagonalState, MajorizationVerdict, Relation,
                           fock_compare, majorize_compare, mix)
from .transition import TransitionGrid, grid_recurrence

DEFAULT_SEED = 20240


def standard_grid() -> list[ChannelSpec]:
    """The fixed channel battery used by every 'standard grid' check:
    noiseless through strongly noisy instances of all four families."""
    specs = []
    for eta in (0.1, 0.3, 0.5, 0.7, 0.9):
        for N in (0.0, 0.5, 2.0):
            specs.append(make_channel(Family.LOSSY, eta=eta, thermal_N=N))
    for family in (Family.AMP, Family.CONJ):
        for g in (1.2, 2.0, 5.0):
            for N in (0.0, 0.5, 2.0):
                specs.append(make_channel(family, g=g, thermal_N=N))
    for n in (0.5, 1.0, 2.0):
        specs.append(make_channel(Family.NOISE, added_n=n))
    return specs


# ---------------------------------------------------------------------------
# Ladder verification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LadderReport:
    """Step-by-step comparison of consecutive output rows.

    worst_slack aggregates the left-direction prefix margins of all steps
    (the direction the ladder asserts); witness_max_err is the largest
    entrywise deviation of D @ t(i) from t(i+1).
    """

    channel: ChannelSpec
    i_max: int
    verdicts: tuple
    worst_slack: float
    witness_max_err: float
    passed: bool

    def to_json_dict(self) -> dict:
        return {
            "channel": self.channel.to_json_dict(),
            "i_max": self.i_max,
            "steps": [v.to_json_dict() for v in self.verdicts],
            "worst_slack": self.worst_slack,
            "witness_max_err": self.witness_max_err,
            "pass": self.passed,
        }


def ladder_verify(spec: ChannelSpec, i_max: int = 30, tol: float = 1e-12,
                  tail_tol: float = 1e-10) -> LadderReport:
    """Check that each output row majorizes the next one, for Fock inputs
    0..i_max, and cross-check each step through the ladder matrix."""
    params = abgx(spec)
    grid = grid_recurrence(params, i_max, tail_tol)
    verdicts = []
    worst = np.inf
    witness_err = 0.0
    for i in range(i_max):
        p = FockDiagonalState.from_grid_row(grid, i)
        q = FockDiagonalState.from_grid_row(grid, i + 1)
        v = majorize_compare(p, q, tol)
        verdicts.append(v)
        worst = min(worst, v.left_slack)
        image = ladder_matvec(params.alpha, params.beta, params.nu,
                              grid.rows[i], grid.n_max + 1)
        witness_err = max(witness_err, float(np.abs(image - grid.rows[i + 1]).max()))
    passed = all(v.holds_left for v in verdicts)
    return LadderReport(channel=spec, i_max=i_max, verdicts=tuple(verdicts),
                        worst_slack=float(worst), witness_max_err=witness_err,
                        passed=passed)


# ---------------------------------------------------------------------------
# Mixture properties
# ---------------------------------------------------------------------------

def _output_of_mixture(grid: TransitionGrid, coeffs, offset: int = 0) -> FockDiagonalState:
    """Channel output of sum_i coeffs[i] |i+offset><i+offset|."""
    states = [FockDiagonalState.from_grid_row(grid, i + offset)
              for i in range(len(coeffs))]
    return mix(states, coeffs)


def _ensure_grid(spec, i_need, grid, tail_tol=1e-10) -> TransitionGrid:
    if grid is not None:
        if grid.params != abgx(spec):
            raise ValueError("supplied grid was built for a different channel")
        if grid.i_max < i_need:
            raise ValueError(f"supplied grid has i_max={grid.i_max} < {i_need}")
        return grid
    return grid_recurrence(abgx(spec), i_need, tail_tol)


def mixture_shift_check(spec: ChannelSpec, coeffs, k: int, tol: float = 1e-12,
                        grid: Optional[TransitionGrid] = None) -> MajorizationVerdict:
    """Output of a Fock mixture against the output of the same mixture
    shifted up by k levels.

    The shifted output must equal D**k applied to the unshifted one; that
    identity is verified entrywise (WitnessError beyond tol) and certifies
    the expected LeftMajorizes verdict, which is returned.
    """
    coeffs = np.asarray(coeffs, dtype=np.float64)
    grid = _ensure_grid(spec, len(coeffs) - 1 + k, grid)
    params = grid.params
    p = _output_of_mixture(grid, coeffs)
    q = _output_of_mixture(grid, coeffs, offset=k)
    if k > 0:
        w = p.weights.copy()
        for _ in range(k):
            w = ladder_matvec(params.alpha, params.beta, params.nu, w, len(w))
        err = float(np.abs(w - q.weights).max())
        if err > tol:
            raise WitnessError(
                f"D^{k} image deviates from the shifted output by {err:.3e}")
    return majorize_compare(p, q, tol)


def mixture_vs_lowest_fock(spec: ChannelSpec, coeffs, k: int, tol: float = 1e-12,
                           grid: Optional[TransitionGrid] = None) -> MajorizationVerdict:
    """Output of Fock state k against the output of a mixture whose lowest
    component is k.

    Witness: the mixture output equals (sum_i coeffs[i] D**i) applied to
    row k; convexity of column-stochastic matrices then forces the row-k
    output to majorize it.
    """
    coeffs = np.asarray(coeffs, dtype=np.float64)
    grid = _ensure_grid(spec, len(coeffs) - 1 + k, grid)
    params = grid.params
    p = FockDiagonalState.from_grid_row(grid, k)
    q = _output_of_mixture(grid, coeffs, offset=k)
    v = p.weights.copy()
    acc = coeffs[0] * v
    for ci in coeffs[1:]:
        v = ladder_matvec(params.alpha, params.beta, params.nu, v, len(v))
        acc = acc + ci * v
    err = float(np.abs(acc - q.weights).max())
    if err > tol:
        raise WitnessError(
            f"convex-combination image deviates from the mixture output by {err:.3e}")
    return majorize_compare(p, q, tol)


# ---------------------------------------------------------------------------
# Passive-path scan over binary Fock mixtures
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BinaryPattern:
    """Uniform mixture of the Fock states flagged by a 0/1 occupation string.

    Bit position 0 is Fock index 0, so pushing ones to the left lowers the
    energy; the passive arrangement has all ones first.
    """

    bits: tuple

    def __post_init__(self):
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError("bits must be 0 or 1")
        if sum(self.bits) < 1:
            raise ValueError("pattern needs at least one occupied level")

    @classmethod
    def from_string(cls, text: str) -> "BinaryPattern":
        return cls(tuple(int(ch) for ch in text))

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits)

    @property
    def n_ones(self) -> int:
        return sum(self.bits)

    @property
    def energy(self) -> float:
        ones = [i for i, b in enumerate(self.bits) if b]
        return sum(ones) / len(ones)

    def is_passive(self) -> bool:
        return list(self.bits) == sorted(self.bits, reverse=True)

    def passivize_suffix(self, core_len: int) -> "BinaryPattern":
        suffix = sorted(self.bits[core_len:], reverse=True)
        return BinaryPattern(self.bits[:core_len] + tuple(suffix))

    def state(self) -> FockDiagonalState:
        w = np.asarray(self.bits, dtype=np.float64) / self.n_ones
        return FockDiagonalState.from_weights(w)


def passive_path(pattern: BinaryPattern) -> list[BinaryPattern]:
    """Path from the pattern to its passive arrangement.

    Each move keeps the longest possible prefix fixed and rearranges the
    remaining suffix to its minimal-energy order; the conjecture under
    test says every such move lowers the output disorder.
    """
    path = [pattern]
    current = pattern
    while not current.is_passive():
        for core_len in range(len(current.bits) - 1, -1, -1):
            step = current.passivize_suffix(core_len)
            if step.bits != current.bits:
                current = step
                path.append(current)
                break
    return path


def _pattern_output(grid: TransitionGrid, pattern: BinaryPattern) -> FockDiagonalState:
    ones = [i for i, b in enumerate(pattern.bits) if b]
    w = grid.rows[ones].sum(axis=0) / len(ones)
    tail = float(grid.tails[ones].sum()) / len(ones)
    return FockDiagonalState.from_weights(w, tail)


@dataclass(frozen=True)
class ConjectureReport:
    channel: ChannelSpec
    length: int
    seed: int
    n_patterns: int
    n_swap_checks: int
    n_chain_steps: int
    worst_slack: float
    violations: tuple
    passed: bool
    exploratory: tuple  # non-binary samples; reported, never asserted

    def to_json_dict(self) -> dict:
        return {
            "channel": self.channel.to_json_dict(),
            "length": self.length,
            "seed": self.seed,
            "n_patterns": self.n_patterns,
            "n_swap_checks": self.n_swap_checks,
            "n_chain_steps": self.n_chain_steps,
            "worst_slack": self.worst_slack,
            "violations": list(self.violations),
            "pass": self.passed,
            "exploratory": list(self.exploratory),
        }


def conjecture_scan(spec: ChannelSpec, length: int, tol: float = 1e-12,
                    nonbinary_samples: int = 0, seed: int = DEFAULT_SEED,
                    grid: Optional[TransitionGrid] = None) -> ConjectureReport:
    """Exhaustively test, over binary patterns of the given length, that
    moving occupation toward lower Fock levels never increases the output
    disorder.

    Two checks per the scan contract: (a) for every core prefix, the
    pattern core+110 (ones left) must produce an output majorizing that
    of core+011; (b) along every pattern's passive path, input energy
    decreases and each output majorizes its predecessor's. Optionally
    samples occupation numbers beyond {0, 1}, where the relation is known
    to break down; those verdicts are reported but never asserted.
    """
    if length > 16:
        raise ValueError("exhaustive enumeration is limited to length <= 16")
    grid = _ensure_grid(spec, length - 1, grid)
    violations = []
    worst = np.inf
    cache: dict = {}

    def compare(left: BinaryPattern, right: BinaryPattern) -> MajorizationVerdict:
        key = (left.bits, right.bits)
        if key not in cache:
            cache[key] = majorize_compare(_pattern_output(grid, left),
                                          _pattern_output(grid, right), tol)
        return cache[key]

    n_swap = 0
    if length >= 3:
        for core in itertools.product((0, 1), repeat=length - 3):
            active = BinaryPattern(core + (0, 1, 1))
            passive = BinaryPattern(core + (1, 1, 0))
            v = compare(passive, active)
            n_swap += 1
            worst = min(worst, v.left_slack)
            if not v.holds_left:
                violations.append({"check": "swap", "pattern": str(active),
                                   "relation": v.relation.value,
                                   "slack": v.worst_slack})

    n_patterns = 0
    n_steps = 0
    for bits in itertools.product((0, 1), repeat=length):
        if sum(bits) < 2:
            continue
        n_patterns += 1
        path = passive_path(BinaryPattern(bits))
        for cur, nxt in zip(path, path[1:]):
            if nxt.energy > cur.energy:
                violations.append({"check": "path-energy", "pattern": str(cur),
                                   "next": str(nxt)})
            v = compare(nxt, cur)
            n_steps += 1
            worst = min(worst, v.left_slack)
            if not v.holds_left:
                violations.append({"check": "path", "pattern": str(cur),
                                   "next": str(nxt),
                                   "relation": v.relation.value,
                                   "slack": v.worst_slack})

    exploratory = []
    if nonbinary_samples > 0:
        rng = np.random.default_rng(seed)
        for _ in range(nonbinary_samples):
            occ = rng.integers(0, 3, size=length)
            if occ.sum() < 2 or occ.max() < 2:
                continue
            cut = int(rng.integers(0, length - 1))
            rearranged = np.concatenate([occ[:cut], np.sort(occ[cut:])[::-1]])
            if (rearranged == occ).all():
                continue
            w_active = occ / occ.sum()
            w_passive = rearranged / rearranged.sum()
            v = majorize_compare(
                _output_of_weights(grid, w_passive),
                _output_of_weights(grid, w_active), tol)
            exploratory.append({"occupation": occ.tolist(),
                                "rearranged": rearranged.tolist(),
                                "relation": v.relation.value,
                                "slack": v.worst_slack})

    return ConjectureReport(
        channel=spec, length=length, seed=seed, n_patterns=n_patterns,
        n_swap_checks=n_swap, n_chain_steps=n_steps,
        worst_slack=float(worst) if np.isfinite(worst) else 0.0,
        violations=tuple(violations), passed=not violations,
        exploratory=tuple(exploratory))


def _output_of_weights(grid: TransitionGrid, weights) -> FockDiagonalState:
    w = np.asarray(weights, dtype=np.float64)
    out = w @ grid.rows[:len(w)]
    tail = float(w @ grid.tails[:len(w)])
    return FockDiagonalState.from_weights(out, tail)


# ---------------------------------------------------------------------------
# Counterexample search
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CorpusPair:
    """An ordered input pair: either energy(rho) <= energy(sigma), or rho
    dominates sigma in unsorted (Fock-order) prefix sums."""

    rho: FockDiagonalState
    sigma: FockDiagonalState
    kind: str  # "energy" or "fock"
    label: str


def make_counterexample_corpus(seed: int = DEFAULT_SEED,
                               n_random: int = 24) -> list[CorpusPair]:
    """Seeded corpus of ordered input pairs.

    Energy-ordered pairs mix a low Fock state against spread-out mixtures
    of higher mean energy (the kind of pair whose outputs typically become
    incomparable); Fock-ordered pairs are built by moving mass toward
    lower levels, which enforces dominance by construction.
    """
    rng = np.random.default_rng(seed)
    pairs = []

    def fds(values) -> FockDiagonalState:
        return FockDiagonalState.from_weights(np.asarray(values, dtype=np.float64))

    spread = {
        "fock1-vs-mix03": (fds([0, 1]), fds([0.5, 0, 0, 0.5])),
        "fock1-vs-mix04": (fds([0, 1]), fds([0.5, 0, 0, 0, 0.5])),
        "fock2-vs-mix05": (fds([0, 0, 1]), fds([0.5, 0, 0, 0, 0, 0.5])),
        "fock1-vs-mix004": (fds([0, 1]), fds([0.6, 0, 0, 0, 0.4])),
    }
    for label, (rho, sigma) in spread.items():
        if rho.energy <= sigma.energy:
            pairs.append(CorpusPair(rho, sigma, "energy", label))

    for j in range(n_random):
        size_r = int(rng.integers(2, 5))
        size_s = int(rng.integers(2, 5))
        sup_r = rng.choice(13, size=size_r, replace=False)
        sup_s = rng.choice(13, size=size_s, replace=False)
        a = np.zeros(13)
        b = np.zeros(13)
        a[sup_r] = rng.dirichlet(np.ones(size_r))
        b[sup_s] = rng.dirichlet(np.ones(size_s))
        rho, sigma = fds(a), fds(b)
        if rho.energy > sigma.energy:
            rho, sigma = sigma, rho
        pairs.append(CorpusPair(rho, sigma, "energy", f"random-energy-{j}"))

    for i, j in ((0, 1), (1, 3), (2, 5)):
        pairs.append(CorpusPair(FockDiagonalState.point_mass(i, j + 1),
                                FockDiagonalState.point_mass(j, j + 1),
                                "fock", f"fock{i}-vs-fock{j}"))
    for j in range(n_random):
        size = int(rng.integers(3, 7))
        sigma_w = np.zeros(11)
        sigma_w[rng.choice(11, size=size, replace=False)] = rng.dirichlet(np.ones(size))
        rho_w = sigma_w.copy()
        for _ in range(int(rng.integers(1, 4))):
            src = int(rng.integers(1, 11))
            dst = int(rng.integers(0, src))
            amount = rho_w[src] * rng.uniform(0.2, 1.0)
            rho_w[src] -= amount
            rho_w[dst] += amount
        pair = CorpusPair(fds(rho_w), fds(sigma_w), "fock", f"random-fock-{j}")
        assert fock_compare(pair.rho, pair.sigma).holds_left
        pairs.append(pair)
    return pairs


@dataclass(frozen=True)
class FindingsReport:
    """Search outcome on one channel: energy-ordered pairs whose outputs
    fail to majorize (the sought witnesses), and confirmation that Fock-order
    dominance survives the channel for every fock-ordered pair."""

    channel: ChannelSpec
    n_energy_pairs: int
    n_fock_pairs: int
    n_skipped: int
    energy_witnesses: tuple
    fock_worst_slack: float
    fock_ok: bool

    def to_json_dict(self) -> dict:
        return {
            "channel": self.channel.to_json_dict(),
            "n_energy_pairs": self.n_energy_pairs,
            "n_fock_pairs": self.n_fock_pairs,
            "n_skipped": self.n_skipped,
            "energy_witnesses": list(self.energy_witnesses),
            "fock_worst_slack": self.fock_worst_slack,
            "fock_ok": self.fock_ok,
        }


def counterexample_search(spec: ChannelSpec, corpus: list[CorpusPair],
                          tol: float = 1e-12,
                          grid: Optional[TransitionGrid] = None) -> FindingsReport:
    """Push every corpus pair through the channel.

    Energy-ordered pairs whose outputs are incomparable (or majorize the
    wrong way) are returned as witnesses that input energy ordering does
    not control output majorization. Fock-ordered pairs must keep their
    Fock-order dominance at the output; the worst margin is reported.
    Pairs whose energy ordering could be explained by truncated tail mass
    are skipped, not guessed.
    """
    i_need = max(len(p.rho.weights) - 1 for p in corpus)
    i_need = max(i_need, max(len(p.sigma.weights) - 1 for p in corpus))
    grid = _ensure_grid(spec, i_need, grid)
    witnesses = []
    n_energy = n_fock = n_skipped = 0
    fock_worst = np.inf
    fock_ok = True
    for pair in corpus:
        out_rho = _output_of_weights(grid, pair.rho.weights)
        out_sigma = _output_of_weights(grid, pair.sigma.weights)
        if pair.kind == "energy":
            lo_r, hi_r = pair.rho.energy_bounds()
            lo_s, hi_s = pair.sigma.energy_bounds()
            if hi_r > lo_s and pair.rho.tail + pair.sigma.tail > 0:
                n_skipped += 1
                continue
            n_energy += 1
            v = majorize_compare(out_rho, out_sigma, tol)
            if v.relation in (Relation.INCOMPARABLE, Relation.RIGHT_MAJORIZES):
                witnesses.append({"label": pair.label,
                                  "relation": v.relation.value,
                                  "slack": v.worst_slack,
                                  "at_index": v.at_index})
        else:
            n_fock += 1
            v = fock_compare(out_rho, out_sigma, tol)
            fock_worst = min(fock_worst, v.left_slack)
            if not v.holds_left:
                fock_ok = False
    return FindingsReport(
        channel=spec, n_energy_pairs=n_energy, n_fock_pairs=n_fock,
        n_skipped=n_skipped, energy_witnesses=tuple(witnesses),
        fock_worst_slack=float(fock_worst) if np.isfinite(fock_worst) else 0.0,
        fock_ok=fock_ok)
