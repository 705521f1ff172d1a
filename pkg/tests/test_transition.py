import math
from itertools import product

import numpy as np
import pytest

from fockladder import (TruncationError, abgx, analytic_special, grid_recurrence,
                        make_channel, row_multinomial, row_series,
                        series_rectangle)
from fockladder.channel import ChannelParams

IDENTITY = ChannelParams(alpha=0.0, beta=0.0, gamma=1.0, chi=1.0, nu=1.0)


def brute_force_loss_row(i, eta):
    """Independent pure-loss oracle: each of the i photons survives with
    probability eta; enumerate all 2**i survival patterns."""
    out = [0.0] * (i + 1)
    for pattern in product((0, 1), repeat=i):
        k = sum(pattern)
        out[k] += eta ** k * (1 - eta) ** (i - k)
    return np.array(out)


def test_identity_grid_is_delta():
    grid = grid_recurrence(IDENTITY, 8, n_max=12)
    expect = np.zeros((9, 13))
    for i in range(9):
        expect[i, i] = 1.0
    np.testing.assert_array_equal(grid.rows, expect)


def test_pure_loss_row_two_is_binomial():
    grid = grid_recurrence(abgx(make_channel("lossy", eta=0.5, thermal_N=0.0)), 2)
    np.testing.assert_allclose(grid.rows[2][:3], [0.25, 0.5, 0.25],
                               rtol=0, atol=1e-15)
    assert grid.rows[2][3:].max() == 0.0


@pytest.mark.parametrize("i,eta", [(1, 0.3), (3, 0.3), (5, 0.7), (6, 0.5)])
def test_pure_loss_rows_match_enumeration(i, eta):
    grid = grid_recurrence(abgx(make_channel("lossy", eta=eta, thermal_N=0.0)), i)
    expect = brute_force_loss_row(i, eta)
    np.testing.assert_allclose(grid.rows[i][:i + 1], expect, rtol=0, atol=1e-14)


def test_vacuum_row_is_geometric():
    p = abgx(make_channel("lossy", eta=0.5, thermal_N=1.0))
    grid = grid_recurrence(p, 0)
    # solving the recurrence at i=0: T[0][n] = chi * beta**n = (2/3)(1/3)**n
    assert grid.rows[0][0] == p.chi
    np.testing.assert_allclose(grid.rows[0][:3], [2 / 3, 2 / 9, 2 / 27],
                               rtol=0, atol=1e-15)


def test_first_cell_equals_chi_for_all_families():
    for spec in (make_channel("lossy", eta=0.3, thermal_N=2.0),
                 make_channel("amp", g=2.0, thermal_N=0.5),
                 make_channel("conj", g=5.0, thermal_N=2.0),
                 make_channel("noise", added_n=1.0)):
        p = abgx(spec)
        assert grid_recurrence(p, 2).rows[0][0] == p.chi


def test_adaptive_tails_meet_tolerance():
    p = abgx(make_channel("amp", g=5.0, thermal_N=2.0))
    grid = grid_recurrence(p, 20, tail_tol=1e-10)
    assert grid.tails.max() <= 1e-10
    assert grid.tails.min() >= 0.0


def test_truncation_error_at_hard_cap():
    p = abgx(make_channel("amp", g=5.0, thermal_N=2.0))
    with pytest.raises(TruncationError):
        grid_recurrence(p, 20, tail_tol=1e-10, hard_cap=64)


def test_rows_are_immutable():
    grid = grid_recurrence(IDENTITY, 3, n_max=5)
    with pytest.raises(ValueError):
        grid.rows[0][0] = 0.5


def test_nonnegativity_before_clamp():
    for spec in (make_channel("conj", g=2.0, thermal_N=1.0),
                 make_channel("lossy", eta=0.1, thermal_N=2.0),
                 make_channel("noise", added_n=2.0)):
        grid = grid_recurrence(abgx(spec), 30)
        assert grid.raw_min >= -1e-15


def test_normalization_row_sums():
    grid = grid_recurrence(abgx(make_channel("conj", g=2.0, thermal_N=1.0)), 25)
    for i in range(26):
        assert abs(math.fsum(grid.rows[i]) + grid.tails[i] - 1.0) <= 1e-13


def test_tail_halves_under_computed_stride():
    p = abgx(make_channel("amp", g=2.0, thermal_N=2.0))
    i_max, n0 = 10, 70
    base = grid_recurrence(p, i_max, n_max=n0)
    tail0 = base.tails.max()
    assert tail0 > 1e-8  # measurably above rounding noise
    # envelope n**i_max * beta**n: smallest stride s with
    # ((n+s)/n)**i_max * beta**s <= 1/2
    s = 1
    while ((n0 + s) / n0) ** i_max * p.beta ** s > 0.5:
        s += 1
    extended = grid_recurrence(p, i_max, n_max=n0 + s)
    assert extended.tails.max() <= 0.55 * tail0


def test_multinomial_vacuum_row():
    p = abgx(make_channel("amp", g=2.0, thermal_N=0.5))
    row = row_multinomial(p, 0, 12)
    np.testing.assert_allclose(row, p.chi * p.beta ** np.arange(13),
                               rtol=0, atol=1e-15)


def test_multinomial_one_one_cell():
    # expanding the sum by hand at i=n=1 gives chi*(2*alpha*beta + gamma)
    for spec in (make_channel("lossy", eta=0.3, thermal_N=1.0),
                 make_channel("conj", g=2.0, thermal_N=1.0)):
        p = abgx(spec)
        row = row_multinomial(p, 1, 3)
        assert row[1] == pytest.approx(p.chi * (2 * p.alpha * p.beta + p.gamma),
                                       abs=1e-15)


@pytest.mark.parametrize("spec", [
    make_channel("lossy", eta=0.5, thermal_N=1.0),
    make_channel("lossy", eta=0.1, thermal_N=2.0),   # gamma < 0
    make_channel("amp", g=2.0, thermal_N=0.5),
    make_channel("conj", g=5.0, thermal_N=2.0),      # gamma < 0, worst growth
    make_channel("noise", added_n=2.0),              # gamma < 0
], ids=lambda s: s.label())
def test_oracle_triangle_on_window(spec):
    p = abgx(spec)
    grid = grid_recurrence(p, 25)
    rect = series_rectangle(p, 25, grid.n_max)
    assert np.abs(grid.rows - rect).max() <= 1e-12
    n_win = min(grid.n_max, 60)
    for i in (0, 3, 12, 25):
        closed = row_multinomial(p, i, n_win)
        assert np.abs(closed - grid.rows[i][:n_win + 1]).max() <= 1e-12
        assert np.abs(closed - rect[i][:n_win + 1]).max() <= 1e-12


def test_series_constant_term_and_trace():
    p = abgx(make_channel("amp", g=2.0, thermal_N=0.5))
    grid = grid_recurrence(p, 10)
    rect = series_rectangle(p, 10, grid.n_max)
    assert rect[0, 0] == pytest.approx(p.chi, abs=1e-15)
    # truncated trace preservation: every row of the rectangle sums to 1 - tail
    sums = rect.sum(axis=1)
    np.testing.assert_allclose(sums, 1.0, rtol=0, atol=2e-10)


def test_row_series_matches_row_multinomial():
    p = abgx(make_channel("lossy", eta=0.7, thermal_N=0.5))
    np.testing.assert_allclose(row_series(p, 4, 40), row_multinomial(p, 4, 40),
                               rtol=0, atol=1e-13)


def test_analytic_special_pure_loss():
    spec = make_channel("lossy", eta=0.3, thermal_N=0.0)
    law = analytic_special(spec, 3, 8)
    expect = [math.comb(3, n) * 0.3 ** n * 0.7 ** (3 - n) for n in range(4)]
    np.testing.assert_allclose(law[:4], expect, rtol=0, atol=1e-15)
    assert law[4:].max() == 0.0


def test_analytic_special_quantum_limited_amplifier():
    # vacuum through gain 2: thermal with mean g-1 = 1, T_n = (1/2)**(n+1)
    spec = make_channel("amp", g=2.0, thermal_N=0.0)
    law = analytic_special(spec, 0, 10)
    np.testing.assert_allclose(law, 0.5 ** (np.arange(11) + 1), rtol=0, atol=1e-15)
    law3 = analytic_special(spec, 3, 12)
    grid = grid_recurrence(abgx(spec), 3)
    np.testing.assert_allclose(law3, grid.rows[3][:13], rtol=0, atol=1e-13)
    assert law3[:3].max() == 0.0  # negative binomial starts at n = i


def test_analytic_special_identity_and_fallthrough():
    assert analytic_special(make_channel("noise", added_n=0.0), 4, 6)[4] == 1.0
    assert analytic_special(make_channel("lossy", eta=0.5, thermal_N=1.0), 5, 10) is None


def test_analytic_special_vacuum_any_channel():
    spec = make_channel("conj", g=2.0, thermal_N=1.0)
    p = abgx(spec)
    law = analytic_special(spec, 0, 6)
    np.testing.assert_allclose(law, p.chi * p.beta ** np.arange(7),
                               rtol=0, atol=1e-15)
