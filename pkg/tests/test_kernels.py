"""The compiled kernels and the pure-Python twins must agree bit for bit
(the extension is built with FP contraction disabled)."""

import numpy as np
import pytest

from fockladder import _kernels_py
from fockladder import abgx, make_channel

try:
    from fockladder import _kernels_c
except ImportError:
    _kernels_c = None

needs_ext = pytest.mark.skipif(_kernels_c is None,
                               reason="compiled extension not built")

PARAM_SETS = [
    abgx(make_channel("lossy", eta=0.5, thermal_N=1.0)),
    abgx(make_channel("amp", g=5.0, thermal_N=2.0)),
    abgx(make_channel("conj", g=2.0, thermal_N=1.0)),
    abgx(make_channel("noise", added_n=0.0)),
]


@needs_ext
@pytest.mark.parametrize("p", PARAM_SETS)
def test_recurrence_grid_twins_bit_identical(p):
    a = _kernels_c.recurrence_grid(p.alpha, p.beta, p.gamma, p.chi, 25, 400)
    b = _kernels_py.recurrence_grid(p.alpha, p.beta, p.gamma, p.chi, 25, 400)
    assert np.array_equal(a, b)


@needs_ext
@pytest.mark.parametrize("p", PARAM_SETS)
def test_ladder_matvec_twins_bit_identical(p):
    rng = np.random.default_rng(0)
    v = rng.dirichlet(np.ones(200))
    a = _kernels_c.ladder_matvec(p.alpha, p.beta, p.nu, v, 300)
    b = _kernels_py.ladder_matvec(p.alpha, p.beta, p.nu, v, 300)
    assert np.array_equal(a, b)


@needs_ext
def test_ladder_matvec_accepts_readonly_input():
    v = np.array([0.5, 0.5])
    v.setflags(write=False)
    out = _kernels_c.ladder_matvec(0.5, 0.0, 0.5, v, 4)
    np.testing.assert_allclose(out, [0.25, 0.5, 0.25, 0.0], rtol=0, atol=0)


def test_python_kernel_matches_closed_form():
    # vacuum row of the recurrence is chi * beta**n
    rows = _kernels_py.recurrence_grid(0.2, 0.3, 0.5, 0.7, 2, 6)
    np.testing.assert_allclose(rows[0], 0.7 * 0.3 ** np.arange(7),
                               rtol=0, atol=1e-16)


def test_backend_reported():
    import fockladder
    assert fockladder.kernel_backend in ("compiled", "python")
