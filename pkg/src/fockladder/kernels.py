"""Kernel backend selection.

Prefers the compiled extension, falls back to the pure-Python twins.
Set FOCKLADDER_PURE_PYTHON=1 to force the fallback (used by the kernel
equivalence tests and the benchmark).
"""

import os

if os.environ.get("FOCKLADDER_PURE_PYTHON"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels_c as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _impl

recurrence_grid = _impl.recurrence_grid
ladder_matvec = _impl.ladder_matvec
backend = _impl.BACKEND
