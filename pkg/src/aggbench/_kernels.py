"""Kernel dispatch: compiled extension when available, NumPy fallback otherwise.

Set ``AGGBENCH_PURE_PYTHON=1`` to force the fallback (used by the kernel
benchmark and parity tests).
"""

import os

if os.environ.get("AGGBENCH_PURE_PYTHON"):
    from aggbench import _kernels_py as _impl
else:
    try:
        from aggbench import _ext as _impl  # type: ignore[attr-defined]
    except ImportError:
        from aggbench import _kernels_py as _impl

BACKEND: str = _impl.BACKEND
dominance_counts = _impl.dominance_counts
strict_inversions = _impl.strict_inversions
