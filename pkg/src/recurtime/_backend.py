"""Pick the compiled kernels when available, else the pure-Python twins.

Set ``RECURTIME_PURE_PYTHON=1`` to force the fallback.
"""

import os

if os.environ.get("RECURTIME_PURE_PYTHON", "") not in ("", "0"):
    from . import _kernels_py as kernels
    COMPILED = False
else:
    try:
        from . import _kernels as kernels
        COMPILED = True
    except ImportError:  # no compiler at install time
        from . import _kernels_py as kernels
        COMPILED = False

from . import _kernels_py as python_kernels

__all__ = ["kernels", "python_kernels", "COMPILED"]
