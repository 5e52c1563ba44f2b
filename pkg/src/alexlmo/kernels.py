"""Backend selection for the hot loops.

The compiled extension is used when it was built; setting ``ALEXLMO_PURE=1``
forces the pure-Python fallback.
"""

import os

BACKEND = "python"

if os.environ.get("ALEXLMO_PURE", "") not in ("1", "true", "yes"):
    try:
        from ._kernels import close_all, w_poly  # noqa: F401

        BACKEND = "cython"
    except ImportError:
        pass

if BACKEND == "python":
    from ._kernels_py import close_all, w_poly  # noqa: F401
