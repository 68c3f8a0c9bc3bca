"""Kernel dispatch: the compiled extension when importable, else pure Python.

Set ``UNCERTAIN_PROC_PURE=1`` to force the fallback.
"""

import os

from . import _pykernels

BACKEND = "python"
interval_order_cover = _pykernels.interval_order_cover
precedence_pairs = _pykernels.precedence_pairs

if os.environ.get("UNCERTAIN_PROC_PURE") != "1":
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        BACKEND = "cython"
        interval_order_cover = _ckernels.interval_order_cover
        precedence_pairs = _ckernels.precedence_pairs
