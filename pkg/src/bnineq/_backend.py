"""Select the compiled kernels when available, otherwise the numpy fallback.

Set ``BNINEQ_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _kernels_py

BACKEND = "python"

if os.environ.get("BNINEQ_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl

        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _kernels_py
else:
    _impl = _kernels_py

eval_trig = _impl.eval_trig
hilbert_window = _impl.hilbert_window
sinc_synth = _impl.sinc_synth

__all__ = ["BACKEND", "eval_trig", "hilbert_window", "sinc_synth"]
