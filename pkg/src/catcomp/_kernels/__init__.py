"""Search kernels: the compiled extension when it was built, else pure Python.

Set ``CATCOMP_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _pykernels

python_kernels = _pykernels

try:
    if os.environ.get("CATCOMP_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure-Python kernels forced by CATCOMP_PURE_PYTHON")
    from . import _ckernels as _active
    compiled_kernels = _active
except ImportError:
    _active = _pykernels
    try:
        from . import _ckernels as compiled_kernels
    except ImportError:
        compiled_kernels = None

BACKEND = _active.BACKEND
assoc_violations = _active.assoc_violations
mono_witness = _active.mono_witness
pullback_cones = _active.pullback_cones
is_universal_cone = _active.is_universal_cone
