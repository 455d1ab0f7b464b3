"""Kernel backend selection.

The compiled Cython module is used when it was built and imports cleanly;
otherwise the numpy fallback is used.  Setting ``MDGABOR_PURE_PYTHON=1``
forces the fallback.
"""
import os

from . import fallback

try:
    if os.environ.get("MDGABOR_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure python requested")
    from . import _core as _impl

    BACKEND = "cython"
except ImportError:
    _impl = fallback
    BACKEND = "python"


def compiled():
    """The compiled module if it is importable, else ``None``."""
    try:
        from . import _core
    except ImportError:
        return None
    return _core


correlation_block = _impl.correlation_block
analysis_block = _impl.analysis_block
walnut_apply = _impl.walnut_apply

__all__ = ["BACKEND", "compiled", "fallback", "correlation_block", "analysis_block", "walnut_apply"]
