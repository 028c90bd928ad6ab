"""Kernel selection: compiled extension if built, pure Python otherwise.

Set GRIDTB_PURE=1 to force the pure-Python kernel (used by the
benchmark and by the kernel-parity tests).
"""

import os

if os.environ.get("GRIDTB_PURE") == "1":
    from . import _speedups_py as _impl
else:
    try:
        from . import _speedups as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _speedups_py as _impl

IMPLEMENTATION = _impl.IMPLEMENTATION
union_circles = _impl.union_circles
rank_exact = _impl.rank_exact
rank_mod2 = _impl.rank_mod2


def load_pure():
    from . import _speedups_py
    return _speedups_py


def load_compiled():
    """The compiled kernel module, or None when not built."""
    try:
        from . import _speedups
        return _speedups
    except ImportError:
        return None
