"""Hot-kernel backend selection.

The compiled extension is preferred when importable; the pure-Python
backend is a drop-in replacement producing bit-identical results.  Set
``CERTOSET_KERNEL=pure`` to force the fallback, ``CERTOSET_KERNEL=fast``
to require the extension (ImportError if missing).
"""

import os

_requested = os.environ.get("CERTOSET_KERNEL", "auto").strip().lower()

if _requested == "pure":
    from . import pure as _impl
elif _requested in ("auto", "fast", ""):
    try:
        from . import _fast as _impl  # type: ignore[attr-defined]
    except ImportError:
        if _requested == "fast":
            raise
        from . import pure as _impl
else:
    raise ValueError(f"unknown CERTOSET_KERNEL value: {_requested!r}")

BACKEND = _impl.BACKEND
chebyshev = _impl.chebyshev
min_chebyshev = _impl.min_chebyshev
oriented_hausdorff = _impl.oriented_hausdorff
hausdorff = _impl.hausdorff

__all__ = [
    "BACKEND",
    "chebyshev",
    "min_chebyshev",
    "oriented_hausdorff",
    "hausdorff",
]
