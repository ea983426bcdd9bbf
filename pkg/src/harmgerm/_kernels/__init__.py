"""Arithmetic kernel selection.

The hot loops of the library are sparse polynomial multiplication and
rational RREF. Both exist twice with identical contracts: a compiled
Cython module (`_speedups`) and a pure-Python fallback (`pure`). The
compiled one is preferred when importable; set HARMGERM_PURE=1 to force
the fallback. Results are bit-identical either way, so the choice only
affects speed.
"""

import os

if os.environ.get("HARMGERM_PURE"):
    from .pure import poly_mul, rref

    BACKEND = "pure"
else:
    try:
        from ._speedups import poly_mul, rref

        BACKEND = "compiled"
    except ImportError:
        from .pure import poly_mul, rref

        BACKEND = "pure"


def active_backend() -> str:
    """Name of the kernel backend in use: "compiled" or "pure"."""
    return BACKEND


__all__ = ["poly_mul", "rref", "active_backend", "BACKEND"]
