"""Kernel selection: the compiled extension when it was built, else pure Python.

Set ``DCURRENT_PURE=1`` to force the fallback (the benchmark and the kernel
agreement tests do this per call through :func:`load`).
"""
import os

from . import _kernels_py


def load(prefer_compiled=True):
    if prefer_compiled:
        try:
            from . import _ckernels
            return _ckernels
        except ImportError:
            pass
    return _kernels_py


_impl = load(os.environ.get("DCURRENT_PURE", "") in ("", "0"))
BACKEND = "compiled" if _impl is not _kernels_py else "python"

mul_terms = _impl.mul_terms
add_scaled = _impl.add_scaled
rref = _impl.rref
matmul = _impl.matmul
