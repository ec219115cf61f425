"""Selects the compiled search kernel when built, else the pure-Python one.

Set ``VBPLAN_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _pysearch

try:
    if os.environ.get("VBPLAN_PURE_PYTHON"):
        raise ImportError("pure Python requested")
    from . import _core
except ImportError:
    _core = None

BACKEND = "compiled" if _core is not None else "python"


def kernel_class(backend: str | None = None):
    backend = backend or BACKEND
    if backend == "compiled":
        if _core is None:
            raise RuntimeError("compiled kernel is not built; run `python setup.py build_ext --inplace`")
        return _core.Kernel
    if backend == "python":
        return _pysearch.Kernel
    raise ValueError(f"unknown backend {backend!r}")


def available_backends() -> list[str]:
    return ["compiled", "python"] if _core is not None else ["python"]
