"""Kernel backend selection.

The compiled extension is used when importable; set ``CONTACT_FMETHOD_PURE=1``
to force the pure-Python kernels.  ``use_backend`` switches at runtime, which
the tests and the benchmark rely on.
"""
import os

from . import _kernels_py

_BACKENDS = {"python": _kernels_py}
try:
    from . import _kernels_c  # type: ignore[attr-defined]
except ImportError:  # pragma: no cover - depends on build
    _kernels_c = None
else:
    _BACKENDS["cython"] = _kernels_c

mono_mul = _kernels_py.mono_mul
mono_apply = _kernels_py.mono_apply
ff_reduce_row = _kernels_py.ff_reduce_row
BACKEND = "python"


def available_backends():
    return sorted(_BACKENDS)


def use_backend(name):
    global mono_mul, mono_apply, ff_reduce_row, BACKEND
    mod = _BACKENDS[name]
    mono_mul = mod.mono_mul
    mono_apply = mod.mono_apply
    ff_reduce_row = mod.ff_reduce_row
    BACKEND = name


if _kernels_c is not None and os.environ.get("CONTACT_FMETHOD_PURE", "") not in ("1", "true"):
    use_backend("cython")
