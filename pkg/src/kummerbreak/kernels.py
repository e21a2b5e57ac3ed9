"""Selects the arithmetic kernel at import time.

The compiled kernel (``_kernel_c``) is used when it was built and the
modulus fits in 31 bits; otherwise the pure-Python kernel runs. Setting
``KUMMERBREAK_PURE=1`` forces the pure-Python kernel.
"""

import os

from . import _kernel_py

try:
    if os.environ.get("KUMMERBREAK_PURE") == "1":
        raise ImportError("pure kernel requested")
    from . import _kernel_c
except ImportError:  # pragma: no cover - depends on the build
    _kernel_c = None

HAVE_COMPILED = _kernel_c is not None
_C_LIMIT = 1 << 31


class Kernel:
    """Multiplication routines bound to one tower descriptor."""

    def __init__(self, levels):
        self.levels = levels
        mod = levels[0][1]
        self.compiled = HAVE_COMPILED and mod < _C_LIMIT
        if self.compiled:
            self._handle = _kernel_c.Tower(levels)
            self.mul = self._handle.mul
            self.scale = self._handle.scale
        else:
            self.mul = self._py_mul
            self.scale = self._py_scale

    def _py_mul(self, k, a, b):
        return _kernel_py.mul(self.levels, k, a, b)

    def _py_scale(self, k, c, a):
        return _kernel_py.scale(self.levels, k, c, a)


def describe():
    return "compiled" if HAVE_COMPILED else "pure-python"
