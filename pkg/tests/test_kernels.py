"""The compiled kernel agrees with the pure-Python one."""

import os
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

from kummerbreak import _kernel_py
from kummerbreak.kernels import HAVE_COMPILED, Kernel

compiled = pytest.mark.skipif(not HAVE_COMPILED, reason="compiled kernel not built")


@st.composite
def towers(draw):
    f = draw(st.integers(1, 3))
    mod = 3 ** draw(st.integers(1, 19))
    levels = [(f, mod, [draw(st.integers(0, mod - 1)) for _ in range(f)])]
    dim = f
    for _ in range(draw(st.integers(0, 2))):
        n = draw(st.integers(1, 3))
        levels.append((n, dim, [[draw(st.integers(0, mod - 1)) for _ in range(dim)]
                                for _ in range(n)]))
        dim *= n
    k = draw(st.integers(0, len(levels) - 1))
    d = f
    for lv in levels[1:k + 1]:
        d *= lv[0]
    vec = st.lists(st.integers(0, mod - 1), min_size=d, max_size=d)
    return levels, k, draw(vec), draw(vec)


@compiled
@given(towers())
def test_mul_and_scale_agree(data):
    from kummerbreak import _kernel_c
    levels, k, a, b = data
    T = _kernel_c.Tower(levels)
    assert T.mul(k, a, b) == _kernel_py.mul(levels, k, a, b)
    if k:
        bd = len(a) // levels[k][0]
        c = b[:bd]
        assert T.scale(k, c, a) == _kernel_py.scale(levels, k, c, a)


def test_large_modulus_falls_back():
    levels = [(1, 3 ** 40, [1])]
    assert not Kernel(levels).compiled
    assert Kernel(levels).mul(0, [3 ** 39 + 2], [5]) == [(3 ** 39 + 2) * 5 % 3 ** 40]


def test_pure_kernel_selected_by_environment():
    env = dict(os.environ, KUMMERBREAK_PURE="1")
    out = subprocess.run([sys.executable, "-c",
                          "from kummerbreak.kernels import describe; print(describe())"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "pure-python"
