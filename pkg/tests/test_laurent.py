"""Truncated Laurent series over O_{K0}."""

import pytest
from hypothesis import given, strategies as st

from kummerbreak.artin_hasse import ep_int_coefficients
from kummerbreak.laurent import (TruncLaurent, frobenius_twist, l_map, ls_inv, ls_log1p,
                                 one)

LO, HI = -6, 12


@pytest.fixture(scope="module")
def R(std):
    return std.O0


def series(std, terms, lo=LO, hi=HI):
    R = std.O0
    return TruncLaurent.from_dict(R, lo, hi, terms, frob=std.frobenius0)


def X(std, n, c=1):
    return series(std, {n: c})


coef = st.lists(st.integers(0, 3 ** 6 - 1), min_size=2, max_size=2)


def power_series(std, cs):
    """1 + sum cs[i] X^(i+1)."""
    terms = {0: 1}
    for i, c in enumerate(cs):
        terms[i + 1] = c
    return series(std, terms)


def test_geometric_inverse(std):
    inv = ls_inv(one(std.O0, LO, HI, std.frobenius0) - X(std, 1))
    assert inv == series(std, {n: 1 for n in range(0, HI)})


def test_monomial_product(std):
    assert X(std, -1) * X(std, 1) == one(std.O0, LO, HI)


def test_inverse_of_non_unit(std):
    with pytest.raises(ZeroDivisionError):
        ls_inv(X(std, 1, 3))


@given(st.lists(coef, min_size=1, max_size=5), st.integers(-3, 3))
def test_inverse_two_sided_power_series(std, cs, d):
    R = std.O0
    cs = [list(c) for c in cs]
    cs[0] = [1 + 3 * cs[0][0], cs[0][1]]   # unit leading term
    a = series(std, {d + i: c for i, c in enumerate(cs)})
    inv = ls_inv(a)
    prod = a * inv
    # windowed products are certified below HI + min(d, 0)
    top = HI + min(d, 0)
    assert all(prod[n] == (R.one() if n == 0 else R.zero()) for n in range(LO, top))
    assert all(inv[n] == R.zero() for n in range(LO, -d))


def test_inverse_with_p_adic_tail_window_stable(std):
    # b = 1 + X + 3 X^-1 + 9 X^-3; residue of a / b is stable as the window grows
    terms = {0: 1, 1: 1, -1: 3, -3: 9}
    a_terms = {-2: 5, 0: 7, 3: 2}
    vals = []
    for W in (12, 24, 36):
        b = series(std, terms, -W, W)
        a = series(std, a_terms, -W, W)
        vals.append((a * ls_inv(b)).residue())
    assert vals[0] == vals[1] == vals[2]


def test_log_zero_and_functional_equation(std):
    R = std.O0
    assert ls_log1p(series(std, {})).is_zero()
    lhs = ls_log1p(X(std, 1)) + ls_log1p(X(std, 1, -1))
    rhs = ls_log1p(X(std, 2, -1))
    assert lhs == rhs


@given(coef, coef)
def test_log_additive(std, c1, c2):
    a = power_series(std, [c1])
    b = power_series(std, [c2, c1])
    one_ = one(std.O0, LO, HI, std.frobenius0)
    assert ls_log1p(a * b - one_) == ls_log1p(a - one_) + ls_log1p(b - one_)


def ep_series(std, u, c, lo=LO, hi=HI):
    """E_p(u X^c) on the window, u raw O_{K0} data."""
    R = std.O0
    T = hi // c + 1
    E = ep_int_coefficients(std.p, T, R.mod)
    terms = {}
    un = R.one()
    for n in range(T):
        if n * c < hi:
            terms[n * c] = R.smul(E[n], un)
        un = R.mul(un, u)
    return series(std, terms, lo, hi)


@pytest.mark.parametrize("code, c", [(1, 1), (4, 1), (7, 2), (2, 5)])
def test_log_of_artin_hasse(std, code, c):
    R = std.O0
    u = std.teich0(code)
    L = ls_log1p(ep_series(std, u, c) - one(R, LO, HI, std.frobenius0))
    expect = {}
    k, uk = 0, u
    while c * std.p ** k < HI:
        expect[c * std.p ** k] = R.smul(std.p ** (L.shift - k), uk)
        uk = R.pow(uk, std.p)
        k += 1
    assert L == series(std, expect).like(series(std, expect).c, shift=L.shift)


@pytest.mark.parametrize("code, c", [(1, 1), (4, 1), (7, 2), (2, 5), (5, 4)])
def test_l_map_of_artin_hasse(std, code, c):
    u = std.teich0(code)
    assert l_map(ep_series(std, u, c)) == X(std, c, list(u))


def test_l_map_one(std):
    assert l_map(one(std.O0, LO, HI, std.frobenius0)).is_zero()


@given(coef, coef, coef)
def test_l_map_additive(std, c1, c2, c3):
    a = power_series(std, [c1, c2])
    b = power_series(std, [c3])
    assert l_map(a * b) == l_map(a) + l_map(b)


def test_frobenius_twist_examples(std):
    R = std.O0
    c = [2, 1]
    tw = frobenius_twist(one(R, LO, HI, std.frobenius0) + X(std, 1, c))
    assert tw == one(R, LO, HI) + X(std, 3, std.frobenius0(c))
    assert frobenius_twist(X(std, 0, c)) == X(std, 0, std.frobenius0(c))


@given(coef, coef)
def test_frobenius_twist_reduces_to_pth_power(std, c1, c2):
    a = power_series(std, [c1, c2])
    lhs = frobenius_twist(a)
    rhs = a * a * a
    diff = lhs - rhs
    assert all(all(x % std.p == 0 for x in v) for v in diff.c)


def test_residue_examples(std):
    assert X(std, -1).residue() == std.O0.one()
    with pytest.raises(ValueError):
        TruncLaurent(std.O0, 0, 5).residue()


@given(st.dictionaries(st.integers(LO, HI - 1), coef, max_size=6))
def test_residue_of_derivative_vanishes(std, terms):
    F = series(std, terms)
    assert not any(F.derivative().residue())
