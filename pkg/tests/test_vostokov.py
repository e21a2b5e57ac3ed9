"""Kummer pairing through the residue formula."""

import random

import pytest
from hypothesis import given, strategies as st

from kummerbreak.artin_hasse import ep_eval
from kummerbreak.laurent import ls_eval
from kummerbreak.linalg import Subspace
from kummerbreak.vostokov import (canonical_lift, context, evaluate_lift, level_generators,
                                  pairing, pairing_with_lifts, perturbed_lift, phi_series,
                                  s_series, trunc_pow_symmetry_check, unit_complement)

from oracles import artin_hasse_zeta_pairing

digit = st.tuples(st.integers(0, 8), st.integers(1, 7))
unit_digits = st.lists(digit, min_size=1, max_size=5)


def unit(field, digs):
    return field.one() + field.from_digits([(c, h) for c, h in digs if c])


def test_canonical_lift_of_one(std):
    ser = canonical_lift(std.one(), std).series
    assert {n for n, v in ser.terms().items() if any(v)} == {0}
    assert ser[0] == ser.ring.one()


@pytest.mark.parametrize("code, c", [(1, 1), (5, 2), (3, 4)])
def test_canonical_lift_evaluates_back(std, code, c):
    alpha = ep_eval(std.teichmuller(code) * std.pi ** c)
    val = evaluate_lift(canonical_lift(alpha, std), std)
    assert val.congruent(alpha, std.N)


def test_s_series(std):
    s = s_series(std)
    assert s.reduction_order() == std.d == 3
    # s(pi) = zeta^p - 1 = 0: evaluate the power-series part (s has no negative terms)
    ctx = context(std)
    assert ls_eval(s, ctx.cfield.pi).is_zero()
    prod = s * ctx.s_inverse(ctx.windows[0])
    assert prod[0] == s.ring.one()
    assert all(not any(prod[n]) for n in range(-2, 0))


def test_phi_with_trivial_argument(std):
    a = canonical_lift(std.one(), std)
    b = canonical_lift(unit(std, [(4, 1), (2, 2)]), std)
    assert phi_series(a, b).is_zero()


def _ep_lift(std, code, c):
    from kummerbreak.laurent import TruncLaurent
    from kummerbreak.artin_hasse import ep_int_coefficients
    ctx = context(std)
    R = ctx.ring
    W = ctx.windows[0]
    u = ctx.cfield.teich0(code)
    E = ep_int_coefficients(std.p, W // c + 2, R.mod)
    terms, un = {}, R.one()
    for n in range(W // c + 1):
        terms[n * c] = R.smul(E[n], un)
        un = R.mul(un, u)
    from kummerbreak.vostokov import UnitLift
    ser = TruncLaurent.from_dict(R, -W, W, terms, frob=ctx.cfield.frobenius0)
    return UnitLift(ep_eval(std.teichmuller(code) * std.pi ** c), ser)


@pytest.mark.parametrize("c, d", [(1, 3), (2, 2), (3, 1), (2, 4)])
def test_phi_truncation_for_artin_hasse_lifts(std, c, d):
    p, e0 = std.p, std.d
    assert c + p * d > e0 and p * c + d > e0
    a, b = _ep_lift(std, 4, c), _ep_lift(std, 7, d)
    phi = phi_series(a, b)
    lhs = phi
    rhs = a.dlog() * b.l()
    diff = lhs - rhs
    assert all(not any(x % diff.ring.mod for x in diff[n]) for n in range(diff.lo, e0))


@given(unit_digits)
def test_pairing_with_one_and_self(std, digs):
    a = unit(std, digs)
    assert pairing(a, std.one(), std).exponent == 0
    assert pairing(a, a, std).exponent == 0


@given(unit_digits, unit_digits)
def test_skew_symmetry(std, d1, d2):
    a, b = unit(std, d1), unit(std, d2)
    assert (pairing(a, b, std).exponent + pairing(b, a, std).exponent) % std.p == 0


@given(unit_digits, unit_digits, unit_digits)
def test_bilinearity(std, d1, d2, d3):
    a, a2, b = unit(std, d1), unit(std, d2), unit(std, d3)
    lhs = pairing(a * a2, b, std)
    assert lhs == pairing(a, b, std) + pairing(a2, b, std)
    assert pairing(b, a * a2, std) == pairing(b, a, std) + pairing(b, a2, std)


@given(unit_digits, unit_digits)
def test_pth_powers_in_kernel(std, d1, d2):
    a, b = unit(std, d1), unit(std, d2)
    assert pairing(a, b ** std.p, std).exponent == 0
    assert pairing(a ** std.p, b, std).exponent == 0


@given(unit_digits)
def test_against_artin_hasse_formula(std, digs):
    """<zeta_p, alpha> = zeta_p^(Tr log(alpha) / p)."""
    a = unit(std, digs)
    assert pairing(std.zeta_p, a, std).exponent == artin_hasse_zeta_pairing(std, a)


@given(unit_digits, unit_digits,
       st.dictionaries(st.integers(1, 6), st.integers(0, 80), min_size=1, max_size=3))
def test_lift_independence(std, d1, d2, junk):
    a, b = unit(std, d1), unit(std, d2)
    ctx = context(std)
    W = ctx.windows[-1]
    la, lb = ctx.lift(a, W), ctx.lift(b, W)
    base = pairing_with_lifts(la, lb, std)
    pa = perturbed_lift(la, std, junk)
    assert evaluate_lift(pa, std).congruent(a, std.N)
    assert pairing_with_lifts(pa, lb, std) == base
    assert pairing_with_lifts(la, perturbed_lift(lb, std, junk), std) == base


def test_unit_complement_empty(std):
    assert unit_complement(std, [], 2, 4) == Subspace.full(std.p, 4)


def test_unit_complement_of_u1(std):
    # (U^1)^perp = (K^x)^p U^{d}; inside U^2/U^4 it is U^3/U^4
    gens = level_generators(std, 1, 4)
    comp = unit_complement(std, gens, 2, 4)
    assert comp.dim == 2
    assert comp == Subspace(std.p, 4, [[0, 0, 1, 0], [0, 0, 0, 1]])


@given(st.lists(digit, min_size=1, max_size=3), st.lists(digit, min_size=1, max_size=3),
       st.integers(1, 8))
def test_sym_theorem(std, d1, d2, code):
    a = unit(std, [(c, h + 1) for c, h in d1])
    b = unit(std, [(c, h + 1) for c, h in d2])
    eta = std.teichmuller(code)
    assert trunc_pow_symmetry_check(a, b, eta, 2, 2, std)


def test_sym_theorem_trivial_eta(std):
    a, b = unit(std, [(1, 2)]), unit(std, [(4, 2), (2, 3)])
    assert trunc_pow_symmetry_check(a, b, 1, 2, 2, std)
    from kummerbreak.artin_hasse import trunc_pow
    assert trunc_pow(a, 0) == 1


def test_sym_rejects_wrong_level(std):
    with pytest.raises(ValueError):
        trunc_pow_symmetry_check(unit(std, [(1, 1)]), unit(std, [(1, 2)]), 1, 2, 2, std)


def test_pairing_rejects_non_principal(std):
    with pytest.raises(ValueError):
        pairing(std.teichmuller(2), std.one() + std.pi, std)
