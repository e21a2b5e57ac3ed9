"""Field arithmetic, valuations, Teichmuller lifts and digits."""

import pytest
from hypothesis import given, strategies as st

from kummerbreak import Field, FieldSpec, FieldSpecError, PrecisionError
from kummerbreak.field import find_zeta_p
from kummerbreak.rings import PadicElement


# -- independent oracle: naive arithmetic in Z[y, x]/(y^2+2y+2, x^2+3x+3) mod 3^M.
# Elements are dicts {(i, j): c} meaning sum c y^i x^j with i, j < 2.

def naive_mul(a, b, mod):
    t = {}
    for (i1, j1), c1 in a.items():
        for (i2, j2), c2 in b.items():
            key = (i1 + i2, j1 + j2)
            t[key] = (t.get(key, 0) + c1 * c2) % mod
    changed = True
    while changed:
        changed = False
        for (i, j), c in list(t.items()):
            if c == 0:
                continue
            if j >= 2:   # x^2 = -3x - 3
                del t[(i, j)]
                for dj, cc in ((1, -3), (0, -3)):
                    k = (i, j - 2 + dj)
                    t[k] = (t.get(k, 0) + cc * c) % mod
                changed = True
            elif i >= 2:  # y^2 = -2y - 2
                del t[(i, j)]
                for di, cc in ((1, -2), (0, -2)):
                    k = (i - 2 + di, j)
                    t[k] = (t.get(k, 0) + cc * c) % mod
                changed = True
    return {k: v % mod for k, v in t.items() if v % mod}


def to_naive(x):
    # flat layout: x = sum_j (block_j) pi^j, block_j = (c0 + c1 y)
    f = 2
    return {(i, j): x.data[j * f + i] % x.ring.mod for j in range(2) for i in range(f)
            if x.data[j * f + i] % x.ring.mod}


elems = st.lists(st.integers(0, 3 ** 6 - 1), min_size=4, max_size=4)


@given(elems, elems)
def test_mul_matches_naive_oracle(std, a, b):
    x, y = PadicElement(std.OK, a), PadicElement(std.OK, b)
    got = to_naive(x * y)
    assert got == naive_mul(to_naive(x), to_naive(y), std.OK.mod)


def test_make_field_std(std):
    assert (std.e, std.f, std.q) == (2, 2, 9)
    assert std.from_int(3).valuation() == 2
    assert std.pi.valuation() == 1
    # pi = zeta_3 - 1: (pi + 1)^2 + (pi + 1) + 1 == 0
    z = std.pi + 1
    assert (z * z + z + 1).is_zero()


def test_make_field_q3(q3):
    assert (q3.e, q3.f, q3.q) == (1, 1, 3)
    assert q3.from_int(3).valuation() == 1


def test_non_eisenstein_rejected():
    with pytest.raises(FieldSpecError, match="unit"):
        Field(FieldSpec(3, 2, (2, 2, 1), (3, 1, 1), 10))


@pytest.mark.parametrize("spec, msg", [
    (FieldSpec(2, 1, (0, 1), (2, 1), 10), "odd prime"),
    (FieldSpec(3, 2, (2, 2, 1), (3, 3, 1), 4), "floor"),
    (FieldSpec(3, 2, (2, 2, 1), (9, 3, 1), 10), "valuation"),
    (FieldSpec(3, 2, (2, 2, 1), (3, 3, 2), 10), "monic"),
])
def test_bad_specs(spec, msg):
    with pytest.raises(FieldSpecError, match=msg):
        Field(spec)


def test_pi_squared(std):
    pi = std.pi
    assert pi * pi == -3 * pi - 3


def test_inverse_and_precision(std):
    u = std.pi + 1
    assert (u.inverse() * u) == 1
    assert (u.inverse() * u).prec == std.OK.cap
    a = PadicElement(std.OK, std.pi.data, 5)
    b = PadicElement(std.OK, std.one().data, 3)
    assert (a + b).prec == 3
    with pytest.raises(ZeroDivisionError):
        std.one() / PadicElement(std.OK, std.OK.zero())


def test_teichmuller(std):
    assert std.teichmuller(1) == 1
    assert std.teichmuller(0).is_zero()
    assert std.teichmuller(2) == -1
    F = std.residue_field
    gens = [c for c in F.elements() if c and F.order(c) == 8]
    t = std.teichmuller(gens[0])
    orders = [n for n in range(1, 9) if t ** n == 1]
    assert orders[0] == 8


@given(st.integers(0, 8), st.integers(0, 8))
def test_teichmuller_multiplicative(std, r, s):
    F = std.residue_field
    assert std.teichmuller(F.mul(r, s)) == std.teichmuller(r) * std.teichmuller(s)
    t = std.teichmuller(r)
    assert t ** 9 == t
    if r:
        assert t.residue() == r


def test_digit_expansion(std):
    assert std.digit_expansion(std.pi) == [(1, 1)]
    assert std.digit_expansion(std.from_int(3))[0] == (2, 2)
    with pytest.raises(ValueError):
        std.digit_expansion(PadicElement(std.OK, std.OK.zero()))


@given(elems)
def test_digit_roundtrip(std, a):
    x = PadicElement(std.OK, a)
    if x.is_zero():
        return
    y = std.from_digits(std.digit_expansion(x))
    assert x.congruent(y, x.prec)


@given(elems, elems)
def test_valuation_axioms(std, a, b):
    x, y = PadicElement(std.OK, a), PadicElement(std.OK, b)
    vx, vy = x.valuation(), y.valuation()
    if vx is None or vy is None:
        return
    vxy = (x * y).valuation()
    if vx + vy < (x * y).prec:
        assert vxy == vx + vy
    s = (x + y).valuation()
    if vx != vy:
        assert s == min(vx, vy)
    elif s is not None:
        assert s >= vx


def test_zeta_p(std, q3):
    z = find_zeta_p(std)
    assert z == std.pi + 1
    assert z ** 3 == 1 and z != 1
    with pytest.raises(FieldSpecError):
        find_zeta_p(q3)


def test_precision_error_on_overreach(std):
    x = PadicElement(std.OK, std.pi.data, 4)
    with pytest.raises(PrecisionError):
        x.congruent(std.pi, 6)
    assert PadicElement(std.OK, (std.pi ** 4).data, 4).is_zero()
