"""Class-field-side pipeline: validation, k, i_1, t, t', b_*."""

from itertools import islice

import pytest

from kummerbreak import Field, FieldSpec, SpecError
from kummerbreak.invariants import (HOLDS, NOT_APPLICABLE, bstar_from_t, compute_k,
                                    compute_t, compute_t_prime, enumerate_specs, i1_from_k,
                                    level_d_class, norm_subgroup_levels, spec_from_digits,
                                    theta_of, validate_spec, verify_main_theorem,
                                    zps_module_test)
from kummerbreak.linalg import Subspace


def generator(F):
    return next(c for c in F.elements() if c and F.order(c) == F.q - 1)


@pytest.fixture(scope="module")
def std_samples(std):
    return {b: list(enumerate_specs(std, b, exhaustive=False, samples=12, seed=7))
            for b in (1, 2)}


def test_validate_spec_examples(std):
    F = std.residue_field
    w = generator(F)
    s = validate_spec(std, std.teichmuller(w) * std.pi, std.teichmuller(F.pow(w, 3)) * std.pi)
    assert (s.b, s.j0) == (2, 1)
    with pytest.raises(SpecError, match="F_p"):
        validate_spec(std, std.pi, 2 * std.pi)
    with pytest.raises(SpecError, match="unequal"):
        validate_spec(std, std.pi, std.teichmuller(w) * std.pi ** 2)


def test_theta(std):
    F = std.residue_field
    w = generator(F)
    rho1 = std.teichmuller(3) * std.pi ** 2
    s = validate_spec(std, rho1, std.teichmuller(w) * rho1)
    assert theta_of(s) == w
    assert F.pow(theta_of(s), std.q - 1) == 1
    assert not F.in_prime_field(theta_of(s))


def test_norm_subgroup_levels(std, std_samples):
    for s in std_samples[2]:
        assert norm_subgroup_levels(s, s.b + 1).n == 0
        V = norm_subgroup_levels(s, s.b)
        assert V.n - V.dim == 2      # U^b/(H ∩ U^b) = Gal(L/K)
        V1 = norm_subgroup_levels(s, s.b - 1)
        assert V1.n - V1.dim == 2


def test_zps_module_test_examples(std):
    assert zps_module_test(std, Subspace.full(3, 4), 1, 3)
    assert not zps_module_test(std, Subspace(3, 4, [[1, 0, 0, 0]]), 1, 3)


@pytest.mark.parametrize("b, k, i1", [(2, 1, 15), (2, 0, 16), (1, 1, 6), (1, 0, 8)])
def test_i1_from_k(b, k, i1):
    assert i1_from_k(3, b, 2, k) == i1


@pytest.mark.parametrize("b, t, bs", [(2, 0, 6), (2, 1, 5), (1, 0, 3)])
def test_bstar_from_t(b, t, bs):
    assert bstar_from_t(3, b, 2, t) == bs


def test_bstar_rejects_negative():
    with pytest.raises(ValueError):
        bstar_from_t(3, 2, 2, -1)


def test_reports_on_samples(std, std_samples):
    p, e = std.p, std.e
    for b, specs in std_samples.items():
        for s in specs:
            r = verify_main_theorem(s)
            assert p * p * b - p * b <= r.i1 <= p * p * b - b
            assert r.k <= b
            assert r.lemma["agree"]
            # membership test and Z_{p^2}-module test give the same s
            assert r.t == r.t_prime
            if r.i1 == p * p * b - b:
                assert r.t_prime <= b // p
            elif not r.degenerate and r.i1 == p * p * b - p * r.k:
                assert r.t_prime == r.k
            if not r.degenerate:
                assert r.verdict == HOLDS
                assert r.b_star == r.i1 - p * p * b + p * b + b
            else:
                assert r.verdict == NOT_APPLICABLE


def test_std_b1_values(std_samples):
    for s in std_samples[1]:
        r = verify_main_theorem(s)
        assert (r.k, r.i1, r.b_star) == (0, 8, 3)


def test_enumeration_shape(std):
    assert list(enumerate_specs(std, 3)) == []
    assert next(enumerate_specs(std, 1)) is not None
    b1 = list(enumerate_specs(std, 1))
    assert len(b1) == 9
    assert sum(1 for _ in enumerate_specs(std, 2)) == 729


def test_level_d_class_not_a_pth_power_image(std):
    F = std.residue_field
    cd = level_d_class(std)
    m = std.e // (std.p - 1)
    w = (std.from_int(std.p) * std.pi ** m).divpi(std.d).residue()
    assert all(F.add(F.pow(c, std.p), F.mul(w, c)) != cd for c in F.elements())


def test_sampling_is_deterministic(std):
    a = [s.digits() for s in enumerate_specs(std, 2, exhaustive=False, samples=5, seed=3)]
    b = [s.digits() for s in enumerate_specs(std, 2, exhaustive=False, samples=5, seed=3)]
    assert a == b


def test_spec_from_digits_roundtrip(std):
    s = next(enumerate_specs(std, 2))
    d1, d2 = s.digits()
    t = spec_from_digits(std, d1, d2)
    assert t.digits() == (d1, d2)
    assert verify_main_theorem(t).to_record()["i1"] == verify_main_theorem(s).to_record()["i1"]
    with pytest.raises(SpecError):
        spec_from_digits(std, [[1, 1]], [["a", 1]])


def _twisted_std(std, code):
    """K with uniformizer pi' = w pi: Eisenstein polynomial x^2 + 3 w x + 3 w^2."""
    hi = Field(std.spec.with_precision(40))
    w = hi.teich0(code)
    R = hi.O0
    c0 = R.smul(3, R.mul(w, w))
    c1 = R.smul(3, w)
    spec = FieldSpec(3, 2, std.spec.residue_poly, (tuple(c0), tuple(c1), 1), std.N, "STDw")
    return Field(spec)


def test_uniformizer_invariance(std):
    F = std.residue_field
    w = generator(F)
    K2 = _twisted_std(std, w)
    winv = F.inv(w)
    for s in islice(enumerate_specs(std, 2, exhaustive=False, samples=6, seed=11), 6):
        d1, d2 = s.digits()
        # pi = pi' / w maps the digit (c, h) to (c w^-h, h)
        t1 = [[F.mul(c, F.pow(winv, h)), h] for c, h in d1]
        t2 = [[F.mul(c, F.pow(winv, h)), h] for c, h in d2]
        s2 = spec_from_digits(K2, t1, t2)
        r1, r2 = verify_main_theorem(s).to_record(), verify_main_theorem(s2).to_record()
        for key in ("b", "theta", "k", "i1", "t_prime", "b_star", "degenerate", "verdict"):
            assert r1[key] == r2[key], key
