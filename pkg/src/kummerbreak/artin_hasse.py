"""Artin-Hasse exponential, its inverse on principal units, truncated powers.

Also the F_p-coordinate description of unit-filtration quotients and of
the image of p-th powers under the logarithm-like inverse ``lambda_p``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .errors import PrecisionError
from .linalg import Subspace
from .rings import PadicElement


@lru_cache(maxsize=None)
def _ep_exp_route(p: int, T: int) -> tuple:
    # E' = g' E with g = sum X^{p^k}/p^k, so n c_n = sum_k c_{n - p^k}
    c = [Fraction(1)]
    for n in range(1, T):
        s = Fraction(0)
        pk = 1
        while pk <= n:
            s += c[n - pk]
            pk *= p
        c.append(s / n)
    return tuple(c)


def _mobius(n: int) -> int:
    res, m, d = 1, n, 2
    while d * d <= m:
        if m % d == 0:
            m //= d
            if m % d == 0:
                return 0
            res = -res
        d += 1
    if m > 1:
        res = -res
    return res


@lru_cache(maxsize=None)
def _ep_product_route(p: int, T: int) -> tuple:
    # prod over p∤c of (1 - X^c)^(-mu(c)/c), truncated at X^T
    poly = [Fraction(0)] * T
    poly[0] = Fraction(1)
    for c in range(1, T):
        if c % p == 0:
            continue
        mu = _mobius(c)
        if mu == 0:
            continue
        a = Fraction(-mu, c)
        factor = [Fraction(0)] * T
        binom = Fraction(1)
        k = 0
        while c * k < T:
            factor[c * k] = binom * (-1) ** k
            binom = binom * (a - k) / (k + 1)
            k += 1
        new = [Fraction(0)] * T
        for i, x in enumerate(poly):
            if x:
                for j in range(0, T - i, c):
                    if factor[j]:
                        new[i + j] += x * factor[j]
        poly = new
    return tuple(poly)


@dataclass(frozen=True)
class EpSeries:
    p: int
    T: int
    coefficients: tuple

    def __getitem__(self, n):
        return self.coefficients[n]


def ep_coefficients(p: int, T: int) -> EpSeries:
    """Coefficients of E_p(X) below X^T, checked against the Mobius product."""
    if T < 1:
        raise ValueError("T must be >= 1")
    a = _ep_exp_route(p, T)
    b = _ep_product_route(p, T)
    if a != b:
        raise AssertionError("Artin-Hasse constructions disagree")
    for c in a:
        if c.denominator % p == 0:
            raise AssertionError("Artin-Hasse coefficient not p-integral")
    return EpSeries(p, T, a)


@lru_cache(maxsize=None)
def _ep_mod(p: int, T: int, mod: int) -> tuple:
    return tuple((c.numerator * pow(c.denominator, -1, mod)) % mod
                 for c in _ep_exp_route(p, T))


def ep_int_coefficients(p: int, T: int, mod: int) -> tuple:
    return _ep_mod(p, T, mod)


def ep_eval(kappa: PadicElement) -> PadicElement:
    """E_p(kappa) for kappa in the maximal ideal."""
    ring = kappa.ring
    v = kappa.valuation()
    if v is None:
        return PadicElement(ring, ring.one(), kappa.prec)
    if v < 1:
        raise ValueError("E_p needs a non-unit argument")
    T = -(-kappa.prec // v) + 1
    coeffs = _ep_mod(ring.p, T, ring.mod)
    acc = PadicElement(ring, ring.from_int(coeffs[T - 1]))
    for n in range(T - 2, -1, -1):
        acc = acc * kappa + coeffs[n]
    return PadicElement(ring, acc.data, min(acc.prec, kappa.prec))


def _principal_level(u: PadicElement) -> int | None:
    w = (u - 1).valuation()
    if w is not None and w < 1:
        raise ValueError("not a principal unit")
    return w


def lambda_p(u: PadicElement, lifter=None) -> PadicElement:
    """Inverse of E_p on principal units, digit by digit."""
    ring = u.ring
    _principal_level(u)
    lift = lifter or ring.lift
    pi = PadicElement(ring, ring.gen())
    kappa = PadicElement(ring, ring.zero(), u.prec)
    top = u.prec
    for _ in range(top * ring.f + 1):
        w = u * ep_eval(kappa).inverse() - 1
        v = w.valuation()
        if v is None:
            return PadicElement(ring, kappa.data, min(kappa.prec, w.prec))
        r = ring.residue(w.divpi(v).data)
        kappa = kappa + PadicElement(ring, lift(r)) * pi ** v
    raise PrecisionError("lambda_p did not terminate")


def binomials(alpha, p: int, ring):
    """C(alpha, n) for 0 <= n < p, alpha an int or PadicElement."""
    if isinstance(alpha, int):
        alpha = PadicElement.from_int(ring, alpha)
    out = [PadicElement(ring, ring.one())]
    num = PadicElement(ring, ring.one())
    for n in range(1, p):
        num = num * (alpha - (n - 1))
        out.append(num * pow(factorial(n), -1, ring.mod))
    return out


def trunc_pow(u: PadicElement, alpha) -> PadicElement:
    """Truncated exponentiation u^[alpha] = sum_{n<p} C(alpha, n) (u-1)^n."""
    ring = u.ring
    if isinstance(alpha, PadicElement):
        va = alpha.valuation()
        if va is not None and va < 0:
            raise ValueError("alpha must be integral")
    _principal_level(u)
    x = u - 1
    acc = PadicElement(ring, ring.zero())
    xn = PadicElement(ring, ring.one())
    for c in binomials(alpha, ring.p, ring):
        acc = acc + c * xn
        xn = xn * x
    return acc


# -- filtration coordinates -------------------------------------------------

def coords(x: PadicElement, lo: int, hi: int) -> list[int]:
    """F_p-coordinates of x in M^lo / M^hi (requires hi <= lo + e).

    Digits use the standard lift; carries are multiples of p and vanish
    in the quotient, so the map is F_p-linear.
    """
    ring = x.ring
    if hi > lo + ring.E:
        raise ValueError("quotient M^lo/M^hi is not elementary abelian")
    if x.prec < hi:
        raise PrecisionError(f"need precision {hi}, have {x.prec}")
    f = ring.f
    out = [0] * (f * (hi - lo))
    vec = ring.residue_field.vec
    for code, h in x.digits(depth=hi):
        if h < lo:
            raise ValueError(f"element has valuation {h} < {lo}")
        out[f * (h - lo):f * (h - lo + 1)] = vec(code)
    return out


def from_coords(field, vec, lo: int, ring=None) -> PadicElement:
    ring = ring or field.OK
    f = ring.f
    F = ring.residue_field
    pi = PadicElement(ring, ring.gen())
    out = PadicElement(ring, ring.zero())
    for i in range(len(vec) // f):
        code = F.code(vec[f * i:f * (i + 1)])
        if code:
            out = out + PadicElement(ring, ring.lift(code)) * pi ** (lo + i)
    return out


def scalar_matrix(field, code: int, lo: int, hi: int):
    """Matrix of multiplication by teich(code) on M^lo/M^hi (digit-wise)."""
    from .linalg import block_diag
    m = field.residue_field.mul_matrices[code]
    return block_diag([m] * (hi - lo))


@dataclass
class PowerImage:
    """F_p-span inside M^lo/M^hi; ``full`` marks the trivial case."""

    lo: int
    hi: int
    space: Subspace
    full: bool = False


def pth_power_subgroup_image(field, j: int, i: int) -> PowerImage:
    """Lambda_p((K^x)^p ∩ U^j) + M^i as the span of gamma^p, v(gamma^p) >= j."""
    p, e = field.p, field.e
    f = field.f
    if i <= j:
        return PowerImage(j, j, Subspace(p, 0), full=True)
    if p * j < i or e + -(-j // p) < i:
        raise ValueError("hypotheses p*j >= i and e + ceil(j/p) >= i violated")
    n = f * (i - j)
    space = Subspace(p, n)
    pi = field.pi
    h = -(-j // p)
    while h * p < i:
        for b in field.residue_field.basis():
            gamma = field.teichmuller(b) * pi ** h
            space.add(coords(gamma ** p, j, i))
        h += 1
    return PowerImage(j, i, space)
