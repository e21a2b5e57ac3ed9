"""Field contexts: K0 = Q_{p^f} unramified and K = K0(pi_K) Eisenstein."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from math import ceil, log2

from .errors import FieldSpecError, PrecisionError
from .residue import ResidueField
from .rings import PadicElement, TowerRing, vp_int


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Description of K.

    ``residue_poly`` and ``eisenstein_poly`` are little-endian coefficient
    lists.  Each Eisenstein coefficient is an integer or a little-endian
    list of integers (an element of Z[x]/(residue_poly)); the leading
    coefficient must be 1.  ``precision`` is the absolute precision in
    v_K units.
    """

    p: int
    f: int
    residue_poly: tuple
    eisenstein_poly: tuple
    precision: int
    name: str = "K"

    def with_precision(self, precision: int) -> "FieldSpec":
        return FieldSpec(self.p, self.f, self.residue_poly, self.eisenstein_poly,
                         precision, self.name)

    def min_precision(self) -> int:
        e = len(self.eisenstein_poly) - 1
        return -(-self.p * e // (self.p - 1)) + e + 2


def _k0_coeff(c, f):
    if isinstance(c, int):
        return [c] + [0] * (f - 1)
    c = list(c)
    if len(c) > f:
        raise FieldSpecError("Eisenstein coefficient has degree >= f")
    return c + [0] * (f - len(c))


class Field:
    """Immutable context for K with e = [K:K0], f = [K0:Q_p]."""

    def __init__(self, spec: FieldSpec):
        p = spec.p
        if p == 2 or not _is_prime(p):
            raise FieldSpecError("p must be an odd prime")
        if len(spec.residue_poly) - 1 != spec.f:
            raise FieldSpecError("residue_poly degree does not match f")
        self.spec = spec
        self.p = p
        self.f = spec.f
        self.e = len(spec.eisenstein_poly) - 1
        if self.e < 1:
            raise FieldSpecError("Eisenstein polynomial must have degree >= 1")
        if spec.precision < spec.min_precision():
            raise FieldSpecError(
                f"precision {spec.precision} below floor {spec.min_precision()}")
        self.N = spec.precision
        self.M = -(-self.N // self.e) + 1
        self.residue_field = ResidueField(p, list(spec.residue_poly))
        self.q = self.residue_field.q
        self.O0 = TowerRing.unramified(self.residue_field, self.M)
        coeffs = [_k0_coeff(c, self.f) for c in spec.eisenstein_poly]
        if coeffs[-1] != [1] + [0] * (self.f - 1):
            raise FieldSpecError("Eisenstein polynomial must be monic")
        low = [[c % self.O0.mod for c in cf] for cf in coeffs[:-1]]
        for i, cf in enumerate(low):
            v = self.O0.val(cf)
            if i == 0 and v != 1:
                raise FieldSpecError("constant term must have valuation exactly 1")
            if i > 0 and v < 1:
                raise FieldSpecError(f"coefficient of x^{i} is a unit: not Eisenstein")
        self.eisenstein_low = low
        self.OK = self.O0.extend(low)
        self._teich = {}

    # -- basic elements -------------------------------------------------
    @property
    def ring(self) -> TowerRing:
        return self.OK

    def element(self, coeffs, prec=None) -> PadicElement:
        """Element ``sum coeffs[i] * pi^i`` with coeffs in Z or Z[x]."""
        data = []
        for c in list(coeffs) + [0] * (self.e - len(coeffs)):
            data.extend(c % self.O0.mod for c in _k0_coeff(c, self.f))
        if len(data) != self.OK.dim:
            raise ValueError("too many coefficients")
        return PadicElement(self.OK, data, prec)

    def from_int(self, c: int) -> PadicElement:
        return PadicElement.from_int(self.OK, c)

    def one(self) -> PadicElement:
        return self.from_int(1)

    @cached_property
    def pi(self) -> PadicElement:
        if self.e == 1:
            return self.from_int(self.p)
        return PadicElement(self.OK, self.OK.gen())

    def pi_power(self, h: int) -> PadicElement:
        return self.pi ** h

    @property
    def d(self) -> int:
        """pe/(p-1) (an integer whenever zeta_p lies in K)."""
        num = self.p * self.e
        if num % (self.p - 1):
            raise FieldSpecError("pe/(p-1) is not an integer: zeta_p not in K")
        return num // (self.p - 1)

    # -- K0 helpers -----------------------------------------------------
    def teich0(self, code: int):
        """Raw K0 data of the Teichmuller lift of a residue code."""
        t = self._teich.get(code)
        if t is None:
            t = self._teichmuller_newton(code)
            self._teich[code] = t
        return t

    def _teichmuller_newton(self, code: int):
        O0 = self.O0
        if code == 0:
            return O0.zero()
        q = self.q
        x = O0.lift(code)
        iters = ceil(log2(max(self.M, 2))) + 2
        one = O0.one()
        for _ in range(iters):
            # Newton on x^(q-1) = 1:  x <- x - (x^q - x) / (q x^(q-1) - 1)
            xq1 = O0.pow(x, q - 1)
            num = O0.sub(O0.mul(xq1, x), x)
            den = O0.sub(O0.smul(q, xq1), one)
            x = O0.sub(x, O0.mul(num, O0.inv_unit(den)))
        return x

    def teich_data(self, code: int, ring: TowerRing | None = None):
        ring = ring or self.OK
        t = self.teich0(code)
        return t + [0] * (ring.dim - len(t))

    def teichmuller(self, code: int, ring: TowerRing | None = None) -> PadicElement:
        ring = ring or self.OK
        return PadicElement(ring, self.teich_data(code, ring))

    def teich_lifter(self, ring: TowerRing | None = None):
        ring = ring or self.OK
        return lambda code: self.teich_data(code, ring)

    def lift(self, code: int, ring: TowerRing | None = None) -> PadicElement:
        ring = ring or self.OK
        return PadicElement(ring, ring.lift(code))

    def digit_expansion(self, x: PadicElement, depth=None):
        """Teichmuller digits ``[(code, h), ...]`` of ``x``, nonzero digits only."""
        if x.is_zero():
            raise ValueError("digit expansion of an element that is zero at precision")
        return x.digits(self.teich_lifter(x.ring), depth)

    def from_digits(self, digits, ring=None, prec=None) -> PadicElement:
        ring = ring or self.OK
        out = PadicElement(ring, ring.zero(), prec)
        pi = PadicElement(ring, ring.gen()) if ring.base is not None else self.from_int(self.p)
        for code, h in digits:
            out = out + self.teichmuller(code, ring) * pi ** h
        return out

    @cached_property
    def frobenius_x(self):
        """Raw K0 data of phi(x): the root of the lifted residue polynomial near x^p."""
        O0 = self.O0
        if self.f == 1:
            return None
        res = [c % O0.mod for c in self.spec.residue_poly]

        def ev(z):
            acc = O0.zero()
            for c in reversed(res):
                acc = O0.add(O0.mul(acc, z), O0.from_int(c))
            return acc

        def dev(z):
            acc = O0.zero()
            for i in range(len(res) - 1, 0, -1):
                acc = O0.add(O0.mul(acc, z), O0.from_int(i * res[i]))
            return acc

        z = O0.pow(O0.gen(), self.p)
        for _ in range(ceil(log2(max(self.M, 2))) + 2):
            z = O0.sub(z, O0.mul(ev(z), O0.inv_unit(dev(z))))
        return z

    @cached_property
    def _frob_powers(self):
        O0 = self.O0
        if self.f == 1:
            return [O0.one()]
        return [O0.pow(self.frobenius_x, j) for j in range(self.f)]

    def frobenius0(self, a):
        """Frobenius automorphism of K0 on raw data."""
        O0 = self.O0
        if self.f == 1:
            return list(a)
        out = O0.zero()
        for j, c in enumerate(a):
            if c:
                out = O0.add(out, O0.smul(c, self._frob_powers[j]))
        return out

    def trace0_mod_p(self, a) -> int:
        """Tr_{K0/Q_p}(a) mod p for raw K0 data."""
        return self.residue_field.trace(self.O0.residue(a))

    # -- roots of unity -------------------------------------------------
    @cached_property
    def zeta_p(self) -> PadicElement:
        return find_zeta_p(self)

    @cached_property
    def eta0_code(self) -> int:
        """Residue code of a fixed generator of mu_{p^2-1}; requires f even."""
        if self.f % 2:
            raise FieldSpecError("mu_{p^2-1} is not contained in K (f is odd)")
        F = self.residue_field
        return F.pow(F.generator, (self.q - 1) // (self.p ** 2 - 1))

    @property
    def has_zp2(self) -> bool:
        return self.f % 2 == 0

    def __repr__(self):
        return f"Field({self.spec.name}: p={self.p}, f={self.f}, e={self.e}, N={self.N})"


def make_field(spec: FieldSpec) -> Field:
    return Field(spec)


def _sorted_key(field: Field, z: PadicElement):
    dig = dict((h, c) for c, h in field.digit_expansion(z))
    top = max(dig) if dig else 0
    return [dig.get(h, 0) for h in range(top + 1)]


def find_zeta_p(field: Field) -> PadicElement:
    """Primitive p-th root of unity of K with the smallest digit expansion of zeta-1.

    Roots z = zeta - 1 of ((1+z)^p - 1)/z have valuation m = e/(p-1).  The
    leading digits through level (p-2)m are found by exhaustive search over
    the residue field, after which Newton's method converges.
    """
    p, e = field.p, field.e
    if e % (p - 1):
        raise FieldSpecError("field does not contain zeta_p")
    m = e // (p - 1)
    from math import comb
    cyc = [comb(p, k + 1) for k in range(p)]  # F(z) = sum cyc[k] z^k

    def F(z):
        acc = field.from_int(0)
        for c in reversed(cyc):
            acc = acc * z + c
        return acc

    def dF(z):
        acc = field.from_int(0)
        for k in range(p - 1, 0, -1):
            acc = acc * z + k * cyc[k]
        return acc

    pi = field.pi
    ndig = (p - 3) * m + 1
    F_q = field.residue_field
    roots = []
    for lead in range(1, field.q):
        for rest in product(range(field.q), repeat=ndig - 1):
            z = field.teichmuller(lead) * pi ** m
            for i, c in enumerate(rest):
                if c:
                    z = z + field.teichmuller(c) * pi ** (m + 1 + i)
            fz = F(z)
            dfz = dF(z)
            vd = dfz.valuation()
            vf = fz.valuation()
            if vd is None or (vf is not None and vf <= 2 * vd):
                continue
            for _ in range(ceil(log2(max(field.N, 2))) + 3):
                fz = F(z)
                if fz.is_zero():
                    break
                z = z - fz / dF(z)
            if not F(z).is_zero():
                continue
            if not any((z - r).is_zero() for r in roots):
                roots.append(z)
    if not roots:
        raise FieldSpecError("field does not contain zeta_p")
    roots.sort(key=lambda z: _sorted_key(field, z))
    zeta = roots[0] + 1
    if (zeta ** p - 1).valuation() is not None:
        raise PrecisionError("zeta_p^p != 1 at working precision")
    return zeta
