"""Kummer pairing of principal units through Vostokov's residue formula.

For alpha, beta in U_K^1 with lifts alpha~, beta~ in 1 + X O_{K0}[[X]],

    Phi = (alpha~'/alpha~) l(beta~) - ((beta~^D)'/(p beta~^D)) l(alpha~)

and <alpha, beta>_p = zeta_p ^ Tr(Res(Phi / s)) with s = zeta~(X)^p - 1.

Only the class of the exponent mod p is returned.  Each value is computed
on a sequence of growing exponent windows and the last two must agree.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .artin_hasse import coords, ep_eval
from .errors import PrecisionError
from .laurent import (TruncLaurent, frobenius_twist, l_map, log_derivative,
                      ls_eval, ls_inv, one)
from .linalg import Subspace, kernel
from .rings import PadicElement


@dataclass(frozen=True)
class PairingValue:
    """The pairing is zeta_p ** exponent."""

    exponent: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, "exponent", self.exponent % self.p)

    def __add__(self, other):
        return PairingValue(self.exponent + other.exponent, self.p)

    def __neg__(self):
        return PairingValue(-self.exponent, self.p)

    @property
    def trivial(self) -> bool:
        return self.exponent == 0


@dataclass
class UnitLift:
    alpha: PadicElement
    series: TruncLaurent
    _cache: dict = dc_field(default_factory=dict, repr=False)

    def dlog(self):
        if "dlog" not in self._cache:
            self._cache["dlog"] = log_derivative(self.series)
        return self._cache["dlog"]

    def l(self):
        if "l" not in self._cache:
            self._cache["l"] = l_map(self.series)
        return self._cache["l"]

    def twisted_dlog(self):
        """(a^D)'/(p a^D); the derivative of a^D is divisible by p."""
        if "tw" not in self._cache:
            self._cache["tw"] = log_derivative(frobenius_twist(self.series)).divide_p(1)
        return self._cache["tw"]


def _loss_budget(p: int, hi: int) -> int:
    s = 0
    n = 1
    while n * p < hi:
        n *= p
        s += 1
    return s + 3


class PairingContext:
    """Per-field data: coefficient ring, lift of zeta_p, cached inverses of s."""

    def __init__(self, field, extra_windows: int = 2, window_scale: int = 1):
        from .field import Field
        self.field = field
        p, e = field.p, field.e
        self.p = p
        d = field.d
        base = window_scale * (d + e + 2)
        self.windows = tuple(base + k * p for k in range(extra_windows + 1))
        M = max(field.M, _loss_budget(p, self.windows[-1]) + 1)
        if M > field.M:
            self.cfield = Field(field.spec.with_precision(e * (M - 1)))
        else:
            self.cfield = field
        self.ring = self.cfield.O0
        self._sinv = {}

    # -- lifts ------------------------------------------------------------
    def lift(self, alpha: PadicElement, W: int, digits=None) -> UnitLift:
        """Canonical lift on window [-W, W) from the Teichmuller digits of alpha - 1."""
        R = self.ring
        if digits is None:
            digits = self.digits(alpha)
        terms = {0: R.one()}
        for code, h in digits:
            if h < W:
                terms[h] = self.cfield.teich0(code)
        ser = TruncLaurent.from_dict(R, -W, W, terms, frob=self.cfield.frobenius0)
        return UnitLift(alpha, ser)

    def digits(self, alpha: PadicElement):
        x = alpha - 1
        v = x.valuation()
        if v is not None and v < 1:
            raise ValueError("pairing is defined here for principal units only")
        if v is None:
            return []
        return self.field.digit_expansion(x, depth=x.prec)

    def s_inverse(self, W: int) -> TruncLaurent:
        if W not in self._sinv:
            self._sinv[W] = ls_inv(self.s_series(W))
        return self._sinv[W]

    def s_series(self, W: int) -> TruncLaurent:
        z = self.lift(self.field.zeta_p, W).series
        acc = one(self.ring, -W, W, z.frob)
        for _ in range(self.p):
            acc = acc * z
        return acc - one(self.ring, -W, W, z.frob)

    # -- the residue formula ----------------------------------------------
    def exponent(self, a: UnitLift, b: UnitLift, W: int) -> int:
        phi = phi_series(a, b)
        r = (phi * self.s_inverse(W)).residue()
        return self.field.residue_field.trace(self.ring.residue(r))

    def pair(self, alpha, beta, check: bool = True) -> PairingValue:
        da, db = self.digits(alpha), self.digits(beta)
        if not da or not db:
            return PairingValue(0, self.p)
        ws = self.windows if check else self.windows[:1]
        vals = [self.exponent(self.lift(alpha, W, da), self.lift(beta, W, db), W)
                for W in ws]
        if len(vals) > 1 and vals[-1] != vals[-2]:
            raise PrecisionError("pairing unstable under window growth")
        return PairingValue(vals[-1], self.p)

    def matrix(self, left, right, check: bool = True):
        """Exponent matrix [[<l, r>]] for lists of principal units."""
        ws = self.windows if check else self.windows[:1]
        dl = [self.digits(a) for a in left]
        dr = [self.digits(b) for b in right]
        out = None
        for W in ws:
            L = [self.lift(a, W, d) if d else None for a, d in zip(left, dl)]
            Rl = [self.lift(b, W, d) if d else None for b, d in zip(right, dr)]
            cur = [[0 if (x is None or y is None) else self.exponent(x, y, W) for y in Rl]
                   for x in L]
            if out is not None and cur != out and W == ws[-1]:
                raise PrecisionError("pairing matrix unstable under window growth")
            out = cur
        return out


_CONTEXTS: dict = {}


def context(field) -> PairingContext:
    ctx = _CONTEXTS.get(id(field))
    if ctx is None or ctx.field is not field:
        ctx = PairingContext(field)
        _CONTEXTS[id(field)] = ctx
    return ctx


def set_window_scale(field, scale: int) -> PairingContext:
    """Replace the cached context of ``field``: all windows multiplied by scale."""
    ctx = PairingContext(field, window_scale=scale)
    _CONTEXTS[id(field)] = ctx
    return ctx


def canonical_lift(alpha: PadicElement, field, W: int | None = None) -> UnitLift:
    """Lift on [-W, W); by default W covers every digit of alpha.

    The pairing itself only needs digits below the window it runs on.
    """
    ctx = context(field)
    return ctx.lift(alpha, W or max(ctx.windows[0], alpha.prec))


def phi_series(a: UnitLift, b: UnitLift) -> TruncLaurent:
    return a.dlog() * b.l() - b.twisted_dlog() * a.l()


def s_series(field, W: int | None = None) -> TruncLaurent:
    ctx = context(field)
    return ctx.s_series(W or ctx.windows[0])


def pairing(alpha, beta, field, check: bool = True) -> PairingValue:
    """<alpha, beta>_p as an exponent of zeta_p (p odd, alpha and beta in U^1)."""
    if field.p == 2:
        raise ValueError("p must be odd")
    return context(field).pair(alpha, beta, check)


def evaluate_lift(lift: UnitLift, field) -> PadicElement:
    """alpha~(pi_K) in K, for checking the lift contract."""
    ser = lift.series
    K0 = field.O0
    # reduce coefficients to the field's precision before evaluating
    coeffs = TruncLaurent(K0, ser.lo, ser.hi, [[c % K0.mod for c in v] for v in ser.c])
    return ls_eval(coeffs, field.pi)


def perturbed_lift(lift: UnitLift, field, junk) -> UnitLift:
    """alpha~ * (1 + g(X) junk(X)) with g the Eisenstein polynomial; same value at pi_K.

    ``junk`` maps exponents (>= 1) to integers or raw K0 data.
    """
    ser = lift.series
    R = ser.ring
    cf = context(field).cfield
    g = {i: list(c) for i, c in enumerate(cf.eisenstein_low)}
    g[field.e] = R.one()
    T = lambda terms: TruncLaurent.from_dict(R, ser.lo, ser.hi, terms, frob=ser.frob)
    ej = T(g) * T({k: (R.from_int(v) if isinstance(v, int) else list(v))
                   for k, v in junk.items() if k >= 1})
    return UnitLift(lift.alpha, ser * (one(R, ser.lo, ser.hi, ser.frob) + ej))


def pairing_with_lifts(a: UnitLift, b: UnitLift, field) -> PairingValue:
    ctx = context(field)
    W = a.series.hi
    return PairingValue(ctx.exponent(a, b, W), field.p)


# -- orthogonal complements ------------------------------------------------

def level_generators(field, j: int, c: int):
    """E_p(teich(e_i) pi^h) for h in [j, c) and e_i the F_p-basis of F_q."""
    out = []
    for h in range(j, c):
        for b in field.residue_field.basis():
            out.append(ep_eval(field.teichmuller(b) * field.pi ** h))
    return out


def unit_complement(field, generators, j: int, c: int, check: bool = True) -> Subspace:
    """F_p-kernel of u -> (<g, u>)_g on U^j/U^c in Artin-Hasse coordinates.

    Coordinates of u = E_p(kappa) are the digit coordinates of kappa in
    M^j/M^c.  Requires that kappa -> E_p(kappa) be a homomorphism modulo
    U^c on M^j and that U^c be orthogonal to the generators.
    """
    n = field.f * (c - j)
    if not generators:
        return Subspace.full(field.p, n)
    ctx = context(field)
    basis = level_generators(field, j, c)
    A = ctx.matrix(list(generators), basis, check)
    return kernel(A, n, field.p)


def trunc_pow_symmetry_check(alpha, beta, eta, i: int, j: int, field) -> bool:
    """<alpha^[eta], beta> == <alpha, beta^[eta]> for alpha in U^i, beta in U^j, eta in O_{K0}."""
    from .artin_hasse import trunc_pow
    d = field.d
    if not (i + field.p * j > d and field.p * i + j > d):
        raise ValueError("hypotheses i + pj > pe/(p-1) and pi + j > pe/(p-1) violated")
    for u, lvl in ((alpha, i), (beta, j)):
        v = (u - 1).valuation()
        if v is not None and v < lvl:
            raise ValueError("argument not in the stated unit group")
    lhs = pairing(trunc_pow(alpha, eta), beta, field)
    rhs = pairing(alpha, trunc_pow(beta, eta), field)
    return lhs == rhs
