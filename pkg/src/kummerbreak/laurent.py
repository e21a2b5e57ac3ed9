"""Truncated Laurent series over O_{K0} modulo p^M.

A :class:`TruncLaurent` stores the coefficients of ``X^n`` for ``n`` in a
window ``[lo, hi)``.  Terms below ``lo`` are assumed to be p-adically
negligible and terms at or above ``hi`` unknown; products keep only the
window.  ``shift`` records a common denominator ``p**shift`` so that
logarithms can be represented before the integrality of ``l`` is
restored.
"""

from __future__ import annotations

from .errors import PrecisionError


class TruncLaurent:
    __slots__ = ("ring", "frob", "lo", "hi", "c", "shift", "prec")

    def __init__(self, ring, lo: int, hi: int, coeffs=None, shift: int = 0, frob=None,
                 prec: int | None = None):
        if hi <= lo:
            raise ValueError("empty window")
        self.ring = ring
        self.frob = frob
        self.lo = lo
        self.hi = hi
        n = hi - lo
        if coeffs is None:
            coeffs = [ring.zero() for _ in range(n)]
        if len(coeffs) != n:
            raise ValueError("coefficient list does not match window")
        self.c = coeffs
        self.shift = shift
        # coefficients are known modulo p^prec
        self.prec = ring.M if prec is None else prec

    # -- construction ---------------------------------------------------
    @classmethod
    def from_dict(cls, ring, lo, hi, terms: dict, shift=0, frob=None):
        s = cls(ring, lo, hi, shift=shift, frob=frob)
        for n, v in terms.items():
            if lo <= n < hi:
                s.c[n - lo] = list(v) if not isinstance(v, int) else ring.from_int(v)
        return s

    @classmethod
    def monomial(cls, ring, lo, hi, n, coeff=1, frob=None):
        return cls.from_dict(ring, lo, hi, {n: coeff}, frob=frob)

    def like(self, coeffs=None, shift=None, prec=None):
        return TruncLaurent(self.ring, self.lo, self.hi, coeffs,
                            self.shift if shift is None else shift, self.frob,
                            self.prec if prec is None else prec)

    def __getitem__(self, n):
        if self.lo <= n < self.hi:
            return self.c[n - self.lo]
        return self.ring.zero()

    def terms(self):
        return {self.lo + i: v for i, v in enumerate(self.c) if any(v)}

    def order(self) -> int | None:
        for i, v in enumerate(self.c):
            if any(v):
                return self.lo + i
        return None

    def reduction_order(self) -> int | None:
        """Order of vanishing of the image in F_q((X))."""
        if self.shift:
            raise ValueError("reduction of a series with denominators")
        for i, v in enumerate(self.c):
            if self.ring.val(v) == 0:
                return self.lo + i
        return None

    # -- ring operations ------------------------------------------------
    def _align(self, other):
        if (self.lo, self.hi) != (other.lo, other.hi):
            raise ValueError("window mismatch")
        a, b = self, other
        if a.shift < b.shift:
            a = a.rescale(b.shift)
        elif b.shift < a.shift:
            b = b.rescale(a.shift)
        return a, b

    def rescale(self, shift: int):
        k = shift - self.shift
        if k < 0:
            raise ValueError("cannot lower shift by rescaling")
        f = self.ring.p ** k
        return self.like([self.ring.smul(f, v) for v in self.c], shift,
                         min(self.ring.M, self.prec + k))

    def __add__(self, other):
        a, b = self._align(other)
        R = self.ring
        return a.like([R.add(x, y) for x, y in zip(a.c, b.c)], a.shift, min(a.prec, b.prec))

    def __sub__(self, other):
        a, b = self._align(other)
        R = self.ring
        return a.like([R.sub(x, y) for x, y in zip(a.c, b.c)], a.shift, min(a.prec, b.prec))

    def __neg__(self):
        return self.like([self.ring.neg(v) for v in self.c])

    def __mul__(self, other):
        if isinstance(other, int):
            return self.like([self.ring.smul(other, v) for v in self.c])
        if (self.lo, self.hi) != (other.lo, other.hi):
            raise ValueError("window mismatch")
        R = self.ring
        lo, hi = self.lo, self.hi
        out = [R.zero() for _ in range(hi - lo)]
        bs = [(j, v) for j, v in enumerate(other.c) if any(v)]
        for i, x in enumerate(self.c):
            if not any(x):
                continue
            ni = lo + i
            for j, y in bs:
                n = ni + lo + j
                if n >= hi:
                    break
                if n < lo:
                    continue
                k = n - lo
                out[k] = R.add(out[k], R.mul(x, y))
        return self.like(out, self.shift + other.shift, min(self.prec, other.prec))

    __rmul__ = __mul__

    def scale(self, c):
        """Multiply by a raw O_{K0} element."""
        R = self.ring
        return self.like([R.mul(c, v) for v in self.c])

    def shift_exponents(self, k: int):
        """Multiply by X^k, keeping the window."""
        out = [self.ring.zero() for _ in self.c]
        for i, v in enumerate(self.c):
            j = i + k
            if 0 <= j < len(out):
                out[j] = v
        return self.like(out)

    def derivative(self):
        R = self.ring
        out = [R.zero() for _ in self.c]
        for i, v in enumerate(self.c):
            n = self.lo + i
            if n - 1 >= self.lo and n:
                out[i - 1] = R.smul(n, v)
        return self.like(out)

    def divide_p(self, k: int = 1):
        """Exact division by p^k of every coefficient (no denominators)."""
        R = self.ring
        p = R.p
        f = p ** k
        out = []
        for v in self.c:
            if any(x % f for x in v):
                raise PrecisionError("coefficient not divisible by p: insufficient precision")
            out.append([x // f for x in v])
        return self.like(out, prec=self.prec - k)

    def normalize(self):
        """Remove the denominator; raises when the series is not integral."""
        if self.shift == 0:
            return self
        out = self.divide_p(self.shift)
        out.shift = 0
        return out

    def residue(self):
        """Coefficient of X^{-1} (raw O_{K0} data)."""
        if not (self.lo <= -1 < self.hi):
            raise ValueError("window excludes X^-1")
        if self.shift:
            raise ValueError("series has denominators")
        return self[-1]

    def is_zero(self) -> bool:
        """Zero modulo p^prec."""
        m = self.ring.p ** self.prec if self.prec > 0 else 1
        return not any(any(x % m for x in v) for v in self.c)

    def __eq__(self, other):
        if not isinstance(other, TruncLaurent):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def __repr__(self):
        return f"TruncLaurent([{self.lo},{self.hi}) shift={self.shift} terms={self.terms()})"


def one(ring, lo, hi, frob=None):
    return TruncLaurent.monomial(ring, lo, hi, 0, 1, frob)


def ls_add(a, b):
    return a + b


def ls_mul(a, b):
    return a * b


def _power_series_inverse(ring, u, n):
    """Inverse of the power series ``u`` (list, u[0] a unit) modulo X^n."""
    inv0 = ring.inv_unit(u[0])
    out = [inv0]
    for m in range(1, n):
        s = ring.zero()
        for k in range(1, min(m, len(u) - 1) + 1):
            if any(u[k]):
                s = ring.add(s, ring.mul(u[k], out[m - k]))
        out.append(ring.neg(ring.mul(inv0, s)))
    return out


def ls_inv(a: TruncLaurent) -> TruncLaurent:
    """Inverse of a reduction unit on the same window.

    Writes ``a = X^d (U + P)`` with ``U`` a unit power series and ``P`` a
    polynomial in X^-1 with coefficients in pO, and sums the geometric
    series ``X^-d U^-1 sum (-U^-1 P)^k`` (p-adically convergent).
    """
    if a.shift:
        raise ValueError("cannot invert a series with denominators")
    R = a.ring
    d = a.reduction_order()
    if d is None:
        raise ZeroDivisionError("not a unit in O{{X}}: reduction is zero")
    lo, hi = a.lo, a.hi
    U = [a[n] for n in range(d, hi)]
    Pterms = {n - d: a[n] for n in range(lo, d) if any(a[n])}
    # P is divisible by p, so (U^-1 P)^k vanishes mod p^M once k >= M.
    kmax = R.M if Pterms else 0
    spread = kmax * (d - lo) + 1
    wlo = min(lo, -spread)
    whi = hi + abs(d) + spread
    Uinv = _power_series_inverse(R, U, whi)
    W = lambda terms: TruncLaurent.from_dict(R, wlo, whi, terms, frob=a.frob)
    Ui = W(dict(enumerate(Uinv)))
    UiP = Ui * W(Pterms)
    term = W({0: R.one()})
    total = W({0: R.one()})
    for _ in range(kmax):
        term = -(term * UiP)
        if term.is_zero():
            break
        total = total + term
    res = (Ui * total).shift_exponents(-d)
    out = [res[n] for n in range(lo, hi)]
    return TruncLaurent(R, lo, hi, out, 0, a.frob, a.prec)


def ls_log1p(psi: TruncLaurent) -> TruncLaurent:
    """log(1 + psi) for psi with positive exponents, as a series with denominators."""
    if psi.shift:
        raise ValueError("psi must have integral coefficients")
    o = psi.order()
    if o is not None and o <= 0:
        raise ValueError("log1p needs a series of positive order")
    R = psi.ring
    lo, hi = psi.lo, psi.hi
    if lo > 0 or o is None:
        return psi.like()
    u = [R.one() if n == 0 else psi[n] for n in range(0, hi)]
    inv = _power_series_inverse(R, u, hi)
    du = [R.smul(n + 1, u[n + 1]) for n in range(hi - 1)]
    # c = psi' / (1 + psi)
    c = [R.zero() for _ in range(hi)]
    for i, x in enumerate(du):
        if any(x):
            for j in range(hi - 1 - i):
                c[i + j] = R.add(c[i + j], R.mul(x, inv[j]))
    return _integrate(R, c, lo, hi, psi.frob)


def _integrate(R, c, lo, hi, frob):
    """Series with coefficient c[n-1]/n at X^n, n >= 1, carried with a denominator."""
    p = R.p
    shift = 0
    n = 1
    while n < hi:
        n *= p
        shift += 1
    shift = max(shift - 1, 0)
    ps = p ** shift
    out = TruncLaurent(R, lo, hi, shift=shift, frob=frob)
    for n in range(max(1, lo), hi):
        v = 0
        m = n
        while m % p == 0:
            m //= p
            v += 1
        factor = (p ** (shift - v)) * pow(m, -1, R.mod)
        out.c[n - lo] = R.smul(factor, c[n - 1])
    return out


def log_derivative(a: TruncLaurent) -> TruncLaurent:
    """a'/a for a power series with unit constant term."""
    R = a.ring
    lo, hi = a.lo, a.hi
    u = [a[n] for n in range(0, hi)]
    inv = _power_series_inverse(R, u, hi)
    out = TruncLaurent(R, lo, hi, frob=a.frob)
    for i in range(hi - 1):
        x = R.smul(i + 1, u[i + 1])
        if any(x):
            for j in range(hi - 1 - i):
                if i + j >= lo:
                    k = i + j - lo
                    out.c[k] = R.add(out.c[k], R.mul(x, inv[j]))
    return out


def frobenius_twist(a: TruncLaurent) -> TruncLaurent:
    """a^Delta(X) = a^phi(X^p)."""
    if a.frob is None:
        raise ValueError("series carries no Frobenius")
    p = a.ring.p
    out = a.like([a.ring.zero() for _ in a.c])
    for i, v in enumerate(a.c):
        if not any(v):
            continue
        n = (a.lo + i) * p
        if n < a.lo:
            raise ValueError("window overflow: lo too small for p * order")
        if n < a.hi:
            out.c[n - a.lo] = a.frob(v)
    return out


def l_map(a: TruncLaurent) -> TruncLaurent:
    """l(a) = log(a) - log(a^Delta)/p, integral for a in 1 + X O[[X]]."""
    R = a.ring
    if a.order() is None or any(R.sub(a[0], R.one())) or any(any(a[n]) for n in range(a.lo, 0)):
        raise ValueError("l_map needs a series in 1 + X O[[X]]")
    psi = a - one(R, a.lo, a.hi, a.frob)
    L = ls_log1p(psi)
    LD = frobenius_twist(L)
    num = (L * R.p) - LD
    return num.like(num.c, shift=L.shift + 1).normalize()


def ls_eval(a: TruncLaurent, x):
    """Evaluate the power-series part at a PadicElement x (negative terms rejected)."""
    from .rings import PadicElement
    if any(any(a[n]) for n in range(a.lo, 0)):
        raise ValueError("cannot evaluate negative powers")
    if a.shift:
        raise ValueError("series has denominators")
    ring = x.ring
    acc = PadicElement(ring, ring.zero())
    for n in range(a.hi - 1, -1, -1):
        acc = acc * x + PadicElement(ring, ring.embed(a[n], a.ring))
    return acc
