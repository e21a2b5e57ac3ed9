"""Truncated rings of integers of towers of totally ramified extensions.

``TowerRing.unramified`` is O_{K0}/p^M for K0 unramified over Q_p.
``TowerRing.extend`` adjoins a root of an Eisenstein polynomial over the
previous ring.  Ring methods act on raw flat integer lists; precision is
tracked by :class:`PadicElement`.
"""

from __future__ import annotations

from math import ceil, log2

from .errors import PrecisionError
from .kernels import Kernel
from .residue import ResidueField


def vp_int(c: int, p: int, cap: int) -> int:
    if c == 0:
        return cap
    v = 0
    while c % p == 0:
        c //= p
        v += 1
    return min(v, cap)


class TowerRing:
    """O_F / p^M for a field F at some level of an Eisenstein tower."""

    def __init__(self, levels, residue: ResidueField, M: int, base=None,
                 eis=None, eis_prec=None):
        self.levels = levels
        self.k = len(levels) - 1
        self.residue_field = residue
        self.p = residue.p
        self.f = residue.f
        self.M = M
        self.mod = self.p ** M
        self.base = base
        self.kernel = Kernel(levels)
        if base is None:
            self.n = 1
            self.E = 1
            self.dim = self.f
            self.res_low = list(levels[0][2])
            self.cap = M
        else:
            self.n = len(eis)
            self.E = self.n * base.E
            self.dim = self.n * base.dim
            self.eis = [list(c) for c in eis]
            raw_cap = self.E * M
            if eis_prec is None:
                eis_prec = base.cap
            self.cap = min(raw_cap, self.n * min(base.cap, eis_prec))
            self.eis_prec = eis_prec
            u0 = base.divpi(self.eis[0])
            u0inv = base.neg(base.inv_unit(u0))
            w = []
            for i in range(self.n - 1):
                w.extend(base.mul(self.eis[i + 1], u0inv))
            w.extend(u0inv)
            # pi_base / pi = -(pi^{n-1} + a_{n-1} pi^{n-2} + ... + a_1) / u0
            self._w = w

    # -- construction ---------------------------------------------------
    @classmethod
    def unramified(cls, residue: ResidueField, M: int) -> "TowerRing":
        low = residue.modulus[:-1]
        levels = [(residue.f, residue.p ** M, tuple(low))]
        return cls(levels, residue, M)

    def extend(self, eis_low, eis_prec=None) -> "TowerRing":
        """Adjoin a root of ``w^n + sum(eis_low[i] w^i)``; coefficients are raw data."""
        n = len(eis_low)
        levels = self.levels + [(n, self.dim, tuple(tuple(c) for c in eis_low))]
        return TowerRing(levels, self.residue_field, self.M, base=self,
                         eis=eis_low, eis_prec=eis_prec)

    def chain(self):
        rings = []
        r = self
        while r is not None:
            rings.append(r)
            r = r.base
        return rings[::-1]

    # -- raw arithmetic -------------------------------------------------
    def zero(self):
        return [0] * self.dim

    def one(self):
        z = [0] * self.dim
        z[0] = 1
        return z

    def gen(self):
        """The uniformizer of this level (or ``x`` at level 0)."""
        z = [0] * self.dim
        if self.base is None:
            if self.f > 1:
                z[1] = 1
            else:
                raise ValueError("level 0 with f=1 has no polynomial generator")
        elif self.n == 1:
            z = self.base.neg(self.eis[0])
        else:
            z[self.base.dim] = 1
        return z

    def from_int(self, c: int):
        z = [0] * self.dim
        z[0] = c % self.mod
        return z

    def add(self, a, b):
        m = self.mod
        return [(x + y) % m for x, y in zip(a, b)]

    def sub(self, a, b):
        m = self.mod
        return [(x - y) % m for x, y in zip(a, b)]

    def neg(self, a):
        m = self.mod
        return [(-x) % m for x in a]

    def smul(self, c: int, a):
        m = self.mod
        return [(c * x) % m for x in a]

    def mul(self, a, b):
        return self.kernel.mul(self.k, a, b)

    def scale(self, c, a):
        """Multiply by a raw element ``c`` of the base ring."""
        return self.kernel.scale(self.k, c, a)

    def pow(self, a, n: int):
        result = self.one()
        base = a
        while n:
            if n & 1:
                result = self.mul(result, base)
            n >>= 1
            if n:
                base = self.mul(base, base)
        return result

    def embed(self, data, from_ring=None):
        """Embed raw data of a lower ring of the chain into this ring."""
        if from_ring is None:
            from_ring = self.base
        if from_ring is self:
            return list(data)
        out = list(data) + [0] * (self.dim - len(data))
        return out

    def coefficients(self, a):
        """Split into the ``n`` base-ring coefficients."""
        bd = self.base.dim
        return [a[i * bd:(i + 1) * bd] for i in range(self.n)]

    # -- valuation and division by the uniformizer -----------------------
    def val(self, a) -> int:
        """Valuation of raw data in this level's units, capped at ``E*M``."""
        raw_cap = self.E * self.M
        if self.base is None:
            v = raw_cap
            p = self.p
            for c in a:
                if c:
                    v = min(v, vp_int(c, p, raw_cap))
                    if v == 0:
                        return 0
            return v
        bd = self.base.dim
        n = self.n
        best = raw_cap
        for i in range(n):
            blk = a[i * bd:(i + 1) * bd]
            if any(blk):
                v = n * self.base.val(blk) + i
                if v < best:
                    best = v
                    if best == 0:
                        return 0
        return min(best, raw_cap)

    def divpi(self, a):
        """Exact division by the uniformizer; ``a`` must have positive valuation."""
        if self.base is None:
            p = self.p
            if any(c % p for c in a):
                raise ArithmeticError("division by p of a unit")
            return [c // p for c in a]
        bd = self.base.dim
        c0 = a[:bd]
        out = list(a[bd:]) + [0] * bd
        if any(c0):
            q0 = self.base.divpi(c0)
            out = self.add(out, self.scale(q0, self._w))
        return out

    def divpi_n(self, a, m: int):
        for _ in range(m):
            a = self.divpi(a)
        return a

    def is_unit(self, a) -> bool:
        return self.val(a) == 0

    def residue(self, a) -> int:
        """Residue class in F_q (as an integer code)."""
        r = self
        x = a
        while r.base is not None:
            x = x[:r.base.dim]
            r = r.base
        return self.residue_field.code([c % self.p for c in x])

    def lift(self, code: int):
        """Standard lift of a residue code: coordinates in [0, p)."""
        v = self.residue_field.vec(code)
        return v + [0] * (self.dim - self.f)

    def inv_unit(self, a):
        if self.base is None:
            r = self.residue(a)
            if r == 0:
                raise ZeroDivisionError("not a unit")
            y = self.lift(self.residue_field.inv(r))
            iters = ceil(log2(self.M)) + 1 if self.M > 1 else 1
        else:
            c0 = a[:self.base.dim]
            if self.base.val(c0) != 0:
                raise ZeroDivisionError("not a unit")
            y = self.embed(self.base.inv_unit(c0))
            iters = ceil(log2(max(self.E * self.M, 2))) + 1
        two = self.from_int(2)
        for _ in range(iters):
            # y <- y (2 - a y)
            y = self.mul(y, self.sub(two, self.mul(a, y)))
        return y

    def __repr__(self):
        return f"TowerRing(level={self.k}, E={self.E}, f={self.f}, M={self.M})"


class PadicElement:
    """An element of a tower ring known modulo the uniformizer to ``prec``."""

    __slots__ = ("ring", "data", "prec")

    def __init__(self, ring: TowerRing, data, prec: int | None = None):
        self.ring = ring
        self.data = data
        self.prec = ring.cap if prec is None else min(prec, ring.cap)

    # -- constructors ---------------------------------------------------
    @classmethod
    def from_int(cls, ring, c: int, prec=None):
        return cls(ring, ring.from_int(c), prec)

    def _coerce(self, other):
        if isinstance(other, PadicElement):
            if other.ring is not self.ring:
                raise TypeError("elements of different rings")
            return other
        if isinstance(other, int):
            return PadicElement(self.ring, self.ring.from_int(other))
        return NotImplemented

    # -- queries --------------------------------------------------------
    def valuation(self) -> int | None:
        """Valuation, or ``None`` when the element is zero at its precision."""
        v = self.ring.val(self.data)
        return None if v >= self.prec else v

    def _v(self) -> int:
        return min(self.ring.val(self.data), self.prec)

    def is_zero(self) -> bool:
        return self.valuation() is None

    def residue(self) -> int:
        if self.prec < 1:
            raise PrecisionError("residue needs precision >= 1")
        if self._v() < 0:
            raise ValueError("not integral")
        return self.ring.residue(self.data)

    def congruent(self, other, n: int) -> bool:
        """True iff ``self = other`` modulo the ``n``-th power of the uniformizer."""
        d = self - other
        if d.prec < n:
            raise PrecisionError(f"precision {d.prec} below requested modulus {n}")
        return self.ring.val(d.data) >= n

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        d = self - o
        return d.is_zero()

    __hash__ = None

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PadicElement(self.ring, self.ring.add(self.data, o.data),
                            min(self.prec, o.prec))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PadicElement(self.ring, self.ring.sub(self.data, o.data),
                            min(self.prec, o.prec))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __neg__(self):
        return PadicElement(self.ring, self.ring.neg(self.data), self.prec)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if isinstance(other, int):
            return PadicElement(self.ring, self.ring.smul(other, self.data), self.prec)
        prec = min(self.prec + o._v(), o.prec + self._v())
        return PadicElement(self.ring, self.ring.mul(self.data, o.data), prec)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = PadicElement(self.ring, self.ring.one())
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c: "PadicElement"):
        """Multiply by an element of the base ring."""
        ring = self.ring
        if c.ring is not ring.base:
            raise TypeError("scalar must live in the base ring")
        v_self = self._v()
        v_c = ring.n * c._v()
        prec = min(self.prec + v_c, ring.n * c.prec + v_self)
        return PadicElement(ring, ring.scale(c.data, self.data), prec)

    def inverse(self):
        v = self.valuation()
        if v is None:
            raise ZeroDivisionError("inverse of an element that is zero at precision")
        if v != 0:
            raise ValueError("only units are invertible in the ring of integers")
        return PadicElement(self.ring, self.ring.inv_unit(self.data), self.prec)

    def divpi(self, m: int = 1):
        """Exact division by ``uniformizer**m``; precision drops by ``m``."""
        if m == 0:
            return self
        v = self._v()
        if v < m:
            raise ArithmeticError(f"valuation {v} < {m}: not divisible")
        data = self.ring.divpi_n(self.data, m) if self.ring.val(self.data) >= m else self.ring.zero()
        return PadicElement(self.ring, data, self.prec - m)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        vb = o.valuation()
        if vb is None:
            raise ZeroDivisionError("division by an element that is zero at precision")
        a = self.divpi(vb)
        b = o.divpi(vb)
        return a * b.inverse()

    # -- expansions -----------------------------------------------------
    def digits(self, teichmuller=None, depth: int | None = None):
        """Nonzero digits ``(code, h)`` with ``self = sum lift(code) * pi^h``.

        ``teichmuller`` maps a residue code to raw data of its lift; when
        omitted the standard lift (coordinates in [0, p)) is used.
        """
        ring = self.ring
        top = self.prec if depth is None else min(depth, self.prec)
        lift = teichmuller or ring.lift
        out = []
        x = self
        h = 0
        while h < top:
            v = x.valuation()
            if v is None:
                break
            if v > 0:
                step = min(v, top - h)
                x = x.divpi(step)
                h += step
                continue
            r = ring.residue(x.data)
            out.append((r, h))
            x = (x - PadicElement(ring, lift(r))).divpi(1)
            h += 1
        return out

    def __repr__(self):
        v = self.valuation()
        vs = "0" if v is None else f"v={v}"
        return f"<PadicElement level={self.ring.k} {vs} prec={self.prec} data={self.data}>"
