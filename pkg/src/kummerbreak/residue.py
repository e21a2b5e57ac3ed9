"""The residue field F_q = F_p[x]/(m(x)).

Elements are encoded as integers ``sum(a_j * p**j)`` for coordinates
``a_j`` in the polynomial basis ``1, x, ..., x^(f-1)``.  Integer codes
are hashable, give the total order used for digit expansions, and keep
the hot paths table-driven.
"""

from __future__ import annotations

from functools import cached_property

from .errors import FieldSpecError


def _poly_mulmod(a, b, mod_low, p):
    f = len(mod_low)
    t = [0] * (2 * f - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                t[i + j] += ai * bj
    for m in range(2 * f - 2, f - 1, -1):
        c = t[m] % p
        if c:
            for i in range(f):
                t[m - f + i] -= c * mod_low[i]
    return [c % p for c in t[:f]]


class ResidueField:
    """Finite field of order ``q = p**f`` with log/antilog tables."""

    def __init__(self, p: int, modulus: list[int]):
        # modulus: little-endian coefficients, monic of degree f
        if len(modulus) < 2 or modulus[-1] % p != 1:
            raise FieldSpecError("residue polynomial must be monic of degree >= 1")
        self.p = p
        self.f = len(modulus) - 1
        self.q = p ** self.f
        self.modulus = [c % p for c in modulus]
        self._low = self.modulus[:-1]
        self._build_tables()

    # -- encoding -------------------------------------------------------
    def vec(self, a: int) -> list[int]:
        out = []
        for _ in range(self.f):
            out.append(a % self.p)
            a //= self.p
        return out

    def code(self, v) -> int:
        c = 0
        for a in reversed(list(v)):
            c = c * self.p + (a % self.p)
        return c

    def _build_tables(self):
        p, q = self.p, self.q
        x = self.code([0, 1] + [0] * (self.f - 2)) if self.f > 1 else None
        gen = None
        for g in range(1, q):
            order, cur = 1, self.vec(g)
            one = [1] + [0] * (self.f - 1)
            while cur != one:
                cur = _poly_mulmod(cur, self.vec(g), self._low, p)
                order += 1
                if order > q - 1:
                    break
            if order == q - 1:
                gen = g
                break
        if gen is None:
            raise FieldSpecError("residue polynomial is not irreducible over F_p")
        exp = [0] * (q - 1)
        log = [None] * q
        cur = [1] + [0] * (self.f - 1)
        for k in range(q - 1):
            c = self.code(cur)
            if log[c] is not None:
                raise FieldSpecError("residue polynomial is not irreducible over F_p")
            exp[k] = c
            log[c] = k
            cur = _poly_mulmod(cur, self.vec(gen), self._low, p)
        self.generator = gen
        self._exp = exp
        self._log = log
        self._x = x

    # -- arithmetic -----------------------------------------------------
    def add(self, a: int, b: int) -> int:
        return self.code([s + t for s, t in zip(self.vec(a), self.vec(b))])

    def sub(self, a: int, b: int) -> int:
        return self.code([s - t for s, t in zip(self.vec(a), self.vec(b))])

    def neg(self, a: int) -> int:
        return self.code([-s for s in self.vec(a)])

    def scalar(self, c: int, a: int) -> int:
        return self.code([c * s for s in self.vec(a)])

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in residue field")
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if a == 0:
            return 1 if n == 0 else 0
        return self._exp[(self._log[a] * n) % (self.q - 1)]

    def frobenius(self, a: int, times: int = 1) -> int:
        return self.pow(a, self.p ** (times % self.f))

    def pth_root(self, a: int) -> int:
        return self.frobenius(a, self.f - 1)

    def trace(self, a: int) -> int:
        """Absolute trace F_q -> F_p, returned as an integer in [0, p)."""
        s = 0
        cur = a
        for _ in range(self.f):
            s = self.add(s, cur)
            cur = self.frobenius(cur)
        v = self.vec(s)
        if any(v[1:]):
            raise ArithmeticError("trace left the prime field")
        return v[0]

    def order(self, a: int) -> int:
        from math import gcd
        return (self.q - 1) // gcd(self._log[a], self.q - 1)

    def in_prime_field(self, a: int) -> bool:
        return a < self.p

    def in_subfield(self, a: int, degree: int) -> bool:
        """True iff ``a`` lies in F_{p^degree}."""
        return self.pow(a, self.p ** degree) == a

    def elements(self) -> range:
        return range(self.q)

    def basis(self) -> list[int]:
        return [self.p ** j for j in range(self.f)]

    @cached_property
    def mul_matrices(self):
        """F_p-matrix (rows = output coords) of multiplication by each element."""
        mats = {}
        for a in range(self.q):
            cols = [self.vec(self.mul(a, e)) for e in self.basis()]
            mats[a] = [[cols[j][i] for j in range(self.f)] for i in range(self.f)]
        return mats

    def __repr__(self):
        return f"ResidueField(p={self.p}, f={self.f})"
