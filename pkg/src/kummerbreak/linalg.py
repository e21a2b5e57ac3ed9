"""Small exact linear algebra: F_p subspaces and division-free char polys."""

from __future__ import annotations


class Subspace:
    """An F_p-subspace of F_p^n kept in reduced row echelon form."""

    def __init__(self, p: int, n: int, vectors=()):
        self.p = p
        self.n = n
        self.rows: list[list[int]] = []
        self.pivots: list[int] = []
        for v in vectors:
            self.add(v)

    @classmethod
    def full(cls, p, n):
        return cls(p, n, [[int(i == j) for j in range(n)] for i in range(n)])

    def reduce(self, v):
        p = self.p
        v = [x % p for x in v]
        for row, piv in zip(self.rows, self.pivots):
            c = v[piv]
            if c:
                v = [(a - c * b) % p for a, b in zip(v, row)]
        return v

    def add(self, v) -> bool:
        """Insert ``v``; returns True when the dimension grew."""
        if len(v) != self.n:
            raise ValueError("vector length mismatch")
        p = self.p
        v = self.reduce(v)
        piv = next((i for i, x in enumerate(v) if x), None)
        if piv is None:
            return False
        inv = pow(v[piv], -1, p)
        v = [(x * inv) % p for x in v]
        for idx, row in enumerate(self.rows):
            c = row[piv]
            if c:
                self.rows[idx] = [(a - c * b) % p for a, b in zip(row, v)]
        self.rows.append(v)
        self.pivots.append(piv)
        order = sorted(range(len(self.pivots)), key=lambda i: self.pivots[i])
        self.rows = [self.rows[i] for i in order]
        self.pivots = [self.pivots[i] for i in order]
        return True

    @property
    def dim(self) -> int:
        return len(self.rows)

    def contains(self, v) -> bool:
        return not any(self.reduce(v))

    def stable_under(self, matrix) -> bool:
        """True iff ``matrix * V`` is contained in ``V`` (matrix acts on columns)."""
        for row in self.rows:
            img = mat_vec(matrix, row, self.p)
            if not self.contains(img):
                return False
        return True

    def key(self):
        return tuple(tuple(r) for r in self.rows)

    def __eq__(self, other):
        return isinstance(other, Subspace) and self.key() == other.key()

    def __repr__(self):
        return f"Subspace(dim={self.dim}/{self.n})"


def mat_vec(matrix, v, p):
    return [sum(a * b for a, b in zip(row, v)) % p for row in matrix]


def kernel(rows, n: int, p: int) -> Subspace:
    """Null space of the linear functionals ``rows`` on F_p^n."""
    # Gaussian elimination on the functionals, then read off a basis.
    R = Subspace(p, n, rows)
    pivots = set(R.pivots)
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for fj in free:
        v = [0] * n
        v[fj] = 1
        for row, piv in zip(R.rows, R.pivots):
            v[piv] = (-row[fj]) % p
        basis.append(v)
    return Subspace(p, n, basis)


def rank(rows, n: int, p: int) -> int:
    return Subspace(p, n, rows).dim


def block_diag(blocks):
    n = sum(len(b) for b in blocks)
    out = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        k = len(b)
        for i in range(k):
            for j in range(k):
                out[off + i][off + j] = b[i][j]
        off += k
    return out


def berkowitz(matrix, zero, one):
    """Characteristic polynomial ``det(X I - A)`` without divisions.

    ``matrix`` is a square list of ring elements supporting ``+``, ``-``
    and ``*``.  Returns little-endian coefficients ``[c_0, ..., c_n]`` with
    ``c_n = 1``.
    """
    n = len(matrix)
    if n == 0:
        return [one]
    # vect holds det(X I - A_r) for the leading r x r block, big-endian.
    vect = [one, zero - matrix[0][0]]
    for r in range(1, n):
        # Toeplitz column for step r (A_r is the (r+1) x (r+1) leading block)
        R = [matrix[r][j] for j in range(r)]          # row r, first r cols
        C = [matrix[i][r] for i in range(r)]          # col r, first r rows
        a = matrix[r][r]
        A = [row[:r] for row in matrix[:r]]
        col = [one, zero - a]
        cur = C
        for _ in range(r):
            s = zero
            for x, y in zip(R, cur):
                s = s + x * y
            col.append(zero - s)
            cur = [_dot(A[i], cur, zero) for i in range(r)]
        # multiply Toeplitz (lower triangular, (r+2) x (r+1)) by vect
        new = []
        for i in range(r + 2):
            s = zero
            for j in range(min(i, r) + 1):
                s = s + col[i - j] * vect[j]
            new.append(s)
        vect = new
    return vect[::-1]


def _dot(row, vec, zero):
    s = zero
    for x, y in zip(row, vec):
        s = s + x * y
    return s


class _Raw:
    """Adapter giving raw ring data the arithmetic operators berkowitz uses."""

    __slots__ = ("r", "v")

    def __init__(self, r, v):
        self.r = r
        self.v = v

    def __add__(self, o):
        return _Raw(self.r, self.r.add(self.v, o.v))

    def __sub__(self, o):
        return _Raw(self.r, self.r.sub(self.v, o.v))

    def __mul__(self, o):
        return _Raw(self.r, self.r.mul(self.v, o.v))


def berkowitz_ring(matrix, ring):
    """Characteristic polynomial of a matrix of raw ``ring`` data (little-endian)."""
    m = [[_Raw(ring, x) for x in row] for row in matrix]
    cp = berkowitz(m, _Raw(ring, ring.zero()), _Raw(ring, ring.one()))
    return [c.v for c in cp]


def det_ring(matrix, ring):
    n = len(matrix)
    c0 = berkowitz_ring(matrix, ring)[0]
    return c0 if n % 2 == 0 else ring.neg(c0)


def mat_mul_ring(A, B, ring):
    n, k, m = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        Ai = A[i]
        for j in range(m):
            s = ring.zero()
            for t in range(k):
                a = Ai[t]
                if any(a):
                    b = B[t][j]
                    if any(b):
                        s = ring.add(s, ring.mul(a, b))
            row.append(s)
        out.append(row)
    return out


def mat_vec_ring(A, v, ring):
    out = []
    for row in A:
        s = ring.zero()
        for a, x in zip(row, v):
            if any(a) and any(x):
                s = ring.add(s, ring.mul(a, x))
        out.append(s)
    return out
