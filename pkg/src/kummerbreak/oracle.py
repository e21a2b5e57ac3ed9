"""Brute-force ground truth from an explicit Kummer tower L = K(y_1, y_2).

The tower is built as two Eisenstein layers K -> K1 -> L.  Each layer is a
Kummer step y^p = 1 + rho with v(rho) = j prime to p: with x = y - 1 and
a j - c p = 1 (1 <= a < p) the element x^a / pi^c is a uniformizer, and its
characteristic polynomial over the base is Eisenstein.  Combining the
valuations j and p of x and pi by the extended gcd plays the role of a
uniformizer search; the pool order is (y_1 - 1, pi_K) then (y_2' - 1, pi_1).

L is represented in the K-basis pi_1^a pi_2^c (0 <= a, c < p).  Galois
elements (m_1, m_2) send y_i to zeta_p^{m_i} y_i.  All K-linear maps are
p^2 x p^2 matrices over K.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from itertools import product
from math import comb

from .artin_hasse import binomials, ep_eval
from .errors import PrecisionError, SpecError
from .linalg import berkowitz_ring, det_ring, mat_mul_ring, mat_vec_ring
from .rings import PadicElement


@lru_cache(maxsize=16)
def _oracle_field(spec):
    from .field import Field
    return Field(spec)


def oracle_precision(field, b: int) -> int:
    """Default working precision (v_K units) for the oracle."""
    return max(field.N, 3 * (b + field.e + 2) + 2 * field.p)


# -- one Kummer step ---------------------------------------------------------

@dataclass
class KummerLayer:
    base: object      # TowerRing
    ring: object      # TowerRing of the new layer
    rho: list         # raw base data
    j: int
    a: int
    c: int
    x: list           # raw data of y - 1 in ``ring``


def _poly_mulmod(B, f, u, v, p):
    """u * v modulo the monic f (degree p), all coefficients raw B data."""
    prod = [B.zero() for _ in range(2 * p - 1)]
    for i, ui in enumerate(u):
        if any(ui):
            for k, vk in enumerate(v):
                if any(vk):
                    prod[i + k] = B.add(prod[i + k], B.mul(ui, vk))
    for n in range(2 * p - 2, p - 1, -1):
        c = prod[n]
        if any(c):
            for i in range(p):
                if any(f[i]):
                    prod[n - p + i] = B.sub(prod[n - p + i], B.mul(c, f[i]))
            prod[n] = B.zero()
    return prod[:p]


def kummer_layer(B, rho, p: int) -> KummerLayer:
    """Adjoin y with y^p = 1 + rho over the ring B; v_B(rho) must be prime to p."""
    j = B.val(rho)
    if j >= B.cap:
        raise PrecisionError("rho vanishes at working precision")
    if j % p == 0:
        raise SpecError("valuation divisible by p: not a Kummer step of this shape")
    a = next(a for a in range(1, p) if (a * j - 1) % p == 0)
    c = (a * j - 1) // p
    # f(x) = (1+x)^p - 1 - rho
    f = [B.neg(rho)] + [B.from_int(comb(p, k)) for k in range(1, p)]
    xpoly = [B.zero(), B.one()] + [B.zero() for _ in range(p - 2)]
    z = [B.one()] + [B.zero() for _ in range(p - 1)]
    for _ in range(a):
        z = _poly_mulmod(B, f, z, xpoly, p)
    cols = []
    basis_i = [B.one()] + [B.zero() for _ in range(p - 1)]
    for i in range(p):
        cols.append(_poly_mulmod(B, f, z, basis_i, p))
        basis_i = _poly_mulmod(B, f, basis_i, xpoly, p)
    matrix = [[cols[col][row] for col in range(p)] for row in range(p)]
    cp = berkowitz_ring(matrix, B)
    eis = []
    for i in range(p):
        m = c * (p - i)
        eis.append(B.divpi_n(cp[i], m) if m else cp[i])
    if B.val(eis[0]) != 1:
        raise PrecisionError("constructed polynomial is not Eisenstein (constant term)")
    for i in range(1, p):
        if B.val(eis[i]) < 1:
            raise PrecisionError("constructed polynomial is not Eisenstein")
    eis_prec = B.cap - c * p
    C = B.extend(eis, eis_prec)
    x = _recover_x(B, C, rho, p, j, a, c)
    # verify f(x) = 0
    y = C.add(C.one(), x)
    yp = C.pow(y, p)
    res = C.sub(C.sub(yp, C.one()), C.embed(rho))
    need = min(C.cap - p * j - 2, 3 * p * j)
    if C.val(res) < need:
        raise PrecisionError(f"Kummer root check failed: v = {C.val(res)} < {need}")
    return KummerLayer(B, C, rho, j, a, c, x)


def _recover_x(B, C, rho, p, j, a, c):
    """The root x of (1+x)^p = 1 + rho with x^a = pi_1 * varpi^c (varpi the base uniformizer)."""
    F = C.residue_field
    varpi = C.embed(B.gen())
    eps = C.divpi_n(varpi, p)               # varpi / pi_1^p, a unit
    target = C.pow(eps, c)
    r = C.residue(C.divpi_n(C.embed(rho), p * j))
    ubar = F.pth_root(r)
    if F.pow(ubar, a) != C.residue(target):
        raise AssertionError("inconsistent residue in Kummer root recovery")
    if a == 1:
        u = target
    else:
        u = C.lift(ubar)
        for _ in range(2 * (C.cap.bit_length() + 1)):
            ua1 = C.pow(u, a - 1)
            err = C.sub(C.mul(ua1, u), target)
            if C.val(err) >= C.cap:
                break
            step = C.mul(err, C.inv_unit(C.smul(a % C.mod, ua1)))
            u = C.sub(u, step)
    return C.mul(C.pow(C.gen(), j), u)


# -- the tower ---------------------------------------------------------------

@dataclass
class Tower:
    field: object                 # oracle field (higher precision)
    layer1: KummerLayer
    layer2: KummerLayer
    w: list                       # correction in K1: y_2' = y_2 * w
    b: int
    zeta: list                    # raw K data of zeta_p
    _cache: dict = dc_field(default_factory=dict, repr=False)

    @property
    def K(self):
        return self.field.OK

    @property
    def K1(self):
        return self.layer1.ring

    @property
    def L(self):
        return self.layer2.ring

    @property
    def p(self):
        return self.field.p

    @property
    def degree(self):
        return self.p ** 2

    # coordinates over K in the basis pi_1^a pi_2^c, index c*p + a
    def coords(self, data):
        kd = self.K.dim
        return [list(data[i * kd:(i + 1) * kd]) for i in range(self.degree)]

    def from_coords(self, vec):
        out = []
        for v in vec:
            out.extend(v)
        return out

    def basis(self):
        L = self.L
        out = []
        p = self.p
        for c in range(p):
            for a in range(p):
                v = [0] * L.dim
                kd = self.K.dim
                idx = (c * p + a) * kd
                v[idx] = 1
                out.append(v)
        return out

    def mult_matrix(self, x):
        """K-matrix of multiplication by raw L data x (columns = images of basis)."""
        L = self.L
        cols = [self.coords(L.mul(x, bvec)) for bvec in self.basis()]
        n = self.degree
        return [[cols[j][i] for j in range(n)] for i in range(n)]

    def norm(self, x):
        """N_{L/K}(x) via determinants over K1 and then K."""
        L, K1, K = self.L, self.K1, self.K
        p = self.p
        # matrix of x over K1 on basis pi_2^c
        cols = []
        e = L.one()
        g = L.gen()
        for c in range(p):
            cols.append(L.coefficients(L.mul(x, e)))
            e = L.mul(e, g)
        m1 = [[cols[j][i] for j in range(p)] for i in range(p)]
        n1 = det_ring(m1, K1)
        cols = []
        e = K1.one()
        g = K1.gen()
        for a in range(p):
            cols.append(K1.coefficients(K1.mul(n1, e)))
            e = K1.mul(e, g)
        m0 = [[cols[j][i] for j in range(p)] for i in range(p)]
        return det_ring(m0, K)

    # -- Galois action ---------------------------------------------------
    def sigma_images(self, m1: int, m2: int):
        """Images (sigma(pi_1) in K1, sigma(pi_2) in L) for sigma = (m1, m2)."""
        key = (m1 % self.p, m2 % self.p)
        if key in self._cache:
            return self._cache[key]
        p = self.p
        K1, L = self.K1, self.L
        l1, l2 = self.layer1, self.layer2
        z1 = K1.embed(self._zeta_pow(m1))
        # sigma(x_1) = zeta^m1 (1 + x_1) - 1
        sx1 = K1.sub(K1.mul(z1, K1.add(K1.one(), l1.x)), K1.one())
        s1 = _div_base_power(K1, K1.pow(sx1, l1.a), l1.c, p)
        # sigma on K1 elements
        sw = self.apply_k1(self.w, s1)
        ratio = K1.mul(sw, K1.inv_unit(self.w))
        z2 = L.embed(K1.embed(self._zeta_pow(m2)))
        sx2 = L.sub(L.mul(L.mul(z2, L.add(L.one(), l2.x)), L.embed(ratio)), L.one())
        # sigma(pi_2) = sigma(x_2)^a2 / sigma(pi_1)^c2, sigma(pi_1) = pi_1 * unit
        t = L.pow(sx2, l2.a)
        if l2.c:
            unit = K1.divpi(s1)
            t = _div_base_power(L, t, l2.c, p)
            t = L.mul(t, L.embed(K1.pow(K1.inv_unit(unit), l2.c)))
        self._cache[key] = (s1, t)
        return s1, t

    def _zeta_pow(self, m):
        K = self.K
        return K.pow(self.zeta, m % self.p)

    def apply_k1(self, data, s1):
        K1 = self.K1
        acc = K1.zero()
        for coeff in reversed(K1.coefficients(data)):
            acc = K1.add(K1.mul(acc, s1), K1.embed(coeff))
        return acc

    def apply(self, m1, m2, data):
        s1, s2 = self.sigma_images(m1, m2)
        L = self.L
        acc = L.zero()
        for coeff in reversed(L.coefficients(data)):
            acc = L.add(L.mul(acc, s2), L.embed(self.apply_k1(coeff, s1)))
        return acc

    def sigma_matrix(self, m1, m2):
        key = ("mat", m1 % self.p, m2 % self.p)
        if key not in self._cache:
            s1, s2 = self.sigma_images(m1, m2)
            L = self.L
            p = self.p
            p1 = [L.one()]
            s1L = L.embed(s1)
            for _ in range(p - 1):
                p1.append(L.mul(p1[-1], s1L))
            cols = []
            pc = L.one()
            for c in range(p):
                for a in range(p):
                    cols.append(self.coords(L.mul(pc, p1[a])))
                pc = L.mul(pc, s2)
            n = self.degree
            self._cache[key] = [[cols[j][i] for j in range(n)] for i in range(n)]
        return self._cache[key]


def _div_base_power(C, data, c: int, p: int):
    """data / varpi^c in C, varpi the base uniformizer (varpi = pi_C^p * eps)."""
    if not c:
        return data
    cache = _EPS_INV.setdefault(id(C), (C, {}))[1]
    if c not in cache:
        eps = C.divpi_n(C.embed(C.base.gen()), p)
        cache[c] = C.pow(C.inv_unit(eps), c)
    return C.mul(C.divpi_n(data, p * c), cache[c])


_EPS_INV: dict = {}


def _transfer(field_hi, el):
    """Raw K data of a PadicElement of a lower-precision copy of K."""
    R = field_hi.OK
    return [c % R.mod for c in el.data]


def build_tower(spec, precision: int | None = None) -> Tower:
    """Realize L for an ExtensionSpec at the oracle's working precision."""
    base_field = spec.field
    N = precision or oracle_precision(base_field, spec.b)
    F = _oracle_field(base_field.spec.with_precision(N))
    K = F.OK
    p = F.p
    rho1 = _transfer(F, spec.rho1)
    rho2 = _transfer(F, spec.rho2)
    l1 = kummer_layer(K, rho1, p)
    K1 = l1.ring
    # reduce 1 + rho2 over K1 to a level prime to p
    u = K1.add(K1.one(), K1.embed(rho2))
    w = K1.one()
    d1 = p * K1.E // (p - 1)
    Fq = F.residue_field
    for _ in range(d1 + 1):
        r = K1.sub(u, K1.one())
        v = K1.val(r)
        if v >= K1.cap:
            raise PrecisionError("second generator vanishes at working precision")
        if v % p:
            break
        if v >= d1:
            raise SpecError("second generator becomes a p-th power over K1 (rank drop)")
        lead = K1.residue(K1.divpi_n(r, v))
        gamma = K1.mul(K1.lift(Fq.pth_root(lead)), K1.pow(K1.gen(), v // p))
        corr = K1.sub(K1.one(), gamma)
        u = K1.mul(u, K1.pow(corr, p))
        w = K1.mul(w, corr)
    rho2p = K1.sub(u, K1.one())
    j1 = K1.val(rho2p)
    if j1 != d1 - spec.b:
        raise SpecError(f"second step at level {j1}, expected {d1 - spec.b}: not single-break")
    l2 = kummer_layer(K1, rho2p, p)
    zeta = list(F.zeta_p.data)
    return Tower(F, l1, l2, w, spec.b, zeta)


def find_uniformizer(tower: Tower):
    L = tower.L
    pi = L.gen()
    if L.val(pi) != 1:
        raise PrecisionError("uniformizer search exhausted")
    return pi


# -- minimal polynomial and Heiermann's indices --------------------------------

@dataclass
class MinPolyData:
    coeffs: list          # a_1, ..., a_{p^2} as PadicElements of K (a[0] = 1)
    valuations: list      # v_K(a_i), i = 0..p^2
    digits: dict          # h -> c_h (residue code), nonzero only
    depth: int
    i_star: tuple
    i: tuple

    def a(self, j: int, pi_k=None):
        """a_j with the convention a_{p^2 u + i} = pi_K^u a_i."""
        n = len(self.coeffs) - 1
        u, i = divmod(j - 1, n)
        i += 1
        val = self.coeffs[i]
        if u and pi_k is not None:
            val = val * pi_k ** u
        return val

    def v(self, j: int) -> int:
        n = len(self.coeffs) - 1
        u, i = divmod(j - 1, n)
        return self.valuations[i + 1] + u


def min_poly(tower: Tower, pi_L=None, depth: int | None = None) -> MinPolyData:
    L, K = tower.L, tower.K
    p = tower.p
    n = tower.degree
    F = tower.field
    pi_L = pi_L if pi_L is not None else find_uniformizer(tower)
    cp = berkowitz_ring(tower.mult_matrix(pi_L), K)
    # g(X) = X^n + a_1 X^{n-1} + ... + a_n
    a = [PadicElement(K, cp[n - i]) for i in range(n + 1)]
    vals = [x.valuation() if not x.is_zero() else K.cap for x in a]
    if vals[n] != 1 or any(v < 1 for v in vals[1:n]):
        raise PrecisionError("minimal polynomial of pi_L is not Eisenstein")
    e = F.e
    if depth is None:
        depth = (p * p * tower.b - tower.b) + n * e + 1
    # pi_K' = N(pi_L) = -a_n for odd degree
    pi_k = L.embed(K.neg(cp[0]))
    q = L.divpi_n(pi_k, n)
    el = PadicElement(L, q)
    if el.prec < depth:
        raise PrecisionError(f"digit depth {depth} exceeds precision {el.prec}")
    digs = {h: c for c, h in el.digits(F.teich_lifter(L), depth)}
    i_star = []
    for jj in range(3):
        hs = [h for h in sorted(digs) if _vp(h + n, p) <= jj]
        i_star.append(hs[0] if hs else None)
    i_vals = heiermann_indices(digs, e, p, depth)[1]
    return MinPolyData(a, vals, digs, depth, tuple(i_star), i_vals)


def _vp(n, p):
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def heiermann_indices(digits: dict, e: int, p: int, depth: int):
    """(i_j^*, i_j) for j = 0, 1, 2 from the digit map h -> c_h (degree p^2)."""
    n = p * p
    star = []
    for j in range(3):
        hs = [h for h in sorted(digits) if digits[h] and _vp(h + n, p) <= j]
        star.append(hs[0] if hs else None)
    out = []
    for j in range(3):
        cands = [star[jj] + n * e * (jj - j) for jj in range(j, 3) if star[jj] is not None]
        if not cands:
            raise PrecisionError("insufficient digit depth for Heiermann indices")
        out.append(min(cands))
    # any unseen i_j^* would lie at or beyond depth; check the result is not affected
    for j in range(3):
        if star[j] is None and out[j] >= depth:
            raise PrecisionError("insufficient digit depth for Heiermann indices")
    return tuple(star), tuple(out)


def i1_from_minpoly(mp: MinPolyData, p: int, e: int, b: int) -> dict:
    """i_1 from the coefficient valuations, in the full and the a_{pi} forms."""
    n = p * p
    full = min([n * mp.valuations[i] - i for i in range(1, n)] + [0 + n * e])
    forms = {}
    for l in range(0, 2):
        cands = [n * mp.v(p * i) - p * i for i in range(l + 1, l + p + 1) if i % p]
        forms[l] = min(cands + [n * e, n * b - b])
    return {"full": full, "apj": forms}


def api_bound_holds(mp: MinPolyData, p: int, b: int) -> bool:
    n = p * p
    for i in range(1, n):
        # v(a_i) >= (1 - 1/p^2) b + i/p^2 for p∤i
        if i % p and n * mp.valuations[i] < (n - 1) * b + i:
            return False
    for i in range(1, p):
        # v(a_{pi}) >= (1 - 1/p) b + i/p
        if p * mp.valuations[p * i] < (p - 1) * b + i:
            return False
    return True


# -- ramification ------------------------------------------------------------

def ordinary_breaks(tower: Tower, pi_L=None):
    L = tower.L
    pi_L = pi_L if pi_L is not None else find_uniformizer(tower)
    p = tower.p
    out = {}
    for m1, m2 in product(range(p), repeat=2):
        if (m1, m2) == (0, 0):
            continue
        v = L.val(L.sub(tower.apply(m1, m2, pi_L), pi_L))
        if v >= L.cap:
            raise PrecisionError("Galois conjugate indistinguishable at precision")
        out[(m1, m2)] = v - 1
    return out


def _mat_add(A, B, ring, sign=1):
    op = ring.add if sign > 0 else ring.sub
    return [[op(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def _identity(n, ring):
    return [[ring.one() if i == j else ring.zero() for j in range(n)] for i in range(n)]


def refined_operator(tower: Tower, gens=((1, 0), (0, 1)), pi_L=None):
    """Matrix of T = s_1 o s_2^[-delta] and the digit delta (code)."""
    K, L = tower.K, tower.L
    p = tower.p
    pi_L = pi_L if pi_L is not None else find_uniformizer(tower)
    n = tower.degree
    (a1, b1), (a2, b2) = gens
    beta1 = L.sub(tower.apply(a1, b1, pi_L), pi_L)
    beta2 = L.sub(tower.apply(a2, b2, pi_L), pi_L)
    v1, v2 = L.val(beta1), L.val(beta2)
    if v2 >= L.cap:
        raise PrecisionError("beta_2 vanishes at precision")
    if v1 != v2:
        raise SpecError("generators have different breaks")
    Fq = tower.field.residue_field
    delta = Fq.div(L.residue(L.divpi_n(beta1, v1)), L.residue(L.divpi_n(beta2, v2)))
    S1 = _compose(tower, gens[0])
    S2 = _compose(tower, gens[1])
    D = _mat_add(S2, _identity(n, K), K, -1)
    neg_delta = PadicElement(K, K.neg(tower.field.teich_data(delta)))
    coeffs = binomials(neg_delta, p, K)
    acc = _identity(n, K)
    power = _identity(n, K)
    acc = [[K.mul(coeffs[0].data, x) for x in row] for row in acc]
    for k in range(1, p):
        power = mat_mul_ring(power, D, K)
        acc = _mat_add(acc, [[K.mul(coeffs[k].data, x) for x in row] for row in power], K)
    T = mat_mul_ring(S1, acc, K)
    return T, delta


def _compose(tower, g):
    return tower.sigma_matrix(*g)


def refined_break_direct(tower: Tower, gens=((1, 0), (0, 1)), pi_L=None):
    """min_j v_L(T(pi_L^j) - pi_L^j) - j over 0 < j < p^2 (T fixes K).

    T is O_K-linear and O_L = sum_j O_K pi_L^j with the valuations of the
    summands pairwise distinct mod p^2, so this monomial minimum is the
    valuation of T - 1 on O_L.
    """
    L = tower.L
    pi_L = pi_L if pi_L is not None else find_uniformizer(tower)
    T, delta = refined_operator(tower, gens, pi_L)
    best = None
    x = L.one()
    for j in range(tower.degree):
        img = tower.from_coords(mat_vec_ring(T, tower.coords(x), tower.K))
        v = L.val(L.sub(img, x))
        if j and v >= L.cap:
            raise PrecisionError("(T - 1) pi_L^j vanishes at precision")
        if j:
            val = v - j
            best = val if best is None else min(best, val)
        x = L.mul(x, pi_L)
    return best


def apply_matrix(tower: Tower, T, x):
    return tower.from_coords(mat_vec_ring(T, tower.coords(x), tower.K))


# -- the norm congruence -----------------------------------------------------

def nep_check(tower: Tower, mp: MinPolyData, pi_L=None):
    """N(E_p(r pi_L^i)) == E_p(beta_i(r)) mod M_K^{b+1} for all digits r, p∤i<=b."""
    F = tower.field
    K, L = tower.K, tower.L
    p, b = tower.p, tower.b
    pi_L = pi_L if pi_L is not None else find_uniformizer(tower)
    pik = PadicElement(K, K.neg(mp.coeffs[-1].data))
    failures = []
    count = 0
    for i in range(1, b + 1):
        if i % p == 0:
            continue
        xi = PadicElement(L, L.pow(pi_L, i))
        for r in range(F.q):
            tr = F.teichmuller(r)
            trL = PadicElement(L, F.teich_data(r, L))
            lhs = PadicElement(K, tower.norm(ep_eval(trL * xi).data))
            beta = pik ** i * tr ** (p * p) - (mp.a(p * i, pik) * tr ** p) * i - (mp.a(i, pik) * tr) * i
            rhs = ep_eval(beta) if not beta.is_zero() else PadicElement(K, K.one())
            diff = (lhs - rhs).valuation()
            count += 1
            if diff is not None and diff < b + 1:
                failures.append((i, r, diff))
    return count, failures


# -- bundle ------------------------------------------------------------------

def run_oracle(spec, precision: int | None = None, nep: bool = False, escalate: int = 2) -> dict:
    """All oracle invariants for one spec, escalating precision on failure."""
    N = precision or oracle_precision(spec.field, spec.b)
    last = None
    for _ in range(escalate + 1):
        try:
            return _run_oracle(spec, N, nep)
        except PrecisionError as exc:
            last = exc
            N *= 2
    raise PrecisionError(f"oracle failed after precision escalation: {last}")


def _run_oracle(spec, N, nep):
    tower = build_tower(spec, N)
    F = tower.field
    p, e, b = F.p, F.e, spec.b
    pi_L = find_uniformizer(tower)
    mp = min_poly(tower, pi_L)
    breaks = ordinary_breaks(tower, pi_L)
    bstar = refined_break_direct(tower, pi_L=pi_L)
    forms = i1_from_minpoly(mp, p, e, b)
    out = {
        "precision": N,
        "breaks": sorted(set(breaks.values())),
        "i0": mp.i[0], "i1": mp.i[1], "i2": mp.i[2],
        "i1_eq": forms["full"],
        "i1_apj": forms["apj"][0],
        "b_star": bstar,
        "api_bound": api_bound_holds(mp, p, b),
        "minpoly_valuations": mp.valuations[1:],
    }
    if nep:
        count, fails = nep_check(tower, mp, pi_L)
        out["nep_checked"] = count
        out["nep_failures"] = len(fails)
    return out
