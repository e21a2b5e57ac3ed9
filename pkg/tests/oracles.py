"""Independent reference computations used by several test modules."""

from itertools import product

from kummerbreak.artin_hasse import binomials, coords, lambda_p
from kummerbreak.linalg import Subspace
from kummerbreak.rings import PadicElement


def log1p(field, x, terms=40):
    """log(1 + x) in K by the defining series (x in the maximal ideal)."""
    R = field.OK
    p = field.p
    acc = PadicElement(R, R.zero())
    xn = field.one()
    for n in range(1, terms):
        xn = xn * x
        m, v = n, 0
        while m % p == 0:
            m //= p
            v += 1
        t = xn * pow(m, -1, R.mod)
        if v:
            t = t / field.from_int(p ** v)
        acc = acc + (t if n % 2 else -t)
    return acc


def trace_qp(field, x) -> int:
    """Tr_{K/Q_p}(x) modulo p^M, as the trace of multiplication by x on a Z_p-basis."""
    R = field.OK
    s = 0
    for i in range(R.dim):
        b = [0] * R.dim
        b[i] = 1
        s += (x * PadicElement(R, b)).data[i]
    return s % R.mod


def artin_hasse_zeta_pairing(field, alpha) -> int:
    """Exponent of <zeta_p, alpha> by the classical formula Tr(log alpha)/p mod p."""
    t = trace_qp(field, log1p(field, alpha - 1))
    assert t % field.p == 0
    return (t // field.p) % field.p


def trunc_series_pow(coeffs, alpha, p, one, zero):
    """sum_{n<p} C(alpha, n) (E - 1)^n modulo X^p, coefficients as PadicElements."""
    x = [zero] + coeffs[1:]
    acc = [zero] * p
    xn = [one] + [zero] * (p - 1)
    for c in binomials(alpha, p, one.ring):
        acc = [s + c * t for s, t in zip(acc, xn)]
        xn = [sum((xn[j] * x[m - j] for j in range(m + 1)), zero) for m in range(p)]
    return acc


def subgroup_lambda_coords(field, gens, lo, hi):
    """Lambda_p coordinates of every element of <gens> modulo U^hi."""
    p = field.p
    out = set()
    for exps in product(range(p), repeat=len(gens)):
        u = field.one()
        for g, n in zip(gens, exps):
            u = u * g ** n
        out.add(tuple(coords(lambda_p(u), lo, hi)))
    return out


def span_elements(space: Subspace):
    p, n = space.p, space.n
    out = set()
    for cs in product(range(p), repeat=space.dim):
        v = [0] * n
        for c, row in zip(cs, space.rows):
            v = [(a + c * b) % p for a, b in zip(v, row)]
        out.add(tuple(v))
    return out
