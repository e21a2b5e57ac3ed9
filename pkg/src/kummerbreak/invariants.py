"""Class-field-side invariants of a rank-2 Kummer extension L = K(R^{1/p}).

Given generators 1+rho_1, 1+rho_2 of R_0 the pipeline computes

* the norm group H = R^perp through the pairing functionals, and from it
  the invariant k and the index of inseparability i_1;
* theta, t (membership of (1+rho_1)^[theta] in R_0 U^s) and t' (the
  Z_{p^2}-module test on Lambda_p(R_0) + M^s), hence b_*.

Everything happens in finite quotients M^lo/M^hi with hi - lo <= e, where
digit coordinates are F_p-linear.  Scans are confined to ranges in which
Lambda_p acts linearly; below the floor the formulas for i_1 and b_* do
not depend on the exact value (see ``scan_floor``).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from itertools import product

from .artin_hasse import coords, ep_eval, lambda_p, pth_power_subgroup_image, scalar_matrix, trunc_pow
from .errors import SpecError
from .linalg import Subspace, kernel
from .rings import PadicElement
from .vostokov import context


@dataclass
class ExtensionSpec:
    field: object
    rho1: PadicElement
    rho2: PadicElement
    b: int
    j0: int
    label: str = ""

    @property
    def generators(self):
        return [self.rho1 + 1, self.rho2 + 1]

    def digits(self):
        F = self.field
        return ([[c, h] for c, h in F.digit_expansion(self.rho1, F.N)],
                [[c, h] for c, h in F.digit_expansion(self.rho2, F.N)])


def validate_spec(field, rho1, rho2, label: str = "") -> ExtensionSpec:
    p = field.p
    d = field.d
    v1, v2 = rho1.valuation(), rho2.valuation()
    if v1 is None or v2 is None:
        raise SpecError("rho must be nonzero")
    if v1 != v2:
        raise SpecError(f"unequal valuations {v1} != {v2}: not a single-break encoding")
    j0 = v1
    if not 1 <= j0 < d:
        raise SpecError(f"valuation {j0} outside [1, {d})")
    b = d - j0
    if b % p == 0:
        raise SpecError(f"p divides b = {b}")
    spec = ExtensionSpec(field, rho1, rho2, b, j0, label)
    th = theta_of(spec)
    if field.residue_field.in_prime_field(th):
        raise SpecError("theta lies in F_p: generators do not give a rank-2 single-break group")
    if j0 % p == 0:
        # leading digits of p-th powers could interfere; reject explicitly
        raise SpecError("p divides the level pe/(p-1) - b")
    return spec


def theta_of(spec: ExtensionSpec) -> int:
    """Residue code of rho_2/rho_1 (theta is its Teichmuller lift)."""
    F = spec.field.residue_field
    r1 = spec.rho1.divpi(spec.j0).residue()
    r2 = spec.rho2.divpi(spec.j0).residue()
    return F.div(r2, r1)


# -- the norm-group side ---------------------------------------------------

def scan_floor(field, b: int) -> int:
    """Lowest k for which the scan is carried out.

    For k >= floor(b/p) the map kappa -> E_p(kappa) is a homomorphism
    modulo U^{b+1} on M^{k+1}; for k <= max(floor(b/p), p(b-e)) the value
    of min{p^2 b - pk, p^2 e, p^2 b - b} does not depend on k.
    """
    return max(b // field.p, field.p * (b - field.e), 0)


def _basis_units(field, lo: int, hi: int):
    out = []
    for h in range(lo, hi):
        for basis_code in field.residue_field.basis():
            kappa = PadicElement(field.OK, field.OK.lift(basis_code)) * field.pi ** h
            out.append(ep_eval(kappa))
    return out


def pairing_functionals(spec: ExtensionSpec, lo: int, check: bool = True):
    """Rows <1+rho_g, E_p(kappa)> on digit coordinates of M^lo/M^{b+1}."""
    F = spec.field
    gens = spec.generators
    basis = _basis_units(F, lo, spec.b + 1)
    return context(F).matrix(gens, basis, check)


def norm_subgroup_levels(spec: ExtensionSpec, i: int, rows=None, lo=None) -> Subspace:
    """Lambda_p(H ∩ U^i) + M^{b+1} as a subspace of M^i/M^{b+1}."""
    F = spec.field
    b = spec.b
    if not 1 <= i <= b + 1:
        raise ValueError("level outside [1, b+1]")
    floor = max(scan_floor(F, b) + 1, b + 1 - F.e)
    if i < floor:
        raise ValueError(f"level {i} below the linear range (>= {floor})")
    n = F.f * (b + 1 - i)
    if n == 0:
        return Subspace(F.p, 0)
    if rows is None:
        lo = i
        rows = pairing_functionals(spec, i)
    off = F.f * (i - lo)
    return kernel([r[off:] for r in rows], n, F.p)


def zps_module_test(field, space: Subspace, lo: int, hi: int) -> bool:
    """Stability under multiplication by a generator of mu_{p^2-1}."""
    if space.n == 0:
        return True
    return space.stable_under(scalar_matrix(field, field.eta0_code, lo, hi))


def compute_k(spec: ExtensionSpec, rows=None):
    """Returns (k, floor, spaces) with floor <= k <= b."""
    F = spec.field
    b = spec.b
    floor = scan_floor(F, b)
    if not F.has_zp2:
        return b, floor, {}
    lo = floor + 1
    if rows is None:
        rows = pairing_functionals(spec, lo)
    spaces = {}
    k = b
    for kk in range(b - 1, floor - 1, -1):
        V = norm_subgroup_levels(spec, kk + 1, rows, lo)
        spaces[kk + 1] = V
        if zps_module_test(F, V, kk + 1, b + 1):
            k = kk
        else:
            break
    return k, floor, spaces


def i1_from_k(p: int, b: int, e: int, k: int) -> int:
    return min(p * p * b - p * k, p * p * e, p * p * b - b)


# -- the Kummer side --------------------------------------------------------

def s_limit(field, b: int) -> int:
    """Largest s for which Lambda_p(R_0) + M^s is computed (see the module notes)."""
    d = field.d
    j0 = d - b
    return min(d, field.p * j0, d - b // field.p)


@dataclass
class _R0Data:
    lams: list
    target: PadicElement
    images: dict = dc_field(default_factory=dict)


def _r0_data(spec: ExtensionSpec, theta_code: int) -> _R0Data:
    F = spec.field
    lift = F.teich_lifter()
    lams = [lambda_p(u, lift) for u in spec.generators]
    th = F.teichmuller(theta_code)
    target = lambda_p(trunc_pow(spec.rho1 + 1, th), lift)
    return _R0Data(lams, target)


def r0_space(spec: ExtensionSpec, s: int, data: _R0Data) -> Subspace:
    """Lambda_p(R_0) + M^s inside M^{j0}/M^s."""
    F = spec.field
    j0 = spec.j0
    img = pth_power_subgroup_image(F, j0, s)
    V = Subspace(F.p, F.f * (s - j0))
    for r in img.space.rows:
        V.add(r)
    for lam in data.lams:
        V.add(coords(lam, j0, s))
    return V


def compute_t_prime(spec: ExtensionSpec, theta_code=None, data=None):
    """t' = pe/(p-1) - s' with s' capped at ``s_limit``."""
    F = spec.field
    if not F.has_zp2:
        raise ValueError("mu_{p^2-1} not contained in K")
    if data is None:
        data = _r0_data(spec, theta_of(spec) if theta_code is None else theta_code)
    smax = s_limit(F, spec.b)
    s_prime = spec.j0
    for s in range(spec.j0 + 1, smax + 1):
        V = r0_space(spec, s, data)
        if zps_module_test(F, V, spec.j0, s):
            s_prime = s
        else:
            break
    return F.d - s_prime


def compute_t(spec: ExtensionSpec, theta_code=None, data=None):
    """t = pe/(p-1) - s, s the largest s (capped) with (1+rho_1)^[theta] in R_0 U^s."""
    F = spec.field
    if data is None:
        data = _r0_data(spec, theta_of(spec) if theta_code is None else theta_code)
    smax = s_limit(F, spec.b)
    s_best = spec.j0
    for s in range(spec.j0 + 1, smax + 1):
        V = r0_space(spec, s, data)
        if V.contains(coords(data.target, spec.j0, s)):
            s_best = s
        else:
            break
    return F.d - s_best


def bstar_from_t(p: int, b: int, e: int, t: int) -> int:
    if t < 0:
        raise ValueError("t must be nonnegative")
    return p * b - max(p * t - b, (p * p - 1) * b - p * p * e, 0)


def predicted_bstar(p: int, b: int, i1: int) -> int:
    return i1 - p * p * b + p * b + b


# -- report ---------------------------------------------------------------

HOLDS = "holds"
NOT_APPLICABLE = "not-applicable"
FAILED = "FAILED"


@dataclass
class InvariantReport:
    b: int
    j0: int
    theta: int
    k: int
    k_floor: int
    i1: int
    t: int
    t_prime: int | None
    b_star: int
    b_star_t: int
    degenerate: bool
    verdict: str
    lemma: dict
    rho1_digits: list
    rho2_digits: list
    label: str = ""
    oracle: dict | None = None
    notes: list = dc_field(default_factory=list)

    @property
    def main_theorem_holds(self) -> str:
        return self.verdict

    def to_record(self) -> dict:
        rec = {
            "schema": 1,
            "rho1_digits": self.rho1_digits,
            "rho2_digits": self.rho2_digits,
            "b": self.b,
            "theta": self.theta,
            "k": self.k,
            "i1": self.i1,
            "t_prime": self.t_prime,
            "b_star": self.b_star,
            "degenerate": self.degenerate,
            "verdict": self.verdict,
            "t": self.t,
            "k_floor": self.k_floor,
            "lemma": self.lemma,
        }
        if self.label:
            rec["label"] = self.label
        if self.notes:
            rec["notes"] = self.notes
        if self.oracle is not None:
            rec["oracle"] = self.oracle
        return rec


def lemma_conditions(spec: ExtensionSpec, theta_code: int, k: int, i1: int, spaces) -> dict:
    """Conditions (1), (3), (4) of the equivalence for this spec."""
    F = spec.field
    p, b = F.p, spec.b
    Fq = F.residue_field
    c1 = Fq.pow(theta_code, p * p - 1) == 1
    if F.has_zp2:
        Vb = spaces.get(b)
        if Vb is None:
            Vb = norm_subgroup_levels(spec, b)
        c3 = zps_module_test(F, Vb, b, b + 1)
    else:
        c3 = False
    c4 = i1 > p * p * b - p * b
    return {"theta_in_mu_p2_1": c1, "norm_level_b_zp2": c3, "i1_above_floor": c4,
            "agree": c1 == c3 == c4}


def verify_main_theorem(spec: ExtensionSpec, check: bool = True) -> InvariantReport:
    F = spec.field
    p, e, b = F.p, F.e, spec.b
    th = theta_of(spec)
    k, floor, spaces = compute_k(spec)
    i1 = i1_from_k(p, b, e, k)
    data = _r0_data(spec, th)
    t = compute_t(spec, th, data)
    t_prime = compute_t_prime(spec, th, data) if F.has_zp2 else None
    b_star_t = bstar_from_t(p, b, e, t)
    degenerate = i1 == p * p * b - p * b
    notes = []
    if degenerate or t_prime is None:
        b_star = b_star_t
        verdict = NOT_APPLICABLE
    else:
        b_star = bstar_from_t(p, b, e, t_prime)
        pred = predicted_bstar(p, b, i1)
        verdict = HOLDS if b_star == pred == b_star_t else FAILED
        if b_star != b_star_t:
            notes.append("t and t' give different b_*")
    if not p * p * b - p * b <= i1 <= p * p * b - b:
        verdict = FAILED
        notes.append("i1 outside [p^2 b - pb, p^2 b - b]")
    lemma = lemma_conditions(spec, th, k, i1, spaces)
    if not lemma["agree"]:
        verdict = FAILED
        notes.append("equivalence conditions disagree")
    d1, d2 = spec.digits()
    return InvariantReport(b, spec.j0, th, k, floor, i1, t, t_prime, b_star, b_star_t,
                           degenerate, verdict, lemma, d1, d2, spec.label, None, notes)


# -- enumeration ----------------------------------------------------------

def level_d_class(field) -> int:
    """Residue code c_d spanning U^d modulo p-th powers and U^{d+1}.

    (1 + c pi^m)^p has level-d digit c^p + w c, with m = e/(p-1) and
    w the residue of p pi^m / pi^d; c_d is the least code outside that image.
    """
    F = field.residue_field
    p, d = field.p, field.d
    m = field.e // (field.p - 1)
    x = field.from_int(p) * field.pi ** m
    w = x.divpi(d).residue()
    image = {F.add(F.pow(c, p), F.mul(w, c)) for c in F.elements()}
    for c in range(1, field.q):
        if c not in image:
            return c
    raise AssertionError("Artin-Schreier-type map is surjective")


def _tail_levels(field, j0: int):
    return [h for h in range(j0 + 1, field.d) if h % field.p]


def _element_from_digits(field, digits) -> PadicElement:
    return field.from_digits([(c, h) for c, h in digits if c])


def spec_from_digits(field, digits1, digits2, label: str = "") -> ExtensionSpec:
    """Spec from Teichmuller digit lists [[code, level], ...] of rho_1 and rho_2."""
    rhos = []
    for digs in (digits1, digits2):
        try:
            pairs = [(int(c), int(h)) for c, h in digs]
        except (TypeError, ValueError):
            raise SpecError("digits must be [code, level] pairs") from None
        for c, h in pairs:
            if not 0 <= c < field.q or h < 1:
                raise SpecError(f"bad digit {c} at level {h}")
        rhos.append(_element_from_digits(field, pairs))
    return validate_spec(field, rhos[0], rhos[1], label)


def _leading_codes(field):
    F = field.residue_field
    basis = F.basis()
    if len(basis) < 2:
        raise SpecError("rank-2 single-break extensions need f >= 2")
    return basis[0], basis[1]


def enumerate_specs(field, b: int, exhaustive: bool = True, samples: int | None = None,
                    seed: int | None = None):
    """Yield ExtensionSpec objects for break b.

    Exhaustive mode walks canonical generators: leading digits 1 and x at
    level j0, free digits at the levels j0 < h < d prime to p, and a
    multiple of ``level_d_class`` at level d.  Sampling draws random digits
    at every level in (j0, d].
    """
    p, d = field.p, field.d
    if b % p == 0 or not 1 <= b < d:
        return
    j0 = d - b
    if j0 % p == 0:
        return
    lead1, lead2 = _leading_codes(field)
    q = field.q
    if exhaustive:
        tails = _tail_levels(field, j0)
        cd = level_d_class(field)
        F = field.residue_field
        choices = [range(q)] * len(tails) + [range(p)]
        gen_tails = []
        for combo in product(*choices):
            digs = list(zip(combo[:-1], tails))
            lam = combo[-1]
            if lam:
                digs.append((F.scalar(lam, cd), d))
            gen_tails.append(digs)
        idx = 0
        for t1 in gen_tails:
            r1 = _element_from_digits(field, [(lead1, j0)] + t1)
            for t2 in gen_tails:
                r2 = _element_from_digits(field, [(lead2, j0)] + t2)
                idx += 1
                yield validate_spec(field, r1, r2, f"b{b}-{idx}")
        return
    rnd = random.Random(seed)
    n = samples if samples is not None else 200
    F = field.residue_field
    made = 0
    while made < n:
        # random leading pair spanning a 2-dim F_p space
        a = rnd.randrange(1, q)
        c = rnd.randrange(1, q)
        if F.in_prime_field(F.div(c, a)):
            continue
        t1 = [(rnd.randrange(q), h) for h in range(j0 + 1, d + 1)]
        t2 = [(rnd.randrange(q), h) for h in range(j0 + 1, d + 1)]
        r1 = _element_from_digits(field, [(a, j0)] + t1)
        r2 = _element_from_digits(field, [(c, j0)] + t2)
        made += 1
        yield validate_spec(field, r1, r2, f"b{b}-s{made}")
