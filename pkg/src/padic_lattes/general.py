"""The family f_t(z) = (z^d + t) / (p z) for d >= 2 and a prime p.

Iterates of a seed are tracked as A_n / B_n with A_0 = a, B_0 = 1 and
A_{n+1} = A_n^d + t B_n^d, B_{n+1} = p A_n B_n^(d-1).  Since f(0) = inf and
inf is fixed, B_n only vanishes where some earlier A_k does, so the
torsion polynomials are the A_k and the periodicity differences.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Optional

from .errors import DomainError
from .exact.mpoly import MPoly, ratfun_equal
from .exact.numberfield import NFElem
from .exact.orbit import Certificate, OrbitRecord, orbit
from .exact.poly import UPoly, poly_gcd, taylor_shift
from .exact.ratmap import INFINITY, ProjPoint, RatMap, mobius, mobius_conjugate, multiplier_at
from .padic import INF, check_prime, rational_roots, root_valuations, val_of
from .reports import CheckRecord, record

FAMILY = "general"


@dataclass(frozen=True)
class GenFamilyParams:
    d: int
    p: int

    def __post_init__(self):
        if not isinstance(self.d, int) or self.d < 2:
            raise DomainError("d must be an integer >= 2")
        check_prime(self.p)


def gen_map(params: GenFamilyParams, lam) -> RatMap:
    lam = Fraction(lam)
    return RatMap(UPoly.monomial(1, params.d, "z") + lam, UPoly.monomial(params.p, 1, "z"))


@dataclass(frozen=True)
class GenTorsionPair:
    d: int
    p: int
    a: Fraction
    n: int
    A: UPoly
    B: UPoly
    cancellations: tuple  # (level, removed factor) for every nontrivial gcd


@lru_cache(maxsize=None)
def _gpair(d: int, p: int, a: Fraction, n: int) -> GenTorsionPair:
    if n == 0:
        return GenTorsionPair(d, p, a, 0, UPoly.const(a), UPoly.const(1), ())
    prev = _gpair(d, p, a, n - 1)
    t = UPoly.gen()
    Bd1 = prev.B ** (d - 1)
    A = prev.A**d + t * Bd1 * prev.B
    B = p * prev.A * Bd1
    log = prev.cancellations
    g = poly_gcd(A, B)
    if g.degree > 0:
        A, B = A // g, B // g
        log = log + ((n, g),)
    return GenTorsionPair(d, p, a, n, A, B, log)


def gen_torsion_pair(params: GenFamilyParams, a, n: int) -> GenTorsionPair:
    a = Fraction(a)
    if a == 0:
        raise DomainError("seed 0 is persistently preperiodic")
    if n < 0:
        raise DomainError("level must be >= 0")
    return _gpair(params.d, params.p, a, n)


def gen_periodicity_poly(params: GenFamilyParams, a, n: int, m: int) -> UPoly:
    if not n > m >= 0:
        raise DomainError("need n > m >= 0")
    pn, pm = gen_torsion_pair(params, a, n), gen_torsion_pair(params, a, m)
    return pn.A * pm.B - pm.A * pn.B


def gen_torsion_polys(params: GenFamilyParams, a, n: int, per_cap: int = 3) -> list[tuple[str, UPoly]]:
    out = []
    for k in range(1, n + 1):
        out.append((f"A_{k}", gen_torsion_pair(params, a, k).A))
    for k in range(1, min(n, per_cap) + 1):
        for m in range(k):
            out.append((f"P_{k},{m}", gen_periodicity_poly(params, a, k, m)))
    return out


def _extra(params: GenFamilyParams) -> dict:
    return {"d": params.d, "p": params.p}


# ---------------------------------------------------------------------------
# shifted spectra


@dataclass(frozen=True)
class ShiftedReport:
    params: GenFamilyParams
    a: Fraction
    n: int
    rows: tuple  # (name, spectrum dict in s, multiplicity of s = 0)

    @property
    def passed(self) -> bool:
        return all(all(v >= 1 for v in spec) for _, spec, _ in self.rows)

    def records(self) -> list[CheckRecord]:
        out = []
        for name, spec, zero in self.rows:
            actual = {"spectrum": [[v, m] for v, m in sorted(spec.items())], "ord0": zero}
            out.append(record(
                FAMILY, "shifted-spectrum", {"a": self.a, "n": self.n, "poly": name},
                "all root valuations >= 1", actual, all(v >= 1 for v in spec),
                **_extra(self.params),
            ))
        return out


def shifted_spectrum_check(params: GenFamilyParams, a, n: int) -> ShiftedReport:
    """Substitute t = s - a^d and check that every root has v_p(s) >= 1."""
    a = Fraction(a)
    if a == 0:
        raise DomainError("seed must be nonzero")
    if val_of(a, params.p) < 0:
        raise DomainError("needs v_p(a) >= 0")
    if n < 1:
        raise DomainError("level must be >= 1")
    shift = -(a**params.d)
    rows = []
    for name, f in gen_torsion_polys(params, a, n):
        q = taylor_shift(f, shift).with_var("s")
        spec = root_valuations(q, params.p)
        rows.append((name, spec.as_dict(), spec.zero_root_multiplicity))
    return ShiftedReport(params, a, n, tuple(rows))


# ---------------------------------------------------------------------------
# escape certificates


def gen_escape_check(params: GenFamilyParams, alpha, lam) -> Optional[Certificate]:
    alpha, lam = Fraction(alpha), Fraction(lam)
    if alpha == 0:
        raise DomainError("alpha must be nonzero")
    p = params.p
    va, vl = val_of(alpha, p), val_of(lam, p)
    if va >= 0 and vl < 0:
        return Certificate("lambda-large", f"|alpha|_p <= 1, v_p(lambda) = {vl}")
    if va >= 0:
        vs = val_of(alpha**params.d + lam, p)
        if vs is not INF and vs <= 0:
            return Certificate("shift-large", f"v_p(alpha^d + lambda) = {vs}")
        return None
    if vl >= 0:
        return Certificate("alpha-large", f"v_p(alpha) = {va}, |lambda|_p <= 1")
    return None


def gen_escape_predicate(params: GenFamilyParams, lam):
    def predicate(pt) -> Optional[Certificate]:
        pt = ProjPoint.coerce(pt)
        if pt.is_infinity or pt.x == 0:
            return None
        return gen_escape_check(params, pt.x, lam)

    return predicate


def gen_orbit(params: GenFamilyParams, lam, seed, max_steps: int = 12) -> OrbitRecord:
    return orbit(gen_map(params, lam), seed, max_steps, stop_points=(INFINITY,),
                 escape=gen_escape_predicate(params, lam))


# ---------------------------------------------------------------------------
# reduction and disjointness


@dataclass(frozen=True)
class ResiduePoint:
    p: int
    value: Optional[int]  # None is infinity

    @property
    def is_infinity(self) -> bool:
        return self.value is None

    def __str__(self):
        return "inf" if self.value is None else str(self.value)


def rho_reduce(x, p: int) -> ResiduePoint:
    check_prime(p)
    if isinstance(x, ProjPoint):
        if x.is_infinity:
            return ResiduePoint(p, None)
        x = x.x
    if isinstance(x, str):
        pt = ProjPoint.coerce(x)
        if pt.is_infinity:
            return ResiduePoint(p, None)
        x = pt.x
    x = Fraction(x)
    if val_of(x, p) < 0:
        return ResiduePoint(p, None)
    return ResiduePoint(p, x.numerator * pow(x.denominator, -1, p) % p)


def lambda_residue_target(params: GenFamilyParams, a) -> ResiduePoint:
    """Residue every parameter in T(a) must reduce to: -rho(a^d), or inf when |a|_p > 1."""
    r = rho_reduce(Fraction(a) ** params.d, params.p)
    if r.is_infinity:
        return r
    return ResiduePoint(params.p, (-r.value) % params.p)


@dataclass(frozen=True)
class DisjointnessReport:
    params: GenFamilyParams
    a: Fraction
    b: Fraction
    n: Optional[int]
    refused: bool
    reason: str
    gcds: dict
    targets: tuple

    @property
    def passed(self) -> bool:
        return (not self.refused) and all(g.degree == 0 for g in self.gcds.values()) \
            and self.targets[0] != self.targets[1]

    def to_dict(self) -> dict:
        return {
            "d": self.params.d, "p": self.params.p, "a": str(self.a), "b": str(self.b),
            "n": self.n, "refused": self.refused, "reason": self.reason,
            "gcds": {k: str(v) for k, v in self.gcds.items()},
            "lambda_residues": [str(t) for t in self.targets],
        }


def disjointness_check(params: GenFamilyParams, a, b, n: int) -> DisjointnessReport:
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise DomainError("seeds must be nonzero")
    ra = rho_reduce(a**params.d, params.p)
    rb = rho_reduce(b**params.d, params.p)
    targets = (lambda_residue_target(params, a), lambda_residue_target(params, b))
    if ra == rb:
        return DisjointnessReport(params, a, b, n, True,
                                  f"residue equality: rho(a^d) = rho(b^d) = {ra}", {}, targets)
    pa, pb = gen_torsion_pair(params, a, n), gen_torsion_pair(params, b, n)
    gcds = {
        "AA": poly_gcd(pa.A, pb.A),
        "BB": poly_gcd(pa.B, pb.B),
        "AB": poly_gcd(pa.A, pb.B),
        "BA": poly_gcd(pa.B, pb.A),
    }
    return DisjointnessReport(params, a, b, n, False, f"rho(a^d) = {ra} != rho(b^d) = {rb}", gcds, targets)


# ---------------------------------------------------------------------------
# conjugations and the d = 2 fixed-point multiplier


def conjugation_examples() -> list[CheckRecord]:
    out = []
    g = RatMap.from_coeffs([1, 0, 1], [0, 2])
    conj = mobius_conjugate(g, mobius(2, -1, 0, 1))
    target = RatMap.from_coeffs([0, 0, 1], [-1, 2])
    out.append(record(FAMILY, "conjugation-L", {"d": 2, "p": 2}, str(target), str(conj)))
    ident = mobius_conjugate(g, mobius(1, 0, 0, 1))
    out.append(record(FAMILY, "conjugation-identity", {"d": 2, "p": 2}, str(g), str(ident)))
    cz = ("c", "z")
    c, z = MPoly.var("c", cz), MPoly.var("z", cz)
    for p in (2, 3, 5, 7):
        lhs = ((c * z) ** 2 + c**2, p * c * z)
        rhs = (c * (z**2 + 1), p * z)
        out.append(record(FAMILY, "conjugation-M", {"d": 2, "p": p}, True, ratfun_equal(lhs, rhs)))
    return out


def fixed_point_multiplier(p: int, lam) -> Fraction:
    """Multiplier of (z^2 + lam)/(p z) at a root of z^2 = lam/(p - 1)."""
    check_prime(p)
    lam = Fraction(lam)
    if p == 2 or lam == 0:
        raise DomainError("need p odd and lambda nonzero")
    f = gen_map(GenFamilyParams(2, p), lam)
    r = lam / (p - 1)
    N = r.numerator * r.denominator
    s = _isqrt_exact(N)
    if s is not None:
        return multiplier_at(f, Fraction(s, r.denominator))
    x = NFElem.generator(UPoly([-N, 0, 1], "x"))
    m = multiplier_at(f, x / r.denominator)
    return m.rational_value()


def _isqrt_exact(n: int) -> Optional[int]:
    if n < 0:
        return None
    s = isqrt(n)
    return s if s * s == n else None
