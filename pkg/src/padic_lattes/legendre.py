"""The Legendre Lattes family f_t(z) = (z^2 - t)^2 / (4 z (z - 1)(z - t)).

Iterates of a seed are tracked as a coprime pair in t: from [A : B] the
next pair is [(A^2 - t B^2)^2 : 4 A B (A - B)(A - t B)], after which the
gcd is divided out.  For t outside {0, 1} the homogeneous map has no
indeterminacy, so cancellation only ever removes powers of t and t - 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .errors import DomainError
from .exact.mpoly import MPoly, ratfun_equal, substitute_ratfun
from .exact.orbit import Certificate, OrbitRecord, orbit
from .exact.poly import UPoly, poly_gcd
from .exact.ratmap import ProjPoint, RatMap, proj_eval
from .padic import INF, rational_roots, root_valuations, val_of
from .reports import CheckRecord, record

FAMILY = "legendre"
P = 2


def legendre_map(lam) -> RatMap:
    lam = Fraction(lam)
    if lam in (0, 1):
        raise DomainError("lambda must lie outside {0, 1}")
    z = UPoly.gen("z")
    return RatMap((z * z - lam) ** 2, 4 * z * (z - 1) * (z - lam))


@dataclass(frozen=True)
class LegendreTorsionPair:
    a: Fraction
    n: int
    A: UPoly
    B: UPoly
    cancelled: UPoly  # A * cancelled and B * cancelled give the uncancelled iterate

    def to_dict(self) -> dict:
        return {"a": str(self.a), "n": self.n, "A": str(self.A), "B": str(self.B),
                "cancelled": str(self.cancelled)}


def legendre_step(A: UPoly, B: UPoly) -> tuple[UPoly, UPoly]:
    t = UPoly.gen()
    return (A * A - t * B * B) ** 2, 4 * A * B * (A - B) * (A - t * B)


@lru_cache(maxsize=None)
def _lpair(a: Fraction, n: int) -> LegendreTorsionPair:
    if n == 0:
        one = UPoly.const(1)
        return LegendreTorsionPair(a, 0, UPoly.const(a), one, one)
    prev = _lpair(a, n - 1)
    A, B = legendre_step(prev.A, prev.B)
    g = poly_gcd(A, B)
    if g.degree > 0:
        A, B = A // g, B // g
    if poly_gcd(A, B).degree != 0:
        raise AssertionError("cancellation left a common factor")
    return LegendreTorsionPair(a, n, A, B, prev.cancelled**4 * g)


def legendre_torsion_pair(a, n: int) -> LegendreTorsionPair:
    a = Fraction(a)
    if a in (0, 1):
        raise DomainError("seeds 0 and 1 are persistently preperiodic")
    if n < 0:
        raise DomainError("level must be >= 0")
    return _lpair(a, n)


def raw_iterate(a, n: int) -> tuple[UPoly, UPoly]:
    """The iterate pair without any cancellation."""
    A, B = UPoly.const(Fraction(a)), UPoly.const(1)
    for _ in range(n):
        A, B = legendre_step(A, B)
    return A, B


def legendre_periodicity_poly(a, n: int, m: int) -> UPoly:
    if not n > m >= 0:
        raise DomainError("need n > m >= 0")
    pn, pm = legendre_torsion_pair(a, n), legendre_torsion_pair(a, m)
    return pn.A * pm.B - pm.A * pn.B


def strip_roots(f: UPoly, roots) -> UPoly:
    """Divide out every power of (t - r) for r in ``roots``."""
    for r in roots:
        lin = UPoly([-Fraction(r), 1], f.var)
        while f.degree >= 1 and f(Fraction(r)) == 0:
            f = f // lin
    return f


def torsion_polys(a, n: int, per_cap: int = 3) -> list[tuple[str, UPoly]]:
    """Hits-infinity (B_k), hits-zero (A_k) and periodicity polynomials up to level n."""
    out = []
    for k in range(1, n + 1):
        tp = legendre_torsion_pair(a, k)
        out.append((f"B_{k}", tp.B))
        out.append((f"A_{k}", tp.A))
    for k in range(1, min(n, per_cap) + 1):
        for m in range(k):
            out.append((f"P_{k},{m}", legendre_periodicity_poly(a, k, m)))
    return out


@dataclass(frozen=True)
class ClaimReport:
    seed: Fraction
    n: int
    expected_valuation: Fraction
    rows: tuple  # (name, degree after stripping, spectrum dict)
    rational_roots: tuple

    @property
    def passed(self) -> bool:
        return all(set(spec) <= {self.expected_valuation} for _, _, spec in self.rows)

    def records(self) -> list[CheckRecord]:
        out = []
        for name, deg, spec in self.rows:
            out.append(record(
                FAMILY, "claim-valuations",
                {"seed": self.seed, "n": self.n, "poly": name},
                [[self.expected_valuation, deg]] if deg else [],
                [[v, m] for v, m in sorted(spec.items())],
            ))
        return out


def _claim(seed: Fraction, n: int, expected: Fraction, excluded) -> ClaimReport:
    if n < 1:
        raise DomainError("level must be >= 1")
    rows = []
    roots = set()
    for name, f in torsion_polys(seed, n):
        f = strip_roots(f, excluded)
        if f.degree < 1:
            rows.append((name, 0, {}))
            continue
        rows.append((name, f.degree, root_valuations(f, P).as_dict()))
        if f.degree <= 16:
            roots.update(r for r, _ in rational_roots(f))
    return ClaimReport(seed, n, expected, tuple(rows), tuple(sorted(roots)))


def t2_claim_verify(n: int) -> ClaimReport:
    """Every parameter in T(2) other than 2 (and the excluded 0, 1) has v2 = 2."""
    return _claim(Fraction(2), n, Fraction(2), (0, 1, 2))


def half_claim_verify(n: int) -> ClaimReport:
    """Mirror for seed 1/2 through the reciprocal symmetry: v2 = -2."""
    return _claim(Fraction(1, 2), n, Fraction(-2), (0, 1, Fraction(1, 2)))


# ---------------------------------------------------------------------------
# escape certificates


def stoll_escape_check(alpha, lam) -> Optional[Certificate]:
    """Certificate that alpha is not preperiodic for f_lam, from 2-adic growth."""
    alpha, lam = Fraction(alpha), Fraction(lam)
    if lam in (0, 1):
        raise DomainError("lambda must lie outside {0, 1}")
    if alpha in (0, 1, lam):
        raise DomainError("alpha must lie outside {0, 1, lambda}")
    va, vl = val_of(alpha, P), val_of(lam, P)
    if va >= 0 and vl < 0:
        return Certificate("lambda-large", f"|alpha| <= 1, v2(lambda) = {vl}")
    if va >= 0 and vl >= 0:
        vd = val_of(alpha * alpha - lam, P)
        if vd is not INF and vd <= 0:
            return Certificate("alpha2-minus-lambda", f"v2(alpha^2 - lambda) = {vd}")
        return None
    if va < 0 and vl >= 0:
        return Certificate("alpha-large", f"v2(alpha) = {va}, |lambda| <= 1")
    return None


def legendre_escape_predicate(lam):
    lam = Fraction(lam)

    def predicate(pt) -> Optional[Certificate]:
        pt = ProjPoint.coerce(pt)
        if pt.is_infinity or pt.x in (0, 1, lam):
            return None
        return stoll_escape_check(pt.x, lam)

    return predicate


def legendre_orbit(lam, seed, max_steps: int = 12) -> OrbitRecord:
    return orbit(legendre_map(lam), seed, max_steps, escape=legendre_escape_predicate(lam))


def hits_infinity_within(lam, seed, n: int) -> bool:
    f = legendre_map(lam)
    pt = ProjPoint.coerce(seed)
    for _ in range(n + 1):
        if pt.is_infinity:
            return True
        pt = proj_eval(f, pt)
    return False


def two_empty_grid() -> list[CheckRecord]:
    """For v2(lambda) = 2 and v2(alpha) >= 2, alpha != lambda, f_lam(alpha)
    falls in the growth regime, so alpha is not preperiodic."""
    alphas = [Fraction(x) for x in (4, -4, 8, 12, -20, 16)] + [Fraction(4, 3), Fraction(-12, 5), Fraction(32, 7)]
    lams = [Fraction(x) for x in (4, -4, 12, 20)] + [Fraction(4, 3), Fraction(-4, 7), Fraction(28, 9)]
    out = []
    for lam in lams:
        f = legendre_map(lam)
        for al in alphas:
            if al == lam:
                continue
            image = proj_eval(f, al)
            cert = None if image.is_infinity else stoll_escape_check(image.x, lam)
            out.append(record(FAMILY, "two-empty-escape", {"alpha": al, "lambda": lam},
                              True, cert is not None))
    return out


# ---------------------------------------------------------------------------
# reciprocal identity


_TX = ("t", "x")


def _iterate_mpoly(n: int) -> tuple[MPoly, MPoly]:
    t, x = MPoly.var("t", _TX), MPoly.var("x", _TX)
    N, D = x, MPoly.const(1, _TX)
    for _ in range(n):
        N, D = (N * N - t * D * D) ** 2, 4 * N * D * (N - D) * (N - t * D)
    return N, D


def reciprocal_identity_check(n: int) -> bool:
    """f^n_{1/t}(1/x) = (1/t) f^n_t(x) as rational functions of (t, x)."""
    if n not in (1, 2, 3):
        raise DomainError("n must be 1, 2 or 3")
    N, D = _iterate_mpoly(n)
    t, x = MPoly.var("t", _TX), MPoly.var("x", _TX)
    one = MPoly.const(1, _TX)
    lhs = substitute_ratfun(N, D, {"t": (one, t), "x": (one, x)})
    return ratfun_equal(lhs, (N, t * D))


def reciprocal_spot_check() -> tuple[Fraction, Fraction]:
    """f_{1/4}(1/2) and (1/4) f_4(2)."""
    left = legendre_map(Fraction(1, 4))(Fraction(1, 2))
    right = Fraction(1, 4) * legendre_map(4)(2)
    return left, right


# ---------------------------------------------------------------------------
# consequences checked on computed roots


def stoll_root_check(seed, n: int = 3) -> list[CheckRecord]:
    """For |seed| <= 1, every rational torsion parameter other than seed has
    |seed^2 - lambda| < 1 and reaches infinity or repeats under the orbit."""
    seed = Fraction(seed)
    out = []
    for name, f in torsion_polys(seed, n):
        f = strip_roots(f, (0, 1))
        if f.degree < 1:
            continue
        for lam, _ in rational_roots(f):
            if lam == seed:
                continue
            v = val_of(seed * seed - lam, P)
            out.append(record(FAMILY, "stoll-roots", {"seed": seed, "poly": name, "lambda": lam},
                              True, v is INF or v > 0))
    return out
