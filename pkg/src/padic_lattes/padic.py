"""p-adic valuations, Newton polygons and root-valuation spectra.

Valuations are normalized by v_p(p) = 1 and kept as exact rationals; the
valuation of zero is :data:`INF`.  A Newton polygon segment of slope ``s``
and horizontal length ``l`` accounts for ``l`` roots of valuation ``-s``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional

import sympy

from .errors import DomainError
from .exact.poly import UPoly, integer_form


class _Infinity:
    """The valuation of 0; larger than every rational."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    __str__ = lambda self: "inf"  # noqa: E731

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("padic-inf")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __add__(self, other):
        return self

    __radd__ = __add__


INF = _Infinity()


def check_prime(p: int) -> int:
    if not isinstance(p, int) or isinstance(p, bool) or not sympy.isprime(p):
        raise DomainError(f"{p!r} is not a prime")
    return p


def _vint(n: int, p: int) -> int:
    n = abs(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def val_of(x, p: int):
    """Exact p-adic valuation of a rational; ``INF`` for zero."""
    check_prime(p)
    x = Fraction(x)
    if x == 0:
        return INF
    return Fraction(_vint(x.numerator, p) - _vint(x.denominator, p))


def abs_p(x, p: int) -> Fraction:
    """|x|_p = p^(-v_p(x)) as an exact rational."""
    v = val_of(x, p)
    if v is INF:
        return Fraction(0)
    return Fraction(p) ** (-int(v))


def frac_str(x) -> str:
    return "inf" if x is INF else str(Fraction(x))


@dataclass(frozen=True)
class NewtonPolygon:
    prime: int
    points: tuple
    vertices: tuple
    ord0: int

    def segments(self) -> list[tuple]:
        """``(start, end, slope)`` for consecutive vertices."""
        out = []
        for (x0, y0), (x1, y1) in zip(self.vertices, self.vertices[1:]):
            out.append(((x0, y0), (x1, y1), Fraction(y1 - y0, x1 - x0)))
        return out

    @property
    def slopes(self) -> list[Fraction]:
        return [s for _, _, s in self.segments()]

    def to_dict(self) -> dict:
        return {
            "prime": self.prime,
            "vertices": [[i, frac_str(v)] for i, v in self.vertices],
            "slopes": [frac_str(s) for s in self.slopes],
            "ord0": self.ord0,
        }


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def newton_polygon(f: UPoly, p: int) -> NewtonPolygon:
    """Lower convex hull of ``(i, v_p(a_i))`` over the nonzero coefficients."""
    check_prime(p)
    if f.is_zero():
        raise DomainError("the zero polynomial has no Newton polygon")
    pts = tuple((i, val_of(c, p)) for i, c in enumerate(f.coeffs) if c)
    hull: list = []
    for pt in pts:
        # drop points on or above the chord so slopes strictly increase
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], pt) <= 0:
            hull.pop()
        hull.append(pt)
    return NewtonPolygon(p, pts, tuple(hull), pts[0][0])


@dataclass(frozen=True)
class RootValuationSpectrum:
    prime: int
    entries: tuple  # ((valuation, multiplicity), ...) by increasing valuation
    zero_root_multiplicity: int = 0

    @property
    def degree(self) -> int:
        return sum(m for _, m in self.entries) + self.zero_root_multiplicity

    def as_dict(self) -> dict:
        return {v: m for v, m in self.entries}

    def to_dict(self) -> dict:
        return {
            "prime": self.prime,
            "spectrum": [
                {"valuation": frac_str(v), "multiplicity": m} for v, m in self.entries
            ],
            "ord0": self.zero_root_multiplicity,
        }


def spectrum_of(np_: NewtonPolygon) -> RootValuationSpectrum:
    acc: dict = {}
    for (x0, _), (x1, _), slope in np_.segments():
        acc[-slope] = acc.get(-slope, 0) + (x1 - x0)
    entries = tuple(sorted(acc.items()))
    return RootValuationSpectrum(np_.prime, entries, np_.ord0)


def root_valuations(f: UPoly, p: int) -> RootValuationSpectrum:
    """Multiset of p-adic valuations of the roots of ``f`` (root 0 counted apart)."""
    spec = spectrum_of(newton_polygon(f, p))
    if spec.degree != f.degree:
        raise AssertionError("spectrum multiplicities do not add up to the degree")
    return spec


def newton_report(f: UPoly, p: int) -> dict:
    np_ = newton_polygon(f, p)
    spec = spectrum_of(np_)
    out = np_.to_dict()
    out["spectrum"] = spec.to_dict()["spectrum"]
    return out


# ---------------------------------------------------------------------------
# rational roots


def _prime_support(n: int) -> list[int]:
    return sorted(sympy.factorint(abs(n)))


def rational_roots(f: UPoly) -> list[tuple[Fraction, int]]:
    """Rational roots with multiplicity, in increasing order.

    Candidates come from the rational root theorem, pruned prime by prime:
    a root's valuation at ``q`` must be one of the integral root valuations
    of the q-adic Newton polygon (and 0 at primes dividing neither end
    coefficient).  Each candidate is confirmed by exact division.
    """
    if f.is_zero():
        raise DomainError("the zero polynomial has every rational root")
    out = []
    if f.ord0 > 0:
        out.append((Fraction(0), f.ord0))
        f = f.shift_out_root_zero()
    if f.degree < 1:
        return out
    ints, _ = integer_form(f)
    g = 0
    for c in ints:
        g = gcd(g, c)
    ints = [c // g for c in ints]
    primes = sorted(set(_prime_support(ints[0])) | set(_prime_support(ints[-1])))
    fz = UPoly(ints, f.var)
    options = []
    for q in primes:
        spec = spectrum_of(newton_polygon(fz, q))
        vals = [v for v, _ in spec.entries if v.denominator == 1]
        if not vals:
            return sorted(out)
        options.append([(q, int(v)) for v in vals])
    candidates = [Fraction(1)]
    for opts in options:
        candidates = [c * Fraction(q) ** v for c in candidates for q, v in opts]
    work = fz
    for mag in sorted(candidates):
        for r in (mag, -mag):
            mult = 0
            while work.degree >= 1 and work(r) == 0:
                work = work // UPoly([-r, 1], f.var)
                mult += 1
            if mult:
                out.append((r, mult))
    return sorted(out)


# ---------------------------------------------------------------------------
# the set X of admissible absolute-value ratios (as base-2 exponents)

X_FAMILIES = (
    "1",
    "2^(1/4^r)",
    "2^(1/(3*4^r))",
    "2^((1/3)(1/4^r-1/4^s))",
    "2^(2/(3*4^r))",
    "2^((2/3)(1/4^r-1/4^s))",
    "4^(1/(3*4^r))*2^(1/(3*4^s))",
)


def x_exponent(family: str, r: int = 0, s: int = 0) -> Fraction:
    """Base-2 exponent of the element of X indexed by ``family`` and ``(r, s)``."""
    a, b = Fraction(1, 4**r), Fraction(1, 4**s)
    table = {
        "1": Fraction(0),
        "2^(1/4^r)": a,
        "2^(1/(3*4^r))": a / 3,
        "2^((1/3)(1/4^r-1/4^s))": (a - b) / 3,
        "2^(2/(3*4^r))": 2 * a / 3,
        "2^((2/3)(1/4^r-1/4^s))": 2 * (a - b) / 3,
        "4^(1/(3*4^r))*2^(1/(3*4^s))": (2 * a + b) / 3,
    }
    return table[family]


TWO_PARAMETER = {X_FAMILIES[3], X_FAMILIES[5], X_FAMILIES[6]}


@dataclass(frozen=True)
class XWitness:
    family: str
    r: Optional[int] = None
    s: Optional[int] = None


@dataclass(frozen=True)
class XMembership:
    ratio_log: Fraction
    member: bool
    witness: Optional[XWitness]
    search_bound: int


def x_search_bound(ratio_log: Fraction) -> int:
    """Bound on r, s past which no X exponent can equal ``ratio_log``.

    For max(r, s) >= 1 every X exponent has a reduced denominator whose
    2-adic valuation is at least 2*max(r, s) - 1, so a denominator with
    2-adic valuation k rules out max(r, s) > (k + 1) / 2.
    """
    k = _vint(Fraction(ratio_log).denominator, 2)
    return max(6, (k + 1) // 2 + 1)


def x_membership(ratio_log) -> XMembership:
    """Decide whether 2**ratio_log lies in X; the r != s constraint is applied
    to the two-parameter families only."""
    q = Fraction(ratio_log)
    bound = x_search_bound(q)
    den = q.denominator
    odd = den >> _vint(den, 2)
    if odd not in (1, 3):
        return XMembership(q, False, None, bound)
    for fam in X_FAMILIES:
        if fam == "1":
            if q == 0:
                return XMembership(q, True, XWitness(fam), bound)
            continue
        for r in range(bound + 1):
            if fam in TWO_PARAMETER:
                for s in range(bound + 1):
                    if r != s and x_exponent(fam, r, s) == q:
                        return XMembership(q, True, XWitness(fam, r, s), bound)
            elif x_exponent(fam, r) == q:
                return XMembership(q, True, XWitness(fam, r), bound)
    return XMembership(q, False, None, bound)


@dataclass(frozen=True)
class EmptinessResult:
    certified: bool
    reason: str
    memberships: tuple = field(default=())


def emptiness_certificate(v_ratio, e: int, cube_ratio_is_special: bool) -> EmptinessResult:
    """Certify T(alpha) and T(beta) disjoint from the valuation of alpha/beta.

    ``v_ratio`` is v_2(alpha/beta), ``e`` the ramification index of
    Q_2(alpha/beta) over Q_2, and ``cube_ratio_is_special`` says whether
    (alpha/beta)^3 is -8 or -1/8.
    """
    if not isinstance(e, int) or e <= 0:
        raise DomainError("ramification index must be a positive integer")
    v = Fraction(v_ratio)
    if (v * e).denominator != 1:
        raise DomainError(f"valuation {v} is not in (1/{e})Z")
    if cube_ratio_is_special:
        return EmptinessResult(False, "exception case: (alpha/beta)^3 in {-8, -1/8}")
    if v == 0:
        return EmptinessResult(False, "equal absolute values: |alpha/beta| = 1")
    if gcd(6, e) != 1:
        return EmptinessResult(False, f"gcd(6, e) = {gcd(6, e)} != 1")
    # |alpha|/|beta| = 2^(-v); both orientations must miss X, except the ratio 2
    # which X admits only through (alpha/beta)^3 in {-8, -1/8}
    checks = (x_membership(-v), x_membership(v))
    for m in checks:
        if m.member and not (abs(m.ratio_log) == 1 and m.witness.family in (X_FAMILIES[1], X_FAMILIES[6])):
            return EmptinessResult(False, f"ratio exponent {m.ratio_log} lies in X", checks)
    return EmptinessResult(True, "no element of X matches and the ratio-2 exception is excluded", checks)
