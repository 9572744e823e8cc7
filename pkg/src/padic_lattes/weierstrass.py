"""The Weierstrass Lattes family f_t(z) = (z^4 - 8 t z) / (4 (z^3 + t)).

For a seed ``a`` the iterates are written f_t^n(a) = A_n(a, t) / B_n(a, t)
with A_0 = a, B_0 = 1 and

    A_{n+1} = A_n^4 - 8 t A_n B_n^3,    B_{n+1} = 4 B_n A_n^3 + 4 t B_n^4.

Everything 2-adic here is at p = 2.  The good-reduction model is
g(z) = (z^4 - 2z) / (4z^3 + 1) with reciprocal phi(z) = 1 / g(1/z).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .errors import DomainError
from .exact.fppoly import FpPoly, fp_gcd
from .exact.mpoly import MPoly, ratfun_equal
from .exact.numberfield import NFElem
from .exact.orbit import Certificate, HitFixed, OrbitRecord, orbit
from .exact.poly import UPoly, poly_gcd, taylor_shift
from .exact.ratmap import INFINITY, ZERO, ProjPoint, RatMap, multiplier_at, series_expand
from .padic import INF, check_prime, rational_roots, root_valuations, val_of
from .reports import CheckRecord, record

FAMILY = "weierstrass"
P = 2


def f_lambda(lam) -> RatMap:
    lam = Fraction(lam)
    if lam == 0:
        raise DomainError("lambda = 0 is excluded from the family")
    return RatMap.from_coeffs([0, -8 * lam, 0, 0, 1], [4 * lam, 0, 0, 4])


G_MAP = RatMap.from_coeffs([0, -2, 0, 0, 1], [1, 0, 0, 4])
PHI_MAP = RatMap.from_coeffs([0, 4, 0, 0, 1], [1, 0, 0, -2])


def torsion_degree(n: int) -> int:
    return (4**n - 1) // 3


# ---------------------------------------------------------------------------
# torsion pairs


@dataclass(frozen=True)
class TorsionPair:
    a: Fraction
    n: int
    A: UPoly
    B: UPoly

    def to_dict(self) -> dict:
        return {"a": str(self.a), "n": self.n, "A": str(self.A), "B": str(self.B)}


def _step(A: UPoly, B: UPoly) -> tuple[UPoly, UPoly]:
    t = UPoly.gen()
    A3 = A**3
    B3 = B**3
    return A * A3 - t * 8 * A * B3, 4 * B * A3 + t * 4 * B3 * B


@lru_cache(maxsize=None)
def _pair(a: Fraction, n: int) -> TorsionPair:
    if n == 0:
        return TorsionPair(a, 0, UPoly.const(a), UPoly.const(1))
    prev = _pair(a, n - 1)
    A, B = _step(prev.A, prev.B)
    D = torsion_degree(n)
    if A.degree != D or B.degree != D:
        raise AssertionError(f"degree law failed at a={a}, n={n}")
    if A[0] == 0 or B[0] == 0:
        raise AssertionError(f"t divides A_n or B_n at a={a}, n={n}")
    if poly_gcd(A, B).degree != 0:
        raise AssertionError(f"A_n and B_n share a factor at a={a}, n={n}")
    return TorsionPair(a, n, A, B)


def torsion_pair(a, n: int) -> TorsionPair:
    """A_n(a, t), B_n(a, t); coprimality and degrees are checked on construction."""
    a = Fraction(a)
    if a == 0:
        raise DomainError("seed a = 0 is persistently preperiodic")
    if n < 0:
        raise DomainError("level must be >= 0")
    return _pair(a, n)


def periodicity_poly(a, n: int, m: int) -> UPoly:
    """A_n B_m - A_m B_n with every factor shared with some A_k, B_k (k <= n) removed."""
    if n == m:
        raise DomainError("n = m gives the zero polynomial")
    if not n > m >= 0:
        raise DomainError("need n > m >= 0")
    pn, pm = torsion_pair(a, n), torsion_pair(a, m)
    P_ = pn.A * pm.B - pm.A * pn.B
    for k in range(1, n + 1):
        pk = torsion_pair(a, k)
        for Q in (pk.A, pk.B):
            g = poly_gcd(P_, Q)
            while g.degree > 0:
                P_ = P_ // g
                g = poly_gcd(P_, g)
    return P_


# ---------------------------------------------------------------------------
# trichotomy


@dataclass(frozen=True)
class TrichotomyClass:
    variant: str  # "Generic", "HitsInfinity", "HitsZero", "Impossible"
    m: Optional[int] = None

    def __str__(self):
        return self.variant if self.m is None else f"{self.variant}({self.m})"


def _inverse_power_of_four(x: Fraction) -> Optional[int]:
    """m with x = 4^(-m), m >= 0, else None."""
    if x <= 0 or x.numerator != 1:
        return None
    d, m = x.denominator, 0
    while d % 4 == 0:
        d //= 4
        m += 1
    return m if d == 1 else None


def trichotomy_classify(v_alpha, v_lambda) -> TrichotomyClass:
    """Classify by valuations alone.

    With d = v(lambda) - 3 v(alpha) + 2: d = 0 is Generic, d = 2 * 4^(-m)
    is HitsInfinity(m) and d = -4^(-m) is HitsZero(m).  The m = 0 classes
    stand for lambda = -alpha^3 and lambda = alpha^3/8; see
    :func:`classify_parameter` for the exact check.
    """
    if v_alpha is INF or v_lambda is INF:
        raise DomainError("valuations must be finite")
    d = Fraction(v_lambda) - 3 * Fraction(v_alpha) + 2
    if d == 0:
        return TrichotomyClass("Generic")
    if d > 0:
        m = _inverse_power_of_four(d / 2)
        if m is not None:
            return TrichotomyClass("HitsInfinity", m)
    else:
        m = _inverse_power_of_four(-d)
        if m is not None:
            return TrichotomyClass("HitsZero", m)
    return TrichotomyClass("Impossible")


def classify_parameter(alpha, lam) -> TrichotomyClass:
    """Trichotomy class of exact rationals; m = 0 classes need the exact equality."""
    alpha, lam = Fraction(alpha), Fraction(lam)
    if alpha == 0 or lam == 0:
        raise DomainError("alpha and lambda must be nonzero")
    cls = trichotomy_classify(val_of(alpha, P), val_of(lam, P))
    if cls.m == 0:
        target = -alpha**3 if cls.variant == "HitsInfinity" else alpha**3 / 8
        if lam != target:
            return TrichotomyClass("Impossible")
    return cls


def predicted_spectra(a, n: int) -> tuple[dict, dict]:
    """Predicted root-valuation multisets of B_n(a, t) and A_n(a, t) at p = 2."""
    va = val_of(a, P)
    B = {3 * va: 1}
    A = {3 * va - 3: 1}
    for m in range(1, n):
        q = Fraction(1, 4**m)
        B[3 * va - 2 + 2 * q] = B.get(3 * va - 2 + 2 * q, 0) + 4**m
        A[3 * va - 2 - q] = A.get(3 * va - 2 - q, 0) + 4**m
    return B, A


@dataclass(frozen=True)
class SpectrumReport:
    a: Fraction
    n: int
    B_expected: dict
    B_actual: dict
    A_expected: dict
    A_actual: dict

    @property
    def passed(self) -> bool:
        return self.B_expected == self.B_actual and self.A_expected == self.A_actual

    def segment_rows(self):
        """(which, valuation, expected multiplicity, actual multiplicity)."""
        rows = []
        for which, exp, act in (("B", self.B_expected, self.B_actual), ("A", self.A_expected, self.A_actual)):
            for v in sorted(set(exp) | set(act)):
                rows.append((which, v, exp.get(v, 0), act.get(v, 0)))
        return rows

    def records(self) -> list[CheckRecord]:
        inputs = {"a": self.a, "n": self.n}
        return [
            record(FAMILY, "spectrum-B", inputs, _spec_list(self.B_expected), _spec_list(self.B_actual)),
            record(FAMILY, "spectrum-A", inputs, _spec_list(self.A_expected), _spec_list(self.A_actual)),
        ]


def _spec_list(d: dict) -> list:
    return [[v, m] for v, m in sorted(d.items())]


def verify_spectrum(a, n: int) -> SpectrumReport:
    if n < 1:
        raise DomainError("level must be >= 1")
    tp = torsion_pair(a, n)
    Bexp, Aexp = predicted_spectra(tp.a, n)
    Bact = root_valuations(tp.B, P).as_dict()
    Aact = root_valuations(tp.A, P).as_dict()
    return SpectrumReport(tp.a, n, Bexp, Bact, Aexp, Aact)


# ---------------------------------------------------------------------------
# reductions mod p


@dataclass(frozen=True)
class ModpReport:
    a: int
    p: int
    n: int
    b: Optional[int]
    comparisons: tuple  # (label, expected FpPoly, actual FpPoly)
    facts: tuple  # (label, bool)

    @property
    def passed(self) -> bool:
        return all(e == x for _, e, x in self.comparisons) and all(ok for _, ok in self.facts)

    def records(self) -> list[CheckRecord]:
        inputs = {"a": self.a, "p": self.p, "n": self.n}
        if self.b is not None:
            inputs["b"] = self.b
        out = [
            record(FAMILY, f"modp-{label}", inputs, list(e.coeffs), list(x.coeffs))
            for label, e, x in self.comparisons
        ]
        out += [record(FAMILY, f"modp-{label}", inputs, True, ok) for label, ok in self.facts]
        return out


def modp_closed_form_check(a: int, p: int, n: int, b: Optional[int] = None) -> ModpReport:
    """Compare reductions of A_n, B_n mod p with their closed forms.

    Branch p | a (p odd): B_n = (4t)^D and A_n / a = (-2)^n (4t)^D with
    D = (4^n - 1)/3.  With a partner b (p not dividing b) the reduced
    gcds against b's pair are 1 and no degree drops on reduction.
    Branch p = 3, a = +-1: A_n(1) = B_n(1) = (1+t)^D, A_n(-1) = (1-t)^D,
    B_n(-1) = -(1-t)^D; with b = -a the reduced gcds are 1.
    """
    check_prime(p)
    if isinstance(a, Fraction):
        if a.denominator != 1:
            raise DomainError("a must be an integer")
        a = a.numerator
    if n < 1:
        raise DomainError("level must be >= 1")
    D = torsion_degree(n)
    tp = torsion_pair(a, n)
    comps = []
    facts = []
    if p != 2 and a % p == 0:
        four_t = FpPoly(p, [0, 4])
        comps.append(("B", four_t**D, FpPoly.reduce(tp.B, p)))
        comps.append(("a", FpPoly(p, [(-2) ** n]) * four_t**D, FpPoly.reduce(tp.A / a, p)))
        facts.append(("A-vanishes", FpPoly.reduce(tp.A, p).is_zero()))
        if b is not None:
            if b == 0 or b % p == 0:
                raise DomainError(f"partner b must be prime to {p}")
            tb = torsion_pair(b, n)
            Ab, Bb = FpPoly.reduce(tb.A, p), FpPoly.reduce(tb.B, p)
            abar = FpPoly.reduce(tp.A / a, p)
            Ba = FpPoly.reduce(tp.B, p)
            facts.append(("b-nonzero-at-0", Ab(0) != 0 and Bb(0) != 0))
            facts.append(("gcd-a-A", fp_gcd(abar, Ab).degree == 0))
            facts.append(("gcd-B-B", fp_gcd(Ba, Bb).degree == 0))
            facts.append(("degrees-kept", {abar.degree, Ba.degree, Ab.degree, Bb.degree} == {D}))
    elif p == 3 and a in (1, -1):
        base = FpPoly(p, [1, a])
        sign = 1 if a == 1 else -1
        comps.append(("A", base**D, FpPoly.reduce(tp.A, p)))
        comps.append(("B", FpPoly(p, [sign]) * base**D, FpPoly.reduce(tp.B, p)))
        if b is not None:
            if b != -a:
                raise DomainError("the mod-3 branch pairs a with b = -a")
            tb = torsion_pair(b, n)
            Aa, Ba = FpPoly.reduce(tp.A, p), FpPoly.reduce(tp.B, p)
            Ab, Bb = FpPoly.reduce(tb.A, p), FpPoly.reduce(tb.B, p)
            facts.append(("gcd-A-A", fp_gcd(Aa, Ab).degree == 0))
            facts.append(("gcd-B-B", fp_gcd(Ba, Bb).degree == 0))
            facts.append(("degrees-kept", {Aa.degree, Ba.degree, Ab.degree, Bb.degree} == {D}))
    else:
        raise DomainError("need p odd with p | a, or p = 3 with a = +-1")
    return ModpReport(a, p, n, b, tuple(comps), tuple(facts))


# ---------------------------------------------------------------------------
# escape certificates


def _disc_certificate(kind: str, v: Fraction, what: str) -> Certificate:
    return Certificate(kind, f"v2({what}) = {v} is not of the form 1/(3*4^m)")


def escape_predicate(w, discs=("0", "inf", "-1")) -> Optional[Certificate]:
    """Non-preperiodicity certificate for a rational point under g.

    A preperiodic point of g in the open unit disc about an attracting
    fixed point reaches it exactly, and then its distance to it has
    absolute value |2^(1/3)|^(1/4^m) (|4^(-1/3)|^(1/4^m) near infinity).
    A rational point has integer valuations, so any point of these discs
    other than the fixed point itself is certified.
    """
    w = ProjPoint.coerce(w)
    if w.is_infinity:
        return None
    x = w.x
    if x == 0 or x == -1:
        return None
    v = val_of(x, P)
    if v > 0 and "0" in discs:
        return _disc_certificate("disc-0", v, "w")
    if v < 0 and "inf" in discs:
        return _disc_certificate("disc-inf", -v, "1/w")
    if v == 0 and "-1" in discs:
        # a 2-adic unit rational is congruent to -1, so v2(w + 1) >= 1
        return _disc_certificate("disc-minus-1", val_of(x + 1, P), "w+1")
    return None


def lattes_escape_predicate(lam):
    """Escape predicate for f_lam at rational points.

    Uses c = z^3 / (4 lam), the cube of the g-coordinate w = z / (4 lam)^(1/3).
    The only rational points left uncertified are 0, infinity, the parameters
    with c in {2, -1/4} (which reach 0 or infinity in one step) and the fixed
    points c = -1.
    """
    lam = Fraction(lam)
    if lam == 0:
        raise DomainError("lambda must be nonzero")

    def predicate(pt) -> Optional[Certificate]:
        pt = ProjPoint.coerce(pt)
        if pt.is_infinity or pt.x == 0:
            return None
        c = pt.x**3 / (4 * lam)
        v = val_of(c, P)
        if v > 0:
            if c == 2:
                return None
            why = "w^3 != 2" if v == 1 else "not 1"
            return Certificate("disc-0", f"v2(w^3) = {v}, {why}")
        if v < 0:
            if c == Fraction(-1, 4):
                return None
            why = "w^3 != -1/4" if v == -2 else "not -2"
            return Certificate("disc-inf", f"v2(w^3) = {v}, {why}")
        if c == -1:
            return None
        return Certificate("disc-cube-root-of-minus-1", f"v2(w^3 + 1) = {val_of(c + 1, P)} is an integer")

    return predicate


def weierstrass_orbit(lam, seed, max_steps: int = 12) -> OrbitRecord:
    return orbit(f_lambda(lam), seed, max_steps, stop_points=(ZERO, INFINITY),
                 escape=lattes_escape_predicate(lam))


# ---------------------------------------------------------------------------
# intersections


@dataclass(frozen=True)
class IntersectionReport:
    a: Fraction
    b: Fraction
    n: int
    gcd_AA: UPoly
    gcd_BB: UPoly
    gcd_AB: UPoly
    gcd_BA: UPoly
    common_parameters: tuple
    verified: tuple  # (lambda, orbit status text for a, for b, consistent?)

    @property
    def gcds(self) -> dict:
        return {"AA": self.gcd_AA, "BB": self.gcd_BB, "AB": self.gcd_AB, "BA": self.gcd_BA}

    @property
    def all_verified(self) -> bool:
        return all(ok for *_, ok in self.verified)

    def to_dict(self) -> dict:
        return {
            "a": str(self.a),
            "b": str(self.b),
            "n": self.n,
            "gcds": {k: str(v) for k, v in self.gcds.items()},
            "common_parameters": [str(x) for x in self.common_parameters],
            "orbits": [
                {"lambda": str(lam), "a": sa, "b": sb, "consistent": ok}
                for lam, sa, sb, ok in self.verified
            ],
        }


def _hits_within(lam: Fraction, seed: Fraction, target: ProjPoint, n: int) -> tuple[bool, str]:
    rec = orbit(f_lambda(lam), seed, max(n, 1), stop_points=(ZERO, INFINITY))
    st = rec.status
    hit = isinstance(st, HitFixed) and st.step <= n and rec.points[-1] == target
    return hit, str(st)


def intersection_report(a, b, n: int) -> IntersectionReport:
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0 or a == b:
        raise DomainError("need nonzero a != b")
    if n < 1:
        raise DomainError("level must be >= 1")
    pa, pb = torsion_pair(a, n), torsion_pair(b, n)
    gcds = {
        "AA": poly_gcd(pa.A, pb.A),
        "BB": poly_gcd(pa.B, pb.B),
        "AB": poly_gcd(pa.A, pb.B),
        "BA": poly_gcd(pa.B, pb.A),
    }
    # targets reached by the orbits of a and b for a root of each gcd
    targets = {"AA": (ZERO, ZERO), "BB": (INFINITY, INFINITY), "AB": (ZERO, INFINITY), "BA": (INFINITY, ZERO)}
    common = []
    checks = []
    for key, g in gcds.items():
        if g.degree < 1:
            continue
        for lam, _ in rational_roots(g):
            ta, tb = targets[key]
            ok_a, sa = _hits_within(lam, a, ta, n)
            ok_b, sb = _hits_within(lam, b, tb, n)
            if lam not in common:
                common.append(lam)
            checks.append((lam, sa, sb, ok_a and ok_b))
    return IntersectionReport(a, b, n, gcds["AA"], gcds["BB"], gcds["AB"], gcds["BA"],
                              tuple(sorted(common)), tuple(checks))


# ---------------------------------------------------------------------------
# identities and local constants

_TUZ = ("t", "u", "z")


def _f_family_mpoly(lam: MPoly, z: MPoly) -> tuple[MPoly, MPoly]:
    return z**4 - 8 * lam * z, 4 * (z**3 + lam)


def isotriviality_identity() -> bool:
    """f_{t u^3}(u z) = u f_t(z) in Q(t, u, z)."""
    t, u, z = (MPoly.var(v, _TUZ) for v in _TUZ)
    lhs = _f_family_mpoly(t * u**3, u * z)
    n, d = _f_family_mpoly(t, z)
    return ratfun_equal(lhs, (u * n, d))


def good_reduction_identity() -> bool:
    """f_{u^3/4}(u z) = u g(z), i.e. conjugation by z -> (4t)^(1/3) z gives g."""
    t, u, z = (MPoly.var(v, _TUZ) for v in _TUZ)
    lhs = _f_family_mpoly(u**3 * Fraction(1, 4), u * z)
    return ratfun_equal(lhs, (u * (z**4 - 2 * z), 4 * z**3 + 1))


def g_closed_form_series(order: int) -> list[Fraction]:
    """-2z - (9z/4) sum_{k>=1} (-4z^3)^k, truncated."""
    out = [Fraction(0)] * (order + 1)
    if order >= 1:
        out[1] = Fraction(-2)
    k = 1
    while 3 * k + 1 <= order:
        out[3 * k + 1] = Fraction(-9, 4) * (-4) ** k
        k += 1
    return out


def phi_closed_form_series(order: int) -> list[Fraction]:
    """4z + (9z/2) sum_{k>=1} (2z^3)^k, truncated."""
    out = [Fraction(0)] * (order + 1)
    if order >= 1:
        out[1] = Fraction(4)
    k = 1
    while 3 * k + 1 <= order:
        out[3 * k + 1] = Fraction(9, 2) * 2**k
        k += 1
    return out


XI_MODULUS = UPoly([1, 1, 1], "x")


def minus_xi() -> NFElem:
    return -NFElem.generator(XI_MODULUS)


def local_constants() -> dict:
    """Series and multipliers of g at its attracting fixed points."""
    s0 = series_expand(G_MAP, 0, 7)
    sphi = series_expand(PHI_MAP, 0, 4)
    sm1 = series_expand(G_MAP, -1, 4)
    sm1 = [sm1[0] + 1] + sm1[1:]
    mxi = multiplier_at(G_MAP, minus_xi())
    return {
        "g-series-0": s0,
        "phi-series-0": sphi,
        "g-plus-1-series-minus-1": sm1,
        "multiplier-0": multiplier_at(G_MAP, ZERO),
        "multiplier-inf": multiplier_at(G_MAP, INFINITY),
        "multiplier-minus-1": multiplier_at(G_MAP, -1),
        "multiplier-minus-xi": mxi.rational_value(),
    }


def identity_suite() -> list[CheckRecord]:
    recs = [
        record(FAMILY, "identity-isotriviality", {}, True, isotriviality_identity()),
        record(FAMILY, "identity-good-reduction", {}, True, good_reduction_identity()),
    ]
    lc = local_constants()
    expected = {
        "g-series-0": [0, -2, 0, 0, 9, 0, 0, -36],
        "phi-series-0": [0, 4, 0, 0, 9],
        "g-plus-1-series-minus-1": [0, -2, -6, -16, -43],
        "multiplier-0": -2,
        "multiplier-inf": 4,
        "multiplier-minus-1": -2,
        "multiplier-minus-xi": -2,
    }
    for key, exp in expected.items():
        exp = [Fraction(x) for x in exp] if isinstance(exp, list) else Fraction(exp)
        recs.append(record(FAMILY, f"local-{key}", {}, exp, lc[key]))
    recs.append(record(FAMILY, "local-g-series-closed-form", {"order": 13},
                       g_closed_form_series(13), series_expand(G_MAP, 0, 13)))
    recs.append(record(FAMILY, "local-phi-series-closed-form", {"order": 13},
                       phi_closed_form_series(13), series_expand(PHI_MAP, 0, 13)))
    return recs


# ---------------------------------------------------------------------------
# periodic points of g


def g_periodic_numerator(n: int) -> UPoly:
    """Numerator of g^n(z) - z."""
    gn = G_MAP.iterate(n)
    return gn.num - UPoly.gen("z") * gn.den


FIXED_FACTORS = (UPoly([0, 1], "z"), UPoly([1, 1], "z"), UPoly([1, -1, 1], "z"))


def periodic_units_check(n: int) -> dict:
    """Root valuations of g^n(z) - z after removing z, z + 1, z^2 - z + 1,
    and of the same roots shifted by 1."""
    if n < 1:
        raise DomainError("n must be >= 1")
    q = g_periodic_numerator(n)
    for fac in FIXED_FACTORS:
        while q.degree >= 1 and (q % fac).is_zero():
            q = q // fac
    if q.degree < 1:
        return {"degree": 0, "spectrum": {}, "shifted_spectrum": {}, "ok": True}
    spec = root_valuations(q, P).as_dict()
    shifted = root_valuations(taylor_shift(q, -1), P).as_dict()
    ok = set(spec) == {Fraction(0)} and set(shifted) == {Fraction(0)}
    return {"degree": q.degree, "spectrum": spec, "shifted_spectrum": shifted, "ok": ok}
