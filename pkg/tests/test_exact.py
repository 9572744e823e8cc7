from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from padic_lattes.errors import DomainError, ParseError, PoleError
from padic_lattes.exact import (
    INFINITY,
    ZERO,
    FpPoly,
    MPoly,
    NFElem,
    PreperiodicTail,
    ProjPoint,
    RatMap,
    UPoly,
    fp_gcd,
    mobius,
    mobius_conjugate,
    multiplier_at,
    orbit,
    parse_poly,
    parse_rat,
    poly_gcd,
    poly_xgcd,
    proj_eval,
    ratfun_equal,
    series_expand,
    taylor_shift,
)
from padic_lattes.exact.poly import poly_from_roots

T = sympy.Symbol("t")
small = st.integers(-9, 9)
rats = st.builds(Fraction, st.integers(-20, 20), st.integers(1, 9))
polys = st.lists(small, min_size=0, max_size=7).map(UPoly)


def to_sympy(p: UPoly):
    return sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(p.coeffs)] or [0], T, domain="QQ")


def from_sympy(q) -> UPoly:
    return UPoly([Fraction(int(c.p), int(c.q)) for c in reversed(q.all_coeffs())])


def euclid_gcd(a: UPoly, b: UPoly) -> UPoly:
    # textbook Euclid over Q; the oracle for small degrees
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


# -- polynomials ---------------------------------------------------------


def test_gcd_examples():
    assert poly_gcd(UPoly([1, -8]), UPoly([4, 4])) == UPoly([1])
    t1 = UPoly([1, 1])
    assert poly_gcd(t1**2, t1**3) == t1**2


@settings(max_examples=150, deadline=None)
@given(polys, polys)
def test_arithmetic_matches_sympy(p, q):
    assert from_sympy(to_sympy(p) * to_sympy(q)) == p * q
    assert from_sympy(to_sympy(p) + to_sympy(q)) == p + q
    if not q.is_zero():
        quo, rem = divmod(p, q)
        sq, sr = sympy.div(to_sympy(p), to_sympy(q))
        assert (quo, rem) == (from_sympy(sq), from_sympy(sr))


@settings(max_examples=150, deadline=None)
@given(polys, polys, polys)
def test_gcd_divides_and_cofactors_coprime(p, q, c):
    p, q = p * c, q * c
    assume(not (p.is_zero() and q.is_zero()))
    g = poly_gcd(p, q)
    assert g.divides(p) and g.divides(q)
    assert g == euclid_gcd(p, q)
    assert g == from_sympy(sympy.gcd(to_sympy(p), to_sympy(q)).monic()) if not g.is_zero() else True
    if not p.is_zero() and not q.is_zero():
        assert poly_gcd(p // g, q // g) == UPoly([1])


@settings(max_examples=60, deadline=None)
@given(polys, polys)
def test_xgcd_bezout(a, b):
    assume(not (a.is_zero() and b.is_zero()))
    g, s, t = poly_xgcd(a, b)
    assert s * a + t * b == g
    assert g == poly_gcd(a, b)


def test_gcd_large_degree_against_sympy():
    # products sharing a known factor, large enough to exercise the modular route
    rng = __import__("random").Random(7)
    common = UPoly([rng.randint(-50, 50) for _ in range(40)] + [3])
    a = common * UPoly([rng.randint(-50, 50) for _ in range(60)] + [1])
    b = common * UPoly([rng.randint(-50, 50) for _ in range(55)] + [7])
    g = poly_gcd(a, b)
    assert g == from_sympy(sympy.gcd(to_sympy(a), to_sympy(b)).monic())
    assert g.degree >= 40


def test_taylor_shift():
    t = UPoly.gen()
    assert taylor_shift(t * t, 1) == t * t + 2 * t + 1
    p = UPoly([3, -1, 4, 1, -5])
    assert taylor_shift(p, 0) == p


@given(polys, rats, rats)
def test_taylor_shift_evaluates(p, c, x):
    assert taylor_shift(p, c)(x) == p(x + c)


def test_poly_from_roots():
    f = poly_from_roots([1, Fraction(-1, 2)], scale=2)
    assert f == UPoly([-1, -1, 2])


# -- parsing ---------------------------------------------------------------


def test_parse_examples():
    assert parse_rat("-4/7") == Fraction(-4, 7)
    assert parse_poly("4*t^2 - 8*t + 1") == UPoly([1, -8, 4])
    with pytest.raises(ParseError) as exc:
        parse_poly("t^^2")
    assert exc.value.offset == 2


def test_canonical_printing():
    assert str(UPoly([1, -8, 4])) == "4*t^2 - 8*t + 1"
    assert str(UPoly([])) == "0"


@given(st.lists(rats, max_size=8))
def test_print_parse_roundtrip(cs):
    p = UPoly(cs)
    assert parse_poly(str(p)) == p


@pytest.mark.parametrize("bad", ["", "t +", "(t", "t^-1", "2/0", "x*t"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        parse_poly(bad)


# -- F_p and number fields -----------------------------------------------


def test_fp_gcd_matches_sympy():
    f = FpPoly(7, [1, 2, 0, 1])
    g = FpPoly(7, [6, 1]) * FpPoly(7, [1, 2, 0, 1])
    assert fp_gcd(f, g) == f.monic()
    oracle = sympy.Poly([1, 0, 2, 1], T, modulus=7)
    assert oracle.degree() == f.degree


def test_fp_reduce():
    assert FpPoly.reduce(UPoly([Fraction(1, 2), 3]), 5) == FpPoly(5, [3, 3])


def test_numberfield_cube_root_of_unity():
    xi = NFElem.generator(UPoly([1, 1, 1], "x"))
    assert xi**3 == 1
    assert xi * xi + xi + 1 == 0
    assert (1 / xi) * xi == 1
    assert xi.rational_value() is None
    assert (xi - xi).rational_value() == 0


def test_numberfield_rejects_non_monic():
    with pytest.raises(DomainError):
        NFElem.generator(UPoly([1, 0, 2], "x"))


# -- rational maps ---------------------------------------------------------

G = RatMap(UPoly([0, -2, 0, 0, 1], "z"), UPoly([1, 0, 0, 4], "z"))
PHI = RatMap(UPoly([0, 4, 0, 0, 1], "z"), UPoly([1, 0, 0, -2], "z"))


def test_mobius_examples():
    f = RatMap.from_coeffs([1, 0, 1], [0, 2])
    assert mobius_conjugate(f, mobius(2, -1, 0, 1)) == RatMap.from_coeffs([0, 0, 1], [-1, 2])
    assert mobius_conjugate(f, mobius(1, 0, 0, 1)) == f
    assert mobius_conjugate(G, mobius(-1, 0, 0, 1)) == RatMap.from_coeffs([0, 2, 0, 0, 1], [-1, 0, 0, 4])


maps = st.tuples(
    st.lists(small, min_size=1, max_size=5), st.lists(small, min_size=1, max_size=5)
).filter(lambda nd: any(nd[0]) and any(nd[1]))


def make_map(nd) -> RatMap:
    try:
        return RatMap.from_coeffs(*nd)
    except DomainError:
        assume(False)


invertible = st.tuples(small, small, small, small).filter(lambda m: m[0] * m[3] - m[1] * m[2] != 0)


@settings(max_examples=60, deadline=None)
@given(maps, invertible)
def test_conjugation_inverts(nd, m):
    f = make_map(nd)
    a, b, c, d = m
    M, Minv = mobius(a, b, c, d), mobius(d, -b, -c, a)
    assert mobius_conjugate(mobius_conjugate(f, M), Minv) == f


def test_series_examples():
    assert series_expand(G, 0, 7) == [0, -2, 0, 0, 9, 0, 0, -36]
    assert series_expand(PHI, 0, 4) == [0, 4, 0, 0, 9]
    assert series_expand(RatMap.from_coeffs([0, 1], [1, -1]), 0, 3) == [0, 1, 1, 1]
    # local coefficients of g(z) + 1 around -1
    assert series_expand(G, -1, 4)[1:] == [-2, -6, -16, -43]


@settings(max_examples=60, deadline=None)
@given(maps, st.integers(-3, 3), st.integers(0, 6))
def test_series_times_denominator(nd, c, n):
    f = make_map(nd)
    assume(f.den(Fraction(c)) != 0)
    s = series_expand(f, c, n)
    num = taylor_shift(f.num, c)
    den = taylor_shift(f.den, c)
    prod = [sum(den[j] * s[i - j] for j in range(i + 1)) for i in range(n + 1)]
    assert prod == [num[i] for i in range(n + 1)]


def test_series_at_pole():
    with pytest.raises(PoleError):
        series_expand(RatMap.from_coeffs([1], [0, 1]), 0, 3)


def test_multipliers():
    assert multiplier_at(G, 0) == -2
    assert multiplier_at(G, INFINITY) == 4
    assert multiplier_at(G, -1) == -2
    xi = NFElem.generator(UPoly([1, 1, 1], "x"))
    assert multiplier_at(G, -xi) == -2


@settings(max_examples=40, deadline=None)
@given(st.integers(-4, 4), st.integers(-4, 4), invertible)
def test_multiplier_conjugation_invariant(r, s, m):
    # f has fixed points r and s by construction: f(z) = z + (z - r)(z - s)
    z = UPoly.gen("z")
    f = RatMap(z + (z - r) * (z - s), UPoly.const(1, "z"))
    a, b, c, d = m
    M, Minv = mobius(a, b, c, d), mobius(d, -b, -c, a)
    h = mobius_conjugate(f, M)
    for pt in (r, s):
        q = proj_eval(Minv, pt)
        assert multiplier_at(h, q) == multiplier_at(f, pt)


@settings(max_examples=80, deadline=None)
@given(maps, rats)
def test_proj_eval_matches_affine(nd, x):
    f = make_map(nd)
    assume(f.den(x) != 0)
    assert proj_eval(f, x) == ProjPoint.affine(f.num(x) / f.den(x))


def test_proj_eval_examples():
    f = RatMap(UPoly([0, 8, 0, 0, 1], "z"), UPoly([-4, 0, 0, 4], "z"))  # lambda = -1
    assert proj_eval(f, 1) == INFINITY
    assert proj_eval(f, -2) == ZERO
    fq = RatMap(UPoly([0, 2, 0, 0, 1], "z"), UPoly([-1, 0, 0, 4], "z"))  # lambda = -1/4
    assert proj_eval(fq, 1) == ProjPoint.affine(1)


# -- orbits ----------------------------------------------------------------


def test_orbit_examples():
    z = UPoly.gen("z")
    leg4 = RatMap((z * z - 4) ** 2, 4 * z * (z - 1) * (z - 4))
    rec = orbit(leg4, 2, 10)
    assert [str(p) for p in rec.points] == ["2", "0", "inf"]
    assert rec.status == PreperiodicTail(2, 1)
    fq = RatMap(UPoly([0, 2, 0, 0, 1], "z"), UPoly([-1, 0, 0, 4], "z"))
    assert orbit(fq, 1, 5).status == PreperiodicTail(0, 1)


@settings(max_examples=60, deadline=None)
@given(maps, rats)
def test_preperiodic_orbit_recurrence(nd, seed):
    f = make_map(nd)
    rec = orbit(f, seed, 8, max_height_bits=2000)
    pts = rec.points
    for i in range(len(pts) - 1):
        assert proj_eval(f, pts[i]) == pts[i + 1]
    if isinstance(rec.status, PreperiodicTail):
        st_ = rec.status
        assert proj_eval(f, pts[-1]) == pts[st_.tail]
        assert len(pts) == st_.tail + st_.period


def test_orbit_rejects_nonfixed_stop():
    with pytest.raises(DomainError):
        orbit(G, 2, 3, stop_points=(ProjPoint.affine(5),))


# -- multivariate ----------------------------------------------------------


def test_ratfun_equal_trivial():
    v = ("u", "z")
    z = MPoly.var("z", v)
    one = MPoly.const(1, v)
    assert ratfun_equal((z * one, one), (z, one))
    assert not ratfun_equal((z, one), (z + 1, one))
