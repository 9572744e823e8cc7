from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from padic_lattes import weierstrass as wei
from padic_lattes.errors import DomainError
from padic_lattes.exact import INFINITY, ZERO, EscapeCertified, FpPoly, HitFixed, UPoly, orbit, parse_poly
from padic_lattes.exact.poly import poly_gcd
from padic_lattes.padic import rational_roots, root_valuations, val_of

F = Fraction
T, Z = sympy.symbols("t z")


def sympy_iterate(a, n):
    """n-th iterate of a under (z^4 - 8tz)/(4(z^3 + t)) as a reduced fraction in t."""
    x = sympy.Rational(a.numerator, a.denominator)
    for _ in range(n):
        x = sympy.cancel((x**4 - 8 * T * x) / (4 * (x**3 + T)))
    return sympy.fraction(sympy.cancel(x))


def to_sympy(p: UPoly):
    return sum(sympy.Rational(c.numerator, c.denominator) * T**i for i, c in enumerate(p.coeffs))


def test_recursion_examples():
    tp = wei.torsion_pair(1, 0)
    assert (tp.A, tp.B) == (UPoly([1]), UPoly([1]))
    tp = wei.torsion_pair(1, 1)
    assert (tp.A, tp.B) == (UPoly([1, -8]), UPoly([4, 4]))
    tp = wei.torsion_pair(2, 3)
    assert tp.A.degree == tp.B.degree == 21


def test_level_two_values():
    # frozen from the sympy oracle below
    tp = wei.torsion_pair(1, 2)
    assert tp.B == 16 * UPoly([1, 1]) * UPoly([1, 40, 384, -320, 64])
    assert tp.A == UPoly([1, -8]) * UPoly([1, -536, -1344, -2048, -512])


@pytest.mark.parametrize("a", [F(1), F(-1), F(2), F(3), F(1, 3), F(-2, 5)])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_recursion_matches_symbolic_iteration(a, n):
    tp = wei.torsion_pair(a, n)
    num, den = sympy_iterate(a, n)
    assert sympy.simplify(to_sympy(tp.A) * den - to_sympy(tp.B) * num) == 0
    assert sympy.degree(num, T) == tp.A.degree
    assert sympy.degree(den, T) == tp.B.degree


@pytest.mark.parametrize("a", [F(1), F(-1), F(2), F(-2), F(3), F(5), F(1, 3)])
def test_coprime_and_degrees(a):
    for n in range(1, 5):
        tp = wei.torsion_pair(a, n)
        assert poly_gcd(tp.A, tp.B) == UPoly([1])
        assert tp.A.degree == tp.B.degree == (4**n - 1) // 3
        assert tp.A(0) != 0 and tp.B(0) != 0


def test_divisibility():
    for a in (F(1), F(2)):
        for n in range(1, 4):
            lo, hi = wei.torsion_pair(a, n), wei.torsion_pair(a, n + 1)
            assert lo.A.divides(hi.A) and lo.B.divides(hi.B)


def test_seed_zero_rejected():
    with pytest.raises(DomainError):
        wei.torsion_pair(0, 2)
    with pytest.raises(DomainError):
        wei.f_lambda(0)


def test_periodicity_examples():
    p = wei.periodicity_poly(1, 1, 0)
    assert p == UPoly([-3, -12])
    assert rational_roots(p) == [(F(-1, 4), 1)]
    assert val_of(F(-1, 4), 2) == 3 * val_of(1, 2) - 2
    assert wei.f_lambda(F(-1, 4))(1) == 1
    with pytest.raises(DomainError):
        wei.periodicity_poly(1, 1, 1)


@pytest.mark.parametrize("a", [F(1), F(2)])
def test_periodicity_law(a):
    target = 3 * val_of(a, 2) - 2
    for n in range(1, 4):
        for m in range(n):
            p = wei.periodicity_poly(a, n, m)
            spec = root_valuations(p, 2).as_dict()
            assert set(spec) == {target}


# -- trichotomy ------------------------------------------------------------


def test_classify_examples():
    assert wei.trichotomy_classify(0, -2).variant == "Generic"
    assert str(wei.trichotomy_classify(0, F(-3, 2))) == "HitsInfinity(1)"
    assert wei.trichotomy_classify(0, 5).variant == "Impossible"
    assert str(wei.trichotomy_classify(0, F(-9, 4))) == "HitsZero(1)"
    assert str(wei.classify_parameter(1, -1)) == "HitsInfinity(0)"
    assert str(wei.classify_parameter(2, 1)) == "HitsZero(0)"


@given(st.integers(-6, 6), st.integers(0, 6))
def test_classify_case_equations(va, m):
    base = 3 * va - 2
    assert wei.trichotomy_classify(va, base).variant == "Generic"
    if m >= 1:
        assert wei.trichotomy_classify(va, base + F(2, 4**m)) == wei.TrichotomyClass("HitsInfinity", m)
        assert wei.trichotomy_classify(va, base - F(1, 4**m)) == wei.TrichotomyClass("HitsZero", m)


@given(st.integers(-6, 6), st.fractions(min_value=-20, max_value=20, max_denominator=50))
def test_classify_exclusive(va, vl):
    cls = wei.trichotomy_classify(va, vl)
    d = vl - 3 * va + 2
    hits = [d == 0]
    hits += [d == F(2, 4**m) for m in range(0, 8)]
    hits += [-d == F(1, 4**m) for m in range(0, 8)]
    assert (cls.variant != "Impossible") == any(hits)


@pytest.mark.parametrize("a", [F(1), F(2), F(1, 3)])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_spectrum_law(a, n):
    rep = wei.verify_spectrum(a, n)
    assert rep.passed
    Bexp, Aexp = wei.predicted_spectra(a, n)
    assert root_valuations(wei.torsion_pair(a, n).B, 2).as_dict() == Bexp
    assert root_valuations(wei.torsion_pair(a, n).A, 2).as_dict() == Aexp


def test_spectrum_level_two_worked_values():
    B, A = wei.predicted_spectra(1, 2)
    assert B == {0: 1, F(-3, 2): 4}
    assert A == {-3: 1, F(-9, 4): 4}
    assert wei.predicted_spectra(1, 1)[0] == {0: 1}


@pytest.mark.parametrize("a", [F(1), F(2)])
def test_rational_roots_reach_fixed_points(a):
    for n in range(1, 4):
        tp = wei.torsion_pair(a, n)
        for poly, target in ((tp.A, ZERO), (tp.B, INFINITY)):
            for lam, _ in rational_roots(poly):
                rec = wei.weierstrass_orbit(lam, a, n)
                assert isinstance(rec.status, HitFixed) and rec.points[-1] == target
                assert wei.classify_parameter(a, lam).variant != "Impossible"
                assert all(p in (ZERO, INFINITY) or p.x == a for p in rec.points)


# -- reduction mod p ---------------------------------------------------------


def test_modp_examples():
    for args in ((7, 7, 3), (1, 3, 2), (-1, 3, 2), (3, 3, 5, 1), (1, 3, 5, -1)):
        assert wei.modp_closed_form_check(*args).passed, args


def test_modp_closed_forms_directly():
    tp = wei.torsion_pair(7, 3)
    D = 21
    assert FpPoly.reduce(tp.B, 7) == FpPoly(7, [0] * D + [4**D])
    # 7 divides the content of A_n; the closed form is for A_n / a
    assert FpPoly.reduce(tp.A, 7).is_zero()
    assert FpPoly.reduce(tp.A / 7, 7) == FpPoly(7, [0] * D + [(-2) ** 3 * 4**D])
    tp = wei.torsion_pair(1, 2)
    ref = FpPoly(3, [1, 1]) ** 5
    assert FpPoly.reduce(tp.A, 3) == ref and FpPoly.reduce(tp.B, 3) == ref
    tp = wei.torsion_pair(-1, 2)
    ref = FpPoly(3, [1, -1]) ** 5
    assert FpPoly.reduce(tp.A, 3) == ref and FpPoly.reduce(tp.B, 3) == -ref


# -- escape certificates -----------------------------------------------------


def test_escape_examples():
    assert wei.escape_predicate(2) is not None
    assert wei.escape_predicate(-1) is None
    assert wei.escape_predicate(F(3, 5), discs=("0", "inf")) is None
    rec = orbit(wei.G_MAP, 2, 10, escape=wei.escape_predicate)
    assert isinstance(rec.status, EscapeCertified)


@settings(max_examples=120, deadline=None)
@given(st.fractions(min_value=-30, max_value=30, max_denominator=30).filter(bool),
       st.fractions(min_value=-30, max_value=30, max_denominator=30).filter(bool))
def test_certificate_soundness(a, lam):
    rec = wei.weierstrass_orbit(lam, a, 6)
    if isinstance(rec.status, EscapeCertified):
        for n in range(1, 4):
            tp = wei.torsion_pair(a, n)
            assert tp.A(lam) != 0 and tp.B(lam) != 0
            for m in range(n):
                lo = wei.torsion_pair(a, m)
                assert (tp.A * lo.B - lo.A * tp.B)(lam) != 0
    elif not rec.status.__class__.__name__ == "Unresolved":
        assert wei.classify_parameter(a, lam).variant != "Impossible"


# -- intersections -----------------------------------------------------------


def test_intersection_examples():
    rep = wei.intersection_report(1, -2, 3)
    assert rep.gcds == {"AA": UPoly([1]), "BB": UPoly([1]), "AB": UPoly([1]), "BA": UPoly([1, 1])}
    assert rep.common_parameters == (F(-1),)
    assert rep.all_verified
    for b in (3, -1):
        rep = wei.intersection_report(1, b, 3)
        assert all(g == UPoly([1]) for g in rep.gcds.values())


def test_intersection_gcd_against_sympy():
    B1 = wei.torsion_pair(1, 2).B
    A2 = wei.torsion_pair(-2, 2).A
    g = sympy.gcd(to_sympy(B1), to_sympy(A2))
    assert sympy.Poly(g, T).monic().all_coeffs() == [1, 1]


# -- identities and constants ------------------------------------------------


def test_identities():
    assert wei.isotriviality_identity()
    assert wei.good_reduction_identity()


def test_isotriviality_spot_values():
    for lam, al, z in ((F(3), F(2), F(5)), (F(-1, 4), F(3, 7), F(1, 2))):
        assert wei.f_lambda(lam * al**3)(al * z) == al * wei.f_lambda(lam)(z)
    # u = 2: f_{u^3/4}(u z) = u g(z)
    assert wei.f_lambda(F(8, 4))(2 * F(3)) == 2 * wei.G_MAP(F(3))


def test_identity_suite_all_pass():
    recs = wei.identity_suite()
    assert recs and all(r.passed for r in recs)


def test_local_constants():
    lc = wei.local_constants()
    assert lc["g-series-0"][1] == -2 and lc["g-series-0"][4] == 9
    assert lc["phi-series-0"][1] == 4 and lc["phi-series-0"][4] == 9
    assert lc["g-plus-1-series-minus-1"][1:] == [-2, -6, -16, -43]
    assert lc["multiplier-minus-xi"] == -2


def test_periodic_units():
    for n in (1, 2):
        assert wei.periodic_units_check(n)["ok"]
    assert wei.periodic_units_check(2)["degree"] == 12


def test_roundtrip_of_torsion_polys():
    for n in range(1, 4):
        tp = wei.torsion_pair(F(1, 3), n)
        assert parse_poly(str(tp.A)) == tp.A and parse_poly(str(tp.B)) == tp.B
