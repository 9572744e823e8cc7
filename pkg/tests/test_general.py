from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from padic_lattes import general as gen
from padic_lattes.errors import DomainError
from padic_lattes.exact import ZERO, EscapeCertified, UPoly, orbit, taylor_shift
from padic_lattes.exact.ratmap import INFINITY
from padic_lattes.padic import INF, rational_roots, val_of

F = Fraction
P23, P32, P25 = gen.GenFamilyParams(2, 3), gen.GenFamilyParams(3, 2), gen.GenFamilyParams(2, 5)
T = sympy.Symbol("t")


def test_recursion_examples():
    tp = gen.gen_torsion_pair(P23, 1, 1)
    assert (tp.A, tp.B) == (UPoly([1, 1]), UPoly([3]))
    tp = gen.gen_torsion_pair(P23, 1, 2)
    assert tp.A == UPoly([1, 1]) ** 2 + 9 * UPoly([0, 1])
    assert tp.B == 9 * UPoly([1, 1])
    tp = gen.gen_torsion_pair(P32, 1, 1)
    assert (tp.A, tp.B) == (UPoly([1, 1]), UPoly([2]))


@pytest.mark.parametrize("params", [P23, P32, P25, gen.GenFamilyParams(4, 7)])
@pytest.mark.parametrize("a", [F(1), F(2), F(1, 3)])
def test_pair_matches_symbolic_iteration(params, a):
    x = sympy.Rational(a.numerator, a.denominator)
    for n in range(1, 4):
        x = sympy.cancel((x**params.d + T) / (params.p * x))
        num, den = sympy.fraction(x)
        tp = gen.gen_torsion_pair(params, a, n)
        lhs = sum(sympy.Rational(c.numerator, c.denominator) * T**i for i, c in enumerate(tp.A.coeffs))
        rhs = sum(sympy.Rational(c.numerator, c.denominator) * T**i for i, c in enumerate(tp.B.coeffs))
        assert sympy.expand(lhs * den - rhs * num) == 0


@pytest.mark.parametrize("d", [2, 3, 4])
def test_degree_law(d):
    params = gen.GenFamilyParams(d, 2)
    for n in range(1, 5):
        assert gen.gen_torsion_pair(params, 1, n).A.degree == d ** (n - 1)


def test_params_domain():
    with pytest.raises(DomainError):
        gen.GenFamilyParams(1, 3)
    with pytest.raises(DomainError):
        gen.GenFamilyParams(2, 6)


def test_shifted_examples():
    rep = gen.shifted_spectrum_check(P23, 1, 2)
    assert rep.passed
    A2 = gen.gen_torsion_pair(P23, 1, 2).A
    assert taylor_shift(A2, -1) == UPoly([-9, 9, 1])
    assert taylor_shift(gen.gen_torsion_pair(P23, 1, 1).A, -1) == UPoly([0, 1])


@pytest.mark.parametrize("params,a", [(P23, 1), (P32, 1), (P25, 2)])
def test_shifted_spectra(params, a):
    for n in (1, 2, 3):
        assert gen.shifted_spectrum_check(params, a, n).passed


@pytest.mark.parametrize("params,a", [(P23, F(1)), (P32, F(1)), (P25, F(2))])
def test_hits_zero_roots(params, a):
    for name, f in gen.gen_torsion_polys(params, a, 3):
        if not name.startswith("A_"):
            continue
        for lam, _ in rational_roots(f):
            rec = orbit(gen.gen_map(params, lam), a, 3, stop_points=(INFINITY,))
            assert ZERO in rec.points
            v = val_of(a**params.d + lam, params.p)
            assert v is INF or v >= 1


def test_escape_examples():
    assert gen.gen_escape_check(P23, 1, F(1, 3)) is not None
    assert gen.gen_escape_check(P23, F(1, 3), 1) is not None
    assert gen.gen_escape_check(P23, 1, -1) is None


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([P23, P32, P25]),
       st.fractions(min_value=-12, max_value=12, max_denominator=8),
       st.fractions(min_value=-12, max_value=12, max_denominator=8))
def test_certificate_soundness(params, a, lam):
    assume(a != 0)
    rec = gen.gen_orbit(params, lam, a, 5)
    if isinstance(rec.status, EscapeCertified):
        for name, f in gen.gen_torsion_polys(params, a, 3):
            assert f(lam) != 0, name


def test_rho_examples():
    assert gen.rho_reduce(F(1, 3), 3).is_infinity
    assert gen.rho_reduce(7, 3).value == 1
    assert gen.rho_reduce(0, 5).value == 0


@given(st.sampled_from([3, 5, 7]), st.integers(1, 200), st.integers(1, 200),
       st.integers(1, 200), st.integers(1, 200))
def test_rho_multiplicative_on_units(p, a, b, c, d):
    x, y = F(a, b), F(c, d)
    assume(all(val_of(v, p) == 0 for v in (x, y)))
    rx, ry, rxy = gen.rho_reduce(x, p), gen.rho_reduce(y, p), gen.rho_reduce(x * y, p)
    assert rxy.value == rx.value * ry.value % p


def test_disjointness_examples():
    assert gen.disjointness_check(P25, 1, 2, 2).passed
    rep = gen.disjointness_check(P23, 1, 2, 2)
    assert rep.refused and rep.reason.startswith("residue equality")
    assert gen.disjointness_check(P32, 1, F(1, 2), 2).passed


def test_conjugations():
    assert all(r.passed for r in gen.conjugation_examples())


@pytest.mark.parametrize("p", [3, 5, 7])
@pytest.mark.parametrize("lam", [F(1), F(2), F(-1, 2), F(9)])
def test_fixed_point_multiplier(p, lam):
    assert gen.fixed_point_multiplier(p, lam) == F(2 - p, p)
