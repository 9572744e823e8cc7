"""Rational self-maps of the projective line over Q."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import DomainError, PoleError
from .numberfield import NFElem
from .poly import UPoly, poly_gcd, taylor_shift


@dataclass(frozen=True)
class ProjPoint:
    """A point of P^1(Q), stored as ``(x, 1)`` or as ``(1, 0)`` for infinity."""

    x: Fraction
    y: Fraction

    def __post_init__(self):
        x, y = Fraction(self.x), Fraction(self.y)
        if x == 0 and y == 0:
            raise DomainError("(0, 0) is not a projective point")
        if y == 0:
            x = Fraction(1)
        elif y != 1:
            x, y = x / y, Fraction(1)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @classmethod
    def affine(cls, x) -> "ProjPoint":
        return cls(Fraction(x), Fraction(1))

    @classmethod
    def infinity(cls) -> "ProjPoint":
        return cls(Fraction(1), Fraction(0))

    @classmethod
    def coerce(cls, value) -> "ProjPoint":
        if isinstance(value, ProjPoint):
            return value
        if isinstance(value, str) and value.strip().lower() in ("inf", "infinity", "oo"):
            return cls.infinity()
        return cls.affine(Fraction(value))

    @property
    def is_infinity(self) -> bool:
        return self.y == 0

    @property
    def value(self) -> Fraction:
        if self.is_infinity:
            raise DomainError("infinity has no affine value")
        return self.x

    def __str__(self):
        return "inf" if self.is_infinity else str(self.x)


INFINITY = ProjPoint.infinity()
ZERO = ProjPoint.affine(0)


class RatMap:
    """``num(z)/den(z)`` with coprime numerator and denominator, den monic."""

    __slots__ = ("num", "den")

    def __init__(self, num: UPoly, den: UPoly):
        if num.is_zero() and den.is_zero():
            raise DomainError("numerator and denominator are both zero")
        if den.is_zero():
            raise DomainError("zero denominator")
        g = poly_gcd(num, den)
        if g.degree > 0:
            num, den = num // g, den // g
        scale = 1 / den.lc
        self.num = (num * scale).with_var("z")
        self.den = (den * scale).with_var("z")
        if self.degree < 1:
            raise DomainError("constant maps are not self-maps of degree >= 1")

    @classmethod
    def from_coeffs(cls, num, den) -> "RatMap":
        return cls(UPoly(num, "z"), UPoly(den, "z"))

    @property
    def degree(self) -> int:
        return max(self.num.degree, self.den.degree)

    def __eq__(self, other):
        if not isinstance(other, RatMap):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RatMap(({self.num}) / ({self.den}))"

    def __call__(self, x):
        """Affine evaluation; raises PoleError at a pole."""
        d = self.den(x)
        if d == 0:
            raise PoleError(f"pole at {x}")
        return self.num(x) / d

    def homogeneous_coeffs(self):
        """Coefficient lists of the degree-d homogenizations F(X, Y), G(X, Y)."""
        d = self.degree
        return [self.num[i] for i in range(d + 1)], [self.den[i] for i in range(d + 1)]

    def compose(self, inner: "RatMap") -> "RatMap":
        """``self o inner``."""
        d = self.degree
        p, q = inner.num, inner.den
        ppow = [UPoly.const(1, "z")]
        qpow = [UPoly.const(1, "z")]
        for _ in range(d):
            ppow.append(ppow[-1] * p)
            qpow.append(qpow[-1] * q)
        num = UPoly((), "z")
        den = UPoly((), "z")
        for i in range(d + 1):
            mono = ppow[i] * qpow[d - i]
            if self.num[i]:
                num = num + mono * self.num[i]
            if self.den[i]:
                den = den + mono * self.den[i]
        return RatMap(num, den)

    def iterate(self, n: int) -> "RatMap":
        if n < 1:
            raise DomainError("iterate count must be >= 1")
        out = self
        for _ in range(n - 1):
            out = self.compose(out)
        return out

    def derivative_pair(self) -> tuple[UPoly, UPoly]:
        """Numerator and denominator of f' (unreduced)."""
        n, d = self.num, self.den
        return n.derivative() * d - n * d.derivative(), d * d


def proj_eval(f: RatMap, pt) -> ProjPoint:
    """Exact image of a projective point."""
    pt = ProjPoint.coerce(pt)
    if pt.is_infinity:
        d = f.degree
        return ProjPoint(f.num[d], f.den[d])
    x = pt.x
    return ProjPoint(f.num(x), f.den(x))


def mobius_conjugate(f: RatMap, m: RatMap) -> RatMap:
    """``m^{-1} o f o m`` in lowest terms."""
    if m.degree != 1:
        raise DomainError("conjugating map must be a Mobius transformation (degree 1)")
    a, b = m.num[1], m.num[0]
    c, d = m.den[1], m.den[0]
    inverse = RatMap(UPoly([-b, d], "z"), UPoly([a, -c], "z"))
    return inverse.compose(f.compose(m))


def mobius(a, b, c, d) -> RatMap:
    """The map ``(a z + b) / (c z + d)``."""
    if Fraction(a) * d - Fraction(b) * c == 0:
        raise DomainError("singular Mobius matrix")
    return RatMap(UPoly([b, a], "z"), UPoly([d, c], "z"))


def series_expand(f: RatMap, center, order: int) -> list[Fraction]:
    """Coefficients c_0..c_order of f in the local coordinate ``z - center``."""
    if order < 0:
        raise DomainError("order must be >= 0")
    center = Fraction(center)
    num = taylor_shift(f.num, center)
    den = taylor_shift(f.den, center)
    d0 = den[0]
    if d0 == 0:
        raise PoleError(f"denominator vanishes at {center}")
    out: list[Fraction] = []
    for k in range(order + 1):
        acc = num[k]
        for j in range(1, min(k, den.degree) + 1):
            acc -= den[j] * out[k - j]
        out.append(acc / d0)
    return out


def _eval_at(p: UPoly, x: NFElem) -> NFElem:
    v = p(x)
    return v if isinstance(v, NFElem) else NFElem(v, x.modulus, _checked=True)


def multiplier_at(f: RatMap, point):
    """Derivative of ``f`` at a fixed point.

    ``point`` is a ProjPoint (or rational) or an NFElem.  At infinity the
    multiplier is computed in the coordinate ``w = 1/z``.
    """
    if isinstance(point, NFElem):
        x = point
        n, d = _eval_at(f.num, x), _eval_at(f.den, x)
        if d.is_zero() or n != x * d:
            raise DomainError(f"{point} is not a fixed point")
        dn, dd = f.derivative_pair()
        return _eval_at(dn, x) / _eval_at(dd, x)
    pt = ProjPoint.coerce(point)
    if proj_eval(f, pt) != pt:
        raise DomainError(f"{pt} is not a fixed point")
    if pt.is_infinity:
        inv = mobius(0, 1, 1, 0)
        return multiplier_at(mobius_conjugate(f, inv), ZERO)
    dn, dd = f.derivative_pair()
    return dn(pt.x) / dd(pt.x)
