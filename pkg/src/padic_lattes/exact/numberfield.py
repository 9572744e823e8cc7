"""Arithmetic in Q[x]/(m(x)) for a monic integer minimal polynomial m."""

from __future__ import annotations

from fractions import Fraction

from ..errors import DomainError
from .poly import UPoly, poly_xgcd


def _check_modulus(m: UPoly) -> None:
    if m.degree < 1 or m.lc != 1 or not m.is_integral():
        raise DomainError("modulus must be a monic integer polynomial of degree >= 1")
    if m.degree <= 3:
        # irreducible over Q iff no rational root in this range; rational roots
        # of a monic integer polynomial are integer divisors of m(0)
        c0 = abs(m[0].numerator)
        if c0 == 0:
            raise DomainError("modulus has the root 0")
        for d in range(1, c0 + 1) if c0 < 10**6 else ():
            if c0 % d == 0 and (m(Fraction(d)) == 0 or m(Fraction(-d)) == 0):
                raise DomainError(f"modulus {m} is reducible over Q")


class NFElem:
    """Element of a number field given by its reduced representative."""

    __slots__ = ("rep", "modulus")

    def __init__(self, rep, modulus: UPoly, _checked: bool = False):
        if not _checked:
            _check_modulus(modulus)
        if not isinstance(rep, UPoly):
            rep = UPoly.const(rep, modulus.var)
        self.rep = rep % modulus if rep.degree >= modulus.degree else rep.with_var(modulus.var)
        self.modulus = modulus

    @classmethod
    def generator(cls, modulus: UPoly) -> "NFElem":
        return cls(UPoly.gen(modulus.var), modulus)

    def _wrap(self, rep: UPoly) -> "NFElem":
        return NFElem(rep, self.modulus, _checked=True)

    def _lift(self, other):
        if isinstance(other, NFElem):
            if other.modulus != self.modulus:
                raise DomainError("elements of different number fields")
            return other.rep
        if isinstance(other, (int, Fraction)):
            return UPoly.const(other, self.modulus.var)
        return None

    def __add__(self, other):
        o = self._lift(other)
        return NotImplemented if o is None else self._wrap(self.rep + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is None else self._wrap(self.rep - o)

    def __rsub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is None else self._wrap(o - self.rep)

    def __neg__(self):
        return self._wrap(-self.rep)

    def __mul__(self, other):
        o = self._lift(other)
        return NotImplemented if o is None else self._wrap(self.rep * o)

    __rmul__ = __mul__

    def inverse(self) -> "NFElem":
        if self.rep.is_zero():
            raise ZeroDivisionError("inverse of zero in a number field")
        g, s, _ = poly_xgcd(self.rep, self.modulus)
        if g.degree != 0:
            raise DomainError("element is not invertible; modulus is reducible")
        return self._wrap(s)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * self._wrap(o).inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self._wrap(o) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self._wrap(UPoly.const(1, self.modulus.var))
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def is_zero(self) -> bool:
        return self.rep.is_zero()

    def rational_value(self):
        """The element as a Fraction if it lies in Q, else None."""
        return self.rep[0] if self.rep.degree <= 0 else None

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.rep == o

    def __hash__(self):
        return hash(("NFElem", self.rep, self.modulus))

    def __repr__(self):
        return f"NFElem({self.rep} mod {self.modulus})"
