"""Polynomials over a prime field F_p."""

from __future__ import annotations

from fractions import Fraction

from ..errors import DomainError
from .poly import UPoly


class FpPoly:
    __slots__ = ("prime", "coeffs")

    def __init__(self, prime: int, coeffs=()):
        self.prime = prime
        out = [int(c) % prime for c in coeffs]
        while out and out[-1] == 0:
            out.pop()
        self.coeffs = tuple(out)

    @classmethod
    def reduce(cls, p: UPoly, prime: int) -> "FpPoly":
        """Reduction of a polynomial whose denominators are prime to ``prime``."""
        out = []
        for c in p.coeffs:
            c = Fraction(c)
            if c.denominator % prime == 0:
                raise DomainError(f"coefficient {c} is not {prime}-integral")
            out.append(c.numerator * pow(c.denominator, -1, prime))
        return cls(prime, out)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def _same(self, other):
        if isinstance(other, int):
            return FpPoly(self.prime, [other])
        if not isinstance(other, FpPoly) or other.prime != self.prime:
            raise DomainError("operands live over different prime fields")
        return other

    def __add__(self, other):
        other = self._same(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return FpPoly(self.prime, [x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return FpPoly(self.prime, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._same(other))

    def __mul__(self, other):
        other = self._same(other)
        if not self.coeffs or not other.coeffs:
            return FpPoly(self.prime)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return FpPoly(self.prime, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = FpPoly(self.prime, [1])
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __divmod__(self, other):
        other = self._same(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        p = self.prime
        rem = list(self.coeffs)
        db = other.degree
        inv = pow(other.coeffs[-1], -1, p)
        quo = [0] * max(len(rem) - db, 0)
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k] * inv % p
            if c:
                quo[k - db] = c
                for j in range(db + 1):
                    rem[k - db + j] = (rem[k - db + j] - c * other.coeffs[j]) % p
        return FpPoly(p, quo), FpPoly(p, rem[:db])

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "FpPoly":
        if self.is_zero():
            raise DomainError("zero polynomial has no monic normalization")
        inv = pow(self.coeffs[-1], -1, self.prime)
        return FpPoly(self.prime, [c * inv for c in self.coeffs])

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.prime
        return acc

    def __eq__(self, other):
        if isinstance(other, int):
            other = FpPoly(self.prime, [other])
        if not isinstance(other, FpPoly):
            return NotImplemented
        return self.prime == other.prime and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.prime, self.coeffs))

    def __repr__(self):
        return f"FpPoly(p={self.prime}, {list(self.coeffs)})"


def fp_gcd(a: FpPoly, b: FpPoly) -> FpPoly:
    """Monic gcd over F_p."""
    if a.is_zero() and b.is_zero():
        raise DomainError("gcd of two zero polynomials is undefined")
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()
