"""Dense univariate polynomials with exact rational coefficients.

Coefficients are stored lowest degree first as a tuple of ``Fraction``.
Instances are immutable.  The variable name is a display tag only and does
not take part in equality or hashing.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence

import sympy

from ..errors import DomainError

Rat = Fraction


def _strip(coeffs: list) -> tuple:
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


class UPoly:
    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable = (), var: str = "t"):
        object.__setattr__(self, "coeffs", _strip([Fraction(c) for c in coeffs]))
        object.__setattr__(self, "var", var)

    def __setattr__(self, name, value):
        raise AttributeError("UPoly is immutable")

    @classmethod
    def _raw(cls, coeffs: tuple, var: str) -> "UPoly":
        # trusted constructor: coeffs already Fractions with no trailing zeros
        obj = object.__new__(cls)
        object.__setattr__(obj, "coeffs", coeffs)
        object.__setattr__(obj, "var", var)
        return obj

    @classmethod
    def const(cls, c, var: str = "t") -> "UPoly":
        return cls([c], var)

    @classmethod
    def gen(cls, var: str = "t") -> "UPoly":
        return cls([0, 1], var)

    @classmethod
    def monomial(cls, c, k: int, var: str = "t") -> "UPoly":
        return cls([0] * k + [c], var)

    # -- basic queries -------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial reported as -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> Fraction:
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[-1]

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    @property
    def ord0(self) -> int:
        """Multiplicity of the root 0 (t-adic order); -1 for the zero polynomial."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return -1

    def with_var(self, var: str) -> "UPoly":
        return UPoly._raw(self.coeffs, var)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    # -- arithmetic ----------------------------------------------------
    def _coerce(self, other) -> "UPoly":
        if isinstance(other, UPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return UPoly.const(other, self.var)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UPoly._raw(_strip(out), self.var)

    __radd__ = __add__

    def __neg__(self):
        return UPoly._raw(tuple(-c for c in self.coeffs), self.var)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return UPoly._raw((), self.var)
            return UPoly._raw(tuple(c * other for c in self.coeffs), self.var)
        if not isinstance(other, UPoly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return UPoly._raw((), self.var)
        na, da = integer_form(self)
        nb, db = integer_form(other)
        prod = _int_convolve(na, nb)
        den = da * db
        return UPoly._raw(tuple(Fraction(c, den) for c in prod), self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise DomainError("negative polynomial power")
        result = UPoly.const(1, self.var)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, c):
        if isinstance(c, (int, Fraction)):
            if c == 0:
                raise ZeroDivisionError("polynomial divided by zero scalar")
            return self * (Fraction(1) / Fraction(c))
        return NotImplemented

    def __divmod__(self, other: "UPoly"):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        if len(rem) - 1 < dq:
            return UPoly._raw((), self.var), self
        inv_lc = 1 / other.lc
        quo = [Fraction(0)] * (len(rem) - dq)
        oc = other.coeffs
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] * inv_lc
            if c:
                quo[k - dq] = c
                for j in range(dq + 1):
                    rem[k - dq + j] -= c * oc[j]
        return UPoly._raw(_strip(quo), self.var), UPoly._raw(_strip(rem[:dq]), self.var)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: "UPoly") -> "UPoly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise DomainError("polynomial division is not exact")
        return q

    def divides(self, other: "UPoly") -> bool:
        return (other % self).is_zero()

    # -- evaluation and calculus ---------------------------------------
    def __call__(self, x):
        """Horner evaluation; works for rationals, UPoly (composition) and
        anything else supporting ``*`` and ``+`` with rationals."""
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * x + c
        if acc is None:
            return Fraction(0)
        if isinstance(x, UPoly) and not isinstance(acc, UPoly):
            return UPoly.const(acc, x.var)
        return acc

    def derivative(self) -> "UPoly":
        return UPoly._raw(_strip([i * c for i, c in enumerate(self.coeffs)][1:]), self.var)

    def monic(self) -> "UPoly":
        if self.is_zero():
            raise DomainError("zero polynomial has no monic normalization")
        return self * (1 / self.lc)

    def shift_out_root_zero(self) -> "UPoly":
        """Divide out the largest power of the variable."""
        k = self.ord0
        if k <= 0:
            return self
        return UPoly._raw(self.coeffs[k:], self.var)

    # -- comparison and display ----------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = UPoly.const(other)
        if not isinstance(other, UPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("UPoly", self.coeffs))

    def __repr__(self):
        return f"UPoly({self})"

    def __str__(self):
        return format_poly(self)


def format_coefficient_term(c: Fraction, mono: str) -> str:
    """Render ``|c|*mono`` without sign; ``mono`` empty means constant."""
    a = abs(c)
    if not mono:
        return str(a)
    if a == 1:
        return mono
    return f"{a}*{mono}"


def format_poly(p: UPoly) -> str:
    """Canonical text: descending powers with explicit signs, e.g. ``4*t^2 - 8*t + 1``."""
    if p.is_zero():
        return "0"
    parts = []
    for k in range(p.degree, -1, -1):
        c = p.coeffs[k]
        if not c:
            continue
        mono = "" if k == 0 else (p.var if k == 1 else f"{p.var}^{k}")
        body = format_coefficient_term(c, mono)
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


# ---------------------------------------------------------------------------
# integer helpers


def integer_form(p: UPoly) -> tuple[list[int], int]:
    """Return ``(ints, den)`` with ``p == ints / den`` and ``den > 0`` minimal."""
    den = reduce(lcm, (c.denominator for c in p.coeffs), 1)
    return [c.numerator * (den // c.denominator) for c in p.coeffs], den


def primitive_part(p: UPoly) -> list[int]:
    """Integer primitive part with positive leading coefficient."""
    ints, _ = integer_form(p)
    g = reduce(gcd, ints, 0)
    if g == 0:
        return []
    if ints[-1] < 0:
        g = -g
    return [c // g for c in ints]


def _int_convolve(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = [0] * (len(a) + len(b) - 1)
    for j, bj in enumerate(b):
        if bj:
            for i, ai in enumerate(a):
                out[i + j] += ai * bj
    return out


def _int_divmod_exact(num: list[int], den: list[int]) -> list[int] | None:
    """Quotient of integer polynomials when the division is exact over Z."""
    rem = list(num)
    dq = len(den) - 1
    if len(rem) - 1 < dq:
        return None if any(rem) else []
    lcd = den[-1]
    quo = [0] * (len(rem) - dq)
    for k in range(len(rem) - 1, dq - 1, -1):
        c = rem[k]
        if c:
            q, r = divmod(c, lcd)
            if r:
                return None
            quo[k - dq] = q
            for j in range(dq + 1):
                rem[k - dq + j] -= q * den[j]
    if any(rem[:dq]):
        return None
    return quo


# ---------------------------------------------------------------------------
# gcd


def _modp_monic_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a = [x % p for x in a]
    b = [x % p for x in b]
    while a and a[-1] == 0:
        a.pop()
    while b and b[-1] == 0:
        b.pop()
    while b:
        inv = pow(b[-1], -1, p)
        db = len(b) - 1
        while len(a) - 1 >= db:
            c = a[-1] * inv % p
            if c:
                off = len(a) - 1 - db
                for j in range(db + 1):
                    a[off + j] = (a[off + j] - c * b[j]) % p
            a.pop()
            while a and a[-1] == 0:
                a.pop()
        a, b = b, a
    if not a:
        return []
    inv = pow(a[-1], -1, p)
    return [x * inv % p for x in a]


_PRIME_START = 2**61


def _primes():
    p = _PRIME_START
    while True:
        p = sympy.prevprime(p)
        yield p


def _zz_gcd(f: list[int], g: list[int]) -> list[int]:
    """Primitive gcd of two nonzero primitive integer polynomials.

    Multi-modular (Brown): the gcd modulo a prime not dividing either leading
    coefficient has degree at least that of the true gcd, with equality for
    all but finitely many primes.  Candidates are lifted by CRT and accepted
    only after exact division over Z, so the returned value is exact.
    """
    if len(f) == 1 or len(g) == 1:
        return [1]
    gamma = gcd(f[-1], g[-1])
    min_deg = min(len(f), len(g)) - 1
    modulus = 1
    acc: list[int] | None = None
    acc_deg = None
    for p in _primes():
        if f[-1] % p == 0 or g[-1] % p == 0:
            continue
        h = _modp_monic_gcd(f, g, p)
        d = len(h) - 1
        if d == 0:
            return [1]
        if d > min_deg:
            continue
        h = [x * gamma % p for x in h]
        if acc is None or d < acc_deg:
            acc, acc_deg, modulus = h, d, p
        elif d > acc_deg:
            continue  # unlucky prime
        else:
            acc = [_crt(x, modulus, y, p) for x, y in zip(acc, h)]
            modulus *= p
        half = modulus // 2
        cand = [x - modulus if x > half else x for x in acc]
        cg = reduce(gcd, cand, 0)
        cand = [x // cg for x in cand]
        if cand[-1] < 0:
            cand = [-x for x in cand]
        if _int_divmod_exact(f, cand) is not None and _int_divmod_exact(g, cand) is not None:
            return cand


def _crt(x: int, m: int, y: int, p: int) -> int:
    t = (y - x) * pow(m, -1, p) % p
    return x + m * t


def poly_gcd(p: UPoly, q: UPoly) -> UPoly:
    """Monic greatest common divisor over the rationals."""
    if p.is_zero() and q.is_zero():
        raise DomainError("gcd of two zero polynomials is undefined")
    var = p.var if not p.is_zero() else q.var
    if p.is_zero():
        return q.monic().with_var(var)
    if q.is_zero():
        return p.monic().with_var(var)
    h = _zz_gcd(primitive_part(p), primitive_part(q))
    return UPoly(h, var).monic()


def poly_xgcd(a: UPoly, b: UPoly) -> tuple[UPoly, UPoly, UPoly]:
    """Extended Euclid over Q: ``(g, s, t)`` with ``s*a + t*b == g`` monic.

    Plain remainder sequence; meant for the small moduli of number fields.
    """
    if a.is_zero() and b.is_zero():
        raise DomainError("xgcd of two zero polynomials is undefined")
    one, zero = UPoly.const(1, a.var), UPoly((), a.var)
    r0, r1, s0, s1, t0, t1 = a, b, one, zero, zero, one
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    inv = 1 / r0.lc
    return r0 * inv, s0 * inv, t0 * inv


def taylor_shift(p: UPoly, c) -> UPoly:
    """Return ``q`` with ``q(s) == p(s + c)``."""
    c = Fraction(c)
    if c == 0 or p.degree < 1:
        return p
    coeffs = list(p.coeffs)
    n = len(coeffs)
    # repeated synthetic division by (s - c) gives the shifted coefficients
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            coeffs[j] += c * coeffs[j + 1]
    return UPoly._raw(_strip(coeffs), p.var)


def poly_from_roots(roots: Iterable, var: str = "t", scale=1) -> UPoly:
    out = UPoly.const(scale, var)
    for r in roots:
        out = out * UPoly([-Fraction(r), 1], var)
    return out
