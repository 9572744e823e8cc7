"""Sparse multivariate polynomials over Q and equality of rational functions.

A polynomial maps exponent tuples (one entry per variable, in the order of
``variables``) to nonzero ``Fraction`` coefficients.  The two-variable case
is what the identity checks mostly need, so ``BiPoly`` is provided as a
constructor for that shape; three-variable identities such as the
isotriviality relation use the same class directly.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from ..errors import DomainError
from .poly import UPoly


class MPoly:
    __slots__ = ("variables", "terms")

    def __init__(self, variables: Sequence[str], terms: Mapping | None = None):
        self.variables = tuple(variables)
        clean = {}
        for exps, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                exps = tuple(exps)
                if len(exps) != len(self.variables):
                    raise DomainError("exponent tuple does not match variables")
                clean[exps] = clean.get(exps, 0) + c
        self.terms = {e: c for e, c in clean.items() if c}

    @classmethod
    def const(cls, c, variables) -> "MPoly":
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def var(cls, name: str, variables) -> "MPoly":
        variables = tuple(variables)
        exps = [0] * len(variables)
        exps[variables.index(name)] = 1
        return cls(variables, {tuple(exps): 1})

    @classmethod
    def from_upoly(cls, p: UPoly, name: str, variables) -> "MPoly":
        variables = tuple(variables)
        i = variables.index(name)
        terms = {}
        for k, c in enumerate(p.coeffs):
            if c:
                exps = [0] * len(variables)
                exps[i] = k
                terms[tuple(exps)] = c
        return cls(variables, terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degree_in(self, name: str) -> int:
        i = self.variables.index(name)
        return max((e[i] for e in self.terms), default=-1)

    def _check(self, other: "MPoly"):
        if other.variables != self.variables:
            raise DomainError(f"variable mismatch {self.variables} vs {other.variables}")

    def _lift(self, other):
        if isinstance(other, MPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return MPoly.const(other, self.variables)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return MPoly(self.variables, out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MPoly(self.variables, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = MPoly.const(1, self.variables)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(other, self.variables)
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "MPoly(0)"
        parts = []
        for e in sorted(self.terms, reverse=True):
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.variables, e) if k
            )
            parts.append(f"{self.terms[e]}" + (f"*{mono}" if mono else ""))
        return "MPoly(" + " + ".join(parts) + ")"

    def substitute(self, mapping: Mapping[str, "MPoly"]) -> "MPoly":
        """Replace variables by polynomials (over the same variable tuple)."""
        powers: dict = {}
        result = MPoly(self.variables)
        for e, c in self.terms.items():
            term = MPoly.const(c, self.variables)
            for name, k in zip(self.variables, e):
                if not k:
                    continue
                if name in mapping:
                    key = (name, k)
                    if key not in powers:
                        powers[key] = mapping[name] ** k
                    term = term * powers[key]
                else:
                    term = term * MPoly.var(name, self.variables) ** k
            result = result + term
        return result

    def substitute_rational(self, mapping: Mapping[str, tuple]) -> tuple["MPoly", "MPoly"]:
        """Substitute ``name -> num/den`` and return ``(numerator, denominator)``.

        The denominator is the product of ``den**deg`` over substituted
        variables, so numerators of two polynomials substituted with the same
        mapping are directly comparable only after cross-multiplication.
        """
        num_map = {}
        den = MPoly.const(1, self.variables)
        for name, (n, d) in mapping.items():
            k = self.degree_in(name)
            if k <= 0:
                continue
            den = den * d ** k
            num_map[name] = (n, d, k)
        result = MPoly(self.variables)
        cache: dict = {}

        def pw(poly, key, k):
            if (key, k) not in cache:
                cache[(key, k)] = poly ** k
            return cache[(key, k)]

        for e, c in self.terms.items():
            term = MPoly.const(c, self.variables)
            for name, k in zip(self.variables, e):
                if name in num_map:
                    n, d, top = num_map[name]
                    if k:
                        term = term * pw(n, ("n", name), k)
                    if top - k:
                        term = term * pw(d, ("d", name), top - k)
                elif k:
                    term = term * MPoly.var(name, self.variables) ** k
            result = result + term
        return result, den


def BiPoly(variables: Sequence[str] = ("u", "z"), terms: Mapping | None = None) -> MPoly:
    """Two-variable polynomial keyed by ``(exp_u, exp_z)``."""
    if len(tuple(variables)) != 2:
        raise DomainError("BiPoly takes exactly two variables")
    return MPoly(variables, terms)


def ratfun_equal(lhs: tuple[MPoly, MPoly], rhs: tuple[MPoly, MPoly]) -> bool:
    """Equality of ``lhs[0]/lhs[1]`` and ``rhs[0]/rhs[1]`` as rational functions."""
    ln, ld = lhs
    rn, rd = rhs
    if ld.is_zero() or rd.is_zero():
        raise DomainError("zero denominator polynomial")
    return ln * rd == rn * ld


def substitute_ratfun(num: MPoly, den: MPoly, mapping: Mapping[str, tuple]) -> tuple[MPoly, MPoly]:
    """Compose the rational function ``num/den`` with ``name -> n/d`` substitutions."""
    n_num, n_den = num.substitute_rational(mapping)
    d_num, d_den = den.substitute_rational(mapping)
    return n_num * d_den, d_num * n_den
