"""Text grammar for rationals and polynomials.

Literals are integers or ``a/b`` rationals, variables are ``t``, ``z`` and
``u``, operators are ``+ - * ^`` with parentheses; whitespace is ignored.
``^`` takes a non-negative integer literal.  The canonical printer lives in
:func:`padic_lattes.exact.poly.format_poly`.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import ParseError
from .mpoly import MPoly
from .poly import UPoly

VARIABLES = ("t", "u", "z")


def _tokenize(text: str):
    toks = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            k = j
            while k < n and text[k].isspace():
                k += 1
            if k < n and text[k] == "/":
                k += 1
                while k < n and text[k].isspace():
                    k += 1
                m = k
                while m < n and text[m].isdigit():
                    m += 1
                if m == k:
                    raise ParseError("expected denominator digits", k)
                den = int(text[k:m])
                if den == 0:
                    raise ParseError("zero denominator", k)
                toks.append(("num", Fraction(int(text[i:j]), den), i))
                i = m
            else:
                toks.append(("num", Fraction(int(text[i:j])), i))
                i = j
        elif ch in VARIABLES:
            toks.append(("var", ch, i))
            i += 1
        elif ch in "+-*^()":
            toks.append((ch, ch, i))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", i)
    toks.append(("end", None, n))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.pos = 0
        self.seen_vars: set[str] = set()

    def peek(self):
        return self.toks[self.pos]

    def take(self, kind=None):
        tok = self.toks[self.pos]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind!r}", tok[2])
        self.pos += 1
        return tok

    def expr(self):
        node = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            node = node + rhs if op == "+" else node - rhs
        return node

    def term(self):
        node = self.unary()
        while self.peek()[0] == "*":
            self.take()
            node = node * self.unary()
        return node

    def unary(self):
        kind = self.peek()[0]
        if kind == "-":
            self.take()
            return -self.unary()
        if kind == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            tok = self.peek()
            if tok[0] != "num" or tok[1].denominator != 1:
                raise ParseError("expected a non-negative integer exponent", tok[2])
            self.take()
            return base ** int(tok[1])
        return base

    def atom(self):
        kind, value, off = self.peek()
        if kind == "num":
            self.take()
            return MPoly.const(value, VARIABLES)
        if kind == "var":
            self.take()
            self.seen_vars.add(value)
            return MPoly.var(value, VARIABLES)
        if kind == "(":
            self.take()
            node = self.expr()
            self.take(")")
            return node
        raise ParseError("unexpected token" if kind != "end" else "unexpected end of input", off)

    def parse(self):
        node = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError("trailing input", tok[2])
        return node


def parse_mpoly(text: str) -> MPoly:
    """Parse into a polynomial over the variables ``(t, u, z)``."""
    return _Parser(text).parse()


def parse_poly(text: str, default_var: str = "t") -> UPoly:
    """Parse a univariate polynomial; more than one variable is an error."""
    parser = _Parser(text)
    node = parser.parse()
    if len(parser.seen_vars) > 1:
        raise ParseError(f"more than one variable: {sorted(parser.seen_vars)}", 0)
    var = next(iter(parser.seen_vars), default_var)
    i = VARIABLES.index(var)
    coeffs = [Fraction(0)] * (max((e[i] for e in node.terms), default=0) + 1)
    for e, c in node.terms.items():
        coeffs[e[i]] += c
    return UPoly(coeffs, var)


def parse_rat(text: str) -> Fraction:
    """Parse a rational literal such as ``-4/7``."""
    if text is None or not text.strip():
        raise ParseError("empty rational literal", 0)
    node = parse_mpoly(text)
    if any(any(e) for e in node.terms):
        raise ParseError("a rational literal may not contain variables", 0)
    return node.terms.get((0, 0, 0), Fraction(0))


def format_rat(x: Fraction) -> str:
    return str(Fraction(x))
