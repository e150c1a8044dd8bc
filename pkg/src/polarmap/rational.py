"""Exact univariate polynomial and rational-function arithmetic.

Coefficients are fractions.Fraction, stored in ascending degree order.
Rational functions reduce by exact polynomial gcd and keep a monic
denominator, so coefficient lists are canonical and can be compared
exactly.  Numeric evaluation converts to complex and uses Horner's rule.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ContractViolation


def _trim(coeffs: list[Fraction]) -> tuple[Fraction, ...]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class Poly:
    """Polynomial over the rationals, ascending coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        self.coeffs = _trim([Fraction(c) for c in coeffs])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({list(self.coeffs)})"

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return Poly([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        if self.is_zero() or other.is_zero():
            return Poly([])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    def scale(self, c) -> "Poly":
        c = Fraction(c)
        return Poly([a * c for a in self.coeffs])

    def derivative(self) -> "Poly":
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:])

    def eval(self, z: complex) -> complex:
        out = 0j
        for c in reversed(self.coeffs):
            out = out * z + complex(c)
        return out

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ContractViolation("polynomial division by zero")
        rem = list(self.coeffs)
        den = other.coeffs
        q = [Fraction(0)] * max(0, len(rem) - len(den) + 1)
        inv_lead = 1 / den[-1]
        for k in range(len(rem) - len(den), -1, -1):
            c = rem[k + len(den) - 1] * inv_lead
            q[k] = c
            if c:
                for i, d in enumerate(den):
                    rem[k + i] -= c * d
        return Poly(q), Poly(rem)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor by the Euclidean algorithm."""
    while not b.is_zero():
        _, r = a.divmod(b)
        a, b = b, r
    if a.is_zero():
        return a
    return a.scale(1 / a.coeffs[-1])


ONE = Poly([1])


class Rational:
    """Reduced rational function num/den with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly = ONE, reduce: bool = True):
        if den.is_zero():
            raise ContractViolation("rational function with zero denominator")
        if reduce and not num.is_zero():
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, _ = num.divmod(g)
                den, _ = den.divmod(g)
        if num.is_zero():
            den = ONE
        lead = den.coeffs[-1]
        if lead != 1:
            inv = 1 / lead
            num = num.scale(inv)
            den = den.scale(inv)
        self.num = num
        self.den = den

    def __eq__(self, other):
        return isinstance(other, Rational) and self.num == other.num and self.den == other.den

    def __repr__(self):
        return f"Rational({self.num!r}, {self.den!r})"

    def is_polynomial(self) -> bool:
        return self.den == ONE

    def __add__(self, other: "Rational") -> "Rational":
        return Rational(self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self) -> "Rational":
        return Rational(-self.num, self.den, reduce=False)

    def __sub__(self, other: "Rational") -> "Rational":
        return self + (-other)

    def __mul__(self, other: "Rational") -> "Rational":
        return Rational(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "Rational") -> "Rational":
        if other.num.is_zero():
            raise ContractViolation("division by the zero rational function")
        return Rational(self.num * other.den, self.den * other.num)

    def derivative(self) -> "Rational":
        return Rational(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def eval(self, z: complex) -> complex:
        d = self.den.eval(z)
        if d == 0:
            raise ContractViolation(f"rational function evaluated at a pole {z}")
        return self.num.eval(z) / d

    def jet2(self, z: complex) -> tuple[complex, complex, complex]:
        """Value and first two complex derivatives at z."""
        r1 = self.derivative()
        r2 = r1.derivative()
        return self.eval(z), r1.eval(z), r2.eval(z)


def rational(coeffs: Sequence) -> Rational:
    """Polynomial as a Rational from ascending coefficients."""
    return Rational(Poly(coeffs))
