"""Polynomials in n with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .arith import Expr


class Polynomial:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def const(cls, k) -> "Polynomial":
        return cls([k])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "Polynomial") -> "Polynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return Polynomial(x + y for x, y in zip(a, b))

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        if not self.coeffs or not other.coeffs:
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    def compose_linear(self, e: Expr) -> "Polynomial":
        """``p(coeff*n + offset)``."""
        lin = Polynomial([e.offset, e.coeff])
        acc = Polynomial()
        for c in reversed(self.coeffs):
            acc = acc * lin + Polynomial([c])
        return acc

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Polynomial({[str(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("n" if i == 1 else f"n^{i}")
            if mono and c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(parts)


def interpolate(points) -> Polynomial:
    """Lagrange interpolation through ``(x, y)`` pairs with distinct x."""
    points = [(Fraction(x), Fraction(y)) for x, y in points]
    acc = Polynomial()
    for i, (xi, yi) in enumerate(points):
        basis = Polynomial([1])
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if i != j:
                basis = basis * Polynomial([-xj, 1])
                denom *= xi - xj
        acc = acc + basis * Polynomial([yi / denom])
    return acc


def iterated_sum(k, p: Polynomial) -> Polynomial:
    """The q with q(0) = k and q(n+1) = q(n) + p(n)."""
    d = max(p.degree, 0)
    vals, q = [], Fraction(k)
    for x in range(d + 2):
        vals.append((x, q))
        q += p(x)
    return interpolate(vals)
