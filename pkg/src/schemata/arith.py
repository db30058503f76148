"""Linear index expressions ``a*n + b`` over the naturals."""

from __future__ import annotations

import re
from dataclasses import dataclass


@dataclass(frozen=True, order=True)
class Expr:
    """The expression ``coeff*n + offset``; constants have ``coeff == 0``."""

    coeff: int = 0
    offset: int = 0

    def __post_init__(self):
        if not isinstance(self.coeff, int) or not isinstance(self.offset, int):
            raise TypeError("coefficients must be integers")
        if self.coeff < 0 or self.offset < 0:
            raise ValueError(f"negative coefficient in {self.coeff}*n+{self.offset}")

    @property
    def is_const(self) -> bool:
        return self.coeff == 0

    def subst(self, b: "Expr") -> "Expr":
        """Replace ``n`` by ``b``."""
        return Expr(self.coeff * b.coeff, self.coeff * b.offset + self.offset)

    def eval(self, N: int) -> int:
        return self.coeff * N + self.offset

    def shift(self, k: int) -> "Expr":
        return Expr(self.coeff, self.offset + k)

    def __str__(self) -> str:
        c, d = self.coeff, self.offset
        if c == 0:
            return str(d)
        head = "n" if c == 1 else f"{c}*n"
        return head if d == 0 else f"{head}+{d}"


N_VAR = Expr(1, 0)
ZERO = Expr(0, 0)


def const(k: int) -> Expr:
    return Expr(0, k)


def max_expr(a: Expr, b: Expr) -> Expr:
    """Componentwise maximum; dominates both arguments at every point."""
    return Expr(max(a.coeff, b.coeff), max(a.offset, b.offset))


_EXPR_RE = re.compile(r"^\s*(?:(\d+)\s*\*\s*)?n\s*(?:\+\s*(\d+))?\s*$|^\s*(\d+)\s*$")


def parse_expr(text: str) -> Expr:
    m = _EXPR_RE.match(text)
    if not m:
        raise ValueError(f"not a linear expression: {text!r}")
    if m.group(3) is not None:
        return Expr(0, int(m.group(3)))
    return Expr(int(m.group(1) or 1), int(m.group(2) or 0))
