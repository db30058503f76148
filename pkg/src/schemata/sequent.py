"""Sequents as ordered formula lists, and configurations over them."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .arith import Expr
from .formula import eval_formula, subst_param


@dataclass(frozen=True)
class Sequent:
    ante: tuple = ()
    succ: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "ante", tuple(self.ante))
        object.__setattr__(self, "succ", tuple(self.succ))

    def __str__(self):
        left = ", ".join(map(str, self.ante))
        right = ", ".join(map(str, self.succ))
        return f"{left} |- {right}".strip()

    def __len__(self):
        return len(self.ante) + len(self.succ)


def compose(s: Sequent, t: Sequent) -> Sequent:
    return Sequent(s.ante + t.ante, s.succ + t.succ)


def subsequent(s: Sequent, t: Sequent) -> bool:
    """Multiset inclusion on both sides."""
    return not (Counter(s.ante) - Counter(t.ante)) and not (Counter(s.succ) - Counter(t.succ))


def subst_param_seq(s: Sequent, a: Expr) -> Sequent:
    return Sequent([subst_param(f, a) for f in s.ante], [subst_param(f, a) for f in s.succ])


def eval_sequent(s: Sequent, N: int, env) -> Sequent:
    return Sequent([eval_formula(f, N, env) for f in s.ante],
                   [eval_formula(f, N, env) for f in s.succ])


@dataclass(frozen=True)
class Config:
    """Marks for the positions of a sequent; True means tracked."""

    ante: tuple = ()
    succ: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "ante", tuple(bool(b) for b in self.ante))
        object.__setattr__(self, "succ", tuple(bool(b) for b in self.succ))

    @property
    def key(self) -> str:
        bits = lambda m: "".join("1" if b else "0" for b in m)
        return f"{bits(self.ante)}|{bits(self.succ)}"

    @classmethod
    def from_key(cls, key: str) -> "Config":
        if key.count("|") != 1 or set(key) - set("01|"):
            raise ValueError(f"bad configuration key {key!r}")
        a, s = key.split("|")
        return cls([c == "1" for c in a], [c == "1" for c in s])

    @classmethod
    def empty(cls, s: Sequent) -> "Config":
        return cls([False] * len(s.ante), [False] * len(s.succ))

    @classmethod
    def full(cls, s: Sequent) -> "Config":
        return cls([True] * len(s.ante), [True] * len(s.succ))

    def fits(self, s: Sequent) -> bool:
        return len(self.ante) == len(s.ante) and len(self.succ) == len(s.succ)

    def __str__(self):
        return self.key


def apply_config(s: Sequent, c: Config) -> Sequent:
    """Keep the tracked positions, in order."""
    if not c.fits(s):
        raise ValueError(f"configuration {c.key} does not fit sequent {s}")
    return Sequent([f for f, m in zip(s.ante, c.ante) if m],
                   [f for f, m in zip(s.succ, c.succ) if m])
