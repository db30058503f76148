"""Clauses (sequents of atoms) and canonical clause sets."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .arith import const
from .formula import Atom, atom_key


@dataclass(frozen=True)
class Clause:
    ante: tuple = ()
    succ: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "ante", tuple(self.ante))
        object.__setattr__(self, "succ", tuple(self.succ))
        for a in self.ante + self.succ:
            if not isinstance(a, Atom):
                raise TypeError(f"clauses contain atoms only, got {a}")

    def __str__(self):
        left = ", ".join(map(str, self.ante))
        right = ", ".join(map(str, self.succ))
        return f"{left} |- {right}".strip()

    def __repr__(self):
        return f"Clause({self})"

    def atoms(self):
        return self.ante + self.succ


EMPTY = Clause()


def _norm_side(atoms) -> tuple:
    return tuple(sorted(set(atoms), key=atom_key))


def normalize(c: Clause) -> Clause:
    """Sort each side by (symbol, index) and drop duplicates."""
    return Clause(_norm_side(c.ante), _norm_side(c.succ))


def compose(c: Clause, d: Clause) -> Clause:
    return Clause(c.ante + d.ante, c.succ + d.succ)


def is_tautology(c: Clause) -> bool:
    return bool(set(c.ante) & set(c.succ))


def subsumes(c: Clause, d: Clause) -> bool:
    """Per-side set inclusion: ``c`` is at least as strong as ``d``."""
    return set(c.ante) <= set(d.ante) and set(c.succ) <= set(d.succ)


def resolvent(c: Clause, d: Clause, a: Atom) -> Clause:
    """Drop every ``a`` from the succedent of ``c`` and the antecedent of ``d``."""
    return normalize(Clause(c.ante + tuple(x for x in d.ante if x != a),
                            tuple(x for x in c.succ if x != a) + d.succ))


def clause_key(c: Clause):
    return (tuple(map(atom_key, c.ante)), tuple(map(atom_key, c.succ)))


def clause_set(cs: Iterable[Clause]) -> frozenset:
    return frozenset(normalize(c) for c in cs)


def sorted_clauses(cs: Iterable[Clause]) -> list:
    return sorted(cs, key=clause_key)


def render_set(cs: Iterable[Clause]) -> str:
    return "{" + "; ".join(str(c) for c in sorted_clauses(cs)) + "}"


def eval_clause(c: Clause, N: int) -> Clause:
    ev = lambda a: Atom(a.symbol, const(a.index.eval(N)))
    return Clause([ev(a) for a in c.ante], [ev(a) for a in c.succ])


def mirror(c: Clause) -> Clause:
    """Swap the two sides."""
    return Clause(c.succ, c.ante)


def distinct_atoms(cs: Iterable[Clause]) -> list:
    seen = set()
    for c in cs:
        seen.update(c.ante)
        seen.update(c.succ)
    return sorted(seen, key=atom_key)
