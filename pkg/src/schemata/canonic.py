"""Canonic clause sets of ground formulas and sequents, and identity proofs."""

from __future__ import annotations

from .clauses import Clause, compose, normalize
from .formula import AND, OR, Atom, Bin, Neg, SchemaError
from .lk import Axiom, Binary, Unary
from .sequent import Sequent


def product_set(x, y) -> frozenset:
    return frozenset(normalize(compose(c, d)) for c in x for d in y)


def left(f) -> frozenset:
    """Clause set of ``f`` occurring as a tracked antecedent formula."""
    if isinstance(f, Atom):
        return frozenset([Clause((f,), ())])
    if isinstance(f, Neg):
        return right(f.sub)
    if isinstance(f, Bin):
        if f.op == AND:
            return product_set(left(f.left), left(f.right))
        if f.op == OR:
            return left(f.left) | left(f.right)
        return right(f.left) | left(f.right)
    raise SchemaError(f"canonic clause sets need ground formulas, got {f}")


def right(f) -> frozenset:
    """Clause set of ``f`` occurring as a tracked succedent formula."""
    if isinstance(f, Atom):
        return frozenset([Clause((), (f,))])
    if isinstance(f, Neg):
        return left(f.sub)
    if isinstance(f, Bin):
        if f.op == AND:
            return right(f.left) | right(f.right)
        if f.op == OR:
            return product_set(right(f.left), right(f.right))
        return product_set(left(f.left), right(f.right))
    raise SchemaError(f"canonic clause sets need ground formulas, got {f}")


def canonic_formula(f) -> frozenset:
    return left(f) | right(f)


def canonic_sequent(s: Sequent) -> frozenset:
    acc = frozenset([Clause()])
    for f in s.ante:
        acc = product_set(acc, left(f))
    for f in s.succ:
        acc = product_set(acc, right(f))
    return acc


def identity_proof(f):
    """A cut-free proof of ``f |- f`` built by structural recursion on ``f``."""
    if isinstance(f, Atom):
        return Axiom(f)
    if isinstance(f, Neg):
        g = f.sub
        return Unary("negl", Unary("xr", Unary("negr", identity_proof(g)), pos=0))
    if isinstance(f, Bin):
        a, b = identity_proof(f.left), identity_proof(f.right)
        if f.op == AND:
            return Binary("andr", Unary("andl1", a, f.right), Unary("andl2", b, f.left))
        if f.op == OR:
            return Binary("orl", Unary("orr1", a, f.right), Unary("orr2", b, f.left))
        return Unary("implr", Unary("xl", Binary("impll", a, b), pos=0))
    raise SchemaError(f"identity proofs need ground formulas, got {f}")
