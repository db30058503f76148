"""Propositional schemata with indexed atoms and recursively defined symbols."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .arith import Expr, ZERO, const


AND, OR, IMPL = "/\\", "\\/", "->"
OPS = (AND, OR, IMPL)


class SchemaError(Exception):
    """Raised for ill-formed schemata or failed evaluation."""


@dataclass(frozen=True, order=True)
class Atom:
    symbol: str
    index: Expr

    def __str__(self):
        return f"{self.symbol}({self.index})"


@dataclass(frozen=True)
class PropVar:
    def __str__(self):
        return "X"


@dataclass(frozen=True)
class Neg:
    sub: "Formula"

    def __str__(self):
        return "~" + _wrap(self.sub)


@dataclass(frozen=True)
class Bin:
    op: str
    left: "Formula"
    right: "Formula"

    def __post_init__(self):
        if self.op not in OPS:
            raise ValueError(f"unknown connective {self.op!r}")

    def __str__(self):
        return f"{_wrap(self.left)} {self.op} {_wrap(self.right)}"


@dataclass(frozen=True)
class DefAtom:
    """Occurrence ``P(a)`` of a symbol defined by primitive recursion."""

    symbol: str
    index: Expr

    def __str__(self):
        return f"{self.symbol}({self.index})"


Formula = Union[Atom, PropVar, Neg, Bin, DefAtom]


def _wrap(f: Formula) -> str:
    return f"({f})" if isinstance(f, Bin) else str(f)


def atom(symbol: str, index) -> Atom:
    return Atom(symbol, const(index) if isinstance(index, int) else index)


def conj(a, b):
    return Bin(AND, a, b)


def disj(a, b):
    return Bin(OR, a, b)


def impl(a, b):
    return Bin(IMPL, a, b)


def atom_key(a: Atom):
    return (a.symbol, a.index.coeff, a.index.offset)


@dataclass(frozen=True)
class PropDef:
    name: str
    base: Formula
    rec: Formula


def walk(f: Formula):
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        if isinstance(g, Neg):
            stack.append(g.sub)
        elif isinstance(g, Bin):
            stack.append(g.right)
            stack.append(g.left)


def is_ground(f: Formula) -> bool:
    for g in walk(f):
        if isinstance(g, (PropVar, DefAtom)):
            return False
        if isinstance(g, Atom) and not g.index.is_const:
            return False
    return True


def atoms_of(f: Formula):
    return [g for g in walk(f) if isinstance(g, Atom)]


def mentions_n(f: Formula) -> bool:
    return any(isinstance(g, (Atom, DefAtom)) and not g.index.is_const for g in walk(f))


def _map(f: Formula, leaf) -> Formula:
    if isinstance(f, Neg):
        return Neg(_map(f.sub, leaf))
    if isinstance(f, Bin):
        return Bin(f.op, _map(f.left, leaf), _map(f.right, leaf))
    return leaf(f)


def subst_propvar(f: Formula, g: Formula) -> Formula:
    """Replace every occurrence of the schema variable by ``g``."""
    return _map(f, lambda x: g if isinstance(x, PropVar) else x)


def subst_param(f: Formula, a: Expr) -> Formula:
    """Replace ``n`` by ``a`` in every index."""

    def leaf(x):
        if isinstance(x, Atom):
            return Atom(x.symbol, x.index.subst(a))
        if isinstance(x, DefAtom):
            return DefAtom(x.symbol, x.index.subst(a))
        return x

    return _map(f, leaf)


def lookup(env, name: str) -> PropDef:
    try:
        return env.formulas[name]
    except KeyError:
        raise SchemaError(f"undefined formula symbol {name!r}") from None


def eval_formula(f: Formula, N: int, env, x: Optional[Formula] = None) -> Formula:
    """Ground instance of ``f`` at ``n = N``; ``x`` is the value of the schema variable."""
    if isinstance(f, Atom):
        return Atom(f.symbol, const(f.index.eval(N)))
    if isinstance(f, Neg):
        return Neg(eval_formula(f.sub, N, env, x))
    if isinstance(f, Bin):
        return Bin(f.op, eval_formula(f.left, N, env, x), eval_formula(f.right, N, env, x))
    if isinstance(f, DefAtom):
        return formula_seq(f.symbol, f.index.eval(N), env)
    if x is None:
        raise SchemaError("schema variable X cannot be evaluated")
    return x


def formula_seq(name: str, k: int, env) -> Formula:
    """The k-th member of the sequence defined by ``name``."""
    d = lookup(env, name)
    cache = env.cache("formula")
    if (name, k) in cache:
        return cache[name, k]
    start = k
    while start > 0 and (name, start - 1) not in cache:
        start -= 1
    if start == 0:
        cache[name, 0] = eval_formula(d.base, 0, env)
        start = 1
    for b in range(start, k + 1):
        cache[name, b] = eval_formula(d.rec, b - 1, env, cache[name, b - 1])
    return cache[name, k]


def def_step(f: Formula, env) -> Optional[Formula]:
    """One unfolding of a defined atom, or None if no rule applies."""
    if not isinstance(f, DefAtom):
        return None
    d = lookup(env, f.symbol)
    if f.index == ZERO:
        return d.base
    if f.index.offset >= 1:
        a = Expr(f.index.coeff, f.index.offset - 1)
        return subst_propvar(subst_param(d.rec, a), DefAtom(f.symbol, a))
    return None


def fold_step(f: Formula, env) -> list:
    """All defined atoms whose one-step unfolding is ``f``."""
    found = []
    for d in env.formulas.values():
        if f == d.base:
            found.append(DefAtom(d.name, ZERO))
        cons = []
        if not _collect(d.rec, f, d.name, cons):
            continue
        a = _solve(cons)
        if a is None:
            continue
        cand = DefAtom(d.name, Expr(a[0], a[1] + 1))
        if def_step(cand, env) == f:
            found.append(cand)
    return found


def _collect(pat, f, name, cons) -> bool:
    if isinstance(pat, PropVar):
        if isinstance(f, DefAtom) and f.symbol == name:
            cons.append((None, f.index))
            return True
        return False
    if type(pat) is not type(f):
        return False
    if isinstance(pat, Neg):
        return _collect(pat.sub, f.sub, name, cons)
    if isinstance(pat, Bin):
        return pat.op == f.op and _collect(pat.left, f.left, name, cons) and _collect(
            pat.right, f.right, name, cons)
    if pat.symbol != f.symbol:
        return False
    cons.append((pat.index, f.index))
    return True


def _solve(cons):
    for p, t in cons:
        if p is None:
            return (t.coeff, t.offset)
        c, d = p.coeff, p.offset
        if c > 0:
            if t.coeff % c or t.offset < d or (t.offset - d) % c:
                return None
            return (t.coeff // c, (t.offset - d) // c)
    return None


def def_related(f: Formula, g: Formula, env) -> bool:
    """Reflexive-symmetric one-step definitional equivalence."""
    return f == g or def_step(f, env) == g or def_step(g, env) == f
