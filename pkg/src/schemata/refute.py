"""Saturation to top clause sets and two-step refutation schemata."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Optional

from .arith import Expr, N_VAR, ZERO, const, max_expr
from .clauses import (Clause, distinct_atoms, is_tautology, normalize,
                      sorted_clauses, subsumes)
from .clauseterm import Leaf, Plus, Term, TermVar, Times, clause_set_at, members
from .env import DefEnv
from .formula import Atom, SchemaError, atom_key
from .resolution import (CComp, CLit, CVar, DeductionError, DLeaf, DWeak, RApp, ResDef,
                         RLeaf, RRes, check_deduction, eval_res, map_leaves)

TOP_LIMIT = 20


def atoms_of(clauses: Iterable[Clause]) -> Counter:
    """Multiset of atom occurrences over both sides of every clause."""
    out = Counter()
    for c in clauses:
        out.update(c.ante)
        out.update(c.succ)
    return out


def top_clause_set(atoms, limit: int = TOP_LIMIT) -> frozenset:
    """Every clause that puts each atom on exactly one side."""
    atoms = sorted(set(atoms), key=atom_key)
    if len(atoms) > limit:
        raise SchemaError(f"top clause set over {len(atoms)} atoms exceeds the limit {limit}")
    out = set()
    for sides in product((0, 1), repeat=len(atoms)):
        ante = [a for a, s in zip(atoms, sides) if s == 0]
        succ = [a for a, s in zip(atoms, sides) if s == 1]
        out.add(Clause(ante, succ))
    return frozenset(out)


def saturate(clauses: Iterable[Clause], limit: int = TOP_LIMIT) -> list:
    """Weakening terms ``w(C; D)`` for C in the set and D in its top clause set."""
    clauses = sorted_clauses({normalize(c) for c in clauses})
    top = sorted_clauses(top_clause_set(distinct_atoms(clauses), limit))
    return [DWeak(DLeaf(c), d) for c in clauses for d in top]


# --------------------------------------------------------- atom set schemata

@dataclass(frozen=True)
class AtomSetSchema:
    """Per-symbol upper index bounds; symbol P with bound b stands for P(0..b)."""

    bounds: tuple = ()

    @classmethod
    def of(cls, mapping: dict) -> "AtomSetSchema":
        return cls(tuple(sorted(mapping.items())))

    def as_dict(self) -> dict:
        return dict(self.bounds)

    def eval(self, N: int) -> list:
        return [Atom(s, const(i)) for s, b in self.bounds for i in range(b.eval(N) + 1)]

    def __str__(self):
        return "{" + ", ".join(f"<{s}, {b}>" for s, b in self.bounds) + "}"


def _merge(*ds) -> dict:
    out = {}
    for d in ds:
        for s, e in d.items():
            out[s] = max_expr(out[s], e) if s in out else e
    return out


class _Bounds:
    def __init__(self, env, literal: bool):
        self.env = env
        self.literal = literal
        self.groups = {}

    def term(self, t: Term) -> dict:
        if isinstance(t, Leaf):
            return _merge(*({a.symbol: a.index} for a in t.clause.atoms()))
        if isinstance(t, (Plus, Times)):
            return _merge(self.term(t.left), self.term(t.right))
        if isinstance(t, TermVar):
            return {}
        if t.name not in self.env.ct_defs:
            raise SchemaError(f"undefined term symbol {t.name!r}")
        g = self.group(self.env.ct_defs[t.name].group, t.name)
        return {s: e.subst(t.arg) for s, e in g.items()}

    def group(self, gid: str, name: str) -> dict:
        if gid in self.groups:
            if self.groups[gid] is None:
                raise SchemaError(f"term group {gid!r} refers to itself through an application")
            return self.groups[gid]
        self.groups[gid] = None
        ms = members(name, self.env)
        base = _merge(*(self.term(self.env.ct_defs[m].base) for m in ms))
        rec = _merge(*(self.term(self.env.ct_defs[m].rec) for m in ms))
        if self.literal:
            out = _merge(base, rec)
        else:
            out = {}
            for s in set(base) | set(rec):
                b, r = base.get(s), rec.get(s)
                if r is None:
                    out[s] = b
                elif b is not None and not b.is_const:
                    out[s] = max_expr(b, r)
                else:
                    lo = max(r.offset - r.coeff, 0)
                    out[s] = Expr(r.coeff, max(lo, b.offset if b is not None else 0))
        self.groups[gid] = out
        return out


def atom_set_schema_for(t: Term, env, literal: bool = False) -> AtomSetSchema:
    """Per-symbol linear bounds covering the atoms of every instance of ``t``.

    For a recursive group with body bound ``a*n+b`` the default bound is
    ``a*n + max(base, b-a)``, which covers level ``m`` because the body at level
    ``m-1`` stays below ``a*(m-1)+b``.  ``literal=True`` instead takes the
    componentwise maximum of base and body bounds, which is coarser.
    """
    return AtomSetSchema.of(_Bounds(env, literal).term(t))


def eval_atom_set(a: AtomSetSchema, N: int) -> list:
    return a.eval(N)


def covers(a: AtomSetSchema, t: Term, N: int, env) -> bool:
    have = set(a.eval(N))
    return all(x in have for x in distinct_atoms(clause_set_at(t, N, env)))


# ------------------------------------------------ generic top refutation

def _resolve_all(atoms, c, inner):
    """Resolve ``atoms`` outermost-first; leaves extend ``c`` by one side per atom."""
    if not atoms:
        return inner(c)
    a, rest = atoms[0], atoms[1:]
    return RRes(_resolve_all(rest, CComp(c, CLit(Clause((), (a,)))), inner),
                _resolve_all(rest, CComp(c, CLit(Clause((a,), ()))), inner), a)


@dataclass(frozen=True)
class TopRefutation:
    definition: ResDef
    call: RApp

    def env(self, base: Optional[DefEnv] = None) -> DefEnv:
        out = DefEnv()
        if base is not None:
            for c in DefEnv.CATEGORIES:
                getattr(out, c).update(getattr(base, c))
        out.res_defs[self.definition.name] = self.definition
        return out

    def eval(self, N: int, base: Optional[DefEnv] = None):
        return eval_res(self.call, N, self.env(base))


def top_schema_refutation(a: AtomSetSchema, name: str = "top",
                          limit: int = TOP_LIMIT) -> TopRefutation:
    """Refutation schema of the top clause set schema over ``a``.

    The base case resolves every atom of the instance at 0; the recursive case
    resolves the atoms added between ``n`` and ``n+1`` and passes the
    accumulated clause down.  At each level the greatest atom is resolved first.
    """
    if len(a.eval(0)) > limit:
        raise SchemaError(f"atom set at 0 exceeds the limit {limit}")
    c = CVar("C")
    first = sorted(a.eval(0), key=atom_key, reverse=True)
    base = _resolve_all(first, c, RLeaf)
    fresh = [Atom(s, Expr(b.coeff, b.offset + j)) for s, b in a.bounds
             for j in range(1, b.coeff + 1)]
    fresh.sort(key=lambda x: (x.symbol, x.index.offset), reverse=True)
    rec = _resolve_all(fresh, c, lambda cc: RApp(name, N_VAR, (cc,)))
    d = ResDef(name, ("C",), base, rec)
    return TopRefutation(d, RApp(name, N_VAR, (CLit(Clause()),)))


def one_atom_per_level(a: AtomSetSchema, name: str = "rho") -> Optional[TopRefutation]:
    """For a single bound ``n+b``: the one-atom-per-level schema called at ``n+b``."""
    if len(a.bounds) != 1 or a.bounds[0][1].coeff != 1:
        return None
    s, b = a.bounds[0]
    c = CVar("C")
    p0 = Atom(s, ZERO)
    pn = Atom(s, Expr(1, 1))
    base = RRes(RLeaf(CComp(c, CLit(Clause((), (p0,))))),
                RLeaf(CComp(c, CLit(Clause((p0,), ())))), p0)
    rec = RRes(RApp(name, N_VAR, (CComp(c, CLit(Clause((), (pn,)))),)),
               RApp(name, N_VAR, (CComp(c, CLit(Clause((pn,), ()))),)), pn)
    return TopRefutation(ResDef(name, ("C",), base, rec),
                         RApp(name, Expr(1, b.offset), (CLit(Clause()),)))


# ------------------------------------------------------- refutation schemata

@dataclass(frozen=True)
class RefutationSchema:
    theta: Term
    env: DefEnv
    atoms: AtomSetSchema
    rho: TopRefutation


def build_refutation_schema(theta: Term, env, literal: bool = False) -> RefutationSchema:
    atoms = atom_set_schema_for(theta, env, literal)
    return RefutationSchema(theta, env, atoms, top_schema_refutation(atoms))


def least_subsumer(d: Clause, candidates) -> Optional[Clause]:
    for c in candidates:
        if subsumes(c, d):
            return c
    return None


def eval_refutation(r: RefutationSchema, N: int):
    """Instance at ``N``: the top refutation with every leaf weakened from the clause set.

    Returns ``(deduction, clause_set)``.
    """
    clauses = clause_set_at(r.theta, N, r.env)
    cands = sorted_clauses(c for c in clauses if not is_tautology(c))
    tree = r.rho.eval(N, r.env)

    def weaken(leaf):
        d = normalize(leaf.clause)
        c = least_subsumer(d, cands)
        if c is None:
            raise DeductionError("no-subsuming-clause",
                                 f"no clause of the instance at {N} subsumes {d}")
        extra = Clause([x for x in d.ante if x not in c.ante],
                       [x for x in d.succ if x not in c.succ])
        if extra == Clause():
            return DLeaf(c)
        return DWeak(DLeaf(c), extra)

    return map_leaves(tree, weaken), clauses


def verify_refutation(r: RefutationSchema, N: int) -> bool:
    g, clauses = eval_refutation(r, N)
    return check_deduction(g, clauses, allow_weakening=True) == Clause()
