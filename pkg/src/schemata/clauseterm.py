"""Clause-set terms, their schemata, and characteristic term extraction."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .arith import Expr, N_VAR
from .clauses import Clause, compose, eval_clause, normalize
from .env import DefEnv
from .formula import SchemaError
from .lk import (Axiom, Link, Proof, ProofError, Unary, conclusions,
                 induced_configs, principal_marked, scope_for)
from .sequent import Config, apply_config


@dataclass(frozen=True)
class Leaf:
    clause: Clause


@dataclass(frozen=True)
class Plus:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Times:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class TermVar:
    """Stands for the current group member ``name`` at the previous level."""

    name: str


@dataclass(frozen=True)
class CTApp:
    name: str
    arg: Expr


Term = Union[Leaf, Plus, Times, TermVar, CTApp]


@dataclass(frozen=True)
class CTDef:
    name: str
    base: "Term"
    rec: "Term"
    group: str


def entry_name(proof: str, conf: Config) -> str:
    return f"{proof}@{conf.key}"


def is_ground_term(t: Term) -> bool:
    stack = [t]
    while stack:
        u = stack.pop()
        if isinstance(u, (TermVar, CTApp)):
            return False
        if isinstance(u, Leaf):
            if any(not a.index.is_const for a in u.clause.atoms()):
                return False
        else:
            stack += [u.left, u.right]
    return True


def semantics(t: Term) -> frozenset:
    """The clause set denoted by a ground term."""
    memo = {}
    stack = [(t, False)]
    while stack:
        u, ready = stack.pop()
        if id(u) in memo:
            continue
        if isinstance(u, Leaf):
            if any(not a.index.is_const for a in u.clause.atoms()):
                raise SchemaError(f"leaf [{u.clause}] is not ground")
            memo[id(u)] = (u, frozenset([normalize(u.clause)]))
            continue
        if not isinstance(u, (Plus, Times)):
            raise SchemaError(f"term is not ground: contains {u}")
        if not ready:
            stack += [(u, True), (u.right, False), (u.left, False)]
            continue
        left, right = memo[id(u.left)][1], memo[id(u.right)][1]
        if isinstance(u, Plus):
            r = left | right
        else:
            r = frozenset(normalize(compose(c, d)) for c in left for d in right)
        memo[id(u)] = (u, r)
    return memo[id(t)][1]


def members(name: str, env) -> list:
    g = env.ct_defs[name].group
    return [m for m, d in env.ct_defs.items() if d.group == g]


def eval_ct(t: Term, N: int, env, vars: Optional[dict] = None) -> Term:
    """Ground instance of a term schema at ``n = N``."""
    if isinstance(t, Leaf):
        return Leaf(eval_clause(t.clause, N))
    if isinstance(t, Plus):
        return Plus(eval_ct(t.left, N, env, vars), eval_ct(t.right, N, env, vars))
    if isinstance(t, Times):
        return Times(eval_ct(t.left, N, env, vars), eval_ct(t.right, N, env, vars))
    if isinstance(t, TermVar):
        if vars is None or t.name not in vars:
            raise SchemaError(f"free term variable {t.name}")
        return vars[t.name]
    if t.name not in env.ct_defs:
        raise SchemaError(f"undefined term symbol {t.name!r}")
    return ct_seq(t.name, t.arg.eval(N), env)


def ct_seq(name: str, k: int, env) -> Term:
    if name not in env.ct_defs:
        raise SchemaError(f"undefined term symbol {name!r}")
    cache = env.cache("ct")
    if (name, k) in cache:
        return cache[name, k]
    group = members(name, env)
    start = k
    while start > 0 and (name, start - 1) not in cache:
        start -= 1
    for b in range(start, k + 1):
        if b == 0:
            for m in group:
                cache[m, 0] = eval_ct(env.ct_defs[m].base, 0, env)
        else:
            if any((m, b - 1) not in cache for m in group):
                for m in group:
                    ct_seq(m, b - 1, env)
            prev = {m: cache[m, b - 1] for m in group}
            for m in group:
                cache[m, b] = eval_ct(env.ct_defs[m].rec, b - 1, env, prev)
    return cache[name, k]


def clause_set_at(t: Term, N: int, env) -> frozenset:
    return semantics(eval_ct(t, N, env))


# -------------------------------------------------------------- extraction

def _extract(p: Proof, conf: Config, concl: dict, on_link) -> Term:
    memo = {}

    def go(node, c):
        key = (id(node), c)
        if key in memo:
            return memo[key]
        s = concl[id(node)][1]
        if not c.fits(s):
            raise ProofError(f"configuration {c.key} does not fit {s}")
        if isinstance(node, Axiom):
            sel = apply_config(s, c)
            r = Leaf(Clause(sel.ante, sel.succ))
        elif isinstance(node, Link):
            r = on_link(node, c)
        elif isinstance(node, Unary):
            (c1,) = induced_configs(node, c, [concl[id(node.child)][1]])
            r = go(node.child, c1)
        else:
            prem = [concl[id(node.left)][1], concl[id(node.right)][1]]
            c1, c2 = induced_configs(node, c, prem)
            left, right = go(node.left, c1), go(node.right, c2)
            if node.rule == "cut" or principal_marked(node, c):
                r = Plus(left, right)
            else:
                r = Times(left, right)
        memo[key] = r
        return r

    return go(p, conf)


def extract_ground(p: Proof, conf: Optional[Config] = None, env=None) -> Term:
    """Characteristic term of a ground (link-free) proof."""
    env = env if env is not None else DefEnv()
    concl = conclusions(p, env)
    conf = conf if conf is not None else Config.empty(concl[id(p)][1])

    def no_links(node, c):
        raise ProofError(f"ground extraction met a link to {node.name}")

    return _extract(p, conf, concl, no_links)


def extract_char(target, conf: Optional[Config], env):
    """Characteristic term schema of a proof schema.

    ``target`` is a proof symbol (taken at ``n``) or a proof term whose links are
    applications.  Returns ``(term, defs)``; ``defs`` maps entry names to
    :class:`CTDef` for every configuration reachable from the root.
    """
    if isinstance(target, str):
        if target not in env.proofs:
            raise SchemaError(f"undefined proof {target!r}")
        target = Link(target, N_VAR)
    defs = {}
    pending = []
    queued = set()

    def want(name, c):
        en = entry_name(name, c)
        if en not in queued:
            queued.add(en)
            pending.append((name, c))
        return en

    def app_link(node, c):
        return CTApp(want(node.name, c), node.arg)

    concl = conclusions(target, env)
    end = concl[id(target)][1]
    conf = conf if conf is not None else Config.empty(end)
    if not conf.fits(end):
        raise ProofError(f"configuration {conf.key} does not fit {end}")
    root = _extract(target, conf, concl, app_link)

    bodies = {}
    while pending:
        name, c = pending.pop()
        d = env.proofs[name]
        if name not in bodies:
            bodies[name] = (conclusions(d.base, env, scope_for(d, env, False)),
                            conclusions(d.rec, env, scope_for(d, env, True)))
        cb, cr = bodies[name]

        def rec_link(node, c2, name=name):
            if node.name == name:
                return TermVar(want(name, c2))
            return app_link(node, c2)

        base = _extract(d.base, c, cb, app_link)
        rec = _extract(d.rec, c, cr, rec_link)
        en = entry_name(name, c)
        defs[en] = CTDef(en, base, rec, name)
    order = sorted(defs)
    return root, {k: defs[k] for k in order}


def with_ct_defs(env, defs: dict) -> DefEnv:
    out = DefEnv()
    for c in DefEnv.CATEGORIES:
        getattr(out, c).update(getattr(env, c))
    out.ct_defs.update(defs)
    return out


def char_clause_set(proof: str, N: int, env, conf: Optional[Config] = None) -> frozenset:
    term, defs = extract_char(proof, conf, env)
    return clause_set_at(term, N, with_ct_defs(env, defs))


def prune_tautologies(cs) -> frozenset:
    from .clauses import is_tautology
    return frozenset(c for c in cs if not is_tautology(c))
