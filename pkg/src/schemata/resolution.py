"""Resolution and w-resolution deductions, and resolution proof schemata."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from .arith import Expr, N_VAR, const
from .clauses import Clause, compose, eval_clause, normalize, resolvent
from .formula import Atom, SchemaError
from .polynomial import Polynomial, iterated_sum


class DeductionError(SchemaError):
    def __init__(self, kind: str, msg: str):
        super().__init__(f"{kind}: {msg}")
        self.kind = kind


# ------------------------------------------------------- ground deductions

@dataclass(frozen=True)
class DLeaf:
    clause: Clause


@dataclass(frozen=True)
class DRes:
    left: "Deduction"
    right: "Deduction"
    pivot: Atom
    clause: Optional[Clause] = None  # claimed end-clause, checked when given


@dataclass(frozen=True)
class DWeak:
    child: "Deduction"
    extra: Clause
    clause: Optional[Clause] = None


Deduction = Union[DLeaf, DRes, DWeak]


def _postorder(g):
    """Yield nodes children-first without recursion."""
    stack = [(g, False)]
    while stack:
        node, done = stack.pop()
        if done or isinstance(node, DLeaf):
            yield node
            continue
        stack.append((node, True))
        if isinstance(node, DRes):
            stack.append((node.right, False))
            stack.append((node.left, False))
        else:
            stack.append((node.child, False))


def check_deduction(g: Deduction, clauses, allow_weakening: bool = False,
                    strict: bool = False) -> Clause:
    """Validate ``g`` as a deduction from ``clauses``; return its end-clause.

    With ``strict`` each pivot must occur in the succedent of the left and the
    antecedent of the right premise.
    """
    allowed = frozenset(normalize(c) for c in clauses)
    val = {}
    for node in _postorder(g):
        if id(node) in val:
            continue
        if isinstance(node, DLeaf):
            c = normalize(node.clause)
            if c not in allowed:
                raise DeductionError("leaf-not-in-set", f"{node.clause} is not in the clause set")
        elif isinstance(node, DRes):
            l, r = val[id(node.left)], val[id(node.right)]
            if strict and (node.pivot not in l.succ or node.pivot not in r.ante):
                raise DeductionError("bad-resolvent",
                                     f"pivot {node.pivot} does not occur in {l} and {r}")
            c = resolvent(l, r, node.pivot)
            if node.clause is not None and normalize(node.clause) != c:
                raise DeductionError("bad-resolvent", f"stated {node.clause}, computed {c}")
        else:
            if not allow_weakening:
                raise DeductionError("weakening-disallowed", f"weakening by {node.extra}")
            c = normalize(compose(val[id(node.child)], node.extra))
            if node.clause is not None and normalize(node.clause) != c:
                raise DeductionError("bad-resolvent", f"stated {node.clause}, computed {c}")
        val[id(node)] = c
    return val[id(g)]


def end_clause(g: Deduction) -> Clause:
    return check_deduction(g, leaf_clauses(g), allow_weakening=True)


def is_refutation(g: Deduction, clauses, allow_weakening: bool = False) -> bool:
    try:
        return check_deduction(g, clauses, allow_weakening) == Clause()
    except DeductionError:
        return False


def depth(g: Deduction) -> int:
    d = {}
    for node in _postorder(g):
        if isinstance(node, DLeaf):
            d[id(node)] = 0
        elif isinstance(node, DRes):
            d[id(node)] = 1 + max(d[id(node.left)], d[id(node.right)])
        else:
            d[id(node)] = d[id(node.child)]
    return d[id(g)]


def leaves(g: Deduction):
    """Leaf nodes from left to right."""
    stack = [g]
    while stack:
        node = stack.pop()
        if isinstance(node, DLeaf):
            yield node
        elif isinstance(node, DRes):
            stack.append(node.right)
            stack.append(node.left)
        else:
            stack.append(node.child)


def leaf_clauses(g: Deduction) -> list:
    return [leaf.clause for leaf in leaves(g)]


def map_leaves(g: Deduction, fn) -> Deduction:
    """Rebuild ``g`` with every leaf replaced by ``fn(leaf)``."""
    out = {}
    for node in _postorder(g):
        if id(node) in out:
            continue
        if isinstance(node, DLeaf):
            r = fn(node)
        elif isinstance(node, DRes):
            r = DRes(out[id(node.left)][0], out[id(node.right)][0], node.pivot, node.clause)
        else:
            r = DWeak(out[id(node.child)][0], node.extra, node.clause)
        out[id(node)] = (r, node)
    return out[id(g)][0]


# ---------------------------------------------------------- clause schemata

@dataclass(frozen=True)
class CLit:
    clause: Clause


@dataclass(frozen=True)
class CComp:
    left: "ClauseSchema"
    right: "ClauseSchema"


@dataclass(frozen=True)
class CVar:
    name: str


@dataclass(frozen=True)
class CApp:
    name: str
    arg: Expr


ClauseSchema = Union[CLit, CComp, CVar, CApp]


@dataclass(frozen=True)
class ClauseDef:
    """``name(0) = base``, ``name(n+1) = rec``; ``rec`` refers to itself as ``name(n)``."""

    name: str
    base: Clause
    rec: "ClauseSchema"


def eval_clause_schema(c: ClauseSchema, N: int, env, binds: Optional[dict] = None,
                       self_name: Optional[str] = None, self_val=None) -> Clause:
    if isinstance(c, CLit):
        return eval_clause(c.clause, N)
    if isinstance(c, CComp):
        return compose(eval_clause_schema(c.left, N, env, binds, self_name, self_val),
                       eval_clause_schema(c.right, N, env, binds, self_name, self_val))
    if isinstance(c, CVar):
        if binds is None or c.name not in binds:
            raise SchemaError(f"unbound clause variable {c.name}")
        return binds[c.name]
    if c.name == self_name and self_val is not None:
        if c.arg != N_VAR:
            raise SchemaError(f"recursive use of {c.name} must have argument n")
        return self_val
    return clause_seq(c.name, c.arg.eval(N), env)


def clause_seq(name: str, k: int, env) -> Clause:
    if name not in env.clause_defs:
        raise SchemaError(f"undefined clause symbol {name!r}")
    d = env.clause_defs[name]
    cache = env.cache("clause")
    if (name, k) in cache:
        return cache[name, k]
    start = k
    while start > 0 and (name, start - 1) not in cache:
        start -= 1
    if start == 0:
        cache[name, 0] = eval_clause(d.base, 0)
        start = 1
    for b in range(start, k + 1):
        cache[name, b] = eval_clause_schema(d.rec, b - 1, env, None, name, cache[name, b - 1])
    return cache[name, k]


# ------------------------------------------------------ resolution schemata

@dataclass(frozen=True)
class RLeaf:
    clause: "ClauseSchema"


@dataclass(frozen=True)
class RRes:
    left: "ResSchema"
    right: "ResSchema"
    pivot: Atom


@dataclass(frozen=True)
class RWeak:
    child: "ResSchema"
    extra: "ClauseSchema"


@dataclass(frozen=True)
class RVar:
    """The recursive call at ``n`` with unchanged clause arguments."""


@dataclass(frozen=True)
class RApp:
    name: str
    arg: Expr
    args: tuple = ()


ResSchema = Union[RLeaf, RRes, RWeak, RVar, RApp]


@dataclass(frozen=True)
class ResDef:
    name: str
    params: tuple
    base: "ResSchema"
    rec: "ResSchema"


@dataclass
class _Frame:
    name: Optional[str] = None
    args: tuple = ()
    binds: dict = field(default_factory=dict)
    base_of: Optional[str] = None


def eval_res(r: ResSchema, N: int, env, binds: Optional[dict] = None,
             _frame: Optional[_Frame] = None) -> Deduction:
    """Ground deduction for ``n = N``."""
    frame = _frame or _Frame(binds=dict(binds or {}))
    ev = lambda c: eval_clause_schema(c, N, env, frame.binds)
    if isinstance(r, RLeaf):
        return DLeaf(ev(r.clause))
    if isinstance(r, RRes):
        p = r.pivot
        return DRes(eval_res(r.left, N, env, None, frame), eval_res(r.right, N, env, None, frame),
                    Atom(p.symbol, const(p.index.eval(N))))
    if isinstance(r, RWeak):
        return DWeak(eval_res(r.child, N, env, None, frame), ev(r.extra))
    if isinstance(r, RVar):
        if frame.name is None:
            raise SchemaError("resolution variable outside a recursive definition")
        return res_seq(frame.name, N, env, frame.args)
    if r.name == frame.base_of:
        raise SchemaError(f"{r.name} refers to itself in its base case")
    args = tuple(ev(c) for c in r.args)
    if r.name == frame.name:
        if r.arg != N_VAR:
            raise SchemaError(f"recursive call of {r.name} must have argument n")
        return res_seq(r.name, N, env, args)
    return res_seq(r.name, r.arg.eval(N), env, args)


def _passes_args(d: ResDef) -> bool:
    """Whether every self-call in the step case repeats the parameters unchanged."""
    same = tuple(CVar(p) for p in d.params)
    stack = [d.rec]
    while stack:
        r = stack.pop()
        if isinstance(r, RRes):
            stack += [r.left, r.right]
        elif isinstance(r, RWeak):
            stack.append(r.child)
        elif isinstance(r, RApp) and r.name == d.name and r.args != same:
            return False
    return True


def res_seq(name: str, k: int, env, args: tuple = ()) -> Deduction:
    if name not in env.res_defs:
        raise SchemaError(f"undefined resolution symbol {name!r}")
    d = env.res_defs[name]
    if len(args) != len(d.params):
        raise SchemaError(f"{name} expects {len(d.params)} clause arguments, got {len(args)}")
    cache = env.cache("res")
    key = (name, k, args)
    if key in cache:
        return cache[key]
    if k > 1 and (name, k - 1, args) not in cache and _passes_args(d):
        # fill the levels below bottom-up so deep instances do not recurse
        start = k - 1
        while start > 0 and (name, start - 1, args) not in cache:
            start -= 1
        for b in range(start, k):
            res_seq(name, b, env, args)
    frame = _Frame(name, args, dict(zip(d.params, args)))
    if k == 0:
        out = eval_res(d.base, 0, env, None, _Frame(None, args, frame.binds, name))
    else:
        out = eval_res(d.rec, k - 1, env, None, frame)
    cache[key] = out
    return out


# --------------------------------------------------------- clause counting

def clause_bound(r: ResSchema, env, _self: Optional[str] = None, _memo=None) -> Polynomial:
    """Polynomial bound on the number of distinct clauses used by ``r``."""
    memo = _memo if _memo is not None else {}
    if isinstance(r, RLeaf):
        return Polynomial.const(1)
    if isinstance(r, RRes):
        return clause_bound(r.left, env, _self, memo) + clause_bound(r.right, env, _self, memo)
    if isinstance(r, RWeak):
        return clause_bound(r.child, env, _self, memo)
    if isinstance(r, RVar):
        return Polynomial()
    if r.name == _self:
        return Polynomial()
    return definition_bound(r.name, env, memo).compose_linear(r.arg)


def definition_bound(name: str, env, _memo=None) -> Polynomial:
    memo = _memo if _memo is not None else {}
    if name in memo:
        if memo[name] is None:
            raise SchemaError(f"cyclic resolution definitions through {name!r}")
        return memo[name]
    if name not in env.res_defs:
        raise SchemaError(f"undefined resolution symbol {name!r}")
    memo[name] = None
    d = env.res_defs[name]
    k = clause_bound(d.base, env, None, memo)(0)
    p = clause_bound(d.rec, env, name, memo)
    memo[name] = iterated_sum(k, p)
    return memo[name]


def distinct_leaf_count(g: Deduction) -> int:
    return len({normalize(c) for c in leaf_clauses(g)})
