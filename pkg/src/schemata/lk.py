"""LK proof trees with definition rules and proof links: checking and evaluation."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .arith import Expr, N_VAR, ZERO, const
from .formula import (AND, IMPL, OR, Atom, Bin, Formula, Neg, SchemaError, def_related,
                      eval_formula, subst_param)
from .sequent import Config, Sequent, eval_sequent, subst_param_seq

UNARY_RULES = ("wl", "wr", "cl", "cr", "xl", "xr", "negl", "negr", "andl1", "andl2",
               "orr1", "orr2", "implr", "def")
BINARY_RULES = ("cut", "andr", "orl", "impll")
# rules whose payload is a formula
FORMULA_PAYLOAD = ("wl", "wr", "andl1", "andl2", "orr1", "orr2")


class ProofError(SchemaError):
    def __init__(self, msg: str, path: str = ""):
        super().__init__(f"{path}: {msg}" if path else msg)
        self.path = path


@dataclass(frozen=True)
class Axiom:
    atom: Atom


@dataclass(frozen=True)
class Unary:
    rule: str
    child: "Proof"
    formula: Optional[Formula] = None
    pos: Optional[int] = None
    target: Optional[Sequent] = None

    def __post_init__(self):
        if self.rule not in UNARY_RULES:
            raise ValueError(f"unknown unary rule {self.rule!r}")
        if self.rule in FORMULA_PAYLOAD and self.formula is None:
            raise ValueError(f"{self.rule} needs a formula")
        if self.rule in ("xl", "xr") and self.pos is None:
            raise ValueError(f"{self.rule} needs a position")
        if self.rule == "def" and self.target is None:
            raise ValueError("def needs a target sequent")


@dataclass(frozen=True)
class Binary:
    rule: str
    left: "Proof"
    right: "Proof"
    formula: Optional[Formula] = None

    def __post_init__(self):
        if self.rule not in BINARY_RULES:
            raise ValueError(f"unknown binary rule {self.rule!r}")
        if self.rule == "cut" and self.formula is None:
            raise ValueError("cut needs a cut formula")


@dataclass(frozen=True)
class Link:
    name: str
    arg: Expr


Proof = Union[Axiom, Unary, Binary, Link]


@dataclass(frozen=True)
class ProofDef:
    name: str
    end: Sequent
    base: Proof
    rec: Proof


def children(p: Proof) -> tuple:
    if isinstance(p, Unary):
        return (p.child,)
    if isinstance(p, Binary):
        return (p.left, p.right)
    return ()


# ---------------------------------------------------------------- rule shapes

def _unary_conclusion(p: Unary, s: Sequent, env) -> Sequent:
    a, d = s.ante, s.succ
    r = p.rule
    if r == "wl":
        return Sequent((p.formula,) + a, d)
    if r == "wr":
        return Sequent(a, d + (p.formula,))
    if r == "cl":
        if len(a) < 2 or a[0] != a[1]:
            raise ProofError("c:l needs two equal formulas at the head of the antecedent")
        return Sequent(a[1:], d)
    if r == "cr":
        if len(d) < 2 or d[-1] != d[-2]:
            raise ProofError("c:r needs two equal formulas at the end of the succedent")
        return Sequent(a, d[:-1])
    if r in ("xl", "xr"):
        side = list(a if r == "xl" else d)
        i = p.pos
        if i is None or not 0 <= i < len(side) - 1:
            raise ProofError(f"{r} position {i} out of range")
        side[i], side[i + 1] = side[i + 1], side[i]
        return Sequent(side, d) if r == "xl" else Sequent(a, side)
    if r == "negl":
        if not d:
            raise ProofError("~:l needs a succedent formula")
        return Sequent((Neg(d[-1]),) + a, d[:-1])
    if r == "negr":
        if not a:
            raise ProofError("~:r needs an antecedent formula")
        return Sequent(a[1:], d + (Neg(a[0]),))
    if r in ("andl1", "andl2"):
        if not a:
            raise ProofError(f"{r} needs an antecedent formula")
        f = Bin(AND, a[0], p.formula) if r == "andl1" else Bin(AND, p.formula, a[0])
        return Sequent((f,) + a[1:], d)
    if r in ("orr1", "orr2"):
        if not d:
            raise ProofError(f"{r} needs a succedent formula")
        f = Bin(OR, d[-1], p.formula) if r == "orr1" else Bin(OR, p.formula, d[-1])
        return Sequent(a, d[:-1] + (f,))
    if r == "implr":
        if not a or not d:
            raise ProofError("->:r needs an antecedent and a succedent formula")
        return Sequent(a[1:], d[:-1] + (Bin(IMPL, a[0], d[-1]),))
    # def
    t = p.target
    if len(t.ante) != len(a) or len(t.succ) != len(d):
        raise ProofError(f"def: premise {s} and conclusion {t} differ in length")
    for f, g in zip(a + d, t.ante + t.succ):
        if not def_related(f, g, env):
            raise ProofError(f"def: {f} and {g} are not related by one unfolding")
    return t


def _binary_conclusion(p: Binary, s1: Sequent, s2: Sequent) -> Sequent:
    r = p.rule
    if r == "cut":
        if not s1.succ or s1.succ[-1] != p.formula:
            raise ProofError(f"cut: left premise {s1} does not end with {p.formula}")
        if not s2.ante or s2.ante[0] != p.formula:
            raise ProofError(f"cut: right premise {s2} does not start with {p.formula}")
        return Sequent(s1.ante + s2.ante[1:], s1.succ[:-1] + s2.succ)
    if r == "andr":
        if not s1.succ or not s2.succ or s1.ante != s2.ante or s1.succ[:-1] != s2.succ[:-1]:
            raise ProofError(f"/\\:r: premises {s1} and {s2} have different contexts")
        return Sequent(s1.ante, s1.succ[:-1] + (Bin(AND, s1.succ[-1], s2.succ[-1]),))
    if r == "orl":
        if not s1.ante or not s2.ante or s1.ante[1:] != s2.ante[1:] or s1.succ != s2.succ:
            raise ProofError(f"\\/:l: premises {s1} and {s2} have different contexts")
        return Sequent((Bin(OR, s1.ante[0], s2.ante[0]),) + s1.ante[1:], s1.succ)
    # impll
    if not s1.succ or not s2.ante:
        raise ProofError(f"->:l: premises {s1} and {s2} lack the auxiliary formulas")
    return Sequent((Bin(IMPL, s1.succ[-1], s2.ante[0]),) + s1.ante + s2.ante[1:],
                   s1.succ[:-1] + s2.succ)


@dataclass
class LinkScope:
    """Which links a proof body may contain."""

    self_name: Optional[str] = None
    allow_self: bool = False
    visible: Optional[frozenset] = None  # proof names usable as applications


def link_conclusion(p: Link, env, scope: Optional[LinkScope]) -> Sequent:
    scope = scope or LinkScope()
    if p.name == scope.self_name:
        if not scope.allow_self:
            raise ProofError(f"link to {p.name} is not allowed in a base case")
        if p.arg != N_VAR:
            raise ProofError(f"recursive link {p.name}({p.arg}) must have argument n")
        return env.proofs[p.name].end
    if scope.visible is not None and p.name not in scope.visible:
        raise ProofError(f"link to {p.name!r}, which is not defined before this proof")
    if p.name not in env.proofs:
        raise ProofError(f"link to undefined proof {p.name!r}")
    return subst_param_seq(env.proofs[p.name].end, p.arg)


def conclusions(p: Proof, env, scope: Optional[LinkScope] = None) -> dict:
    """Check every node; return a map id(node) -> (node, conclusion)."""
    out = {}
    stack = [(p, "root", False)]
    while stack:
        node, path, ready = stack.pop()
        if id(node) in out:
            continue
        kids = children(node)
        if not ready and kids:
            stack.append((node, path, True))
            names = ("child",) if len(kids) == 1 else ("left", "right")
            for k, nm in zip(kids, names):
                stack.append((k, f"{path}.{nm}", False))
            continue
        try:
            if isinstance(node, Axiom):
                if not isinstance(node.atom, Atom):
                    raise ProofError(f"axiom on non-atomic formula {node.atom}")
                s = Sequent((node.atom,), (node.atom,))
            elif isinstance(node, Link):
                s = link_conclusion(node, env, scope)
            elif isinstance(node, Unary):
                s = _unary_conclusion(node, out[id(node.child)][1], env)
            else:
                s = _binary_conclusion(node, out[id(node.left)][1], out[id(node.right)][1])
        except ProofError as e:
            if e.path:
                raise
            raise ProofError(str(e), path) from None
        out[id(node)] = (node, s)
    return out


def check_proof(p: Proof, env, scope: Optional[LinkScope] = None) -> Sequent:
    """Validate ``p`` and return its end-sequent."""
    return conclusions(p, env, scope)[id(p)][1]


def scope_for(d: ProofDef, env, rec: bool) -> LinkScope:
    names = list(env.proofs)
    before = names[:names.index(d.name)] if d.name in env.proofs else names
    return LinkScope(d.name, rec, frozenset(before))


def check_proof_def(d: ProofDef, env) -> None:
    base = check_proof(d.base, env, scope_for(d, env, False))
    want0 = subst_param_seq(d.end, ZERO)
    if base != want0 and eval_sequent(base, 0, env) != eval_sequent(d.end, 0, env):
        raise ProofError(f"{d.name}: base case proves {base}, expected {want0}")
    rec = check_proof(d.rec, env, scope_for(d, env, True))
    want = subst_param_seq(d.end, Expr(1, 1))
    if rec != want:
        raise ProofError(f"{d.name}: recursive case proves {rec}, expected {want}")


def check_env(env) -> None:
    for d in env.proofs.values():
        check_proof_def(d, env)


# ---------------------------------------------------------- configurations

def induced_configs(node: Proof, conf: Config, premises: list) -> list:
    """Configurations of the premises induced by ``conf`` on the conclusion."""
    if isinstance(node, Unary):
        a, d = list(conf.ante), list(conf.succ)
        r = node.rule
        if r == "wl":
            a = a[1:]
        elif r == "wr":
            d = d[:-1]
        elif r == "cl":
            a = a[:1] + a
        elif r == "cr":
            d = d + d[-1:]
        elif r == "xl":
            i = node.pos
            a[i], a[i + 1] = a[i + 1], a[i]
        elif r == "xr":
            i = node.pos
            d[i], d[i + 1] = d[i + 1], d[i]
        elif r == "negl":
            a, d = a[1:], d + a[:1]
        elif r == "negr":
            a, d = d[-1:] + a, d[:-1]
        elif r == "implr":
            a, d = d[-1:] + a, d
        return [Config(a, d)]
    if isinstance(node, Binary):
        a, d = list(conf.ante), list(conf.succ)
        s1, s2 = premises
        r = node.rule
        if r == "andr":
            return [Config(a, d), Config(a, d)]
        if r == "orl":
            return [Config(a, d), Config(a, d)]
        if r == "impll":
            m = a[0]
            g1 = len(s1.ante)
            d1 = len(s1.succ) - 1
            return [Config(a[1:1 + g1], d[:d1] + [m]), Config([m] + a[1 + g1:], d[d1:])]
        # cut
        g1, d1 = len(s1.ante), len(s1.succ) - 1
        return [Config(a[:g1], d[:d1] + [True]), Config([True] + a[g1:], d[d1:])]
    return []


def principal_marked(node: Binary, conf: Config) -> bool:
    if node.rule == "andr":
        return conf.succ[-1]
    return conf.ante[0]


# -------------------------------------------------------------- evaluation

def eval_proof(p: Proof, N: int, env, self_name: Optional[str] = None, self_val=None) -> Proof:
    """Ground proof for ``n = N``; def rules are erased and links unfolded."""
    if isinstance(p, Axiom):
        return Axiom(Atom(p.atom.symbol, const(p.atom.index.eval(N))))
    if isinstance(p, Link):
        if p.name == self_name and self_val is not None:
            return self_val
        if p.name not in env.proofs:
            raise ProofError(f"link to undefined proof {p.name!r}")
        return proof_seq(p.name, p.arg.eval(N), env)
    if isinstance(p, Unary):
        child = eval_proof(p.child, N, env, self_name, self_val)
        if p.rule == "def":
            return child
        f = eval_formula(p.formula, N, env) if p.formula is not None else None
        return Unary(p.rule, child, f, p.pos)
    f = eval_formula(p.formula, N, env) if p.formula is not None else None
    return Binary(p.rule, eval_proof(p.left, N, env, self_name, self_val),
                  eval_proof(p.right, N, env, self_name, self_val), f)


def proof_seq(name: str, k: int, env) -> Proof:
    d = env.proofs[name]
    cache = env.cache("proof")
    if (name, k) in cache:
        return cache[name, k]
    start = k
    while start > 0 and (name, start - 1) not in cache:
        start -= 1
    if start == 0:
        cache[name, 0] = eval_proof(d.base, 0, env)
        start = 1
    for b in range(start, k + 1):
        cache[name, b] = eval_proof(d.rec, b - 1, env, name, cache[name, b - 1])
    return cache[name, k]


def subst_links(p: Proof, name, q: Optional[Proof] = None) -> Proof:
    """Replace links by proofs; ``name`` is a symbol (with ``q``) or a map symbol -> proof."""
    table = name if isinstance(name, dict) else {name: q}
    if isinstance(p, Link):
        if p.name not in table:
            raise ProofError(f"link to {p.name!r} has no replacement")
        return table[p.name]
    if isinstance(p, Unary):
        return Unary(p.rule, subst_links(p.child, table), p.formula, p.pos, p.target)
    if isinstance(p, Binary):
        return Binary(p.rule, subst_links(p.left, table), subst_links(p.right, table),
                      p.formula)
    return p


def subst_param_proof(p: Proof, a: Expr) -> Proof:
    if isinstance(p, Axiom):
        return Axiom(Atom(p.atom.symbol, p.atom.index.subst(a)))
    if isinstance(p, Link):
        return Link(p.name, p.arg.subst(a))
    f = subst_param(p.formula, a) if p.formula is not None else None
    if isinstance(p, Unary):
        t = subst_param_seq(p.target, a) if p.target is not None else None
        return Unary(p.rule, subst_param_proof(p.child, a), f, p.pos, t)
    return Binary(p.rule, subst_param_proof(p.left, a), subst_param_proof(p.right, a), f)


def size(p: Proof) -> int:
    n, stack = 0, [p]
    while stack:
        q = stack.pop()
        n += 1
        stack.extend(children(q))
    return n
