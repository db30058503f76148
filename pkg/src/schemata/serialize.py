"""JSON encoding of schemata, proofs, clause terms and deductions.

Every node is a JSON object carrying a ``tag`` (``rule`` for proof nodes).
Expressions are stored in their text form, e.g. ``"2*n+1"``.
"""
from __future__ import annotations

import json

from .arith import Expr, parse_expr
from .clauses import Clause, sorted_clauses
from .clauseterm import CTApp, CTDef, Leaf, Plus, TermVar, Times
from .formula import AND, IMPL, OR, Atom, Bin, DefAtom, Neg, PropVar, SchemaError
from .lk import Axiom, Binary, Link, ProofDef, Unary
from .refute import AtomSetSchema
from .resolution import DLeaf, DRes, DWeak
from .sequent import Config, Sequent

_OP_TAG = {AND: "and", OR: "or", IMPL: "impl"}
_TAG_OP = {v: k for k, v in _OP_TAG.items()}


class FormatError(SchemaError):
    pass


def _need(d, *keys):
    if not isinstance(d, dict):
        raise FormatError(f"expected an object, got {type(d).__name__}")
    for k in keys:
        if k not in d:
            raise FormatError(f"missing field {k!r} in {d.get('tag', d.get('rule', '?'))} node")


# -------------------------------------------------------------- formulas

def expr_to(e: Expr) -> str:
    return str(e)


def expr_from(s) -> Expr:
    if not isinstance(s, str):
        raise FormatError(f"expression must be a string, got {s!r}")
    return parse_expr(s)


def atom_to(a: Atom) -> dict:
    return {"symbol": a.symbol, "index": expr_to(a.index)}


def atom_from(d) -> Atom:
    _need(d, "symbol", "index")
    return Atom(d["symbol"], expr_from(d["index"]))


def formula_to(f) -> dict:
    if isinstance(f, Atom):
        return {"tag": "atom", **atom_to(f)}
    if isinstance(f, DefAtom):
        return {"tag": "defined", "symbol": f.symbol, "index": expr_to(f.index)}
    if isinstance(f, PropVar):
        return {"tag": "var"}
    if isinstance(f, Neg):
        return {"tag": "not", "sub": formula_to(f.sub)}
    if isinstance(f, Bin):
        return {"tag": _OP_TAG[f.op], "left": formula_to(f.left), "right": formula_to(f.right)}
    raise TypeError(f"not a formula: {f!r}")


def formula_from(d):
    _need(d, "tag")
    tag = d["tag"]
    if tag == "atom":
        return atom_from(d)
    if tag == "defined":
        _need(d, "symbol", "index")
        return DefAtom(d["symbol"], expr_from(d["index"]))
    if tag == "var":
        return PropVar()
    if tag == "not":
        _need(d, "sub")
        return Neg(formula_from(d["sub"]))
    if tag in _TAG_OP:
        _need(d, "left", "right")
        return Bin(_TAG_OP[tag], formula_from(d["left"]), formula_from(d["right"]))
    raise FormatError(f"unknown formula tag {tag!r}")


def sequent_to(s: Sequent) -> dict:
    return {"ante": [formula_to(f) for f in s.ante], "succ": [formula_to(f) for f in s.succ]}


def sequent_from(d) -> Sequent:
    _need(d, "ante", "succ")
    return Sequent(tuple(map(formula_from, d["ante"])), tuple(map(formula_from, d["succ"])))


def config_to(c: Config) -> str:
    return c.key


def config_from(s) -> Config:
    return Config.from_key(s)


# ---------------------------------------------------------------- proofs

def proof_to(p) -> dict:
    if isinstance(p, Axiom):
        return {"rule": "ax", "atom": atom_to(p.atom)}
    if isinstance(p, Link):
        return {"rule": "link", "name": p.name, "arg": expr_to(p.arg)}
    if isinstance(p, Unary):
        out = {"rule": p.rule}
        if p.formula is not None:
            out["formula"] = formula_to(p.formula)
        if p.pos is not None:
            out["pos"] = p.pos
        if p.target is not None:
            out["target"] = sequent_to(p.target)
        out["children"] = [proof_to(p.child)]
        return out
    if isinstance(p, Binary):
        out = {"rule": p.rule}
        if p.formula is not None:
            out["formula"] = formula_to(p.formula)
        out["children"] = [proof_to(p.left), proof_to(p.right)]
        return out
    raise TypeError(f"not a proof: {p!r}")


def proof_from(d):
    _need(d, "rule")
    rule = d["rule"]
    if rule == "ax":
        _need(d, "atom")
        return Axiom(atom_from(d["atom"]))
    if rule == "link":
        _need(d, "name", "arg")
        return Link(d["name"], expr_from(d["arg"]))
    _need(d, "children")
    kids = [proof_from(k) for k in d["children"]]
    f = formula_from(d["formula"]) if "formula" in d else None
    try:
        if len(kids) == 1:
            target = sequent_from(d["target"]) if "target" in d else None
            return Unary(rule, kids[0], f, d.get("pos"), target)
        if len(kids) == 2:
            return Binary(rule, kids[0], kids[1], f)
    except ValueError as e:
        raise FormatError(str(e)) from None
    raise FormatError(f"rule {rule!r} with {len(kids)} premises")


def proof_def_to(d: ProofDef) -> dict:
    return {"name": d.name, "end": sequent_to(d.end),
            "base": proof_to(d.base), "rec": proof_to(d.rec)}


def proof_def_from(d) -> ProofDef:
    _need(d, "name", "end", "base", "rec")
    return ProofDef(d["name"], sequent_from(d["end"]), proof_from(d["base"]), proof_from(d["rec"]))


# --------------------------------------------------------------- clauses

def clause_to(c: Clause) -> dict:
    return {"ante": [atom_to(a) for a in c.ante], "succ": [atom_to(a) for a in c.succ]}


def clause_from(d) -> Clause:
    _need(d, "ante", "succ")
    return Clause(tuple(map(atom_from, d["ante"])), tuple(map(atom_from, d["succ"])))


def clause_set_to(cs) -> list:
    return [clause_to(c) for c in sorted_clauses(cs)]


def clause_set_from(items) -> frozenset:
    if not isinstance(items, list):
        raise FormatError("a clause set is a list of clauses")
    return frozenset(clause_from(c) for c in items)


def term_to(t) -> dict:
    if isinstance(t, Leaf):
        return {"tag": "leaf", "clause": clause_to(t.clause)}
    if isinstance(t, Plus):
        return {"tag": "plus", "left": term_to(t.left), "right": term_to(t.right)}
    if isinstance(t, Times):
        return {"tag": "times", "left": term_to(t.left), "right": term_to(t.right)}
    if isinstance(t, TermVar):
        return {"tag": "var", "name": t.name}
    if isinstance(t, CTApp):
        return {"tag": "app", "name": t.name, "arg": expr_to(t.arg)}
    raise TypeError(f"not a clause-set term: {t!r}")


def term_from(d):
    _need(d, "tag")
    tag = d["tag"]
    if tag == "leaf":
        _need(d, "clause")
        return Leaf(clause_from(d["clause"]))
    if tag in ("plus", "times"):
        _need(d, "left", "right")
        cls = Plus if tag == "plus" else Times
        return cls(term_from(d["left"]), term_from(d["right"]))
    if tag == "var":
        _need(d, "name")
        return TermVar(d["name"])
    if tag == "app":
        _need(d, "name", "arg")
        return CTApp(d["name"], expr_from(d["arg"]))
    raise FormatError(f"unknown term tag {tag!r}")


def ct_defs_to(defs: dict) -> list:
    return [{"name": d.name, "group": d.group, "base": term_to(d.base), "rec": term_to(d.rec)}
            for d in defs.values()]


def ct_defs_from(items) -> dict:
    out = {}
    for d in items:
        _need(d, "name", "group", "base", "rec")
        out[d["name"]] = CTDef(d["name"], term_from(d["base"]), term_from(d["rec"]), d["group"])
    return out


# ------------------------------------------------------------ deductions

def deduction_to(g) -> dict:
    # iterative, deductions can be deep
    out: dict = {}
    stack = [(g, out)]
    while stack:
        node, slot = stack.pop()
        if isinstance(node, DLeaf):
            slot.update(tag="leaf", clause=clause_to(node.clause))
            continue
        if isinstance(node, DRes):
            slot.update(tag="res", pivot=atom_to(node.pivot))
            left, right = {}, {}
            slot["left"], slot["right"] = left, right
            stack += [(node.left, left), (node.right, right)]
        elif isinstance(node, DWeak):
            slot.update(tag="weak", extra=clause_to(node.extra))
            child = {}
            slot["child"] = child
            stack.append((node.child, child))
        else:
            raise TypeError(f"not a deduction: {node!r}")
        if node.clause is not None:
            slot["clause"] = clause_to(node.clause)
    return out


def deduction_from(d):
    _need(d, "tag")
    tag = d["tag"]
    claimed = clause_from(d["clause"]) if "clause" in d else None
    if tag == "leaf":
        return DLeaf(claimed)
    if tag == "res":
        _need(d, "pivot", "left", "right")
        return DRes(deduction_from(d["left"]), deduction_from(d["right"]),
                    atom_from(d["pivot"]), claimed)
    if tag == "weak":
        _need(d, "child", "extra")
        return DWeak(deduction_from(d["child"]), clause_from(d["extra"]), claimed)
    raise FormatError(f"unknown deduction tag {tag!r}")


def atom_set_to(a: AtomSetSchema) -> list:
    return [{"symbol": s, "bound": expr_to(b)} for s, b in a.bounds]


def atom_set_from(items) -> AtomSetSchema:
    out = {}
    for d in items:
        _need(d, "symbol", "bound")
        out[d["symbol"]] = expr_from(d["bound"])
    return AtomSetSchema.of(out)


# ------------------------------------------------------------- documents

CODECS = {
    "formula": (formula_to, formula_from),
    "sequent": (sequent_to, sequent_from),
    "proof": (proof_to, proof_from),
    "proof-def": (proof_def_to, proof_def_from),
    "clause": (clause_to, clause_from),
    "clause-set": (clause_set_to, clause_set_from),
    "term": (term_to, term_from),
    "term-defs": (ct_defs_to, ct_defs_from),
    "deduction": (deduction_to, deduction_from),
    "atom-set": (atom_set_to, atom_set_from),
}


def to_doc(kind: str, value) -> dict:
    return {"kind": kind, "value": CODECS[kind][0](value)}


def from_doc(doc):
    _need(doc, "kind", "value")
    kind = doc["kind"]
    if kind not in CODECS:
        raise FormatError(f"unknown document kind {kind!r}")
    return CODECS[kind][1](doc["value"])


def dumps(obj, indent=None) -> str:
    return json.dumps(obj, indent=indent, sort_keys=False)


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"invalid JSON: {e}") from None
