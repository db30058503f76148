"""Command line interface: ``schemata <command> [options]``.

Names given to ``--formula``, ``--proof``, ``--res``, ``--term`` are looked up in
``--schema FILE`` if given, otherwise in the bundled schema files.  Anything
that is not a defined name is parsed as an inline expression.
"""
from __future__ import annotations

import argparse
import os
import sys
import time

from . import corpus, oracle, serialize
from .clauses import Clause, clause_set, render_set
from .clauseterm import (CTApp, clause_set_at, eval_ct, extract_char, prune_tautologies,
                         semantics, with_ct_defs)
from .canonic import canonic_formula, canonic_sequent, left, right
from .dsl import (parse, parse_clause_set, parse_formula, parse_res, parse_sequent,
                  parse_term, print_env, show_ct_group, show_deduction, show_proof,
                  show_res, show_term)
from .env import DefEnv
from .formula import DefAtom, SchemaError, eval_formula
from .lk import Link, check_env, check_proof, check_proof_def, eval_proof
from .arith import N_VAR
from .refute import (build_refutation_schema, eval_refutation, one_atom_per_level, saturate)
from .resolution import (DeductionError, check_deduction, depth, end_clause, eval_res,
                         leaves)
from .sequent import Config, apply_config, eval_sequent


class UsageError(Exception):
    pass


# ------------------------------------------------------------------ inputs

def parse_range(text: str) -> list:
    """``"3"`` or ``"0..9"`` (inclusive)."""
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError:
        raise UsageError(f"bad parameter value {text!r}; use N or A..B") from None
    if lo < 0 or hi < lo:
        raise UsageError(f"bad parameter range {text!r}")
    return list(range(lo, hi + 1))


def load_schema(path: str) -> DefEnv:
    if not os.path.exists(path) and path in corpus.FILES:
        return corpus.load(path)
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def env_for(args, name: str | None, category: str) -> DefEnv:
    if args.schema:
        return load_schema(args.schema)
    if name is not None:
        try:
            return corpus.find(name, category)
        except KeyError:
            pass
    return corpus.load(corpus.FILES[0])


def read_clause_set(spec: str, env: DefEnv) -> frozenset:
    """Inline ``{...}``, a corpus/schema name, a JSON document or a text file."""
    text = spec.strip()
    if text.startswith("{"):
        return clause_set(parse_clause_set(text))
    if spec in env.clause_sets:
        return clause_set(env.clause_sets[spec])
    for f in corpus.FILES:
        cs = corpus.load(f).clause_sets
        if spec in cs:
            return clause_set(cs[spec])
    if os.path.exists(spec):
        with open(spec, encoding="utf-8") as fh:
            body = fh.read()
        if spec.endswith(".json"):
            return clause_set(serialize.from_doc(serialize.loads(body)))
        return clause_set(parse_clause_set(body))
    raise UsageError(f"cannot read clause set {spec!r}")


def char_of(env: DefEnv, proof: str, config: str | None):
    conf = Config.from_key(config) if config else None
    term, defs = extract_char(proof, conf, env)
    return term, defs, with_ct_defs(env, defs)


def theta_of(args):
    """Characteristic term of ``--proof`` or the clause-set term ``--term``."""
    if args.proof:
        env = env_for(args, args.proof, "proofs")
        return char_of(env, args.proof, getattr(args, "config", None))
    name = args.term
    env = _term_env(args)
    if name in env.ct_terms:
        return env.ct_terms[name], {}, env
    if name in env.ct_defs:
        return CTApp(name, N_VAR), {}, env
    return parse_term(name, env), {}, env


def _term_env(args):
    if args.schema:
        return load_schema(args.schema)
    for f in corpus.FILES:
        e = corpus.load(f)
        if args.term in e.ct_terms or args.term in e.ct_defs:
            return e
    return corpus.load(corpus.FILES[0])


def emit(obj, out=None):
    text = serialize.dumps(obj, indent=2)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


# ---------------------------------------------------------------- commands

def cmd_eval(args) -> int:
    ns = parse_range(args.at)
    if args.formula:
        env = env_for(args, args.formula, "formulas")
        f = DefAtom(args.formula, N_VAR) if args.formula in env.formulas \
            else parse_formula(args.formula, env)
        for N in ns:
            g = eval_formula(f, N, env)
            if args.json:
                emit(serialize.to_doc("formula", g))
            else:
                print(g if len(ns) == 1 else f"{N}: {g}")
        return 0
    if args.proof:
        env = env_for(args, args.proof, "proofs")
        p = Link(args.proof, N_VAR) if args.proof in env.proofs else None
        if p is None:
            raise UsageError(f"undefined proof {args.proof!r}")
        for N in ns:
            g = eval_proof(p, N, env)
            end = check_proof(g, env)
            if args.json:
                emit(serialize.to_doc("proof", g))
            else:
                print(f"{N}: {end}")
                if args.show:
                    print(show_proof(g, 1))
        return 0
    if args.res:
        env = env_for(args, args.res, "res_terms")
        r = env.res_terms[args.res] if args.res in env.res_terms else parse_res(args.res, env)
        for N in ns:
            g = eval_res(r, N, env)
            if args.json:
                emit(serialize.to_doc("deduction", g))
            else:
                print(f"{N}: {end_clause(g)}")
                if args.show:
                    print("  " + show_deduction(g))
        return 0
    raise UsageError("eval needs --formula, --proof or --res")


def cmd_check(args) -> int:
    if args.proof:
        jobs = [(env_for(args, args.proof, "proofs"), [args.proof])]
    elif args.schema:
        env = load_schema(args.schema)
        jobs = [(env, list(env.proofs))]
    else:
        # every proof of every bundled file
        jobs = [(e, list(e.proofs)) for e in corpus.all_envs().values()]
    for env, names in jobs:
        for name in names:
            if name not in env.proofs:
                raise UsageError(f"undefined proof {name!r}")
            check_proof_def(env.proofs[name], env)
            print(f"ok {name}: {env.proofs[name].end}")
    return 0


def cmd_char(args) -> int:
    env = env_for(args, args.proof, "proofs")
    term, defs, full = char_of(env, args.proof, args.config)
    if args.at is None:
        if args.json:
            emit({"kind": "characteristic", "root": serialize.term_to(term),
                  "defs": serialize.ct_defs_to(defs)})
        else:
            print(f"root: {show_term(term)}")
            groups = {}
            for d in defs.values():
                groups.setdefault(d.group, []).append(d)
            for gid, ds in groups.items():
                print(show_ct_group(ds, gid))
        return 0
    rows = []
    for N in parse_range(args.at):
        cs = clause_set_at(term, N, full)
        if args.prune_tautologies:
            cs = prune_tautologies(cs)
        rows.append((N, cs))
    if args.json:
        if len(rows) == 1:
            emit(serialize.to_doc("clause-set", rows[0][1]))
        else:
            emit([{"at": N, **serialize.to_doc("clause-set", cs)} for N, cs in rows])
    else:
        for N, cs in rows:
            print(render_set(cs) if len(rows) == 1 else f"{N}: {render_set(cs)}")
    return 0


def cmd_clauses(args) -> int:
    t, _, env = theta_of(args)
    for N in parse_range(args.at):
        g = eval_ct(t, N, env)
        cs = semantics(g)
        if args.json:
            emit({"at": N, "term": serialize.term_to(g), **serialize.to_doc("clause-set", cs)})
        else:
            print(f"{N}: {show_term(g)}")
            print(f"   = {render_set(cs)}")
    return 0


def cmd_refute(args) -> int:
    t, _, env = theta_of(args)
    r = build_refutation_schema(t, env, literal=args.literal_atoms)
    ns = parse_range(args.at) if args.at is not None else []
    if args.emit_tree and len(ns) != 1:
        raise UsageError("--emit-tree needs a single --at value")
    print(f"atoms: {r.atoms}")
    d = r.rho.definition
    print(f"rho: {show_res(r.rho.call)} where {d.name}({', '.join(d.params)}) is")
    print(f"  0 -> {show_res(d.base)}")
    print(f"  n+1 -> {show_res(d.rec)}")
    short = one_atom_per_level(r.atoms)
    if short is not None:
        sd = short.definition
        print(f"one atom per level: {show_res(short.call)} where {sd.name}(C) is")
        print(f"  0 -> {show_res(sd.base)}")
        print(f"  n+1 -> {show_res(sd.rec)}")
    status = 0
    for N in ns:
        t0 = time.perf_counter()
        g, clauses = eval_refutation(r, N)
        n_leaves = sum(1 for _ in leaves(g))
        line = f"{N}: {n_leaves} leaves, depth {depth(g)}"
        if args.verify:
            end = check_deduction(g, clauses, allow_weakening=True)
            unsat = oracle.is_unsat(clauses)
            ok = end == Clause() and unsat
            line += f", end clause {end}, oracle {'unsat' if unsat else 'SAT'}"
            line += ", verified" if ok else ", FAILED"
            status |= 0 if ok else 1
        print(line + f" ({time.perf_counter() - t0:.2f}s)")
        if args.show:
            print("  " + show_deduction(g))
        if args.emit_tree:
            emit(serialize.to_doc("deduction", g), args.emit_tree)
    return status


def cmd_verify(args) -> int:
    ns = parse_range(args.at)
    if args.tree:
        with open(args.tree, encoding="utf-8") as fh:
            trees = {ns[0]: serialize.from_doc(serialize.loads(fh.read()))}
        env = load_schema(args.schema) if args.schema else corpus.load(corpus.FILES[0])
    elif args.res:
        env = env_for(args, args.res, "res_terms")
        r = env.res_terms[args.res] if args.res in env.res_terms else parse_res(args.res, env)
        trees = {N: eval_res(r, N, env) for N in ns}
    else:
        raise UsageError("verify needs --res or --tree")
    status = 0
    for N, g in trees.items():
        if args.proof:
            penv = corpus.find(args.proof, "proofs") if not args.schema else env
            term, _, full = char_of(penv, args.proof, None)
            clauses = clause_set_at(term, N, full)
        elif args.clauses:
            clauses = read_clause_set(args.clauses, env)
        else:
            raise UsageError("verify needs --clauses or --proof")
        try:
            end = check_deduction(g, clauses, allow_weakening=args.weakening)
        except DeductionError as e:
            print(f"{N}: rejected, {e}")
            status = 1
            continue
        if end == Clause():
            unsat = oracle.is_unsat(clauses)
            print(f"{N}: refutation; oracle {'agrees' if unsat else 'finds the set SATISFIABLE'}")
            status |= 0 if unsat else 3
        else:
            print(f"{N}: deduction of {end}")
            status |= 1
    return status


def cmd_sat(args) -> int:
    env = load_schema(args.schema) if args.schema else DefEnv()
    cs = read_clause_set(args.clauses, env)
    sat, model = oracle.satisfiable(cs)
    if sat:
        trues = sorted((a for a, v in model.items() if v), key=lambda a: (a.symbol, a.index))
        print("sat")
        print("true: " + (", ".join(map(str, trues)) if trues else "(none)"))
    else:
        print("unsat")
    return 0 if sat else 1


def cmd_entails(args) -> int:
    env = load_schema(args.schema) if args.schema else DefEnv()
    a = read_clause_set(args.left, env)
    b = read_clause_set(args.right, env)
    ok = oracle.entails(a, b)
    print("entails" if ok else "does not entail")
    return 0 if ok else 1


def cmd_saturate(args) -> int:
    env = load_schema(args.schema) if args.schema else DefEnv()
    cs = read_clause_set(args.clauses, env)
    for w in saturate(cs):
        print(f"w({w.child.clause}; {w.extra})")
    return 0


def cmd_canonic(args) -> int:
    env = env_for(args, None, "formulas")
    if args.sequent is not None:
        s = parse_sequent(args.sequent, env)
        ns = parse_range(args.at) if args.at else [0]
        for N in ns:
            g = eval_sequent(s, N, env)
            if args.config:
                g = apply_config(g, Config.from_key(args.config))
            out = canonic_sequent(g)
            print(render_set(out) if len(ns) == 1 else f"{N}: {render_set(out)}")
        return 0
    if args.formula is not None:
        f = parse_formula(args.formula, env)
        ns = parse_range(args.at) if args.at else [0]
        fn = {"left": left, "right": right, "both": canonic_formula}[args.side]
        for N in ns:
            out = fn(eval_formula(f, N, env))
            print(render_set(out) if len(ns) == 1 else f"{N}: {render_set(out)}")
        return 0
    raise UsageError("canonic needs --sequent or --formula")


def cmd_golden(args) -> int:
    env = env_for(args, args.proof, "proofs")
    term, _, full = char_of(env, args.proof, None)
    lines = [f"# characteristic clause sets of {args.proof}"]
    for N in range(args.max + 1):
        cs = clause_set_at(term, N, full)
        if args.prune_tautologies:
            cs = prune_tautologies(cs)
        lines.append(f"{N} | {render_set(cs)}")
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_print(args) -> int:
    env = load_schema(args.schema) if args.schema else corpus.load(args.file)
    if args.check:
        check_env(env)
    sys.stdout.write(print_env(env))
    return 0


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="schemata",
                                description="Proof schemata, clause-set terms and refutations.")
    p.add_argument("--schema", help="schema file (default: bundled files)")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        q = sub.add_parser(name, help=help_)
        q.add_argument("--schema", default=argparse.SUPPRESS, help="schema file")
        q.set_defaults(fn=fn)
        return q

    q = add("eval", cmd_eval, "evaluate a formula, proof or resolution schema at N")
    g = q.add_mutually_exclusive_group(required=True)
    g.add_argument("--formula")
    g.add_argument("--proof")
    g.add_argument("--res")
    q.add_argument("--at", default="0", help="N or A..B")
    q.add_argument("--json", action="store_true")
    q.add_argument("--show", action="store_true", help="print the whole tree")

    q = add("check", cmd_check, "check proof schemata")
    q.add_argument("--proof")

    q = add("char", cmd_char, "characteristic term schema of a proof schema")
    q.add_argument("--proof", required=True)
    q.add_argument("--config", help="configuration key, e.g. 10|0 (default: all unmarked)")
    q.add_argument("--at", help="evaluate the clause set at N or A..B")
    q.add_argument("--json", action="store_true")
    q.add_argument("--prune-tautologies", action="store_true")

    q = add("clauses", cmd_clauses, "evaluate a clause-set term and its clause set")
    g = q.add_mutually_exclusive_group(required=True)
    g.add_argument("--term")
    g.add_argument("--proof")
    q.add_argument("--at", default="0")
    q.add_argument("--json", action="store_true")

    q = add("refute", cmd_refute, "refutation schema by saturation to top clause sets")
    g = q.add_mutually_exclusive_group(required=True)
    g.add_argument("--proof")
    g.add_argument("--term")
    q.add_argument("--at", help="instantiate at N or A..B")
    q.add_argument("--verify", action="store_true")
    q.add_argument("--show", action="store_true")
    q.add_argument("--emit-tree", metavar="FILE")
    q.add_argument("--literal-atoms", action="store_true",
                   help="use the coarser componentwise bound for defined terms")

    q = add("verify", cmd_verify, "check a deduction against a clause set")
    g = q.add_mutually_exclusive_group(required=True)
    g.add_argument("--res")
    g.add_argument("--tree", help="deduction JSON document")
    g2 = q.add_mutually_exclusive_group(required=True)
    g2.add_argument("--clauses")
    g2.add_argument("--proof", help="use the characteristic clause set of this proof")
    q.add_argument("--at", default="0")
    q.add_argument("--weakening", action="store_true", help="allow weakening steps")

    q = add("sat", cmd_sat, "satisfiability of a clause set (exit 0 iff satisfiable)")
    q.add_argument("--clauses", required=True)

    q = add("entails", cmd_entails, "clause-set entailment (exit 0 iff it holds)")
    q.add_argument("--left", required=True)
    q.add_argument("--right", required=True)

    q = add("saturate", cmd_saturate, "weaken every clause to the top clause set")
    q.add_argument("--clauses", required=True)

    q = add("canonic", cmd_canonic, "canonic clause set of a sequent or formula")
    q.add_argument("--sequent")
    q.add_argument("--formula")
    q.add_argument("--side", choices=("left", "right", "both"), default="both")
    q.add_argument("--config")
    q.add_argument("--at")

    q = add("golden", cmd_golden, "table of characteristic clause sets")
    q.add_argument("--proof", default="psi")
    q.add_argument("--max", type=int, default=9)
    q.add_argument("--out")
    q.add_argument("--prune-tautologies", action="store_true")

    q = add("print", cmd_print, "pretty-print a schema file")
    q.add_argument("file", nargs="?", default=corpus.FILES[0])
    q.add_argument("--check", action="store_true")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (SchemaError, UsageError, KeyError, ValueError, OSError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else e
        print(f"error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
