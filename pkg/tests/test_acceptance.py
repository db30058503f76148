"""Acceptance criteria, one test per criterion.

Each test stores ``(passed, note)`` in ``conftest.ACCEPTANCE`` before asserting, so the
terminal summary prints one PASS/FAIL line per criterion even when a test fails.
"""
import itertools
import random
import time

from schemata.canonic import canonic_sequent, identity_proof, left, right
from schemata.cli import main
from schemata.clauses import Clause, is_tautology, normalize, subsumes
from schemata.clauseterm import (CTApp, Leaf, Plus, Times, char_clause_set, eval_ct,
                                 extract_char, extract_ground, semantics, with_ct_defs)
from schemata.dsl import parse_clause, parse_clause_set, show_res
from schemata.formula import Atom
from schemata.arith import N_VAR, const
from schemata.lk import check_proof
from schemata.oracle import dpll_sat, entails, is_unsat, sequent_value, truth_table_sat
from schemata.refute import (atoms_of, build_refutation_schema, eval_refutation, one_atom_per_level,
                             saturate, top_clause_set, AtomSetSchema)
from schemata.resolution import (DeductionError, DLeaf, DRes, DWeak, check_deduction,
                                 clause_bound, distinct_leaf_count, end_clause, eval_res,
                                 res_seq)
from schemata.sequent import Config, apply_config, eval_sequent

import conftest
import oracles
import strategies


def record(k, ok, note):
    conftest.ACCEPTANCE[k] = (bool(ok), note)
    assert ok, note


def C(text):
    return parse_clause(text)


def P(i):
    return Atom("P", const(i))


def char_env(env, proof):
    term, defs = extract_char(proof, None, env)
    return term, with_ct_defs(env, defs)


# Published characteristic clause sets of the implication-chain proof, transcribed row by
# row. Reading fixes applied to the scanned table: row 0 is the empty clause; "P(0) |- P(0)
# |- P(0)" in rows 6, 8 and 9 is "P(0) |-; P(0) |- P(0)"; row 9 has "|- P(10)" for
# "|- P(1)", "P(10) |- P(9)" for "P(1) |- P(9)", and the dropped "P(10) |- P(10)".
REFERENCE_ROWS = {
    0: "{|-}",
    1: "{|- P(2); P(0) |-; P(0) |- P(0); P(1) |- P(0); P(1) |- P(1); P(2) |- P(1); P(2) |- P(2)}",
    2: "{|- P(3); P(0) |-; P(0) |- P(0); P(1) |- P(0); P(1) |- P(1); P(2) |- P(1); P(2) |- P(2); P(3) |- P(2); P(3) |- P(3)}",
    3: "{|- P(4); P(0) |-; P(0) |- P(0); P(1) |- P(0); P(1) |- P(1); P(2) |- P(1); P(2) |- P(2); P(3) |- P(2); P(3) |- P(3); P(4) |- P(3); P(4) |- P(4)}",
    4: "{|- P(5); P(0) |-; P(0) |- P(0); P(1) |- P(0); P(1) |- P(1); P(2) |- P(1); P(2) |- P(2); P(3) |- P(2); P(3) |- P(3); P(4) |- P(3); P(4) |- P(4); P(5) |- P(4); P(5) |- P(5)}",
    5: "{|- P(6); P(0) |-; P(0) |- P(0); P(1) |- P(0); P(1) |- P(1); P(2) |- P(1); P(2) |- P(2); P(3) |- P(2); P(3) |- P(3); P(4) |- P(3); P(4) |- P(4); P(5) |- P(4); P(5) |- P(5); P(6) |- P(5); P(6) |- P(6)}",
    6: "{|- P(7); P(0) |-; P(0) |- P(0); P(1) |- P(0); P(1) |- P(1); P(2) |- P(1); P(2) |- P(2); P(3) |- P(2); P(3) |- P(3); P(4) |- P(3); P(4) |- P(4); P(5) |- P(4); P(5) |- P(5); P(6) |- P(5); P(6) |- P(6); P(7) |- P(6); P(7) |- P(7)}",
    7: "{|- P(8); P(0) |-; P(0) |- P(0); P(1) |- P(0); P(1) |- P(1); P(2) |- P(1); P(2) |- P(2); P(3) |- P(2); P(3) |- P(3); P(4) |- P(3); P(4) |- P(4); P(5) |- P(4); P(5) |- P(5); P(6) |- P(5); P(6) |- P(6); P(7) |- P(6); P(7) |- P(7); P(8) |- P(7); P(8) |- P(8)}",
    8: "{|- P(9); P(0) |-; P(0) |- P(0); P(1) |- P(0); P(1) |- P(1); P(2) |- P(1); P(2) |- P(2); P(3) |- P(2); P(3) |- P(3); P(4) |- P(3); P(4) |- P(4); P(5) |- P(4); P(5) |- P(5); P(6) |- P(5); P(6) |- P(6); P(7) |- P(6); P(7) |- P(7); P(8) |- P(7); P(8) |- P(8); P(9) |- P(8); P(9) |- P(9)}",
    9: "{|- P(10); P(0) |-; P(0) |- P(0); P(1) |- P(0); P(1) |- P(1); P(2) |- P(1); P(2) |- P(2); P(3) |- P(2); P(3) |- P(3); P(4) |- P(3); P(4) |- P(4); P(5) |- P(4); P(5) |- P(5); P(6) |- P(5); P(6) |- P(6); P(7) |- P(6); P(7) |- P(7); P(8) |- P(7); P(8) |- P(8); P(9) |- P(8); P(9) |- P(9); P(10) |- P(9); P(10) |- P(10)}",
}


def cli_rows(capsys):
    out = {}
    for N in range(10):
        assert main(["char", "--proof", "psi", "--at", str(N)]) == 0
        text, _ = capsys.readouterr()
        out[N] = set(parse_clause_set(text.strip()))
    return out


def swap_sides(c):
    return normalize(Clause(c.succ, c.ante))


def test_criterion_1_reference_rows(capsys):
    t0 = time.perf_counter()
    got = cli_rows(capsys)
    elapsed = time.perf_counter() - t0
    bad = [N for N in range(10) if got[N] != set(parse_clause_set(REFERENCE_ROWS[N]))]
    ok = not bad and elapsed < 5
    note = (f"rows differ at N={bad}; every differing row equals the reference with antecedent "
            f"and succedent swapped ({elapsed:.2f}s)" if bad else f"all rows equal ({elapsed:.2f}s)")
    record(1, ok, note)


def test_rows_equal_reference_with_sides_swapped(capsys):
    t0 = time.perf_counter()
    got = cli_rows(capsys)
    assert time.perf_counter() - t0 < 5
    for N in range(10):
        want = {swap_sides(c) for c in parse_clause_set(REFERENCE_ROWS[N])}
        assert got[N] == want, N
        assert oracles.pair_set(got[N]) == oracles.chain_clause_set(N)


def test_criterion_2_characteristic_sets_unsat(implchain, examples, growth):
    t0 = time.perf_counter()
    failed, count = [], 0
    for env in (implchain, examples, growth):
        for name in env.proofs:
            for N in range(7):
                count += 1
                if not is_unsat(char_clause_set(name, N, env)):
                    failed.append((name, N))
    elapsed = time.perf_counter() - t0
    record(2, not failed and elapsed < 10,
           f"{count} instances, satisfiable: {failed or 'none'} ({elapsed:.2f}s)")


def test_criterion_3_refutation_pipeline(implchain, capsys):
    problems = []
    slowest = 0.0
    for N in range(9):
        t0 = time.perf_counter()
        code = main(["refute", "--proof", "psi", "--at", str(N), "--verify"])
        slowest = max(slowest, time.perf_counter() - t0)
        out, _ = capsys.readouterr()
        last = out.strip().splitlines()[-1]
        if code != 0 or "end clause |-" not in last or "verified" not in last:
            problems.append((N, last))
    # independent re-check of the tree against the evaluated set, without the CLI
    term, env = char_env(implchain, "psi")
    r = build_refutation_schema(term, env)
    for N in range(9):
        g, _ = eval_refutation(r, N)
        cs = char_clause_set("psi", N, implchain)
        if check_deduction(g, cs, allow_weakening=True) != Clause():
            problems.append((N, "end clause"))
    g, _ = eval_refutation(r, 0)
    w = [DWeak(DLeaf(Clause()), C(t)) for t in
         ("|- P(0), P(1)", "P(0) |- P(1)", "P(1) |- P(0)", "P(0), P(1) |-")]
    want = DRes(DRes(w[0], w[1], P(0)), DRes(w[2], w[3], P(0)), P(1))
    if g != want:
        problems.append((0, "tree shape"))
    record(3, not problems and slowest < 30,
           f"N=0..8 verified, N=0 tree exact, slowest {slowest:.2f}s" if not problems
           else f"problems: {problems}")


def test_criterion_4_worked_examples(implchain, examples):
    checks = {}
    t1 = lambda k: eval_ct(CTApp("T1", const(k)), 0, examples)
    t2 = lambda k: eval_ct(CTApp("T2", const(k)), 0, examples)
    checks["T1 at 1"] = t1(1) == Times(Leaf(C("P(0) |-")), Leaf(Clause()))
    checks["T2 at 1"] = t2(1) == Plus(Leaf(C("|- Q(0)")), Leaf(Clause()))
    checks["T1 at 2"] = t1(2) == Times(Leaf(C("P(1) |-")),
                                       Plus(Leaf(C("|- Q(0)")), Leaf(Clause())))
    checks["T1 at 2 set"] = semantics(t1(2)) == {C("P(1) |- Q(0)"), C("P(1) |-")}
    checks["phi top set"] = char_clause_set("phi", 1, examples) == {
        C("P(0), P(1) |-"), C("P(0) |- P(1)"), C("|- P(0), P(1)"), C("P(1) |- P(0)")}
    checks["phi top sets"] = all(
        char_clause_set("phi", N, examples) == top_clause_set([P(i) for i in range(N + 1)])
        for N in range(6))
    terms = saturate(examples.clause_sets["sat_ex"])
    tops = top_clause_set([P(0), P(1)])
    checks["saturation"] = len(terms) == 8 and {(t.child.clause, t.extra) for t in terms} == {
        (c, d) for c in (C("|- P(0)"), C("P(1) |-")) for d in tops}
    checks["shift"] = all(
        end_clause(eval_res(examples.res_terms["shift"], N, examples)) == C("P(%d) |-" % (N + 1))
        for N in range(6))
    checks["resolution tree"] = check_deduction(
        eval_res(examples.res_terms["res_tree"], 0, examples),
        examples.clause_sets["res_ex"]) == Clause()
    checks["w-resolution tree"] = check_deduction(
        eval_res(examples.res_terms["wres_tree"], 0, examples),
        examples.clause_sets["wres_ex"], allow_weakening=True) == Clause()
    checks["binary tree base"] = res_seq("bintree", 0, examples, (Clause(),)) == \
        DRes(DLeaf(C("|- P(0)")), DLeaf(C("P(0) |-")), P(0))
    checks["binary tree instances"] = all(
        check_deduction(eval_res(examples.res_terms["bintree_next"], N, examples),
                        top_clause_set([P(i) for i in range(N + 2)])) == Clause()
        for N in range(1, 7))
    short = one_atom_per_level(AtomSetSchema.of({"P": N_VAR}))
    checks["binary tree text"] = show_res(short.definition.rec) == \
        "r(rho(n; C o (|- P(n+1))), rho(n; C o (P(n+1) |-)); P(n+1))"
    bad = [k for k, v in checks.items() if not v]
    record(4, not bad, f"{len(checks)} checks, failing: {bad or 'none'}")


def bound_violations(env, name, top=6):
    r = env.res_terms[name]
    bound = clause_bound(r, env)
    out = []
    for a in range(top + 1):
        n = distinct_leaf_count(eval_res(r, a, env))
        if n > bound(a):
            out.append((a, n, str(bound(a))))
    return bound, out


def test_criterion_5_clause_bound(growth, examples):
    notes, ok = [], True
    for env, name in ((growth, "rhoexp_at"), (examples, "bintree_at")):
        bound, bad = bound_violations(env, name)
        ok &= not bad
        notes.append(f"{name}: bound {bound}, violations (alpha, leaves, bound) {bad or 'none'}")
    record(5, ok, "; ".join(notes))


def test_clause_bound_holds_for_single_self_call_schemata(implchain, examples):
    for env, name in ((implchain, "chain_at"), (implchain, "mchain_at"), (examples, "shift")):
        _, bad = bound_violations(env, name, top=10)
        assert not bad, name


def random_clause_set(rng):
    k = rng.randint(1, 6)
    atoms = [P(i) for i in range(k)]
    out = set()
    for _ in range(rng.randint(1, 3 * k)):
        width = rng.randint(0, min(3, k))
        picked = rng.sample(atoms, width)
        cut = rng.randint(0, width)
        out.add(normalize(Clause(picked[:cut], picked[cut:])))
    return frozenset(out)


def test_criterion_6_top_set_properties():
    rng = random.Random(20261016)
    fails, n_unsat = [], 0
    for i in range(200):
        cs = random_clause_set(rng)
        top = top_clause_set(atoms_of(cs))
        if not is_unsat(top) or oracles.brute_sat(oracles.pair_set(top)):
            fails.append((i, "top set satisfiable"))
        if not all(is_tautology(c) or any(subsumes(c, d) for d in top) for c in cs):
            fails.append((i, "clause neither tautology nor subsuming"))
        if not oracles.brute_sat(oracles.pair_set(cs)):
            n_unsat += 1
            if not all(any(subsumes(c, d) and not is_tautology(c) for c in cs) for d in top):
                fails.append((i, "top clause not subsumed"))
    record(6, not fails and n_unsat > 0,
           f"200 sets, {n_unsat} unsatisfiable, failures: {fails or 'none'}")


def set_subsumes(xs, ys):
    return all(any(subsumes(x, y) for x in xs) for y in ys)


def configs(s):
    n = len(s.ante) + len(s.succ)
    for bits in itertools.product([False, True], repeat=n):
        yield Config(bits[:len(s.ante)], bits[len(s.ante):])


def test_criterion_7_canonic_sets(implchain):
    rng = random.Random(7)
    fails = []
    for i in range(50):
        f = strategies.random_formula(rng, 4)
        p = identity_proof(f)
        check_proof(p, strategies.ENV)
        if semantics(extract_ground(p, Config([True], [False]))) != left(f):
            fails.append(("left", i, str(f)))
        if semantics(extract_ground(p, Config([False], [True]))) != right(f):
            fails.append(("right", i, str(f)))
    done = 0
    while done < 25:
        p = strategies.random_cut_free(rng, rng.randint(1, 10))
        s = check_proof(p, strategies.ENV)
        if not s.ante and not s.succ:
            continue
        done += 1
        conf = strategies.random_config(rng, s)
        cs = semantics(extract_ground(p, conf))
        if not set_subsumes(cs, canonic_sequent(apply_config(s, conf))):
            fails.append(("subsumption", done, str(s)))
    n_ent = 0
    for name, d in implchain.proofs.items():
        for N in range(5):
            s = eval_sequent(d.end, N, implchain)
            for conf in configs(d.end):
                n_ent += 1
                if not entails(char_clause_set(name, N, implchain, conf),
                               canonic_sequent(apply_config(s, conf))):
                    fails.append(("entailment", name, N, conf.key))
    record(7, not fails, f"50 formulas, 25 cut-free proofs, {n_ent} entailments; "
                         f"failures: {fails or 'none'}")


def chain_results(implchain, name):
    out = {}
    for N in range(1, 9):
        g = eval_res(implchain.res_terms[name], N, implchain)
        try:
            out[N] = check_deduction(g, char_clause_set("psi", N, implchain)) == Clause()
        except DeductionError as e:
            out[N] = str(e)
    return out


def test_criterion_8_chain_refutation(implchain):
    res = chain_results(implchain, "chain_at")
    bad = {N: v for N, v in res.items() if v is not True}
    note = "N=1..8 refuted without weakening" if not bad else \
        f"rejected at N={sorted(bad)}; N=1: {bad[min(bad)]}"
    record(8, not bad, note)


def test_mirrored_chain_refutes_without_weakening(implchain):
    assert all(v is True for v in chain_results(implchain, "mchain_at").values())


def test_criterion_9_dpll_against_truth_table():
    rng = random.Random(12)
    bad = []
    for i in range(500):
        k = rng.randint(1, 12)
        atoms = [P(j) for j in range(k)]
        cs = []
        for _ in range(rng.randint(1, 4 * k)):
            width = rng.randint(1, min(3, k))
            picked = rng.sample(atoms, width)
            cut = rng.randint(0, width)
            cs.append(Clause(picked[:cut], picked[cut:]))
        t_ok, t_model = truth_table_sat(cs)
        d_ok, d_model = dpll_sat(cs)
        if t_ok != d_ok:
            bad.append(i)
        elif d_ok and not all(sequent_value(c, d_model) for c in cs):
            bad.append(i)
    record(9, not bad, f"500 sets, disagreements: {bad or 'none'}")
