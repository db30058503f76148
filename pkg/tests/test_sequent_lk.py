import itertools
from collections import Counter

import pytest
from hypothesis import given, strategies as st

from schemata.arith import Expr, N_VAR, ZERO, const
from schemata.dsl import parse, parse_formula, parse_proof, parse_sequent
from schemata.formula import Atom, impl
from schemata.lk import (Axiom, Binary, Link, ProofError, Unary, check_env, check_proof,
                         children, conclusions, eval_proof, induced_configs, scope_for,
                         subst_links, subst_param_proof)
from schemata.sequent import (Config, Sequent, apply_config, compose, eval_sequent,
                              subsequent)

from oracles import chain_formula


def P(i):
    return Atom("P", i if isinstance(i, Expr) else const(i))


def seq(text, env=None):
    return parse_sequent(text, env)


# ------------------------------------------------------------- sequents

def test_compose():
    assert compose(seq("A(0) |- B(0)"), seq("C(0) |- D(0)")) == seq("A(0), C(0) |- B(0), D(0)")
    s = seq("P(1) |- P(2)")
    assert compose(Sequent(), s) == s
    assert compose(seq("A(0) |-"), seq("A(0) |-")) == seq("A(0), A(0) |-")


def test_subsequent():
    small = seq("P(0), Q(1) |- Q(2)")
    big = seq("P(0), Q(1), R(2) |- P(1) /\\ R(3), Q(2)")
    assert subsequent(small, big)
    assert not subsequent(big, small)
    assert subsequent(big, big)
    assert not subsequent(seq("A(0), A(0) |-"), seq("A(0) |-"))


def test_apply_config():
    s = seq("P(0), Q(1) |- R(2)")
    assert apply_config(s, Config([False, True], [False])) == seq("Q(1) |-")
    assert apply_config(s, Config.empty(s)) == Sequent()
    assert apply_config(s, Config.full(s)) == s
    with pytest.raises(ValueError):
        apply_config(s, Config([True], [True]))


def test_config_keys():
    c = Config([True, False], [True])
    assert c.key == "10|1"
    assert Config.from_key("10|1") == c
    assert Config.from_key("|") == Config()
    for bad in ("10", "1|0|1", "2|0"):
        with pytest.raises(ValueError):
            Config.from_key(bad)


# ---------------------------------------------------- induced configurations

def marks(s: Sequent, c: Config) -> dict:
    out = {}
    for f, m in itertools.chain(zip(s.ante, c.ante), zip(s.succ, c.succ)):
        out.setdefault(f, set()).add(m)
    return out


def test_induced_implr_marks_follow_formulas():
    # A, B |- C -> D marked (1,0 |- 1); the premise holds C, A, B |- D
    a, b, c, d = (Atom(x, ZERO) for x in "ABCD")
    prem = Sequent((c, a, b), (d,))
    node = Unary("implr", Axiom(a))
    (ind,) = induced_configs(node, Config([True, False], [True]), [prem])
    assert marks(prem, ind) == {c: {True}, a: {True}, b: {False}, d: {True}}


def test_induced_cut_marks_cut_formula():
    env = parse("")
    p = parse_proof("cut(P(1), impll(ax(P(0)), ax(P(1))), wr(P(2), ax(P(1))))", env)
    out = conclusions(p, env)
    end = out[id(p)][1]
    s1, s2 = out[id(p.left)][1], out[id(p.right)][1]
    c1, c2 = induced_configs(p, Config.empty(end), [s1, s2])
    assert c1 == Config([False, False], [True])
    assert c2 == Config([True], [False, False])


def test_induced_weakening_drops_head():
    node = Unary("wl", Axiom(P(0)), P(5))
    (ind,) = induced_configs(node, Config([True, False], [True]), [seq("P(0) |- P(0)")])
    assert ind == Config([False], [True])
    node = Unary("wr", Axiom(P(0)), P(5))
    (ind,) = induced_configs(node, Config([False], [False, True]), [seq("P(0) |- P(0)")])
    assert ind == Config([False], [False])


def _check_step(node, concl, prems, conf):
    """The marks on the premises agree with the conclusion formula by formula."""
    ind = induced_configs(node, conf, prems)
    assert all(c.fits(s) for c, s in zip(ind, prems))
    r = node.rule
    sel = Counter(apply_config(concl, conf).ante + apply_config(concl, conf).succ)
    got = Counter()
    for s, c in zip(prems, ind):
        t = apply_config(s, c)
        got += Counter(t.ante + t.succ)
    if r in ("xl", "xr"):
        assert got == sel
    elif r in ("wl", "wr"):
        w = concl.ante[0] if r == "wl" else concl.succ[-1]
        marked = conf.ante[0] if r == "wl" else conf.succ[-1]
        assert got + (Counter([w]) if marked else Counter()) == sel
    elif r in ("cl", "cr"):
        f = concl.ante[0] if r == "cl" else concl.succ[-1]
        marked = conf.ante[0] if r == "cl" else conf.succ[-1]
        assert got == sel + (Counter([f]) if marked else Counter())
    elif r == "cut":
        f = node.formula
        assert got == sel + Counter([f, f])
    else:
        # logical rule: every auxiliary formula carries the principal's mark
        principal_mark = conf.succ[-1] if r in ("negr", "orr1", "orr2", "implr", "andr") \
            else conf.ante[0]
        for s, c in zip(prems, ind):
            edge = []
            if r in ("negl",):
                edge = [c.succ[-1]]
            elif r in ("negr",):
                edge = [c.ante[0]]
            elif r in ("andl1", "andl2", "orl"):
                edge = [c.ante[0]]
            elif r in ("orr1", "orr2", "andr"):
                edge = [c.succ[-1]]
            elif r == "implr":
                edge = [c.ante[0], c.succ[-1]]
            assert all(m == principal_mark for m in edge)
        if r == "impll":
            assert ind[0].succ[-1] == principal_mark == ind[1].ante[0]


@pytest.mark.parametrize("N", [0, 1, 2])
def test_induced_configs_agree_with_formulas(implchain, N):
    g = eval_proof(Link("psi", N_VAR), N, implchain)
    concl = conclusions(g, implchain)
    end = concl[id(g)][1]
    # all configurations of the end-sequent, traced through the whole proof
    for bits in itertools.product([False, True], repeat=len(end)):
        conf = Config(bits[:len(end.ante)], bits[len(end.ante):])
        stack = [(g, conf)]
        while stack:
            node, c = stack.pop()
            kids = children(node)
            if not kids:
                continue
            prems = [concl[id(k)][1] for k in kids]
            _check_step(node, concl[id(node)][1], prems, c)
            stack.extend(zip(kids, induced_configs(node, c, prems)))


# ------------------------------------------------------------ checking

def test_check_psi_base(implchain):
    d = implchain.proofs["psi"]
    end = check_proof(d.base, implchain, scope_for(d, implchain, False))
    assert end == seq("Q(0), P(0) |- P(1)", implchain)
    assert eval_sequent(end, 0, implchain) == Sequent((impl(P(0), P(1)), P(0)), (P(1),))


def test_check_axiom():
    a = Atom("P", N_VAR)
    assert check_proof(Axiom(a), parse("")) == Sequent((a,), (a,))


def test_axiom_must_be_atomic():
    from schemata.formula import Neg
    with pytest.raises(ProofError, match="axiom"):
        check_proof(Axiom(Neg(P(0))), parse(""))


def test_cut_shape_rejected():
    env = parse("")
    # right premise P(0) |- P(0) does not start with the cut formula P(1)
    bad = Binary("cut", Axiom(P(1)), Axiom(P(0)), P(1))
    with pytest.raises(ProofError, match="cut"):
        check_proof(bad, env)
    bad = Binary("cut", Axiom(P(0)), Axiom(P(1)), P(1))
    with pytest.raises(ProofError, match="left premise"):
        check_proof(bad, env)


def test_rule_shape_errors():
    env = parse("")
    cases = [
        (Unary("cl", Axiom(P(0))), "c:l"),
        (Unary("xl", Axiom(P(0)), pos=0), "position"),
        (Unary("andl1", Unary("negr", Axiom(P(0))), P(1)), "andl1"),
        (Binary("andr", Axiom(P(0)), Axiom(P(1))), "contexts"),
    ]
    for p, msg in cases:
        with pytest.raises(ProofError, match=msg):
            check_proof(p, env)


def test_error_carries_path():
    env = parse("")
    p = Unary("wl", Unary("cr", Axiom(P(0))), P(1))
    with pytest.raises(ProofError) as e:
        check_proof(p, env)
    assert e.value.path == "root.child"


def test_missing_payload_rejected():
    for make in (lambda: Unary("andl1", Axiom(P(0))), lambda: Unary("xl", Axiom(P(0))),
                 lambda: Unary("def", Axiom(P(0))), lambda: Binary("cut", Axiom(P(0)), Axiom(P(0))),
                 lambda: Unary("frob", Axiom(P(0)))):
        with pytest.raises(ValueError):
            make()


def test_def_must_unfold(implchain):
    from schemata.dsl import DSLError
    with pytest.raises(DSLError, match="atoms"):
        parse_proof("def(Q(1) |- Q(0) /\\ (P(1) -> P(2)), ax(Q(1)))", implchain)
    folded = parse_proof("def(Q(1) |- (P(0) -> P(1)) /\\ (P(1) -> P(2)), link(idq, 1))", implchain)
    with pytest.raises(ProofError, match="not related"):
        check_proof(folded, implchain)
    unfolded = parse_proof("def(Q(1) |- Q(0) /\\ (P(1) -> P(2)), link(idq, 1))", implchain)
    assert check_proof(unfolded, implchain) == seq("Q(1) |- Q(0) /\\ (P(1) -> P(2))", implchain)
    bad = Unary("def", Axiom(P(0)), target=Sequent((P(1),), (P(0),)))
    with pytest.raises(ProofError, match="def"):
        check_proof(bad, implchain)
    good = Unary("def", Unary("implr", Axiom(P(0))), target=Sequent(
        (), (impl(P(0), P(0)),)))
    assert check_proof(good, implchain) == Sequent((), (impl(P(0), P(0)),))


def test_link_checks():
    text_ok = "proof id { end: P(n) |- P(n); n -> ax(P(n)); }"
    env = parse(text_ok)
    assert check_proof(Link("id", Expr(2, 1)), env) == seq("P(2*n+1) |- P(2*n+1)")
    with pytest.raises(ProofError, match="undefined"):
        check_proof(Link("nope", N_VAR), env)


def test_bad_recursive_link_rejected():
    env = parse("proof f { end: P(n) |- P(n); 0 -> ax(P(0)); n+1 -> link(f, n+1); }")
    with pytest.raises(ProofError, match="argument n"):
        check_env(env)
    env = parse("proof f { end: P(n) |- P(n); 0 -> link(f, n); n+1 -> ax(P(n+1)); }")
    with pytest.raises(ProofError, match="base case"):
        check_env(env)


def test_recursive_end_sequent_checked():
    env = parse("proof f { end: P(n) |- P(n); 0 -> ax(P(0)); n+1 -> ax(P(n+2)); }")
    with pytest.raises(ProofError, match="recursive case"):
        check_env(env)


def test_corpus_checks(implchain, examples, growth):
    for env in (implchain, examples, growth):
        check_env(env)


# ----------------------------------------------------------- evaluation

def test_eval_psi_zero(implchain):
    g = eval_proof(Link("psi", N_VAR), 0, implchain)
    # hand unfolding of the base case: one implication left on the two axioms
    assert g == Binary("impll", Axiom(P(0)), Axiom(P(1)))
    assert check_proof(g, implchain) == Sequent((impl(P(0), P(1)), P(0)), (P(1),))


def test_eval_axiom():
    assert eval_proof(Axiom(Atom("P", Expr(2, 1))), 1, parse("")) == Axiom(P(3))


def test_eval_psi_two(implchain):
    g = eval_proof(Link("psi", N_VAR), 2, implchain)
    q2 = parse_formula("((P(0) -> P(1)) /\\ (P(1) -> P(2))) /\\ (P(2) -> P(3))")
    assert check_proof(g, implchain) == Sequent((q2, P(0)), (P(3),))
    assert q2 == parse_formula(chain_formula(2))


def test_eval_has_no_def_or_link(implchain):
    g = eval_proof(Link("psi", N_VAR), 3, implchain)
    stack = [g]
    while stack:
        q = stack.pop()
        assert not isinstance(q, Link)
        assert not (isinstance(q, Unary) and q.rule == "def")
        stack.extend(children(q))


def test_eval_linked_argument(implchain):
    # psi(2n) at N = 1 is psi at 2
    assert eval_proof(Link("psi", Expr(2, 0)), 1, implchain) == eval_proof(Link("psi", N_VAR), 2, implchain)


# ------------------------------------------------------------- links

def test_subst_links_leaf():
    phi = Axiom(P(0))
    assert subst_links(Link("psi", N_VAR), "psi", phi) == phi


def test_subst_links_link_free():
    p = Binary("impll", Axiom(P(0)), Axiom(P(1)))
    assert subst_links(p, "psi", Axiom(P(3))) == p


def test_subst_links_target_mismatch():
    with pytest.raises(ProofError, match="no replacement"):
        subst_links(Link("chi", N_VAR), "psi", Axiom(P(0)))


def test_subst_links_psi_rec(implchain):
    # psi's recursive body links chi and tau; at n = 0 these give one cut on P(0) -> P(2)
    d = implchain.proofs["psi"]
    table = {name: eval_proof(Link(name, Expr(1, 1)), 0, implchain) for name in ("chi", "tau")}
    ground = eval_proof(subst_links(subst_param_proof(d.rec, ZERO), table), 0, implchain)
    assert isinstance(ground, Binary) and ground.rule == "cut"
    assert ground.formula == impl(P(0), P(2))
    assert check_proof(ground, implchain) == Sequent((parse_formula(chain_formula(1)), P(0)), (P(2),))
    assert ground == eval_proof(Link("psi", N_VAR), 1, implchain)


# ------------------------------------------------------------ properties

def corpus_defs(*envs):
    for env in envs:
        for d in env.proofs.values():
            yield env, d


@pytest.mark.parametrize("N", range(7))
def test_evaluation_sound(implchain, examples, growth, N):
    for env, d in corpus_defs(implchain, examples, growth):
        g = eval_proof(Link(d.name, N_VAR), N, env)
        assert check_proof(g, env) == eval_sequent(d.end, N, env), d.name


def test_def_erasure_consistent(implchain, examples, growth):
    for env, d in corpus_defs(implchain, examples, growth):
        for body, rec in ((d.base, False), (d.rec, True)):
            out = conclusions(body, env, scope_for(d, env, rec))
            for node, s in out.values():
                if isinstance(node, Unary) and node.rule == "def":
                    prem = out[id(node.child)][1]
                    for N in range(5):
                        assert eval_sequent(prem, N, env) == eval_sequent(s, N, env)


@given(st.integers(0, 6), st.integers(1, 3), st.integers(0, 4))
def test_eval_commutes_with_parameter(N, a, b):
    env = parse("proof id { end: P(n) |- P(n); n -> ax(P(n)); }")
    e = Expr(a, b)
    assert eval_proof(Link("id", e), N, env) == Axiom(P(e.eval(N)))
