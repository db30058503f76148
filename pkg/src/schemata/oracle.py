"""Semantic ground truth: truth values, satisfiability and entailment."""

from __future__ import annotations

from itertools import product
from typing import Iterable, Optional

from .clauses import Clause, distinct_atoms
from .formula import AND, OR, Atom, Bin, Neg, SchemaError, atom_key, atoms_of

TRUTH_TABLE_LIMIT = 20


class Interpretation(dict):
    """Finite map from ground atoms to booleans; unmapped atoms are false."""

    def __missing__(self, key):
        return False


def truth_value(f, interp) -> bool:
    if isinstance(f, Atom):
        if not f.index.is_const:
            raise SchemaError(f"atom {f} is not ground")
        return bool(interp.get(f, False))
    if isinstance(f, Neg):
        return not truth_value(f.sub, interp)
    if isinstance(f, Bin):
        a = truth_value(f.left, interp)
        if f.op == AND:
            return a and truth_value(f.right, interp)
        if f.op == OR:
            return a or truth_value(f.right, interp)
        return (not a) or truth_value(f.right, interp)
    raise SchemaError(f"cannot evaluate non-ground formula {f}")


def sequent_value(s, interp) -> bool:
    """A sequent holds when some antecedent formula fails or some succedent formula holds."""
    return (not all(truth_value(f, interp) for f in s.ante)) or any(
        truth_value(f, interp) for f in s.succ)


clause_value = sequent_value


def formula_satisfiable(f) -> tuple:
    atoms = sorted(set(atoms_of(f)), key=atom_key)
    for bits in product((False, True), repeat=len(atoms)):
        interp = Interpretation(zip(atoms, bits))
        if truth_value(f, interp):
            return True, interp
    return False, None


def _encode(clauses):
    clauses = list(clauses)
    atoms = distinct_atoms(clauses)
    pos = {a: i for i, a in enumerate(atoms)}
    enc = []
    for c in clauses:
        neg = 0
        plus = 0
        for a in c.ante:
            neg |= 1 << pos[a]
        for a in c.succ:
            plus |= 1 << pos[a]
        enc.append((neg, plus))
    return atoms, enc


def truth_table_sat(clauses: Iterable[Clause]) -> tuple:
    """Enumerate assignments in order; return (sat, first model)."""
    atoms, enc = _encode(clauses)
    enc.sort(key=lambda c: bin(c[0] | c[1]).count("1"))
    k = len(atoms)
    for bits in range(1 << k):
        for neg, plus in enc:
            if not (neg & ~bits) and not (plus & bits):
                break
        else:
            return True, Interpretation((a, bool(bits >> i & 1)) for i, a in enumerate(atoms))
    return False, None


def dpll_sat(clauses: Iterable[Clause]) -> tuple:
    """DPLL with unit propagation and pure literals; branches on the least atom, false first."""
    atoms, enc = _encode(clauses)
    cnf = []
    for neg, plus in enc:
        lits = set()
        for i in range(len(atoms)):
            if neg >> i & 1:
                lits.add(-(i + 1))
            if plus >> i & 1:
                lits.add(i + 1)
        cnf.append(frozenset(lits))
    model = _dpll(cnf, {})
    if model is None:
        return False, None
    return True, Interpretation((a, model.get(i + 1, False)) for i, a in enumerate(atoms))


def _assign(cnf, lit):
    out = []
    for c in cnf:
        if lit in c:
            continue
        if -lit in c:
            c = c - {-lit}
        out.append(c)
    return out


def _dpll(cnf, assign) -> Optional[dict]:
    assign = dict(assign)
    while True:
        if any(not c for c in cnf):
            return None
        unit = next((c for c in cnf if len(c) == 1), None)
        if unit is not None:
            (lit,) = unit
        else:
            lits = set().union(*cnf) if cnf else set()
            pure = sorted(l for l in lits if -l not in lits)
            if not pure:
                break
            lit = pure[0]
        assign[abs(lit)] = lit > 0
        cnf = _assign(cnf, lit)
    if not cnf:
        return assign
    var = min(abs(l) for c in cnf for l in c)
    for lit in (-var, var):
        assign[var] = lit > 0
        r = _dpll(_assign(cnf, lit), assign)
        if r is not None:
            return r
    return None


def satisfiable(clauses: Iterable[Clause], limit: int = TRUTH_TABLE_LIMIT) -> tuple:
    clauses = list(clauses)
    if len(distinct_atoms(clauses)) <= limit:
        return truth_table_sat(clauses)
    return dpll_sat(clauses)


def is_unsat(clauses) -> bool:
    return not satisfiable(clauses)[0]


def negation_units(c: Clause) -> list:
    return [Clause((), (a,)) for a in c.ante] + [Clause((a,), ()) for a in c.succ]


def entails(left: Iterable[Clause], right: Iterable[Clause]) -> bool:
    """Every model of ``left`` satisfies every clause of ``right``."""
    left = list(left)
    return all(is_unsat(left + negation_units(c)) for c in right)
