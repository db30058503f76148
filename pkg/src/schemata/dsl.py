"""Text syntax for schema files: tokenizer, parser and printer."""

from __future__ import annotations

import re

from .arith import Expr, N_VAR, ZERO
from .clauses import Clause
from .clauseterm import CTApp, CTDef, Leaf, Plus, TermVar, Times
from .env import DefEnv
from .formula import (AND, IMPL, OR, Atom, Bin, DefAtom, Neg, PropDef, PropVar, SchemaError,
                      subst_propvar)
from .lk import Axiom, Binary, Link, ProofDef, Unary, subst_param_proof
from .resolution import (CApp, CComp, ClauseDef, CLit, CVar, RApp, ResDef, RLeaf, RRes,
                         RVar, RWeak, DLeaf, DRes)
from .sequent import Sequent


class DSLError(SchemaError):
    def __init__(self, msg: str, line: int = 0, col: int = 0):
        super().__init__(f"line {line}, column {col}: {msg}" if line else msg)
        self.line, self.col = line, col


PROOF_RULES = {
    "ax", "wl", "wr", "cl", "cr", "xl", "xr", "negl", "negr", "andl1", "andl2", "andr",
    "orl", "orr1", "orr2", "impll", "implr", "cut", "def", "link",
}
RESERVED = PROOF_RULES | {"n", "o", "r", "w", "X", "Xres", "end"}
IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_']*\Z")

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>(\#|//)[^\n]*)
  | (?P<num>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<string>"[^"\n]*")
  | (?P<sym>\|-|->|/\\|\\/|[~(){}\[\];,:*+=])
""", re.VERBOSE)


class Tok:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind, self.text, self.line, self.col = kind, text, line, col

    def __repr__(self):
        return f"{self.kind}:{self.text!r}@{self.line}:{self.col}"


def tokenize(text: str) -> list:
    toks, pos, line, start = [], 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise DSLError(f"unexpected character {text[pos]!r}", line, pos - start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line, start = line + 1, m.end()
        elif kind not in ("ws", "comment"):
            val = m.group()
            if kind == "string":
                kind, val = "ident", val[1:-1]
            toks.append(Tok(kind, val, line, pos - start + 1))
        pos = m.end()
    toks.append(Tok("eof", "", line, pos - start + 1))
    return toks


class Parser:
    def __init__(self, text: str, env: DefEnv = None):
        self.toks = tokenize(text)
        self.i = 0
        self.env = env if env is not None else DefEnv()
        # context
        self.formula_self = None
        self.in_rec = False
        self.proof_self = None
        self.clause_self = None
        self.res_self = None
        self.params = ()
        self.group = None

    # ---------------------------------------------------------- utilities
    @property
    def tok(self) -> Tok:
        return self.toks[self.i]

    def peek(self, k=1) -> Tok:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def error(self, msg, tok=None):
        tok = tok or self.tok
        raise DSLError(msg, tok.line, tok.col)

    def at(self, text) -> bool:
        return self.tok.text == text and self.tok.kind in ("sym", "ident")

    def eat(self, text) -> Tok:
        if not self.at(text):
            self.error(f"expected {text!r}, found {self.tok.text or 'end of input'!r}")
        t = self.tok
        self.i += 1
        return t

    def accept(self, text) -> bool:
        if self.at(text):
            self.i += 1
            return True
        return False

    def ident(self) -> str:
        if self.tok.kind != "ident":
            self.error(f"expected a name, found {self.tok.text or 'end of input'!r}")
        t = self.tok
        self.i += 1
        return t.text

    def number(self) -> int:
        if self.tok.kind != "num":
            self.error(f"expected a number, found {self.tok.text!r}")
        t = self.tok
        self.i += 1
        return int(t.text)

    def expr(self) -> Expr:
        if self.tok.kind == "num":
            k = self.number()
            if not self.accept("*"):
                return Expr(0, k)
            self.eat("n")
            c = k
        else:
            self.eat("n")
            c = 1
        d = self.number() if self.accept("+") else 0
        return Expr(c, d)

    def case_head(self, rec: bool):
        if rec:
            self.eat("n")
            self.eat("+")
            if self.number() != 1:
                self.error("expected 'n+1'")
        else:
            if self.number() != 0:
                self.error("expected '0'")
        self.eat("->")

    def define(self, category, name, value, tok):
        table = getattr(self.env, category)
        if name in table:
            self.error(f"{name!r} is already defined", tok)
        table[name] = value

    # ---------------------------------------------------------- formulas
    def formula(self):
        left = self.disjunction()
        if self.accept("->"):
            return Bin(IMPL, left, self.formula())
        return left

    def disjunction(self):
        f = self.conjunction()
        while self.accept("\\/"):
            f = Bin(OR, f, self.conjunction())
        return f

    def conjunction(self):
        f = self.unary()
        while self.accept("/\\"):
            f = Bin(AND, f, self.unary())
        return f

    def unary(self):
        if self.accept("~"):
            return Neg(self.unary())
        if self.accept("("):
            f = self.formula()
            self.eat(")")
            return f
        tok = self.tok
        if self.at("X") and self.peek().text != "(":
            if self.formula_self is None or not self.in_rec:
                self.error("the schema variable X may only occur in a recursive case")
            self.i += 1
            return PropVar()
        name = self.ident()
        if name in RESERVED:
            self.error(f"{name!r} is reserved", tok)
        self.eat("(")
        e = self.expr()
        self.eat(")")
        if name == self.formula_self:
            if not self.in_rec or e != N_VAR:
                self.error(f"{name} may only refer to itself as {name}(n) in its recursive case", tok)
            return PropVar()
        if name in self.env.formulas:
            return DefAtom(name, e)
        return Atom(name, e)

    def starts_formula(self, k=0) -> bool:
        t = self.peek(k)
        if t.kind == "sym":
            return t.text in ("(", "~")
        return t.kind == "ident" and t.text not in PROOF_RULES

    def formula_list(self) -> list:
        out = []
        if not self.starts_formula():
            return out
        out.append(self.formula())
        while self.at(",") and self.starts_formula(1):
            self.i += 1
            out.append(self.formula())
        return out

    def sequent(self) -> Sequent:
        ante = self.formula_list()
        self.eat("|-")
        return Sequent(ante, self.formula_list())

    def atom(self) -> Atom:
        """A plain indexed atom; defined symbols are not resolved here."""
        tok = self.tok
        name = self.ident()
        if name in RESERVED:
            self.error(f"{name!r} is reserved", tok)
        self.eat("(")
        e = self.expr()
        self.eat(")")
        return Atom(name, e)

    # ------------------------------------------------------------ proofs
    def proof(self):
        tok = self.tok
        rule = self.ident()
        if rule not in PROOF_RULES:
            self.error(f"unknown proof rule {rule!r}", tok)
        self.eat("(")
        if rule == "ax":
            atok = self.tok
            f = self.unary()
            if not isinstance(f, Atom):
                self.error(f"axioms are built on atoms, found {f}", atok)
            p = Axiom(f)
        elif rule == "link":
            ntok = self.tok
            name = self.ident()
            if name not in self.env.proofs and name != self.proof_self:
                self.error(f"link to undefined proof {name!r}", ntok)
            self.eat(",")
            p = Link(name, self.expr())
        elif rule in ("wl", "wr", "andl1", "andl2", "orr1", "orr2"):
            f = self.formula()
            self.eat(",")
            p = Unary(rule, self.proof(), f)
        elif rule in ("xl", "xr"):
            k = self.number()
            self.eat(",")
            p = Unary(rule, self.proof(), pos=k)
        elif rule in ("andr", "orl", "impll"):
            a = self.proof()
            self.eat(",")
            p = Binary(rule, a, self.proof())
        elif rule == "cut":
            f = self.formula()
            self.eat(",")
            a = self.proof()
            self.eat(",")
            p = Binary(rule, a, self.proof(), f)
        elif rule == "def":
            s = self.sequent()
            self.eat(",")
            p = Unary(rule, self.proof(), target=s)
        else:
            p = Unary(rule, self.proof())
        self.eat(")")
        return p

    # ----------------------------------------------------------- clauses
    def clause_literal(self) -> Clause:
        ante = self.atom_list()
        self.eat("|-")
        return Clause(ante, self.atom_list())

    def atom_list(self) -> list:
        out = []
        if self.tok.kind != "ident":
            return out
        out.append(self.atom())
        while self.at(",") and self.peek().kind == "ident" and self.peek(2).text == "(":
            self.i += 1
            out.append(self.atom())
        return out

    def _turnstile_ahead(self, stops) -> bool:
        depth, k = 0, self.i
        while self.toks[k].kind != "eof":
            t = self.toks[k].text
            if t in ("(", "["):
                depth += 1
            elif t in (")", "]"):
                if depth == 0:
                    return False
                depth -= 1
            elif depth == 0 and t in stops:
                return False
            elif depth == 0 and t == "|-":
                return True
            k += 1
        return False

    def cterm(self, bare=False):
        c = self.cprim(bare)
        while self.accept("o"):
            c = CComp(c, self.cprim(bare))
        return c

    def cprim(self, bare=False):
        if bare and self._turnstile_ahead({"o", ";"}):
            return CLit(self.clause_literal())
        if self.at("("):
            self.i += 1
            if self._turnstile_ahead({"o"}):
                c = CLit(self.clause_literal())
            else:
                c = self.cterm()
            self.eat(")")
            return c
        tok = self.tok
        name = self.ident()
        if name in self.params and not self.at("("):
            return CVar(name)
        if not self.at("("):
            self.error(f"unknown clause variable {name!r}", tok)
        self.eat("(")
        e = self.expr()
        self.eat(")")
        if name == self.clause_self:
            if not self.in_rec or e != N_VAR:
                self.error(f"{name} may only refer to itself as {name}(n) in its recursive case", tok)
            return CApp(name, e)
        if name not in self.env.clause_defs:
            self.error(f"undefined clause symbol {name!r} (write literal clauses in parentheses)", tok)
        return CApp(name, e)

    # ---------------------------------------------------- resolution terms
    def rterm(self):
        tok = self.tok
        if self.at("r") and self.peek().text == "(":
            self.i += 2
            a = self.rterm()
            self.eat(",")
            b = self.rterm()
            self.eat(";")
            p = self.atom()
            self.eat(")")
            return RRes(a, b, p)
        if self.at("w") and self.peek().text == "(":
            self.i += 2
            a = self.rterm()
            self.eat(";")
            c = self.cterm(bare=True)
            self.eat(")")
            return RWeak(a, c)
        if self.accept("Xres"):
            if self.res_self is None or not self.in_rec:
                self.error("Xres may only occur in a recursive case", tok)
            return RVar()
        if tok.kind == "ident" and self.peek().text == "(" and (
                tok.text in self.env.res_defs or tok.text == self.res_self):
            name = self.ident()
            self.eat("(")
            e = self.expr()
            args = []
            if self.accept(";"):
                args.append(self.cterm())
                while self.accept(","):
                    args.append(self.cterm())
            self.eat(")")
            if name == self.res_self and (not self.in_rec or e != N_VAR):
                self.error(f"{name} may only call itself at n in its recursive case", tok)
            return RApp(name, e, tuple(args))
        return RLeaf(self.cterm())

    # ------------------------------------------------------ clause terms
    def ct(self):
        t = self.ct_prod()
        while self.accept("+"):
            t = Plus(t, self.ct_prod())
        return t

    def ct_prod(self):
        t = self.ct_prim()
        while self.accept("*"):
            t = Times(t, self.ct_prim())
        return t

    def ct_prim(self):
        if self.accept("["):
            c = self.clause_literal()
            self.eat("]")
            return Leaf(c)
        if self.accept("("):
            t = self.ct()
            self.eat(")")
            return t
        tok = self.tok
        name = self.ident()
        self.eat("(")
        e = self.expr()
        self.eat(")")
        if self.group is not None and name in self.group:
            if not self.in_rec or e != N_VAR:
                self.error(f"group member {name} may only be used as {name}(n) in a recursive case", tok)
            return TermVar(name)
        if name not in self.env.ct_defs:
            self.error(f"undefined term symbol {name!r}", tok)
        return CTApp(name, e)

    # ------------------------------------------------------------ blocks
    def parse(self) -> DefEnv:
        while self.tok.kind != "eof":
            tok = self.tok
            kw = self.ident()
            handler = getattr(self, f"block_{kw}", None)
            if handler is None:
                self.error(f"unknown block {kw!r}", tok)
            handler()
        return self.env

    def _name(self):
        tok = self.tok
        name = self.ident()
        if name in RESERVED:
            self.error(f"{name!r} is reserved", tok)
        return tok, name

    def block_formula(self):
        tok, name = self._name()
        self.eat("{")
        self.formula_self = name
        try:
            self.in_rec = False
            self.case_head(False)
            base = self.formula()
            self.eat(";")
            if any(isinstance(a, (Atom, DefAtom)) and not a.index.is_const
                   for a in _formula_leaves(base)):
                self.error(f"the base case of {name} must not mention n", tok)
            self.in_rec = True
            self.case_head(True)
            rec = self.formula()
            self.eat(";")
        finally:
            self.formula_self, self.in_rec = None, False
        self.eat("}")
        self.define("formulas", name, PropDef(name, base, rec), tok)

    def block_proof(self):
        tok, name = self._name()
        self.eat("{")
        self.eat("end")
        self.eat(":")
        end = self.sequent()
        self.eat(";")
        self.proof_self = name
        try:
            if self.at("n") and self.peek().text == "->":
                self.i += 2
                body = self.proof()
                self.eat(";")
                if any(isinstance(x, Link) and x.name == name for x in _proof_nodes(body)):
                    self.error(f"non-recursive proof {name} links to itself", tok)
                base = subst_param_proof(body, ZERO)
                rec = subst_param_proof(body, Expr(1, 1))
            else:
                self.case_head(False)
                base = self.proof()
                self.eat(";")
                self.case_head(True)
                rec = self.proof()
                self.eat(";")
        finally:
            self.proof_self = None
        self.eat("}")
        self.define("proofs", name, ProofDef(name, end, base, rec), tok)

    def block_clause(self):
        tok, name = self._name()
        self.eat("{")
        self.clause_self = name
        try:
            self.case_head(False)
            base = self.clause_literal()
            self.eat(";")
            self.in_rec = True
            self.case_head(True)
            rec = self.cterm(bare=True)
            self.eat(";")
        finally:
            self.clause_self, self.in_rec = None, False
        self.eat("}")
        self.define("clause_defs", name, ClauseDef(name, base, rec), tok)

    def block_res(self):
        tok, name = self._name()
        if self.accept("="):
            r = self.rterm()
            self.eat(";")
            self.define("res_terms", name, r, tok)
            return
        params = []
        if self.accept("("):
            if not self.at(")"):
                params.append(self.ident())
                while self.accept(","):
                    params.append(self.ident())
            self.eat(")")
        self.eat("{")
        self.res_self, self.params = name, tuple(params)
        try:
            self.case_head(False)
            base = self.rterm()
            self.eat(";")
            self.in_rec = True
            self.case_head(True)
            rec = self.rterm()
            self.eat(";")
        finally:
            self.res_self, self.params, self.in_rec = None, (), False
        self.eat("}")
        self.define("res_defs", name, ResDef(name, tuple(params), base, rec), tok)

    def _ct_member(self, gid):
        tok = self.tok
        name = self.ident()
        self.eat("{")
        self.in_rec = False
        self.case_head(False)
        base = self.ct()
        self.eat(";")
        self.in_rec = True
        self.case_head(True)
        rec = self.ct()
        self.eat(";")
        self.eat("}")
        self.in_rec = False
        return tok, CTDef(name, base, rec, gid)

    def _ct_group(self, names, gid):
        self.group = set(names)
        defs = []
        try:
            for _ in names:
                defs.append(self._ct_member(gid))
        finally:
            self.group, self.in_rec = None, False
        for tok, d in defs:
            self.define("ct_defs", d.name, d, tok)

    def block_terms(self):
        gid = self.ident() if self.tok.kind == "ident" else None
        self.eat("{")
        # member names first, so that members may refer to each other
        names, k, depth = [], self.i, 0
        while depth > 0 or self.toks[k].text != "}":
            t = self.toks[k]
            if t.kind == "eof":
                self.error("unterminated terms block")
            if depth == 0 and t.kind == "ident":
                names.append(t.text)
            depth += {"{": 1, "}": -1}.get(t.text, 0)
            k += 1
        if not names:
            self.error("empty terms block")
        self._ct_group(names, gid or names[0])
        self.eat("}")

    def block_term(self):
        tok, name = self._name()
        if self.accept("="):
            t = self.ct()
            self.eat(";")
            self.define("ct_terms", name, t, tok)
            return
        self.i -= 1
        self._ct_group([name], name)

    def block_sequent(self):
        tok, name = self._name()
        self.eat("=")
        s = self.sequent()
        self.eat(";")
        self.define("sequents", name, s, tok)

    def block_clauses(self):
        tok, name = self._name()
        self.eat("=")
        cs = self.clause_set_literal()
        self.eat(";")
        self.define("clause_sets", name, cs, tok)

    def clause_set_literal(self) -> tuple:
        self.eat("{")
        out = []
        while not self.at("}"):
            out.append(self.clause_literal())
            if not self.accept(";"):
                break
        self.eat("}")
        return tuple(out)


def _formula_leaves(f):
    from .formula import walk
    return [g for g in walk(f) if isinstance(g, (Atom, DefAtom))]


def _proof_nodes(p):
    from .lk import children
    stack = [p]
    while stack:
        q = stack.pop()
        yield q
        stack.extend(children(q))


def parse(text: str, env: DefEnv = None) -> DefEnv:
    """Parse a schema file into a :class:`DefEnv` (extending ``env`` if given)."""
    return Parser(text, env).parse()


def _sub_parser(text: str, env) -> Parser:
    return Parser(text, env if env is not None else DefEnv())


def _finish(p: Parser, value):
    if p.tok.kind != "eof":
        p.error(f"unexpected {p.tok.text!r}")
    return value


def parse_formula(text: str, env=None):
    p = _sub_parser(text, env)
    return _finish(p, p.formula())


def parse_sequent(text: str, env=None) -> Sequent:
    p = _sub_parser(text, env)
    return _finish(p, p.sequent())


def parse_clause(text: str, env=None) -> Clause:
    p = _sub_parser(text, env)
    return _finish(p, p.clause_literal())


def parse_clause_set(text: str, env=None) -> tuple:
    p = _sub_parser(text, env)
    return _finish(p, p.clause_set_literal())


def parse_proof(text: str, env=None):
    p = _sub_parser(text, env)
    return _finish(p, p.proof())


def parse_res(text: str, env=None, params=()):
    p = _sub_parser(text, env)
    p.params = tuple(params)
    return _finish(p, p.rterm())


def parse_term(text: str, env=None):
    p = _sub_parser(text, env)
    return _finish(p, p.ct())


# ------------------------------------------------------------------ printer

def show_name(name: str) -> str:
    if IDENT_RE.match(name) and name not in RESERVED:
        return name
    return f'"{name}"'


def show_clause_schema(c) -> str:
    if isinstance(c, CLit):
        return f"({c.clause})"
    if isinstance(c, CComp):
        return f"{show_clause_schema(c.left)} o {show_clause_schema(c.right)}"
    if isinstance(c, CVar):
        return c.name
    return f"{show_name(c.name)}({c.arg})"


def show_res(r) -> str:
    if isinstance(r, RLeaf):
        return show_clause_schema(r.clause)
    if isinstance(r, RRes):
        return f"r({show_res(r.left)}, {show_res(r.right)}; {r.pivot})"
    if isinstance(r, RWeak):
        return f"w({show_res(r.child)}; {show_clause_schema(r.extra)})"
    if isinstance(r, RVar):
        return "Xres"
    args = "; " + ", ".join(show_clause_schema(c) for c in r.args) if r.args else ""
    return f"{show_name(r.name)}({r.arg}{args})"


def show_term(t) -> str:
    def wrap(u):
        s = show_term(u)
        return f"({s})" if isinstance(u, (Plus, Times)) else s

    if isinstance(t, Leaf):
        return f"[{t.clause}]"
    if isinstance(t, Plus):
        return f"{wrap(t.left)} + {wrap(t.right)}"
    if isinstance(t, Times):
        return f"{wrap(t.left)} * {wrap(t.right)}"
    if isinstance(t, TermVar):
        return f"{show_name(t.name)}(n)"
    return f"{show_name(t.name)}({t.arg})"


def show_proof(p, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(p, Axiom):
        return f"{pad}ax({p.atom})"
    if isinstance(p, Link):
        return f"{pad}link({show_name(p.name)}, {p.arg})"
    if isinstance(p, Unary):
        if p.rule in ("xl", "xr"):
            head = f"{p.rule}({p.pos},"
        elif p.rule == "def":
            head = f"def({p.target},"
        elif p.formula is not None:
            head = f"{p.rule}({p.formula},"
        else:
            head = f"{p.rule}("
        return f"{pad}{head}\n{show_proof(p.child, indent + 1)})"
    head = f"cut({p.formula}," if p.rule == "cut" else f"{p.rule}("
    return (f"{pad}{head}\n{show_proof(p.left, indent + 1)},\n"
            f"{show_proof(p.right, indent + 1)})")


def show_ct_group(defs, gid: str) -> str:
    lines = [f"terms {show_name(gid)} {{"]
    for d in defs:
        lines.append(f"  {show_name(d.name)} {{ 0 -> {show_term(d.base)}; "
                     f"n+1 -> {show_term(d.rec)}; }}")
    lines.append("}")
    return "\n".join(lines)


def print_env(env: DefEnv) -> str:
    out = []
    for d in env.formulas.values():
        rec = subst_propvar(d.rec, DefAtom(d.name, N_VAR))
        out.append(f"formula {show_name(d.name)} {{ 0 -> {d.base}; n+1 -> {rec}; }}")
    for name, s in env.sequents.items():
        out.append(f"sequent {show_name(name)} = {s};")
    for d in env.proofs.values():
        out.append(f"proof {show_name(d.name)} {{\n  end: {d.end};\n  0 ->\n"
                   f"{show_proof(d.base, 2)};\n  n+1 ->\n{show_proof(d.rec, 2)};\n}}")
    for d in env.clause_defs.values():
        out.append(f"clause {show_name(d.name)} {{ 0 -> {d.base}; "
                   f"n+1 -> {show_clause_schema(d.rec)}; }}")
    for name, cs in env.clause_sets.items():
        out.append(f"clauses {show_name(name)} = {{ {'; '.join(map(str, cs))} }};")
    for d in env.res_defs.values():
        params = f"({', '.join(d.params)})" if d.params else ""
        out.append(f"res {show_name(d.name)}{params} {{\n  0 -> {show_res(d.base)};\n"
                   f"  n+1 -> {show_res(d.rec)};\n}}")
    for name, r in env.res_terms.items():
        out.append(f"res {show_name(name)} = {show_res(r)};")
    groups = {}
    for d in env.ct_defs.values():
        groups.setdefault(d.group, []).append(d)
    for gid, defs in groups.items():
        out.append(show_ct_group(defs, gid))
    for name, t in env.ct_terms.items():
        out.append(f"term {show_name(name)} = {show_term(t)};")
    return "\n\n".join(out) + "\n"


def show_deduction(g) -> str:
    """Ground deduction in the ``r(..; A)`` / ``w(..; D)`` notation."""
    if isinstance(g, DLeaf):
        return f"({g.clause})"
    if isinstance(g, DRes):
        return f"r({show_deduction(g.left)}, {show_deduction(g.right)}; {g.pivot})"
    return f"w({show_deduction(g.child)}; {g.extra})"
