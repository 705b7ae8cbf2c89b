"""Fuzzy geometric logic: syntax, graded satisfaction, sequent grades, rules and derivations."""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .fuzzyset import FuzzySubset, empty, graded_inclusion, intersection, union
from .lattice import FiniteFrame, GradedFrame
from .report import Report
from .system import FuzzyTopSystem, GradedFuzzyTopSystem
from .truth import ONE, ZERO, fmt, godel_arrow, inf_family, sup_family, tv


# ---- syntax ----------------------------------------------------------------------

@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    name: str


@dataclass(frozen=True)
class Func:
    name: str
    args: tuple


@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Bot:
    pass


@dataclass(frozen=True)
class Pred:
    name: str
    args: tuple = ()


@dataclass(frozen=True)
class Eq:
    left: object
    right: object


@dataclass(frozen=True)
class And:
    left: object
    right: object


@dataclass(frozen=True)
class Or:
    items: tuple


@dataclass(frozen=True)
class Exists:
    var: str
    body: object


TOP = Top()
BOT = Bot()


def disj(*items):
    return Or(tuple(items))


def conj_all(items):
    items = list(items)
    if not items:
        return TOP
    acc = items[0]
    for it in items[1:]:
        acc = And(acc, it)
    return acc


def term_vars(t) -> frozenset:
    if isinstance(t, Var):
        return frozenset([t.name])
    if isinstance(t, Func):
        out = frozenset()
        for a in t.args:
            out |= term_vars(a)
        return out
    return frozenset()


def free_vars(phi) -> frozenset:
    if isinstance(phi, (Top, Bot)):
        return frozenset()
    if isinstance(phi, Pred):
        out = frozenset()
        for a in phi.args:
            out |= term_vars(a)
        return out
    if isinstance(phi, Eq):
        return term_vars(phi.left) | term_vars(phi.right)
    if isinstance(phi, And):
        return free_vars(phi.left) | free_vars(phi.right)
    if isinstance(phi, Or):
        out = frozenset()
        for it in phi.items:
            out |= free_vars(it)
        return out
    if isinstance(phi, Exists):
        return free_vars(phi.body) - {phi.var}
    raise TypeError(f"not a formula: {phi!r}")


def all_vars(phi) -> frozenset:
    if isinstance(phi, Exists):
        return all_vars(phi.body) | {phi.var}
    if isinstance(phi, And):
        return all_vars(phi.left) | all_vars(phi.right)
    if isinstance(phi, Or):
        out = frozenset()
        for it in phi.items:
            out |= all_vars(it)
        return out
    return free_vars(phi)


def subst_term(t, t2, x: str):
    """t[t2/x]."""
    if isinstance(t, Var):
        return t2 if t.name == x else t
    if isinstance(t, Func):
        return Func(t.name, tuple(subst_term(a, t2, x) for a in t.args))
    return t


def subst_formula(phi, t, x: str):
    """φ[t/x]; a quantifier on x blocks the substitution. No renaming of bound variables."""
    return subst_simultaneous(phi, {x: t})


def _subst_term_sim(t, m):
    if isinstance(t, Var):
        return m.get(t.name, t)
    if isinstance(t, Func):
        return Func(t.name, tuple(_subst_term_sim(a, m) for a in t.args))
    return t


def subst_simultaneous(phi, m: dict):
    """Replace free occurrences of every variable in m at once."""
    if not m or isinstance(phi, (Top, Bot)):
        return phi
    if isinstance(phi, Pred):
        return Pred(phi.name, tuple(_subst_term_sim(a, m) for a in phi.args))
    if isinstance(phi, Eq):
        return Eq(_subst_term_sim(phi.left, m), _subst_term_sim(phi.right, m))
    if isinstance(phi, And):
        return And(subst_simultaneous(phi.left, m), subst_simultaneous(phi.right, m))
    if isinstance(phi, Or):
        return Or(tuple(subst_simultaneous(it, m) for it in phi.items))
    if isinstance(phi, Exists):
        if phi.var in m:
            m = {k: v for k, v in m.items() if k != phi.var}
        return Exists(phi.var, subst_simultaneous(phi.body, m))
    raise TypeError(f"not a formula: {phi!r}")


def is_free_for(t, x: str, phi) -> bool:
    """No free occurrence of x in φ lies under a quantifier binding a variable of t."""
    tv_ = term_vars(t)

    def walk(f, bound):
        if isinstance(f, (Top, Bot)):
            return True
        if isinstance(f, (Pred, Eq)):
            return x not in free_vars(f) or not (bound & tv_)
        if isinstance(f, And):
            return walk(f.left, bound) and walk(f.right, bound)
        if isinstance(f, Or):
            return all(walk(it, bound) for it in f.items)
        if isinstance(f, Exists):
            if f.var == x:
                return True
            return walk(f.body, bound | {f.var})
        raise TypeError(f)

    return walk(phi, frozenset())


# ---- printing and parsing ------------------------------------------------------------

def show_term(t) -> str:
    if isinstance(t, (Var, Const)):
        return t.name
    return f"{t.name}(" + ",".join(show_term(a) for a in t.args) + ")"


def show(phi) -> str:
    if isinstance(phi, Top):
        return "true"
    if isinstance(phi, Bot):
        return "false"
    if isinstance(phi, Pred):
        if not phi.args:
            return phi.name
        return f"{phi.name}(" + ",".join(show_term(a) for a in phi.args) + ")"
    if isinstance(phi, Eq):
        return f"{show_term(phi.left)} = {show_term(phi.right)}"
    if isinstance(phi, And):
        return f"({show(phi.left)} & {show(phi.right)})"
    if isinstance(phi, Or):
        if len(phi.items) < 2:
            return "or(" + ",".join(show(it) for it in phi.items) + ")"
        return "(" + " | ".join(show(it) for it in phi.items) + ")"
    if isinstance(phi, Exists):
        return f"(exists {phi.var}. {show(phi.body)})"
    raise TypeError(phi)


class ParseError(ValueError):
    def __init__(self, msg, pos):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


_TOKEN = re.compile(r"\s*(?:(\|-)|([A-Za-z_][A-Za-z0-9_']*)|([()&|=,.@])|(\d+(?:/\d+)?))")
_CONST_NAME = re.compile(r"c\d*$")


def _tokenize(text):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos:pos + 1]!r}", pos)
        kind = "turnstile" if m.group(1) else "id" if m.group(2) else "sym" if m.group(3) else "num"
        out.append((kind, m.group(m.lastindex), m.start(m.lastindex)))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text, constants):
        self.toks = _tokenize(text)
        self.i = 0
        self.constants = constants

    def peek(self):
        return self.toks[self.i]

    def take(self, value=None):
        tok = self.toks[self.i]
        if value is not None and tok[1] != value:
            raise ParseError(f"expected {value!r}, found {tok[1] or 'end of input'!r}", tok[2])
        self.i += 1
        return tok

    def formula(self):
        tok = self.peek()
        if tok[1] == "exists":
            self.take()
            v = self.take()
            if v[0] != "id":
                raise ParseError("expected a variable", v[2])
            self.take(".")
            return Exists(v[1], self.formula())
        return self.disjunction()

    def disjunction(self):
        items = [self.conjunction()]
        while self.peek()[1] == "|":
            self.take()
            items.append(self.conj_or_exists())
        return items[0] if len(items) == 1 else Or(tuple(items))

    def conj_or_exists(self):
        if self.peek()[1] == "exists":
            return self.formula()
        return self.conjunction()

    def conjunction(self):
        left = self.atom()
        while self.peek()[1] == "&":
            self.take()
            if self.peek()[1] == "exists":
                right = self.formula()
            else:
                right = self.atom()
            left = And(left, right)
        return left

    def atom(self):
        tok = self.peek()
        if tok[1] == "(":
            self.take()
            f = self.formula()
            self.take(")")
            return f
        if tok[0] != "id":
            raise ParseError(f"unexpected {tok[1] or 'end of input'!r}", tok[2])
        if tok[1] == "true":
            self.take()
            return TOP
        if tok[1] == "false":
            self.take()
            return BOT
        if tok[1] == "exists":
            return self.formula()
        if tok[1] == "or" and self.toks[self.i + 1][1] == "(":
            self.take()
            self.take("(")
            items = []
            if self.peek()[1] != ")":
                items.append(self.formula())
                while self.peek()[1] == ",":
                    self.take()
                    items.append(self.formula())
            self.take(")")
            return Or(tuple(items))
        # predicate or equation
        save = self.i
        name = self.take()[1]
        if self.peek()[1] == "(":
            self.take()
            args = self.term_list()
            self.take(")")
            if self.peek()[1] == "=":
                self.i = save
                return self.equation()
            return Pred(name, args)
        if self.peek()[1] == "=":
            self.i = save
            return self.equation()
        # a bare identifier used as a formula is a 0-ary predicate
        return Pred(name, ())

    def equation(self):
        left = self.term()
        self.take("=")
        return Eq(left, self.term())

    def term_list(self):
        args = []
        if self.peek()[1] == ")":
            return tuple(args)
        args.append(self.term())
        while self.peek()[1] == ",":
            self.take()
            args.append(self.term())
        return tuple(args)

    def term(self):
        tok = self.take()
        if tok[0] != "id":
            raise ParseError("expected a term", tok[2])
        if self.peek()[1] == "(":
            self.take()
            args = self.term_list()
            self.take(")")
            return Func(tok[1], args)
        if tok[1] in self.constants or (self.constants is _DEFAULT and _CONST_NAME.match(tok[1])):
            return Const(tok[1])
        return Var(tok[1])


_DEFAULT = frozenset()


def parse_formula(text: str, constants=None):
    """Parse ASCII syntax. Bare identifiers in term position are variables unless
    listed in ``constants`` (by default names like c, c1, c2 are constants)."""
    p = _Parser(text, _DEFAULT if constants is None else frozenset(constants))
    f = p.formula()
    tok = p.peek()
    if tok[0] != "end":
        raise ParseError(f"trailing input {tok[1]!r}", tok[2])
    return f


@dataclass(frozen=True)
class Sequent:
    lhs: object
    rhs: object

    def __str__(self):
        return f"{show(self.lhs)} |- {show(self.rhs)}"


def parse_sequent(text: str, constants=None):
    """'phi |- psi' or 'phi |- psi @ p/q'; returns (Sequent, grade or None)."""
    grade = None
    if "@" in text:
        text, g = text.rsplit("@", 1)
        grade = tv(g.strip())
    if "|-" not in text:
        raise ParseError("missing '|-'", 0)
    left, right = text.split("|-", 1)
    return Sequent(parse_formula(left, constants), parse_formula(right, constants)), grade


# ---- semantics ---------------------------------------------------------------------

class Interpretation:
    def __init__(self, domain, constants=None, functions=None, predicates=None, default=None):
        self.domain = tuple(domain)
        if not self.domain:
            raise ValueError("empty domain")
        self.constants = dict(constants or {})
        self.functions = {k: dict(v) for k, v in (functions or {}).items()}
        self.predicates = {k: {kk: tv(vv) for kk, vv in v.items()} for k, v in (predicates or {}).items()}
        self.default = self.domain[0] if default is None else default

    def check(self, arities: dict | None = None) -> Report:
        r = Report("interpretation")
        for c, d in self.constants.items():
            r.check("constants in domain", d in self.domain, c)
        for name, table in self.functions.items():
            k = len(next(iter(table))) if table else (arities or {}).get(name, 0)
            for args in product(self.domain, repeat=k):
                r.check("functions total", table.get(args) in self.domain, (name, args))
        for name, table in self.predicates.items():
            k = len(next(iter(table))) if table else (arities or {}).get(name, 0)
            for args in product(self.domain, repeat=k):
                r.check("predicates total", args in table, (name, args))
        return r

    def to_json(self):
        return {
            "kind": "interpretation",
            "domain": [str(d) for d in self.domain],
            "constants": {k: str(v) for k, v in self.constants.items()},
            "functions": {k: {",".join(map(str, a)): str(v) for a, v in t.items()} for k, t in self.functions.items()},
            "predicates": {k: {",".join(map(str, a)): fmt(v) for a, v in t.items()} for k, t in self.predicates.items()},
        }


class UnboundVariable(KeyError):
    pass


def eval_term(s: dict, t, I: Interpretation):
    if isinstance(t, Const):
        return I.constants[t.name]
    if isinstance(t, Var):
        if t.name in s:
            return s[t.name]
        if I.default is None:
            raise UnboundVariable(t.name)
        return I.default
    if isinstance(t, Func):
        return I.functions[t.name][tuple(eval_term(s, a, I) for a in t.args)]
    raise TypeError(t)


def grade_sat(s: dict, phi, I: Interpretation) -> Fraction:
    if isinstance(phi, Top):
        return ONE
    if isinstance(phi, Bot):
        return ZERO
    if isinstance(phi, Pred):
        return I.predicates[phi.name][tuple(eval_term(s, a, I) for a in phi.args)]
    if isinstance(phi, Eq):
        return ONE if eval_term(s, phi.left, I) == eval_term(s, phi.right, I) else ZERO
    if isinstance(phi, And):
        a = grade_sat(s, phi.left, I)
        if a == 0:
            return ZERO
        return min(a, grade_sat(s, phi.right, I))
    if isinstance(phi, Or):
        return sup_family(grade_sat(s, it, I) for it in phi.items)
    if isinstance(phi, Exists):
        s2 = dict(s)
        best = ZERO
        for d in I.domain:
            s2[phi.var] = d
            best = max(best, grade_sat(s2, phi.body, I))
            if best == 1:
                break
        return best
    raise TypeError(phi)


def environments(variables, I: Interpretation):
    vs = sorted(variables)
    for vals in product(I.domain, repeat=len(vs)):
        yield dict(zip(vs, vals))


def sequent_grade(phi, psi, I: Interpretation) -> Fraction:
    """inf over environments on the free variables of the Gödel arrow."""
    vs = free_vars(phi) | free_vars(psi)
    return inf_family(godel_arrow(grade_sat(s, phi, I), grade_sat(s, psi, I)) for s in environments(vs, I))


def is_valid(phi, psi, I: Interpretation) -> bool:
    return sequent_grade(phi, psi, I) == 1


def classical_sat(s: dict, phi, I: Interpretation) -> bool:
    """Two-valued satisfaction, written independently of grade_sat; predicates read as value == 1."""
    if isinstance(phi, Top):
        return True
    if isinstance(phi, Bot):
        return False
    if isinstance(phi, Pred):
        return I.predicates[phi.name][tuple(eval_term(s, a, I) for a in phi.args)] == 1
    if isinstance(phi, Eq):
        return eval_term(s, phi.left, I) == eval_term(s, phi.right, I)
    if isinstance(phi, And):
        return classical_sat(s, phi.left, I) and classical_sat(s, phi.right, I)
    if isinstance(phi, Or):
        return any(classical_sat(s, it, I) for it in phi.items)
    if isinstance(phi, Exists):
        return any(classical_sat({**s, phi.var: d}, phi.body, I) for d in I.domain)
    raise TypeError(phi)


# ---- rules ---------------------------------------------------------------------------

RULES = ("1", "2", "3i", "3ii", "3iii", "3iv", "4i", "4ii", "5", "6", "7", "8i", "8ii", "9")
# how the conclusion grade relates to the premise grades: "one" means it is always 1
GRADE_LAW = {"1": "one", "2": "le", "3i": "one", "3ii": "one", "3iii": "one", "3iv": "eq",
             "4i": "one", "4ii": "le", "5": "one", "6": "one", "7": "one", "8i": "le", "8ii": "le",
             "9": "one"}


def tuple_eq(xs, ys):
    """(x1,...,xn) = (y1,...,yn) as a conjunction of componentwise equalities."""
    return conj_all(Eq(Var(x), Var(y)) for x, y in zip(xs, ys))


def rule_instance(rule: str, **kw):
    """Return (premises, conclusion) for one application of a rule."""
    phi, psi, chi = kw.get("phi"), kw.get("psi"), kw.get("chi")
    S = kw.get("S")
    if rule == "1":
        return [], Sequent(phi, phi)
    if rule == "2":
        return [Sequent(phi, psi), Sequent(psi, chi)], Sequent(phi, chi)
    if rule == "3i":
        return [], Sequent(phi, TOP)
    if rule == "3ii":
        return [], Sequent(And(phi, psi), phi)
    if rule == "3iii":
        return [], Sequent(And(phi, psi), psi)
    if rule == "3iv":
        return [Sequent(phi, psi), Sequent(phi, chi)], Sequent(phi, And(psi, chi))
    if rule == "4i":
        S = tuple(S)
        return [], Sequent(S[kw.get("k", 0)], Or(S))
    if rule == "4ii":
        S = tuple(S)
        return [Sequent(f, psi) for f in S], Sequent(Or(S), psi)
    if rule == "5":
        S = tuple(S)
        return [], Sequent(And(phi, Or(S)), Or(tuple(And(phi, f) for f in S)))
    if rule == "6":
        x = Var(kw["x"])
        return [], Sequent(TOP, Eq(x, x))
    if rule == "7":
        xs, ys = kw["xs"], kw["ys"]
        m = {x: Var(y) for x, y in zip(xs, ys)}
        return [], Sequent(And(tuple_eq(xs, ys), phi), subst_simultaneous(phi, m))
    if rule == "8i":
        x, y = kw["x"], kw["y"]
        return [Sequent(phi, subst_formula(psi, Var(x), y))], Sequent(phi, Exists(y, psi))
    if rule == "8ii":
        x, y = kw["x"], kw["y"]
        return [Sequent(Exists(y, phi), psi)], Sequent(subst_formula(phi, Var(x), y), psi)
    if rule == "9":
        y = kw["y"]
        return [], Sequent(And(phi, Exists(y, psi)), Exists(y, And(phi, psi)))
    raise ValueError(f"unknown rule {rule!r}")


def side_conditions(rule: str, **kw) -> bool:
    """Freeness conditions under which the rule instance is taken as well formed."""
    if rule == "7":
        return all(is_free_for(Var(y), x, kw["phi"]) for x, y in zip(kw["xs"], kw["ys"]))
    if rule == "8i":
        return is_free_for(Var(kw["x"]), kw["y"], kw["psi"])
    if rule == "8ii":
        return is_free_for(Var(kw["x"]), kw["y"], kw["phi"])
    if rule == "9":
        return kw["y"] not in free_vars(kw["phi"])
    return True


def check_rule_soundness(I: Interpretation, instances) -> Report:
    """instances: iterable of (rule, kwargs). Crisp preservation and the grade law."""
    r = Report("rule soundness")
    for rule, kw in instances:
        prem, concl = rule_instance(rule, **kw)
        pg = [sequent_grade(p.lhs, p.rhs, I) for p in prem]
        cg = sequent_grade(concl.lhs, concl.rhs, I)
        if all(g == 1 for g in pg):
            r.check(f"rule {rule} crisp", cg == 1, str(concl))
        law = GRADE_LAW[rule]
        lo = inf_family(pg)
        if law == "one":
            ok = cg == 1
        elif law == "eq":
            ok = cg == lo
        else:
            ok = lo <= cg
        r.check(f"rule {rule} graded", ok, (str(concl), [str(g) for g in pg], str(cg)))
    return r


# ---- metatheorems -----------------------------------------------------------------

def check_metatheorems(I: Interpretation, samples) -> Report:
    """samples: (s, s2, phi, t, x) with environments covering the variables involved."""
    r = Report("metatheorems")
    for s, s2, phi, t, x in samples:
        tvars = term_vars(t)
        if all(s.get(v, I.default) == s2.get(v, I.default) for v in tvars):
            r.check("local determination (terms)", eval_term(s, t, I) == eval_term(s2, t, I), show_term(t))
        if all(s.get(v, I.default) == s2.get(v, I.default) for v in free_vars(phi)):
            r.check("local determination (formulas)", grade_sat(s, phi, I) == grade_sat(s2, phi, I), show(phi))
        # term clause with t' = t substituted into a term built from phi's first atom
        for u in _terms_of(phi):
            lhs = eval_term(s, subst_term(u, t, x), I)
            rhs = eval_term({**s, x: eval_term(s, t, I)}, u, I)
            r.check("substitution (terms)", lhs == rhs, (show_term(u), show_term(t), x))
        if is_free_for(t, x, phi):
            lhs = grade_sat(s, subst_formula(phi, t, x), I)
            rhs = grade_sat({**s, x: eval_term(s, t, I)}, phi, I)
            r.check("substitution (formulas)", lhs == rhs, (show(phi), show_term(t), x))
    for law in ("local determination (terms)", "local determination (formulas)",
                "substitution (terms)", "substitution (formulas)"):
        r.check(law, True)
    return r


def _terms_of(phi):
    if isinstance(phi, Pred):
        return list(phi.args)
    if isinstance(phi, Eq):
        return [phi.left, phi.right]
    if isinstance(phi, And):
        return _terms_of(phi.left) + _terms_of(phi.right)
    if isinstance(phi, Or):
        out = []
        for it in phi.items:
            out += _terms_of(it)
        return out
    if isinstance(phi, Exists):
        return _terms_of(phi.body)
    return []


# ---- Lindenbaum system --------------------------------------------------------------

class OutOfBudget(RuntimeError):
    pass


def lindenbaum(I: Interpretation, formulas, graded: bool = True, budget: int = 4096):
    """Points: environments on the free variables; frame: formula classes under equal columns,
    closed under binary ∧ and ⋁ (with ⊤ and the empty join)."""
    formulas = list(formulas)
    vs = frozenset()
    for f in formulas:
        vs |= free_vars(f)
    envs = list(environments(vs, I))
    reps = {}
    order = []

    def add(col, f):
        if col not in reps:
            if len(reps) >= budget:
                raise OutOfBudget(f"more than {budget} classes")
            reps[col] = f
            order.append(col)
            return True
        return False

    add(tuple(ONE for _ in envs), TOP)
    add(tuple(ZERO for _ in envs), Or(()))
    for f in formulas:
        add(tuple(grade_sat(s, f, I) for s in envs), f)
    frontier = list(order)
    while frontier:
        new = []
        cur = list(order)
        for a in frontier:
            for b in cur:
                m = tuple(min(u, v) for u, v in zip(a, b))
                if add(m, And(reps[a], reps[b])):
                    new.append(m)
                j = tuple(max(u, v) for u, v in zip(a, b))
                if add(j, Or((reps[a], reps[b]))):
                    new.append(j)
        frontier = new
    cols = order
    k = len(cols)
    pos = {c: i for i, c in enumerate(cols)}
    le = [[all(u <= v for u, v in zip(cols[i], cols[j])) for j in range(k)] for i in range(k)]
    meet = [[pos[tuple(min(u, v) for u, v in zip(cols[i], cols[j]))] for j in range(k)] for i in range(k)]
    join = [[pos[tuple(max(u, v) for u, v in zip(cols[i], cols[j]))] for j in range(k)] for i in range(k)]
    F = FiniteFrame([show(reps[c]) for c in cols], le, meet, join)
    points = [tuple(sorted(s.items())) for s in envs]
    sat = [[cols[i][x] for i in range(k)] for x in range(len(envs))]
    if not graded:
        return FuzzyTopSystem(points, F, sat)
    R = [[inf_family(godel_arrow(u, v) for u, v in zip(cols[i], cols[j])) for j in range(k)] for i in range(k)]
    return GradedFuzzyTopSystem(points, GradedFrame(F, R), sat)


def lindenbaum_class(D, I: Interpretation, phi) -> int:
    """Index of φ's class in a Lindenbaum system (KeyError when φ's column is absent)."""
    envs = [dict(p) for p in D.points]
    col = tuple(grade_sat(s, phi, I) for s in envs)
    for a in range(D.frame.size):
        if D.column(a) == col:
            return a
    raise KeyError(show(phi))


# ---- propositional theory of a space --------------------------------------------------

class SpaceTheory:
    """Propositional variables P0, P1, ... for the opens; grades by graded inclusion."""

    def __init__(self, S):
        self.space = S
        self.vars = [Pred(f"P{i}") for i in range(len(S.opens))]
        self.top_var = self.vars[S.index(S.top)]

    def open_of(self, alpha) -> FuzzySubset:
        S = self.space
        if isinstance(alpha, Top):
            return S.top
        if isinstance(alpha, Bot):
            return empty(S.carrier)
        if isinstance(alpha, Pred):
            return S.opens[int(alpha.name[1:])]
        if isinstance(alpha, And):
            return intersection(self.open_of(alpha.left), self.open_of(alpha.right))
        if isinstance(alpha, Or):
            return union([self.open_of(it) for it in alpha.items], S.carrier)
        raise TypeError(f"not a propositional formula: {alpha!r}")

    def var_of(self, T) -> Pred:
        return self.vars[self.space.index(T)]

    def grade(self, alpha, beta) -> Fraction:
        return graded_inclusion(self.open_of(alpha), self.open_of(beta))


def theory_from_space(S) -> SpaceTheory:
    return SpaceTheory(S)


def check_theory_lemmas(Th: SpaceTheory, families=None) -> Report:
    """Sequent laws of the theory of a space over all variables (triples for cut and
    meet intro) and the given families (default: every pair of variables and the
    full set) for the join laws."""
    r = Report("space theory")
    P = Th.vars
    S = Th.space
    g = Th.grade
    for a in P:
        r.check("identity", g(a, a) == 1, a.name)
        r.check("top", g(a, Th.top_var) == 1, a.name)
        r.check("axiom 1", g(a, a) == graded_inclusion(Th.open_of(a), Th.open_of(a)), a.name)
        for b in P:
            r.check("meet left", g(And(a, b), a) == 1, (a.name, b.name))
            r.check("meet right", g(And(a, b), b) == 1, (a.name, b.name))
            meet_var = Th.var_of(intersection(Th.open_of(a), Th.open_of(b)))
            r.check("axiom 2", g(And(a, b), meet_var) == 1 == g(meet_var, And(a, b)), (a.name, b.name))
            for c in P:
                if min(g(a, b), g(b, c)) > g(a, c):
                    r.fail("cut", (a.name, b.name, c.name))
                if min(g(a, b), g(a, c)) != g(a, And(b, c)):
                    r.fail("meet intro", (a.name, b.name, c.name))
    r.check("cut", True)
    r.check("meet intro", True)
    if families is None:
        families = [(a, b) for a in P for b in P] + [tuple(P)]
    for fam in families:
        big = Or(tuple(fam))
        join_var = Th.var_of(union([Th.open_of(f) for f in fam], S.carrier))
        r.check("axiom 3", g(join_var, big) == 1 == g(big, join_var), [f.name for f in fam])
        for f in fam:
            r.check("join upper bound", g(f, big) == 1, ([x.name for x in fam], f.name))
        for t in P:
            r.check("join elimination", inf_family(g(f, t) for f in fam) <= g(big, t), ([x.name for x in fam], t.name))
            r.check("frobenius", g(And(t, big), Or(tuple(And(t, f) for f in fam))) == 1,
                    ([x.name for x in fam], t.name))
    return r


# ---- derivations ------------------------------------------------------------------

class DerivationError(ValueError):
    pass


def _flatten_and(f):
    if isinstance(f, And):
        return _flatten_and(f.left) + _flatten_and(f.right)
    return [f]


def _check_step(node, concl: Sequent, prems):
    rule = str(node.get("rule"))
    L, R_ = concl.lhs, concl.rhs

    def need(cond, msg):
        if not cond:
            raise DerivationError(f"rule {rule}: {msg}")

    if rule == "1":
        need(not prems and L == R_, "expects φ ⊢ φ with no premises")
    elif rule == "2":
        need(len(prems) == 2, "needs two premises")
        need(prems[0].lhs == L and prems[0].rhs == prems[1].lhs and prems[1].rhs == R_, "premises do not chain")
    elif rule == "3i":
        need(not prems and R_ == TOP, "expects φ ⊢ true")
    elif rule in ("3ii", "3iii"):
        need(not prems and isinstance(L, And), "left side must be a conjunction")
        need(R_ == (L.left if rule == "3ii" else L.right), "right side is not the projected conjunct")
    elif rule == "3iv":
        need(len(prems) == 2 and isinstance(R_, And), "needs two premises and a conjunction on the right")
        need(prems[0] == Sequent(L, R_.left) and prems[1] == Sequent(L, R_.right), "premises do not match")
    elif rule == "4i":
        need(not prems and isinstance(R_, Or) and L in R_.items, "left side must be a disjunct of the right")
    elif rule == "4ii":
        need(isinstance(L, Or) and len(prems) == len(L.items), "needs one premise per disjunct")
        need(all(p == Sequent(f, R_) for p, f in zip(prems, L.items)), "premises do not match the disjuncts")
    elif rule == "5":
        need(not prems and isinstance(L, And) and isinstance(L.right, Or), "expects φ ∧ ⋁S on the left")
        phi, S = L.left, L.right.items
        need(R_ == Or(tuple(And(phi, f) for f in S)), "right side is not the distributed join")
    elif rule == "6":
        need(not prems and L == TOP and isinstance(R_, Eq) and R_.left == R_.right and isinstance(R_.left, Var),
             "expects true ⊢ x = x")
    elif rule == "7":
        need(not prems and isinstance(L, And), "expects (x = y) ∧ φ on the left")
        eqs = _flatten_and(L.left)
        need(all(isinstance(e, Eq) and isinstance(e.left, Var) and isinstance(e.right, Var) for e in eqs),
             "left conjunct must be variable equalities")
        xs = [e.left.name for e in eqs]
        ys = [e.right.name for e in eqs]
        need(len(set(xs)) == len(xs), "repeated variable on the left of the equalities")
        phi = L.right
        need(side_conditions("7", xs=xs, ys=ys, phi=phi), "substituted variable is not free for its target")
        need(R_ == subst_simultaneous(phi, {x: Var(y) for x, y in zip(xs, ys)}), "right side is not φ[y/x]")
    elif rule in ("8i", "8ii"):
        x = node.get("with")
        need(isinstance(x, str), "needs 'with': the substituted variable")
        need(len(prems) == 1, "needs one premise")
        if rule == "8i":
            need(isinstance(R_, Exists), "right side must be ∃y ψ")
            y, psi = R_.var, R_.body
            need(side_conditions("8i", x=x, y=y, psi=psi), "variable not free for y")
            need(prems[0] == Sequent(L, subst_formula(psi, Var(x), y)), "premise is not φ ⊢ ψ[x/y]")
        else:
            p = prems[0]
            need(isinstance(p.lhs, Exists) and p.rhs == R_, "premise must be ∃y φ ⊢ ψ")
            y, phi = p.lhs.var, p.lhs.body
            need(side_conditions("8ii", x=x, y=y, phi=phi), "variable not free for y")
            need(L == subst_formula(phi, Var(x), y), "left side is not φ[x/y]")
    elif rule == "9":
        need(not prems and isinstance(L, And) and isinstance(L.right, Exists), "expects φ ∧ ∃y ψ")
        y, phi, psi = L.right.var, L.left, L.right.body
        need(y not in free_vars(phi), "y occurs free in φ")
        need(R_ == Exists(y, And(phi, psi)), "right side is not ∃y (φ ∧ ψ)")
    else:
        raise DerivationError(f"unknown rule {rule!r}")


def _as_sequent(x, constants=None):
    if isinstance(x, Sequent):
        return x
    return parse_sequent(x, constants)[0]


def check_derivation(premises, tree, I: Interpretation | None = None, constants=None) -> Report:
    """premises: list of (sequent, grade); tree nodes are dicts with either
    {"premise": index} or {"rule": name, "conclusion": sequent, "premises": [nodes], "with": var}.
    The propagated bound is left in report.value."""
    prem = [(_as_sequent(s, constants), tv(g)) for s, g in premises]
    r = Report("derivation")

    def walk(node, path):
        if "premise" in node:
            k = node["premise"]
            if not (isinstance(k, int) and 0 <= k < len(prem)):
                raise DerivationError(f"{path}: no premise {k!r}")
            return prem[k]
        concl = _as_sequent(node["conclusion"], constants)
        kids = [walk(c, f"{path}.{i}") for i, c in enumerate(node.get("premises", []))]
        try:
            _check_step(node, concl, [s for s, _ in kids])
        except DerivationError as e:
            raise DerivationError(f"{path}: {e}") from None
        return concl, inf_family(g for _, g in kids)

    try:
        concl, bound = walk(tree, "root")
    except (DerivationError, ParseError, KeyError) as e:
        r.fail("well formed", str(e))
        return r
    r.check("well formed", True)
    r.value = bound
    r.conclusion = concl
    if I is not None:
        for s, g in prem:
            r.check("premise grades compatible", g <= sequent_grade(s.lhs, s.rhs, I), str(s))
        actual = sequent_grade(concl.lhs, concl.rhs, I)
        r.note(f"bound {fmt(bound)}, semantic grade {fmt(actual)}")
        r.check("bound below semantic grade", bound <= actual, (fmt(bound), fmt(actual)))
    return r


# ---- random generation (for property tests) ------------------------------------------

SIGNATURE = {"constants": ("c1",), "functions": {"f": 1}, "predicates": {"p": 1, "q": 2, "r": 0}}
VARIABLES = ("x", "y", "z")


def random_interpretation(rng, size: int, values=None, signature=SIGNATURE) -> Interpretation:
    D = tuple(f"d{i}" for i in range(size))
    values = values or [Fraction(k, 10) for k in range(11)]
    consts = {c: rng.choice(D) for c in signature["constants"]}
    funcs = {f: {args: rng.choice(D) for args in product(D, repeat=k)} for f, k in signature["functions"].items()}
    preds = {p: {args: rng.choice(values) for args in product(D, repeat=k)} for p, k in signature["predicates"].items()}
    return Interpretation(D, consts, funcs, preds)


def random_term(rng, depth: int, variables=VARIABLES, signature=SIGNATURE):
    roll = rng.random()
    if depth <= 0 or roll < 0.5:
        return Var(rng.choice(variables))
    if roll < 0.7:
        return Const(rng.choice(signature["constants"]))
    f = rng.choice(sorted(signature["functions"]))
    return Func(f, tuple(random_term(rng, depth - 1, variables, signature) for _ in range(signature["functions"][f])))


def random_atom(rng, variables=VARIABLES, signature=SIGNATURE):
    roll = rng.random()
    if roll < 0.08:
        return TOP
    if roll < 0.14:
        return BOT
    if roll < 0.26:
        return Eq(random_term(rng, 1, variables, signature), random_term(rng, 1, variables, signature))
    p = rng.choice(sorted(signature["predicates"]))
    return Pred(p, tuple(random_term(rng, 1, variables, signature) for _ in range(signature["predicates"][p])))


def random_formula(rng, depth: int, variables=VARIABLES, signature=SIGNATURE):
    if depth <= 0:
        return random_atom(rng, variables, signature)
    roll = rng.random()
    if roll < 0.25:
        return random_atom(rng, variables, signature)
    if roll < 0.55:
        return And(random_formula(rng, depth - 1, variables, signature),
                   random_formula(rng, depth - 1, variables, signature))
    if roll < 0.8:
        k = rng.choice((0, 1, 2, 2, 3))
        return Or(tuple(random_formula(rng, depth - 1, variables, signature) for _ in range(k)))
    return Exists(rng.choice(variables), random_formula(rng, depth - 1, variables, signature))


def random_rule_instance(rng, depth: int = 3, variables=VARIABLES):
    """A (rule, kwargs) pair satisfying the side conditions."""
    while True:
        rule = rng.choice(RULES)
        f = lambda: random_formula(rng, depth - 1, variables)
        kw = {"phi": f(), "psi": f(), "chi": f()}
        if rule in ("4i", "4ii", "5"):
            kw["S"] = tuple(f() for _ in range(rng.choice((1, 2, 3))))
            kw["k"] = rng.randrange(len(kw["S"]))
        if rule == "6":
            kw["x"] = rng.choice(variables)
        if rule == "7":
            n = rng.choice((1, 2))
            kw["xs"] = rng.sample(variables, n)
            kw["ys"] = [rng.choice(variables) for _ in range(n)]
        if rule in ("8i", "8ii", "9"):
            kw["x"] = rng.choice(variables)
            kw["y"] = rng.choice(variables)
        if side_conditions(rule, **kw):
            return rule, kw


def rename_free(phi, x: str, y: str):
    """Replace free occurrences of variable x by y (y assumed fresh)."""
    return subst_formula(phi, Var(y), x)


def random_derivation(rng, I: Interpretation, depth: int = 3, fdepth: int = 2, variables=VARIABLES):
    """Random derivation tree with premise leaves; premise grades are set to a random value not
    exceeding the premise's grade under I, so I is compatible with them."""
    premises = []
    values = sorted(set([ZERO, ONE] + [Fraction(k, 10) for k in range(11)]))
    f = lambda: random_formula(rng, fdepth, variables)

    def leaf(seq):
        g = sequent_grade(seq.lhs, seq.rhs, I)
        premises.append((seq, rng.choice([v for v in values if v <= g])))
        return {"premise": len(premises) - 1}, seq

    def axiom():
        while True:
            rule, kw = random_rule_instance(rng, fdepth + 1, variables)
            prem, concl = rule_instance(rule, **kw)
            if not prem:
                return {"rule": rule, "conclusion": concl, "premises": []}, concl

    def gen(d):
        roll = rng.random()
        if d <= 0 or roll < 0.2:
            return leaf(Sequent(f(), f())) if rng.random() < 0.6 else axiom()
        if roll < 0.3:
            return axiom()
        kind = rng.choice(("2", "3iv", "4ii", "8i", "8ii"))
        left, lseq = gen(d - 1)
        if kind == "2":
            right, rseq = leaf(Sequent(lseq.rhs, f()))
            concl = Sequent(lseq.lhs, rseq.rhs)
            return {"rule": "2", "conclusion": concl, "premises": [left, right]}, concl
        if kind == "3iv":
            right, rseq = leaf(Sequent(lseq.lhs, f()))
            concl = Sequent(lseq.lhs, And(lseq.rhs, rseq.rhs))
            return {"rule": "3iv", "conclusion": concl, "premises": [left, right]}, concl
        if kind == "4ii":
            right, rseq = leaf(Sequent(f(), lseq.rhs))
            concl = Sequent(Or((lseq.lhs, rseq.lhs)), lseq.rhs)
            return {"rule": "4ii", "conclusion": concl, "premises": [left, right]}, concl
        if kind == "8i":
            x = rng.choice(variables)
            y = "w"
            while y in all_vars(lseq.rhs) or y in all_vars(lseq.lhs):
                y += "'"
            psi = rename_free(lseq.rhs, x, y)
            concl = Sequent(lseq.lhs, Exists(y, psi))
            node = {"rule": "8i", "conclusion": concl, "premises": [left], "with": x}
            return node, concl
        # 8ii: premise ∃y φ ⊢ ψ as a leaf, the subtree is discarded
        y = rng.choice(variables)
        x = rng.choice(variables)
        phi = f()
        if not is_free_for(Var(x), y, phi):
            return left, lseq
        right, rseq = leaf(Sequent(Exists(y, phi), f()))
        concl = Sequent(subst_formula(phi, Var(x), y), rseq.rhs)
        return {"rule": "8ii", "conclusion": concl, "premises": [right], "with": x}, concl

    tree, _ = gen(depth)
    return premises, tree
