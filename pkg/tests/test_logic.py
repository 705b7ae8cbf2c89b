import random
from fractions import Fraction as F

import pytest

from fuzzytop.fuzzyset import FuzzySubset
from fuzzytop.logic import (BOT, TOP, And, Const, Eq, Exists, Func, Interpretation, Or, ParseError, Pred, Sequent,
                            Var, check_derivation, check_metatheorems, check_rule_soundness, check_theory_lemmas,
                            classical_sat, eval_term, free_vars, grade_sat, is_free_for, lindenbaum,
                            lindenbaum_class, parse_formula, parse_sequent, random_derivation, random_formula,
                            random_interpretation, random_rule_instance, random_term, rule_instance,
                            sequent_grade, show, side_conditions, subst_formula, subst_term, theory_from_space)
from fuzzytop.space import generate_topology
from fuzzytop.system import check_graded_system, is_spatial

x, y = Var("x"), Var("y")


def interp():
    return Interpretation(["d1", "d2"], {"c": "d1"}, {"f": {("d1",): "d1", ("d2",): "d2"}},
                          {"p": {("d1",): F(1, 5), ("d2",): F(9, 10)}, "q": {("d1",): F(3, 5), ("d2",): F(3, 5)},
                           "a": {(): F(9, 10)}, "b": {(): F(2, 5)}})


def test_parse_examples():
    phi = parse_formula("p(x) & (q(x) | r(x))")
    assert isinstance(phi, And) and isinstance(phi.right, Or) and len(phi.right.items) == 2
    phi = parse_formula("exists x. p(x,c1)")
    assert isinstance(phi, Exists) and phi.body.args[1] == Const("c1")
    assert parse_formula("true") == TOP and parse_formula("false") == BOT


def test_round_trip():
    rng = random.Random(11)
    for _ in range(200):
        phi = random_formula(rng, 4)
        assert parse_formula(show(phi)) == phi


def test_parse_errors():
    for bad in ("p(x", "p(x) &", "exists . p(x)", "x = ", "p(x) q(x)"):
        with pytest.raises(ParseError):
            parse_formula(bad)
    seq, g = parse_sequent("p(x) |- q(x) @ 3/5")
    assert g == F(3, 5) and seq.lhs == Pred("p", (x,))


def test_substitution():
    t = Func("f", (Const("c"),))
    assert subst_term(x, t, "x") == t
    ex = Exists("x", Pred("p", (x,)))
    assert subst_formula(ex, t, "x") == ex
    assert subst_formula(TOP, t, "x") == TOP
    assert subst_formula(Pred("p", (x,)), y, "x") == Pred("p", (y,))
    assert not is_free_for(y, "x", Exists("y", Pred("q", (x, y))))
    assert free_vars(Exists("x", Pred("q", (x, y)))) == {"y"}


def test_semantics_examples():
    I = interp()
    assert eval_term({}, Const("c"), I) == "d1"
    assert eval_term({"x": "d2"}, x, I) == "d2"
    assert eval_term({}, Func("f", (Const("c"),)), I) == "d1"
    assert grade_sat({}, BOT, I) == 0
    assert grade_sat({}, Exists("x", Pred("p", (x,))), I) == F(9, 10)
    s = {"x": "d1"}
    assert grade_sat(s, And(Pred("p", (x,)), Pred("q", (x,))), I) == F(1, 5)
    phi = parse_formula("p(x) & q(x)")
    assert sequent_grade(phi, phi, I) == 1
    assert sequent_grade(phi, TOP, I) == 1
    assert sequent_grade(Pred("a"), Pred("b"), I) == F(2, 5)
    assert grade_sat({}, Or(()), I) == 0


def test_rule_instances_sound():
    rng = random.Random(21)
    for _ in range(30):
        I = random_interpretation(rng, rng.randint(1, 3))
        inst = [random_rule_instance(rng, 3) for _ in range(10)]
        r = check_rule_soundness(I, inst)
        assert r.ok, r.summary()


def test_frobenius_is_one():
    rng = random.Random(2)
    I = random_interpretation(rng, 3)
    for _ in range(30):
        phi = random_formula(rng, 2)
        psi = random_formula(rng, 2)
        if "y" in free_vars(phi):
            continue
        _, c = rule_instance("9", phi=phi, psi=psi, y="y")
        assert sequent_grade(c.lhs, c.rhs, I) == 1


def test_side_conditions():
    phi = Exists("y", Pred("q", (x, y)))
    assert not side_conditions("7", xs=["x"], ys=["y"], phi=phi)
    assert not side_conditions("9", phi=Pred("p", (y,)), y="y")


def test_metatheorems():
    rng = random.Random(9)
    I = random_interpretation(rng, 3)
    samples = []
    for _ in range(50):
        s = {v: rng.choice(I.domain) for v in "xyz"}
        s2 = dict(s, z=rng.choice(I.domain))
        samples.append((s, s2, random_formula(rng, 3), random_term(rng, 2), rng.choice("xyz")))
    assert check_metatheorems(I, samples).ok


def test_classical_agrees_on_crisp():
    rng = random.Random(5)
    for _ in range(50):
        I = random_interpretation(rng, 2, values=[F(0), F(1)])
        phi = random_formula(rng, 3)
        s = {v: rng.choice(I.domain) for v in "xyz"}
        assert (grade_sat(s, phi, I) == 1) == classical_sat(s, phi, I)


def test_derivation_examples():
    I = interp()
    phi, psi, chi = Pred("a"), Pred("b"), Pred("a")
    prem = [(Sequent(phi, psi), F(3, 5)), (Sequent(psi, chi), F(4, 5))]
    tree = {"rule": "2", "conclusion": Sequent(phi, chi), "premises": [{"premise": 0}, {"premise": 1}]}
    r = check_derivation(prem, tree)
    assert r.ok and r.value == F(3, 5)
    r = check_derivation([], {"rule": "1", "conclusion": "p(x) |- p(x)"})
    assert r.ok and r.value == 1
    r = check_derivation([], {"rule": "1", "conclusion": "p(x) |- q(x)"})
    assert "well formed" in r.failed_laws()
    r = check_derivation(prem, tree, I)
    assert "premise grades compatible" in r.failed_laws()


def test_random_derivations():
    rng = random.Random(13)
    for _ in range(20):
        I = random_interpretation(rng, 2)
        prem, tree = random_derivation(rng, I, depth=3)
        r = check_derivation(prem, tree, I)
        assert r.ok, r.summary()


def test_cut_property():
    rng = random.Random(17)
    I = random_interpretation(rng, 2)
    for _ in range(40):
        a, b, d = (random_formula(rng, 2) for _ in range(3))
        assert min(sequent_grade(b, d, I), sequent_grade(d, a, I)) <= sequent_grade(b, a, I)


def test_lindenbaum():
    I = interp()
    D = lindenbaum(I, [TOP, BOT])
    assert D.frame.size == 2 and check_graded_system(D).ok
    D = lindenbaum(I, [parse_formula("p(x)"), parse_formula("q(x)")])
    assert check_graded_system(D).ok and is_spatial(D)
    phi = parse_formula("p(x)")
    assert lindenbaum_class(D, I, phi) == lindenbaum_class(D, I, And(phi, phi))


def test_space_theory():
    X = ("u", "v")
    S = generate_topology([FuzzySubset(X, [F(1, 2), F(1, 3)]), FuzzySubset(X, [F(1, 4), 1])], X)
    Th = theory_from_space(S)
    assert check_theory_lemmas(Th).ok
    P = Th.vars
    assert Th.grade(P[1], P[1]) == 1
    assert Th.grade(P[1], Th.top_var) == 1


def test_interpretation_check():
    I = interp()
    assert I.check().ok
    broken = Interpretation(["d1", "d2"], {"c": "d3"}, {}, {"p": {("d1",): F(1)}})
    assert set(broken.check().failed_laws()) == {"constants in domain", "predicates total"}
