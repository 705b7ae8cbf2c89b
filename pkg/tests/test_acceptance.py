"""Acceptance suite: one test per criterion, each printing a single PASS/FAIL line.

All comparisons are exact rational comparisons.  Run standalone with
``python3 tests/test_acceptance.py`` to get just the sixteen lines.
"""
import random
import sys
import time
from fractions import Fraction
from itertools import combinations, product

import pytest

from fuzzytop import cat, logic, mvn, system as sysm
from fuzzytop.fuzzyset import FuzzySubset, graded_inclusion, intersection, union
from fuzzytop.lattice import (chain_frame, check_coproduct_universal, frame_coproduct, small_frames)
from fuzzytop.space import check_space, compact, kolmogorov, zero_dimensional
from fuzzytop.truth import godel_arrow, inf_family, make_chain, sup_family

SEED = 20240101


def _rng(k):
    return random.Random(f"{SEED}:{k}")


def _rand_q(rng, max_den=60):
    d = rng.randint(1, max_den)
    return Fraction(rng.randint(0, d), d)


# ---- criteria ------------------------------------------------------------------------

def criterion_1():
    """Gödel arrow laws."""
    rng = _rng(1)
    triples = [tuple(_rand_q(rng) for _ in range(3)) for _ in range(10_000)]
    triples += list(product(make_chain(5).elements, repeat=3))
    ar = godel_arrow
    bad = []
    for a, b, c in triples:
        ok = (ar(a, a) == 1
              and min(ar(a, b), ar(b, c)) <= ar(a, c)
              and (a > b or ar(a, c) >= ar(b, c))
              and (a > b or ar(c, a) <= ar(c, b))
              and min(ar(a, b), ar(a, c)) == ar(a, min(b, c))
              and all(inf_family(ar(x, c) for x in fam) == ar(sup_family(fam), c)
                      for fam in ((a,), (a, b), (b, a, c)))
              and ((a <= b) == (ar(a, b) == 1))
              and min(a, ar(a, b)) <= b)
        if not ok:
            bad.append((a, b, c))
    return not bad, f"{len(triples)} triples, {len(bad)} violations"


def _random_subset(rng, C):
    if rng.random() < 0.5:
        vals = make_chain(5).elements
        return FuzzySubset(C, [rng.choice(vals) for _ in C])
    return FuzzySubset(C, [_rand_q(rng, 12) for _ in C])


def criterion_2():
    """Graded inclusion laws."""
    rng = _rng(2)
    bad = []
    for _ in range(1000):
        C = tuple(range(rng.randint(1, 6)))
        T1, T2, T3 = (_random_subset(rng, C) for _ in range(3))
        X = FuzzySubset(C, [1] * len(C))
        g = graded_inclusion
        checks = {
            "reflexive": g(T1, T1) == 1,
            "antisymmetric": not (g(T1, T2) == 1 == g(T2, T1)) or T1 == T2,
            "transitive": min(g(T1, T2), g(T2, T3)) <= g(T1, T3),
            "meet below": g(intersection(T1, T2), T1) == 1 == g(intersection(T1, T2), T2),
            "below top": g(T1, X) == 1,
            "meet universal": min(g(T1, T2), g(T1, T3)) == g(T1, intersection(T2, T3)),
            "join above": all(g(T, union([T1, T2, T3])) == 1 for T in (T1, T2, T3)),
            "join universal": inf_family(g(T, T3) for T in (T1, T2)) == g(union([T1, T2]), T3)
            and g(union([], C), T3) == 1,
            "distributive": g(intersection(T1, union([T2, T3])), union([intersection(T1, T2), intersection(T1, T3)])) == 1,
            "modus ponens": all(min(T1(x), g(T1, T2)) <= T2(x) for x in C),
        }
        bad += [k for k, v in checks.items() if not v]
    return not bad, f"1000 triples, failures: {sorted(set(bad)) or 'none'}"


def criterion_3():
    """Binary + empty clauses imply the full subset clauses."""
    rng = _rng(3)
    valid = full = 0
    bad = []
    for i in range(200):
        roll = i % 4
        if roll == 0:
            D = cat.random_matrix_system(rng, max_points=5, max_frame=12)
        else:
            D = cat.random_system(rng, max_points=5, max_frame=12)
            if roll == 3:
                # perturb one entry; the result may or may not stay valid
                x = rng.randrange(len(D.points))
                a = rng.randrange(D.frame.size)
                rows = [list(r) for r in D.sat]
                rows[x][a] = rng.choice([Fraction(0), Fraction(1, 2), Fraction(1)])
                D = sysm.FuzzyTopSystem(D.points, D.frame, rows)
        if sysm.check_system(D).ok:
            valid += 1
            if sysm.check_system_full(D, limit=12).ok:
                full += 1
            else:
                bad.append(repr(D))
    return not bad and valid > 0, f"{valid} pass binary clauses, {full} pass all subsets"


def criterion_4():
    """J ⊣ Ext."""
    rng = _rng(4)
    Ds = [cat.random_system(rng) for _ in range(100)]
    Ss = [cat.random_space(rng) for _ in range(100)]
    maps = [cat.random_continuous_map(rng) for _ in range(30)]
    r = cat.check_adjunction_j_ext(Ds, Ss, maps)
    return r.ok, f"100 systems, 100 spaces; failed: {r.failed_laws() or 'none'}"


def criterion_5():
    """Quotients are spatial and isomorphic to J(Ext(-))."""
    rng = _rng(5)
    bad = 0
    for _ in range(100):
        Q, _ = sysm.quotient(cat.random_system(rng))
        JE = sysm.j(sysm.ext(Q))
        iso = sysm.find_system_isomorphism(JE, Q)
        ok = sysm.is_spatial(Q) and iso is not None and cat.check_equivalence("spatial", [Q]).ok
        bad += not ok
    return bad == 0, f"100 quotients, {bad} without an explicit isomorphism"


def criterion_6():
    """fm ⊣ S."""
    rng = _rng(6)
    Ds = [cat.random_system(rng, max_frame=12) for _ in range(100)]
    r = cat.check_adjunction_fm_s(Ds, small_frames(4), hom_limit=6)
    n_med = sum(D.frame.size <= 6 for D in Ds)
    return r.ok, f"100 units, mediation checked on {n_med}; failed: {r.failed_laws() or 'none'}"


def criterion_7():
    """Frame coproduct."""
    fs = small_frames(4)
    bad = 0
    for A in fs:
        for B in fs:
            cp = frame_coproduct(A, B)
            for C in fs:
                bad += not check_coproduct_universal(cp, C).ok
    size = frame_coproduct(chain_frame(3), chain_frame(3)).frame.size
    return bad == 0 and size == 6, f"{len(fs) ** 3} triples, {bad} failures; |3 ⊗ 3| = {size}"


def criterion_8():
    """Sum and product systems."""
    rng = _rng(8)
    bad = 0
    for _ in range(100):
        D = cat.random_system(rng, max_points=3, max_frame=6)
        E = cat.random_system(rng, max_points=3, max_frame=6)
        ok = sysm.check_system(sysm.system_sum([D, E])).ok
        P, cp = sysm.system_product(D, E)
        ok = ok and sysm.check_system(P).ok
        k = 0
        for xi in range(len(D.points)):
            for yi in range(len(E.points)):
                for a in range(D.frame.size):
                    for b in range(E.frame.size):
                        ok = ok and P.gr(k, cp.tensor(a, b)) == min(D.gr(xi, a), E.gr(yi, b))
                k += 1
        bad += not ok
    return bad == 0, f"100 pairs, {bad} failures"


def criterion_9():
    """MVn suite."""
    bad = [n for n in range(2, 7) if not mvn.check_lnc(mvn.chain_algebra(n)).ok]
    count = 0
    for X in (("u",), ("u", "v")):
        for A in mvn.enumerate_subalgebras(3, X):
            count += 1
            for chk in (mvn.check_lnc, mvn.check_prop_idempotents, mvn.check_prop_t1, mvn.check_prop_t_separation):
                if not chk(A).ok:
                    bad.append((X, A.size, chk.__name__))
    return not bad, f"chains n=2..6 and {count} subalgebras of 3^X; failures: {bad or 'none'}"


def criterion_10():
    """Prime filters and homs are in bijection."""
    bad = []
    count = 0
    for n in (2, 3, 4):
        for X in (("u",), ("u", "v")):
            for A in mvn.enumerate_subalgebras(n, X):
                count += 1
                if not mvn.bijection_check(A).ok or len(mvn.prime_filters(A)) != len(mvn.homs_to_chain(A)):
                    bad.append((n, X, A.size))
    A3 = mvn.chain_algebra(3)
    unique = mvn.prime_filters(A3) == [frozenset([A3.one])]
    return not bad and unique, f"{count} algebras, {len(bad)} failures; 3-bar primes = {{1}}: {unique}"


def criterion_11():
    """Boolean-space theorem and the double dual."""
    rng = _rng(11)
    Ds = [cat.random_valid_fbsys(rng, max_size=27) for _ in range(50)]
    spaces_ok = 0
    iso_ok = 0
    for D in Ds:
        S = mvn.ext_B(D)
        if compact(S) and kolmogorov(S) and zero_dimensional(S) and check_space(S).ok:
            spaces_ok += 1
        if cat.check_equivalence("boolean-system", [D]).ok:
            iso_ok += 1
    ok = spaces_ok == 50 and iso_ok == 50
    return ok, f"ext_B Boolean on {spaces_ok}/50; double-dual isomorphisms on {iso_ok}/50"


def criterion_12():
    """Rule soundness."""
    rng = _rng(12)
    bad = 0
    for _ in range(500):
        I = logic.random_interpretation(rng, rng.randint(1, 4))
        rule, kw = logic.random_rule_instance(rng, depth=4)
        r = logic.check_rule_soundness(I, [(rule, kw)])
        bad += not r.ok
    return bad == 0, f"500 samples, {bad} violations"


def criterion_13():
    """Local determination and substitution."""
    rng = _rng(13)
    bad = 0
    for _ in range(500):
        I = logic.random_interpretation(rng, rng.randint(1, 4))
        phi = logic.random_formula(rng, 3)
        t = logic.random_term(rng, 2)
        x = rng.choice(logic.VARIABLES)
        s = {v: rng.choice(I.domain) for v in logic.VARIABLES}
        s2 = dict(s)
        for v in logic.VARIABLES:
            if v not in logic.free_vars(phi) and rng.random() < 0.5:
                s2[v] = rng.choice(I.domain)
        bad += not logic.check_metatheorems(I, [(s, s2, phi, t, x)]).ok
    return bad == 0, f"500 samples, {bad} violations"


def criterion_14():
    """Two-valued reduction."""
    rng = _rng(14)
    bad = 0
    for _ in range(1000):
        I = logic.random_interpretation(rng, rng.randint(1, 3), values=[Fraction(0), Fraction(1)])
        phi = logic.random_formula(rng, 3)
        s = {v: rng.choice(I.domain) for v in logic.VARIABLES}
        g = logic.grade_sat(s, phi, I)
        bad += not (g in (0, 1) and (g == 1) == logic.classical_sat(s, phi, I))
    return bad == 0, f"1000 samples, {bad} mismatches"


def criterion_15():
    """Lindenbaum pipeline and the theory of a space."""
    rng = _rng(15)
    bad = 0
    for _ in range(50):
        I = logic.random_interpretation(rng, rng.randint(1, 3))
        fs = [logic.random_formula(rng, 2, variables=("x", "y")) for _ in range(rng.randint(1, 3))]
        D = logic.lindenbaum(I, fs)
        ok = sysm.check_graded_system(D).ok and sysm.is_spatial(D) and check_space(sysm.ext_g(D)).ok
        bad += not ok
    bad_th = 0
    for _ in range(50):
        S = cat.random_space(rng, flavor="graded")
        bad_th += not logic.check_theory_lemmas(logic.theory_from_space(S)).ok
    return bad == 0 and bad_th == 0, f"50 theories ({bad} failures), 50 graded spaces ({bad_th} failures)"


def criterion_16():
    """Derivation bounds."""
    rng = _rng(16)
    bad = 0
    for _ in range(100):
        I = logic.random_interpretation(rng, rng.randint(1, 3))
        prem, tree = logic.random_derivation(rng, I, depth=3)
        r = logic.check_derivation(prem, tree, I)
        bad += not r.ok
    return bad == 0, f"100 derivations, {bad} with bound above the semantic grade"


CRITERIA = [
    (1, "Gödel-arrow suite", criterion_1),
    (2, "graded-inclusion suite", criterion_2),
    (3, "system axioms", criterion_3),
    (4, "adjunction J ⊣ Ext", criterion_4),
    (5, "spatial equivalence", criterion_5),
    (6, "fm ⊣ S", criterion_6),
    (7, "frame coproduct", criterion_7),
    (8, "sum/product systems", criterion_8),
    (9, "MVn suite", criterion_9),
    (10, "spectrum bijection", criterion_10),
    (11, "Boolean-space theorem", criterion_11),
    (12, "logic soundness", criterion_12),
    (13, "metatheorems", criterion_13),
    (14, "two-valued reduction", criterion_14),
    (15, "Lindenbaum pipeline", criterion_15),
    (16, "derivation checker", criterion_16),
]


def _line(num, name, ok, detail, secs):
    return f"criterion {num:2d} {'PASS' if ok else 'FAIL'}  {name}: {detail} ({secs:.2f}s)"


@pytest.mark.parametrize("num,name,fn", CRITERIA, ids=[f"criterion_{c[0]:02d}" for c in CRITERIA])
def test_criterion(num, name, fn, capsys):
    t = time.perf_counter()
    ok, detail = fn()
    line = _line(num, name, ok, detail, time.perf_counter() - t)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    failed = 0
    for num, name, fn in CRITERIA:
        t = time.perf_counter()
        ok, detail = fn()
        print(_line(num, name, ok, detail, time.perf_counter() - t))
        failed += not ok
    sys.exit(1 if failed else 0)
