import random
from fractions import Fraction as F

from fuzzytop import cat
from fuzzytop.fuzzyset import FuzzySubset, alpha_cut, strict_alpha_cut
from fuzzytop.lattice import identity_map
from fuzzytop.space import check_space, generate_topology
from fuzzytop.truth import make_chain
from fuzzytop.varbasis import (FuzzMorphism, LSystemMap, LTopSystem, ProperFunction, alpha_subspace,
                               alpha_subsystem_fuzzy, alpha_subsystem_strict, check_fuzztop_morphism,
                               check_fuzztopsys_morphism, check_L_system, check_L_system_map, check_proper,
                               check_value_hom, compose_fuzz, compose_proper, counit_F, ext_F, ext_L,
                               ext_L_map, fuzz_preimage, identity_fuzz, identity_proper, j_F, j_F_morphism, j_L, j_L_morphism,
                               proper_from_map, s_L, s_L_morphism)
from fuzzytop.lattice import chain_frame, enumerate_frame_homs

Q = F(1, 4)
H = F(1, 2)
X = ("x", "y")


def test_proper_basics():
    A = FuzzySubset(X, [H, 1])
    i = identity_proper(A)
    assert check_proper(i).ok
    B = FuzzySubset(("u", "v"), [1, F(3, 4)])
    f = proper_from_map(A, B, {"x": "u", "y": "u"})
    assert check_proper(f).ok
    assert compose_proper(f, identity_proper(B)) == f
    assert compose_proper(i, f) == f
    bad = ProperFunction(A, B, [[H, Q], [1, 0]])
    assert "zero elsewhere" in check_proper(bad).failed_laws()
    over = ProperFunction(A, FuzzySubset(("u",), [H]), [[H], [1]])
    assert "bound" in check_proper(over).failed_laws()


def test_l_systems_from_spaces():
    rng = random.Random(3)
    for _ in range(20):
        S = cat.random_l_space(rng)
        assert check_space(S).ok
        D = j_L(S)
        assert check_L_system(D).ok
        assert ext_L(D).same_opens(S)
        xi = LSystemMap(identity_proper(D.membership), ext_L_map(D))
        assert check_L_system_map(xi, j_L(ext_L(D)), D).ok


def test_s_L_bound():
    L = make_chain(3)
    D = s_L(chain_frame(3), L)
    assert check_L_system(D).ok
    for x in range(len(D.points)):
        assert all(v <= D.membership.values[x] for v in D.sat[x])
    P, Qf = chain_frame(3), chain_frame(2)
    h = enumerate_frame_homs(Qf, P)[0]
    m = s_L_morphism(h, s_L(P, L), s_L(Qf, L))
    assert check_L_system_map(m, s_L(P, L), s_L(Qf, L)).ok


def test_l_system_violations():
    A = FuzzySubset(X, [H, 1])
    D = LTopSystem(list(X), A, chain_frame(3), [[0, H, 1], [0, H, 1]], make_chain(3))
    r = check_L_system(D)
    assert "bound" in r.failed_laws() and "empty meet" in r.failed_laws()


def test_alpha_cuts():
    A = FuzzySubset(X, [F(3, 10), F(7, 10)])
    D = LTopSystem(list(X), A, chain_frame(2), [[0, F(3, 10)], [0, F(7, 10)]],
                   make_chain(11))
    crisp = alpha_subsystem_strict(D, H)
    assert crisp.points == ["y"] and crisp.sat == [(0, 1)]
    zero = alpha_subsystem_strict(D, 0)
    assert zero.points == ["x", "y"]
    fz = alpha_subsystem_fuzzy(D, 1)
    assert all(v == 0 for row in fz.sat for v in row)
    rng = random.Random(8)
    for _ in range(20):
        S = cat.random_l_space(rng)
        a, b = sorted(rng.sample(list(S.chain), 2))
        assert set(alpha_subspace(S, b).carrier) <= set(alpha_subspace(S, a).carrier)
        assert check_space(alpha_subspace(S, a)).ok
        assert check_space(alpha_subspace(S, a, fuzzy=True)).ok
        assert strict_alpha_cut(S.top, b) <= alpha_cut(S.top, a) | strict_alpha_cut(S.top, a)


def test_value_homs():
    L3, L5 = make_chain(3), make_chain(5)
    assert check_value_hom({0: 0, H: Q, 1: 1}, L3, L5).ok
    assert not check_value_hom({0: 0, H: Q, 1: H}, L3, L5).ok


def variable_basis_pair():
    """S2 over 3-bar, S1 over 5-bar generated by the preimages, so the pair is a FuzzTop morphism."""
    L3, L5 = make_chain(3), make_chain(5)
    Y = ("u", "v")
    S2 = generate_topology([FuzzySubset(Y, [H, 1]), FuzzySubset(Y, [1, 0])], Y, chain=L3)
    phi_inv = {F(0): F(0), H: F(3, 4), F(1): F(1)}
    f = [[1, 0], [0, 1], [1, 0]]
    m = FuzzMorphism(f, phi_inv)
    Xs = ("a", "b", "c")
    S1 = generate_topology([fuzz_preimage(m, V, Xs) for V in S2.opens], Xs, chain=L5)
    return m, S1, S2


def test_fuzztop_morphisms():
    m, S1, S2 = variable_basis_pair()
    assert check_fuzztop_morphism(m, S1, S2).ok
    i1 = identity_fuzz(S1.top, S1.chain)
    assert check_fuzztop_morphism(i1, S1, S1).ok
    assert compose_fuzz(i1, m) == m
    i2 = identity_fuzz(S2.top, S2.chain)
    assert compose_fuzz(m, i2) == m
    # (b) bound: a weight above A(x) ∧ φ⁻¹B(y)
    S1h = generate_topology([], S1.carrier, top=FuzzySubset(S1.carrier, [H, 1, 1]), chain=S1.chain)
    r = check_fuzztop_morphism(m, S1h, S2)
    assert "(b) bound" in r.failed_laws()


def test_fuzz_systems():
    m, S1, S2 = variable_basis_pair()
    assert check_fuzztopsys_morphism(j_F_morphism(m, S1, S2), j_F(S1), j_F(S2)).ok
    for S in (S1, S2):
        D = j_F(S)
        JE, c = counit_F(D)
        assert check_fuzztopsys_morphism(c, JE, D).ok
        assert ext_F(D).same_opens(S)
        for p in range(D.frame.size):
            assert all(D.gr(x, p) <= D.membership.values[x] for x in range(len(D.points)))


def test_j_L_morphism():
    rng = random.Random(2)
    S = cat.random_l_space(rng)
    i = identity_proper(S.top)
    m = j_L_morphism(i, S, S)
    assert m.f2 == identity_map(j_L(S).frame)
