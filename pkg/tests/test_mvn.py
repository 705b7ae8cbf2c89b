import copy
import random
from fractions import Fraction as F

import pytest

from fuzzytop import cat
from fuzzytop.mvn import (ClosureError, FBSys, LnAlgebra, bijection_check, chain_algebra, check_fbsys,
                          check_homeo, check_ln_hom, check_lnc, check_prop_idempotents, check_prop_t1,
                          check_prop_t_separation, check_prop_terms, counit_B, enumerate_homs,
                          enumerate_nfilters, enumerate_subalgebras, evaluation_system, ext_B, extend_filter,
                          filter_closure, find_ln_isomorphism, function_algebra, has_fip, hom_from_prime,
                          homs_to_chain, is_boolean_space, is_prime, power_algebra, prime_filters,
                          prime_from_fip, prime_from_hom, s_B, s_term, t_term, unit_B)

H = F(1, 2)


def test_chain_operations():
    A = chain_algebra(3)
    h = A.const(H)
    assert A.elements[A.oplus[h][h]] == 1
    assert A.elements[A.star[h][h]] == 0
    assert A.elements[A.neg[h]] == H
    for n in range(2, 7):
        assert check_lnc(chain_algebra(n)).ok


def test_constants_only():
    A = function_algebra(3, ("u", "v"))
    assert A.size == 3
    assert power_algebra(3, ("u", "v")).size == 9


def test_broken_table():
    A = chain_algebra(3)
    B = copy.copy(A)
    B.oplus = [row[:] for row in A.oplus]
    h = A.const(H)
    B.oplus[h][A.zero] = A.one
    B.oplus[A.zero][h] = A.one
    assert not check_lnc(B).ok


def test_terms():
    A = chain_algebra(3)
    h = A.const(H)
    assert t_term(A, H, h) == A.one
    assert t_term(A, H, A.one) == A.zero
    assert s_term(A, 1, A.one) == A.one
    for a in range(A.size):
        t = t_term(A, H, a)
        assert A.star[t][t] == t


def test_props_on_subalgebras():
    for X in (("u",), ("u", "v")):
        for A in enumerate_subalgebras(3, X):
            assert check_lnc(A).ok
            assert check_prop_idempotents(A).ok
            assert check_prop_t1(A).ok
            assert check_prop_t_separation(A).ok
            assert check_prop_terms(A).ok


def test_filters():
    A = chain_algebra(3)
    fs = enumerate_nfilters(A)
    assert frozenset([A.one]) in fs
    assert frozenset([A.const(H), A.one]) not in fs
    assert prime_filters(A) == [frozenset([A.one])]
    assert extend_filter(A, frozenset([A.one]), A.zero) == frozenset([A.one])
    B = chain_algebra(2)
    assert prime_filters(B) == [frozenset([B.one])]
    assert not is_prime(B, frozenset(range(B.size)))
    assert filter_closure(A, []) == frozenset([A.one])


def test_prime_hom_bijection():
    A = chain_algebra(3)
    P = prime_filters(A)[0]
    v = hom_from_prime(A, P)
    assert v == tuple(A.elements)
    assert prime_from_hom(A, v) == P
    for n in (2, 3, 4):
        for X in (("u",), ("u", "v")):
            for A in enumerate_subalgebras(n, X):
                assert bijection_check(A).ok
                assert len(prime_filters(A)) == len(homs_to_chain(A))


def test_fip():
    A = power_algebra(2, ("u", "v"))
    a = A.index_of_vec((F(1), F(0)))
    assert has_fip(A, [a])
    P = prime_from_fip(A, [a])
    assert a in P and is_prime(A, P)
    b = A.index_of_vec((F(0), F(1)))
    assert not has_fip(A, [a, b])


def test_homs():
    A = power_algebra(3, ("u", "v"))
    assert len(enumerate_homs(A, chain_algebra(3))) == 2
    for h in enumerate_homs(A, A):
        assert check_ln_hom(h, A, A).ok
    assert find_ln_isomorphism(A, A) is not None
    assert find_ln_isomorphism(A, chain_algebra(3)) is None


def test_closure_error():
    A = function_algebra(3, ("u",))
    with pytest.raises(ClosureError):
        A.index_of_vec((F(1, 3),))


def test_fbsys_checks():
    A = chain_algebra(3)
    D = FBSys(["x"], A, [list(A.elements)])
    assert check_fbsys(D).ok
    assert is_boolean_space(ext_B(D))
    bad = FBSys(["x"], A, [[0, 0, 1]])
    r = check_fbsys(bad)
    assert "2 complement" in r.failed_laws() or "3 constants" in r.failed_laws()
    two = FBSys(["x", "y"], A, [list(A.elements)] * 2)
    assert "4 separation" in check_fbsys(two).failed_laws()


def test_evaluation_duality():
    A = power_algebra(3, ("u", "v", "w"))
    D = evaluation_system(A)
    JE, xi = counit_B(D)
    assert check_homeo(xi, JE, D).ok
    SD, eta = unit_B(D)
    assert check_homeo(eta, D, SD).ok
    S = s_B(A)
    assert check_fbsys(S).ok and len(S.points) == 3


def test_dropped_point_breaks_duality():
    # valid system on 3^{u,v} that only realises the evaluation at u
    A = power_algebra(3, ("u", "v"))
    D = evaluation_system(A, ["u"])
    assert check_fbsys(D).ok
    assert is_boolean_space(ext_B(D))
    JE, xi = counit_B(D)
    assert "algebra map bijective" in check_homeo(xi, JE, D).failed_laws()
    SD, eta = unit_B(D)
    assert "points bijective" in check_homeo(eta, D, SD).failed_laws()


def test_random_fbsys_valid():
    rng = random.Random(4)
    for _ in range(10):
        assert check_fbsys(cat.random_valid_fbsys(rng)).ok
        assert check_fbsys(cat.random_fbsys(rng)).ok
