import random
from fractions import Fraction as F

import pytest

from fuzzytop import cat
from fuzzytop.fuzzyset import FuzzySubset
from fuzzytop.lattice import boolean_frame, chain_frame, crisp_graded, identity_map
from fuzzytop.space import check_space, generate_topology
from fuzzytop.system import (FuzzyTopSystem, GradedFuzzyTopSystem, SystemMap, check_graded_system, check_system,
                             check_system_full, check_system_map, compose_system_maps, counit_ext, ext, ext_map,
                             extent, find_system_isomorphism, identity_system_map, is_localic, is_spatial, j, j_g,
                             occurring_chain, quotient, quotient_graded, s, s_g, system_product, system_sum,
                             tensor_grade_any, unit_s)
from fuzzytop.truth import make_chain

H = F(1, 2)


def chain_system():
    # frame 0 < m < 1, two points
    return FuzzyTopSystem(["x", "y"], chain_frame(3), [[0, H, 1], [0, 1, 1]])


def test_valid_and_invalid():
    D = chain_system()
    assert check_system(D).ok and check_system_full(D).ok
    A = boolean_frame(2)
    bad = FuzzyTopSystem(["x"], A, [[0, 0, 0, 1]])
    assert check_system(bad).failed_laws() == ["join"]
    bad = FuzzyTopSystem(["x"], A, [[0, H, F(1, 3), 1]])
    assert "meet" in check_system(bad).failed_laws()
    with pytest.raises(ValueError):
        FuzzyTopSystem(["x"], A, [[0, 1]])


def test_spatial_localic():
    D = chain_system()
    assert is_spatial(D) and is_localic(D)
    D = FuzzyTopSystem(["x"], chain_frame(3), [[0, 1, 1]])
    assert not is_spatial(D) and is_localic(D)


def test_ext():
    D = chain_system()
    A = D.frame
    assert extent(D, A.top) == FuzzySubset(("x", "y"), [1, 1])
    assert extent(D, A.bottom) == FuzzySubset(("x", "y"), [0, 0])
    S = ext(D)
    assert check_space(S).ok and len(S) == A.size
    for a in range(A.size):
        for b in range(A.size):
            col = tuple(min(u, v) for u, v in zip(D.column(a), D.column(b)))
            assert D.column(A.meet(a, b)) == col


def test_j_ext_roundtrip():
    X = ("x", "y")
    S = generate_topology([FuzzySubset(X, [H, F(1, 3)])], X)
    assert ext(j(S)).same_opens(S)
    assert check_graded_system(j_g(S)).ok
    indisc = generate_topology([], X)
    assert j(indisc).frame.size == 2


def test_counit():
    D = chain_system()
    JE, xi = counit_ext(D)
    assert check_system_map(xi, JE, D).ok
    assert xi.f2 == ext_map(D)


def test_maps_compose():
    D = chain_system()
    i = identity_system_map(D)
    assert check_system_map(i, D, D).ok
    assert compose_system_maps(i, i) == i
    bad = SystemMap([1, 0], identity_map(D.frame))
    assert "transfer" in check_system_map(bad, D, D).failed_laws()


def test_spectrum():
    assert len(s(chain_frame(2), make_chain(2)).points) == 1
    S3 = s(chain_frame(3), make_chain(3))
    assert len(S3.points) == 3 and check_system(S3).ok
    D = chain_system()
    SD, unit = unit_s(D)
    assert all(y >= 0 for y in unit.f1)
    assert check_system_map(unit, D, SD).ok
    G = crisp_graded(chain_frame(3))
    assert check_graded_system(s_g(G, make_chain(3))).ok


def test_sum():
    D = chain_system()
    E = FuzzyTopSystem(["z"], boolean_frame(2), [[0, 1, 0, 1]])
    Sm = system_sum([D, E])
    assert check_system(Sm).ok
    P = Sm.frame
    for u in range(P.size):
        a1, a2 = P.elements[u]
        assert Sm.gr(0, u) == D.gr(0, a1)
        assert Sm.gr(2, u) == E.gr(0, a2)
    one = system_sum([D])
    assert len(one.points) == 2 and one.frame.size == D.frame.size


def test_product():
    D = chain_system()
    E = FuzzyTopSystem(["u", "v"], chain_frame(3), [[0, F(1, 3), 1], [0, 0, 1]])
    P, cp = system_product(D, E)
    assert check_system(P).ok and P.frame.size == 6
    for xi in range(2):
        for yi in range(2):
            k = xi * 2 + yi
            for a in range(3):
                for b in range(3):
                    assert P.gr(k, cp.tensor(a, b)) == min(D.gr(xi, a), E.gr(yi, b))
                assert P.gr(k, cp.i_A[a]) == D.gr(xi, a)
            for u in range(P.frame.size):
                assert P.gr(k, u) == tensor_grade_any(D, E, cp, xi, yi, u)


def test_quotient():
    D = chain_system()
    Q, cls = quotient(D)
    assert find_system_isomorphism(D, Q) is not None
    D2 = FuzzyTopSystem(["x"], chain_frame(3), [[0, 1, 1]])
    Q2, cls = quotient(D2)
    assert Q2.frame.size == 2 and is_spatial(Q2)
    Qg, _ = quotient_graded(D2)
    assert check_graded_system(Qg).ok


def test_random_quotients_spatial():
    rng = random.Random(5)
    for _ in range(20):
        D = cat.random_system(rng)
        Q, _ = quotient(D)
        assert is_spatial(Q) and check_system(Q).ok


def test_occurring_chain():
    assert occurring_chain(chain_system()).elements == (0, H, 1)


def test_json_shape():
    d = chain_system().to_json()
    assert d["kind"] == "system" and d["sat"][0] == ["0", "1/2", "1"]
    G = GradedFuzzyTopSystem(["x"], crisp_graded(chain_frame(2)), [[0, 1]])
    assert G.to_json()["kind"] == "graded-system"
