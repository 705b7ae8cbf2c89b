"""Instance-level checks of functor laws, adjunctions and equivalences, plus random instances."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import mvn, system as sysm, varbasis as vb
from .fuzzyset import FuzzySubset, preimage
from .lattice import (FinitePoset, chain_frame, compose_maps, downset_frame, enumerate_frame_homs,
                      identity_map)
from .report import Report
from .space import FuzzyTopSpace, generate_topology
from .truth import ValueChain, make_chain


# ---- categories and functors ------------------------------------------------------

@dataclass
class Category:
    name: str
    identity: Callable
    compose: Callable  # compose(g, f) = g after f


@dataclass
class Functor:
    name: str
    source: Category
    target: Category
    on_object: Callable
    on_morphism: Callable  # on_morphism(m, A, B) for m : A -> B


def _point_compose(g, f):
    return tuple(g[i] for i in f)


SYS = Category("systems", sysm.identity_system_map, sysm.compose_system_maps)
SPACES = Category("spaces", lambda S: tuple(range(len(S.carrier))), _point_compose)
# locales: a morphism A -> B is a frame hom B -> A
LOC = Category("locales", lambda A: identity_map(A), lambda g, f: compose_maps(f, g))
FBSYS = Category("Boolean systems", mvn.identity_bool, mvn.compose_bool)
ALG_OP = Category("Łn^c algebras (opposite)", lambda A: tuple(range(A.size)), lambda g, f: compose_maps(f, g))
LSYS = Category("L-systems", lambda D: vb.LSystemMap(vb.identity_proper(D.membership), identity_map(D.frame)),
                lambda g, f: vb.LSystemMap(vb.compose_proper(f.f1, g.f1), compose_maps(f.f2, g.f2)))
LSPACES = Category("L-spaces", lambda S: vb.identity_proper(S.top), lambda g, f: vb.compose_proper(f, g))
FUZZ = Category("Fuzz spaces", lambda S: vb.identity_fuzz(S.top, S.chain), lambda g, f: vb.compose_fuzz(f, g))
FUZZSYS = Category("Fuzz systems", lambda D: vb.identity_fuzz(D.membership, D.chain, D.frame),
                   lambda g, f: vb.compose_fuzz(f, g))


def _lsys_eq(a, b):
    return a.f1 == b.f1 and a.f2 == b.f2


EXT = Functor("Ext", SYS, SPACES, sysm.ext, lambda m, D, E: m.f1)
J = Functor("J", SPACES, SYS, sysm.j, lambda f, S1, S2: sysm.j_morphism(f, S1, S2))
FM = Functor("fm", SYS, LOC, sysm.fm, lambda m, D, E: m.f2)
EXT_G = Functor("Ext_g", SYS, SPACES, sysm.ext_g, lambda m, D, E: m.f1)
J_G = Functor("J_g", SPACES, SYS, sysm.j_g, lambda f, S1, S2: sysm.j_morphism(f, S1, S2))
FM_G = Functor("fm_g", SYS, LOC, sysm.fm, lambda m, D, E: m.f2)
EXT_B = Functor("Ext_B", FBSYS, SPACES, mvn.ext_B, lambda m, D, E: m.f1)
LAG = Functor("Lag", FBSYS, ALG_OP, mvn.lag, lambda m, D, E: m.f2)
EXT_L = Functor("Ext_L", LSYS, LSPACES, vb.ext_L, lambda m, D, E: m.f1)
J_L = Functor("J_L", LSPACES, LSYS, vb.j_L, lambda f, S1, S2: vb.j_L_morphism(f, S1, S2))
LO_L = Functor("Lo_L", LSYS, LOC, vb.lo_L, lambda m, D, E: m.f2)
EXT_F = Functor("Ext_F", FUZZSYS, FUZZ, vb.ext_F, lambda m, D, E: vb.ext_F_morphism(m))
J_F = Functor("J_F", FUZZ, FUZZSYS, vb.j_F, lambda m, S1, S2: vb.j_F_morphism(m, S1, S2))


def s_functor(chain: ValueChain) -> Functor:
    """S with points the frame homs into a fixed chain."""
    def on_mor(h, A, B):
        return sysm.s_morphism(h, A, sysm.s(A, chain), sysm.s(B, chain))
    return Functor("S", LOC, SYS, lambda A: sysm.s(A, chain), on_mor)


def s_L_functor(chain: ValueChain) -> Functor:
    def on_mor(h, A, B):
        return vb.s_L_morphism(h, vb.s_L(A, chain), vb.s_L(B, chain))
    return Functor("S_L", LOC, LSYS, lambda A: vb.s_L(A, chain), on_mor)


def _j_B_mor(f, S1, S2):
    A1, A2 = mvn.cont_algebra(S1), mvn.cont_algebra(S2)
    f2 = [A1.index_of_vec(tuple(A2.vecs[t][f[x]] for x in range(len(S1.carrier)))) for t in range(A2.size)]
    return mvn.BoolMap(f, f2)


J_B = Functor("J_B", SPACES, FBSYS, mvn.j_B, _j_B_mor)


def _s_B_mor(h, A, B):
    """S_B(h) = (- ∘ h, h) for h : B -> A."""
    SA, SB = mvn.s_B(A), mvn.s_B(B)
    idx = {v: i for i, v in enumerate(SB.points)}
    f1 = [idx[tuple(v[h[b]] for b in range(B.size))] for v in SA.points]
    return mvn.BoolMap(f1, h)


S_B = Functor("S_B", ALG_OP, FBSYS, mvn.s_B, _s_B_mor)


def _eq(a, b):
    if isinstance(a, vb.LSystemMap):
        return _lsys_eq(a, b)
    return a == b


def check_functor_laws(F: Functor, objects, morphisms) -> Report:
    """morphisms: (m, A, B) triples; composable pairs are those sharing an object (by identity)."""
    r = Report(f"functor {F.name}")
    for A in objects:
        lhs = F.on_morphism(F.source.identity(A), A, A)
        r.check("identity", _eq(lhs, F.target.identity(F.on_object(A))), repr(A))
    for f, A, B in morphisms:
        for g, B2, C in morphisms:
            if B2 is not B:
                continue
            gf = F.source.compose(g, f)
            lhs = F.on_morphism(gf, A, C)
            rhs = F.target.compose(F.on_morphism(g, B, C), F.on_morphism(f, A, B))
            r.check("composition", _eq(lhs, rhs), (repr(A), repr(B), repr(C)))
    return r


# ---- adjunctions ---------------------------------------------------------------------

def check_adjunction_j_ext(systems, spaces, space_maps=(), graded=False) -> Report:
    """J ⊣ Ext with counit (id_X, ext*) and unit the identity on points."""
    r = Report("J ⊣ Ext" + (" (graded)" if graded else ""))
    jf = sysm.j_g if graded else sysm.j
    ef = sysm.ext_g if graded else sysm.ext
    kind = "graded" if graded else "plain"
    for D in systems:
        JE, xi = sysm.counit_ext(D)
        if graded:
            JE = sysm.j_g(ef(D))
        r.extend(sysm.check_system_map(xi, JE, D, kind), "counit ")
        # Ext(ξ_D) ∘ η_{Ext D} = id
        E = ef(D)
        eta = tuple(range(len(E.carrier)))
        r.check("triangle Ext", _point_compose(xi.f1, eta) == tuple(range(len(D.points))))
    for S in spaces:
        E = ef(jf(S))
        r.check("unit iso (Ext J S = S)", E.same_opens(S), repr(S.carrier))
        JS = jf(S)
        JE, xi = sysm.counit_ext(JS)
        # ξ_{J S} ∘ J(η_S) = id_{J S}
        Jeta = sysm.j_morphism(tuple(range(len(S.carrier))), S, ef(JS))
        comp = sysm.compose_system_maps(xi, Jeta)
        r.check("triangle J", comp == sysm.identity_system_map(JS), repr(S.carrier))
    for f, S1, S2 in space_maps:
        # universal property: for g = J(f) composed with the counit of J(S2), the mediating map is g1
        JS2 = jf(S2)
        JE, xi = sysm.counit_ext(JS2)
        g = sysm.j_morphism(f, S1, S2)
        r.extend(sysm.check_system_map(g, jf(S1), JS2, kind), "J(f) ")
        fhat = g.f1
        med = sysm.compose_system_maps(xi, sysm.j_morphism(fhat, S1, ef(JS2)))
        r.check("factorization", med == g)
        # naturality of the counit along J(f)
        lhs = sysm.compose_system_maps(g, sysm.counit_ext(jf(S1))[1])
        rhs = sysm.compose_system_maps(xi, sysm.j_morphism(f, ef(jf(S1)), ef(JS2)))
        r.check("counit naturality", lhs == rhs)
    return r


def check_adjunction_fm_s(systems, frames_for_mediation=(), hom_limit: int = 6, graded=False) -> Report:
    """fm ⊣ S: unit (p*, id_A) into S(fm D) over the chain of occurring values;
    for each frame B and frame hom g2 : B -> A the map g = (x ↦ p_x ∘ g2, g2) factors uniquely."""
    r = Report("fm ⊣ S" + (" (graded)" if graded else ""))
    for D in systems:
        chain = sysm.occurring_chain(D)
        if graded:
            SD = sysm.s_g(D.gframe, chain)
            idx = {p: i for i, p in enumerate(SD.points)}
            unit = sysm.SystemMap([idx.get(sysm.point_hom(D, x, chain), -1) for x in range(len(D.points))],
                                  identity_map(D.frame))
        else:
            SD, unit = sysm.unit_s(D, chain)
        r.check("p_x is a point of S(A)", all(y >= 0 for y in unit.f1))
        if not r.ok:
            continue
        r.extend(sysm.check_system_map(unit, D, SD, "graded" if graded else "plain"), "unit ")
        if D.frame.size > hom_limit:
            continue
        for B in frames_for_mediation:
            SB = sysm.s(B, chain)
            sidx = {p: i for i, p in enumerate(SB.points)}
            homs = enumerate_frame_homs(B, D.frame)
            for g2 in homs:
                g1 = [sidx[compose_maps(sysm.point_hom(D, x, chain), g2)] for x in range(len(D.points))]
                g = sysm.SystemMap(g1, g2)
                r.extend(sysm.check_system_map(g, D, SB), "given map ")
                count = 0
                for h in homs:
                    Sh = sysm.s_morphism(h, D.frame, SD, SB)
                    if sysm.compose_system_maps(Sh, unit) == g:
                        count += 1
                r.check("unique mediating morphism", count == 1, count)
                Sg = sysm.s_morphism(g2, D.frame, SD, SB)
                r.check("mediating morphism is g2", sysm.compose_system_maps(Sg, unit) == g)
    return r


def check_adjunction_lag_s_b(systems, algebras=()) -> Report:
    """Lag ⊣ S_B with unit (p*, id_A)."""
    r = Report("Lag ⊣ S_B")
    for D in systems:
        SD, unit = mvn.unit_B(D)
        r.check("p_x is a hom", all(y >= 0 for y in unit.f1))
        if not r.ok:
            continue
        r.extend(mvn.check_fbsys_map(unit, D, SD), "unit ")
        A = D.algebra
        for B in algebras:
            if B.n != A.n:
                continue
            SB = mvn.s_B(B)
            sidx = {v: i for i, v in enumerate(SB.points)}
            homs = mvn.enumerate_homs(B, A)
            for g2 in homs:
                g1 = [sidx[tuple(D.gr(x, g2[b]) for b in range(B.size))] for x in range(len(D.points))]
                g = mvn.BoolMap(g1, g2)
                r.extend(mvn.check_fbsys_map(g, D, SB), "given map ")
                count = sum(1 for h in homs if mvn.compose_bool(_s_B_mor(h, A, B), unit) == g)
                r.check("unique mediating morphism", count == 1, count)
    return r


def check_adjunction_j_b_ext_b(systems) -> Report:
    r = Report("J_B ⊣ Ext_B")
    for D in systems:
        JE, xi = mvn.counit_B(D)
        r.check("ext_B(a) continuous", all(i >= 0 for i in xi.f2))
        if r.ok:
            r.extend(mvn.check_fbsys_map(xi, JE, D), "counit ")
    return r


def check_adjunction_fuzz(systems, morphisms=()) -> Report:
    """J_F ⊣ Ext_F: counit (i_A, i_L, ext_F*) and the identity/composition closure of morphisms."""
    r = Report("J_F ⊣ Ext_F")
    for D in systems:
        JE, c = vb.counit_F(D)
        r.extend(vb.check_fuzztopsys_morphism(c, JE, D), "counit ")
    for m, S1, S2 in morphisms:
        r.extend(vb.check_fuzztop_morphism(m, S1, S2), "morphism ")
        Jm = vb.j_F_morphism(m, S1, S2)
        r.extend(vb.check_fuzztopsys_morphism(Jm, vb.j_F(S1), vb.j_F(S2)), "J_F(m) ")
    return r


def check_adjunction_l(systems) -> Report:
    """J_L ⊣ Ext_L counit (id, ext_L*) and Lo_L ⊣ S_L unit, as L-system maps."""
    r = Report("L adjunctions")
    for D in systems:
        S = vb.ext_L(D)
        JE = vb.j_L(S)
        xi = vb.LSystemMap(vb.identity_proper(D.membership), vb.ext_L_map(D))
        r.extend(vb.check_L_system_map(xi, JE, D), "counit ")
        r.check("Ext_L J_L = id", vb.ext_L(JE).same_opens(S))
    return r


# ---- equivalences -------------------------------------------------------------------

EQUIVALENCES = ("spatial", "graded-spatial", "space", "localic", "boolean-system", "boolean-space")


def check_equivalence(pair: str, instances) -> Report:
    """pair: 'spatial', 'space', 'graded-spatial', 'localic', 'boolean-system', 'boolean-space'."""
    if pair not in EQUIVALENCES:
        raise ValueError(f"unknown equivalence {pair!r}")
    r = Report(f"equivalence ({pair})")
    for inst in instances:
        if pair in ("spatial", "graded-spatial"):
            D = inst
            if not sysm.is_spatial(D):
                r.fail("precondition: spatial", repr(D))
                continue
            JE, xi = sysm.counit_ext(D)
            if pair == "graded-spatial":
                JE = sysm.j_g(sysm.ext_g(D))
            kind = "graded" if pair == "graded-spatial" else "plain"
            r.extend(sysm.check_system_map(xi, JE, D, kind), "counit ")
            r.check("counit bijective on frames", sorted(xi.f2) == list(range(D.frame.size)))
            if sorted(xi.f2) == list(range(D.frame.size)):
                inv = [0] * len(xi.f2)
                for a, i in enumerate(xi.f2):
                    inv[i] = a
                back = sysm.SystemMap(range(len(D.points)), inv)
                r.extend(sysm.check_system_map(back, D, JE, kind), "inverse ")
        elif pair == "space":
            S = inst
            r.check("unit iso", sysm.ext(sysm.j(S)).same_opens(S))
        elif pair == "localic":
            D = inst
            if not sysm.is_localic(D):
                r.fail("precondition: localic", repr(D))
                continue
            chain = sysm.occurring_chain(D)
            SD, unit = sysm.unit_s(D, chain)
            r.check("unit injective on points", len(set(unit.f1)) == len(unit.f1))
            r.check("unit onto points", sorted(unit.f1) == list(range(len(SD.points))),
                    (len(D.points), len(SD.points)))
        elif pair == "boolean-system":
            D = inst
            pre = mvn.check_fbsys(D)
            if not pre.ok:
                r.extend(pre, "precondition ")
                continue
            JE, xi = mvn.counit_B(D)
            if any(i < 0 for i in xi.f2):
                r.fail("counit defined", xi.f2)
            else:
                r.extend(mvn.check_homeo(xi, JE, D), "counit ")
            SD, unit = mvn.unit_B(D)
            if any(i < 0 for i in unit.f1):
                r.fail("unit defined", unit.f1)
            else:
                r.extend(mvn.check_homeo(unit, D, SD), "unit ")
        elif pair == "boolean-space":
            S = inst
            if not mvn.is_boolean_space(S):
                r.fail("precondition: Boolean space", repr(S.carrier))
                continue
            r.check("unit iso", mvn.space_unit_B(S)[1])
    return r


# ---- random instances -------------------------------------------------------------------

def random_poset(rng, k: int, p: float = 0.35) -> FinitePoset:
    """Random order on k points: random DAG edges along a fixed linear order, closed transitively."""
    edges = [(i, j) for i in range(k) for j in range(i + 1, k) if rng.random() < p]
    return FinitePoset.from_covers(list(range(k)), edges)


def random_frame(rng, max_size: int = 12, max_j: int = 4):
    """Downsets of a random poset, retried until the size bound holds."""
    while True:
        P = random_poset(rng, rng.randint(1, max_j))
        F = downset_frame(P)
        if F.size <= max_size:
            return F


def random_values(rng, k: int = 4) -> ValueChain:
    pool = [Fraction(a, b) for b in (2, 3, 4, 5, 10) for a in range(1, b)]
    return ValueChain(rng.sample(pool, rng.randint(1, k)))


def random_system(rng, max_points: int = 5, max_frame: int = 12, chain: ValueChain | None = None,
                  frame=None) -> sysm.FuzzyTopSystem:
    """Rows are random frame homs A -> chain, so every clause holds."""
    A = frame if frame is not None else random_frame(rng, max_frame)
    chain = chain or random_values(rng)
    C = chain_frame(chain)
    homs = enumerate_frame_homs(A, C)
    n = rng.randint(1, max_points)
    rows = [[C.elements[i] for i in rng.choice(homs)] for _ in range(n)]
    return sysm.FuzzyTopSystem([f"x{i}" for i in range(n)], A, rows)


def random_matrix_system(rng, max_points: int = 5, max_frame: int = 12) -> sysm.FuzzyTopSystem:
    """Arbitrary satisfaction matrix, usually violating the clauses."""
    A = random_frame(rng, max_frame)
    chain = random_values(rng)
    vals = list(chain)
    n = rng.randint(1, max_points)
    rows = [[rng.choice(vals) for _ in range(A.size)] for _ in range(n)]
    return sysm.FuzzyTopSystem([f"x{i}" for i in range(n)], A, rows)


def random_space(rng, max_points: int = 4, n_sub: int = 3, chain: ValueChain | None = None, flavor="plain"):
    chain = chain or random_values(rng, 3)
    m = rng.randint(1, max_points)
    carrier = tuple(f"x{i}" for i in range(m))
    vals = list(chain)
    sub = [FuzzySubset(carrier, [rng.choice(vals) for _ in carrier]) for _ in range(rng.randint(0, n_sub))]
    return generate_topology(sub, carrier, flavor=flavor, chain=chain)


def random_continuous_map(rng, max_points: int = 4):
    """(f, S1, S2) with S1 generated by the preimages of S2's opens plus one random open."""
    S2 = random_space(rng, max_points)
    m = rng.randint(1, max_points)
    X1 = tuple(f"u{i}" for i in range(m))
    f = tuple(rng.randrange(len(S2.carrier)) for _ in X1)
    fmap = {x: S2.carrier[f[i]] for i, x in enumerate(X1)}
    pre = [preimage(fmap, V, X1) for V in S2.opens]
    extra = [FuzzySubset(X1, [rng.choice(list(S2.chain)) for _ in X1])]
    S1 = generate_topology(pre + extra, X1, chain=S2.chain)
    return f, S1, S2


def random_l_space(rng, max_points: int = 4, chain: ValueChain | None = None):
    chain = chain or make_chain(rng.choice((3, 4, 5)))
    m = rng.randint(1, max_points)
    X = tuple(f"x{i}" for i in range(m))
    vals = list(chain)
    top = FuzzySubset(X, [rng.choice(vals[1:]) for _ in X])
    sub = []
    for _ in range(rng.randint(0, 3)):
        sub.append(FuzzySubset(X, [rng.choice([v for v in vals if v <= t]) for t in top.values]))
    return generate_topology(sub, X, top=top, chain=chain)


def random_fbsys(rng, n: int | None = None, max_points: int = 3) -> mvn.FBSys:
    """Evaluation system of the full algebra n-bar^X: a valid instance with |A| = n^|X|."""
    n = n or rng.choice((2, 3))
    m = rng.randint(1, max_points)
    while n ** m > 27:
        m -= 1
    X = tuple(f"x{i}" for i in range(m))
    return mvn.evaluation_system(mvn.power_algebra(n, X))


def random_fbsys_generated(rng, n: int = 3, max_points: int = 3) -> mvn.FBSys:
    """Evaluation system of the subalgebra generated by random maps; points are the classes
    the subalgebra separates, one representative each, so clause 4 holds."""
    m = rng.randint(1, max_points)
    X = tuple(f"x{i}" for i in range(m))
    chain = make_chain(n)
    gens = [tuple(rng.choice(chain.elements) for _ in X) for _ in range(rng.randint(0, 2))]
    A = mvn.function_algebra(n, X, gens)
    seen = {}
    for i, x in enumerate(X):
        col = tuple(v[i] for v in A.vecs)
        seen.setdefault(col, x)
    return mvn.evaluation_system(A, list(seen.values()))


def random_valid_fbsys(rng, max_points: int = 3, max_size: int = 27) -> mvn.FBSys:
    """A subalgebra of n-bar^X evaluated at a random nonempty set of its points, kept when valid.
    Points of X can be dropped, so the system need not realise every hom A -> n-bar."""
    while True:
        n = rng.choice((2, 3))
        m = rng.randint(1, max_points)
        X = tuple(f"x{i}" for i in range(m))
        chain = make_chain(n)
        gens = [tuple(rng.choice(chain.elements) for _ in X) for _ in range(rng.randint(0, 2))]
        if rng.random() < 0.5:
            A = mvn.power_algebra(n, X)
        else:
            A = mvn.function_algebra(n, X, gens)
        if A.size > max_size:
            continue
        pts = [x for x in X if rng.random() < 0.6] or [rng.choice(X)]
        D = mvn.evaluation_system(A, pts)
        if mvn.check_fbsys(D).ok:
            return D
