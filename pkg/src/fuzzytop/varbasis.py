"""Systems and spaces over fuzzy sets: proper functions, fixed and variable value bases, α-cuts."""
from __future__ import annotations

from fractions import Fraction

from .fuzzyset import FuzzySubset, fuzzy_alpha_cut, intersection, proper_preimage
from .lattice import (FiniteFrame, chain_frame, check_frame_hom, compose_maps, enumerate_frame_homs,
                      identity_map)
from .report import Report
from .space import FuzzyTopSpace, check_space, topology_frame
from .system import FuzzyTopSystem, SystemMap
from .truth import ONE, ZERO, ValueChain, fmt, sup_family, tv


# ---- proper functions ----------------------------------------------------------

class ProperFunction:
    """Fuzzy relation f : X × Y -> L between L-fuzzy sets (X,Ã) and (Y,B̃)."""

    def __init__(self, source: FuzzySubset, target: FuzzySubset, matrix):
        self.source = source
        self.target = target
        rows = []
        for row in matrix:
            row = tuple(tv(v) for v in row)
            if len(row) != len(target.carrier):
                raise ValueError("matrix row length differs from the target carrier")
            rows.append(row)
        if len(rows) != len(source.carrier):
            raise ValueError("one matrix row per source point is required")
        self.matrix = tuple(rows)
        self._si = {x: i for i, x in enumerate(source.carrier)}
        self._ti = {y: i for i, y in enumerate(target.carrier)}

    def rel(self, x, y) -> Fraction:
        return self.matrix[self._si[x]][self._ti[y]]

    def check(self, bounded: bool = True) -> Report:
        return check_proper(self, bounded)

    def point_image(self, i: int):
        """Index of the unique full-weight target of source index i, or None."""
        av = self.source.values[i]
        hits = [j for j, bv in enumerate(self.target.values) if bv > 0 and self.matrix[i][j] == av]
        return hits[0] if len(hits) == 1 else None

    def __eq__(self, other):
        return (isinstance(other, ProperFunction) and self.source == other.source
                and self.target == other.target and self.matrix == other.matrix)

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"ProperFunction({[[fmt(v) for v in r] for r in self.matrix]})"


def check_proper(f: ProperFunction, bounded: bool = True) -> Report:
    r = Report("proper function")
    A, B = f.source, f.target
    supp_b = [j for j, v in enumerate(B.values) if v > 0]
    for i, av in enumerate(A.values):
        if av <= 0:
            continue
        full = [j for j in supp_b if f.matrix[i][j] == av]
        r.check("unique full-weight target", len(full) == 1, A.carrier[i])
        if len(full) == 1:
            others = [j for j in supp_b if j != full[0] and f.matrix[i][j] != 0]
            r.check("zero elsewhere", not others, A.carrier[i])
    if bounded:
        for i, av in enumerate(A.values):
            for j, bv in enumerate(B.values):
                if f.matrix[i][j] > min(av, bv):
                    r.fail("bound", (A.carrier[i], B.carrier[j]))
        r.check("bound", True)
    return r


def identity_proper(A: FuzzySubset) -> ProperFunction:
    n = len(A.carrier)
    return ProperFunction(A, A, [[A.values[i] if i == j else ZERO for j in range(n)] for i in range(n)])


def compose_proper(f: ProperFunction, g: ProperFunction) -> ProperFunction:
    """g after f: (g∘f)(x,z) = sup_y min(f(x,y), g(y,z))."""
    if f.target != g.source:
        raise ValueError("f's target is not g's source")
    ny = len(f.target.carrier)
    mat = [[sup_family(min(f.matrix[i][k], g.matrix[k][j]) for k in range(ny))
            for j in range(len(g.target.carrier))] for i in range(len(f.source.carrier))]
    return ProperFunction(f.source, g.target, mat)


def proper_from_map(A: FuzzySubset, B: FuzzySubset, fmap) -> ProperFunction:
    """The proper function sending x to fmap[x] with weight Ã(x)."""
    cols = {y: j for j, y in enumerate(B.carrier)}
    mat = []
    for x, av in A.items():
        row = [ZERO] * len(B.carrier)
        if av > 0:
            row[cols[fmap[x]]] = av
        mat.append(row)
    return ProperFunction(A, B, mat)


# ---- L-topological spaces and systems ------------------------------------------

def l_space(carrier, membership: FuzzySubset, opens, chain: ValueChain) -> FuzzyTopSpace:
    return FuzzyTopSpace(carrier, opens, flavor="plain", chain=chain, top=membership)


def check_l_space(S: FuzzyTopSpace) -> Report:
    return check_space(S)


class LTopSystem(FuzzyTopSystem):
    """Points carry a membership Ã; grades lie in a chain L and below Ã."""

    def __init__(self, points, membership: FuzzySubset, frame: FiniteFrame, sat, chain: ValueChain):
        super().__init__(points, frame, sat)
        if len(membership.carrier) != len(self.points):
            raise ValueError("membership must cover the points")
        self.membership = membership
        self.chain = chain

    def to_json(self):
        d = super().to_json()
        d["kind"] = "l-system"
        d["membership"] = [fmt(v) for v in self.membership.values]
        d["chain"] = [fmt(v) for v in self.chain]
        return d


FuzzTopSystem = LTopSystem


def check_L_system(D: LTopSystem) -> Report:
    """Bound clause, values in L, meet/join clauses with gr(x⊨⊤) = Ã(x) for the empty meet."""
    A = D.frame
    r = Report("L-system")
    r.check("nonempty points", len(D.points) > 0)
    for x, row in enumerate(D.sat):
        ax = D.membership.values[x]
        r.check("membership in chain", ax in D.chain, D.points[x])
        for a in range(A.size):
            if row[a] not in D.chain:
                r.fail("values in chain", (D.points[x], A.name(a)))
            if row[a] > ax:
                r.fail("bound", (D.points[x], A.name(a)))
        r.check("empty meet", row[A.top] == ax, D.points[x])
        r.check("empty join", row[A.bottom] == 0, D.points[x])
        for a in range(A.size):
            for b in range(a + 1, A.size):
                if row[A.meet(a, b)] != min(row[a], row[b]):
                    r.fail("meet", (D.points[x], A.name(a), A.name(b)))
                if row[A.join(a, b)] != max(row[a], row[b]):
                    r.fail("join", (D.points[x], A.name(a), A.name(b)))
    for law in ("values in chain", "bound", "meet", "join"):
        r.check(law, True)
    return r


def ext_L(D: LTopSystem) -> FuzzyTopSpace:
    seen = {}
    for a in range(D.frame.size):
        seen.setdefault(D.column(a), None)
    carrier = tuple(D.points)
    top = FuzzySubset(carrier, D.membership.values)
    return FuzzyTopSpace(carrier, [FuzzySubset(carrier, c) for c in seen], chain=D.chain, top=top)


def ext_L_map(D: LTopSystem):
    S = ext_L(D)
    return tuple(S.index(FuzzySubset(S.carrier, D.column(a))) for a in range(D.frame.size))


def j_L(S: FuzzyTopSpace) -> LTopSystem:
    F = topology_frame(S)
    sat = [[T.values[x] for T in S.opens] for x in range(len(S.carrier))]
    chain = S.chain if S.chain is not None else ValueChain(v for T in S.opens for v in T.values)
    return LTopSystem(list(S.carrier), S.top, F, sat, chain)


def lo_L(D: LTopSystem) -> FiniteFrame:
    return D.frame


def s_L(P: FiniteFrame, chain: ValueChain) -> LTopSystem:
    """Points: frame homs v : P -> L with P̃(v) = sup_p v(p); gr(v ⊨* p) = v(p)."""
    C = chain_frame(chain)
    vals = C.elements
    homs = enumerate_frame_homs(P, C)
    sat = [[vals[v[p]] for p in range(P.size)] for v in homs]
    memb = FuzzySubset(tuple(homs), [sup_family(row) for row in sat])
    return LTopSystem(homs, memb, P, sat, chain)


class LSystemMap:
    """(f1, f2): f1 a proper function on the underlying fuzzy sets, f2 : Q -> P a frame map."""

    def __init__(self, f1: ProperFunction, f2):
        self.f1 = f1
        self.f2 = tuple(f2)


def check_L_system_map(m: LSystemMap, D: LTopSystem, E: LTopSystem) -> Report:
    r = Report("L-system map")
    r.extend(check_proper(m.f1), "f1 ")
    r.extend(check_frame_hom(m.f2, E.frame, D.frame), "f2 ")
    if not r.ok:
        return r
    for x in range(len(D.points)):
        if D.membership.values[x] <= 0:
            continue
        y = m.f1.point_image(x)
        for q in range(E.frame.size):
            if D.gr(x, m.f2[q]) != E.gr(y, q):
                r.fail("transfer", (D.points[x], E.frame.name(q)))
    r.check("transfer", True)
    return r


def check_fuzz_top_continuous(f: ProperFunction, S1: FuzzyTopSpace, S2: FuzzyTopSpace) -> Report:
    r = Report("fuzz-top continuity")
    r.extend(check_proper(f))
    if not r.ok:
        return r
    for V in S2.opens:
        r.check("preimage open", proper_preimage(f, V) in S1, V)
    return r


def j_L_morphism(f: ProperFunction, S1: FuzzyTopSpace, S2: FuzzyTopSpace) -> LSystemMap:
    """J_L(f) = (f, f^{-1}) with f^{-1} on open indices."""
    return LSystemMap(f, [S1.index(proper_preimage(f, V)) for V in S2.opens])


def s_L_morphism(h, SP: LTopSystem, SQ: LTopSystem) -> LSystemMap:
    """S_L(h) = (- ∘ h, h) for a frame hom h : Q -> P."""
    idx = {v: i for i, v in enumerate(SQ.points)}
    fmap = {v: SQ.points[idx[compose_maps(v, h)]] for v in SP.points}
    return LSystemMap(proper_from_map(SP.membership, SQ.membership, fmap), h)


# ---- α-cuts ---------------------------------------------------------------------

def alpha_subsystem_strict(D: LTopSystem, alpha) -> FuzzyTopSystem:
    """Crisp system on {x : Ã(x) > α} with x ⊨_α p iff gr(x ⊨ p) > α."""
    alpha = tv(alpha)
    keep = [x for x in range(len(D.points)) if D.membership.values[x] > alpha]
    sat = [[ONE if D.gr(x, a) > alpha else ZERO for a in range(D.frame.size)] for x in keep]
    return FuzzyTopSystem([D.points[x] for x in keep], D.frame, sat)


def alpha_subsystem_fuzzy(D: LTopSystem, alpha) -> LTopSystem:
    """Membership Ã_α; grades kept where Ã(x) ≥ α and zeroed elsewhere."""
    alpha = tv(alpha)
    memb = fuzzy_alpha_cut(D.membership, alpha)
    sat = [[v if D.membership.values[x] >= alpha else ZERO for v in row] for x, row in enumerate(D.sat)]
    return LTopSystem(D.points, memb, D.frame, sat, D.chain)


def alpha_subspace(S: FuzzyTopSpace, alpha, fuzzy: bool = False) -> FuzzyTopSpace:
    """Strict version: carrier {x : Ã(x) > α}, opens the strict cuts of τ (as 0/1 sets).
    Fuzzy version: same carrier, top Ã_α, opens Ã_α ∩ T."""
    alpha = tv(alpha)
    if fuzzy:
        top = fuzzy_alpha_cut(FuzzySubset(S.carrier, S.top.values), alpha)
        opens = [intersection(top, T) for T in S.opens]
        return FuzzyTopSpace(S.carrier, opens, chain=S.chain, top=top)
    keep = [i for i, v in enumerate(S.top.values) if v > alpha]
    carrier = tuple(S.carrier[i] for i in keep)
    opens = [FuzzySubset(carrier, [ONE if T.values[i] > alpha else ZERO for i in keep]) for T in S.opens]
    return FuzzyTopSpace(carrier, opens)


# ---- variable basis ---------------------------------------------------------------

def check_value_hom(phi_inv, L1: ValueChain, L: ValueChain) -> Report:
    """φ^{-1} : L1 -> L, given as a dict on L1's values, is a frame hom of chains."""
    r = Report("value-basis hom")
    try:
        f = [L.index(phi_inv[v]) for v in L1]
    except (KeyError, ValueError):
        r.fail("total into L", phi_inv)
        return r
    r.extend(check_frame_hom(f, chain_frame(L1), chain_frame(L)))
    r.check("top", phi_inv[ONE] == ONE)
    return r


def compose_value_maps(phi_inv, psi_inv):
    """(ψφ)^{-1} = φ^{-1} ∘ ψ^{-1}."""
    return {v: phi_inv[w] for v, w in psi_inv.items()}


def identity_value_map(L: ValueChain):
    return {v: v for v in L}


class FuzzMorphism:
    """(f, φ) with f a matrix X × X1 -> L and φ stored as φ^{-1} : L1 -> L; g is set for systems."""

    def __init__(self, f, phi_inv, g=None):
        self.f = tuple(tuple(tv(v) for v in row) for row in f)
        self.phi_inv = dict(phi_inv)
        self.g = tuple(g) if g is not None else None

    def __eq__(self, other):
        return (isinstance(other, FuzzMorphism) and self.f == other.f
                and self.phi_inv == other.phi_inv and self.g == other.g)

    def __repr__(self):
        return f"FuzzMorphism(f={[[fmt(v) for v in r] for r in self.f]}, g={self.g})"


def _check_fuzz_pair(m: FuzzMorphism, A: FuzzySubset, L: ValueChain, A1: FuzzySubset, L1: ValueChain,
                     r: Report):
    r.extend(check_value_hom(m.phi_inv, L1, L), "(a) ")
    if not r.ok:
        return False
    if len(m.f) != len(A.carrier) or any(len(row) != len(A1.carrier) for row in m.f):
        r.fail("(b) shape", None)
        return False
    for i, av in enumerate(A.values):
        for j, bv in enumerate(A1.values):
            if m.f[i][j] > min(av, m.phi_inv[bv]):
                r.fail("(b) bound", (A.carrier[i], A1.carrier[j]))
            if m.f[i][j] not in L:
                r.fail("(b) values in L", (A.carrier[i], A1.carrier[j]))
    supp = [j for j, v in enumerate(A1.values) if v > 0]
    for i, av in enumerate(A.values):
        if av <= 0:
            continue
        hits = [j for j in supp if m.f[i][j] == av]
        others = [j for j in supp if m.f[i][j] not in (av, ZERO)]
        if len(hits) != 1 or others:
            r.fail("(b) proper", A.carrier[i])
    for law in ("(b) bound", "(b) values in L", "(b) proper"):
        r.check(law, True)
    return r.ok


def fuzz_preimage(m: FuzzMorphism, V: FuzzySubset, carrier) -> FuzzySubset:
    """U(x) = sup_y [f(x,y) ∧ φ^{-1} V(y)]."""
    return FuzzySubset(carrier, [sup_family(min(row[j], m.phi_inv[V.values[j]]) for j in range(len(row)))
                                 for row in m.f])


def check_fuzztop_morphism(m: FuzzMorphism, S1: FuzzyTopSpace, S2: FuzzyTopSpace) -> Report:
    r = Report("FuzzTop morphism")
    if not _check_fuzz_pair(m, S1.top, S1.chain, S2.top, S2.chain, r):
        return r
    for V in S2.opens:
        r.check("(c) openness", fuzz_preimage(m, V, S1.carrier) in S1, V)
    return r


def compose_fuzz(m1: FuzzMorphism, m2: FuzzMorphism) -> FuzzMorphism:
    """m2 after m1 for m1 : S -> S1 and m2 : S1 -> S2."""
    ny = len(m2.f)
    f = [[sup_family(min(row[k], m1.phi_inv[m2.f[k][j]]) for k in range(ny)) for j in range(len(m2.f[0]))]
         for row in m1.f]
    g = None
    if m1.g is not None and m2.g is not None:
        g = compose_maps(m1.g, m2.g)
    return FuzzMorphism(f, compose_value_maps(m1.phi_inv, m2.phi_inv), g)


def identity_fuzz(A: FuzzySubset, L: ValueChain, frame: FiniteFrame | None = None) -> FuzzMorphism:
    n = len(A.carrier)
    f = [[A.values[i] if i == j else ZERO for j in range(n)] for i in range(n)]
    return FuzzMorphism(f, identity_value_map(L), identity_map(frame) if frame is not None else None)


def check_fuzztopsys_morphism(m: FuzzMorphism, D: LTopSystem, E: LTopSystem) -> Report:
    """(f, φ, g) : D -> E; g : Q -> P frame hom and the transfer equation."""
    r = Report("FuzzTopSys morphism")
    if not _check_fuzz_pair(m, D.membership, D.chain, E.membership, E.chain, r):
        return r
    if m.g is None:
        r.fail("2 frame map present", None)
        return r
    r.extend(check_frame_hom(m.g, E.frame, D.frame), "2 ")
    if not r.ok:
        return r
    for x in range(len(D.points)):
        for q in range(E.frame.size):
            rhs = sup_family(min(m.phi_inv[E.gr(y, q)], m.f[x][y]) for y in range(len(E.points)))
            if D.gr(x, m.g[q]) != rhs:
                r.fail("3 transfer", (D.points[x], E.frame.name(q)))
    r.check("3 transfer", True)
    return r


def ext_F(D: LTopSystem) -> FuzzyTopSpace:
    return ext_L(D)


def ext_F_morphism(m: FuzzMorphism) -> FuzzMorphism:
    return FuzzMorphism(m.f, m.phi_inv)


def j_F(S: FuzzyTopSpace) -> LTopSystem:
    return j_L(S)


def j_F_morphism(m: FuzzMorphism, S1: FuzzyTopSpace, S2: FuzzyTopSpace) -> FuzzMorphism:
    """J_F(f, φ) = (f, φ, f^{-1}_φ) on open indices."""
    g = [S1.index(fuzz_preimage(m, V, S1.carrier)) for V in S2.opens]
    return FuzzMorphism(m.f, m.phi_inv, g)


def counit_F(D: LTopSystem):
    """(i_A, i_L, ext_F*) : J_F(Ext_F(D)) -> D."""
    JE = j_F(ext_F(D))
    i = identity_fuzz(D.membership, D.chain)
    return JE, FuzzMorphism(i.f, i.phi_inv, ext_L_map(D))
