"""Fuzzy topological systems (plain and graded), their maps and constructions."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .fuzzyset import FuzzySubset
from .lattice import (FiniteFrame, GradedFrame, check_frame_hom, check_graded_frame,
                      check_graded_frame_hom, compose_maps, enumerate_frame_homs, chain_frame,
                      frame_coproduct, frame_product_many, identity_map)
from .report import Report
from .space import FuzzyTopSpace, graded_frame_of, topology_frame
from .truth import ONE, ZERO, ValueChain, fmt, godel_arrow, inf_family, sup_family, tv


class FuzzyTopSystem:
    """Points X, a finite frame A and a satisfaction matrix sat[x][a]."""

    def __init__(self, points: Sequence, frame: FiniteFrame, sat):
        self.points = list(points)
        self.frame = frame
        if len(sat) != len(self.points):
            raise ValueError("one satisfaction row per point is required")
        rows = []
        for row in sat:
            if len(row) != frame.size:
                raise ValueError("satisfaction row length differs from the frame size")
            rows.append(tuple(tv(v) for v in row))
        self.sat = rows

    @property
    def graded(self) -> bool:
        return False

    def gr(self, x: int, a: int) -> Fraction:
        return self.sat[x][a]

    def column(self, a: int):
        return tuple(row[a] for row in self.sat)

    def point_index(self, label) -> int:
        return self.points.index(label)

    def to_json(self):
        return {
            "kind": "system",
            "points": [str(p) for p in self.points],
            "frame": self.frame.to_json(),
            "sat": [[fmt(v) for v in row] for row in self.sat],
        }

    def __repr__(self):
        return f"{type(self).__name__}(|X|={len(self.points)}, |A|={self.frame.size})"


class GradedFuzzyTopSystem(FuzzyTopSystem):
    def __init__(self, points, gframe: GradedFrame, sat):
        super().__init__(points, gframe.frame, sat)
        self.gframe = gframe

    @property
    def graded(self) -> bool:
        return True

    def to_json(self):
        d = super().to_json()
        d["kind"] = "graded-system"
        d["R"] = [[fmt(v) for v in row] for row in self.gframe.R]
        return d


class SystemMap:
    """(f1, f2) : D -> E with f1 on points (D -> E) and f2 on frames (E -> D)."""

    def __init__(self, f1, f2):
        self.f1 = tuple(f1)
        self.f2 = tuple(f2)

    def __eq__(self, other):
        return isinstance(other, SystemMap) and self.f1 == other.f1 and self.f2 == other.f2

    def __hash__(self):
        return hash((self.f1, self.f2))

    def __repr__(self):
        return f"SystemMap(f1={self.f1}, f2={self.f2})"


def identity_system_map(D) -> SystemMap:
    return SystemMap(range(len(D.points)), identity_map(D.frame))


def compose_system_maps(g: SystemMap, f: SystemMap) -> SystemMap:
    """g ∘ f = (g1 ∘ f1, f2 ∘ g2)."""
    return SystemMap(compose_maps(g.f1, f.f1), compose_maps(f.f2, g.f2))


# ---- axioms -----------------------------------------------------------------

def check_system(D: FuzzyTopSystem) -> Report:
    """Binary meet/join clauses plus gr(⊤)=1 and gr(⊥)=0."""
    A = D.frame
    r = Report("system")
    r.check("nonempty points", len(D.points) > 0)
    for x, row in enumerate(D.sat):
        r.check("top", row[A.top] == 1, (D.points[x],))
        r.check("bottom", row[A.bottom] == 0, (D.points[x],))
        for a in range(A.size):
            for b in range(a + 1, A.size):
                if row[A.meet(a, b)] != min(row[a], row[b]):
                    r.fail("meet", (D.points[x], A.name(a), A.name(b)))
                if row[A.join(a, b)] != max(row[a], row[b]):
                    r.fail("join", (D.points[x], A.name(a), A.name(b)))
    r.check("meet", True)
    r.check("join", True)
    return r


def check_system_full(D: FuzzyTopSystem, limit: int = 12) -> Report:
    """The subset clauses: gr(x ⊨ ⋀S) = inf and gr(x ⊨ ⋁S) = sup for every S ⊆ A."""
    A = D.frame
    n = A.size
    if n > limit:
        raise ValueError(f"exhaustive subset check limited to |A| <= {limit}")
    r = Report("system (all subsets)")
    meets = [A.top] * (1 << n)
    joins = [A.bottom] * (1 << n)
    for mask in range(1, 1 << n):
        low = mask & -mask
        k = low.bit_length() - 1
        meets[mask] = A.meet(meets[mask ^ low], k)
        joins[mask] = A.join(joins[mask ^ low], k)
    for x, row in enumerate(D.sat):
        lo = [ONE] * (1 << n)
        hi = [ZERO] * (1 << n)
        for mask in range(1, 1 << n):
            low = mask & -mask
            k = low.bit_length() - 1
            lo[mask] = min(lo[mask ^ low], row[k])
            hi[mask] = max(hi[mask ^ low], row[k])
            if row[meets[mask]] != lo[mask]:
                r.fail("finite meet", (D.points[x], mask))
            if row[joins[mask]] != hi[mask]:
                r.fail("arbitrary join", (D.points[x], mask))
        r.check("empty meet", row[A.top] == 1, D.points[x])
        r.check("empty join", row[A.bottom] == 0, D.points[x])
    r.check("finite meet", True)
    r.check("arbitrary join", True)
    return r


def check_graded_system(D: GradedFuzzyTopSystem) -> Report:
    r = Report("graded system")
    r.extend(check_graded_frame(D.gframe), "frame ")
    r.extend(check_system(D))
    R = D.gframe.R
    n = D.frame.size
    for x, row in enumerate(D.sat):
        for a in range(n):
            for b in range(n):
                if min(row[a], R[a][b]) > row[b]:
                    r.fail("grade transfer", (D.points[x], D.frame.name(a), D.frame.name(b)))
    r.check("grade transfer", True)
    return r


def is_spatial(D) -> bool:
    cols = [D.column(a) for a in range(D.frame.size)]
    return len(set(cols)) == len(cols)


def is_localic(D) -> bool:
    return len(set(D.sat)) == len(D.sat)


def check_system_map(m: SystemMap, D, E, kind: str = "plain") -> Report:
    """Frame-hom laws on f2 : E.frame -> D.frame and the transfer equation."""
    r = Report(f"{kind} system map")
    if len(m.f1) != len(D.points) or any(not (0 <= y < len(E.points)) for y in m.f1):
        r.fail("point map total", m.f1)
        return r
    if kind == "graded":
        r.extend(check_graded_frame_hom(m.f2, E.gframe, D.gframe, require_top=True), "f2 ")
    else:
        r.extend(check_frame_hom(m.f2, E.frame, D.frame), "f2 ")
    if not r.ok:
        return r
    for x in range(len(D.points)):
        y = m.f1[x]
        for b in range(E.frame.size):
            if D.gr(x, m.f2[b]) != E.gr(y, b):
                r.fail("transfer", (D.points[x], E.frame.name(b)))
    r.check("transfer", True)
    return r


# ---- Ext / J ------------------------------------------------------------------

def extent(D, a: int) -> FuzzySubset:
    return FuzzySubset(_carrier(D), D.column(a))


def _carrier(D):
    return tuple(range(len(D.points))) if len(set(map(str, D.points))) != len(D.points) else tuple(D.points)


def ext_map(D):
    """Index of ext(a) among the opens of ext(D), for each frame element a."""
    seen = {}
    out = []
    for a in range(D.frame.size):
        col = D.column(a)
        out.append(seen.setdefault(col, len(seen)))
    return tuple(out)


def ext(D) -> FuzzyTopSpace:
    seen = {}
    for a in range(D.frame.size):
        seen.setdefault(D.column(a), None)
    carrier = tuple(D.points)
    return FuzzyTopSpace(carrier, [FuzzySubset(carrier, col) for col in seen])


def ext_g(D) -> FuzzyTopSpace:
    S = ext(D)
    S.flavor = "graded"
    return S


def ext_morphism(m: SystemMap) -> tuple:
    return m.f1


def j(S: FuzzyTopSpace) -> FuzzyTopSystem:
    F = topology_frame(S)
    sat = [[T.values[x] for T in S.opens] for x in range(len(S.carrier))]
    return FuzzyTopSystem(list(S.carrier), F, sat)


def j_g(S: FuzzyTopSpace) -> GradedFuzzyTopSystem:
    G = graded_frame_of(S)
    sat = [[T.values[x] for T in S.opens] for x in range(len(S.carrier))]
    return GradedFuzzyTopSystem(list(S.carrier), G, sat)


def j_morphism(f, S1: FuzzyTopSpace, S2: FuzzyTopSpace) -> SystemMap:
    """J(f) = (f, f^{-1}); f is a tuple of carrier indices of S2 per point of S1."""
    f2 = []
    for B in S2.opens:
        P = FuzzySubset(S1.carrier, [B.values[f[x]] for x in range(len(S1.carrier))])
        f2.append(S1.index(P))
    return SystemMap(f, f2)


def counit_ext(D):
    """(id_X, ext*) : J(Ext(D)) -> D."""
    JE = j(ext(D))
    return JE, SystemMap(range(len(D.points)), ext_map(D))


# ---- fm / S -------------------------------------------------------------------

def fm(D) -> FiniteFrame:
    return D.frame


def fm_morphism(m: SystemMap) -> tuple:
    return m.f2


def occurring_chain(*systems) -> ValueChain:
    vals = set()
    for D in systems:
        for row in D.sat:
            vals.update(row)
    return ValueChain(vals)


def s(A: FiniteFrame, chain: ValueChain) -> FuzzyTopSystem:
    """Points are the frame homs A -> chain; gr(v ⊨* a) = v(a)."""
    C = chain_frame(chain)
    homs = enumerate_frame_homs(A, C)
    vals = C.elements
    sat = [[vals[v[a]] for a in range(A.size)] for v in homs]
    D = FuzzyTopSystem(homs, A, sat)
    return D


def s_morphism(f, A_target: FiniteFrame, SA, SB) -> SystemMap:
    """S(f) = (- ∘ f, f) : S(A) -> S(B) for a frame hom f : B -> A."""
    idx = {p: i for i, p in enumerate(SB.points)}
    f1 = [idx[compose_maps(v, f)] for v in SA.points]
    return SystemMap(f1, f)


def point_hom(D, x: int, chain: ValueChain) -> tuple:
    """p_x as an index tuple into the chain."""
    return tuple(chain.index(D.gr(x, a)) for a in range(D.frame.size))


def unit_s(D, chain: ValueChain | None = None):
    """(p*, id_A) : D -> S(fm(D)) together with S(fm(D))."""
    chain = chain if chain is not None else occurring_chain(D)
    SD = s(D.frame, chain)
    idx = {p: i for i, p in enumerate(SD.points)}
    f1 = []
    for x in range(len(D.points)):
        p = point_hom(D, x, chain)
        f1.append(idx.get(p, -1))
    return SD, SystemMap(f1, identity_map(D.frame))


def s_g(G: GradedFrame, chain: ValueChain) -> GradedFuzzyTopSystem:
    """Points: top-preserving frame homs v with R(a,b) ≤ v(a) → v(b)."""
    A = G.frame
    C = chain_frame(chain)
    vals = C.elements
    pts = []
    for v in enumerate_frame_homs(A, C):
        if all(G.R[a][b] <= godel_arrow(vals[v[a]], vals[v[b]]) for a in range(A.size) for b in range(A.size)):
            pts.append(v)
    sat = [[vals[v[a]] for a in range(A.size)] for v in pts]
    return GradedFuzzyTopSystem(pts, G, sat)


# ---- sums and products ----------------------------------------------------------

def system_sum(Ds) -> FuzzyTopSystem:
    Ds = list(Ds)
    P, projs = frame_product_many([D.frame for D in Ds])
    points = [(lam, x) for lam, D in enumerate(Ds) for x in D.points]
    owner = [(lam, xi) for lam, D in enumerate(Ds) for xi in range(len(D.points))]
    sat = []
    for lam, xi in owner:
        row = []
        for u in range(P.size):
            comps = P.elements[u]
            # sup over mu of X̃_mu(z) ∧ gr(z ⊨_mu a_mu); X̃_mu is crisp
            row.append(sup_family(
                min(ONE if mu == lam else ZERO, Ds[mu].gr(xi, comps[mu]) if mu == lam else ZERO)
                for mu in range(len(Ds))))
        sat.append(row)
    return FuzzyTopSystem(points, P, sat)


def system_product(D, E):
    """Points X × Y over A ⊗ B; returns (system, coproduct)."""
    cp = frame_coproduct(D.frame, E.frame)
    C = cp.frame
    points = [(x, y) for x in D.points for y in E.points]
    sat = []
    for xi in range(len(D.points)):
        for yi in range(len(E.points)):
            row = []
            for u in range(C.size):
                row.append(sup_family(min(D.gr(xi, p), E.gr(yi, q)) for p, q in cp.decompose(u)))
            sat.append(row)
    return FuzzyTopSystem(points, C, sat), cp


def tensor_grade_any(D, E, cp, xi, yi, u) -> Fraction:
    """Grade via every pure tensor a⊗b below u; must match the canonical one."""
    C = cp.frame
    best = ZERO
    for a in range(D.frame.size):
        for b in range(E.frame.size):
            if C.le[cp.tensor(a, b)][u]:
                best = max(best, min(D.gr(xi, a), E.gr(yi, b)))
    return best


# ---- quotient -------------------------------------------------------------------

def quotient(D):
    """Merge frame elements with equal columns; returns (quotient system, class map)."""
    A = D.frame
    reps = {}
    cls = []
    for a in range(A.size):
        col = D.column(a)
        if col not in reps:
            reps[col] = len(reps)
        cls.append(reps[col])
    first = {}
    for a in range(A.size):
        first.setdefault(cls[a], a)
    k = len(reps)
    rep_of = [first[c] for c in range(k)]
    cols = [D.column(a) for a in rep_of]
    le = [[all(u <= v for u, v in zip(cols[i], cols[j])) for j in range(k)] for i in range(k)]
    meet = [[cls[A.meet(rep_of[i], rep_of[j])] for j in range(k)] for i in range(k)]
    join = [[cls[A.join(rep_of[i], rep_of[j])] for j in range(k)] for i in range(k)]
    Q = FiniteFrame([A.elements[a] for a in rep_of], le, meet, join)
    sat = [[row[a] for a in rep_of] for row in D.sat]
    if D.graded:
        R = [[inf_family(godel_arrow(u, v) for u, v in zip(cols[i], cols[j])) for j in range(k)] for i in range(k)]
        return GradedFuzzyTopSystem(D.points, GradedFrame(Q, R), sat), tuple(cls)
    return FuzzyTopSystem(D.points, Q, sat), tuple(cls)


def quotient_graded(D):
    """Graded quotient of a plain or graded system."""
    if not D.graded:
        G = GradedFrame(D.frame, [[inf_family(godel_arrow(u, v) for u, v in zip(D.column(a), D.column(b)))
                                   for b in range(D.frame.size)] for a in range(D.frame.size)])
        D = GradedFuzzyTopSystem(D.points, G, D.sat)
    return quotient(D)


def find_system_isomorphism(D, E):
    """Identity-on-labels point bijection plus a frame iso matching columns."""
    if len(D.points) != len(E.points):
        return None
    pos = {str(p): i for i, p in enumerate(E.points)}
    try:
        f1 = [pos[str(p)] for p in D.points]
    except KeyError:
        return None
    cols = {}
    for a in range(D.frame.size):
        cols[tuple(D.gr(x, a) for x in range(len(D.points)))] = a
    f2 = []
    for b in range(E.frame.size):
        col = tuple(E.gr(f1[x], b) for x in range(len(D.points)))
        if col not in cols:
            return None
        f2.append(cols[col])
    if len(set(f2)) != len(f2) or D.frame.size != E.frame.size:
        return None
    m = SystemMap(f1, f2)
    if not check_system_map(m, D, E).ok:
        return None
    return m
