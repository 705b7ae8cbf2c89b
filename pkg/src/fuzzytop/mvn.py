"""Finite Łukasiewicz n-valued algebras with constants, n-bar filters and Boolean systems."""
from __future__ import annotations

from fractions import Fraction
from itertools import product

from .fuzzyset import FuzzySubset
from .report import Report
from .space import FuzzyTopSpace, cont, compact, kolmogorov, zero_dimensional
from .truth import ONE, ZERO, ValueChain, fmt, make_chain


class ClosureError(ValueError):
    pass


def _oplus(x, y):
    return min(ONE, x + y)


def _star(x, y):
    return max(ZERO, x + y - 1)


def _neg(x):
    return ONE - x


def _arrow(x, y):
    return min(ONE, 1 - (x - y))


class LnAlgebra:
    """Finite algebra given by operation tables over element indices.

    ``vecs`` holds the pointwise values when the algebra is a subalgebra of
    n-bar^X (n-bar itself is the case |X| = 1); abstract tables leave it None.
    ``consts[k]`` is the element standing for the k-th value of n-bar.
    """

    def __init__(self, n, elements, oplus, star, neg, meet, join, arrow, consts, vecs=None, X=None):
        self.n = n
        self.chain = make_chain(n)
        self.elements = list(elements)
        self.size = len(self.elements)
        self.oplus = oplus
        self.star = star
        self.neg = neg
        self.meet = meet
        self.join = join
        self.arrow = arrow
        self.consts = list(consts)
        self.vecs = vecs
        self.X = X
        self._vindex = {v: i for i, v in enumerate(vecs)} if vecs is not None else None

    @property
    def zero(self):
        return self.consts[0]

    @property
    def one(self):
        return self.consts[-1]

    def const(self, r) -> int:
        return self.consts[self.chain.index(r)]

    def leq(self, a, b) -> bool:
        return self.meet[a][b] == a

    def index_of_vec(self, v):
        if self._vindex is None or v not in self._vindex:
            raise ClosureError(f"{[fmt(x) for x in v]} is not in the algebra")
        return self._vindex[v]

    def name(self, i):
        e = self.elements[i]
        if isinstance(e, tuple):
            return "(" + ",".join(fmt(v) for v in e) + ")"
        return fmt(e) if isinstance(e, Fraction) else str(e)

    def to_json(self):
        d = {"kind": "mvn-algebra", "n": self.n}
        if self.vecs is not None:
            d["representation"] = "chain" if len(self.X) == 1 else "functions"
            d["X"] = [str(x) for x in (self.X or ())]
            d["elements"] = [[fmt(v) for v in vec] for vec in self.vecs]
        return d

    def __repr__(self):
        return f"LnAlgebra(n={self.n}, size={self.size})"


def algebra_from_vectors(n, X, vecs) -> LnAlgebra:
    """Pointwise operations on a set of maps X -> n-bar, which must be closed."""
    X = tuple(X)
    vecs = [tuple(v) for v in vecs]
    idx = {v: i for i, v in enumerate(vecs)}
    if len(idx) != len(vecs):
        raise ValueError("duplicate vectors")

    def table2(op):
        out = []
        for a in vecs:
            row = []
            for b in vecs:
                c = tuple(op(x, y) for x, y in zip(a, b))
                if c not in idx:
                    raise ClosureError("vectors are not closed under the operations")
                row.append(idx[c])
            out.append(row)
        return out

    chain = make_chain(n)
    try:
        neg = [idx[tuple(_neg(x) for x in a)] for a in vecs]
        consts = [idx[tuple([r] * len(X))] for r in chain]
    except KeyError as e:
        raise ClosureError("vectors are not closed under ⊥ or constants") from e
    labels = vecs if len(X) != 1 else [v[0] for v in vecs]
    return LnAlgebra(n, labels, table2(_oplus), table2(_star), neg, table2(min), table2(max),
                     table2(_arrow), consts, vecs=vecs, X=X)


def chain_algebra(n: int) -> LnAlgebra:
    chain = make_chain(n)
    return algebra_from_vectors(n, ("*",), [(r,) for r in chain])


def close_vectors(n, X, generators=()):
    """Smallest set of maps X -> n-bar containing the constants and generators, closed under ⊕, *, ⊥."""
    chain = make_chain(n)
    X = tuple(X)
    found = {tuple([r] * len(X)) for r in chain}
    found.update(tuple(g) for g in generators)
    frontier = list(found)
    while frontier:
        new = []
        cur = list(found)
        for a in frontier:
            c = tuple(_neg(x) for x in a)
            if c not in found:
                found.add(c)
                new.append(c)
            for b in cur:
                for op in (_oplus, _star):
                    c = tuple(op(x, y) for x, y in zip(a, b))
                    if c not in found:
                        found.add(c)
                        new.append(c)
        frontier = new
    return sorted(found)


def function_algebra(n, X, generators=()) -> LnAlgebra:
    X = tuple(X)
    gens = []
    for g in generators:
        if isinstance(g, dict):
            g = [g[x] for x in X]
        gens.append(tuple(Fraction(v) for v in g))
    return algebra_from_vectors(n, X, close_vectors(n, X, gens))


def power_algebra(n, X) -> LnAlgebra:
    chain = make_chain(n)
    return algebra_from_vectors(n, X, list(product(chain.elements, repeat=len(tuple(X)))))


def enumerate_subalgebras(n, X):
    """All subalgebras of n-bar^X, as closed vector sets (sorted)."""
    X = tuple(X)
    chain = make_chain(n)
    allv = list(product(chain.elements, repeat=len(X)))
    start = frozenset(close_vectors(n, X))
    seen = {start}
    frontier = [start]
    while frontier:
        new = []
        for S in frontier:
            for v in allv:
                if v in S:
                    continue
                T = frozenset(close_vectors(n, X, list(S) + [v]))
                if T not in seen:
                    seen.add(T)
                    new.append(T)
        frontier = new
    return [algebra_from_vectors(n, X, sorted(S)) for S in sorted(seen, key=lambda s: (len(s), sorted(s)))]


# ---- axioms ---------------------------------------------------------------------

def _mult(A, m, x):
    """m x = x ⊕ ... ⊕ x (0x = 0)."""
    acc = A.zero
    for _ in range(m):
        acc = A.oplus[acc][x]
    return acc


def _power(A, m, x):
    acc = A.one
    for _ in range(m):
        acc = A.star[acc][x]
    return acc


def check_lnc(A: LnAlgebra) -> Report:
    r = Report(f"Łn^c algebra (n={A.n})")
    E = range(A.size)
    o, s, ng = A.oplus, A.star, A.neg
    z, one = A.zero, A.one
    for x in E:
        r.check("monoid unit", o[x][z] == x, A.name(x))
        r.check("MV1", o[x][one] == one, A.name(x))
        r.check("MV2", ng[ng[x]] == x, A.name(x))
        for y in E:
            if o[x][y] != o[y][x]:
                r.fail("monoid commutative", (A.name(x), A.name(y)))
            if o[ng[o[ng[x]][y]]][y] != o[ng[o[ng[y]][x]]][x]:
                r.fail("MV4", (A.name(x), A.name(y)))
            if s[x][y] != ng[o[ng[x]][ng[y]]]:
                r.fail("MV5", (A.name(x), A.name(y)))
            if A.join[x][y] != o[s[x][ng[y]]][y]:
                r.fail("derived join", (A.name(x), A.name(y)))
            if A.meet[x][y] != s[o[x][ng[y]]][y]:
                r.fail("derived meet", (A.name(x), A.name(y)))
            if A.arrow[x][y] != o[ng[x]][y]:
                r.fail("derived arrow", (A.name(x), A.name(y)))
            for w in E:
                if o[o[x][y]][w] != o[x][o[y][w]]:
                    r.fail("monoid associative", (A.name(x), A.name(y), A.name(w)))
    r.check("MV3", ng[z] == one)
    for law in ("monoid commutative", "monoid associative", "MV4", "MV5",
                "derived join", "derived meet", "derived arrow"):
        r.check(law, True)
    n = A.n
    for x in E:
        r.check("MVn 1", o[_mult(A, n - 1, x)][x] == _mult(A, n - 1, x), A.name(x))
        r.check("MVn 1'", s[_power(A, n - 1, x)][x] == _power(A, n - 1, x), A.name(x))
        if n >= 4:
            for j in range(2, n - 1):
                if (n - 1) % j == 0:
                    continue
                lhs = s[_mult(A, j, x)][o[ng[x]][ng[_mult(A, j - 1, x)]]]
                r.check("MVn 2", _power(A, n - 1, lhs) == z, (A.name(x), j))
                rhs = o[_power(A, j, x)][s[ng[x]][ng[_power(A, j - 1, x)]]]
                r.check("MVn 2'", _mult(A, n - 1, rhs) == one, (A.name(x), j))
    # constants: n-bar embeds as a subalgebra
    chain = A.chain.elements
    cs = A.consts
    r.check("constants injective", len(set(cs)) == len(cs))
    ci = {c: k for k, c in enumerate(cs)}
    for i, a in enumerate(chain):
        r.check("constants ⊥", ci.get(ng[cs[i]]) is not None and chain[ci[ng[cs[i]]]] == _neg(a), fmt(a))
        for j2, b in enumerate(chain):
            for op, tab in ((_oplus, o), (_star, s)):
                c = tab[cs[i]][cs[j2]]
                if c not in ci or chain[ci[c]] != op(a, b):
                    r.fail("constants homomorphic", (fmt(a), fmt(b)))
    r.check("constants homomorphic", True)
    return r


def check_ln_hom(h, A: LnAlgebra, B: LnAlgebra) -> Report:
    """h : A -> B given as a tuple of B-indices per A-index."""
    r = Report("Łn^c homomorphism")
    if len(h) != A.size or any(not (0 <= v < B.size) for v in h):
        r.fail("total", h)
        return r
    for k in range(len(A.consts)):
        r.check("constants", h[A.consts[k]] == B.consts[k], fmt(A.chain.elements[k]))
    for x in range(A.size):
        r.check("⊥", h[A.neg[x]] == B.neg[h[x]], A.name(x))
        for y in range(A.size):
            for law, ta, tb in (("⊕", A.oplus, B.oplus), ("*", A.star, B.star), ("∧", A.meet, B.meet),
                                ("∨", A.join, B.join), ("→", A.arrow, B.arrow)):
                if h[ta[x][y]] != tb[h[x]][h[y]]:
                    r.fail(law, (A.name(x), A.name(y)))
    for law in ("⊕", "*", "∧", "∨", "→"):
        r.check(law, True)
    return r


def enumerate_homs(A: LnAlgebra, B: LnAlgebra):
    """All Łn^c homs A -> B by propagating assignments through the tables."""
    out = []

    def propagate(assign, todo):
        while todo:
            x = todo.pop()
            vx = assign[x]
            pairs = [(A.neg[x], B.neg[vx])]
            for y in range(A.size):
                vy = assign[y]
                if vy is None:
                    continue
                pairs += [(A.oplus[x][y], B.oplus[vx][vy]), (A.star[x][y], B.star[vx][vy]),
                          (A.oplus[y][x], B.oplus[vy][vx]), (A.star[y][x], B.star[vy][vx])]
            for t, v in pairs:
                if assign[t] is None:
                    assign[t] = v
                    todo.append(t)
                elif assign[t] != v:
                    return False
        return True

    start = [None] * A.size
    todo = []
    for k, c in enumerate(A.consts):
        if start[c] is not None and start[c] != B.consts[k]:
            return []
        start[c] = B.consts[k]
        todo.append(c)
    if not propagate(start, todo):
        return []

    def rec(assign):
        free = [i for i, v in enumerate(assign) if v is None]
        if not free:
            h = tuple(assign)
            if check_ln_hom(h, A, B).ok:
                out.append(h)
            return
        x = free[0]
        for v in range(B.size):
            a2 = list(assign)
            a2[x] = v
            if propagate(a2, [x]):
                rec(a2)

    rec(start)
    return sorted(set(out))


def homs_to_chain(A: LnAlgebra):
    """Homs A -> n-bar as tuples of values."""
    C = chain_algebra(A.n)
    return [tuple(C.elements[i] for i in h) for h in enumerate_homs(A, C)]


def find_ln_isomorphism(A: LnAlgebra, B: LnAlgebra):
    if A.size != B.size:
        return None
    for h in enumerate_homs(A, B):
        if len(set(h)) == len(h):
            return h
    return None


# ---- T_r and S_r ----------------------------------------------------------------

def _need_vecs(A):
    if A.vecs is None:
        raise ClosureError("T_r/S_r need a function-algebra presentation")


def t_term(A: LnAlgebra, r, a: int) -> int:
    """T_r(a)(x) = 1 if a(x) = r else 0."""
    _need_vecs(A)
    r = Fraction(r)
    return A.index_of_vec(tuple(ONE if v == r else ZERO for v in A.vecs[a]))


def s_term(A: LnAlgebra, r, a: int) -> int:
    """S_r(a)(x) = r if a(x) = 1 else 0."""
    _need_vecs(A)
    r = Fraction(r)
    return A.index_of_vec(tuple(r if v == 1 else ZERO for v in A.vecs[a]))


def biimp(A, a, b):
    return A.meet[A.arrow[a][b]][A.arrow[b][a]]


def idempotents(A):
    return [a for a in range(A.size) if A.star[a][a] == a]


def check_prop_idempotents(A) -> Report:
    r = Report("idempotents")
    I = idempotents(A)
    for a in I:
        for b in I:
            r.check("a*b = a∧b", A.star[a][b] == A.meet[a][b], (A.name(a), A.name(b)))
            r.check("a⊕b = a∨b", A.oplus[a][b] == A.join[a][b], (A.name(a), A.name(b)))
    return r


def check_prop_t1(A) -> Report:
    """T_1 commutes with finite joins and meets (binary and empty)."""
    r = Report("T_1 distributes")
    T1 = [t_term(A, ONE, a) for a in range(A.size)]
    r.check("empty join", T1[A.zero] == A.zero)
    r.check("empty meet", T1[A.one] == A.one)
    for a in range(A.size):
        for b in range(A.size):
            r.check("join", T1[A.join[a][b]] == A.join[T1[a]][T1[b]], (A.name(a), A.name(b)))
            r.check("meet", T1[A.meet[a][b]] == A.meet[T1[a]][T1[b]], (A.name(a), A.name(b)))
    return r


def check_prop_t_separation(A) -> Report:
    """⋀_r (T_r(a) ↔ T_r(b)) ≤ a ↔ b."""
    r = Report("T_r separation")
    T = {rv: [t_term(A, rv, a) for a in range(A.size)] for rv in A.chain}
    for a in range(A.size):
        for b in range(A.size):
            lhs = A.one
            for rv in A.chain:
                lhs = A.meet[lhs][biimp(A, T[rv][a], T[rv][b])]
            r.check("bound", A.leq(lhs, biimp(A, a, b)), (A.name(a), A.name(b)))
    return r


def check_prop_terms(A) -> Report:
    """T_r idempotent; hom characterisations of T_r and S_r."""
    r = Report("T_r and S_r")
    homs = homs_to_chain(A)
    for rv in A.chain:
        for a in range(A.size):
            t = t_term(A, rv, a)
            sr = s_term(A, rv, a)
            r.check("T_r idempotent", A.star[t][t] == t, (fmt(rv), A.name(a)))
            for v in homs:
                r.check("T_r value 1", (v[t] == 1) == (v[a] == rv), (fmt(rv), A.name(a)))
                r.check("T_r value 0", (v[t] == 0) == (v[a] != rv), (fmt(rv), A.name(a)))
                if rv > 0:
                    r.check("S_r value r", (v[sr] == rv) == (v[a] == 1), (fmt(rv), A.name(a)))
                r.check("S_r value 0", (v[sr] == 0) == (v[a] != 1) or rv == 0, (fmt(rv), A.name(a)))
    return r


# ---- filters --------------------------------------------------------------------

def filter_closure(A: LnAlgebra, S) -> frozenset:
    F = set(S) or {A.one}
    while True:
        prods = {A.star[a][b] for a in F for b in F}
        up = {b for b in range(A.size) if any(A.leq(f, b) for f in F | prods)}
        if up == F:
            return frozenset(F)
        F = up


def is_nfilter(A, F) -> bool:
    F = set(F)
    if not F:
        return False
    for a in F:
        for b in range(A.size):
            if A.leq(a, b) and b not in F:
                return False
        for b in F:
            if A.star[a][b] not in F:
                return False
    return True


def enumerate_nfilters(A: LnAlgebra):
    """All n-bar filters (including A itself), grown one generator at a time."""
    start = filter_closure(A, {A.one})
    seen = {start}
    frontier = [start]
    while frontier:
        new = []
        for F in frontier:
            for a in range(A.size):
                if a in F:
                    continue
                G = filter_closure(A, F | {a})
                if G not in seen:
                    seen.add(G)
                    new.append(G)
        frontier = new
    return sorted(seen, key=lambda F: (len(F), sorted(F)))


def is_prime(A: LnAlgebra, F) -> bool:
    F = frozenset(F)
    if not is_nfilter(A, F) or len(F) == A.size:
        return False
    for a in range(A.size):
        for b in range(A.size):
            if A.join[a][b] in F and a not in F and b not in F:
                return False
    return True


def prime_filters(A: LnAlgebra):
    return [F for F in enumerate_nfilters(A) if is_prime(A, F)]


def extend_filter(A: LnAlgebra, F, b: int) -> frozenset:
    F = frozenset(F)
    if b in F:
        raise ValueError(f"{A.name(b)} already lies in the filter")
    if not is_nfilter(A, F):
        raise ValueError("not an n-bar filter")
    for P in prime_filters(A):
        if F <= P and b not in P:
            return P
    raise RuntimeError("no prime filter found")


def has_fip(A: LnAlgebra, S) -> bool:
    acc = A.one
    for a in set(S):
        acc = A.star[acc][a]
    return acc != A.zero


def prime_from_fip(A: LnAlgebra, S) -> frozenset:
    if not has_fip(A, S):
        raise ValueError("set lacks the finite intersection property")
    for P in prime_filters(A):
        if set(S) <= P:
            return P
    raise RuntimeError("no prime filter found")


def hom_from_prime(A: LnAlgebra, P) -> tuple:
    """v_P(a) = r iff T_r(a) ∈ P; values in n-bar."""
    out = []
    for a in range(A.size):
        rs = [rv for rv in A.chain if t_term(A, rv, a) in P]
        if len(rs) != 1:
            raise ValueError(f"prime filter gives {len(rs)} values at {A.name(a)}")
        out.append(rs[0])
    return tuple(out)


def prime_from_hom(A: LnAlgebra, v) -> frozenset:
    return frozenset(a for a in range(A.size) if v[a] == 1)


def bijection_check(A: LnAlgebra) -> Report:
    r = Report("prime filters ↔ homs")
    primes = prime_filters(A)
    homs = homs_to_chain(A)
    C = chain_algebra(A.n)
    image = []
    for P in primes:
        v = hom_from_prime(A, P)
        r.check("v_P is a hom", check_ln_hom(tuple(C.elements.index(x) for x in v), A, C).ok, sorted(P))
        r.check("v_P^{-1}(1) = P", prime_from_hom(A, v) == P, sorted(P))
        image.append(v)
    r.check("injective", len(set(image)) == len(image))
    r.check("onto", set(image) == set(homs), (len(image), len(homs)))
    for v in homs:
        r.check("prime_from_hom prime", is_prime(A, prime_from_hom(A, v)), v)
    return r


# ---- n-bar fuzzy Boolean systems ----------------------------------------------------

class FBSys:
    def __init__(self, points, algebra: LnAlgebra, sat):
        self.points = list(points)
        self.algebra = algebra
        self.sat = [tuple(Fraction(v) for v in row) for row in sat]

    def gr(self, x, a):
        return self.sat[x][a]

    def column(self, a):
        return tuple(row[a] for row in self.sat)

    def to_json(self):
        return {"kind": "fbsys", "n": self.algebra.n, "points": [str(p) for p in self.points],
                "algebra": self.algebra.to_json(), "sat": [[fmt(v) for v in row] for row in self.sat]}


def check_fbsys(D: FBSys) -> Report:
    A = D.algebra
    r = Report(f"FBSys (n={A.n})")
    r.check("nonempty points", len(D.points) > 0)
    for x, row in enumerate(D.sat):
        p = D.points[x]
        for a in range(A.size):
            if row[a] not in A.chain:
                r.fail("values in n-bar", (p, A.name(a)))
            if row[A.neg[a]] != 1 - row[a]:
                r.fail("2 complement", (p, A.name(a)))
            for b in range(A.size):
                if row[A.star[a][b]] != max(ZERO, row[a] + row[b] - 1):
                    r.fail("1 product", (p, A.name(a), A.name(b)))
                if row[A.meet[a][b]] != min(row[a], row[b]):
                    r.fail("meet", (p, A.name(a), A.name(b)))
                if row[A.join[a][b]] != max(row[a], row[b]):
                    r.fail("join", (p, A.name(a), A.name(b)))
        for k, c in enumerate(A.consts):
            r.check("3 constants", row[c] == A.chain.elements[k], (p, fmt(A.chain.elements[k])))
    for law in ("values in n-bar", "1 product", "2 complement", "meet", "join"):
        r.check(law, True)
    rows = {}
    for x, row in enumerate(D.sat):
        if row in rows:
            r.fail("4 separation", (D.points[rows[row]], D.points[x]))
        rows.setdefault(row, x)
    r.check("4 separation", True)
    return r


class BoolMap:
    """(f1, f2): f1 point map D -> E, f2 an Łn^c hom E.algebra -> D.algebra."""

    def __init__(self, f1, f2):
        self.f1 = tuple(f1)
        self.f2 = tuple(f2)

    def __eq__(self, other):
        return isinstance(other, BoolMap) and self.f1 == other.f1 and self.f2 == other.f2

    def __repr__(self):
        return f"BoolMap({self.f1}, {self.f2})"


def compose_bool(g: BoolMap, f: BoolMap) -> BoolMap:
    return BoolMap(tuple(g.f1[i] for i in f.f1), tuple(f.f2[i] for i in g.f2))


def identity_bool(D: FBSys) -> BoolMap:
    return BoolMap(range(len(D.points)), range(D.algebra.size))


def check_fbsys_map(m: BoolMap, D: FBSys, E: FBSys) -> Report:
    r = Report("FBSys map")
    if len(m.f1) != len(D.points) or any(not (0 <= y < len(E.points)) for y in m.f1):
        r.fail("1 function", m.f1)
        return r
    r.extend(check_ln_hom(m.f2, E.algebra, D.algebra), "2 ")
    if not r.ok:
        return r
    for x in range(len(D.points)):
        for b in range(E.algebra.size):
            if D.gr(x, m.f2[b]) != E.gr(m.f1[x], b):
                r.fail("3 transfer", (D.points[x], E.algebra.name(b)))
    r.check("3 transfer", True)
    return r


def check_homeo(m: BoolMap, D: FBSys, E: FBSys) -> Report:
    """m is a map with an inverse map g (g∘m = id_D, m∘g = id_E)."""
    r = Report("homeomorphism")
    r.extend(check_fbsys_map(m, D, E))
    if not r.ok:
        return r
    ok1 = len(m.f1) == len(E.points) and sorted(m.f1) == list(range(len(E.points)))
    ok2 = len(m.f2) == D.algebra.size and sorted(m.f2) == list(range(D.algebra.size))
    r.check("points bijective", ok1, m.f1)
    r.check("algebra map bijective", ok2, m.f2)
    if not (ok1 and ok2):
        return r
    inv1 = [0] * len(m.f1)
    for x, y in enumerate(m.f1):
        inv1[y] = x
    inv2 = [0] * len(m.f2)
    for b, a in enumerate(m.f2):
        inv2[a] = b
    g = BoolMap(inv1, inv2)
    r.extend(check_fbsys_map(g, E, D), "inverse ")
    r.check("g∘f = id", compose_bool(g, m) == identity_bool(D))
    r.check("f∘g = id", compose_bool(m, g) == identity_bool(E))
    return r


# ---- functors ---------------------------------------------------------------------

def ext_B(D: FBSys) -> FuzzyTopSpace:
    carrier = tuple(D.points)
    seen = {}
    for a in range(D.algebra.size):
        seen.setdefault(D.column(a), None)
    return FuzzyTopSpace(carrier, [FuzzySubset(carrier, c) for c in seen], flavor="n-valued",
                         chain=D.algebra.chain)


def cont_algebra(S: FuzzyTopSpace) -> LnAlgebra:
    return algebra_from_vectors(S.chain.n, S.carrier, [T.values for T in cont(S)])


def j_B(S: FuzzyTopSpace) -> FBSys:
    A = cont_algebra(S)
    sat = [[A.vecs[t][x] for t in range(A.size)] for x in range(len(S.carrier))]
    return FBSys(S.carrier, A, sat)


def lag(D: FBSys) -> LnAlgebra:
    return D.algebra


def s_B(A: LnAlgebra) -> FBSys:
    """Points are the homs A -> n-bar, read off the prime filters."""
    homs = [hom_from_prime(A, P) for P in prime_filters(A)]
    return FBSys(homs, A, [list(v) for v in homs])


def is_boolean_space(S: FuzzyTopSpace) -> bool:
    return zero_dimensional(S) and compact(S) and kolmogorov(S)


def counit_B(D: FBSys):
    """(id_X, ext_B*) : J_B(Ext_B(D)) -> D, with ext_B*(a) = ext_B(a) inside Cont."""
    JE = j_B(ext_B(D))
    f2 = []
    for a in range(D.algebra.size):
        try:
            f2.append(JE.algebra.index_of_vec(D.column(a)))
        except ClosureError:
            f2.append(-1)
    return JE, BoolMap(range(len(D.points)), f2)


def unit_B(D: FBSys):
    """(p*, id_A) : D -> S_B(Lag(D)); p* is -1 where p_x is missing."""
    SD = s_B(D.algebra)
    idx = {v: i for i, v in enumerate(SD.points)}
    f1 = [idx.get(tuple(row), -1) for row in D.sat]
    return SD, BoolMap(f1, range(D.algebra.size))


def space_unit_B(S: FuzzyTopSpace):
    """η : (X,τ) -> Ext_B(J_B(X,τ)); identity on points, so an iso iff the opens agree."""
    E = ext_B(j_B(S))
    return E, E.same_opens(S)


def evaluation_system(A: LnAlgebra, X=None) -> FBSys:
    """Points of X act by evaluation on a function algebra; X defaults to A's own points."""
    X = tuple(A.X) if X is None else tuple(X)
    pos = {x: i for i, x in enumerate(A.X)}
    sat = [[A.vecs[a][pos[x]] for a in range(A.size)] for x in X]
    return FBSys(X, A, sat)
