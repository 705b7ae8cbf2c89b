"""Fuzzy topological spaces on finite carriers and the n-valued predicates."""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product
from typing import Mapping

from .fuzzyset import (FuzzySubset, constant, empty, full, graded_inclusion, intersection,
                       preimage, union)
from .lattice import FiniteFrame, GradedFrame, StructuralError, check_graded_frame
from .report import Report
from .truth import ONE, ZERO, ValueChain, make_chain

FLAVORS = ("plain", "stratified", "n-valued", "graded")
CONT_BUDGET = 10 ** 6


class FlavorMismatch(ValueError):
    pass


class OutOfBudget(RuntimeError):
    pass


class FuzzyTopSpace:
    """Carrier, a finite list of opens, a flavor and an optional value chain.

    ``top`` is the largest open; it is X̃ (constant 1) for ordinary spaces
    and the underlying fuzzy set Ã for spaces over a fuzzy set.
    """

    def __init__(self, carrier, opens, flavor="plain", chain: ValueChain | None = None, top=None):
        if flavor not in FLAVORS:
            raise ValueError(f"unknown flavor {flavor!r}")
        self.carrier = tuple(carrier)
        seen = {}
        for T in opens:
            if T.carrier != self.carrier:
                raise ValueError("open on a different carrier")
            seen.setdefault(T, None)
        self.opens = list(seen)
        self.flavor = flavor
        self.chain = chain
        self.top = top if top is not None else full(self.carrier)
        self._index = {T: i for i, T in enumerate(self.opens)}

    def index(self, T) -> int:
        return self._index[T]

    def __contains__(self, T):
        return T in self._index

    def __len__(self):
        return len(self.opens)

    def same_opens(self, other) -> bool:
        return self.carrier == other.carrier and set(self.opens) == set(other.opens)

    def to_json(self):
        from .truth import fmt
        d = {"kind": "space", "carrier": [str(x) for x in self.carrier], "flavor": self.flavor,
             "opens": [[fmt(v) for v in T.values] for T in self.opens]}
        if self.chain is not None:
            d["chain"] = [fmt(v) for v in self.chain]
        if self.top != full(self.carrier):
            d["top"] = [fmt(v) for v in self.top.values]
        return d


def check_space(S: FuzzyTopSpace) -> Report:
    r = Report(f"{S.flavor} space")
    bottom = empty(S.carrier)
    r.check("contains empty", bottom in S, None)
    r.check("contains top", S.top in S, S.top)
    for T in S.opens:
        r.check("bounded by top", T <= S.top, T)
    ops = S.opens
    for i in range(len(ops)):
        for j in range(i + 1, len(ops)):
            a, b = ops[i], ops[j]
            if intersection(a, b) not in S:
                r.fail("closed under intersection", (a, b))
            if union([a, b]) not in S:
                r.fail("closed under union", (a, b))
    r.check("closed under intersection", True)
    r.check("closed under union", True)
    if S.chain is not None:
        for T in S.opens:
            r.check("values in chain", all(v in S.chain for v in T.values), T)
    if S.flavor == "n-valued":
        if S.chain is None or not S.chain.is_uniform():
            r.fail("declared n-bar", S.chain)
    if S.flavor == "stratified":
        if S.chain is None:
            r.fail("declared chain", None)
        else:
            for v in S.chain:
                r.check("constants open", constant(S.carrier, v) in S, v)
    if S.flavor == "graded" and r.ok:
        r.extend(check_graded_frame(graded_frame_of(S)), "graded ")
    return r


def topology_frame(S: FuzzyTopSpace) -> FiniteFrame:
    """τ as a frame: order by pointwise ≤, meet ∩, join ∪."""
    ops = S.opens
    n = len(ops)
    le = [[a <= b for b in ops] for a in ops]
    try:
        meet = [[S.index(intersection(a, b)) for b in ops] for a in ops]
        join = [[S.index(union([a, b])) for b in ops] for a in ops]
    except KeyError as e:
        raise StructuralError("opens are not closed under ∩/∪") from e
    F = FiniteFrame(list(range(n)), le, meet, join)
    F.opens = ops
    return F


def graded_frame_of(S: FuzzyTopSpace) -> GradedFrame:
    F = topology_frame(S)
    R = [[graded_inclusion(a, b) for b in S.opens] for a in S.opens]
    return GradedFrame(F, R)


def generate_topology(subbasis, carrier, top=None, flavor="plain", chain=None) -> FuzzyTopSpace:
    carrier = tuple(carrier)
    top = top if top is not None else full(carrier)
    found = {empty(carrier): None, top: None}
    for T in subbasis:
        found.setdefault(T, None)
    frontier = list(found)
    while frontier:
        new = []
        current = list(found)
        for a in frontier:
            for b in current:
                for c in (intersection(a, b), union([a, b])):
                    if c not in found:
                        found[c] = None
                        new.append(c)
        frontier = new
    opens = sorted(found, key=lambda T: (sum(T.values), T.values))
    return FuzzyTopSpace(carrier, opens, flavor=flavor, chain=chain, top=top)


def check_fuzzy_continuous(f: Mapping, S1: FuzzyTopSpace, S2: FuzzyTopSpace) -> Report:
    r = Report("fuzzy continuity")
    for x in S1.carrier:
        if f.get(x) not in S2.carrier:
            r.fail("total", x)
            return r
    for B in S2.opens:
        P = preimage(f, B, S1.carrier)
        r.check("preimage open", P in S1, B)
    return r


# ---- n-valued predicates ---------------------------------------------------

def _nbar(S) -> ValueChain:
    if S.chain is None or not S.chain.is_uniform():
        raise FlavorMismatch("predicate needs an n-valued space with declared n-bar")
    return S.chain


def kolmogorov(S: FuzzyTopSpace) -> bool:
    _nbar(S)
    for i, j in combinations(range(len(S.carrier)), 2):
        if not any(T.values[i] != T.values[j] for T in S.opens):
            return False
    return True


def hausdorff(S: FuzzyTopSpace) -> bool:
    """Separating opens A1, A2 with A1(x1) ≥ r, A2(x2) ≥ r and sup(A1 ∧ A2) < r."""
    chain = _nbar(S)
    for i, j in combinations(range(len(S.carrier)), 2):
        ok = False
        for r in chain:
            for A1 in S.opens:
                if A1.values[i] < r:
                    continue
                for A2 in S.opens:
                    if A2.values[j] >= r and max(min(a, b) for a, b in zip(A1.values, A2.values)) < r:
                        ok = True
                        break
                if ok:
                    break
            if ok:
                break
        if not ok:
            return False
    return True


def find_subcover(S: FuzzyTopSpace, family=None):
    """Smallest subfamily of ``family`` (default τ) whose union is 1, or None."""
    family = list(S.opens if family is None else family)
    one = full(S.carrier)
    if union(family, S.carrier) != one:
        return None
    for k in range(len(family) + 1):
        for sub in combinations(family, k):
            if union(sub, S.carrier) == one:
                return list(sub)
    return None


def compact(S: FuzzyTopSpace) -> bool:
    """Every cover of 1 by opens has a finite subcover.

    With τ finite every family of opens is itself finite, so any cover is its
    own finite subcover; the search below confirms a subcover exists whenever
    the opens cover 1 at all.
    """
    _nbar(S)
    one = full(S.carrier)
    if union(S.opens, S.carrier) != one:
        return True
    return find_subcover(S) is not None


def _is_continuous_map(t, S, chain):
    """t is continuous into discrete n-bar iff every block map s·[t=r] is open.

    Any Ã∘t is the finite union over r of those blocks, and each block is
    itself Ã∘t for Ã = s at r and 0 elsewhere.
    """
    for r in chain:
        for s in chain:
            if s == 0:
                continue
            blk = FuzzySubset(S.carrier, [s if v == r else ZERO for v in t])
            if blk not in S:
                return False
    return True


def cont(S: FuzzyTopSpace):
    """All continuous maps X -> n-bar, as fuzzy subsets, in lexicographic order."""
    chain = _nbar(S)
    n, m = chain.n, len(S.carrier)
    if n ** m > CONT_BUDGET:
        raise OutOfBudget(f"{n}^{m} candidate maps exceed the budget {CONT_BUDGET}")
    out = []
    for t in product(chain.elements, repeat=m):
        if _is_continuous_map(t, S, chain):
            out.append(FuzzySubset(S.carrier, t))
    return out


def cont_bruteforce(S: FuzzyTopSpace):
    """Reference version: tests Ã∘t ∈ τ for every Ã in n-bar^n-bar."""
    chain = _nbar(S)
    n, m = chain.n, len(S.carrier)
    if n ** m > CONT_BUDGET:
        raise OutOfBudget("budget exceeded")
    els = chain.elements
    out = []
    for t in product(els, repeat=m):
        ok = True
        for table in product(els, repeat=n):
            g = dict(zip(els, table))
            if FuzzySubset(S.carrier, [g[v] for v in t]) not in S:
                ok = False
                break
        if ok:
            out.append(FuzzySubset(S.carrier, t))
    return out


def zero_dimensional(S: FuzzyTopSpace) -> bool:
    B = cont(S)
    bset = set(B)
    if not all(T in S for T in B):
        return False
    if full(S.carrier) not in bset:
        return False
    for a, b in combinations(B, 2):
        if intersection(a, b) not in bset:
            return False
    for T in S.opens:
        below = [b for b in B if b <= T]
        if union(below, S.carrier) != T:
            return False
    return True


def is_boolean_space(S: FuzzyTopSpace) -> bool:
    return zero_dimensional(S) and compact(S) and kolmogorov(S)


def discrete_space(carrier, n: int) -> FuzzyTopSpace:
    chain = make_chain(n)
    opens = [FuzzySubset(carrier, t) for t in product(chain.elements, repeat=len(tuple(carrier)))]
    return FuzzyTopSpace(carrier, opens, flavor="n-valued", chain=chain)
