"""Fuzzy subsets of finite carriers."""
from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from .truth import ONE, ZERO, ValueChain, fmt, godel_arrow, inf_family, sup_family, tv


class CarrierMismatch(ValueError):
    pass


class FuzzySubset:
    """Total membership map from a finite carrier into [0,1]."""

    __slots__ = ("carrier", "values", "_pos")

    def __init__(self, carrier: Sequence, membership):
        self.carrier = tuple(carrier)
        if isinstance(membership, Mapping):
            missing = [x for x in self.carrier if x not in membership]
            if missing:
                raise ValueError(f"membership undefined at {missing}")
            vals = [tv(membership[x]) for x in self.carrier]
        else:
            vals = [tv(v) for v in membership]
            if len(vals) != len(self.carrier):
                raise ValueError("membership length differs from carrier")
        self.values = tuple(vals)
        self._pos = None

    def __call__(self, x) -> Fraction:
        if self._pos is None:
            self._pos = {p: i for i, p in enumerate(self.carrier)}
        return self.values[self._pos[x]]

    def items(self):
        return zip(self.carrier, self.values)

    def support(self):
        return [x for x, v in self.items() if v > 0]

    def __eq__(self, other):
        return isinstance(other, FuzzySubset) and self.carrier == other.carrier and self.values == other.values

    def __hash__(self):
        return hash((self.carrier, self.values))

    def __le__(self, other):
        _same(self, other)
        return all(a <= b for a, b in zip(self.values, other.values))

    def __repr__(self):
        body = ", ".join(f"{x}:{fmt(v)}" for x, v in self.items())
        return "{" + body + "}"

    def to_json(self):
        return {"carrier": [str(x) for x in self.carrier],
                "membership": {str(x): fmt(v) for x, v in self.items()}}


class LFuzzySet(FuzzySubset):
    """Fuzzy subset whose values lie in a declared value chain L."""

    __slots__ = ("chain",)

    def __init__(self, carrier, membership, chain: ValueChain):
        super().__init__(carrier, membership)
        self.chain = chain
        bad = [x for x, v in self.items() if v not in chain]
        if bad:
            raise ValueError(f"membership outside the value chain at {bad}")


def _same(*Ts):
    c = Ts[0].carrier
    for T in Ts[1:]:
        if T.carrier != c:
            raise CarrierMismatch("fuzzy subsets live on different carriers")
    return c


def constant(carrier, r) -> FuzzySubset:
    r = tv(r)
    return FuzzySubset(carrier, [r] * len(tuple(carrier)))


def empty(carrier) -> FuzzySubset:
    return constant(carrier, ZERO)


def full(carrier) -> FuzzySubset:
    return constant(carrier, ONE)


def union(Ts, carrier=None) -> FuzzySubset:
    Ts = list(Ts)
    if not Ts:
        if carrier is None:
            raise ValueError("union of an empty family needs the carrier")
        return empty(carrier)
    c = _same(*Ts)
    if carrier is not None and tuple(carrier) != c:
        raise CarrierMismatch("declared carrier differs")
    return FuzzySubset(c, [sup_family(vs) for vs in zip(*(T.values for T in Ts))])


def intersection(T1: FuzzySubset, T2: FuzzySubset) -> FuzzySubset:
    c = _same(T1, T2)
    return FuzzySubset(c, [min(a, b) for a, b in zip(T1.values, T2.values)])


def intersection_all(Ts, carrier=None) -> FuzzySubset:
    Ts = list(Ts)
    if not Ts:
        return full(carrier)
    c = _same(*Ts)
    return FuzzySubset(c, [inf_family(vs) for vs in zip(*(T.values for T in Ts))])


def graded_inclusion(T1: FuzzySubset, T2: FuzzySubset) -> Fraction:
    _same(T1, T2)
    return inf_family(godel_arrow(a, b) for a, b in zip(T1.values, T2.values))


def alpha_cut(A: FuzzySubset, alpha) -> frozenset:
    alpha = tv(alpha)
    return frozenset(x for x, v in A.items() if v >= alpha)


def strict_alpha_cut(A: FuzzySubset, alpha) -> frozenset:
    alpha = tv(alpha)
    return frozenset(x for x, v in A.items() if v > alpha)


def fuzzy_alpha_cut(A: FuzzySubset, alpha) -> FuzzySubset:
    alpha = tv(alpha)
    vals = [v if v >= alpha else ZERO for v in A.values]
    if isinstance(A, LFuzzySet):
        return LFuzzySet(A.carrier, vals, A.chain)
    return FuzzySubset(A.carrier, vals)


def preimage(f: Mapping, B: FuzzySubset, carrier) -> FuzzySubset:
    """f^{-1}(B)(x) = B(f(x)); f maps every point of ``carrier`` into B's carrier."""
    return FuzzySubset(carrier, [B(f[x]) for x in carrier])


def image(f: Mapping, A: FuzzySubset, target) -> FuzzySubset:
    """Direct image: sup of A over each fibre, 0 on empty fibres."""
    target = tuple(target)
    vals = {y: ZERO for y in target}
    for x, v in A.items():
        y = f[x]
        if y not in vals:
            raise ValueError(f"{x} maps outside the target carrier")
        if v > vals[y]:
            vals[y] = v
    return FuzzySubset(target, vals)


def proper_preimage(f, B1: FuzzySubset) -> FuzzySubset:
    """sup over b in |B| of min(f(a,b), B1(b)) on |A|, zero off the support.

    ``f`` is a proper function (see varbasis.ProperFunction).
    """
    if hasattr(f, "check"):
        rep = f.check()
        if not rep.ok:
            raise ValueError("not a proper function: " + ", ".join(rep.failed_laws()))
    A, B = f.source, f.target
    _same(B, B1)
    supp_b = B.support()
    vals = []
    for a, av in A.items():
        if av > 0:
            vals.append(sup_family(min(f.rel(a, b), B1(b)) for b in supp_b))
        else:
            vals.append(ZERO)
    return FuzzySubset(A.carrier, vals)
