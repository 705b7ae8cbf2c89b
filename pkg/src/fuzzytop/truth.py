"""Exact truth values in [0,1] and the finite chains n-bar."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable

ZERO = Fraction(0)
ONE = Fraction(1)


class InvalidTruthValue(ValueError):
    pass


class InvalidChain(ValueError):
    pass


def tv(x) -> Fraction:
    """Coerce x to an exact rational in [0,1].

    Accepts Fraction, int, "p/q" strings and decimal strings.  Floats are
    refused so that nothing inexact leaks into the core.
    """
    if isinstance(x, bool):
        x = int(x)
    if isinstance(x, float):
        raise InvalidTruthValue(f"float {x!r} not accepted; use 'p/q' or a decimal string")
    if isinstance(x, str):
        s = x.strip()
        if not s:
            raise InvalidTruthValue("empty truth value")
        try:
            v = Fraction(s)
        except (ValueError, ZeroDivisionError) as e:
            raise InvalidTruthValue(f"cannot parse truth value {x!r}") from e
    else:
        try:
            v = Fraction(x)
        except TypeError as e:
            raise InvalidTruthValue(f"cannot convert {x!r}") from e
    if v < 0 or v > 1:
        raise InvalidTruthValue(f"{v} is outside [0,1]")
    return v


def fmt(v: Fraction) -> str:
    v = Fraction(v)
    if v.denominator == 1:
        return str(v.numerator)
    return f"{v.numerator}/{v.denominator}"


def godel_arrow(a, b) -> Fraction:
    return ONE if a <= b else Fraction(b)


def inf_family(xs: Iterable) -> Fraction:
    return min(xs, default=ONE)


def sup_family(xs: Iterable) -> Fraction:
    return max(xs, default=ZERO)


class ValueChain:
    """A finite subchain of [0,1] containing 0 and 1.

    make_chain(n) gives the evenly spaced n-bar; from_values gives the chain
    generated by a set of occurring values.
    """

    def __init__(self, values: Iterable):
        vals = sorted({tv(v) for v in values} | {ZERO, ONE})
        self.elements = tuple(vals)
        self._pos = {v: i for i, v in enumerate(self.elements)}

    @classmethod
    def from_values(cls, values: Iterable) -> "ValueChain":
        return cls(values)

    @property
    def n(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, v) -> bool:
        try:
            return Fraction(v) in self._pos
        except (TypeError, ValueError):
            return False

    def index(self, v) -> int:
        return self._pos[Fraction(v)]

    def is_uniform(self) -> bool:
        k = self.n - 1
        return all(e == Fraction(i, k) for i, e in enumerate(self.elements))

    def __eq__(self, other):
        return isinstance(other, ValueChain) and self.elements == other.elements

    def __hash__(self):
        return hash(self.elements)

    def __repr__(self):
        return "ValueChain(" + ", ".join(fmt(e) for e in self.elements) + ")"


def make_chain(n: int) -> ValueChain:
    if not isinstance(n, int) or n < 2:
        raise InvalidChain(f"chain needs n >= 2, got {n!r}")
    return ValueChain(Fraction(k, n - 1) for k in range(n))
