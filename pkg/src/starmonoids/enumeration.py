"""Enumeration, closed-form cardinalities and decompositions.

Members are generated directly from the case splits of each family (no
filtering), in codec order, i.e. lexicographic on the pair list
``x1->y1 x2->y2 ...``.  A second, filtering enumerator runs the
definitional test over all of PT and serves as the independent check.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations
from math import comb, factorial
from typing import Iterator, Optional

from .families import PRIMARY, MonoidFamily
from .membership import is_member_definitional
from .ptransform import (PartialTransformation, _build, identity, inverse, make,
                         zeta_lift)

__all__ = [
    "CapExceededError",
    "FamilyCensus",
    "ENUM_CAP",
    "FILTER_CAP",
    "enumerate_family",
    "enumerate_all",
    "elements",
    "cardinality",
    "census",
    "decompose_paut",
    "decompose_iend",
    "units",
    "r0_size",
    "permutations_fixing_centre",
    "PautDecomposition",
    "IendDecomposition",
]

F = MonoidFamily

ENUM_CAP = 8
FILTER_CAP = 6


class CapExceededError(ValueError):
    """A size or vertex-count limit was exceeded."""


def check_cap(n: int, cap: int, what: str = "enumeration") -> None:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n > cap:
        raise CapExceededError(f"n={n} exceeds the {what} cap of {cap}")


# -- constructive generation ------------------------------------------------

@dataclass(frozen=True)
class _Case:
    zero: Optional[int]      # image of 0, None when 0 is outside the domain
    rest: tuple              # allowed images for points 1..n-1
    injective: bool = False
    nonempty: bool = False   # at least one of 1..n-1 in the domain


def _walk(n: int, case: _Case) -> Iterator[PartialTransformation]:
    img: list = [None] * n
    used: set = set()
    if case.zero is not None:
        img[0] = case.zero
        used.add(case.zero)

    def rec(start: int, size: int):
        if size or not case.nonempty:
            yield _build(n, img)
        for x in range(start, n):
            for y in case.rest:
                if case.injective and y in used:
                    continue
                img[x] = y
                used.add(y)
                yield from rec(x + 1, size + 1)
                used.discard(y)
                img[x] = None

    yield from rec(1, 0)


def _cases(family: MonoidFamily, n: int) -> list:
    every = tuple(range(n))
    omega = tuple(range(1, n))
    zero = (0,)
    if family is F.PwEnd:
        return ([_Case(None, every), _Case(0, every)]
                + [_Case(c, (0, c)) for c in omega])
    if family is F.PEnd:
        return ([_Case(None, every), _Case(0, omega)]
                + [_Case(c, zero) for c in omega])
    if family is F.PsEnd:
        return ([_Case(None, zero, nonempty=True), _Case(None, omega), _Case(0, omega)]
                + [_Case(c, zero) for c in omega])
    if family is F.PswEnd:
        out = [_Case(None, zero, nonempty=True), _Case(None, omega),
               _Case(0, zero), _Case(0, omega, nonempty=True)]
        for c in omega:
            out += [_Case(c, (c,)), _Case(c, zero, nonempty=True)]
        return out
    if family is F.IEnd:
        return ([_Case(None, every, True), _Case(0, every, True)]
                + [_Case(c, zero, True) for c in omega])
    if family is F.PAut:
        return ([_Case(None, zero, True, True), _Case(None, omega, True),
                 _Case(0, every, True)]
                + [_Case(c, zero, True) for c in omega])
    if family is F.PT:
        return [_Case(None, every)] + [_Case(y, every) for y in every]
    if family is F.Isym:
        return [_Case(None, every, True)] + [_Case(y, every, True) for y in every]
    if family is F.TwoPT:
        return [_Case(None, omega), _Case(0, omega)]
    raise AssertionError(family)


def _codec_key(a: PartialTransformation):
    return a.code


def enumerate_family(family, n: int, *, mode: str = "constructive",
                     cap: Optional[int] = None) -> Iterator[PartialTransformation]:
    """Stream the members of ``family`` on S_n once each, in codec order.

    ``mode="filter"`` instead runs :func:`is_member_definitional` over all
    (n+1)^n partial transformations.
    """
    family = F.parse(family)
    if mode == "constructive":
        check_cap(n, ENUM_CAP if cap is None else cap)
        streams = [_walk(n, c) for c in _cases(family, n)]
        return heapq.merge(*streams, key=_codec_key)
    if mode == "filter":
        check_cap(n, FILTER_CAP if cap is None else cap, "filter enumeration")
        return (a for a in enumerate_all(n) if is_member_definitional(family, a))
    raise ValueError(f"unknown enumeration mode {mode!r}")


def enumerate_all(n: int) -> Iterator[PartialTransformation]:
    """Every partial transformation on n points, codec order."""
    img: list = [None] * n

    def rec(start: int):
        yield _build(n, img)
        for x in range(start, n):
            for y in range(n):
                img[x] = y
                yield from rec(x + 1)
            img[x] = None

    return rec(0)


def elements(family, n: int) -> tuple:
    """Materialized, codec-ordered members (cached)."""
    return _elements(F.parse(family), n)


@lru_cache(maxsize=64)
def _elements(family: MonoidFamily, n: int) -> tuple:
    return tuple(enumerate_family(family, n))


# -- closed forms -------------------------------------------------------------

def _sym_inverse(m: int) -> int:
    # |I(X)| for |X| = m
    return sum(comb(m, k) ** 2 * factorial(k) for k in range(m + 1))


def _formula(family: MonoidFamily, n: int) -> int:
    if family is F.PwEnd:
        return 2 * (n + 1) ** (n - 1) + (n - 1) * 3 ** (n - 1)
    if family is F.PEnd:
        return (n + 1) ** (n - 1) + n ** (n - 1) + (n - 1) * 2 ** (n - 1)
    if family is F.PsEnd:
        return 2 * n ** (n - 1) + n * 2 ** (n - 1) - 1
    if family is F.PswEnd:
        return 2 * n ** (n - 1) + n * 2 ** n - n - 1
    if family is F.PAut:
        return 1 + n * n + 2 * sum(comb(n - 1, k) ** 2 * factorial(k)
                                   for k in range(1, n))
    if family is F.IEnd:
        return 3 + 3 * n * n - 4 * n + sum(
            (comb(n, k) + comb(n - 1, k)) * comb(n - 1, k) * factorial(k)
            for k in range(2, n))
    if family is F.PT:
        return (n + 1) ** n
    if family is F.Isym:
        return _sym_inverse(n)
    if family is F.TwoPT:
        return 2 * n ** (n - 1)
    raise AssertionError(family)


def cardinality(family, n: int) -> int:
    """Exact size of ``family`` on S_n from its closed formula."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return _formula(F.parse(family), n)


@dataclass(frozen=True)
class FamilyCensus:
    family: MonoidFamily
    n: int
    enumerated_count: int
    formula_count: int
    filter_count: Optional[int] = None

    @property
    def match(self) -> bool:
        ok = self.enumerated_count == self.formula_count
        if self.filter_count is not None:
            ok = ok and self.filter_count == self.formula_count
        return ok

    def as_row(self) -> dict:
        return {"family": self.family.value, "n": self.n,
                "formula_count": self.formula_count,
                "enumerated_count": self.enumerated_count,
                "filter_count": self.filter_count,
                "match": self.match}


def census(family, n: int, *, with_filter: Optional[bool] = None) -> FamilyCensus:
    """Compare constructive count, formula and (for n <= 6) filtered count."""
    family = F.parse(family)
    if with_filter is None:
        with_filter = n <= FILTER_CAP
    count = sum(1 for _ in enumerate_family(family, n))
    filt = sum(1 for _ in enumerate_family(family, n, mode="filter")) if with_filter else None
    return FamilyCensus(family, n, count, cardinality(family, n), filt)


# -- decompositions -----------------------------------------------------------

def _injections(n: int, points, values) -> list:
    out = []
    for k in range(len(points) + 1):
        for dom in combinations(points, k):
            for vals in permutations(values, k):
                out.append(make(n, zip(dom, vals)))
    return out


@dataclass(frozen=True)
class PautDecomposition:
    inner: frozenset        # I(1..n-1)
    lifted: frozenset       # its lift fixing 0
    swaps: frozenset        # J_{2,0}: 0 -> j, i -> 0
    singles: frozenset      # J_{1,0}: 0 -> i or i -> 0

    @property
    def parts(self) -> tuple:
        return (self.inner, self.lifted, self.swaps, self.singles)

    def sizes(self) -> tuple:
        return tuple(len(p) for p in self.parts)

    def union(self) -> frozenset:
        return frozenset().union(*self.parts)

    def disjoint(self) -> bool:
        return sum(self.sizes()) == len(self.union())


def decompose_paut(n: int, cap: int = ENUM_CAP) -> PautDecomposition:
    """PAut(S_n) as I(W) + I(W) lifted + J_{2,0} + J_{1,0}, W = {1..n-1}."""
    check_cap(n, cap)
    omega = range(1, n)
    inner = _injections(n, omega, omega)
    return PautDecomposition(
        inner=frozenset(inner),
        lifted=frozenset(zeta_lift(a) for a in inner),
        swaps=frozenset(make(n, [(0, j), (i, 0)]) for i in omega for j in omega),
        singles=frozenset([make(n, [(0, i)]) for i in omega]
                          + [make(n, [(i, 0)]) for i in omega]),
    )


@dataclass(frozen=True)
class IendDecomposition:
    paut: frozenset
    r0: frozenset   # 0 not in dom, 0 in image, rank >= 2

    def disjoint(self) -> bool:
        return not (self.paut & self.r0)

    def union(self) -> frozenset:
        return self.paut | self.r0


def decompose_iend(n: int, cap: int = ENUM_CAP) -> IendDecomposition:
    check_cap(n, cap)
    omega = range(1, n)
    r0 = [a for a in _injections(n, omega, range(n))
          if 0 in a.image and a.rank >= 2]
    return IendDecomposition(decompose_paut(n, cap).union(), frozenset(r0))


def r0_size(n: int) -> int:
    return sum(comb(n - 1, k) * comb(n - 1, k - 1) * factorial(k) for k in range(2, n))


def units(family, n: int, cap: int = ENUM_CAP) -> frozenset:
    """Group of units of ``family`` on S_n.

    Only a total bijection has a two-sided inverse in PT, and that inverse is
    unique, so a is a unit iff it is a permutation whose inverse is also in
    the family.
    """
    check_cap(n, cap)
    members = frozenset(elements(family, n))
    full = (1 << n) - 1
    return frozenset(a for a in members
                     if a.dom == full and a.is_injective and inverse(a) in members)


def permutations_fixing_centre(n: int) -> frozenset:
    return frozenset(make(n, [(0, 0)] + list(zip(range(1, n), p)))
                     for p in permutations(range(1, n)))


def primary_census(ns) -> list:
    return [census(f, n) for f in PRIMARY for n in ns]


def contains_identity(family, n: int) -> bool:
    return identity(n) in set(elements(family, n))
