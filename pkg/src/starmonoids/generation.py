"""Monoid closure, named generating sets and exhaustive rank search.

Closures always contain the identity, so a "generating set" generates the
monoid and the identity is free.  Rank search enumerates every k-subset of
the family's elements and closes it over the right Cayley table.
"""
from __future__ import annotations

import time
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields
from itertools import combinations
from math import comb
from typing import Optional, Sequence

import numpy as np

from ._tables import table_for
from .enumeration import CapExceededError, cardinality, elements
from .families import MonoidFamily
from .membership import is_member
from .ptransform import PartialTransformation, compose, identity, make, zeta_lift

__all__ = [
    "GeneratorCatalog",
    "catalog",
    "ClosureResult",
    "ClosureLimitError",
    "closure",
    "named_generating_set",
    "GeneratorCheck",
    "verify_generators",
    "RankSearchResult",
    "rank_search",
    "rank_certificate",
    "KNOWN_RANKS",
    "ideal_observation",
]

F = MonoidFamily

CLOSURE_LIMIT = 1_000_000
CLOSURE_N_RANGE = (3, 5)


@dataclass(frozen=True)
class GeneratorCatalog:
    n: int
    a: PartialTransformation
    b: PartialTransformation
    e: PartialTransformation
    f: PartialTransformation
    a0: PartialTransformation
    b0: PartialTransformation
    e0: PartialTransformation
    f0: PartialTransformation
    c: PartialTransformation
    c0: PartialTransformation
    d: PartialTransformation
    z: PartialTransformation
    z0: PartialTransformation
    e1: PartialTransformation
    z1: PartialTransformation

    def __getitem__(self, name: str) -> PartialTransformation:
        return getattr(self, name)

    def names(self) -> list:
        return [f.name for f in fields(self) if f.name != "n"]


def catalog(n: int) -> GeneratorCatalog:
    """The named maps on S_n (n >= 3); centre 0, leaves 1..n-1."""
    if n < 3:
        raise ValueError(f"named generators need n >= 3, got {n}")
    leaves = range(1, n)
    a = make(n, [(1, 2), (2, 1)] + [(i, i) for i in range(3, n)])
    b = make(n, [(i, i % (n - 1) + 1) for i in leaves])
    e = make(n, [(1, 1), (2, 1)] + [(i, i) for i in range(3, n)])
    f = make(n, [(i, i) for i in range(2, n)])
    c = make(n, [(1, 0)] + [(i, i) for i in range(2, n)])
    d = make(n, [(i, i) for i in leaves])
    z = make(n, [(0, 1)] + [(i, 0) for i in leaves])
    return GeneratorCatalog(
        n=n, a=a, b=b, e=e, f=f,
        a0=zeta_lift(a), b0=zeta_lift(b), e0=zeta_lift(e), f0=zeta_lift(f),
        c=c, c0=zeta_lift(c), d=d, z=z, z0=zeta_lift(z),
        e1=make(n, [(i, i) for i in range(n - 1)]),
        z1=make(n, [(0, 1), (1, 0)]),
    )


# -- closure ------------------------------------------------------------------

class ClosureLimitError(CapExceededError):
    def __init__(self, limit: int, partial: int):
        super().__init__(f"closure exceeded {limit} elements (reached {partial})")
        self.limit = limit
        self.partial = partial


@dataclass
class ClosureResult:
    elements: frozenset
    products: int
    depth: int
    seconds: float

    @property
    def size(self) -> int:
        return len(self.elements)


def closure(n: int, generators: Sequence[PartialTransformation],
            limit: int = CLOSURE_LIMIT, *,
            unit: Optional[PartialTransformation] = None) -> ClosureResult:
    """Submonoid generated by ``generators``: breadth-first over the right Cayley graph.

    ``unit`` is the identity the monoid is built on, by default the identity
    of all n points.  Pass the partial identity on 1..n-1 to close a set of
    maps that never touch the centre inside PT(1..n-1).
    """
    t0 = time.perf_counter()
    gens = list(generators)
    one = identity(n) if unit is None else unit
    for g in gens + [one]:
        if g.n != n:
            raise ValueError(f"generator {g} is not on {n} points")
    seen = {one: 0}
    queue = deque([one])
    products = 0
    while queue:
        x = queue.popleft()
        dx = seen[x] + 1
        for g in gens:
            y = compose(x, g)
            products += 1
            if y not in seen:
                seen[y] = dx
                if len(seen) > limit:
                    raise ClosureLimitError(limit, len(seen))
                queue.append(y)
    return ClosureResult(frozenset(seen), products, max(seen.values()),
                         time.perf_counter() - t0)


# -- named sets -------------------------------------------------------------------

_NAMED = {
    F.PsEnd: ("a0", "b0", "e0", "f0", "d", "z"),
    F.PswEnd: ("a0", "b0", "e0", "f0", "d", "z", "z0"),
    F.PEnd: ("a0", "b0", "e0", "f0", "c", "d", "z"),
    F.PwEnd: ("a0", "b0", "e0", "f0", "c0", "d", "z"),
    F.PAut: ("a0", "b0", "e1", "d", "z1"),
    F.IEnd: ("a0", "b0", "e1", "c", "d", "z1"),
    F.TwoPT: ("a0", "b0", "e0", "f0", "d"),
}

# b0 and e0 are redundant on S_3
_NAMED_3 = {
    F.PsEnd: ("a0", "f0", "d", "z"),
    F.PswEnd: ("a0", "f0", "d", "z", "z0"),
    F.PEnd: ("a0", "f0", "d", "z", "c"),
    F.PwEnd: ("a0", "f0", "d", "z", "c0"),
    F.PAut: ("a0", "d", "z1"),
    F.IEnd: ("a0", "d", "c", "z1"),
}

KNOWN_RANKS = {
    3: {F.PsEnd: 4, F.PswEnd: 5, F.PEnd: 5, F.PwEnd: 5, F.PAut: 3, F.IEnd: 4},
    "n>=4": {F.PsEnd: 6, F.PswEnd: 7, F.PEnd: 7, F.PwEnd: 7, F.PAut: 5, F.IEnd: 6},
}


def known_rank(family, n: int) -> Optional[int]:
    family = F.parse(family)
    if n < 3:
        return None
    return KNOWN_RANKS[3 if n == 3 else "n>=4"].get(family)


def generator_names(family, n: int) -> tuple:
    family = F.parse(family)
    if n < 3:
        raise ValueError("named generating sets are defined for n >= 3")
    table = _NAMED_3 if n == 3 and family in _NAMED_3 else _NAMED
    if family not in table:
        raise ValueError(f"no named generating set for {family.value}")
    return table[family]


def named_generating_set(family, n: int) -> list:
    cat = catalog(n)
    return [cat[name] for name in generator_names(family, n)]


@dataclass
class GeneratorCheck:
    family: MonoidFamily
    n: int
    names: tuple
    generators_in_family: bool
    closure_size: int
    formula_size: int
    closure_in_family: bool

    @property
    def ok(self) -> bool:
        return (self.generators_in_family and self.closure_in_family
                and self.closure_size == self.formula_size)

    def __bool__(self) -> bool:
        return self.ok

    def as_row(self) -> dict:
        return {"family": self.family.value, "n": self.n,
                "generators": list(self.names), "closure_size": self.closure_size,
                "formula_size": self.formula_size,
                "generators_in_family": self.generators_in_family,
                "closure_in_family": self.closure_in_family, "match": self.ok}


def verify_generators(family, n: int, n_range: tuple = CLOSURE_N_RANGE,
                      limit: int = CLOSURE_LIMIT) -> GeneratorCheck:
    """Close the named set and compare with the family (truthy when it matches)."""
    family = F.parse(family)
    lo, hi = n_range
    if not lo <= n <= hi:
        raise CapExceededError(f"n={n} outside the closure range {lo}..{hi}")
    gens = named_generating_set(family, n)
    res = closure(n, gens, limit)
    return GeneratorCheck(
        family=family, n=n, names=generator_names(family, n),
        generators_in_family=all(is_member(family, g) for g in gens),
        closure_size=res.size, formula_size=cardinality(family, n),
        closure_in_family=all(is_member(family, x) for x in res.elements))


# -- exhaustive rank search ----------------------------------------------------------

@dataclass
class RankSearchResult:
    family: MonoidFamily
    n: int
    k: int
    witness: Optional[tuple]
    examined: int
    pruned: int
    space: int
    seconds: float = 0.0

    @property
    def found(self) -> bool:
        return self.witness is not None


class _Searcher:
    """Closure over a Cayley table, reused by every subset of one search."""

    def __init__(self, family: MonoidFamily, n: int, prune: bool):
        t = table_for(family, n)
        self.members = t.members
        self.m = t.size
        self.table = t.cayley()
        self.one = t.index[identity(n)]
        self.prune = prune
        full = (1 << n) - 1
        self.units = frozenset(i for i, a in enumerate(self.members)
                               if a.dom == full and a.is_injective
                               and self.table[i].count(self.one) > 0)
        self._unit_cache: dict = {}

    def closure_size(self, gens) -> int:
        table = self.table
        seen = bytearray(self.m)
        seen[self.one] = 1
        stack = [self.one]
        count = 1
        while stack:
            row = table[stack.pop()]
            for g in gens:
                y = row[g]
                if not seen[y]:
                    seen[y] = 1
                    count += 1
                    stack.append(y)
        return count

    def units_ok(self, gens) -> bool:
        # a factorization of a unit only uses units (finite monoid), so the
        # units among the generators must already generate the unit group
        key = tuple(g for g in gens if g in self.units)
        ok = self._unit_cache.get(key)
        if ok is None:
            ok = self._unit_cache[key] = self.closure_size(key) == len(self.units)
        return ok

    def chunk(self, first: int, k: int) -> tuple:
        """Search subsets with minimum element ``first``; stop at the first witness."""
        examined = pruned = 0
        for rest in combinations(range(first + 1, self.m), k - 1):
            gens = (first,) + rest
            if self.prune and not self.units_ok(gens):
                pruned += 1
                continue
            examined += 1
            if self.closure_size(gens) == self.m:
                return gens, examined, pruned
        return None, examined, pruned


_worker: Optional[_Searcher] = None


def _init_worker(family, n, prune):
    global _worker
    _worker = _Searcher(family, n, prune)


def _run_chunk(args):
    return _worker.chunk(*args)


SEARCH_LIMIT = 5_000_000


def rank_search(family, n: int, k: int, *, prune: bool = True, jobs: int = 1,
                exhaustive_max_n: int = 3, max_subsets: int = SEARCH_LIMIT) -> RankSearchResult:
    """Look for a k-subset of the family that generates it.

    Subsets are visited in lexicographic order of codec rank, so the witness
    (if any) is the first one in that order whatever ``jobs`` is.  With
    ``prune`` on, subsets whose units cannot generate the group of units are
    skipped without computing a closure.
    """
    family = F.parse(family)
    if k < 1:
        raise ValueError("k must be >= 1")
    t0 = time.perf_counter()
    m = len(elements(family, n))
    space = comb(m, k)
    if n > exhaustive_max_n and space > max_subsets:
        raise CapExceededError(f"C({m},{k}) = {space} subsets exceeds the limit {max_subsets}")
    chunks = [(i, k) for i in range(m - k + 1)]
    examined = pruned = 0
    witness = None
    if jobs <= 1:
        s = _Searcher(family, n, prune)
        for args in chunks:
            w, e, p = s.chunk(*args)
            examined += e
            pruned += p
            if w is not None:
                witness = w
                break
        members = s.members
    else:
        with ProcessPoolExecutor(jobs, initializer=_init_worker,
                                 initargs=(family, n, prune)) as pool:
            futures = [pool.submit(_run_chunk, args) for args in chunks]
            for fut in futures:
                w, e, p = fut.result()
                examined += e
                pruned += p
                if w is not None:
                    witness = w
                    for rest in futures:
                        rest.cancel()
                    break
        members = elements(family, n)
    return RankSearchResult(
        family, n, k,
        None if witness is None else tuple(members[i] for i in witness),
        examined, pruned, space, time.perf_counter() - t0)


def rank_certificate(family, n: int, *, claimed: Optional[int] = None, prune: bool = True,
                     jobs: int = 1, exhaustive_max_n: int = 3,
                     max_subsets: int = SEARCH_LIMIT) -> dict:
    """Certify rank = claimed: no (claimed-1)-subset generates, some claimed-subset does."""
    family = F.parse(family)
    if claimed is None:
        claimed = known_rank(family, n)
        if claimed is None:
            raise ValueError(f"no reference rank for {family.value} at n={n}; pass claimed")
    t0 = time.perf_counter()
    kw = dict(prune=prune, jobs=jobs, exhaustive_max_n=exhaustive_max_n,
              max_subsets=max_subsets)
    below = rank_search(family, n, claimed - 1, **kw) if claimed > 1 else None
    at = rank_search(family, n, claimed, **kw)
    certified = at.found and (below is None or not below.found)
    return {
        "family": family.value,
        "n": n,
        "claimed_rank": claimed,
        "monoid_size": len(elements(family, n)),
        "certified": certified,
        "lower_bound": {
            "k": claimed - 1,
            "subsets": below.space if below else 0,
            "examined": below.examined if below else 0,
            "pruned": below.pruned if below else 0,
            "witness": None if below is None or below.witness is None
            else [a.code for a in below.witness],
        },
        "upper_bound": {
            "k": claimed,
            "subsets": at.space,
            "examined": at.examined,
            "pruned": at.pruned,
            "witness": None if at.witness is None else [a.code for a in at.witness],
        },
        "pruning": "units" if prune else "none",
        "runtime_s": round(time.perf_counter() - t0, 3),
    }


# -- ideal observation --------------------------------------------------------------

_OBSERVATIONS = {
    F.PsEnd: (F.TwoPT, ("a0", "b0", "e0", "f0", "d")),
    F.PswEnd: (F.PsEnd, ("a0", "b0", "e0", "f0", "d", "z")),
    F.PEnd: (F.PsEnd, ("a0", "b0", "e0", "f0", "d", "z")),
    F.IEnd: (F.PAut, ("a0", "b0", "e1", "d", "z1")),
}


def ideal_observation(family, n: int) -> dict:
    """Which named maps can only be written as products inside the submonoid?

    For every target t and every element x of the family outside the
    submonoid, looks for b, c with b x c = t.  A hit means t factors through
    an outside element; the codec-first (b, x, c) is reported.
    """
    family = F.parse(family)
    if family not in _OBSERVATIONS:
        raise ValueError(f"no submonoid observation for {family.value}")
    sub, names = _OBSERVATIONS[family]
    t = table_for(family, n)
    T = np.array(t.cayley(), dtype=np.int64)
    outside = [i for i, a in enumerate(t.members) if not is_member(sub, a)]
    cat = catalog(n)
    result = {"family": family.value, "submonoid": sub.value, "n": n,
              "outside": len(outside), "targets": {}}
    for name in names:
        target = t.index[cat[name]]
        hit = None
        for x in outside:
            bxc = T[T[:, x]]          # [b, c] -> index of b x c
            bs, cs = np.nonzero(bxc == target)
            if bs.size:
                hit = [t.members[int(bs[0])].code, t.members[x].code,
                       t.members[int(cs[0])].code]
                break
        result["targets"][name] = {"only_inside": hit is None, "factorization": hit}
    result["holds"] = all(v["only_inside"] for v in result["targets"].values())
    return result
