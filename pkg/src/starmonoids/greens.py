"""Green's relations and regularity in the star-graph monoids.

``related`` evaluates closed criteria built from kernels, images and where
the centre 0 sits.  ``related_oracle`` decides the same relations from
principal one-sided ideals computed by brute force, and ``is_regular_oracle``
searches for inverses ``b`` with ``aba = a``.  Sweeps comparing the two
routes live in :func:`compare_pairs` and :func:`regularity_sweep`.
"""
from __future__ import annotations

import json
import random
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from typing import Iterable, Optional

import numpy as np

from ._tables import table_for, to_row
from .enumeration import ENUM_CAP, check_cap, elements
from .families import REGULAR, MonoidFamily
from .membership import NotAMemberError, require_member
from .ptransform import PartialTransformation, identity

__all__ = [
    "RELATIONS",
    "GreensVerdict",
    "related",
    "related_oracle",
    "h_kernel_image",
    "is_regular",
    "is_regular_oracle",
    "compare_pairs",
    "regularity_sweep",
    "EggBoxReport",
    "JClassRecord",
    "egg_box",
]

F = MonoidFamily
RELATIONS = ("R", "L", "H", "J")
GREENS_CAP = 6


def _relation(rel: str) -> str:
    r = rel.strip().upper()
    if r == "D":
        return "J"
    if r not in RELATIONS:
        raise ValueError(f"unknown relation {rel!r}; choose from R, L, H, J")
    return r


@dataclass(frozen=True)
class GreensVerdict:
    relation: str
    family: MonoidFamily
    related: bool
    method: str  # "formula" or "oracle"


# -- invariants ---------------------------------------------------------------

@lru_cache(maxsize=1 << 18)
def _inv(a: PartialTransformation) -> tuple:
    """(kernel, image, rank, 0 in dom, 0 in image, 0 a^-1)."""
    im = a.image
    return (a.kernel, im, len(im), a.img[0] is not None, 0 in im, a.preimage(0))


def _r_regular(ia, ib) -> bool:
    return ia[0] == ib[0]


def _l_regular(ia, ib) -> bool:
    return ia[1] == ib[1]


def _r_general(ia, ib) -> bool:
    ker, _, rk, _, zim, zcls = ia
    if ker != ib[0]:
        return False
    if rk <= 1:
        return True
    if zim != ib[4]:
        return False
    if not zim:
        return True
    # either the same zero class, or the two zero classes are the whole kernel
    return zcls == ib[5] or (len(ker) == 2 and {zcls, ib[5]} == set(ker.blocks))


def _r_injective(a, b, ia, ib) -> bool:
    if a.dom != b.dom:
        return False
    if ia[2] <= 1:
        return True
    if ia[4] != ib[4]:
        return False
    if not ia[4]:
        return True
    (pa,), (pb,) = ia[5], ib[5]
    return pa == pb or a.domain == {pa, pb}


def _l_general(ia, ib) -> bool:
    if ia[1] != ib[1]:
        return False
    return ia[2] <= 1 or ia[3] == ib[3]


def _j(ia, ib, with_image: bool) -> bool:
    if ia[2] != ib[2]:
        return False
    if ia[2] <= 1:
        return True
    if ia[3] != ib[3]:
        return False
    return not with_image or ia[4] == ib[4]


def h_kernel_image(a: PartialTransformation, b: PartialTransformation) -> bool:
    """Equal kernels and equal images: H in PT, and in the regular families.

    Not sufficient for H in PwEnd, PEnd or IEnd once n >= 4.
    """
    return a.kernel == b.kernel and a.image == b.image


def _check_pair(family, a, b) -> MonoidFamily:
    family = F.parse(family)
    if a.n != b.n:
        raise ValueError("maps live on different vertex sets")
    require_member(family, a)
    require_member(family, b)
    return family


def related(relation: str, family, n: int, a: PartialTransformation,
            b: PartialTransformation) -> bool:
    """Closed-form Green's relation test in ``family`` on S_n."""
    rel = _relation(relation)
    family = _check_pair(family, a, b)
    if a.n != n:
        raise ValueError(f"maps are on {a.n} points, not {n}")
    ia, ib = _inv(a), _inv(b)
    regular = family in REGULAR or family in (F.PT, F.Isym, F.TwoPT)
    if rel == "H":
        if regular:
            return ia[0] == ib[0] and ia[1] == ib[1]
        # kernel and image equality alone is too weak when 0 is outside the
        # domain: (1->0 2->1 3->2) and (1->1 2->0 3->2) on S_4 are not R-related
        return related("R", family, n, a, b) and related("L", family, n, a, b)
    if rel == "R":
        if regular:
            return _r_regular(ia, ib)
        if family is F.IEnd:
            return _r_injective(a, b, ia, ib)
        return _r_general(ia, ib)
    if rel == "L":
        return _l_regular(ia, ib) if regular else _l_general(ia, ib)
    if family in (F.PT, F.Isym):
        return ia[2] == ib[2]
    if family is F.TwoPT:
        # the lifted and unlifted copies never share a J-class
        return ia[2] == ib[2] and ia[3] == ib[3]
    # J: PsEnd / PswEnd / PAut ignore the image condition
    return _j(ia, ib, with_image=not regular)


# -- brute-force oracles --------------------------------------------------------

@dataclass
class _IdealClasses:
    r_id: np.ndarray
    l_id: np.ndarray
    rl_pairs: frozenset


@lru_cache(maxsize=16)
def _ideal_classes(family: MonoidFamily, n: int) -> _IdealClasses:
    t = table_for(family, n)
    if identity(n) not in t.index:
        raise AssertionError(f"{family.value}(S_{n}) lacks the identity")

    def classes(products) -> np.ndarray:
        seen: dict = {}
        ids = np.empty(t.size, dtype=np.int64)
        for i in range(t.size):
            idx = t.lookup(products(i))
            if (idx < 0).any():
                raise AssertionError(f"{family.value}(S_{n}) not closed")
            mask = np.zeros(t.size, dtype=bool)
            mask[idx] = True
            ids[i] = seen.setdefault(np.packbits(mask).tobytes(), len(seen))
        return ids

    r_id = classes(t.right_products)   # aM
    l_id = classes(t.left_products)    # Ma
    return _IdealClasses(r_id, l_id, frozenset(zip(r_id.tolist(), l_id.tolist())))


def related_oracle(relation: str, family, n: int, a: PartialTransformation,
                   b: PartialTransformation) -> bool:
    """Green's relation decided from principal ideals of the finite monoid.

    R: aM = bM.  L: Ma = Mb.  H: both.  J is computed as D = R o L, i.e.
    some c has a R c and c L b.
    """
    rel = _relation(relation)
    family = _check_pair(family, a, b)
    check_cap(n, GREENS_CAP, "Green's oracle")
    c = _ideal_classes(family, n)
    idx = table_for(family, n).index
    i, j = idx[a], idx[b]
    r = c.r_id[i] == c.r_id[j]
    l = c.l_id[i] == c.l_id[j]
    if rel == "R":
        return bool(r)
    if rel == "L":
        return bool(l)
    if rel == "H":
        return bool(r and l)
    return (int(c.r_id[i]), int(c.l_id[j])) in c.rl_pairs


def is_regular(family, n: int, a: PartialTransformation) -> bool:
    """0 in dom(a), or im(a) = {0}, or 0 not in im(a)."""
    require_member(family, a)
    return a.img[0] is not None or a.image == {0} or 0 not in a.image


def is_regular_oracle(family, n: int, a: PartialTransformation,
                      witness_family=None) -> tuple:
    """Search ``b`` with ``a b a = a``.

    ``b`` ranges over ``witness_family`` (default: ``family`` itself).
    Returns ``(found, b)`` with the codec-first witness, or ``(False, None)``.
    """
    require_member(family, a)
    check_cap(n, GREENS_CAP, "regularity oracle")
    t = table_for(F.parse(witness_family or family), n)
    ra = np.array(to_row(a), dtype=np.int64)
    aba = ra[t.rows[:, ra]]
    hits = np.flatnonzero((aba == ra).all(axis=1))
    if hits.size == 0:
        return False, None
    return True, t.members[int(hits[0])]


# -- sweeps -------------------------------------------------------------------------

@dataclass(frozen=True)
class Disagreement:
    relation: str
    family: str
    a: str
    b: str
    formula: bool
    oracle: bool


def compare_pairs(family, n: int, relations: Iterable[str] = RELATIONS, *,
                  samples: Optional[int] = None, seed: int = 0) -> tuple:
    """Formula vs oracle over all pairs, or ``samples`` random pairs.

    Returns ``(pairs_checked, disagreements)``.
    """
    family = F.parse(family)
    rels = [_relation(r) for r in relations]
    members = elements(family, n)
    m = len(members)
    if samples is None:
        pairs = ((i, j) for i in range(m) for j in range(m))
        total = m * m
    else:
        rng = random.Random(seed)
        pairs = [(rng.randrange(m), rng.randrange(m)) for _ in range(samples)]
        total = samples
    c = _ideal_classes(family, n)
    r_id, l_id = c.r_id.tolist(), c.l_id.tolist()
    bad = []
    for i, j in pairs:
        a, b = members[i], members[j]
        for rel in rels:
            if rel == "R":
                want = r_id[i] == r_id[j]
            elif rel == "L":
                want = l_id[i] == l_id[j]
            elif rel == "H":
                want = r_id[i] == r_id[j] and l_id[i] == l_id[j]
            else:
                want = (r_id[i], l_id[j]) in c.rl_pairs
            got = related(rel, family, n, a, b)
            if got != want:
                bad.append(Disagreement(rel, family.value, a.code, b.code, got, want))
    return total, bad


def regularity_sweep(family, n: int) -> dict:
    """Compare the regularity criterion with the witness search on every member."""
    family = F.parse(family)
    out = {"family": family.value, "n": n, "members": 0, "regular": 0,
           "mismatches": [], "no_paut_witness": []}
    for a in elements(family, n):
        out["members"] += 1
        formula = is_regular(family, n, a)
        found, _ = is_regular_oracle(family, n, a)
        if formula != found:
            out["mismatches"].append(a.code)
        if found:
            out["regular"] += 1
            if not is_regular_oracle(family, n, a, witness_family=F.PAut)[0]:
                out["no_paut_witness"].append(a.code)
    return out


# -- egg-box ----------------------------------------------------------------------------

@dataclass
class JClassRecord:
    representative: str
    size: int
    r_classes: int
    l_classes: int
    h_size: int
    regular: bool
    rank: int
    zero_in_dom: bool
    zero_in_image: bool
    nonempty_cells: int
    grid: list = field(default_factory=list, repr=False)   # H sizes, rows = R-classes

    @property
    def rectangular(self) -> bool:
        return self.nonempty_cells == self.r_classes * self.l_classes and \
            self.r_classes * self.l_classes * self.h_size == self.size


@dataclass
class EggBoxReport:
    family: str
    n: int
    classes: list

    @property
    def total(self) -> int:
        return sum(c.size for c in self.classes)

    def to_dict(self) -> dict:
        return {"family": self.family, "n": self.n, "total": self.total,
                "j_classes": [asdict(c) for c in self.classes]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self) -> str:
        lines = [f"{self.family}(S_{self.n}): {len(self.classes)} J-classes, "
                 f"{self.total} elements"]
        for c in self.classes:
            lines.append(
                f"J[{c.representative}] size={c.size} rank={c.rank} "
                f"0in_dom={int(c.zero_in_dom)} 0in_im={int(c.zero_in_image)} "
                f"R={c.r_classes} L={c.l_classes} H={c.h_size} "
                f"{'regular' if c.regular else 'non-regular'}")
            width = max(len(str(h)) for row in c.grid for h in row)
            for row in c.grid:
                lines.append("  " + " ".join(str(h).rjust(width) if h else ".".rjust(width)
                                             for h in row))
        return "\n".join(lines)


def _partition(items, same) -> list:
    classes: list = []
    for x in items:
        for cl in classes:
            if same(cl[0], x):
                cl.append(x)
                break
        else:
            classes.append([x])
    return classes


def egg_box(family, n: int, cap: int = ENUM_CAP) -> EggBoxReport:
    """J-classes of ``family`` on S_n, each split into R- and L-classes."""
    family = F.parse(family)
    check_cap(n, cap)
    members = elements(family, n)
    rel = lambda r: (lambda x, y: related(r, family, n, x, y))
    records = []
    for jc in _partition(members, rel("J")):
        rows = _partition(jc, rel("R"))
        cols = _partition(jc, rel("L"))
        col_of = {x: k for k, col in enumerate(cols) for x in col}
        grid = [[0] * len(cols) for _ in rows]
        for i, row in enumerate(rows):
            for x in row:
                grid[i][col_of[x]] += 1
        hs = {h for row in grid for h in row if h}
        rep = jc[0]
        regs = {is_regular(family, n, x) for x in jc}
        records.append(JClassRecord(
            representative=rep.code, size=len(jc), r_classes=len(rows),
            l_classes=len(cols), h_size=max(hs), regular=all(regs),
            rank=rep.rank, zero_in_dom=rep.img[0] is not None,
            zero_in_image=0 in rep.image,
            nonempty_cells=sum(1 for row in grid for h in row if h), grid=grid))
    return EggBoxReport(family.value, n, records)
