"""Partial transformations of the vertex set {0, ..., n-1} of the star graph S_n.

Vertex 0 is the centre of the star.  Maps act on the right and compose left
to right: ``compose(a, b)`` (also ``a * b``) applies ``a`` first, so
``x(ab) = (xa)b``.  This is the opposite of the usual function-composition
order ``b o a``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence

__all__ = [
    "PartialTransformation",
    "KernelPartition",
    "CodecError",
    "make",
    "from_images",
    "compose",
    "image",
    "kernel",
    "rank",
    "is_injective",
    "inverse",
    "identity",
    "empty",
    "partial_identity",
    "zeta_lift",
    "format_map",
    "parse_map",
]


class CodecError(ValueError):
    """Raised for malformed text encodings of a map."""


def _mask(points: Iterable[int]) -> int:
    m = 0
    for p in points:
        m |= 1 << p
    return m


@dataclass(frozen=True)
class PartialTransformation:
    """A partial self-map of {0, ..., n-1}.

    ``img[x]`` is the image of ``x`` or ``None`` when ``x`` is outside the
    domain; ``dom`` is the same domain as a bit mask.  Build instances with
    :func:`make`, :func:`from_images` or :func:`parse_map`, which validate.
    """

    n: int
    dom: int
    img: tuple = field(repr=False)

    def __str__(self) -> str:
        return format_map(self)

    def __repr__(self) -> str:
        return f"PartialTransformation({format_map(self)!r})"

    def __call__(self, x: int) -> Optional[int]:
        return self.img[x]

    def __mul__(self, other: "PartialTransformation") -> "PartialTransformation":
        return compose(self, other)

    def __contains__(self, x: int) -> bool:
        return bool(self.dom >> x & 1)

    def __len__(self) -> int:
        return bin(self.dom).count("1")

    def items(self):
        """(point, value) pairs sorted by point."""
        return [(x, y) for x, y in enumerate(self.img) if y is not None]

    @property
    def domain(self) -> frozenset:
        return frozenset(x for x, y in enumerate(self.img) if y is not None)

    @cached_property
    def image(self) -> frozenset:
        return frozenset(y for y in self.img if y is not None)

    @cached_property
    def image_mask(self) -> int:
        return _mask(self.image)

    @property
    def rank(self) -> int:
        return len(self.image)

    @cached_property
    def kernel(self) -> "KernelPartition":
        blocks: dict = {}
        for x, y in enumerate(self.img):
            if y is not None:
                blocks.setdefault(y, []).append(x)
        return KernelPartition(tuple(sorted((frozenset(b) for b in blocks.values()), key=min)))

    @cached_property
    def is_injective(self) -> bool:
        return len(self.image) == len(self)

    def preimage(self, y: int) -> frozenset:
        """The kernel class ``y a^-1`` (empty when y is not an image point)."""
        return frozenset(x for x, v in enumerate(self.img) if v == y)

    @cached_property
    def code(self) -> str:
        return format_map(self)


@dataclass(frozen=True)
class KernelPartition:
    """Partition of ``dom(a)`` into classes of points with equal image.

    Blocks are frozensets ordered by their minimum element, so two kernels
    compare equal exactly when they are the same partition.
    """

    blocks: tuple

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def block_of(self, x: int) -> Optional[frozenset]:
        for b in self.blocks:
            if x in b:
                return b
        return None


def _check_n(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"vertex count must be a positive integer, got {n!r}")


def _build(n: int, img: Sequence[Optional[int]]) -> PartialTransformation:
    img = tuple(img)
    dom = 0
    for x, y in enumerate(img):
        if y is not None:
            dom |= 1 << x
    return PartialTransformation(n, dom, img)


def make(n: int, pairs: Iterable[tuple]) -> PartialTransformation:
    """Map with ``x -> y`` for each ``(x, y)`` in ``pairs``."""
    _check_n(n)
    img: list = [None] * n
    for x, y in pairs:
        for v in (x, y):
            if not isinstance(v, int) or not 0 <= v < n:
                raise ValueError(f"point {v!r} outside 0..{n - 1}")
        if img[x] is not None:
            raise ValueError(f"point {x} mapped twice")
        img[x] = y
    return _build(n, img)


def from_images(img: Sequence[Optional[int]]) -> PartialTransformation:
    """Map from its image list (``None`` marks points outside the domain)."""
    n = len(img)
    _check_n(n)
    for y in img:
        if y is not None and not (isinstance(y, int) and 0 <= y < n):
            raise ValueError(f"value {y!r} outside 0..{n - 1}")
    return _build(n, img)


def compose(a: PartialTransformation, b: PartialTransformation) -> PartialTransformation:
    """The product ``ab``: apply ``a``, then ``b``."""
    if a.n != b.n:
        raise ValueError(f"cannot compose maps on {a.n} and {b.n} points")
    bi = b.img
    return _build(a.n, [None if y is None else bi[y] for y in a.img])


def image(a: PartialTransformation) -> frozenset:
    return a.image


def kernel(a: PartialTransformation) -> KernelPartition:
    return a.kernel


def rank(a: PartialTransformation) -> int:
    return a.rank


def is_injective(a: PartialTransformation) -> bool:
    return a.is_injective


def inverse(a: PartialTransformation) -> PartialTransformation:
    """Inverse partial permutation; rejects non-injective maps."""
    if not a.is_injective:
        raise ValueError(f"{a} is not injective")
    img: list = [None] * a.n
    for x, y in a.items():
        img[y] = x
    return _build(a.n, img)


def identity(n: int) -> PartialTransformation:
    _check_n(n)
    return _build(n, range(n))


def empty(n: int) -> PartialTransformation:
    _check_n(n)
    return _build(n, [None] * n)


def partial_identity(n: int, points: Iterable[int]) -> PartialTransformation:
    return make(n, [(x, x) for x in sorted(set(points))])


def zeta_lift(a: PartialTransformation) -> PartialTransformation:
    """Force 0 into the domain as a fixed point, keeping the action on 1..n-1.

    Whatever ``a`` did to 0 is discarded.
    """
    return _build(a.n, (0,) + a.img[1:])


_HEADER = re.compile(r"^n=(\d+);(.*)$", re.S)
_PAIR = re.compile(r"^(\d+)->(\d+)$")


def format_map(a: PartialTransformation) -> str:
    """Text form ``n=<N>; x1->y1 x2->y2 ...`` (pairs sorted by point)."""
    pairs = " ".join(f"{x}->{y}" for x, y in a.items())
    return f"n={a.n}; {pairs}" if pairs else f"n={a.n};"


def parse_map(text: str) -> PartialTransformation:
    """Inverse of :func:`format_map`."""
    m = _HEADER.match(text.strip())
    if not m:
        raise CodecError(f"expected 'n=<N>; x->y ...', got {text!r}")
    n = int(m.group(1))
    pairs = []
    for tok in m.group(2).split():
        pm = _PAIR.match(tok)
        if not pm:
            raise CodecError(f"bad pair {tok!r} in {text!r}")
        pairs.append((int(pm.group(1)), int(pm.group(2))))
    try:
        return make(n, pairs)
    except ValueError as exc:
        raise CodecError(f"{text!r}: {exc}") from None
