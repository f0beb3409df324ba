"""Membership of partial transformations in the star-graph monoids.

Two independent routes:

* :func:`is_member_definitional` checks the edge conditions of S_n pair by
  pair and is the ground truth;
* :func:`is_member` uses closed case splits on where 0 goes and what the
  image looks like, in O(n) per call.

The test-suite sweeps every partial transformation for n <= 6 and requires
the two to agree.
"""
from __future__ import annotations

from itertools import combinations

from .families import PRIMARY, MonoidFamily
from .ptransform import PartialTransformation, inverse

__all__ = [
    "MonoidFamily",
    "is_edge",
    "is_member_definitional",
    "is_member",
    "classify",
    "NotAMemberError",
]

F = MonoidFamily


class NotAMemberError(ValueError):
    """An operation was given a map outside the requested family."""


def is_edge(u, v) -> bool:
    """Is {u, v} an edge of the star (centre 0)?  ``None`` is never adjacent."""
    if u is None or v is None or u == v:
        return False
    return u == 0 or v == 0


def _pairs(a: PartialTransformation):
    pts = [x for x, y in enumerate(a.img) if y is not None]
    return [(u, v, a.img[u], a.img[v]) for u, v in combinations(pts, 2)]


def _endo(a) -> bool:
    return all(is_edge(fu, fv) for u, v, fu, fv in _pairs(a) if is_edge(u, v))


def _weak(a) -> bool:
    return all(is_edge(fu, fv) for u, v, fu, fv in _pairs(a)
               if is_edge(u, v) and fu != fv)


def _strong(a) -> bool:
    return all(is_edge(u, v) == is_edge(fu, fv) for u, v, fu, fv in _pairs(a))


def _strong_weak(a) -> bool:
    return all((is_edge(u, v) and fu != fv) == is_edge(fu, fv)
               for u, v, fu, fv in _pairs(a))


def _two_pt_def(a: PartialTransformation) -> bool:
    rest = [y for y in a.img[1:] if y is not None]
    if a.img[0] == 0:
        return 0 not in rest
    return a.img[0] is None and 0 not in rest


def is_member_definitional(family, a: PartialTransformation) -> bool:
    """Membership straight from the edge-compatibility definitions."""
    family = F.parse(family)
    if family is F.PT:
        return True
    if family is F.Isym:
        return a.is_injective
    if family is F.TwoPT:
        return _two_pt_def(a)
    if family is F.PEnd:
        return _endo(a)
    if family is F.PwEnd:
        return _weak(a)
    if family is F.PsEnd:
        return _strong(a)
    if family is F.PswEnd:
        return _strong_weak(a)
    if family is F.IEnd:
        return a.is_injective and _endo(a)
    if family is F.PAut:
        # a and its inverse both partial endomorphisms
        return a.is_injective and _endo(a) and _endo(inverse(a))
    raise AssertionError(family)


def _omega_images(a):
    """Values taken on the non-centre points of the domain."""
    return {y for y in a.img[1:] if y is not None}


def _pwend(a) -> bool:
    z = a.img[0]
    if z is None or z == 0:
        return True
    return a.image <= {0, z}


def _pend(a) -> bool:
    z = a.img[0]
    if z is None:
        return True
    rest = _omega_images(a)
    if z == 0:
        return 0 not in rest
    return rest <= {0}


def _no_centre_strong(a) -> bool:
    # 0 not in dom: image is {0} or avoids 0
    return a.image == {0} or 0 not in a.image


def _psend(a) -> bool:
    if a.img[0] is None:
        return _no_centre_strong(a)
    return _pend(a)


def _pswend(a) -> bool:
    z = a.img[0]
    if z is None:
        return _no_centre_strong(a)
    rest = _omega_images(a)
    if z == 0:
        return a.image == {0} or 0 not in rest
    return a.image == {z} or rest == {0}


def _paut(a) -> bool:
    if not a.is_injective:
        return False
    z = a.img[0]
    if z is None:
        return _no_centre_strong(a)
    if z == 0:
        return True
    return _omega_images(a) <= {0}


def _iend(a) -> bool:
    if not a.is_injective:
        return False
    z = a.img[0]
    if z is None or z == 0:
        return True
    return _omega_images(a) <= {0}


_CHAR = {
    F.PwEnd: _pwend,
    F.PEnd: _pend,
    F.PsEnd: _psend,
    F.PswEnd: _pswend,
    F.PAut: _paut,
    F.IEnd: _iend,
    F.PT: lambda a: True,
    F.Isym: lambda a: a.is_injective,
    F.TwoPT: _two_pt_def,
}


def is_member(family, a: PartialTransformation) -> bool:
    """Membership via the case-split characterizations."""
    return _CHAR[F.parse(family)](a)


def classify(a: PartialTransformation) -> frozenset:
    """All primary families containing ``a``."""
    return frozenset(f for f in PRIMARY if _CHAR[f](a))


def require_member(family, a: PartialTransformation) -> None:
    if not is_member(family, a):
        raise NotAMemberError(f"{a} is not in {F.parse(family).value}(S_{a.n})")
