import pytest
from hypothesis import given

from conftest import map_pairs, maps
from starmonoids.enumeration import enumerate_all
from starmonoids.families import INCLUSIONS, PRIMARY, MonoidFamily as F
from starmonoids.generation import catalog
from starmonoids.membership import (NotAMemberError, classify, is_member,
                                    is_member_definitional, require_member)
from starmonoids.ptransform import inverse, make, parse_map

ALL = list(F)


@pytest.mark.parametrize("n", range(1, 6))
@pytest.mark.parametrize("family", ALL, ids=lambda f: f.value)
def test_characterization_matches_definition(family, n):
    bad = [a.code for a in enumerate_all(n)
           if is_member(family, a) != is_member_definitional(family, a)]
    assert bad == []


@given(maps())
def test_inclusions(a):
    for small, big in INCLUSIONS:
        if is_member(small, a):
            assert is_member(big, a), (small, big, a)


@given(maps())
def test_paut_is_injective_strong(a):
    # partial automorphism: injective, and both a and its inverse preserve edges
    want = a.is_injective and is_member_definitional(F.PsEnd, a)
    assert is_member_definitional(F.PAut, a) == want
    if want:
        assert is_member(F.PAut, inverse(a))


@given(map_pairs())
def test_closed_under_composition(ab):
    a, b = ab
    for f in ALL:
        if is_member(f, a) and is_member(f, b):
            assert is_member(f, a * b), f


def test_named_maps():
    cat = catalog(4)
    for name in ("a0", "b0", "e0", "f0", "d", "z"):
        assert is_member(F.PsEnd, cat[name]), name
    z = parse_map("n=4; 0->1 1->0 2->0 3->0")
    assert z == cat["z"]
    assert classify(z) == {F.PsEnd, F.PswEnd, F.PEnd, F.PwEnd}


def test_centre_collapse_is_weak_only():
    # 0 -> 1 together with 1 -> 1 squashes an edge onto a vertex
    a = make(3, [(0, 1), (1, 1)])
    assert classify(a) == {F.PwEnd, F.PswEnd}
    b = make(3, [(1, 1), (2, 0)])
    assert F.PsEnd not in classify(b) and F.PEnd in classify(b)


def test_require_member():
    with pytest.raises(NotAMemberError):
        require_member(F.PAut, make(3, [(1, 0), (2, 0)]))
    require_member("psend", make(3, [(1, 0), (2, 0)]))


def test_family_parse():
    assert F.parse("2pt") is F.TwoPT
    assert F.parse("pswend") is F.PswEnd
    with pytest.raises(ValueError):
        F.parse("End")
    assert len(PRIMARY) == 6
