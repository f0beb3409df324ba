"""Partial endomorphism monoids of the star graph S_n.

Vertices are 0..n-1 with 0 the centre.  Maps act on the right and compose
left to right (``a * b`` applies ``a`` first).
"""
__version__ = "0.1.0"

from .families import MonoidFamily
from .ptransform import (PartialTransformation, compose, empty, format_map, identity,
                         inverse, make, parse_map, partial_identity, zeta_lift)
from .membership import classify, is_member, is_member_definitional
from .enumeration import cardinality, census, enumerate_family, units
from .greens import egg_box, is_regular, is_regular_oracle, related, related_oracle
from .generation import (catalog, closure, named_generating_set, rank_search,
                         verify_generators)

__all__ = [
    "MonoidFamily", "PartialTransformation", "compose", "empty", "format_map",
    "identity", "inverse", "make", "parse_map", "partial_identity", "zeta_lift",
    "classify", "is_member", "is_member_definitional", "cardinality", "census",
    "enumerate_family", "units", "egg_box", "is_regular", "is_regular_oracle",
    "related", "related_oracle", "catalog", "closure", "named_generating_set",
    "rank_search", "verify_generators",
]
