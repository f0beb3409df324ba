"""Family tags for the monoids of partial endomorphisms of S_n."""
from __future__ import annotations

from enum import Enum


class MonoidFamily(str, Enum):
    PwEnd = "PwEnd"    # partial weak endomorphisms
    PEnd = "PEnd"      # partial endomorphisms
    PsEnd = "PsEnd"    # partial strong endomorphisms
    PswEnd = "PswEnd"  # partial strong weak endomorphisms
    IEnd = "IEnd"      # injective partial endomorphisms
    PAut = "PAut"      # partial automorphisms
    PT = "PT"          # all partial transformations
    Isym = "Isym"      # symmetric inverse monoid
    TwoPT = "TwoPT"    # PT(1..n-1) together with its lifted copy

    def __str__(self) -> str:
        return self.value

    @property
    def primary(self) -> bool:
        return self in PRIMARY

    @property
    def injective(self) -> bool:
        return self in (MonoidFamily.IEnd, MonoidFamily.PAut, MonoidFamily.Isym)

    @classmethod
    def parse(cls, name: "str | MonoidFamily") -> "MonoidFamily":
        if isinstance(name, cls):
            return name
        key = str(name).strip().lower().replace("-", "").replace("_", "")
        aliases = {"2pt": cls.TwoPT, "i": cls.Isym, "sym": cls.Isym}
        if key in aliases:
            return aliases[key]
        for fam in cls:
            if fam.value.lower() == key:
                return fam
        raise ValueError(f"unknown monoid family {name!r}; "
                         f"choose from {', '.join(f.value for f in cls)}")


F = MonoidFamily

# order used in reports
PRIMARY = (F.PwEnd, F.PEnd, F.PsEnd, F.PswEnd, F.PAut, F.IEnd)
AUXILIARY = (F.PT, F.Isym, F.TwoPT)

# regular for every n (the others are not once n >= 3)
REGULAR = (F.PsEnd, F.PswEnd, F.PAut)

# (smaller, larger) pairs of the inclusion diagram
INCLUSIONS = (
    (F.PAut, F.PsEnd), (F.PsEnd, F.PswEnd), (F.PswEnd, F.PwEnd),
    (F.PsEnd, F.PEnd), (F.PEnd, F.PwEnd),
    (F.PAut, F.IEnd), (F.IEnd, F.PEnd),
)


def parse_families(text: str) -> list:
    """Comma separated names, or ``all`` for the six primary families."""
    if text.strip().lower() == "all":
        return list(PRIMARY)
    return [MonoidFamily.parse(s) for s in text.split(",") if s.strip()]
