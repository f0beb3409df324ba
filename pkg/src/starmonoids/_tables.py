"""Array form of a finite family of maps, for brute-force searches.

Each member is stored as a row of length n+1 in which the extra column is a
sink: undefined points map to the sink, and the sink maps to itself.  The
product ``ab`` of rows is then the fancy index ``b[a]``.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from .enumeration import elements
from .families import MonoidFamily
from .ptransform import PartialTransformation, _build


def to_row(a: PartialTransformation) -> list:
    n = a.n
    return [n if y is None else y for y in a.img] + [n]


class MonoidTable:
    """Members of one family on S_n with vectorized products and index lookup."""

    def __init__(self, members, n: int):
        self.n = n
        self.members = tuple(members)
        self.size = len(self.members)
        self.rows = np.array([to_row(a) for a in self.members], dtype=np.int64).reshape(self.size, n + 1)
        self._powers = (n + 1) ** np.arange(n, dtype=np.int64)
        codes = self.codes(self.rows)
        self._order = np.argsort(codes, kind="stable")
        self._sorted = codes[self._order]
        self.index = {a: i for i, a in enumerate(self.members)}

    def codes(self, rows: np.ndarray) -> np.ndarray:
        n = self.n
        digits = np.where(rows[..., :n] == n, 0, rows[..., :n] + 1)
        return digits @ self._powers

    def lookup(self, rows: np.ndarray) -> np.ndarray:
        """Member indices of the given rows, -1 for non-members."""
        codes = self.codes(rows)
        pos = np.searchsorted(self._sorted, codes)
        pos = np.minimum(pos, self.size - 1)
        hit = self._sorted[pos] == codes
        return np.where(hit, self._order[pos], -1)

    def right_products(self, i: int) -> np.ndarray:
        """Rows of a_i * b for every member b."""
        return self.rows[:, self.rows[i]]

    def left_products(self, i: int) -> np.ndarray:
        """Rows of b * a_i for every member b."""
        return self.rows[i][self.rows]

    def element(self, row) -> PartialTransformation:
        n = self.n
        return _build(n, [None if int(y) == n else int(y) for y in row[:n]])

    def cayley(self) -> list:
        """Right multiplication table as nested lists: ``t[i][j] = index(a_i a_j)``."""
        table = []
        for i in range(self.size):
            idx = self.lookup(self.right_products(i))
            if (idx < 0).any():
                raise ValueError("family is not closed under composition")
            table.append(idx.tolist())
        return table


@lru_cache(maxsize=32)
def table_for(family: MonoidFamily, n: int) -> MonoidTable:
    return MonoidTable(elements(family, n), n)
