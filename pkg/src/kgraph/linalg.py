"""Incremental reduced row echelon over exact Gaussian-rational coefficients.

Vectors are dicts from hashable coordinate keys to QQi.  Pivots are chosen as
the minimal key under a caller-supplied sort key, so the reduced basis is
deterministic for a deterministic insertion order.
"""

from __future__ import annotations

import bisect


def axpy(dst, c, src):
    """dst += c * src, pruning exact zeros in place."""
    for k, v in src.items():
        cur = dst.get(k)
        new = c * v if cur is None else cur + c * v
        if new:
            dst[k] = new
        elif cur is not None:
            del dst[k]


class RowSpan:
    """A reduced echelon basis supporting exact membership tests."""

    def __init__(self, sort_key):
        self._key = sort_key
        self.rows = []  # (pivot, vector) sorted by sort_key(pivot); pivot coeff is 1

    def _reduce(self, vec):
        vec = dict(vec)
        for pivot, row in self.rows:
            c = vec.get(pivot)
            if c:
                axpy(vec, -c, row)
        return vec

    def insert(self, vec):
        """Add a vector; returns True when it enlarges the span."""
        residue = self._reduce(vec)
        if not residue:
            return False
        pivot = min(residue, key=self._key)
        inv = residue[pivot]
        scaled = {k: v / inv for k, v in residue.items()}
        for _, row in self.rows:
            c = row.get(pivot)
            if c:
                axpy(row, -c, scaled)
        keys = [self._key(p) for p, _ in self.rows]
        at = bisect.bisect(keys, self._key(pivot))
        self.rows.insert(at, (pivot, scaled))
        return True

    def contains(self, vec):
        return not self._reduce(vec)

    @property
    def dim(self):
        return len(self.rows)

    def vectors(self):
        return [dict(row) for _, row in self.rows]
