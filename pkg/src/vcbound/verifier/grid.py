"""Heuristic component counting for plane curves p(w1, w2) = y.

Cells of a uniform grid whose corner values straddle zero are marked and
joined with their 8 neighbours by union-find.  The count is an estimate:
nearby branches can merge and tangencies can be missed.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from ..errors import DimensionError, DomainError
from ..polynomial import SparsePolynomial

METHOD = "grid-estimate"


class DisjointSet:
    def __init__(self):
        self.parent: dict = {}
        self.rank: dict = {}

    def add(self, x) -> None:
        if x not in self.parent:
            self.parent[x] = x
            self.rank[x] = 0

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1

    def count(self) -> int:
        return sum(1 for x in self.parent if self.find(x) == x)


def fiber_components_2d_estimate(p: SparsePolynomial, y, resolution: int = 64,
                                 window: Sequence[Sequence] = ((-2, 2), (-2, 2))) -> int:
    """Estimate the number of components of {p = y} inside ``window``.

    ``window`` is ``((lo1, hi1), (lo2, hi2))`` with rational corners.
    Node values are computed exactly.
    """
    if p.num_vars != 2:
        raise DimensionError("fiber_components_2d_estimate needs a bivariate polynomial")
    if resolution < 16:
        raise DomainError("resolution must be at least 16")
    (a0, a1), (b0, b1) = [(Fraction(lo), Fraction(hi)) for lo, hi in window]
    if a1 <= a0 or b1 <= b0:
        raise DomainError("empty window")
    f = p - Fraction(y)
    n = resolution
    xs = [a0 + (a1 - a0) * i / n for i in range(n + 1)]
    ys = [b0 + (b1 - b0) * j / n for j in range(n + 1)]
    sign = [[_sign(f.evaluate([x, yv])) for yv in ys] for x in xs]

    dsu = DisjointSet()
    for i in range(n):
        for j in range(n):
            corners = (sign[i][j], sign[i + 1][j], sign[i][j + 1], sign[i + 1][j + 1])
            if min(corners) <= 0 <= max(corners):
                dsu.add((i, j))
    for (i, j) in list(dsu.parent):
        for di in (-1, 0, 1):
            for dj in (-1, 0, 1):
                nb = (i + di, j + dj)
                if nb != (i, j) and nb in dsu.parent:
                    dsu.union((i, j), nb)
    return dsu.count()


def _sign(v: Fraction) -> int:
    return (v > 0) - (v < 0)
