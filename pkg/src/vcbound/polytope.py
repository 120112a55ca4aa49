"""Newton polytopes and their normalized volumes.

Volumes use the lattice normalization in which the standard simplex
(origin plus unit vectors) has volume 1, i.e. ``k!`` times Euclidean volume.
For integer point sets every normalized volume is an integer, and everything
here is computed with Python integers.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DimensionError, ResourceError

DEFAULT_HULL_CAP = 6

Point = tuple[int, ...]


@dataclass(frozen=True)
class LatticePointSet:
    dimension: int
    points: frozenset[Point]

    def __post_init__(self):
        if not isinstance(self.dimension, int) or self.dimension < 1:
            raise ValueError("dimension must be a positive integer")
        pts = frozenset(tuple(int(c) for c in p) for p in self.points)
        for p in pts:
            if len(p) != self.dimension:
                raise DimensionError(f"point {p} has length {len(p)}, expected {self.dimension}")
            if any(c < 0 for c in p):
                raise ValueError(f"point {p} has a negative coordinate")
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return len(self.points)

    def sorted_points(self) -> list[Point]:
        return sorted(self.points)


def build_polytope_points(support: Iterable[Sequence[int]], k: int) -> LatticePointSet:
    """Support together with the origin and the k unit vectors."""
    pts = set()
    for p in support:
        p = tuple(p)
        if len(p) != k:
            raise DimensionError(f"support vector {p} has length {len(p)}, expected {k}")
        pts.add(p)
    pts.add((0,) * k)
    for i in range(k):
        pts.add(tuple(1 if j == i else 0 for j in range(k)))
    return LatticePointSet(k, frozenset(pts))


# exact linear algebra


def _det(rows: list[list[int]]) -> int:
    """Integer determinant by Bareiss fraction-free elimination."""
    n = len(rows)
    if n == 0:
        return 1
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for i in range(n - 1):
        if m[i][i] == 0:
            for r in range(i + 1, n):
                if m[r][i] != 0:
                    m[i], m[r] = m[r], m[i]
                    sign = -sign
                    break
            else:
                return 0
        piv = m[i][i]
        for r in range(i + 1, n):
            mr = m[r]
            mi = m[i]
            f = mr[i]
            for c in range(i + 1, n):
                mr[c] = (mr[c] * piv - f * mi[c]) // prev
            mr[i] = 0
        prev = piv
    return sign * m[n - 1][n - 1]


def _normal(vertices: Sequence[Point]) -> tuple[tuple[int, ...], int]:
    """Cofactor normal of the hyperplane through ``len(vertices) = dim`` points.

    The normal is not reduced, so ``|n.p - c|`` equals the normalized volume
    of the simplex spanned by the facet and ``p``.
    """
    p0 = vertices[0]
    dim = len(p0)
    diffs = [[a - b for a, b in zip(v, p0)] for v in vertices[1:]]
    normal = []
    for j in range(dim):
        minor = [row[:j] + row[j + 1:] for row in diffs]
        normal.append((-1) ** j * _det(minor))
    offset = sum(a * b for a, b in zip(normal, p0))
    return tuple(normal), offset


def _initial_simplex(points: list[Point], dim: int) -> list[int]:
    """Indices of dim + 1 affinely independent points, chosen greedily."""
    chosen = [0]
    basis: list[list[int]] = []  # integer echelon rows, pivot columns tracked below
    pivots: list[int] = []
    base = points[0]
    for idx in range(1, len(points)):
        vec = [a - b for a, b in zip(points[idx], base)]
        for row, pc in zip(basis, pivots):
            if vec[pc]:
                f, g = vec[pc], row[pc]
                vec = [g * a - f * b for a, b in zip(vec, row)]
        nz = next((j for j, a in enumerate(vec) if a), None)
        if nz is None:
            continue
        g = math.gcd(*vec)
        vec = [a // g for a in vec]
        basis.append(vec)
        pivots.append(nz)
        chosen.append(idx)
        if len(chosen) == dim + 1:
            return chosen
    raise ValueError("point set is not full-dimensional")


def _placing_volume(points: list[Point], dim: int) -> int:
    if dim == 1:
        xs = [p[0] for p in points]
        return max(xs) - min(xs)

    init = _initial_simplex(points, dim)
    init_pts = [points[i] for i in init]
    interior = [sum(c) for c in zip(*init_pts)]  # (dim + 1) * centroid
    scale = dim + 1

    facets: dict[frozenset[int], tuple[tuple[int, ...], int]] = {}

    def add_facet(idx: frozenset[int]) -> None:
        normal, offset = _normal([points[i] for i in sorted(idx)])
        side = sum(a * b for a, b in zip(normal, interior)) - offset * scale
        if side == 0:
            raise AssertionError("degenerate facet in placing triangulation")
        if side > 0:
            normal = tuple(-a for a in normal)
            offset = -offset
        facets[idx] = (normal, offset)

    for drop in init:
        add_facet(frozenset(i for i in init if i != drop))

    a0 = init_pts[0]
    volume = abs(_det([[a - b for a, b in zip(p, a0)] for p in init_pts[1:]]))

    used = set(init)
    for idx, p in enumerate(points):
        if idx in used:
            continue
        visible = []
        for key, (normal, offset) in facets.items():
            h = sum(a * b for a, b in zip(normal, p)) - offset
            if h > 0:
                visible.append(key)
                volume += h
        if not visible:
            continue
        ridge_count: dict[frozenset[int], int] = {}
        for key in visible:
            for v in key:
                ridge = key - {v}
                ridge_count[ridge] = ridge_count.get(ridge, 0) + 1
        for key in visible:
            del facets[key]
        for ridge, cnt in ridge_count.items():
            if cnt == 1:
                add_facet(ridge | {idx})
    return volume


def _order_for_placing(points: Iterable[Point]) -> list[Point]:
    # Far points first so interior points are rejected against a near-final hull.
    pts = sorted(points)
    dim = len(pts[0])
    origin = (0,) * dim
    units = [tuple(1 if j == i else 0 for j in range(dim)) for i in range(dim)]
    present = set(pts)
    head = [p for p in [origin, *units] if p in present]
    taken = set(head)
    rest = [p for p in pts if p not in taken]
    rest.sort(key=lambda p: (-max(p), -sum(p), p))
    return head + rest


def normalized_volume(pts: LatticePointSet, hull_cap: int = DEFAULT_HULL_CAP) -> int:
    """Exact normalized volume of the convex hull of ``pts``."""
    if pts.dimension > hull_cap:
        raise ResourceError(
            f"exact hull volume requested in dimension {pts.dimension}; hull cap is {hull_cap}"
        )
    return _placing_volume(_order_for_placing(pts.points), pts.dimension)


def simplex_product_volume(degrees: Sequence[int], block_sizes: Sequence[int]) -> int:
    """Normalized volume of the product of scaled simplices d_i * Delta_{k_i}.

    Equals k! / prod(k_i!) * prod(d_i ** k_i).
    """
    if len(degrees) != len(block_sizes):
        raise DimensionError("degrees and block_sizes differ in length")
    k = sum(block_sizes)
    coeff = math.factorial(k)
    for kb in block_sizes:
        coeff //= math.factorial(kb)
    return coeff * math.prod(d**kb for d, kb in zip(degrees, block_sizes))


def product_of_simplices_vertices(degrees: Sequence[int], block_sizes: Sequence[int]) -> LatticePointSet:
    """Vertex set of prod_i d_i * Delta_{k_i} in R^k."""
    if len(degrees) != len(block_sizes):
        raise DimensionError("degrees and block_sizes differ in length")
    per_block = []
    for d, kb in zip(degrees, block_sizes):
        verts = [(0,) * kb] + [tuple(d if j == i else 0 for j in range(kb)) for i in range(kb)]
        per_block.append(verts)
    pts = frozenset(sum(combo, ()) for combo in itertools.product(*per_block))
    return LatticePointSet(sum(block_sizes), pts)


def containment_check(support: Iterable[Sequence[int]], degrees: Sequence[int],
                      blocks: Sequence[int]) -> bool:
    """True iff each support point has block-i coordinate sum <= degrees[i] for all i."""
    if len(degrees) != len(blocks):
        raise DimensionError("degrees and blocks differ in length")
    k = sum(blocks)
    spans = []
    start = 0
    for kb in blocks:
        spans.append((start, start + kb))
        start += kb
    ok = True
    for p in support:
        if len(p) != k:
            raise DimensionError(f"support vector of length {len(p)} for k = {k}")
        if ok and any(sum(p[lo:hi]) > d for (lo, hi), d in zip(spans, degrees)):
            ok = False
    return ok


def rojas_component_bound(pts: LatticePointSet, hull_cap: int = DEFAULT_HULL_CAP) -> int:
    """2^k times the normalized volume of the Newton polytope."""
    return 2**pts.dimension * normalized_volume(pts, hull_cap)
