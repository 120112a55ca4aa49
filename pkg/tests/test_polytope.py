import itertools
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vcbound.errors import DimensionError, ResourceError
from vcbound.polytope import (
    LatticePointSet,
    build_polytope_points,
    containment_check,
    normalized_volume,
    product_of_simplices_vertices,
    rojas_component_bound,
    simplex_product_volume,
)

from .oracles import qhull_normalized_volume, shoelace_normalized_area


def pts(*points):
    return LatticePointSet(len(points[0]), frozenset(points))


def dense_support(k, d):
    return [e for e in itertools.product(range(d + 1), repeat=k) if sum(e) <= d]


class TestBuildPoints:
    def test_empty_support(self):
        assert build_polytope_points([], 2).points == {(0, 0), (1, 0), (0, 1)}

    def test_union(self):
        assert build_polytope_points([(2, 0)], 2).points == {(0, 0), (1, 0), (0, 1), (2, 0)}

    def test_dedup(self):
        assert len(build_polytope_points([(1, 0)], 2)) == 3

    def test_length_mismatch(self):
        with pytest.raises(DimensionError):
            build_polytope_points([(1, 0, 0)], 2)

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            pts((0, 0), (-1, 0))


class TestNormalizedVolume:
    def test_standard_simplex(self):
        assert normalized_volume(pts((0, 0), (1, 0), (0, 1))) == 1

    def test_shoelace_case(self):
        p = pts((0, 0), (1, 0), (0, 1), (2, 0))
        assert shoelace_normalized_area(p.points) == 2
        assert normalized_volume(p) == 2

    def test_scaled_simplex(self):
        p = build_polytope_points(dense_support(2, 3), 2)
        assert shoelace_normalized_area(p.points) == 9
        assert normalized_volume(p) == 9

    @pytest.mark.parametrize("k", [1, 2, 3, 4, 5, 6])
    def test_unit_simplex_any_dimension(self, k):
        assert normalized_volume(build_polytope_points([], k)) == 1

    def test_unit_cube(self):
        cube = LatticePointSet(3, frozenset(itertools.product((0, 1), repeat=3)))
        assert normalized_volume(cube) == math.factorial(3)

    def test_cap(self):
        with pytest.raises(ResourceError):
            normalized_volume(build_polytope_points([], 7))
        assert normalized_volume(build_polytope_points([], 7), hull_cap=7) == 1

    def test_random_planar_against_shoelace(self):
        rng = random.Random(1)
        for _ in range(200):
            sup = [(rng.randint(0, 7), rng.randint(0, 7)) for _ in range(rng.randint(0, 12))]
            p = build_polytope_points(sup, 2)
            assert normalized_volume(p) == shoelace_normalized_area(p.points)

    @pytest.mark.parametrize("k", [3, 4])
    def test_random_against_qhull(self, k):
        rng = random.Random(k)
        for _ in range(60):
            sup = [tuple(rng.randint(0, 4) for _ in range(k)) for _ in range(rng.randint(1, 15))]
            p = build_polytope_points(sup, k)
            assert normalized_volume(p) == qhull_normalized_volume(p.points)


class TestSimplexProduct:
    def test_unit_square(self):
        assert simplex_product_volume([1, 1], [1, 1]) == 2

    @pytest.mark.parametrize("d,k", [(1, 1), (3, 2), (2, 5), (6, 4)])
    def test_single_block(self, d, k):
        assert simplex_product_volume([d], [k]) == d**k

    def test_worked_example_size(self):
        got = simplex_product_volume([3, 1], [50, 20])
        assert got == math.comb(70, 20) * 3**50
        assert abs(math.log2(got) - (math.log2(math.comb(70, 20)) + 50 * math.log2(3))) < 1e-9
        assert 136 < math.log2(got) < 137

    def test_length_mismatch(self):
        with pytest.raises(DimensionError):
            simplex_product_volume([1, 2], [1])

    def test_matches_hull_of_vertices(self):
        for blocks, degs in [((2, 1), (3, 2)), ((1, 1, 1), (1, 2, 3)), ((3,), (2,))]:
            verts = product_of_simplices_vertices(degs, blocks)
            assert normalized_volume(verts) == simplex_product_volume(degs, blocks)


class TestContainment:
    def test_inside(self):
        assert containment_check([(2, 0, 1)], [2, 1], [2, 1])

    def test_outside(self):
        assert not containment_check([(3, 0, 0)], [2, 1], [2, 1])

    def test_mismatch(self):
        with pytest.raises(DimensionError):
            containment_check([(1, 0)], [2, 1], [2, 1])


class TestRojasBound:
    def test_interval(self):
        assert rojas_component_bound(build_polytope_points([(3,)], 1)) == 6

    def test_dense_recovers_adjusted_milnor(self):
        assert rojas_component_bound(build_polytope_points(dense_support(2, 2), 2)) == 16

    def test_sparse_improves(self):
        assert rojas_component_bound(build_polytope_points([(2, 0)], 2)) == 8

    @pytest.mark.parametrize("k,d", [(k, d) for k in range(1, 5) for d in range(1, 4)])
    def test_dense_recovery(self, k, d):
        b = rojas_component_bound(build_polytope_points(dense_support(k, d), k))
        assert b == (2 * d) ** k


point_lists = st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4), st.integers(0, 4)), max_size=8)


@settings(max_examples=60, deadline=None)
@given(point_lists, point_lists)
def test_monotone_in_points(a, b):
    small = build_polytope_points(a, 3)
    big = build_polytope_points(a + b, 3)
    assert normalized_volume(small) <= normalized_volume(big)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 2)), max_size=10),
       st.integers(1, 3), st.integers(1, 2))
def test_containment_implies_volume_bound(sup, d1, d2):
    blocks = (2, 1)
    if containment_check(sup, (d1, d2), blocks):
        assert normalized_volume(build_polytope_points(sup, 3)) <= simplex_product_volume((d1, d2), blocks)
