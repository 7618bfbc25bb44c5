import random
from fractions import Fraction

import pytest

from fanforge import corpus
from fanforge.cones import HCone, VCone, cones_equal, intersect_hcones, v_to_h
from fanforge.fan import fans_equal, validate_fan
from fanforge.linalg import kernel_basis, vec
from fanforge.plfun import is_quasi_projective
from fanforge.refine import (
    Degenerate,
    NotStrictlyConvex,
    PNotIndependent,
    covers_coarse_exactly,
    induced_wall_subdivisions_agree,
    interior_dual_point,
    qp_refinement,
    simplicial_refinement,
    strictly_convex_relative,
    supported_refinement,
    weighted_subdivision,
)
from fanforge.theorems import random_complete_fan


def test_interior_dual_point_first_orthant():
    f = validate_fan(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1)], [[0, 1, 2]])
    assert interior_dual_point(f, f.max_cones[0]) == (1, 1, 1)


def test_interior_dual_point_square_cone():
    f = corpus.square_pyramid_fan()
    fat = next(c for c in f.max_cones if len(c.ray_indices) == 4)
    m = interior_dual_point(f, fat)
    # the four facet normals of the cone over the square sum along e3
    assert m[0] == 0 and m[1] == 0 and m[2] > 0


def test_weighted_subdivision_simplicial_identity():
    f = corpus.split_pyramid_fan()
    c = f.max_cones[0]
    m = interior_dual_point(f, c)
    w = [Fraction(1, 3)] * f.n_rays
    assert weighted_subdivision(f, c, m, w) == [c.ray_indices]


def test_weighted_subdivision_square_cone_diagonals():
    f = corpus.square_pyramid_fan()
    fat = next(c for c in f.max_cones if len(c.ray_indices) == 4)
    m = interior_dual_point(f, fat)
    w = [Fraction(1)] * 5
    w[1], w[2], w[3], w[4] = (
        Fraction(3, 4),
        Fraction(1, 2),
        Fraction(3, 4),
        Fraction(1, 2),
    )
    got = weighted_subdivision(f, fat, m, w)
    assert got in (
        [(1, 2, 4), (2, 3, 4)],  # split along Cone(rho2, rho4)
        [(1, 2, 3), (1, 3, 4)],  # split along Cone(rho1, rho3)
    )


def test_weighted_subdivision_equal_weights_degenerate():
    f = corpus.square_pyramid_fan()
    fat = next(c for c in f.max_cones if len(c.ray_indices) == 4)
    m = interior_dual_point(f, fat)
    with pytest.raises(Degenerate):
        weighted_subdivision(f, fat, m, [Fraction(2, 3)] * 5)


def test_refinement_reproduces_split_pyramid():
    f31 = corpus.square_pyramid_fan()
    f21 = corpus.split_pyramid_fan()
    for seed in (0, 1, 17):
        r = simplicial_refinement(f31, (2, 4), seed=seed)
        assert fans_equal(r.fine, f21)
        assert r.weights.w[2] == 1 and r.weights.w[4] == 1


def test_refinement_other_diagonal():
    f31 = corpus.square_pyramid_fan()
    r = simplicial_refinement(f31, (1, 3), seed=0)
    assert sorted(c.ray_indices for c in r.fine.max_cones) == [
        (0, 1, 2), (0, 1, 4), (0, 2, 3), (0, 3, 4), (1, 2, 3), (1, 3, 4),
    ]


def test_refining_simplicial_fan_is_identity():
    for f in (corpus.split_pyramid_fan(), corpus.polygon_fan(6)):
        r = simplicial_refinement(f, (), seed=3)
        assert fans_equal(r.fine, f)
        assert r.cone_map == tuple(range(len(f.max_cones)))


def test_dependent_support_rejected():
    # all four rays of the square cone are dependent inside it
    f31 = corpus.square_pyramid_fan()
    with pytest.raises(PNotIndependent):
        simplicial_refinement(f31, (1, 2, 3, 4), seed=0)
    # antipodal rays never share a cone, so per-cone independence holds
    f = corpus.polygon_fan(4)
    r = simplicial_refinement(f, (0, 2), seed=0)
    assert fans_equal(r.fine, f)


def test_supported_refinement_keeps_collection_primitive():
    f31 = corpus.square_pyramid_fan()
    r = supported_refinement(f31, (0, 2, 4), seed=5)
    assert fans_equal(r.fine, corpus.split_pyramid_fan())
    r = supported_refinement(f31, (0, 1, 3), seed=5)
    from fanforge.primcoll import enumerate_primitive_collections

    assert (0, 1, 3) in enumerate_primitive_collections(r.fine)


def test_qp_refinement_on_nonsimplicial_fan():
    f31 = corpus.square_pyramid_fan()
    ok, witness = is_quasi_projective(f31)
    assert ok
    r, phi = qp_refinement(f31, (), witness, seed=4)
    assert r.fine.is_simplicial
    assert strictly_convex_relative(phi, r)
    ok_fine, _ = is_quasi_projective(r.fine)
    assert ok_fine


def test_qp_refinement_identity_on_simplicial():
    f = corpus.split_pyramid_fan()
    ok, witness = is_quasi_projective(f)
    r, phi = qp_refinement(f, (), witness, seed=2)
    assert fans_equal(r.fine, f)


def test_qp_refinement_requires_strict_witness():
    f31 = corpus.square_pyramid_fan()
    from fanforge.plfun import pl_basis

    zero = pl_basis(f31).combine([0] * pl_basis(f31).dim_pl)
    with pytest.raises(NotStrictlyConvex):
        qp_refinement(f31, (), zero, seed=0)


def test_qp_refinement_strict_across_new_wall():
    # inside the subdivided square cone the function is strictly superadditive
    # for points of distinct fine cones
    f31 = corpus.square_pyramid_fan()
    ok, witness = is_quasi_projective(f31)
    r, phi = qp_refinement(f31, (2, 4), witness, seed=9)
    assert fans_equal(r.fine, corpus.split_pyramid_fan())
    u = vec(f31.ray(1))
    v = vec(f31.ray(3))
    s = vec(a + b for a, b in zip(u, v))
    assert phi.value(u) + phi.value(v) > phi.value(s)


def _union_convex(fine, wall, cone_a, cone_b):
    gens = sorted(set(cone_a.ray_indices) | set(cone_b.ray_indices))
    hull = v_to_h(VCone.make([fine.ray(i) for i in gens], fine.dim))
    normal = kernel_basis([fine.ray(i) for i in wall.ray_indices], fine.dim)[0]
    side_a = HCone.make([normal], ambient_dim=fine.dim)
    if not all(side_a.contains_point(fine.ray(i)) for i in cone_a.ray_indices):
        normal = vec(-x for x in normal)
        side_a = HCone.make([normal], ambient_dim=fine.dim)
    side_b = HCone.make([vec(-x for x in normal)], ambient_dim=fine.dim)
    return cones_equal(
        intersect_hcones(hull, side_a), cone_a.facets
    ) and cones_equal(intersect_hcones(hull, side_b), cone_b.facets)


def test_refinement_property_suite_random_fans():
    rng = random.Random(99)
    seen_nonsimplicial = False
    for k in range(12):
        name, f = random_complete_fan(rng)
        seen_nonsimplicial |= not f.is_simplicial
        r = simplicial_refinement(f, (), seed=k)
        fine = r.fine
        assert fine.is_simplicial
        assert fine.rays == f.rays
        assert covers_coarse_exactly(r)
        assert induced_wall_subdivisions_agree(r)
        # pieces of one coarse cone joined along a fine wall stay convex
        for w in fine.interior_walls:
            a, b = w.cone_indices
            if r.cone_map[a] == r.cone_map[b]:
                assert _union_convex(
                    fine, w, fine.max_cones[a], fine.max_cones[b]
                )
    assert seen_nonsimplicial


def test_property_a_on_cube_fan():
    f = corpus.cube_fan(3)
    # two adjacent corners of one face: independent in every cone they meet
    support = (0, 1)
    r = simplicial_refinement(f, support, seed=1)
    assert tuple(sorted(support)) in r.fine.faces
