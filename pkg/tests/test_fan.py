from fractions import Fraction

import pytest

from igusa.fan import (
    Cone,
    barycenter,
    dual_subdivision,
    is_simple,
    parallelepiped_points,
    triangulate,
)
from igusa.polycore import PolySystem, face_function, parse_polynomial

V2 = ["x", "y"]
V3 = ["x", "y", "z"]

E1, E2, E3 = (1, 0, 0), (0, 1, 0), (0, 0, 1)
P, P1, P2, P3 = (1, 1, 1), (2, 1, 1), (1, 2, 1), (1, 1, 2)


def sys71():
    return PolySystem(
        3,
        [
            parse_polynomial("x+y-z", V3),
            parse_polynomial("x^8+y^8+z^8+x^2*y^2*z^2", V3),
        ],
    )


def sys72(k=2):
    return PolySystem(
        2,
        [parse_polynomial(f"x^{k}+y^{k}", V2), parse_polynomial("x^4+y^4+x*y", V2)],
    )


class TestDualSubdivision:
    def test_skeleton_71(self):
        sub = dual_subdivision(sys71())
        assert set(sub.skeleton) == {E1, E2, E3, P, P1, P2, P3}

    def test_skeleton_72(self):
        sub = dual_subdivision(sys72())
        assert set(sub.skeleton) == {(0, 1), (1, 3), (1, 1), (3, 1), (1, 0)}

    def test_single_binomial(self):
        sub = dual_subdivision(PolySystem(2, [parse_polynomial("x+y", V2)]))
        assert set(sub.skeleton) == {(1, 0), (0, 1), (1, 1)}
        gens = sorted(c.generators for c in sub.cones)
        assert gens == [
            (((0, 1),)),
            ((0, 1), (1, 1)),
            (((1, 0),)),
            ((1, 0), (1, 1)),
            (((1, 1),)),
        ]

    def test_class_counts_71(self):
        sub = dual_subdivision(sys71())
        by_dim = {d: len(sub.cones_of_dim(d)) for d in (1, 2, 3)}
        assert by_dim == {1: 7, 2: 12, 3: 6}

    def test_warns_on_non_convenient(self):
        sys_ = PolySystem(2, [parse_polynomial("x*y + x^2", V2)])
        with pytest.warns(UserWarning):
            dual_subdivision(sys_)

    def test_face_constant_on_cones(self):
        # The defining equivalence: every polynomial's face is constant on
        # each cone, sampled at several interior points.
        s = sys71()
        sub = dual_subdivision(s)
        for cone in sub.cones:
            gens = cone.generators
            samples = [cone.interior_point()]
            weights = [1] + [3] * (len(gens) - 1)
            samples.append(tuple(sum(w * g[i] for w, g in zip(weights, gens)) for i in range(3)))
            weights = [5] + [2] * (len(gens) - 1)
            samples.append(tuple(sum(w * g[i] for w, g in zip(weights, gens)) for i in range(3)))
            for f in s.polys:
                faces = {frozenset(face_function(f, a).terms) for a in samples}
                assert len(faces) == 1


class TestTriangulate:
    def test_71_counts(self):
        tri = triangulate(dual_subdivision(sys71()))
        by_dim = {d: len(tri.cones_of_dim(d)) for d in (1, 2, 3)}
        assert by_dim == {1: 7, 2: 15, 3: 9}
        positive = [c for c in tri.cones if all(x > 0 for x in barycenter(c))]
        assert len(positive) == 25

    def test_idempotent(self):
        tri = triangulate(dual_subdivision(sys71()))
        tri2 = triangulate(tri)
        assert sorted(c.generators for c in tri.cones) == sorted(c.generators for c in tri2.cones)

    def test_no_new_rays(self):
        sub = dual_subdivision(sys71())
        tri = triangulate(sub)
        skeleton = set(sub.skeleton)
        for cone in tri.cones:
            assert set(cone.generators) <= skeleton

    def test_all_simplicial(self):
        tri = triangulate(dual_subdivision(sys71()))
        assert all(c.simplicial for c in tri.cones)

    def test_four_ray_cone_splits_in_two(self):
        sub = dual_subdivision(sys71())
        quads = [c for c in sub.cones if len(c.generators) == 4]
        assert len(quads) == 3
        tri = triangulate(sub)
        tri_gens = {c.generators for c in tri.cones}
        for quad in quads:
            pieces = [g for g in tri_gens if len(g) == 3 and set(g) <= set(quad.generators)]
            assert len(pieces) == 2


class TestConeData:
    def test_barycenters(self):
        assert barycenter(Cone((E1, P1))) == (3, 1, 1)
        assert barycenter(Cone((P,))) == P
        assert barycenter(Cone((P, P1))) == (3, 2, 2)

    def test_parallelepiped_examples(self):
        assert parallelepiped_points(Cone(((1, 0, 0), (2, 1, 1)))) == [(0, 0, 0)]
        assert parallelepiped_points(Cone(((1, 2), (2, 1)))) == [(0, 0), (1, 1), (2, 2)]
        assert parallelepiped_points(Cone(((5, 3),))) == [(0, 0)]

    def test_simple_examples(self):
        assert is_simple(Cone(((1, 0, 0), (2, 1, 1))))
        assert not is_simple(Cone(((1, 2), (2, 1))))
        assert is_simple(Cone((E1, E2, E3)))

    def test_simple_iff_trivial_parallelepiped(self):
        for gens in [((1, 2), (2, 1)), ((1, 3), (1, 1)), ((2, 2, 1), (0, 0, 1)), ((1, 0), (0, 1))]:
            cone = Cone(gens)
            assert is_simple(cone) == (parallelepiped_points(cone) == [(0,) * cone.n])

    def test_relint_membership(self):
        cone = Cone((E1, P1))
        assert cone.contains_relint((3, 1, 1))
        assert cone.contains_relint((Fraction(5, 2), Fraction(1, 2), Fraction(1, 2)))
        assert not cone.contains_relint(E1)
        assert not cone.contains_relint((1, 1, 1))

    def test_primitive_generators_required(self):
        with pytest.raises(ValueError):
            Cone(((2, 4),))
