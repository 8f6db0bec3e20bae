import pytest

from igusa.newton import (
    Facet,
    build_polyhedron,
    first_meet_locus,
    support_value,
    system_polyhedron,
    system_support_value,
)
from igusa.polycore import IntPolynomial, PolySystem, parse_polynomial

V2 = ["x", "y"]
V3 = ["x", "y", "z"]


def octic():
    return parse_polynomial("x^8+y^8+z^8+x^2*y^2*z^2", V3)


def hyperplane():
    return parse_polynomial("x+y-z", V3)


def sys71():
    return PolySystem(3, [hyperplane(), octic()])


class TestBuild:
    def test_octic_facets(self):
        gamma = build_polyhedron(octic())
        normals = {f.normal for f in gamma.facets}
        assert {(2, 1, 1), (1, 2, 1), (1, 1, 2)} <= normals
        assert {(1, 0, 0), (0, 1, 0), (0, 0, 1)} <= normals
        offsets = {f.normal: f.offset for f in gamma.facets}
        assert offsets[(2, 1, 1)] == 8
        assert set(gamma.vertices) == {(8, 0, 0), (0, 8, 0), (0, 0, 8), (2, 2, 2)}

    def test_system_polyhedron_normals(self):
        gamma = system_polyhedron(sys71())
        assert sorted(f.normal for f in gamma.facets) == [
            (0, 0, 1),
            (0, 1, 0),
            (1, 0, 0),
            (1, 1, 1),
            (1, 1, 2),
            (1, 2, 1),
            (2, 1, 1),
        ]

    def test_half_line(self):
        f = parse_polynomial("x", ["x"])
        gamma = build_polyhedron(f)
        assert gamma.vertices == [(1,)]
        assert [(fc.normal, fc.offset) for fc in gamma.facets] == [((1,), 1)]

    def test_two_vertex_curve(self):
        gamma = build_polyhedron(parse_polynomial("x^2+y^3", V2))
        assert set(gamma.vertices) == {(2, 0), (0, 3)}
        bounded = [f for f in gamma.facets if all(x > 0 for x in f.normal)]
        assert bounded == [Facet((3, 2), 6)]

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            build_polyhedron(IntPolynomial(2))


class TestSupportValue:
    def test_octic_values(self):
        gamma = build_polyhedron(octic())
        assert support_value(gamma, (2, 1, 1)) == 8
        assert support_value(gamma, (0, 0, 0)) == 0
        assert support_value(gamma, (1, 1, 1)) == 6

    def test_hyperplane(self):
        gamma = build_polyhedron(hyperplane())
        assert support_value(gamma, (1, 1, 1)) == 1

    def test_negative_rejected(self):
        gamma = build_polyhedron(hyperplane())
        with pytest.raises(ValueError):
            support_value(gamma, (1, -1, 0))

    def test_positive_homogeneity(self):
        gamma = build_polyhedron(octic())
        for a in [(1, 1, 1), (2, 1, 1), (0, 3, 5)]:
            base = support_value(gamma, a)
            for lam in (2, 3, 7):
                assert support_value(gamma, tuple(lam * x for x in a)) == lam * base


class TestFirstMeetLocus:
    def test_octic_interior_vertex(self):
        gamma = build_polyhedron(octic())
        fd = first_meet_locus(gamma, (1, 1, 1))
        assert fd.attaining == [(2, 2, 2)]
        assert fd.value == 6

    def test_hyperplane_edge(self):
        gamma = build_polyhedron(hyperplane())
        fd = first_meet_locus(gamma, (3, 1, 1))
        assert fd.attaining == [(0, 0, 1), (0, 1, 0)]
        assert fd.value == 1

    def test_zero_direction(self):
        gamma = build_polyhedron(octic())
        fd = first_meet_locus(gamma, (0, 0, 0))
        assert set(fd.attaining) == set(gamma.generators)
        assert fd.value == 0


class TestSystemSupport:
    def test_additivity_anchor(self):
        assert system_support_value(sys71(), (1, 1, 1)) == 7  # 1 + 6

    def test_zero(self):
        assert system_support_value(sys71(), (0, 0, 0)) == 0

    def test_power_family(self):
        sys_ = PolySystem(
            2,
            [parse_polynomial("x^2+y^2", V2), parse_polynomial("x^4+y^4+x*y", V2)],
        )
        assert system_support_value(sys_, (1, 1)) == 4  # 2 + 2

    def test_matches_polyhedron_sum(self):
        s = sys71()
        gamma = system_polyhedron(s)
        for a in [(1, 1, 1), (2, 1, 1), (1, 0, 0), (0, 2, 3), (5, 1, 2)]:
            assert support_value(gamma, a) == system_support_value(s, a)

    def test_zero_offset_facets_are_coordinate_normals(self):
        # On a convenient system every facet supported at level zero comes
        # from a coordinate hyperplane.
        for s in (sys71(), PolySystem(2, [parse_polynomial("x^2+y^2", V2),
                                          parse_polynomial("x^4+y^4+x*y", V2)])):
            gamma = system_polyhedron(s)
            for facet in gamma.facets:
                if facet.offset == 0:
                    assert sum(facet.normal) == 1 and set(facet.normal) <= {0, 1}

    def test_face_additivity(self):
        # Dot-value decomposition: the face of the sum at a is attained
        # exactly by sums of per-factor attaining points.
        s = sys71()
        gamma = system_polyhedron(s)
        for a in [(1, 1, 1), (3, 1, 1), (1, 4, 2), (0, 1, 1)]:
            parts = [first_meet_locus(build_polyhedron(f), a) for f in s.polys]
            total = first_meet_locus(gamma, a)
            assert total.value == sum(p.value for p in parts)
            sums = {
                tuple(x + y for x, y in zip(m1, m2))
                for m1 in parts[0].attaining
                for m2 in parts[1].attaining
            }
            # Attaining points of the pruned generator set all arise as sums.
            assert set(total.attaining) <= sums
