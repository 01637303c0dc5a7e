import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conesurf import (
    SurfaceSpec,
    build_surface,
    isomorphic,
    make_doubled_polygon,
    make_regular_4g_gon,
    make_torus,
)
from conesurf.errors import (
    AngleMismatch,
    ClosureViolation,
    DegenerateInput,
    ForestNotTrees,
    GluingMismatch,
    OrientationViolation,
    UnknownVertex,
)

TWO_PI = 2 * math.pi


def square_torus_spec(c_vector=-1 - 1j):
    return SurfaceSpec(
        vertices=((0, TWO_PI),),
        triangles=((0, 1, 2), (3, 4, 5)),
        gluing=((0, 3), (1, 4), (2, 5)),
        vectors={0: 1, 1: 1j, 2: c_vector, 3: -1, 4: -1j, 5: 1 + 1j},
        forest=(),
    )


class TestBuildSurface:
    def test_square_torus_valid(self):
        s = build_surface(square_torus_spec())
        assert s.genus() == 1
        assert len(s.vertex_ids) == 1
        assert s.cone_angle(0) == pytest.approx(TWO_PI, abs=1e-12)

    def test_closure_violation(self):
        with pytest.raises(ClosureViolation) as exc:
            build_surface(square_torus_spec(c_vector=-1 - 1.1j))
        assert exc.value.triangle == 0
        assert exc.value.residual == pytest.approx(0.1, abs=1e-12)

    def test_doubled_triangle_valid(self, doubled_triangle):
        s = doubled_triangle
        assert s.genus() == 0
        assert len(s.forest) == 2
        for v in s.vertex_ids:
            assert s.cone_angle(v) == pytest.approx(2 * math.pi / 3, abs=1e-12)

    def test_orientation_violation(self):
        spec = square_torus_spec()
        bad = SurfaceSpec(spec.vertices, ((0, 2, 1), (3, 5, 4)), spec.gluing,
                          spec.vectors, spec.forest)
        with pytest.raises(OrientationViolation):
            build_surface(bad)

    def test_gluing_mismatch(self):
        spec = square_torus_spec()
        vectors = dict(spec.vectors)
        vectors[4] = -1.5j
        vectors[5] = 1 + 1.5j  # keep triangle 1 closed, break the twin relation
        bad = SurfaceSpec(spec.vertices, spec.triangles, spec.gluing, vectors, ())
        with pytest.raises(GluingMismatch):
            build_surface(bad)

    def test_angle_mismatch(self):
        spec = square_torus_spec()
        bad = SurfaceSpec(((0, 4 * math.pi),), spec.triangles, spec.gluing,
                          spec.vectors, ())
        with pytest.raises(AngleMismatch):
            build_surface(bad)

    def test_forest_cycle_rejected(self, doubled_triangle):
        s = doubled_triangle
        spec = s.to_spec()
        bad = SurfaceSpec(spec.vertices, spec.triangles, spec.gluing, spec.vectors,
                          (0, 1, 2))
        with pytest.raises(ForestNotTrees):
            build_surface(bad)

    def test_unpaired_halfedge_rejected(self):
        spec = square_torus_spec()
        bad = SurfaceSpec(spec.vertices, spec.triangles, ((0, 3), (1, 4)),
                          spec.vectors, ())
        with pytest.raises(ValueError):
            build_surface(bad)

    def test_unknown_vertex(self, square_torus):
        with pytest.raises(UnknownVertex):
            square_torus.cone_angle(7)


class TestInvariants:
    def test_genus_examples(self, square_torus, doubled_triangle, octagon_surface):
        assert square_torus.genus() == 1
        assert doubled_triangle.genus() == 0
        assert octagon_surface.genus() == 2

    def test_octagon_counts(self, octagon_surface):
        s = octagon_surface
        assert len(s.vertex_ids) == 1
        assert len(s.halfedges) // 2 == 9
        assert len(s.triangles) == 6

    def test_octagon_cone_angle_by_corner_summation(self, octagon_surface):
        # oracle: the fan triangulation has every corner at the single vertex,
        # so the cone angle is the plain sum of all developed triangle angles
        pts = [cmath.exp(2j * math.pi * j / 8) for j in range(8)]
        total = 0.0
        for t in range(6):
            tri = (pts[0], pts[t + 1], pts[t + 2])
            for i in range(3):
                u = tri[(i + 1) % 3] - tri[i]
                w = tri[(i + 2) % 3] - tri[i]
                total += math.atan2((u.conjugate() * w).imag, (u.conjugate() * w).real)
        assert total == pytest.approx(6 * math.pi, abs=1e-9)
        assert octagon_surface.cone_angle(0) == pytest.approx(total, abs=1e-9)

    def test_doubled_pentagon_angles(self, doubled_pentagon):
        for v in doubled_pentagon.vertex_ids:
            assert doubled_pentagon.cone_angle(v) == pytest.approx(6 * math.pi / 5,
                                                                   abs=1e-12)

    def test_total_area(self, square_torus, doubled_triangle):
        assert square_torus.total_area() == pytest.approx(1.0, abs=1e-12)
        assert doubled_triangle.total_area() == pytest.approx(math.sqrt(3) / 2,
                                                              abs=1e-12)

    def test_gauss_bonnet(self, golden_surfaces):
        for s in golden_surfaces.values():
            total = sum(s.cone_angle(v) for v in s.vertex_ids)
            expected = TWO_PI * (2 * s.genus() + len(s.vertex_ids) - 2)
            assert abs(total - expected) <= 1e-9 * (1 + total)

    @settings(max_examples=25, deadline=None)
    @given(re=st.floats(-3, 3), im=st.floats(-3, 3))
    def test_area_scaling(self, re, im):
        w = complex(re, im)
        if abs(w) < 1e-3:
            return
        s = make_torus(1, 1j)
        scaled = s.scale(w)
        assert scaled.total_area() == pytest.approx(
            abs(w) ** 2 * s.total_area(), rel=1e-12)

    def test_cone_angle_invariant_under_relabeling(self, doubled_pentagon, rng):
        s = doubled_pentagon
        perm = rng.permutation(len(s.halfedges))
        mapping = {h: int(perm[i]) for i, h in enumerate(s.halfedges)}
        relabeled = s.relabel_halfedges(mapping)
        for v in s.vertex_ids:
            assert relabeled.cone_angle(v) == pytest.approx(s.cone_angle(v), abs=1e-12)


class TestConstructors:
    def test_make_torus_matches_square_spec(self, square_torus):
        reference = build_surface(square_torus_spec())
        assert isomorphic(square_torus, reference) is not None

    def test_make_torus_degenerate(self):
        with pytest.raises(DegenerateInput):
            make_torus(1, 2)  # collinear

    def test_doubled_polygon_needs_convexity(self):
        with pytest.raises(DegenerateInput):
            make_doubled_polygon([0, 1, 1 + 1j, 0.5 + 0.4j])  # reflex corner

    def test_doubled_pentagon_gauss_bonnet(self, doubled_pentagon):
        total = sum(doubled_pentagon.cone_angle(v) for v in doubled_pentagon.vertex_ids)
        assert total == pytest.approx(6 * math.pi, abs=1e-9)  # 2 pi (n - 2), n = 5

    def test_regular_4g_gon(self, octagon_surface):
        # genus 2 with a single zero of order 2g - 2 = 2: cone angle 2 pi (2 + 1)
        assert octagon_surface.genus() == 2
        assert octagon_surface.cone_angle(0) == pytest.approx(6 * math.pi, abs=1e-9)
        with pytest.raises(DegenerateInput):
            make_regular_4g_gon(1)

    def test_doubled_polygon_forest_is_fold_path(self, doubled_pentagon):
        s = doubled_pentagon
        assert len(s.forest) == 4
        covered = set()
        for e in s.forest:
            covered.add(s.origin(e))
            covered.add(s.origin(s.twin(e)))
        assert covered == set(s.vertex_ids)


class TestSerialization:
    def test_round_trip_exact(self, golden_surfaces):
        for s in golden_surfaces.values():
            text = s.to_json()
            rebuilt = build_surface(SurfaceSpec.from_json(text))
            assert rebuilt.to_json() == text
            for h in s.halfedges:
                assert rebuilt.vec(h) == s.vec(h)
                assert rebuilt.twin(h) == s.twin(h)
                assert rebuilt.next(h) == s.next(h)
            assert rebuilt.forest == s.forest

    def test_unknown_field_rejected(self, square_torus):
        text = square_torus.to_json().rstrip().rstrip("}")
        text += ', "color": 3}'
        with pytest.raises(ValueError, match="unknown fields"):
            SurfaceSpec.from_json(text)

    def test_missing_field_rejected(self):
        with pytest.raises(ValueError, match="missing fields"):
            SurfaceSpec.from_json('{"vertices": [], "triangles": []}')

    def test_vectors_survive_17_digits(self, skew_torus):
        s = skew_torus.scale(math.pi / 3)
        rebuilt = build_surface(SurfaceSpec.from_json(s.to_json()))
        for h in s.halfedges:
            assert rebuilt.vec(h) == s.vec(h)


class TestCanonicalEquality:
    def test_isomorphic_to_self(self, golden_surfaces):
        for s in golden_surfaces.values():
            assert isomorphic(s, s) is not None

    def test_not_isomorphic_after_scaling(self, square_torus):
        assert isomorphic(square_torus, square_torus.scale(2)) is None

    def test_isomorphic_under_relabeling(self, pillowcase, rng):
        perm = rng.permutation(len(pillowcase.halfedges))
        mapping = {h: int(perm[i]) for i, h in enumerate(pillowcase.halfedges)}
        relabeled = pillowcase.relabel_halfedges(mapping)
        assert isomorphic(pillowcase, relabeled) is not None
