import json
import random
from fractions import Fraction

import pytest

from tripoint import ExactMatrix, QQ
from tripoint.incidence import (FRAME_TARGETS, PointConfiguration,
                                ProjectivePoint, ProjectiveTransformation,
                                collinear, coplanar, is_segre, normalize_frame,
                                segre_points)
from tripoint.scalars import GF


def pt(*coords):
    return ProjectivePoint(list(coords))


class TestPredicates:
    def test_first_four_segre_points_coplanar(self):
        p = segre_points()
        assert coplanar(p[0], p[1], p[2], p[3])  # all on V(x0, x1)

    def test_p1_p2_p3_p5_not_coplanar(self):
        p = segre_points()
        assert not coplanar(p[0], p[1], p[2], p[4])

    def test_repeated_points_rejected(self):
        a, b = pt(1, 0, 0, 0, 0), pt(0, 1, 0, 0, 0)
        with pytest.raises(ValueError):
            collinear(a, b, pt(2, 0, 0, 0, 0))  # same point as a

    def test_collinear(self):
        assert collinear(pt(1, 0, 0, 0, 0), pt(0, 1, 0, 0, 0), pt(1, 1, 0, 0, 0))
        assert not collinear(pt(1, 0, 0, 0, 0), pt(0, 1, 0, 0, 0), pt(0, 0, 1, 0, 0))


class TestQuadruplets:
    def test_segre_has_fifteen(self):
        assert len(segre_points().coplanar_quadruplets) == 15

    def test_eleven_quadruplet_family(self):
        pts = list(segre_points())[:8]
        a = Fraction(3)
        pts += [pt(1, a, a, 0, 0), pt(1, a, a, a, a)]
        assert len(PointConfiguration(pts).coplanar_quadruplets) == 11

    def test_nine_quadruplet_family(self):
        pts = list(segre_points())[:8]
        a = Fraction(7)
        pts += [pt(1, 1, a, 0, 0), pt(1, 1, a, a, a)]
        assert len(PointConfiguration(pts).coplanar_quadruplets) == 9

    def test_membership_count_six_each(self):
        quads = segre_points().coplanar_quadruplets
        for i in range(10):
            assert sum(1 for q in quads if i in q) == 6

    def test_quadruplets_invariant_under_transformation(self):
        cfg = segre_points()
        T = ProjectiveTransformation(ExactMatrix(QQ, [
            [1, 2, 0, 0, 1], [0, 1, 0, 0, 0], [3, 0, 1, 0, 0],
            [0, 0, 0, 1, 4], [0, 0, 0, 0, 1]]))
        assert T.apply_configuration(cfg).coplanar_quadruplets == cfg.coplanar_quadruplets


class TestConstraints:
    def test_segre_clean(self):
        assert segre_points().constraints().ok

    def test_collinear_triple_flagged(self):
        cfg = PointConfiguration([pt(1, 0, 0, 0, 0), pt(0, 1, 0, 0, 0),
                                  pt(1, 1, 0, 0, 0), pt(0, 0, 1, 0, 0)])
        rep = cfg.constraints()
        assert rep.collinear_triples == ((0, 1, 2),)
        assert not rep.ok

    def test_seven_points_in_hyperplane_flagged(self):
        coords = [(1, 0, 0, 0, 0), (0, 1, 0, 0, 0), (0, 0, 1, 0, 0),
                  (0, 0, 0, 1, 0), (1, 1, 1, 1, 0), (1, 2, 3, 4, 0),
                  (2, 3, 1, 7, 0)]
        cfg = PointConfiguration([pt(*c) for c in coords])
        rep = cfg.constraints()
        assert rep.overloaded_hyperplanes
        assert set(rep.overloaded_hyperplanes[0]) == set(range(7))

    def test_five_points_on_plane_flagged(self):
        coords = [(0, 0, 1, 0, 0), (0, 0, 0, 1, 0), (0, 0, 0, 0, 1),
                  (0, 0, 1, 1, 1), (0, 0, 1, 2, 3), (1, 0, 0, 0, 0)]
        cfg = PointConfiguration([pt(*c) for c in coords])
        assert cfg.constraints().overloaded_planes


class TestNormalizeFrame:
    def test_standard_frame_gives_identity(self):
        pts = [ProjectivePoint(list(c)) for c in FRAME_TARGETS]
        T = normalize_frame(pts)
        eye = ExactMatrix.identity(QQ, 5)
        # up to scale: T(e_i) = e_i projectively
        for p in pts:
            assert T.apply_point(p) == p

    def test_postcondition_replay(self):
        pts = [pt(1, 2, 3, 1, 5), pt(0, 1, 1, 2, 1), pt(1, 0, 0, 1, 1),
               pt(2, 1, 1, 1, 0), pt(1, 1, 0, 0, 1)]
        T = normalize_frame(pts)
        targets = [ProjectivePoint(list(c)) for c in FRAME_TARGETS]
        for p, q in zip(pts, targets):
            assert T.apply_point(p) == q

    def test_renormalization_recovers_map_up_to_frame_torus(self):
        """Five points determine the map only up to the diagonal stabiliser
        of the frame, so N(S*pts) * S * N(pts)^{-1} must fix each target."""
        pts = [pt(1, 2, 3, 1, 5), pt(0, 1, 1, 2, 1), pt(1, 0, 0, 1, 1),
               pt(2, 1, 1, 1, 0), pt(1, 1, 0, 0, 1)]
        T = normalize_frame(pts)
        rng = random.Random(7)
        for _ in range(3):
            while True:
                S = ExactMatrix(QQ, [[Fraction(rng.randint(-3, 3))
                                      for _ in range(5)] for _ in range(5)])
                if S.det() != 0:
                    break
            S = ProjectiveTransformation(S)
            T2 = normalize_frame([S.apply_point(p) for p in pts])
            residual = T2 * S * ProjectiveTransformation(T.matrix.inverse())
            for c in FRAME_TARGETS:
                q = ProjectivePoint(list(c))
                assert residual.apply_point(q) == q

    def test_degenerate_input_rejected(self):
        pts = [pt(1, 0, 0, 0, 0), pt(0, 1, 0, 0, 0), pt(0, 0, 1, 0, 0),
               pt(0, 0, 0, 1, 0), pt(1, 1, 0, 0, 0)]  # rank 4
        with pytest.raises(ValueError):
            normalize_frame(pts)


class TestSegre:
    def test_standard_model_is_segre(self):
        assert is_segre(segre_points())

    def test_eleven_quadruplet_configuration_is_not(self):
        pts = list(segre_points())[:8]
        a = Fraction(3)
        pts += [pt(1, a, a, 0, 0), pt(1, a, a, a, a)]
        assert not is_segre(PointConfiguration(pts))

    def test_seeded_random_ten_points_fail(self):
        rng = random.Random(12)
        pts = []
        while len(pts) < 10:
            c = [rng.randint(-3, 3) for _ in range(5)]
            if all(v == 0 for v in c):
                continue
            P = ProjectivePoint(c)
            if P not in pts:
                pts.append(P)
        cfg = PointConfiguration(pts)
        assert len(cfg.coplanar_quadruplets) != 15 or not is_segre(cfg)

    def test_invariance_under_permutation_and_transformation(self):
        pts = list(segre_points())
        rng = random.Random(4)
        rng.shuffle(pts)
        cfg = PointConfiguration(pts)
        assert is_segre(cfg)
        T = ProjectiveTransformation(ExactMatrix(QQ, [
            [1, 0, 0, 2, 0], [0, 1, 0, 0, 0], [0, 1, 1, 0, 0],
            [0, 0, 0, 1, 0], [5, 0, 0, 0, 1]]))
        assert is_segre(T.apply_configuration(cfg))

    def test_wrong_cardinality_rejected(self):
        with pytest.raises(ValueError):
            is_segre(PointConfiguration(list(segre_points())[:8]))


def test_json_round_trip(tmp_path):
    cfg = segre_points()
    path = tmp_path / "cfg.json"
    cfg.save(path)
    assert PointConfiguration.load(path) == cfg
    # prime-field configurations too
    F = GF(11)
    cfg7 = PointConfiguration([ProjectivePoint([1, 4, 0, 0, 0], F),
                               ProjectivePoint([0, 1, 5, 3, 0], F)])
    data = json.dumps(cfg7.to_json())
    assert PointConfiguration.from_json(json.loads(data)) == cfg7
