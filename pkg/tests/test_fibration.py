from fractions import Fraction

import pytest

from tripoint import MultiPoly, QQ
from tripoint.fibration import (FibrationError, base_fiber_points,
                                classify_fiber, degeneration_form, fiber_stats,
                                plane_split, rational_roots_of_binary_form,
                                recombined, residual_quartic,
                                special_fiber_parameters)
from tripoint.incidence import PointConfiguration, ProjectivePoint
from tripoint.jets import is_node, jet_expand
from tripoint.multipoly import squarefree_structure
from tripoint.scalars import GF


GENERIC_MU = (Fraction(2), Fraction(1))


@pytest.fixture(scope="module")
def segre_split(segre_model):
    return plane_split(segre_model.quintic, segre_model.points,
                       segre_model.points.coplanar_quadruplets[0])


class TestPlaneSplit:
    def test_recombination_exact(self, segre_split):
        assert recombined(segre_split) == segre_split.quintic

    def test_plane_not_contained_rejected(self):
        coords = [(0, 0, 1, 0, 0), (0, 0, 0, 1, 0), (0, 0, 0, 0, 1), (0, 0, 1, 1, 1)]
        cfg = PointConfiguration([ProjectivePoint(list(c)) for c in coords])
        F = MultiPoly.parse("x2^5+x0^5+x1^5+x3^5+x4^5", 5)
        with pytest.raises(FibrationError, match="not contained"):
            plane_split(F, cfg, (0, 1, 2, 3))

    def test_forms_have_degree_four(self, segre_split):
        assert segre_split.f0.degree() == 4
        assert segre_split.f1.degree() == 4


class TestResidualQuartic:
    def test_base_points_are_double_points_of_every_fiber(self, segre_split):
        for mu in [(1, 0), (0, 1), (1, 1), (3, 2), GENERIC_MU]:
            Q = residual_quartic(segre_split, mu)
            assert Q.degree() == 4
            for P in base_fiber_points(segre_split):
                jet = jet_expand(Q, P, 1)
                assert all(p.is_zero() for p in jet.pieces)

    def test_generic_fiber_nodal(self, segre_split):
        Q = residual_quartic(segre_split, GENERIC_MU)
        for P in base_fiber_points(segre_split):
            assert is_node(Q, P)

    def test_special_fiber_divisible_by_plane(self, segre_split):
        # fibers over the special parameters contain configuration planes
        mu = special_fiber_parameters(segre_split)[0]
        rep = classify_fiber(segre_split, tuple(mu))
        assert rep.tag == "two-planes+quadric"


class TestFiberStats:
    def test_generic(self, segre_split):
        assert fiber_stats(segre_split, GENERIC_MU) == (0, 0, 0)

    def test_two_planes_fiber(self, segre_split):
        mu = special_fiber_parameters(segre_split)[0]
        assert fiber_stats(segre_split, tuple(mu)) == (2, 4, 20)

    def test_plane_cubic_fiber(self, models):
        model = models["t6"]
        split = plane_split(model.quintic, model.points,
                            model.points.coplanar_quadruplets[0])
        specials = special_fiber_parameters(split)
        assert len(specials) == 1
        rep = classify_fiber(split, tuple(specials[0]))
        assert rep.tag == "plane+cubic"
        assert (rep.r, rep.s, rep.epsilon) == (2, 2, 18)
        assert rep.chi_plus_epsilon == ("<=", 24)


class TestClassification:
    def test_generic_tag(self, segre_split):
        rep = classify_fiber(segre_split, GENERIC_MU)
        assert rep.tag == "generic-nodal"
        assert rep.epsilon == 0

    def test_all_segre_special_fibers(self, segre_split):
        params = special_fiber_parameters(segre_split)
        assert len(params) == 3
        for mu in params:
            rep = classify_fiber(segre_split, tuple(mu))
            assert rep.tag == "two-planes+quadric"
            assert (rep.r, rep.s, rep.epsilon) == (2, 4, 20)
            assert rep.chi_plus_epsilon == ("<=", 26)


class TestDegeneration:
    def test_degree_five_with_five_simple_roots(self, segre_split):
        total = 0
        for slot in range(4):
            form = degeneration_form(segre_split, slot)
            assert form.degree() == 5
            profile, sf_degree = squarefree_structure(form)
            assert profile == [(1, 5)] and sf_degree == 5
            total += form.degree()
        assert total == 20

    def test_node_fails_exactly_at_roots(self, segre_split):
        Pj = base_fiber_points(segre_split)[0]
        form = degeneration_form(segre_split, 0)
        for mu, mult in rational_roots_of_binary_form(form):
            assert mult == 1
            Q = residual_quartic(segre_split, mu)
            assert not is_node(Q, Pj)
        assert is_node(residual_quartic(segre_split, GENERIC_MU), Pj)

    def test_special_parameters_are_degeneration_roots(self, segre_split):
        roots = {mu for mu, _ in
                 rational_roots_of_binary_form(degeneration_form(segre_split, 0))}
        for mu in special_fiber_parameters(segre_split):
            assert tuple(mu) in roots


def test_fiber_singular_count_heuristic(segre_split):
    # the generic fiber has exactly four singular points over suitable primes
    from tripoint.ffscan import singular_points_over
    Q = residual_quartic(segre_split, GENERIC_MU)
    base = base_fiber_points(segre_split)
    clean = 0
    for p in (7, 11, 13, 17, 19, 23):
        fld = GF(p)
        try:
            found = set(singular_points_over(Q, fld))
        except Exception:
            continue
        expected = {ProjectivePoint([fld.from_fraction(c) for c in P.coords], fld)
                    for P in base}
        if found == expected:
            clean += 1
    assert clean >= 3


def test_tags_stable_under_plane_fixing_transformation(segre_model):
    # a change of coordinates preserving V(x0, x1) leaves the tags alone
    from tripoint import ExactMatrix
    from tripoint.incidence import ProjectiveTransformation
    split = plane_split(segre_model.quintic, segre_model.points,
                        segre_model.points.coplanar_quadruplets[0])
    rows = [[1, 2, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 1, 0],
            [0, 0, 0, 1, 0], [0, 0, 3, 0, 1]]
    T = ProjectiveTransformation(ExactMatrix(QQ, rows))
    F2 = T.apply_form(split.quintic)
    cfg2 = T.apply_configuration(split.cfg)
    split2 = plane_split(F2, cfg2, split.base_indices)
    tags1 = sorted(classify_fiber(split, tuple(mu)).tag
                   for mu in special_fiber_parameters(split))
    tags2 = sorted(classify_fiber(split2, tuple(mu)).tag
                   for mu in special_fiber_parameters(split2))
    assert tags1 == tags2
