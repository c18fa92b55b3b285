import time

import pytest

from tripoint import MultiPoly
from tripoint.ffscan import (good_reduction, projective_point_count,
                             singular_points_over)
from tripoint.incidence import ProjectivePoint, segre_cubic, segre_points
from tripoint.scalars import GF, DomainError, QuadraticExtension


def test_segre_cubic_mod_13_exactly_the_ten_nodes():
    fld = GF(13)
    found = set(singular_points_over(segre_cubic(), fld))
    expected = {ProjectivePoint([fld.from_fraction(c) for c in P.coords], fld)
                for P in segre_points()}
    assert found == expected


def test_smooth_quadric_clean():
    Q = MultiPoly.parse("x0^2+x1^2+x2^2+x3^2+x4^2", 5)
    assert singular_points_over(Q, GF(7)) == []


def test_coordinate_line_in_p3():
    found = singular_points_over(MultiPoly.parse("x0*x1", 4), GF(5))
    assert len(found) == 6  # the line x0 = x1 = 0 over GF(5)
    assert all(p.coords[0] == 0 and p.coords[1] == 0 for p in found)


def test_point_counts():
    assert projective_point_count(5, 3) == 156
    assert projective_point_count(13, 4) == 30941


def test_scan_speed_budget_p31():
    F = segre_cubic() * MultiPoly.parse("x0*x3-x4^2+x1*x2", 5)
    t0 = time.time()
    singular_points_over(F, GF(31))  # ~a million projective points
    assert time.time() - t0 < 20


def test_quadratic_extension_scan():
    fld = QuadraticExtension(5)
    found = set(singular_points_over(segre_cubic(), fld))
    expected = {ProjectivePoint([fld.from_fraction(c) for c in P.coords], fld)
                for P in segre_points()}
    assert found == expected  # no extra singular points over GF(25)


def test_bad_reduction_rejected():
    F = MultiPoly.parse("7*x0^3+7*x1^3", 5)
    assert not good_reduction(F, GF(7))
    with pytest.raises(DomainError):
        singular_points_over(F, GF(7))
    G = MultiPoly.parse("1/7*x0^3+x1^3", 5)
    assert not good_reduction(G, GF(7))
    assert good_reduction(G, GF(11))
