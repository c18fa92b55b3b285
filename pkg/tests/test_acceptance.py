"""Acceptance suite: every exit criterion as an exact check with its stated
runtime budget, one printed pass/fail line per criterion.

All equality assertions are exact (integers and rationals); runtimes are
wall-clock seconds on the machine running the suite.
"""

import random
import time
from fractions import Fraction

from tripoint import ExactMatrix, MultiPoly, QQ
from tripoint.conditions import dim_forms_with_multiplicity
from tripoint.defect import defect, defect_mod_p
from tripoint.fibration import (base_fiber_points, classify_fiber,
                                degeneration_form, plane_split,
                                rational_roots_of_binary_form,
                                residual_quartic, special_fiber_parameters)
from tripoint.gallery import GALLERY, random_general_points
from tripoint.gram import gram_analysis
from tripoint.incidence import (ProjectivePoint, ProjectiveTransformation,
                                segre_points)
from tripoint.jets import is_node
from tripoint.scalars import GF
from tripoint.verify import (varchenko_bound,
                             verify_cyclotomic_system,
                             verify_exclusion_identity,
                             verify_reducibility_lemma)


def _report(criterion: str, ok: bool, detail: str = ""):
    status = "PASS" if ok else "FAIL"
    print(f"[{status}] {criterion}" + (f" -- {detail}" if detail else ""))
    assert ok, f"{criterion}: {detail}"


def _timed(budget: float, fn, *args, **kwargs):
    t0 = time.time()
    out = fn(*args, **kwargs)
    elapsed = time.time() - t0
    assert elapsed < budget, f"exceeded {budget}s budget ({elapsed:.1f}s)"
    return out, elapsed


class TestCriterion1Defects:
    """Defect reproduction at the reference models (exact, < 30 s each)."""

    def test_segre_delta_14(self, models):
        model = models["segre"]
        rep, dt = _timed(30, defect, model.quintic, model.points)
        _report("1a segre delta = 14", rep.delta == 14, f"delta={rep.delta} ({dt:.1f}s)")

    def test_eleven_quad_delta_11_rank_99(self, models):
        model = models["eleven-quad"]
        rep, dt = _timed(30, defect, model.quintic, model.points)
        _report("1b eleven-quad delta = 11 with rank 99",
                rep.delta == 11 and rep.rank == 99,
                f"delta={rep.delta} rank={rep.rank} ({dt:.1f}s)")

    def test_nine_quad_delta_10(self, models):
        model = models["nine-quad"]
        rep, dt = _timed(30, defect, model.quintic, model.points)
        _report("1c nine-quad(a=7) delta = 10", rep.delta == 10,
                f"delta={rep.delta} ({dt:.1f}s)")

    def test_nine_point_construction_delta_9(self, models):
        model = models["nine-point-a"]
        quads = model.points.coplanar_quadruplets
        lattice = gram_analysis(quads, model.points)
        lower_bound_met = lattice.rank == len(quads) + 1
        rep, dt = _timed(30, defect, model.quintic, model.points)
        _report("1d nine-point construction delta = 9 (lower bound via 9 "
                "independent planes)",
                lower_bound_met and rep.delta == 9,
                f"gram rank={lattice.rank} delta={rep.delta} ({dt:.1f}s)")


class TestCriterion2Dimensions:
    """Dimension counts of fat-point linear systems (exact, < 5 s each)."""

    def test_segre_order3_degree5(self):
        dim, dt = _timed(5, dim_forms_with_multiplicity, segre_points(), 3, 5)
        _report("2a Segre triple-point quintics: dimension 6", dim == 6,
                f"dim={dim} ({dt:.1f}s)")

    def test_segre_order1_degree2(self):
        dim, dt = _timed(5, dim_forms_with_multiplicity, segre_points(), 1, 2)
        _report("2b Segre quadrics: dimension 5", dim == 5,
                f"dim={dim} ({dt:.1f}s)")

    def test_eight_general_order3_degree5(self):
        cfg = random_general_points(3)
        dim, dt = _timed(5, dim_forms_with_multiplicity, cfg, 3, 5)
        _report("2c eight general points: dimension 6", dim == 6,
                f"dim={dim} ({dt:.1f}s)")


class TestCriterion3SmallT:
    """Small-t table: defect keyed to coplanar quadruplets (exact)."""

    def test_t5(self, models):
        d0 = defect(models["t5"].quintic, models["t5"].points).delta
        d1 = defect(models["t5-coplanar"].quintic, models["t5-coplanar"].points).delta
        q0 = len(models["t5"].points.coplanar_quadruplets)
        q1 = len(models["t5-coplanar"].points.coplanar_quadruplets)
        _report("3a t=5: delta 0 without quadruplet, 1 with",
                (q0, d0) == (0, 0) and (q1, d1) == (1, 1),
                f"general ({q0},{d0}); coplanar ({q1},{d1})")

    def test_t6(self, models):
        dg = defect(models["t6"].quintic, models["t6"].points).delta
        ds = defect(models["t6-special"].quintic, models["t6-special"].points).delta
        _report("3b t=6 family: delta 2 generic, 3 at the special member a=1",
                dg == 2 and ds == 3, f"generic={dg} special={ds}")


class TestCriterion4Incidence:
    """Quadruplet counts (exact, < 1 s each)."""

    def test_counts(self, models):
        t0 = time.time()
        n_segre = len(segre_points().coplanar_quadruplets)
        n_eleven = len(models["eleven-quad"].points.coplanar_quadruplets)
        n_nine = len(models["nine-quad"].points.coplanar_quadruplets)
        elapsed = time.time() - t0
        _report("4a quadruplet counts 15 / 11 / 9",
                (n_segre, n_eleven, n_nine) == (15, 11, 9),
                f"({n_segre},{n_eleven},{n_nine}) ({elapsed:.2f}s)")
        assert elapsed < 3

    def test_membership_property(self):
        quads = segre_points().coplanar_quadruplets
        counts = [sum(1 for q in quads if i in q) for i in range(10)]
        _report("4b every Segre point lies in exactly 6 of the 15 quadruplets",
                counts == [6] * 10, f"counts={set(counts)}")


class TestCriterion5Certification:
    """Ordinariness of every declared point and singular-locus scans."""

    def test_every_declared_point_certified(self, models):
        bad = []
        for name, model in models.items():
            if not GALLERY[name].ordinary:
                continue
            if not model.certificate.all_points_ordinary:
                bad.append(name)
        _report("5a every declared triple point of every gallery model "
                "certified ordinary", not bad, f"failures: {bad}")

    def test_scans_find_no_undeclared_points(self, models):
        """Scans at the default primes {7,11,13} are clean for every model
        whose parameters allow it; nine-quad(a=7) necessarily loses p = 7
        (its ninth and tenth points collide mod 7) and picks up a curve
        artifact mod 13, so its certificate extends to later primes; the
        heuristic flag is recorded either way."""
        slow = []
        for name, model in models.items():
            if not GALLERY[name].ordinary:
                continue
            locus = model.certificate.singular_locus
            assert locus.ok, name
            verdicts = {v.field: v.status for v in locus.verdicts}
            if name == "nine-quad":
                assert verdicts["GF(7)"] == "bad-reduction"
                assert len(locus.clean_fields) >= 3
            else:
                for p in (7, 11, 13):
                    assert verdicts[f"GF({p})"] == "clean", (name, p)
        # per-prime scan budget
        t0 = time.time()
        from tripoint.ffscan import singular_points_over
        singular_points_over(models["segre"].quintic, GF(13))
        dt = time.time() - t0
        _report("5b singular-locus scans clean (heuristic recorded), "
                "< 60 s per prime", dt < 60, f"scan at 13: {dt:.2f}s")


def _models_with_planes(models):
    return [(name, m) for name, m in models.items()
            if GALLERY[name].ordinary and m.points.coplanar_quadruplets]


class TestCriterion6Fibration:
    """Plane-projection pencils (exact, < 60 s per model)."""

    def test_generic_fiber_and_degeneration(self, models):
        failures = []
        for name, model in _models_with_planes(models):
            t0 = time.time()
            split = plane_split(model.quintic, model.points,
                                model.points.coplanar_quadruplets[0])
            special = {tuple(mu) for mu in special_fiber_parameters(split)}
            degen_roots = set()
            total_degree = 0
            for slot in range(4):
                form = degeneration_form(split, slot)
                if form.degree() != 5:
                    failures.append((name, f"slot {slot} degree {form.degree()}"))
                total_degree += form.degree()
                degen_roots.update(mu for mu, _m in
                                   rational_roots_of_binary_form(form))
            if total_degree != 20:
                failures.append((name, f"total degeneration {total_degree}"))
            # generic parameter: first (1:k) avoiding special and root values
            mu = None
            for k in range(1, 50):
                cand = (Fraction(k), Fraction(1))
                canon = ProjectivePoint(list(cand)).coords
                if canon not in special and canon not in degen_roots:
                    mu = cand
                    break
            Q = residual_quartic(split, mu)
            base = base_fiber_points(split)
            if not all(is_node(Q, P) for P in base):
                failures.append((name, "generic base point not a node"))
            rep = classify_fiber(split, mu)
            if rep.epsilon != 0:
                failures.append((name, f"generic epsilon {rep.epsilon}"))
            # exactly four singular points: confirmed over >= 1 good prime
            from tripoint.ffscan import singular_points_over
            confirmed = 0
            for p in (7, 11, 13, 17, 19, 23, 29):
                fld = GF(p)
                try:
                    found = set(singular_points_over(Q, fld))
                except Exception:
                    continue
                expected = {ProjectivePoint(
                    [fld.from_fraction(c) for c in P.coords], fld) for P in base}
                if found == expected:
                    confirmed += 1
                    break
            if not confirmed:
                failures.append((name, "generic fiber singular count"))
            assert time.time() - t0 < 60, name
        _report("6a generic fibers: 4 nodes, epsilon = 0; degeneration forms "
                "degree 5, total 20", not failures, f"failures: {failures}")

    def test_special_fiber_cases(self, models):
        segre = models["segre"]
        split = plane_split(segre.quintic, segre.points,
                            segre.points.coplanar_quadruplets[0])
        stats = [classify_fiber(split, tuple(mu))
                 for mu in special_fiber_parameters(split)]
        two_planes_ok = all(
            r.tag == "two-planes+quadric" and (r.r, r.s, r.epsilon) == (2, 4, 20)
            for r in stats) and len(stats) == 3
        t6 = models["t6"]
        split6 = plane_split(t6.quintic, t6.points,
                             t6.points.coplanar_quadruplets[0])
        reps6 = [classify_fiber(split6, tuple(mu))
                 for mu in special_fiber_parameters(split6)]
        plane_cubic_ok = (len(reps6) == 1 and reps6[0].tag == "plane+cubic"
                          and (reps6[0].r, reps6[0].s, reps6[0].epsilon) == (2, 2, 18))
        _report("6b special fibers match the epsilon cases (20 / 18)",
                two_planes_ok and plane_cubic_ok,
                f"segre: {[r.epsilon for r in stats]}, "
                f"t6: {[r.epsilon for r in reps6]}")


class TestCriterion7AppendixBounds:
    """Conic-pencil degree bounds on seeded instances (exact)."""

    def test_bounds(self):
        from tripoint.conic_pencil import conic_pencil_analysis
        from tripoint.multipoly import monomials_of_degree
        rng = random.Random(7)

        def rand_quad():
            return MultiPoly(QQ, 4, {e: Fraction(rng.randint(-4, 4))
                                     for e in monomials_of_degree(4, 2)})

        x = [MultiPoly.variable(QQ, 4, i) for i in range(4)]
        Q1 = x[0] * x[0] * rand_quad() + x[0] * x[1] * rand_quad() \
            + x[1] * x[1] * rand_quad()
        an1 = conic_pencil_analysis(Q1, "single-line")
        g1 = MultiPoly(QQ, 4, {(1, 0, 0, 0): Fraction(2),
                               (0, 0, 1, 0): Fraction(-1),
                               (0, 0, 0, 1): Fraction(3)})
        Q2 = x[1] * x[1] * rand_quad() + x[0] * x[1] * x[2] * g1 \
            + (x[0] * x[2]) ** 2 * MultiPoly.constant(QQ, 4, Fraction(5))
        an2 = conic_pencil_analysis(Q2, "two-lines")
        _report("7a det A degree <= 8 (single line) and <= 4 (two lines); "
                "tangency discriminant degree <= 2",
                an1.determinant_degree <= 8 and an2.determinant_degree <= 4
                and an2.tangency_discriminant.degree() <= 2,
                f"degrees {an1.determinant_degree}, {an2.determinant_degree}, "
                f"{an2.tangency_discriminant.degree()}")

    def test_multiplicity_two_at_off_line_singularity(self):
        from tripoint.conic_pencil import PencilError, conic_pencil_analysis
        from tripoint.multipoly import monomials_of_degree
        rng = random.Random(7)
        x = [MultiPoly.variable(QQ, 4, i) for i in range(4)]
        found = None
        for _ in range(60):
            A = MultiPoly(QQ, 4, {e: Fraction(rng.randint(-4, 4))
                                  for e in monomials_of_degree(4, 2)})
            Bt = {e: Fraction(rng.randint(-4, 4)) for e in monomials_of_degree(4, 2)}
            Bt[(0, 2, 0, 0)] = Fraction(0)
            Ct = {e: Fraction(rng.randint(-4, 4)) for e in monomials_of_degree(4, 2)}
            for e in ((0, 2, 0, 0), (0, 1, 1, 0), (0, 1, 0, 1)):
                Ct[e] = Fraction(0)
            Q = x[0] * x[0] * A + x[0] * x[1] * MultiPoly(QQ, 4, Bt) \
                + x[1] * x[1] * MultiPoly(QQ, 4, Ct)
            point = [Fraction(0), Fraction(1), Fraction(0), Fraction(0)]
            if any(Q.derivative(i).evaluate(point) != 0 for i in range(4)):
                continue
            try:
                an = conic_pencil_analysis(Q, "single-line")
            except PencilError:
                continue
            mults = [m for mu, m in an.singular_parameters
                     if mu == (Fraction(0), Fraction(1))]
            found = mults[0] if mults else 0
            break
        _report("7b singular point off the double line forces a root of "
                "multiplicity >= 2", found is not None and found >= 2,
                f"multiplicity={found}")


class TestCriterion8Theorems:
    """The verification suite (exact, < 120 s combined)."""

    def test_all_checks(self):
        t0 = time.time()
        v = varchenko_bound()
        cyc = verify_cyclotomic_system()
        ex = verify_exclusion_identity()
        r2 = verify_reducibility_lemma(2)
        r3 = verify_reducibility_lemma(3)
        elapsed = time.time() - t0
        _report("8a spectral bound 11 from lengths 14 and 155",
                v.ok, f"triple={v.triple_length} five={v.fivefold_length} "
                f"bound={v.bound}")
        _report("8b all 32 cyclotomic systems inconsistent",
                cyc.ok, f"inconsistent={cyc.inconsistent_count}/32")
        _report("8c exclusion identity holds as polynomials",
                ex.ok, f"sign={ex.sign}")
        _report("8d reducibility at a1 in {2, 3}: unique product quintic",
                r2.ok and r3.ok, "")
        assert elapsed < 120, f"{elapsed:.1f}s"


class TestCriterion9Lattice:
    """Gram-matrix statements (exact)."""

    def test_duco_fourteen_lines(self):
        cfg = segre_points()
        lat = gram_analysis(cfg.coplanar_quadruplets[:14], cfg)
        _report("9a duco gallery: 14 lines + H has nonzero determinant",
                lat.determinant != 0, f"det={lat.determinant}")

    def test_fifteen_line_kernel_vector(self):
        cfg = segre_points()
        lat = gram_analysis(cfg.coplanar_quadruplets, cfg)
        ok = lat.kernel_contains([1] * 15 + [-3]) and lat.rank == 15
        _report("9b 15-line lattice kernel contains (1,...,1,-3)", ok,
                f"rank={lat.rank}")

    def test_eleven_quad_lines_full_rank(self, models):
        model = models["eleven-quad"]
        lat = gram_analysis(model.points.coplanar_quadruplets, model.points)
        _report("9c eleven-quad: the 11 lines are independent",
                lat.rank == 12 and lat.determinant != 0,
                f"rank={lat.rank} det={lat.determinant}")


class TestCriterion10Consistency:
    """Cross-route consistency (exact)."""

    def test_delta_invariant_under_20_coordinate_changes(self, models):
        model = models["t6-special"]
        base = defect(model.quintic, model.points).delta
        rng = random.Random(2026)
        mismatches = 0
        for _ in range(20):
            while True:
                M = ExactMatrix(QQ, [[Fraction(rng.randint(-3, 3))
                                      for _ in range(5)] for _ in range(5)])
                if M.det() != 0:
                    break
            T = ProjectiveTransformation(M)
            rep = defect(T.apply_form(model.quintic),
                         T.apply_configuration(model.points))
            if rep.delta != base:
                mismatches += 1
        _report("10a delta invariant under 20 random projective coordinate "
                "changes", mismatches == 0, f"mismatches={mismatches}")

    def test_rank_agreement_at_three_good_primes(self, models):
        model = models["segre"]
        base = defect(model.quintic, model.points)
        ranks = [defect_mod_p(model.quintic, model.points, p).rank
                 for p in (101, 10007, 65537)]
        _report("10b rational rank agrees with GF(p) rank at three good "
                "primes", ranks == [base.rank] * 3, f"ranks={ranks}")

    def test_membership_for_every_model(self, models):
        bad = []
        for name, model in models.items():
            if not GALLERY[name].ordinary:
                continue
            rep = defect(model.quintic, model.points, check_membership=True)
            if not rep.membership_ok:
                bad.append(name)
        _report("10c every gallery quintic satisfies its own condition system",
                not bad, f"failures: {bad}")
