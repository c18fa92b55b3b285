"""Projection of a quintic threefold from a 2-plane it contains.

After moving the plane to V(x0, x1) the quintic splits as
``F = x0*f0 + x1*f1`` (canonically: every x0-divisible monomial feeds f0).
The hyperplane H_mu = {x0 = mu0*s, x1 = mu1*s} meets X in the plane plus a
residual quartic surface ``(mu0*f0 + mu1*f1)(mu0*s, mu1*s, x2, x3, x4)`` in
coordinates (s, x2, x3, x4); the four triple points on the plane are double
points of every fiber.  This module computes fiber statistics (r, s,
epsilon = s + 8r), classifies reducible fibers against the configuration's
planes, and assembles the degeneration determinant of each base point as a
binary form in (mu0, mu1).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .incidence import (PointConfiguration, ProjectivePoint,
                        ProjectiveTransformation)
from .jets import is_node, quadratic_jet_matrix
from .linalg import ExactMatrix
from .multipoly import MultiPoly, linear_factor_test, monomials_of_degree
from .scalars import QQ, Domain


class FibrationError(ValueError):
    pass


@dataclass(frozen=True)
class PlaneSplit:
    """A quintic normalised so the distinguished plane is V(x0, x1)."""

    quintic: MultiPoly                  # in the normalised coordinates
    f0: MultiPoly
    f1: MultiPoly
    cfg: PointConfiguration             # transformed configuration
    base_indices: tuple[int, int, int, int]
    transform: ProjectiveTransformation  # original -> normalised coordinates

    @property
    def base_points(self) -> tuple[ProjectivePoint, ...]:
        return tuple(self.cfg[i] for i in self.base_indices)


def plane_split(F: MultiPoly, cfg: PointConfiguration,
                quadruplet: Sequence[int]) -> PlaneSplit:
    """Normalise the plane spanned by a coplanar quadruplet to V(x0, x1) and
    split the quintic; fails if the plane is not inside V(F)."""
    quad = tuple(quadruplet)
    if tuple(sorted(quad)) not in set(cfg.coplanar_quadruplets):
        raise FibrationError(f"points {quad} are not a coplanar quadruplet")
    dom = F.domain
    pts = [cfg[i] for i in quad]
    span = ExactMatrix(dom, [list(p.coords) for p in pts])
    ideal = span.kernel_basis()
    if len(ideal) != 2:
        raise FibrationError("quadruplet does not span a 2-plane")
    rows = [list(v) for v in ideal]
    # complete to an invertible matrix with unit rows
    for i in range(5):
        unit = [dom.one() if j == i else dom.zero() for j in range(5)]
        M = ExactMatrix(dom, rows + [unit])
        if M.rank() == len(rows) + 1:
            rows.append(unit)
        if len(rows) == 5:
            break
    T = ProjectiveTransformation(ExactMatrix(dom, rows))
    Fn = T.apply_form(F)
    cfgn = T.apply_configuration(cfg)
    f0_terms, f1_terms = {}, {}
    for e, c in Fn.terms.items():
        if e[0] >= 1:
            f0_terms[(e[0] - 1,) + e[1:]] = c
        elif e[1] >= 1:
            f1_terms[(e[0], e[1] - 1) + e[2:]] = c
        else:
            raise FibrationError("the plane is not contained in the quintic")
    return PlaneSplit(Fn, MultiPoly(dom, 5, f0_terms), MultiPoly(dom, 5, f1_terms),
                      cfgn, quad, T)


def recombined(split: PlaneSplit) -> MultiPoly:
    x0 = MultiPoly.variable(split.quintic.domain, 5, 0)
    x1 = MultiPoly.variable(split.quintic.domain, 5, 1)
    return x0 * split.f0 + x1 * split.f1


# -- residual quartics ---------------------------------------------------------


def _fiber_targets(dom: Domain, mu: tuple) -> list[MultiPoly]:
    """Substitution P^4 -> fiber coordinates (s, x2, x3, x4):
    x0 = mu0*s, x1 = mu1*s."""
    s = MultiPoly.variable(dom, 4, 0)
    return [s.scale(mu[0]), s.scale(mu[1])] + \
        [MultiPoly.variable(dom, 4, i) for i in range(1, 4)]


def residual_quartic(split: PlaneSplit, mu: tuple) -> MultiPoly:
    """The fiber quartic over mu = (mu0 : mu1), in coordinates
    (s, x2, x3, x4)."""
    dom = split.quintic.domain
    mu = (dom.coerce(mu[0]), dom.coerce(mu[1]))
    if dom.is_zero(mu[0]) and dom.is_zero(mu[1]):
        raise FibrationError("pencil parameter must be a point of P^1")
    targets = _fiber_targets(dom, mu)
    g = split.f0.scale(mu[0]) + split.f1.scale(mu[1])
    return g.compose(targets)


def fiber_point(split: PlaneSplit, idx: int, mu: tuple) -> ProjectivePoint | None:
    """Fiber coordinates of configuration point ``idx`` if it lies on H_mu."""
    dom = split.quintic.domain
    P = split.cfg[idx]
    mu0, mu1 = dom.coerce(mu[0]), dom.coerce(mu[1])
    p0, p1 = P.coords[0], P.coords[1]
    if not dom.is_zero(dom.sub(dom.mul(mu1, p0), dom.mul(mu0, p1))):
        return None
    if not dom.is_zero(mu0):
        s = dom.div(p0, mu0)
    elif not dom.is_zero(mu1):
        s = dom.div(p1, mu1)
    else:
        raise FibrationError("invalid pencil parameter")
    return ProjectivePoint([s, P.coords[2], P.coords[3], P.coords[4]], dom)


def base_fiber_points(split: PlaneSplit) -> tuple[ProjectivePoint, ...]:
    dom = split.quintic.domain
    return tuple(ProjectivePoint([dom.zero()] + list(split.cfg[i].coords[2:]), dom)
                 for i in split.base_indices)


@dataclass(frozen=True)
class FiberReport:
    mu: tuple[str, str]
    quartic: str
    r: int
    s: int
    epsilon: int
    tag: str
    chi_plus_epsilon: tuple[str, int] | None   # ("<=", 24) style bound

    def to_json(self) -> dict:
        return {"mu": list(self.mu), "quartic": self.quartic, "r": self.r,
                "s": self.s, "epsilon": self.epsilon, "tag": self.tag,
                "chi_plus_epsilon": list(self.chi_plus_epsilon)
                if self.chi_plus_epsilon else None}


def fiber_stats(split: PlaneSplit, mu: tuple) -> tuple[int, int, int]:
    """(r, s, epsilon): triple points on the fiber off the plane, base points
    that fail the node test, and epsilon = s + 8r."""
    Q = residual_quartic(split, mu)
    r = 0
    for idx in range(len(split.cfg)):
        if idx in split.base_indices:
            continue
        if fiber_point(split, idx, mu) is not None:
            r += 1
    s = sum(1 for P in base_fiber_points(split) if not is_node(Q, P))
    return r, s, s + 8 * r


_CASE_BOUNDS = {
    "plane+cubic": ("<=", 24),
    "two-quadric-cones": ("==", 23),
    "two-planes+quadric": ("<=", 26),
}


def _candidate_plane_forms(split: PlaneSplit, mu: tuple) -> list[MultiPoly]:
    """Linear forms (in fiber coordinates) of configuration planes other than
    the base plane that lie inside H_mu."""
    dom = split.quintic.domain
    mu0, mu1 = dom.coerce(mu[0]), dom.coerce(mu[1])
    targets = _fiber_targets(dom, (mu0, mu1))
    out = []
    base = tuple(sorted(split.base_indices))
    for quad in split.cfg.coplanar_quadruplets:
        if tuple(sorted(quad)) == base:
            continue
        if any(fiber_point(split, i, (mu0, mu1)) is None for i in quad):
            continue
        span = ExactMatrix(dom, [list(split.cfg[i].coords) for i in quad])
        for ideal_vec in span.kernel_basis():
            L = MultiPoly(dom, 5, {
                tuple(1 if j == k else 0 for j in range(5)): dom.coerce(v)
                for k, v in enumerate(ideal_vec) if not dom.is_zero(dom.coerce(v))})
            Lf = L.compose(targets)
            if not Lf.is_zero():
                out.append(Lf)
                break
    return out


def _quadric_through(dom: Domain, singular_at: ProjectivePoint,
                     through: Sequence[ProjectivePoint]) -> MultiPoly | None:
    """The quadric surface in P^3 singular at one point and through the given
    points, when it is unique up to scale."""
    basis = monomials_of_degree(4, 2)
    rows = []
    mono_polys = [MultiPoly.monomial(dom, e) for e in basis]
    for i in range(4):
        rows.append([m.derivative(i).evaluate(list(singular_at.coords))
                     for m in mono_polys])
    for P in through:
        rows.append([m.evaluate(list(P.coords)) for m in mono_polys])
    M = ExactMatrix(dom, rows, ncols=len(basis))
    kb = M.kernel_basis()
    if len(kb) != 1:
        return None
    return MultiPoly(dom, 4, dict(zip(basis, (dom.coerce(v) for v in kb[0]))))


def _exact_quadric_division(Q: MultiPoly, C: MultiPoly) -> MultiPoly | None:
    """Solve C * D = Q for a quadric D, if possible (linear in D)."""
    dom = Q.domain
    basis = monomials_of_degree(4, 2)
    cols = [C * MultiPoly.monomial(dom, e) for e in basis]
    quartic_basis = monomials_of_degree(4, 4)
    M = ExactMatrix(dom, [[col.coefficient(e) for col in cols]
                          for e in quartic_basis], ncols=len(basis))
    rhs = [Q.coefficient(e) for e in quartic_basis]
    sol = M.solve(rhs)
    if sol is None:
        return None
    return MultiPoly(dom, 4, dict(zip(basis, (dom.coerce(v) for v in sol))))


def classify_fiber(split: PlaneSplit, mu: tuple) -> FiberReport:
    """Tag the fiber over mu by exact linear-factor tests against the
    configuration's planes, with a jet-based search for the union of two
    quadric cones; unresolved fibers are tagged ``irreducible-other``."""
    dom = split.quintic.domain
    Q = residual_quartic(split, mu)
    r, s, eps = fiber_stats(split, mu)
    plane_forms = _candidate_plane_forms(split, mu)
    factors = []
    work = Q
    for L in plane_forms:
        ok, quotient = linear_factor_test(work, L)
        if ok:
            factors.append(L)
            work = quotient
    tag = None
    if len(factors) >= 2:
        tag = "two-planes+quadric"
    elif len(factors) == 1:
        tag = "plane+cubic"
    else:
        tag = _try_two_cones(split, mu, Q) or (
            "generic-nodal" if (r, s) == (0, 0) else "irreducible-other")
    mu_str = (dom.to_str(dom.coerce(mu[0])), dom.to_str(dom.coerce(mu[1])))
    return FiberReport(mu_str, Q.to_string(), r, s, eps, tag,
                       _CASE_BOUNDS.get(tag))


def _try_two_cones(split: PlaneSplit, mu: tuple, Q: MultiPoly) -> str | None:
    """Detect the union of two quadric cones whose vertices are the two
    fiber triple points off the base plane."""
    dom = split.quintic.domain
    off = [fiber_point(split, i, mu)
           for i in range(len(split.cfg)) if i not in split.base_indices]
    off = [p for p in off if p is not None]
    if len(off) != 2:
        return None
    base_pts = list(base_fiber_points(split))
    for vertex, other in ((off[0], off[1]), (off[1], off[0])):
        cone = _quadric_through(dom, vertex, base_pts + [other])
        if cone is None:
            continue
        rest = _exact_quadric_division(Q, cone)
        if rest is None:
            continue
        if (quadratic_jet_matrix(cone).rank() == 3
                and quadratic_jet_matrix(rest).rank() == 3):
            return "two-quadric-cones"
    return None


def special_fiber_parameters(split: PlaneSplit) -> list[tuple]:
    """Pencil parameters whose hyperplane contains a configuration plane
    other than the base plane (deduplicated, deterministic order)."""
    dom = split.quintic.domain
    base = tuple(sorted(split.base_indices))
    seen = []
    for quad in split.cfg.coplanar_quadruplets:
        if tuple(sorted(quad)) == base:
            continue
        ratios = []
        ok = True
        for i in quad:
            P = split.cfg[i]
            p0, p1 = P.coords[0], P.coords[1]
            if dom.is_zero(p0) and dom.is_zero(p1):
                continue  # point on the base plane, no constraint
            ratios.append((p0, p1))
        if not ratios:
            continue
        mu0, mu1 = ratios[0]
        for a, b in ratios[1:]:
            if not dom.is_zero(dom.sub(dom.mul(mu1, a), dom.mul(mu0, b))):
                ok = False
                break
        if ok:
            canon = ProjectivePoint([mu0, mu1], dom).coords
            if canon not in seen:
                seen.append(canon)
    return seen


# -- degeneration of the base nodes ---------------------------------------------


DEGENERATION_DEGREE_BOUNDS = ((3, 2, 2), (2, 1, 1), (2, 1, 1))


def degeneration_form(split: PlaneSplit, base_slot: int) -> MultiPoly:
    """Determinant of the quadratic-jet matrix of the fiber at the chosen
    base point, as a binary form in (mu0, mu1), content removed.

    The entries are polynomials in mu with degrees bounded by
    ``DEGENERATION_DEGREE_BOUNDS`` (s-direction first), so the determinant is
    homogeneous of degree 5; its roots are the parameters where the base
    point stops being a node.
    """
    if not 0 <= base_slot < 4:
        raise FibrationError("base point slot must be in 0..3")
    dom = split.quintic.domain
    P = base_fiber_points(split)[base_slot]

    # ring: (u_s, u_a, u_b, mu0, mu1); chart from the jets rule inside the fiber
    chart = P.chart_index()
    if chart == 0:
        raise FibrationError("base point does not lie on the plane s = 0")
    m0 = MultiPoly.variable(dom, 5, 3)
    m1 = MultiPoly.variable(dom, 5, 4)
    u_s = MultiPoly.variable(dom, 5, 0)
    scale = dom.inv(P.coords[chart])
    targets = [m0 * u_s, m1 * u_s]
    u_index = 1
    for i in range(1, 4):
        if i == chart:
            targets.append(MultiPoly.constant(dom, 5, dom.one()))
        else:
            targets.append(MultiPoly.constant(dom, 5, dom.mul(P.coords[i], scale))
                           + MultiPoly.variable(dom, 5, u_index))
            u_index += 1
    # targets are indexed by the original P^4 variables (x0..x4)
    local = (split.f0.compose(targets)) * m0 + (split.f1.compose(targets)) * m1

    def u_degree(e):
        return e[0] + e[1] + e[2]

    for e in local.terms:
        if u_degree(e) < 2:
            raise FibrationError("base point is not a double point of the pencil")

    entries = [[None] * 3 for _ in range(3)]
    half = dom.inv(dom.from_int(2))
    for i in range(3):
        for j in range(i, 3):
            want = [0, 0, 0]
            want[i] += 1
            want[j] += 1
            terms = {}
            for e, c in local.terms.items():
                if u_degree(e) == 2 and list(e[:3]) == want:
                    key = (e[3], e[4])
                    terms[key] = dom.add(terms.get(key, dom.zero()), c)
            entry = MultiPoly(dom, 2, terms)
            if i != j:
                entry = entry.scale(half)
            bound = DEGENERATION_DEGREE_BOUNDS[i][j]
            if entry.degree() > bound:
                raise AssertionError(
                    f"entry ({i},{j}) exceeds its mu-degree bound {bound}")
            entries[i][j] = entry
            entries[j][i] = entry

    det = (entries[0][0] * (entries[1][1] * entries[2][2] - entries[1][2] * entries[2][1])
           - entries[0][1] * (entries[1][0] * entries[2][2] - entries[1][2] * entries[2][0])
           + entries[0][2] * (entries[1][0] * entries[2][1] - entries[1][1] * entries[2][0]))
    if det.is_zero():
        raise FibrationError(
            "degeneration determinant vanishes identically (non-isolated degeneration)")
    if dom == QQ:
        det = det.primitive_part()
    return det


def rational_roots_of_binary_form(b: MultiPoly) -> list[tuple[tuple, int]]:
    """Rational roots (as canonical (mu0 : mu1) pairs) with multiplicities;
    the point (1:0) accounts for any drop in the dehomogenised degree."""
    import math

    from .multipoly import binary_to_univariate
    from .scalars import uni_divmod

    if b.domain != QQ:
        raise ValueError("rational root extraction works over the rationals")
    d = b.require_homogeneous("binary form")
    coeffs = binary_to_univariate(b)
    roots: list[tuple[tuple, int]] = []
    inf_mult = d - (len(coeffs) - 1)
    if inf_mult > 0:
        roots.append(((Fraction(1), Fraction(0)), inf_mult))
    zmult = next((i for i, c in enumerate(coeffs) if c != 0), len(coeffs))
    if zmult > 0:
        roots.append(((Fraction(0), Fraction(1)), zmult))
        coeffs = coeffs[zmult:]
    den = 1
    for c in coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    candidates: set[Fraction] = set()
    if len(ints) > 1:
        def divisors(n):
            n = abs(n)
            return [i for i in range(1, n + 1) if n % i == 0]
        for p in divisors(ints[0]):
            for q in divisors(ints[-1]):
                candidates.add(Fraction(p, q))
                candidates.add(Fraction(-p, q))
    work = [Fraction(c) for c in ints]
    for cand in sorted(candidates):
        mult = 0
        while len(work) > 1:
            quotient, rem = uni_divmod(QQ, work, [-cand, Fraction(1)])
            if rem:
                break
            work = quotient
            mult += 1
        if mult:
            roots.append(((cand, Fraction(1)), mult))
    return [(ProjectivePoint([a, b2], QQ).coords, m) for (a, b2), m in roots]
