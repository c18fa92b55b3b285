"""Pencils of conics residual to a double line on a quartic surface in P^3.

With the double line at V(x0, x1), the planes through it form the pencil
W_(mu0:mu1) = V(mu1*x0 - mu0*x1); parametrising a plane by
(x0, x1) = (mu0*u, mu1*u) and dividing the quartic by u^2 leaves a conic
C_mu in (u, x2, x3) whose symmetric matrix A(mu) has graded polynomial
entries.  det A is then a binary form of degree at most 8 (one double line)
or at most 4 (two coplanar double lines), and its roots are the planes with
a singular residual conic; the discriminant of C_mu restricted to the line
counts the conics tangent to it (degree at most 2 in the two-line case).
"""

from __future__ import annotations

from dataclasses import dataclass
from .incidence import ProjectivePoint, ProjectiveTransformation
from .linalg import ExactMatrix
from .multipoly import MultiPoly
from .scalars import QQ, Domain

SINGLE_LINE_BOUNDS = ((4, 3, 3), (3, 2, 2), (3, 2, 2))
TWO_LINE_BOUNDS = ((2, 2, 1), (2, 2, 1), (1, 1, 0))


class PencilError(ValueError):
    pass


@dataclass(frozen=True)
class ConicPencilAnalysis:
    mode: str
    quartic: MultiPoly                      # in normalised coordinates
    matrix: tuple[tuple[MultiPoly, ...], ...]  # binary-form entries
    determinant: MultiPoly                  # binary form in (mu0, mu1)
    singular_parameters: tuple[tuple[tuple, int], ...]  # rational roots w/ mult
    unresolved_degree: int                  # degree left after rational roots
    tangency_discriminant: MultiPoly | None

    @property
    def determinant_degree(self) -> int:
        return self.determinant.degree()

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "quartic": self.quartic.to_string(),
            "matrix": [[e.to_string() for e in row] for row in self.matrix],
            "determinant": self.determinant.to_string(),
            "determinant_degree": self.determinant_degree,
            "singular_parameters": [
                {"mu": [str(a) for a in mu], "multiplicity": m}
                for mu, m in self.singular_parameters],
            "unresolved_degree": self.unresolved_degree,
            "tangency_discriminant":
                self.tangency_discriminant.to_string()
                if self.tangency_discriminant is not None else None,
        }


def _line_ideal(dom: Domain, a: ProjectivePoint, b: ProjectivePoint) -> list[list]:
    M = ExactMatrix(dom, [list(a.coords), list(b.coords)])
    if M.rank() != 2:
        raise PencilError("line must be spanned by two distinct points")
    return [list(v) for v in M.kernel_basis()]


def _normalize_single(Q: MultiPoly, line: tuple[ProjectivePoint, ProjectivePoint]):
    dom = Q.domain
    rows = _line_ideal(dom, *line)
    for i in range(4):
        unit = [dom.one() if j == i else dom.zero() for j in range(4)]
        if ExactMatrix(dom, rows + [unit]).rank() == len(rows) + 1:
            rows.append(unit)
        if len(rows) == 4:
            break
    T = ProjectiveTransformation(ExactMatrix(dom, rows))
    return T.apply_form(Q)


def _normalize_two(Q: MultiPoly, line: tuple, line2: tuple) -> MultiPoly:
    dom = Q.domain
    ideal0 = _line_ideal(dom, *line)     # 2-dim space of forms vanishing on l
    ideal1 = _line_ideal(dom, *line2)
    # common form = ideal of the plane spanned by the two coplanar lines
    M = ExactMatrix(dom, [ideal0[0], ideal0[1],
                          ideal1[0], ideal1[1]])
    if M.rank() != 3:
        raise PencilError("lines are not distinct coplanar lines")
    lam = None
    # find a combination of ideal0 lying in span(ideal1)
    A = ExactMatrix(dom, [[ideal0[0][k], ideal0[1][k], ideal1[0][k], ideal1[1][k]]
                          for k in range(4)])
    for v in A.kernel_basis():
        cand = [dom.add(dom.mul(v[0], ideal0[0][k]), dom.mul(v[1], ideal0[1][k]))
                for k in range(4)]
        if any(not dom.is_zero(c) for c in cand):
            lam = cand
            break
    if lam is None:
        raise PencilError("lines do not span a common plane")
    alpha = next(r for r in ideal0
                 if ExactMatrix(dom, [lam, r]).rank() == 2)
    beta = next(r for r in ideal1
                if ExactMatrix(dom, [lam, r]).rank() == 2)
    rows = [alpha, lam, beta]
    for i in range(4):
        unit = [dom.one() if j == i else dom.zero() for j in range(4)]
        if ExactMatrix(dom, rows + [unit]).rank() == 4:
            rows.append(unit)
            break
    T = ProjectiveTransformation(ExactMatrix(dom, rows))
    return T.apply_form(Q)


def _strip_second_variable(b: MultiPoly) -> MultiPoly:
    """Divide a binary form by the largest power of x1 it contains."""
    k = min(e[1] for e in b.terms)
    if k == 0:
        return b
    return MultiPoly(b.domain, 2, {(e0, e1 - k): c for (e0, e1), c in b.terms.items()})


def _check_double_line(Q: MultiPoly, vars_pair: tuple[int, int]):
    i, j = vars_pair
    for e in Q.terms:
        if e[i] + e[j] < 2:
            raise PencilError(
                f"the quartic is not double along V(x{i}, x{j})")


def conic_pencil_analysis(Q: MultiPoly, mode: str = "single-line",
                          line: tuple | None = None,
                          line2: tuple | None = None) -> ConicPencilAnalysis:
    """Analyse the pencil of conics residual to a double line of a quartic.

    ``mode`` is "single-line" or "two-lines"; coordinates are normalised so
    the distinguished line is V(x0, x1) (and the second line V(x1, x2)).
    When ``line``/``line2`` are omitted the quartic must already be in that
    position.  The two-line mode also reports the tangency discriminant.
    """
    if Q.nvars != 4 or Q.degree() != 4 or not Q.is_homogeneous():
        raise PencilError("input must be a homogeneous quartic in P^3")
    if mode not in ("single-line", "two-lines"):
        raise PencilError(f"unknown mode {mode!r}")
    dom = Q.domain
    if line is not None:
        if mode == "single-line":
            Q = _normalize_single(Q, line)
        else:
            if line2 is None:
                raise PencilError("two-lines mode needs both lines")
            Q = _normalize_two(Q, line, line2)
    _check_double_line(Q, (0, 1))
    if mode == "two-lines":
        _check_double_line(Q, (1, 2))
        bounds = TWO_LINE_BOUNDS
        det_bound = 4
    else:
        bounds = SINGLE_LINE_BOUNDS
        det_bound = 8

    # ring (u, y2, y3, mu0, mu1); substitute x0 = mu0*u, x1 = mu1*u
    u = MultiPoly.variable(dom, 5, 0)
    m0 = MultiPoly.variable(dom, 5, 3)
    m1 = MultiPoly.variable(dom, 5, 4)
    targets = [m0 * u, m1 * u,
               MultiPoly.variable(dom, 5, 1), MultiPoly.variable(dom, 5, 2)]
    sub = Q.compose(targets)
    # divide out u^2 (guaranteed by the double-line condition)
    conic_terms: dict[tuple, object] = {}
    for e, c in sub.terms.items():
        eu, e2, e3, em0, em1 = e
        if eu < 2:
            raise AssertionError("double-line condition violated after substitution")
        conic_terms[(eu - 2, e2, e3, em0, em1)] = c
    conic = MultiPoly(dom, 5, conic_terms)

    # The bound matrices bound the degree in the chart parameter t = mu0/mu1
    # (for one double line this agrees with the total degree); entries are
    # homogeneous of graded degree 2 + [i==0] + [j==0].
    entries = [[None] * 3 for _ in range(3)]
    half = dom.inv(dom.from_int(2))
    for i in range(3):
        for j in range(i, 3):
            want = [0, 0, 0]
            want[i] += 1
            want[j] += 1
            terms = {}
            for e, c in conic.terms.items():
                if list(e[:3]) == want:
                    terms[(e[3], e[4])] = c
            entry = MultiPoly(dom, 2, terms)
            if i != j:
                entry = entry.scale(half)
            t_degree = max((e[0] for e in entry.terms), default=-1)
            if t_degree > bounds[i][j]:
                raise AssertionError(
                    f"entry ({i},{j}) exceeds the degree bound {bounds[i][j]}")
            entries[i][j] = entry
            entries[j][i] = entry

    det = (entries[0][0] * (entries[1][1] * entries[2][2] - entries[1][2] * entries[2][1])
           - entries[0][1] * (entries[1][0] * entries[2][2] - entries[1][2] * entries[2][0])
           + entries[0][2] * (entries[1][0] * entries[2][1] - entries[1][1] * entries[2][0]))
    if det.is_zero():
        raise PencilError("every conic in the pencil is singular "
                          "(determinant vanishes identically)")
    if mode == "two-lines":
        # the plane mu = (1:0) carries both lines and is always degenerate;
        # the claimed bound concerns the remaining parameters, so strip the
        # mu1 factors accumulated by the grading
        det = _strip_second_variable(det)
    if det.degree() > det_bound:
        raise AssertionError("determinant exceeds its degree bound")
    if dom == QQ:
        det = det.primitive_part()
        from .fibration import rational_roots_of_binary_form
        roots = tuple(rational_roots_of_binary_form(det))
    else:
        roots = ()
    unresolved = det.degree() - sum(m for _mu, m in roots)

    # tangency: restrict the conic to the line u = 0 and take its discriminant
    a = entries[1][1]
    b = entries[1][2].scale(dom.from_int(2))
    c = entries[2][2]
    disc = b * b - (a * c).scale(dom.from_int(4))
    if not disc.is_zero() and mode == "two-lines":
        disc = _strip_second_variable(disc)
    tang_bound = 2 if mode == "two-lines" else 4
    if disc.degree() > tang_bound:
        raise AssertionError("tangency discriminant exceeds its degree bound")

    return ConicPencilAnalysis(
        mode=mode, quartic=Q,
        matrix=tuple(tuple(row) for row in entries),
        determinant=det,
        singular_parameters=roots,
        unresolved_degree=unresolved,
        tangency_discriminant=disc,
    )
