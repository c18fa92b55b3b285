"""Local analysis at points of a hypersurface: jet expansions, multiplicity,
tangent cones, and the node test.

All expansions use the affine chart where the largest-index nonzero
coordinate of the centre is set to 1; the remaining coordinates are
translated so the centre sits at the origin.  Piece ``k`` of the expansion is
the homogeneous degree-``k`` part in those chart coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass

from .incidence import ProjectivePoint
from .linalg import ExactMatrix
from .multipoly import MultiPoly


@dataclass(frozen=True)
class JetExpansion:
    center: ProjectivePoint
    chart: int                      # coordinate set to 1
    pieces: tuple[MultiPoly, ...]   # pieces[k] homogeneous of degree k in dim vars

    @property
    def order(self) -> int:
        return len(self.pieces) - 1


def _affine_targets(F: MultiPoly, P: ProjectivePoint,
                    chart: int | None = None) -> tuple[int, list[MultiPoly]]:
    """Substitution targets sending x_i -> P_i/P_chart + u_i with the chart
    coordinate set to 1 (u_chart dropped).  The default chart is the
    largest-index nonzero coordinate of P."""
    if P.dim != F.nvars - 1:
        raise ValueError("point dimension does not match the form")
    dom = F.domain
    if chart is None:
        chart = P.chart_index()
    elif dom.is_zero(P.coords[chart]):
        raise ValueError("chart coordinate vanishes at the point")
    scale = dom.inv(P.coords[chart])
    nloc = F.nvars - 1
    targets = []
    u_index = 0
    for i in range(F.nvars):
        if i == chart:
            targets.append(MultiPoly.constant(dom, nloc, dom.one()))
        else:
            t = MultiPoly.constant(dom, nloc, dom.mul(P.coords[i], scale))
            t = t + MultiPoly.variable(dom, nloc, u_index)
            targets.append(t)
            u_index += 1
    return chart, targets


def jet_expand(F: MultiPoly, P: ProjectivePoint, order: int) -> JetExpansion:
    """Exact Taylor pieces of F at P up to the requested order."""
    F.require_homogeneous("jet expansion input")
    chart, targets = _affine_targets(F, P)
    local = F.compose(targets)
    pieces = tuple(local.homogeneous_part(k) for k in range(order + 1))
    return JetExpansion(P, chart, pieces)


def local_expansion(F: MultiPoly, P: ProjectivePoint,
                    chart: int | None = None) -> tuple[int, MultiPoly]:
    """Full dehomogenised-and-translated local equation; returns (chart, f)."""
    chart, targets = _affine_targets(F, P, chart)
    return chart, F.compose(targets)


def multiplicity_at(F: MultiPoly, P: ProjectivePoint,
                    chart: int | None = None) -> int:
    """Order of vanishing of F at P; 0 when P is not on V(F).  The value is
    chart independent; the parameter exists for cross-checks."""
    if F.is_zero():
        raise ValueError("multiplicity of the zero form")
    _, local = local_expansion(F, P, chart)
    d = local.degree()
    for k in range(d + 1):
        if not local.homogeneous_part(k).is_zero():
            return k
    raise AssertionError("nonzero polynomial with no nonzero piece")


def tangent_cone(F: MultiPoly, P: ProjectivePoint) -> MultiPoly:
    """Lowest nonzero jet piece, homogeneous in the chart variables."""
    _, local = local_expansion(F, P)
    if local.is_zero():
        raise ValueError("form vanishes identically near the point")
    for k in range(local.degree() + 1):
        piece = local.homogeneous_part(k)
        if not piece.is_zero():
            return piece
    raise AssertionError


def quadratic_jet_matrix(piece: MultiPoly) -> ExactMatrix:
    """Symmetric matrix of a homogeneous quadratic polynomial: M[i][j] with
    q = sum M[i][j] u_i u_j, off-diagonal coefficients split in half."""
    dom = piece.domain
    n = piece.nvars
    half = dom.inv(dom.from_int(2))
    rows = [[dom.zero()] * n for _ in range(n)]
    for e, c in piece.terms.items():
        support = [i for i, ei in enumerate(e) if ei]
        if sum(e) != 2:
            raise ValueError("quadratic piece expected")
        if len(support) == 1:
            i = support[0]
            rows[i][i] = c
        else:
            i, j = support
            rows[i][j] = dom.mul(c, half)
            rows[j][i] = rows[i][j]
    return ExactMatrix(dom, rows)


def is_node(Q: MultiPoly, P: ProjectivePoint) -> bool:
    """True iff P is an ordinary double point of the surface V(Q) in P^3:
    multiplicity 2 with a rank-3 quadratic jet."""
    if Q.nvars != 4:
        raise ValueError("node test expects a surface in P^3")
    jet = jet_expand(Q, P, 2)
    if not (jet.pieces[0].is_zero() and jet.pieces[1].is_zero()):
        return False
    q2 = jet.pieces[2]
    if q2.is_zero():
        return False
    return quadratic_jet_matrix(q2).rank() == 3
