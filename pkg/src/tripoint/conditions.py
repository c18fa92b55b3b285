"""Linear conditions imposed by fat points on spaces of forms.

A degree-d form in 5 variables is a vector of length C(d+4,4) over the
monomial basis (grlex order).  Vanishing to order k at a point contributes
one row per chart monomial of degree < k: the coefficient of that monomial
in the local expansion, as a linear functional of the form's coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass

from .incidence import PointConfiguration, ProjectivePoint
from .jets import local_expansion
from .linalg import ExactMatrix
from .multipoly import MultiPoly, monomials_of_degree, monomials_up_to_degree
from .scalars import Domain


def coefficient_vector(f: MultiPoly, degree: int) -> list:
    """Coefficients of a homogeneous form over the grlex monomial basis."""
    dom = f.domain
    if not f.is_zero() and f.require_homogeneous() != degree:
        raise ValueError("form has unexpected degree")
    return [f.coefficient(e) for e in monomials_of_degree(f.nvars, degree)]


def form_from_vector(vec, nvars: int, degree: int, domain: Domain) -> MultiPoly:
    basis = monomials_of_degree(nvars, degree)
    return MultiPoly(domain, nvars, dict(zip(basis, (domain.coerce(v) for v in vec))))


def _local_pieces_of_basis(P: ProjectivePoint, degree: int, upto: int,
                           nvars: int = 5) -> list[dict]:
    """For each degree-``degree`` monomial: the dict of chart-monomial
    coefficients of its local expansion, truncated to total degree < upto."""
    dom = P.domain
    keep = set(monomials_up_to_degree(nvars - 1, upto - 1))
    out = []
    for exps in monomials_of_degree(nvars, degree):
        mono = MultiPoly.monomial(dom, exps)
        _, local = local_expansion(mono, P)
        out.append({e: c for e, c in local.terms.items() if e in keep})
    return out


def order_rows(P: ProjectivePoint, k: int, degree: int, nvars: int = 5) -> list[list]:
    """Rows forcing a degree-``degree`` form to vanish to order >= k at P.

    One row per chart monomial of degree <= k-1 (15 rows for k = 3 in P^4),
    in grlex order.
    """
    dom = P.domain
    cols = _local_pieces_of_basis(P, degree, k, nvars)
    rows = []
    for cm in monomials_up_to_degree(nvars - 1, k - 1):
        rows.append([col.get(cm, dom.zero()) for col in cols])
    return rows


def stacked_order_rows(cfg: PointConfiguration, k: int, degree: int) -> ExactMatrix:
    nvars = cfg[0].dim + 1
    rows = []
    for P in cfg:
        rows.extend(order_rows(P, k, degree, nvars))
    return ExactMatrix(cfg.domain, rows,
                       ncols=len(monomials_of_degree(nvars, degree)))


def dim_forms_with_multiplicity(cfg: PointConfiguration, k: int, degree: int) -> int:
    """Dimension of the space of degree-``degree`` forms vanishing to order
    >= k at every configuration point."""
    if k < 1 or degree < 1:
        raise ValueError("order and degree must be positive")
    M = stacked_order_rows(cfg, k, degree)
    return M.ncols - M.rank()


def forms_with_multiplicity_basis(cfg: PointConfiguration, k: int,
                                  degree: int) -> list[MultiPoly]:
    """Primitive integer basis of the space measured by
    ``dim_forms_with_multiplicity`` (rational configurations)."""
    nvars = cfg[0].dim + 1
    M = stacked_order_rows(cfg, k, degree)
    return [form_from_vector(v, nvars, degree, cfg.domain) for v in M.kernel_basis()]


@dataclass(frozen=True)
class PointConditionBlock:
    """The 11 linear conditions that a quintic lies in the local ideal of an
    ordinary triple point: value, the 4 chart gradients, and 6 functionals
    cutting out the span of the tangent-cone partials inside the 10-dim
    space of quadratic jets."""

    point: ProjectivePoint
    rows: tuple[tuple, ...]
    provenance: tuple[str, ...]


def triple_point_block(F: MultiPoly, P: ProjectivePoint,
                       degree: int = 5) -> PointConditionBlock:
    """Condition rows at an ordinary triple point of V(F).

    Raises if F does not have multiplicity exactly 3 at P or if the four
    tangent-cone partials are linearly dependent (a non-ordinary point).
    """
    dom = F.domain
    nvars = F.nvars
    nloc = nvars - 1
    _, localF = local_expansion(F, P)
    for k in range(3):
        if not localF.homogeneous_part(k).is_zero():
            raise ValueError(f"point {P} is not a triple point (piece {k} nonzero)")
    cone = localF.homogeneous_part(3)
    if cone.is_zero():
        raise ValueError(f"point {P} has multiplicity > 3")

    quad_basis = monomials_of_degree(nloc, 2)
    cone_partials = [cone.derivative(i) for i in range(nloc)]
    A = ExactMatrix(dom, [[g.coefficient(e) for e in quad_basis]
                          for g in cone_partials])
    ech, pivots = _reduced_echelon(A)
    if len(pivots) != nloc:
        raise ValueError(f"tangent cone at {P} is not ordinary "
                         "(dependent partial derivatives)")

    # functionals on the quadratic jet space vanishing on span(cone partials):
    # reduce a jet vector by the echelon basis and read off non-pivot coords
    free_cols = [c for c in range(len(quad_basis)) if c not in set(pivots)]
    pieces = _local_pieces_of_basis(P, degree, 3, nvars)
    rows: list[list] = []
    provenance: list[str] = []

    zero_cm = (0,) * nloc
    rows.append([col.get(zero_cm, dom.zero()) for col in pieces])
    provenance.append("value")
    for cm in monomials_of_degree(nloc, 1):
        rows.append([col.get(cm, dom.zero()) for col in pieces])
        provenance.append("gradient")
    for f in free_cols:
        row = []
        for col in pieces:
            jet = [col.get(cm, dom.zero()) for cm in quad_basis]
            val = jet[f]
            for i, p in enumerate(pivots):
                # ech rows have pivot 1; subtract the pivot components
                val = dom.sub(val, dom.mul(jet[p], ech[i][f]))
            row.append(val)
        rows.append(row)
        provenance.append("jacobian-quotient")
    return PointConditionBlock(P, tuple(tuple(r) for r in rows), tuple(provenance))


def _reduced_echelon(M: ExactMatrix):
    """Fully reduced echelon form with pivots normalised to one (generic,
    deterministic column order)."""
    from .linalg import _generic_echelon
    return _generic_echelon(M.domain, M.rows, reduce=True)
