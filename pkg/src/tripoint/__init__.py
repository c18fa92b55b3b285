"""tripoint: exact-arithmetic toolkit for quintic threefolds in P^4 with
ordinary triple points.

Computes defects and Hodge invariants, checks configuration constraints,
analyses the pencil of residual quartics under projection from a 2-plane,
and mechanically re-verifies the decisive computational steps behind the
10-triple-point bound for quintics with a reducible hyperplane section.
"""

from .scalars import (QQ, GF, Domain, DomainError, NotInvertibleError,
                      NumberField, PrimeField, QuadraticExtension,
                      field_from_spec, field_spec)
from .multipoly import (MultiPoly, linear_factor_test, monomials_of_degree,
                        monomials_up_to_degree, reduce_poly,
                        squarefree_structure)
from .linalg import ExactMatrix, InconsistentSystemError
from .incidence import (PointConfiguration, ProjectivePoint,
                        ProjectiveTransformation, collinear, coplanar,
                        is_segre, normalize_frame, segre_cubic, segre_points)
from .jets import (is_node, jet_expand, multiplicity_at, tangent_cone)
from .ffscan import singular_points_over
from .certify import (certify_model, certify_ordinary_triple_point,
                      certify_smooth)
from .conditions import dim_forms_with_multiplicity, forms_with_multiplicity_basis
from .defect import DefectReport, defect, hodge_invariants
from .gram import GramLattice, gram_analysis
from .fibration import (PlaneSplit, classify_fiber, degeneration_form,
                        fiber_stats, plane_split, residual_quartic)
from .conic_pencil import ConicPencilAnalysis, conic_pencil_analysis
from .verify import (varchenko_bound, verify_cyclotomic_system,
                     verify_exclusion_identity, verify_reducibility_lemma)
from .gallery import GALLERY, QuinticModel, gallery_build, run_report

__version__ = "0.1.0"

__all__ = [
    "QQ", "GF", "Domain", "DomainError", "NotInvertibleError", "NumberField",
    "PrimeField", "QuadraticExtension", "field_from_spec", "field_spec",
    "MultiPoly", "linear_factor_test", "monomials_of_degree",
    "monomials_up_to_degree", "reduce_poly", "squarefree_structure",
    "ExactMatrix", "InconsistentSystemError",
    "PointConfiguration", "ProjectivePoint", "ProjectiveTransformation",
    "collinear", "coplanar", "is_segre", "normalize_frame", "segre_cubic",
    "segre_points",
    "is_node", "jet_expand", "multiplicity_at", "tangent_cone",
    "singular_points_over",
    "certify_model", "certify_ordinary_triple_point", "certify_smooth",
    "dim_forms_with_multiplicity", "forms_with_multiplicity_basis",
    "DefectReport", "defect", "hodge_invariants",
    "GramLattice", "gram_analysis",
    "PlaneSplit", "classify_fiber", "degeneration_form", "fiber_stats",
    "plane_split", "residual_quartic",
    "ConicPencilAnalysis", "conic_pencil_analysis",
    "varchenko_bound", "verify_cyclotomic_system",
    "verify_exclusion_identity", "verify_reducibility_lemma",
    "GALLERY", "QuinticModel", "gallery_build", "run_report",
]
