"""The defect engine: per-point linear conditions, the defect of a quintic
with ordinary triple points, and the closed-form Hodge/Euler invariants.

For a quintic threefold with t ordinary triple points, each point imposes 11
linear conditions on the 126-dimensional space of quintics (value, four
chart gradients, and six functionals forcing the quadratic jet into the span
of the tangent-cone partials).  Writing h for the rank of the stacked system
(the degree-5 Hilbert-function value of the associated quotient), the defect
is ``delta = 11*t - h``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .conditions import (PointConditionBlock, coefficient_vector,
                         triple_point_block)
from .incidence import PointConfiguration
from .linalg import ExactMatrix, IntRowBasis
from .multipoly import MultiPoly, monomials_of_degree
from .scalars import QQ


@dataclass(frozen=True)
class HodgeRecord:
    """Invariants of the quintic X and of the blow-up of its triple points."""

    t: int
    delta: int
    h11_blowup: int       # 1 + t + delta
    h21_blowup: int       # 101 - 11t + delta
    euler_singular: int   # -200 + 16t
    euler_blowup: int     # -200 + 24t
    h11_middle: int       # 6t - delta, weight-(1,1) part of H^3(X)

    def to_json(self) -> dict:
        return {"t": self.t, "delta": self.delta,
                "h11_blowup": self.h11_blowup, "h21_blowup": self.h21_blowup,
                "euler": self.euler_singular, "euler_blowup": self.euler_blowup,
                "h11_of_h3": self.h11_middle}


def hodge_invariants(t: int, delta: int) -> HodgeRecord:
    if not 0 <= t <= 11:
        raise ValueError("a quintic threefold carries at most 11 ordinary triple points")
    h21 = 101 - 11 * t + delta
    if h21 < 0:
        raise ValueError(
            f"h^(2,1) = 101 - 11t + delta = {h21} < 0; "
            f"any such quintic needs defect >= {11 * t - 101}")
    return HodgeRecord(
        t=t, delta=delta,
        h11_blowup=1 + t + delta,
        h21_blowup=h21,
        euler_singular=-200 + 16 * t,
        euler_blowup=-200 + 24 * t,
        h11_middle=6 * t - delta,
    )


@dataclass(frozen=True)
class ConditionSystem:
    """Stacked per-point condition rows on the degree-d coefficient space."""

    degree: int
    blocks: tuple[PointConditionBlock, ...]
    matrix: ExactMatrix

    @property
    def rows_per_point(self) -> int:
        return len(self.blocks[0].rows) if self.blocks else 0


def build_condition_system(F: MultiPoly, cfg: PointConfiguration,
                           degree: int = 5) -> ConditionSystem:
    blocks = tuple(triple_point_block(F, P, degree) for P in cfg)
    rows = [list(r) for b in blocks for r in b.rows]
    ncols = len(monomials_of_degree(F.nvars, degree))
    return ConditionSystem(degree, blocks, ExactMatrix(F.domain, rows, ncols=ncols))


_FAST_RANK_PRIME = 2147483647  # 2^31 - 1; products stay inside int64


def _full_rank_mod_prime(system: ConditionSystem, p: int = _FAST_RANK_PRIME) -> bool:
    """Quick sound certificate that the stacked system has full row rank."""
    import numpy as np

    from .linalg import _gfp_rref

    rows = []
    for block in system.blocks:
        for row in block.rows:
            reduced = []
            for x in row:
                den = x.denominator % p
                if den == 0:
                    return False
                reduced.append(x.numerator * pow(den, p - 2, p) % p)
            rows.append(reduced)
    if not rows:
        return True
    A = np.array(rows, dtype=np.int64)
    _, pivots = _gfp_rref(A, p)
    return len(pivots) == len(rows)


@dataclass(frozen=True)
class DefectReport:
    t: int
    rank: int                      # h: Hilbert-function value in degree 5
    delta: int
    per_point_rank: tuple[int, ...]
    membership_ok: bool
    hodge: HodgeRecord
    heuristic_flags: tuple[str, ...] = ()

    def __post_init__(self):
        if self.delta < 0:
            raise ValueError("negative defect: inconsistent condition system")
        if self.rank > 11 * self.t or self.rank > 126:
            raise ValueError("condition rank exceeds its ceiling")

    def to_json(self) -> dict:
        return {"t": self.t, "rank": self.rank, "delta": self.delta,
                "per_point_rank": list(self.per_point_rank),
                "membership_ok": self.membership_ok,
                "hodge": self.hodge.to_json(),
                "heuristic_flags": list(self.heuristic_flags)}


def defect(F: MultiPoly, cfg: PointConfiguration, check_membership: bool = True,
           heuristic_flags: tuple[str, ...] = ()) -> DefectReport:
    """Defect of the quintic V(F) with declared ordinary triple points.

    Every declared point must be a triple point of F with independent
    tangent-cone partials; F itself has to satisfy its own condition system
    (a wrong configuration fails this membership check).
    """
    if F.nvars != 5 or F.degree() != 5:
        raise ValueError("defect is defined for quintic forms in five variables")
    F.require_homogeneous("quintic")
    system = build_condition_system(F, cfg, degree=5)
    dom = F.domain
    t = len(cfg)

    membership_ok = True
    if check_membership:
        vec = coefficient_vector(F, 5)
        image = system.matrix.apply(vec)
        membership_ok = all(dom.is_zero(v) for v in image)
        if not membership_ok:
            raise ValueError("the quintic violates its own point conditions "
                             "(wrong configuration?)")

    per_point = []
    if dom == QQ and _full_rank_mod_prime(system):
        # a maximal minor that is nonzero mod p is nonzero over Q, and the
        # rank cannot exceed the row count, so the system has exact full rank
        # (and then so does every prefix)
        per_point = [len(b.rows) for b in system.blocks]
        h = sum(per_point)
    elif dom == QQ:
        basis = IntRowBasis()
        for block in system.blocks:
            before = basis.rank
            for r in block.rows:
                basis.add_fraction_row(r)
            per_point.append(basis.rank - before)
        h = basis.rank
    else:
        rank_so_far = 0
        rows: list[list] = []
        ncols = system.matrix.ncols
        for block in system.blocks:
            rows.extend(list(r) for r in block.rows)
            r = ExactMatrix(dom, rows, ncols=ncols).rank()
            per_point.append(r - rank_so_far)
            rank_so_far = r
        h = rank_so_far
    delta_val = 11 * t - h
    return DefectReport(t=t, rank=h, delta=delta_val,
                        per_point_rank=tuple(per_point),
                        membership_ok=membership_ok,
                        hodge=hodge_invariants(t, delta_val),
                        heuristic_flags=heuristic_flags)


def defect_mod_p(F: MultiPoly, cfg: PointConfiguration, p: int,
                 check_membership: bool = True) -> DefectReport:
    """Cross-check route: reduce the quintic and its points mod p and run the
    whole condition-system computation over GF(p).  Agreement with the
    rational rank at several good primes is a stability check on the exact
    defect."""
    from .incidence import ProjectivePoint
    from .multipoly import reduce_poly
    from .scalars import GF

    fld = GF(p)
    Fp = reduce_poly(F, fld)
    pts = PointConfiguration(
        [ProjectivePoint([fld.from_fraction(c) for c in P.coords], fld)
         for P in cfg])
    return defect(Fp, pts, check_membership=check_membership)
