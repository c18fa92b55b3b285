"""Divisor-lattice analysis of the 2-planes inside a quintic threefold.

Each coplanar quadruplet of triple points spans a 2-plane contained in the
quintic; a general hyperplane section turns those planes into lines on a
smooth quintic surface.  Self-intersections follow from adjunction
(l^2 = -3 on a quintic surface), two lines meet exactly when their planes
share two configuration points (the planes then meet in a line through two
singularities, which survives into the section), and the hyperplane class
contributes H^2 = 5, H.l = 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .incidence import PointConfiguration
from .linalg import ExactMatrix
from .scalars import QQ


@dataclass(frozen=True)
class GramLattice:
    labels: tuple[str, ...]
    matrix: ExactMatrix
    determinant: Fraction
    rank: int

    def to_json(self) -> dict:
        return {"labels": list(self.labels),
                "matrix": [[str(x) for x in row] for row in self.matrix.rows],
                "determinant": str(self.determinant), "rank": self.rank}

    def kernel_contains(self, vec: Sequence[int]) -> bool:
        image = self.matrix.apply([Fraction(v) for v in vec])
        return all(v == 0 for v in image)


def gram_analysis(quadruplets: Sequence[Sequence[int]], cfg: PointConfiguration,
                  include_hyperplane: bool = True) -> GramLattice:
    """Gram matrix of the section lines of the given coplanar quadruplets
    (plus the hyperplane class), with its determinant and rank."""
    quads = [tuple(q) for q in quadruplets]
    coplanar = set(cfg.coplanar_quadruplets)
    for q in quads:
        if tuple(sorted(q)) not in coplanar:
            raise ValueError(f"quadruplet {q} is not coplanar in the configuration")
    n = len(quads)
    for i in range(n):
        for j in range(i + 1, n):
            shared = len(set(quads[i]) & set(quads[j]))
            if shared >= 3:
                raise ValueError(
                    f"quadruplets {quads[i]} and {quads[j]} span the same plane")
    size = n + (1 if include_hyperplane else 0)
    rows = [[0] * size for _ in range(size)]
    for i in range(n):
        rows[i][i] = -3
        for j in range(i + 1, n):
            meet = 1 if len(set(quads[i]) & set(quads[j])) == 2 else 0
            rows[i][j] = rows[j][i] = meet
    labels = [f"line{q}" for q in quads]
    if include_hyperplane:
        for i in range(n):
            rows[i][n] = rows[n][i] = 1
        rows[n][n] = 5
        labels.append("H")
    M = ExactMatrix(QQ, rows)
    return GramLattice(tuple(labels), M, M.det(), M.rank())
