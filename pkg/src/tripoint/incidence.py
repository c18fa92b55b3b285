"""Point configurations in P^4: incidence predicates, constraint checking,
frame normalisation, and the Segre configuration.

Points are stored through a canonical representative (first nonzero
coordinate scaled to 1) so that equality, hashing and printing are
deterministic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .linalg import ExactMatrix
from .multipoly import MultiPoly
from .scalars import QQ, Domain, DomainError, field_from_spec, field_spec


class ProjectivePoint:
    """A point of projective space over an exact field, canonicalised."""

    __slots__ = ("domain", "coords")

    def __init__(self, coords: Sequence, domain: Domain = QQ):
        dom = domain
        raw = [dom.coerce(x) for x in coords]
        lead = next((x for x in raw if not dom.is_zero(x)), None)
        if lead is None:
            raise ValueError("projective point needs a nonzero coordinate")
        inv = dom.inv(lead)
        self.domain = dom
        self.coords = tuple(dom.mul(x, inv) for x in raw)

    @property
    def dim(self) -> int:
        return len(self.coords) - 1

    def chart_index(self) -> int:
        """Largest index with a nonzero coordinate (the jet-chart rule)."""
        dom = self.domain
        for i in range(len(self.coords) - 1, -1, -1):
            if not dom.is_zero(self.coords[i]):
                return i
        raise AssertionError("zero point")

    def __eq__(self, other):
        return (isinstance(other, ProjectivePoint)
                and other.domain == self.domain and other.coords == self.coords)

    def __hash__(self):
        return hash(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __repr__(self):
        dom = self.domain
        return "(" + ":".join(dom.to_str(c) for c in self.coords) + ")"

    def to_json(self) -> list[str]:
        dom = self.domain
        return [dom.to_str(c) for c in self.coords]

    @classmethod
    def from_json(cls, data: Sequence[str], domain: Domain) -> "ProjectivePoint":
        return cls([domain.parse_scalar(str(x)) for x in data], domain)


def _span_rank(points: Sequence[ProjectivePoint]) -> int:
    dom = points[0].domain
    return ExactMatrix(dom, [list(p.coords) for p in points]).rank()


def _require_distinct(points: Sequence[ProjectivePoint]):
    if len(set(points)) != len(points):
        raise ValueError("points must be pairwise distinct")


def collinear(p: ProjectivePoint, q: ProjectivePoint, r: ProjectivePoint) -> bool:
    _require_distinct([p, q, r])
    return _span_rank([p, q, r]) <= 2


def coplanar(p: ProjectivePoint, q: ProjectivePoint, r: ProjectivePoint,
             s: ProjectivePoint) -> bool:
    _require_distinct([p, q, r, s])
    return _span_rank([p, q, r, s]) <= 3


@dataclass(frozen=True)
class ConstraintReport:
    """Incidence violations relevant to configurations of triple points."""

    collinear_triples: tuple[tuple[int, ...], ...]
    overloaded_planes: tuple[tuple[int, ...], ...]     # 2-planes with >= 5 points
    overloaded_hyperplanes: tuple[tuple[int, ...], ...]  # hyperplanes with >= 7 points

    @property
    def ok(self) -> bool:
        return not (self.collinear_triples or self.overloaded_planes
                    or self.overloaded_hyperplanes)

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "collinear_triples": [list(t) for t in self.collinear_triples],
            "planes_with_5_or_more_points": [list(t) for t in self.overloaded_planes],
            "hyperplanes_with_7_or_more_points": [list(t) for t in self.overloaded_hyperplanes],
        }


class PointConfiguration:
    """Ordered list of distinct projective points with cached incidence data."""

    def __init__(self, points: Iterable[ProjectivePoint]):
        pts = list(points)
        if not pts:
            raise ValueError("empty configuration")
        dom = pts[0].domain
        dims = {p.dim for p in pts}
        if len(dims) != 1:
            raise ValueError("points of mixed dimension")
        for p in pts:
            if p.domain != dom:
                raise DomainError("points over different scalar domains")
        _require_distinct(pts)
        self.points = tuple(pts)
        self.domain = dom

    def __len__(self):
        return len(self.points)

    def __getitem__(self, i) -> ProjectivePoint:
        return self.points[i]

    def __iter__(self):
        return iter(self.points)

    def __eq__(self, other):
        return isinstance(other, PointConfiguration) and other.points == self.points

    def __hash__(self):
        return hash(self.points)

    def subset(self, indices: Sequence[int]) -> "PointConfiguration":
        return PointConfiguration([self.points[i] for i in indices])

    @cached_property
    def collinear_triples(self) -> tuple[tuple[int, int, int], ...]:
        out = []
        for idx in combinations(range(len(self.points)), 3):
            if _span_rank([self.points[i] for i in idx]) <= 2:
                out.append(idx)
        return tuple(out)

    @cached_property
    def coplanar_quadruplets(self) -> tuple[tuple[int, int, int, int], ...]:
        """All 4-subsets spanning only a 2-plane, in lexicographic order."""
        out = []
        for idx in combinations(range(len(self.points)), 4):
            if _span_rank([self.points[i] for i in idx]) <= 3:
                out.append(idx)
        return tuple(out)

    @cached_property
    def crowded_hyperplanes(self) -> tuple[tuple[tuple, tuple[int, ...]], ...]:
        """Hyperplanes containing at least 5 of the points, as
        (normal vector, sorted point indices)."""
        dom = self.domain
        n = len(self.points[0].coords)
        seen: dict[tuple, set[int]] = {}
        for idx in combinations(range(len(self.points)), n - 1):
            pts = [self.points[i] for i in idx]
            M = ExactMatrix(dom, [list(p.coords) for p in pts])
            if M.rank() != n - 1:
                continue
            normal = tuple(M.kernel_basis()[0])
            members = {i for i, p in enumerate(self.points)
                       if dom.is_zero(_dot(dom, normal, p.coords))}
            seen[normal] = members
        out = []
        for normal, members in seen.items():
            if len(members) >= 5:
                out.append((normal, tuple(sorted(members))))
        out.sort(key=lambda t: t[1])
        return tuple(dict((t[1], t) for t in out).values())

    def constraints(self) -> ConstraintReport:
        """Check the configuration against the incidence restrictions that
        triple points of a quintic threefold must satisfy: no collinear
        triple, at most 4 points in a 2-plane, at most 6 in a hyperplane."""
        planes: dict[tuple, set[int]] = {}
        for quad in self.coplanar_quadruplets:
            key = _plane_key(self, quad)
            planes.setdefault(key, set()).update(quad)
        overloaded_planes = tuple(sorted(tuple(sorted(v)) for v in planes.values()
                                         if len(v) >= 5))
        overloaded_h = tuple(members for _n, members in self.crowded_hyperplanes
                             if len(members) >= 7)
        return ConstraintReport(self.collinear_triples, overloaded_planes, overloaded_h)

    def to_json(self) -> dict:
        return {"field": field_spec(self.domain),
                "points": [p.to_json() for p in self.points]}

    @classmethod
    def from_json(cls, data: dict) -> "PointConfiguration":
        dom = field_from_spec(data.get("field", {"type": "rational"}))
        return cls([ProjectivePoint.from_json(p, dom) for p in data["points"]])

    @classmethod
    def load(cls, path) -> "PointConfiguration":
        with open(path) as fh:
            return cls.from_json(json.load(fh))

    def save(self, path):
        with open(path, "w") as fh:
            json.dump(self.to_json(), fh, indent=1)


def _dot(dom: Domain, a, b):
    acc = dom.zero()
    for x, y in zip(a, b):
        acc = dom.add(acc, dom.mul(x, y))
    return acc


def _plane_key(cfg: PointConfiguration, quad: Sequence[int]) -> tuple:
    """Canonical key for the 2-plane spanned by a coplanar quadruplet:
    the primitive kernel basis of the span (the plane's linear ideal)."""
    dom = cfg.domain
    M = ExactMatrix(dom, [list(cfg.points[i].coords) for i in quad])
    return tuple(tuple(v) for v in M.kernel_basis())


class ProjectiveTransformation:
    """An invertible matrix acting on points by T*p (forms transform by
    composition with the inverse, so V(F) maps onto V(F o T^{-1}))."""

    def __init__(self, matrix: ExactMatrix):
        if matrix.nrows != matrix.ncols:
            raise ValueError("transformation matrix must be square")
        if matrix.domain.is_zero(matrix.det()):
            raise ValueError("transformation matrix is singular")
        self.matrix = matrix
        self.domain = matrix.domain

    @classmethod
    def from_rows(cls, rows, domain: Domain = QQ) -> "ProjectiveTransformation":
        return cls(ExactMatrix(domain, rows))

    def inverse(self) -> "ProjectiveTransformation":
        return ProjectiveTransformation(self.matrix.inverse())

    def apply_point(self, p: ProjectivePoint) -> ProjectivePoint:
        return ProjectivePoint(self.matrix.apply(list(p.coords)), self.domain)

    def apply_configuration(self, cfg: PointConfiguration) -> PointConfiguration:
        return PointConfiguration([self.apply_point(p) for p in cfg])

    def apply_form(self, f: MultiPoly) -> MultiPoly:
        """Push a form forward: the zero locus of the result is the image of
        the zero locus of ``f``."""
        return f.substitute_linear(self.matrix.inverse())

    def __mul__(self, other: "ProjectiveTransformation") -> "ProjectiveTransformation":
        return ProjectiveTransformation(self.matrix * other.matrix)


def normalize_frame(points: Sequence[ProjectivePoint]) -> ProjectiveTransformation:
    """Transformation sending five points in general linear position to the
    reference frame (e0, e1, e2, e3, unit point).

    The map is pinned down by using the canonical representatives of the
    inputs and unit scale factors on the targets, which makes it exact and
    deterministic.  Five points determine a projectivity only up to the
    4-torus stabilising the frame, so re-normalising a transformed frame
    recovers the original map up to that torus (see tests).
    """
    if len(points) != 5:
        raise ValueError("frame normalisation needs exactly five points")
    dom = points[0].domain
    if any(p.dim != 4 for p in points):
        raise ValueError("frame points must live in P^4")
    if _span_rank(list(points)) != 5:
        raise ValueError("points are not in general linear position")
    B = ExactMatrix(dom, [[p.coords[i] for p in points] for i in range(5)])
    one, zero = dom.one(), dom.zero()
    targets = [[one, zero, zero, zero, one],
               [zero, one, zero, zero, one],
               [zero, zero, one, zero, one],
               [zero, zero, zero, one, one],
               [zero, zero, zero, zero, one]]
    C = ExactMatrix(dom, targets)
    return ProjectiveTransformation(C * B.inverse())


FRAME_TARGETS = ((1, 0, 0, 0, 0), (0, 1, 0, 0, 0), (0, 0, 1, 0, 0),
                 (0, 0, 0, 1, 0), (1, 1, 1, 1, 1))


def segre_points(domain: Domain = QQ) -> PointConfiguration:
    """The standard 10-point model of the Segre configuration (the node set
    of the 10-nodal cubic threefold)."""
    coords = [
        (0, 0, 1, 0, 0),
        (0, 0, 0, 1, 0),
        (0, 0, 0, 0, 1),
        (0, 0, 1, 1, 1),
        (0, 1, 0, 0, 0),
        (0, 1, 1, 1, 0),
        (1, 0, 0, 0, 0),
        (1, 0, 1, 0, 1),
        (1, 1, 1, 0, 0),
        (1, 1, 1, 1, 1),
    ]
    return PointConfiguration([ProjectivePoint(c, domain) for c in coords])


def segre_cubic(domain: Domain = QQ) -> MultiPoly:
    """The 10-nodal cubic whose nodes are ``segre_points()``."""
    return MultiPoly.parse(
        "x0*x1*x3-x0*x1*x4-x0*x2*x3+x0*x3*x4+x1*x2*x4-x1*x3*x4", 5, domain)


def is_segre(cfg: PointConfiguration) -> bool:
    """Two-criterion Segre test: 15 coplanar quadruplets and a nonzero space
    of cubics double at all ten points."""
    if len(cfg) != 10:
        raise ValueError("the Segre test applies to 10-point configurations")
    if len(cfg.coplanar_quadruplets) != 15:
        return False
    from .conditions import dim_forms_with_multiplicity
    return dim_forms_with_multiplicity(cfg, 2, 3) >= 1
