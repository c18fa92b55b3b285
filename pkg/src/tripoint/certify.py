"""Finite-field certificates: smoothness, ordinary triple points, and the
no-extra-singularities heuristic for whole models.

Soundness of the smoothness certificate: if a form keeps its degree mod p
and its reduction defines a smooth hypersurface over GF(p) (checked by an
exhaustive point scan), then its discriminant is nonzero mod p, hence
nonzero in characteristic zero, so the original hypersurface is smooth.
One good prime therefore certifies smoothness over the rationals.

"Exactly these singular points and no others" is different: a scan can only
rule out extra singular points with coordinates in the scanned field, so the
combined verdict over several primes (and optionally GF(p^2)) is recorded as
a heuristic, never as a proof.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

from .ffscan import good_reduction, singular_points_over
from .incidence import ProjectivePoint
from .jets import local_expansion
from .multipoly import MultiPoly
from .scalars import GF, DomainError, QuadraticExtension, field_spec

DEFAULT_SMOOTHNESS_PRIMES = (7, 11, 13, 17, 19, 23)
HEURISTIC_PRIMES = (7, 11, 13)
HEURISTIC_SQUARE_PRIMES = (5, 7)


def form_fingerprint(F: MultiPoly) -> str:
    payload = json.dumps({"field": field_spec(F.domain), "poly": F.to_string(),
                          "nvars": F.nvars}, sort_keys=True)
    return hashlib.sha256(payload.encode()).hexdigest()[:16]


@dataclass(frozen=True)
class PrimeVerdict:
    field: str
    status: str                 # "smooth" | "singular-points" | "bad-reduction"
    points: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {"field": self.field, "status": self.status, "points": list(self.points)}


@dataclass(frozen=True)
class SmoothnessCertificate:
    form_hash: str
    verdicts: tuple[PrimeVerdict, ...]

    @property
    def status(self) -> str:
        """"smooth" once any good prime certifies; otherwise "unknown"."""
        if any(v.status == "smooth" for v in self.verdicts):
            return "smooth"
        return "unknown"

    def to_json(self) -> dict:
        return {"form": self.form_hash, "status": self.status,
                "verdicts": [v.to_json() for v in self.verdicts]}


def certify_smooth(F: MultiPoly, primes=DEFAULT_SMOOTHNESS_PRIMES,
                   stop_early: bool = True) -> SmoothnessCertificate:
    """Certify V(F) smooth over the rationals by scanning good primes."""
    verdicts = []
    for p in primes:
        fld = GF(p)
        if not good_reduction(F, fld):
            verdicts.append(PrimeVerdict(fld.name, "bad-reduction"))
            continue
        pts = singular_points_over(F, fld)
        if pts:
            verdicts.append(PrimeVerdict(fld.name, "singular-points",
                                         tuple(repr(q) for q in pts)))
        else:
            verdicts.append(PrimeVerdict(fld.name, "smooth"))
            if stop_early:
                break
    return SmoothnessCertificate(form_fingerprint(F), tuple(verdicts))


@dataclass(frozen=True)
class TriplePointCertificate:
    point: ProjectivePoint
    ok: bool
    reason: str | None           # None | "multiplicity" | "singular-cone" | "bad-reduction"
    multiplicity: int
    cone_certificate: SmoothnessCertificate | None

    def to_json(self) -> dict:
        return {"point": self.point.to_json(), "ok": self.ok, "reason": self.reason,
                "multiplicity": self.multiplicity,
                "cone": self.cone_certificate.to_json() if self.cone_certificate else None}


def certify_ordinary_triple_point(F: MultiPoly, P: ProjectivePoint,
                                  primes=DEFAULT_SMOOTHNESS_PRIMES) -> TriplePointCertificate:
    """An ordinary triple point: multiplicity exactly 3 and a tangent cone
    that is a cone over a smooth cubic surface."""
    _, local = local_expansion(F, P)
    mult = 0
    for k in range(local.degree() + 1):
        if not local.homogeneous_part(k).is_zero():
            mult = k
            break
    else:
        mult = -1
    if mult != 3:
        return TriplePointCertificate(P, False, "multiplicity", mult, None)
    cone = local.homogeneous_part(3)
    cert = certify_smooth(cone, primes)
    if cert.status == "smooth":
        return TriplePointCertificate(P, True, None, 3, cert)
    reason = "singular-cone" if any(v.status == "singular-points" for v in cert.verdicts) \
        else "bad-reduction"
    return TriplePointCertificate(P, False, reason, 3, cert)


@dataclass(frozen=True)
class ScanVerdict:
    field: str
    status: str                  # "clean" | "extra-points" | "bad-reduction"
    reason: str | None = None
    extra_points: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {"field": self.field, "status": self.status, "reason": self.reason,
                "extra_points": list(self.extra_points)}


@dataclass(frozen=True)
class SingularLocusHeuristic:
    """Per-field comparison of the scanned singular locus against the
    reductions of the declared points.

    The overall verdict is labelled heuristic: a field counts as "clean"
    when the scan finds exactly the reductions of the declared points, and
    the verdict holds once ``min_clean`` fields are clean.  Extra points at
    an individual field are recorded; they are reduction artifacts whenever
    enough other fields are clean (a genuine extra rational singular point
    would reduce to a singular point at every good prime)."""

    form_hash: str
    verdicts: tuple[ScanVerdict, ...]
    min_clean: int = 3

    @property
    def clean_fields(self) -> tuple[str, ...]:
        return tuple(v.field for v in self.verdicts if v.status == "clean")

    @property
    def ok(self) -> bool:
        return len(self.clean_fields) >= self.min_clean

    @property
    def strict_clean(self) -> bool:
        return all(v.status == "clean" for v in self.verdicts)

    def status_of(self, field_name: str) -> str | None:
        return next((v.status for v in self.verdicts if v.field == field_name),
                    None)

    def clean_at(self, field_names) -> bool:
        return all(self.status_of(name) == "clean" for name in field_names)

    def to_json(self) -> dict:
        return {"form": self.form_hash, "heuristic": True, "ok": self.ok,
                "clean_fields": list(self.clean_fields),
                "verdicts": [v.to_json() for v in self.verdicts]}


def _reduce_declared(points, fld):
    """Reductions of the declared points, or None when a denominator
    vanishes or two points collide (bad reduction of the configuration)."""
    reduced = set()
    for P in points:
        try:
            coords = [fld.from_fraction(c) for c in P.coords]
        except DomainError:
            return None
        reduced.add(ProjectivePoint(coords, fld))
    if len(reduced) != len(points):
        return None
    return reduced


def _scan_one(F: MultiPoly, declared_points, fld) -> ScanVerdict:
    if not good_reduction(F, fld):
        return ScanVerdict(fld.name, "bad-reduction", "degree drops")
    declared = _reduce_declared(declared_points, fld)
    if declared is None:
        return ScanVerdict(fld.name, "bad-reduction", "declared points collide")
    found = set(singular_points_over(F, fld))
    extras = found - declared
    if extras:
        return ScanVerdict(fld.name, "extra-points",
                           extra_points=tuple(sorted(repr(q) for q in extras)))
    if found != declared:
        return ScanVerdict(fld.name, "bad-reduction",
                           "declared point not singular after reduction")
    return ScanVerdict(fld.name, "clean")


def scan_singular_locus(F: MultiPoly, declared_points, fields,
                        min_clean: int = 3) -> SingularLocusHeuristic:
    """Compare the scanned singular locus against the declared points over
    each given field (no adaptive extension)."""
    verdicts = [_scan_one(F, declared_points, fld) for fld in fields]
    return SingularLocusHeuristic(form_fingerprint(F), tuple(verdicts), min_clean)


EXTENSION_PRIMES = (17, 19, 23, 29, 31, 37, 41)


def certify_singular_locus(F: MultiPoly, declared_points,
                           primes=HEURISTIC_PRIMES,
                           square_primes=(),
                           min_clean: int = 3) -> SingularLocusHeuristic:
    """The no-extra-singularities heuristic: scan the default primes, extend
    past them while fewer than ``min_clean`` scans are clean, and append any
    requested GF(p^2) scans.  All verdicts stay in the certificate."""
    verdicts = []
    clean = 0
    for p in list(primes) + [q for q in EXTENSION_PRIMES if q not in primes]:
        if clean >= min_clean and p not in primes:
            break
        v = _scan_one(F, declared_points, GF(p))
        verdicts.append(v)
        if v.status == "clean":
            clean += 1
    for p in square_primes:
        verdicts.append(_scan_one(F, declared_points, QuadraticExtension(p)))
    return SingularLocusHeuristic(form_fingerprint(F), tuple(verdicts), min_clean)


def heuristic_fields(primes=HEURISTIC_PRIMES, square_primes=()):
    out = [GF(p) for p in primes]
    out.extend(QuadraticExtension(p) for p in square_primes)
    return out


@dataclass(frozen=True)
class ModelCertificate:
    """Everything the toolkit can certify about a declared model: one
    ordinariness certificate per point plus the singular-locus heuristic."""

    form_hash: str
    points: tuple[TriplePointCertificate, ...]
    singular_locus: SingularLocusHeuristic

    @property
    def all_points_ordinary(self) -> bool:
        return all(c.ok for c in self.points)

    @property
    def ok(self) -> bool:
        return self.all_points_ordinary and self.singular_locus.ok

    def to_json(self) -> dict:
        return {"form": self.form_hash,
                "points": [c.to_json() for c in self.points],
                "singular_locus": self.singular_locus.to_json(),
                "ok": self.ok}


def certify_model(F: MultiPoly, points,
                  primes=HEURISTIC_PRIMES,
                  square_primes=(),
                  cone_primes=DEFAULT_SMOOTHNESS_PRIMES) -> ModelCertificate:
    point_certs = tuple(certify_ordinary_triple_point(F, P, cone_primes)
                        for P in points)
    locus = certify_singular_locus(F, points, primes, square_primes)
    return ModelCertificate(form_fingerprint(F), point_certs, locus)
