"""Exhaustive singular-point scans of hypersurfaces over small finite fields.

Projective points are enumerated chart by chart with the first nonzero
coordinate normalised to 1, and polynomial evaluation is vectorised with
numpy (Horner recursion over the chart variables).  Prime fields use direct
modular arithmetic on int64 arrays; GF(p^2) uses precomputed addition and
multiplication tables over element codes ``a + p*b``.

All arithmetic is exact integer arithmetic mod p; numpy is a bulk carrier,
not a numeric approximation.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .incidence import ProjectivePoint
from .multipoly import MultiPoly
from .scalars import DomainError, PrimeField, QuadraticExtension

_CHUNK_TARGET = 2_000_000


class _PrimeVecOps:
    """Vectorised GF(p) arithmetic on int64 arrays of element values."""

    def __init__(self, p: int):
        self.p = p
        self.q = p

    def element_values(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def add(self, a, b):
        return (a + b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def coeff_code(self, c: Fraction) -> int:
        den = c.denominator % self.p
        if den == 0:
            raise DomainError(f"denominator of {c} vanishes mod {self.p}")
        return c.numerator * pow(den, self.p - 2, self.p) % self.p

    def reduce_code(self, n: int) -> int:
        return n % self.p

    def decode(self, code: int):
        return int(code)


class _QuadVecOps:
    """Vectorised GF(p^2) arithmetic; elements are codes ``a + p*b`` standing
    for ``a + b*z`` with z^2 a fixed non-residue r."""

    def __init__(self, field: QuadraticExtension):
        p = field.p
        self.p = p
        self.q = p * p
        r = field.non_residue
        a = np.arange(self.q, dtype=np.int64)
        lo, hi = a % p, a // p
        x_lo, x_hi = lo[:, None], hi[:, None]
        y_lo, y_hi = lo[None, :], hi[None, :]
        prod_lo = (x_lo * y_lo + r * x_hi * y_hi) % p
        prod_hi = (x_lo * y_hi + x_hi * y_lo) % p
        self._mul_table = (prod_lo + p * prod_hi).astype(np.int64)
        self._add_table = ((x_lo + y_lo) % p + p * ((x_hi + y_hi) % p)).astype(np.int64)

    def element_values(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def add(self, a, b):
        return self._add_table[a, b]

    def mul(self, a, b):
        return self._mul_table[a, b]

    def coeff_code(self, c: Fraction) -> int:
        den = c.denominator % self.p
        if den == 0:
            raise DomainError(f"denominator of {c} vanishes mod {self.p}")
        return c.numerator * pow(den, self.p - 2, self.p) % self.p

    def reduce_code(self, n: int) -> int:
        return (n % self.p) + self.p * ((n // self.p) % self.p)

    def decode(self, code: int):
        return (int(code % self.p), int(code // self.p))


def _vec_ops(field):
    if isinstance(field, PrimeField):
        return _PrimeVecOps(field.p)
    if isinstance(field, QuadraticExtension):
        return _QuadVecOps(field)
    raise DomainError(f"scans require a finite field, got {field!r}")


def _coeff_codes(F: MultiPoly, ops) -> dict[tuple[int, ...], int]:
    """Coefficients of a rational (or already-finite) polynomial as element
    codes; raises on vanishing denominators."""
    terms: dict[tuple[int, ...], int] = {}
    for e, c in F.terms.items():
        if isinstance(c, Fraction):
            code = ops.coeff_code(c)
        elif isinstance(c, int):
            code = c % ops.p
        elif isinstance(c, tuple) and len(c) == 2:
            code = (c[0] % ops.p) + ops.p * (c[1] % ops.p)
        else:
            raise DomainError(f"cannot reduce coefficient {c!r}")
        if code:
            terms[e] = code
    return terms


def good_reduction(F: MultiPoly, field) -> bool:
    """True when F keeps its degree over the field (for homogeneous F: some
    coefficient stays a unit and no denominator vanishes)."""
    ops = _vec_ops(field)
    try:
        terms = _coeff_codes(F, ops)
    except DomainError:
        return False
    return bool(terms) and max(sum(e) for e in terms) == F.degree()


def _eval_terms(terms: dict[tuple[int, ...], int], arrays: list, ops):
    """Horner evaluation of coded terms on broadcastable value arrays."""
    if not terms:
        return np.int64(0)
    if not arrays:
        return np.int64(terms.get((), 0))
    groups: dict[int, dict] = {}
    for e, c in terms.items():
        groups.setdefault(e[0], {})[e[1:]] = c
    x0 = arrays[0]
    acc = None
    prev = 0
    for e0 in sorted(groups, reverse=True):
        sub = _eval_terms(groups[e0], arrays[1:], ops)
        if acc is None:
            acc = sub
        else:
            for _ in range(prev - e0):
                acc = ops.mul(acc, x0)
            acc = ops.add(acc, sub)
        prev = e0
    for _ in range(prev):
        acc = ops.mul(acc, x0)
    return acc


def _substitute_chart(terms: dict[tuple[int, ...], int], chart: int, ops):
    """Set x_0..x_{chart-1} = 0 and x_chart = 1; keys shrink to the free
    variables x_{chart+1}.. (keys stay distinct for homogeneous input, the
    reduction below is for safety)."""
    out: dict[tuple[int, ...], int] = {}
    for e, c in terms.items():
        if any(e[i] for i in range(chart)):
            continue
        key = e[chart + 1:]
        if key in out:
            merged = int(ops.add(np.int64(out[key]), np.int64(c)))
            if merged:
                out[key] = merged
            else:
                del out[key]
        else:
            out[key] = c
    return out


def _grid_arrays(ops, nfree: int, first_slice: np.ndarray) -> list:
    vals = ops.element_values()
    arrays = []
    for i in range(nfree):
        v = first_slice if i == 0 else vals
        shape = [1] * nfree
        shape[i] = len(v)
        arrays.append(v.reshape(shape))
    return arrays


def projective_point_count(q: int, dim: int) -> int:
    return sum(q ** k for k in range(dim + 1))


def singular_points_over(F: MultiPoly, field) -> list[ProjectivePoint]:
    """All points of P^n over the field where F and every partial derivative
    vanish.

    F must be homogeneous with good reduction over the field (degree
    preserved); the scan is exhaustive over all projective points with first
    nonzero coordinate 1, returned in that deterministic chart order.
    """
    F.require_homogeneous("scan input")
    ops = _vec_ops(field)
    if not good_reduction(F, field):
        raise DomainError(f"bad reduction of the form over {field!r}")
    nvars = F.nvars
    d = F.degree()
    codes = _coeff_codes(F, ops)
    partial_codes = [_coeff_codes(F.derivative(i), ops) for i in range(nvars)]
    euler_applies = d % ops.p != 0

    found: list[ProjectivePoint] = []
    for chart in range(nvars):
        nfree = nvars - chart - 1
        fsub = _substitute_chart(codes, chart, ops)
        psubs = [_substitute_chart(pc, chart, ops) for pc in partial_codes]
        # on x_chart = 1 the Euler relation makes the chart partial redundant
        # whenever the degree is a unit in the field
        partial_idx = [i for i in range(nvars) if not (euler_applies and i == chart)]
        if nfree == 0:
            ok = int(_eval_terms(fsub, [], ops)) == 0
            for i in partial_idx:
                ok = ok and int(_eval_terms(psubs[i], [], ops)) == 0
            if ok:
                found.append(_decode_point(ops, field, chart, nvars, ()))
            continue
        vals = ops.element_values()
        chunk = max(1, min(ops.q, _CHUNK_TARGET // max(1, ops.q ** (nfree - 1))))
        for lo in range(0, ops.q, chunk):
            first = vals[lo:lo + chunk]
            arrays = _grid_arrays(ops, nfree, first)
            shape = tuple(len(first) if i == 0 else ops.q for i in range(nfree))
            fv = np.broadcast_to(np.asarray(_eval_terms(fsub, arrays, ops)), shape)
            mask = fv == 0
            if not mask.any():
                continue
            idx = np.nonzero(mask)
            coords = [np.asarray(arrays[i]).reshape(-1)[idx[i]] for i in range(nfree)]
            alive = np.ones(len(coords[0]), dtype=bool)
            for i in partial_idx:
                if not alive.any():
                    break
                sub_arrays = [c[alive] for c in coords]
                pv = np.asarray(_eval_terms(psubs[i], sub_arrays, ops))
                if pv.ndim == 0:
                    pv = np.broadcast_to(pv, sub_arrays[0].shape)
                alive[np.nonzero(alive)[0][pv != 0]] = False
            for flat in np.nonzero(alive)[0]:
                tail = tuple(int(coords[i][flat]) for i in range(nfree))
                found.append(_decode_point(ops, field, chart, nvars, tail))
    return found


def _decode_point(ops, field, chart: int, nvars: int, tail: tuple[int, ...]) -> ProjectivePoint:
    coords = [field.zero()] * nvars
    coords[chart] = field.one()
    for i, code in enumerate(tail):
        coords[chart + 1 + i] = ops.decode(code)
    return ProjectivePoint(coords, field)
