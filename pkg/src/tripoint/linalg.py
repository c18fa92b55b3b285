"""Dense exact linear algebra: rank, kernel, solve, determinant, inverse.

Three elimination engines sit behind one matrix type:

* rationals -- rows are scaled to integers and reduced by fraction-free
  cross-multiplication with content stripping (Bareiss-style growth control);
  determinants use the classical Bareiss exact-division scheme;
* prime fields -- vectorised elimination on int64 numpy arrays;
* any other field (number fields) -- straightforward Gaussian elimination
  through the domain's arithmetic.

``rank + len(kernel_basis) == ncols`` always holds.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

import numpy as np

from .scalars import QQ, Domain, DomainError, PrimeField


class InconsistentSystemError(ValueError):
    """Raised by solve_strict; carries a row combination y with y*M = 0, y*b != 0."""

    def __init__(self, witness):
        super().__init__("linear system is inconsistent")
        self.witness = witness


class ExactMatrix:
    __slots__ = ("domain", "nrows", "ncols", "rows")

    def __init__(self, domain: Domain, rows: Sequence[Sequence], ncols: int | None = None):
        self.domain = domain
        self.rows = [[domain.coerce(x) for x in row] for row in rows]
        self.nrows = len(self.rows)
        if self.nrows:
            widths = {len(r) for r in self.rows}
            if len(widths) != 1:
                raise ValueError("ragged rows")
            self.ncols = widths.pop()
        else:
            self.ncols = 0 if ncols is None else ncols

    # -- constructors ---------------------------------------------------------

    @classmethod
    def identity(cls, domain: Domain, n: int) -> "ExactMatrix":
        one, zero = domain.one(), domain.zero()
        return cls(domain, [[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, domain: Domain, m: int, n: int) -> "ExactMatrix":
        z = domain.zero()
        return cls(domain, [[z] * n for _ in range(m)], ncols=n)

    @classmethod
    def column(cls, domain: Domain, entries: Sequence) -> "ExactMatrix":
        return cls(domain, [[x] for x in entries])

    # -- basics ---------------------------------------------------------------

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.domain,
                           [[self.rows[i][j] for i in range(self.nrows)]
                            for j in range(self.ncols)], ncols=self.nrows)

    def __mul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if other.ncols is None or self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        if other.domain != self.domain:
            raise DomainError("matrix domains differ")
        dom = self.domain
        out = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc = dom.zero()
                for k in range(self.ncols):
                    acc = dom.add(acc, dom.mul(self.rows[i][k], other.rows[k][j]))
                row.append(acc)
            out.append(row)
        return ExactMatrix(dom, out, ncols=other.ncols)

    def apply(self, vec: Sequence) -> list:
        """Matrix-vector product."""
        if len(vec) != self.ncols:
            raise ValueError("vector length mismatch")
        dom = self.domain
        out = []
        for row in self.rows:
            acc = dom.zero()
            for a, x in zip(row, vec):
                acc = dom.add(acc, dom.mul(a, x))
            out.append(acc)
        return out

    def __eq__(self, other):
        return (isinstance(other, ExactMatrix) and other.domain == self.domain
                and other.rows == self.rows and other.ncols == self.ncols)

    def __repr__(self):
        return f"ExactMatrix({self.nrows}x{self.ncols} over {self.domain})"

    # -- elimination dispatch ----------------------------------------------------

    def rank(self) -> int:
        if self.nrows == 0 or self.ncols == 0:
            return 0
        if self.domain == QQ:
            return len(_int_echelon(_qq_int_rows(self.rows))[1])
        if isinstance(self.domain, PrimeField):
            _, pivots = _gfp_rref(self._gfp_array(), self.domain.p)
            return len(pivots)
        return len(_generic_echelon(self.domain, self.rows)[1])

    def kernel_basis(self) -> list[list]:
        """Basis of the right kernel; over QQ the vectors are primitive integer
        vectors with positive leading entry, in free-column order."""
        if self.ncols == 0:
            return []
        if self.nrows == 0:
            eye = ExactMatrix.identity(self.domain, self.ncols)
            return [list(r) for r in eye.rows]
        if self.domain == QQ:
            ech, pivots = _int_echelon(_qq_int_rows(self.rows))
            return _kernel_from_int_echelon(ech, pivots, self.ncols)
        if isinstance(self.domain, PrimeField):
            R, pivots = _gfp_rref(self._gfp_array(), self.domain.p)
            return _kernel_from_gfp_rref(R, pivots, self.ncols, self.domain.p)
        ech, pivots = _generic_echelon(self.domain, self.rows)
        return _kernel_from_generic_echelon(self.domain, ech, pivots, self.ncols)

    def solve(self, b: Sequence) -> list | None:
        """A particular solution of M x = b, or None if inconsistent."""
        if len(b) != self.nrows:
            raise ValueError("right-hand side has wrong length")
        dom = self.domain
        aug = ExactMatrix(dom, [list(r) + [dom.coerce(x)] for r, x in zip(self.rows, b)],
                          ncols=self.ncols + 1)
        if self.nrows == 0:
            return [dom.zero()] * self.ncols
        if dom == QQ:
            ech, pivots = _int_echelon(_qq_int_rows(aug.rows))
            if self.ncols in pivots:
                return None
            sol = _particular_from_int_echelon(ech, pivots, self.ncols)
            return sol
        if isinstance(dom, PrimeField):
            R, pivots = _gfp_rref(aug._gfp_array(), dom.p)
            if self.ncols in pivots:
                return None
            return _particular_from_gfp_rref(R, pivots, self.ncols)
        ech, pivots = _generic_echelon(dom, aug.rows)
        if self.ncols in pivots:
            return None
        return _particular_from_generic_echelon(dom, ech, pivots, self.ncols)

    def solve_strict(self, b: Sequence) -> list:
        """Like solve, but raise InconsistentSystemError with a certificate:
        a vector y with y*M = 0 and y.b != 0."""
        sol = self.solve(b)
        if sol is not None:
            return sol
        dom = self.domain
        for y in self.transpose().kernel_basis():
            acc = dom.zero()
            for yi, bi in zip(y, b):
                acc = dom.add(acc, dom.mul(yi, dom.coerce(bi)))
            if not dom.is_zero(acc):
                raise InconsistentSystemError(y)
        raise AssertionError("inconsistent system without certificate")

    def det(self):
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        dom = self.domain
        if self.nrows == 0:
            return dom.one()
        if dom == QQ:
            scaled, factors = _qq_int_rows_with_factors(self.rows)
            d = _bareiss_det(scaled)
            out = Fraction(d)
            for f in factors:
                out /= f
            return out
        return _generic_det(dom, self.rows)

    def inverse(self) -> "ExactMatrix":
        if self.nrows != self.ncols:
            raise ValueError("inverse of a non-square matrix")
        dom = self.domain
        n = self.nrows
        aug = [list(r) + [dom.one() if i == j else dom.zero() for j in range(n)]
               for i, r in enumerate(self.rows)]
        ech, pivots = _generic_echelon(dom, aug, reduce=True)
        if pivots[:n] != list(range(n)):
            raise ValueError("matrix is singular")
        inv_rows = [row[n:] for row in ech[:n]]
        return ExactMatrix(dom, inv_rows, ncols=n)

    def _gfp_array(self) -> np.ndarray:
        return np.array([[int(x) for x in row] for row in self.rows], dtype=np.int64)


# -----------------------------------------------------------------------------
# Rational (fraction-free integer) engine
# -----------------------------------------------------------------------------


def _qq_int_rows(rows: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    out = []
    for row in rows:
        lcm = 1
        for x in row:
            d = x.denominator
            lcm = lcm * d // math.gcd(lcm, d)
        out.append([int(x * lcm) for x in row])
    return out


def _qq_int_rows_with_factors(rows) -> tuple[list[list[int]], list[Fraction]]:
    out, factors = [], []
    for row in rows:
        lcm = 1
        for x in row:
            d = Fraction(x).denominator
            lcm = lcm * d // math.gcd(lcm, d)
        out.append([int(Fraction(x) * lcm) for x in row])
        factors.append(Fraction(lcm))
    return out, factors


def _strip_content(row: list[int]) -> list[int]:
    g = 0
    for x in row:
        if x:
            g = math.gcd(g, abs(x))
            if g == 1:
                return row
    if g > 1:
        return [x // g for x in row]
    return row


def _int_echelon(rows: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """Row echelon form over the integers (row-scaled), with pivot columns.

    Rows are combined by cross-multiplication and stripped of their content,
    so entries stay modest without any rational arithmetic.
    """
    work = [list(r) for r in rows]
    m = len(work)
    ncols = len(work[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        best = -1
        best_val = None
        for i in range(r, m):
            v = work[i][c]
            if v != 0 and (best_val is None or abs(v) < best_val):
                best, best_val = i, abs(v)
                if best_val == 1:
                    break
        if best < 0:
            continue
        work[r], work[best] = work[best], work[r]
        piv_row = work[r]
        piv = piv_row[c]
        for i in range(r + 1, m):
            a = work[i][c]
            if a == 0:
                continue
            g = math.gcd(abs(piv), abs(a))
            pm, am = piv // g, a // g
            row_i = work[i]
            work[i] = _strip_content([pm * x - am * y for x, y in zip(row_i, piv_row)])
        pivots.append(c)
        r += 1
        if r == m:
            break
    return work[:r] + [row for row in work[r:] if any(row)], pivots


def _kernel_from_int_echelon(ech, pivots, ncols) -> list[list[Fraction]]:
    free_cols = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free_cols:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for i in range(len(pivots) - 1, -1, -1):
            p = pivots[i]
            if p > f:
                continue
            row = ech[i]
            s = sum((Fraction(row[j]) * x[j] for j in range(p + 1, ncols) if x[j]),
                    Fraction(0))
            x[p] = -s / row[p]
        basis.append(_primitive_vector(x))
    return basis


def _primitive_vector(x: list[Fraction]) -> list[Fraction]:
    lcm = 1
    for v in x:
        lcm = lcm * v.denominator // math.gcd(lcm, v.denominator)
    ints = [int(v * lcm) for v in x]
    g = 0
    for v in ints:
        g = math.gcd(g, abs(v))
    if g > 1:
        ints = [v // g for v in ints]
    lead = next((v for v in ints if v), 0)
    if lead < 0:
        ints = [-v for v in ints]
    return [Fraction(v) for v in ints]


def _particular_from_int_echelon(ech, pivots, ncols) -> list[Fraction]:
    # augmented column is index ncols; free variables set to zero
    x = [Fraction(0)] * ncols
    for i in range(len(pivots) - 1, -1, -1):
        p = pivots[i]
        row = ech[i]
        s = sum((Fraction(row[j]) * x[j] for j in range(p + 1, ncols) if x[j]),
                Fraction(0))
        x[p] = (Fraction(row[ncols]) - s) / row[p]
    return x


def _bareiss_det(rows: list[list[int]]) -> int:
    a = [list(r) for r in rows]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), -1)
            if swap < 0:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


class IntRowBasis:
    """Incremental row basis over the integers (content-stripped, fraction
    free); tracks rank as rows arrive."""

    def __init__(self):
        self.pivot_rows: dict[int, list[int]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivot_rows)

    def add(self, row: Sequence[int]) -> bool:
        """Reduce the row against the basis; returns True if rank grew."""
        work = list(row)
        while True:
            lead = next((i for i, v in enumerate(work) if v), None)
            if lead is None:
                return False
            piv_row = self.pivot_rows.get(lead)
            if piv_row is None:
                self.pivot_rows[lead] = _strip_content(work)
                return True
            a, b = piv_row[lead], work[lead]
            g = math.gcd(abs(a), abs(b))
            am, bm = a // g, b // g
            work = _strip_content([am * x - bm * y for x, y in zip(work, piv_row)])

    def add_fraction_row(self, row: Sequence[Fraction]) -> bool:
        lcm = 1
        for x in row:
            d = x.denominator
            lcm = lcm * d // math.gcd(lcm, d)
        return self.add([int(x * lcm) for x in row])


# -----------------------------------------------------------------------------
# Prime-field engine (vectorised)
# -----------------------------------------------------------------------------


def _gfp_rref(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    A = a % p
    m, n = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        col = A[r:, c]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        inv = pow(int(A[r, c]), p - 2, p)
        A[r] = (A[r] * inv) % p
        rows = np.nonzero(A[:, c])[0]
        rows = rows[rows != r]
        if rows.size:
            A[rows] = (A[rows] - np.outer(A[rows, c], A[r])) % p
        pivots.append(c)
        r += 1
    return A, pivots


def _kernel_from_gfp_rref(R: np.ndarray, pivots: list[int], ncols: int, p: int) -> list[list[int]]:
    free_cols = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free_cols:
        x = [0] * ncols
        x[f] = 1
        for i, pc in enumerate(pivots):
            x[pc] = int((-R[i, f]) % p)
        basis.append(x)
    return basis


def _particular_from_gfp_rref(R: np.ndarray, pivots: list[int], ncols: int) -> list[int]:
    x = [0] * ncols
    for i, pc in enumerate(pivots):
        x[pc] = int(R[i, ncols])
    return x


# -----------------------------------------------------------------------------
# Generic field engine
# -----------------------------------------------------------------------------


def _generic_echelon(dom: Domain, rows, reduce: bool = False):
    work = [list(r) for r in rows]
    m = len(work)
    n = len(work[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        idx = next((i for i in range(r, m) if not dom.is_zero(work[i][c])), -1)
        if idx < 0:
            continue
        work[r], work[idx] = work[idx], work[r]
        inv = dom.inv(work[r][c])
        work[r] = [dom.mul(x, inv) for x in work[r]]
        targets = range(m) if reduce else range(r + 1, m)
        for i in targets:
            if i == r or dom.is_zero(work[i][c]):
                continue
            f = work[i][c]
            work[i] = [dom.sub(x, dom.mul(f, y)) for x, y in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
    return work, pivots


def _kernel_from_generic_echelon(dom: Domain, ech, pivots, ncols):
    free_cols = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free_cols:
        x = [dom.zero()] * ncols
        x[f] = dom.one()
        for i in range(len(pivots) - 1, -1, -1):
            p = pivots[i]
            if p > f:
                continue
            row = ech[i]
            s = dom.zero()
            for j in range(p + 1, ncols):
                if not dom.is_zero(x[j]):
                    s = dom.add(s, dom.mul(row[j], x[j]))
            x[p] = dom.neg(s)  # pivot normalised to 1
        basis.append(x)
    return basis


def _particular_from_generic_echelon(dom: Domain, ech, pivots, ncols):
    x = [dom.zero()] * ncols
    for i in range(len(pivots) - 1, -1, -1):
        p = pivots[i]
        row = ech[i]
        s = dom.zero()
        for j in range(p + 1, ncols):
            if not dom.is_zero(x[j]):
                s = dom.add(s, dom.mul(row[j], x[j]))
        x[p] = dom.sub(row[ncols], s)
    return x


def _generic_det(dom: Domain, rows):
    work = [list(r) for r in rows]
    n = len(work)
    det = dom.one()
    for c in range(n):
        idx = next((i for i in range(c, n) if not dom.is_zero(work[i][c])), -1)
        if idx < 0:
            return dom.zero()
        if idx != c:
            work[c], work[idx] = work[idx], work[c]
            det = dom.neg(det)
        piv = work[c][c]
        det = dom.mul(det, piv)
        inv = dom.inv(piv)
        for i in range(c + 1, n):
            if dom.is_zero(work[i][c]):
                continue
            f = dom.mul(work[i][c], inv)
            work[i] = [dom.sub(x, dom.mul(f, y)) for x, y in zip(work[i], work[c])]
    return det
