"""Exact multivariate polynomials over a pluggable scalar domain.

A ``MultiPoly`` maps full-length exponent tuples to nonzero coefficients.
Iteration order is graded-lexicographic throughout, which makes printing,
hashing and matrix assembly deterministic.  Variables are named
``x0 .. x{n-1}`` in the text grammar; a "binary form" is simply a
homogeneous ``MultiPoly`` in two variables.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .scalars import (QQ, Domain, DomainError, PrimeField,
                      uni_derivative, uni_divmod, uni_gcd, uni_trim)


def grlex_key(exps: tuple[int, ...]) -> tuple:
    return (sum(exps), exps)


def monomials_of_degree(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """All exponent tuples of the given total degree, grlex order."""
    out = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for e in range(remaining, -1, -1):
            rec(prefix + (e,), remaining - e, slots - 1)

    rec((), degree, nvars)
    out.sort(key=grlex_key)
    return out


def monomials_up_to_degree(nvars: int, degree: int) -> list[tuple[int, ...]]:
    out = []
    for d in range(degree + 1):
        out.extend(monomials_of_degree(nvars, d))
    return out


class MultiPoly:
    """Immutable exact polynomial in ``nvars`` variables over ``domain``."""

    __slots__ = ("domain", "nvars", "terms")

    def __init__(self, domain: Domain, nvars: int, terms: dict | None = None):
        self.domain = domain
        self.nvars = nvars
        clean: dict[tuple[int, ...], object] = {}
        if terms:
            for exps, c in terms.items():
                if len(exps) != nvars:
                    raise ValueError(f"exponent tuple {exps} has wrong length")
                if not domain.is_zero(c):
                    clean[tuple(exps)] = c
        self.terms = clean

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, domain: Domain, nvars: int) -> "MultiPoly":
        return cls(domain, nvars, {})

    @classmethod
    def constant(cls, domain: Domain, nvars: int, c) -> "MultiPoly":
        return cls(domain, nvars, {(0,) * nvars: c})

    @classmethod
    def one(cls, domain: Domain, nvars: int) -> "MultiPoly":
        return cls.constant(domain, nvars, domain.one())

    @classmethod
    def variable(cls, domain: Domain, nvars: int, i: int) -> "MultiPoly":
        if not 0 <= i < nvars:
            raise ValueError(f"variable index {i} out of range")
        exps = tuple(1 if j == i else 0 for j in range(nvars))
        return cls(domain, nvars, {exps: domain.one()})

    @classmethod
    def monomial(cls, domain: Domain, exps: Sequence[int], c=None) -> "MultiPoly":
        c = domain.one() if c is None else c
        return cls(domain, len(exps), {tuple(exps): c})

    # -- basic queries -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        degrees = {sum(e) for e in self.terms}
        return len(degrees) <= 1

    def require_homogeneous(self, what="polynomial") -> int:
        if not self.is_homogeneous():
            raise ValueError(f"{what} must be homogeneous")
        return self.degree()

    def homogeneous_part(self, k: int) -> "MultiPoly":
        return MultiPoly(self.domain, self.nvars,
                         {e: c for e, c in self.terms.items() if sum(e) == k})

    def coefficient(self, exps: Sequence[int]):
        return self.terms.get(tuple(exps), self.domain.zero())

    def sorted_terms(self) -> list[tuple[tuple[int, ...], object]]:
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def __iter__(self):
        return iter(self.sorted_terms())

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (isinstance(other, MultiPoly) and other.domain == self.domain
                and other.nvars == self.nvars and other.terms == self.terms)

    def __hash__(self):
        return hash((self.nvars, tuple(self.sorted_terms())))

    # -- arithmetic ----------------------------------------------------------

    def _check_compatible(self, other: "MultiPoly"):
        if not isinstance(other, MultiPoly):
            raise TypeError(f"expected MultiPoly, got {type(other)!r}")
        if other.nvars != self.nvars or other.domain != self.domain:
            raise DomainError("operands live in different polynomial rings")

    def __add__(self, other):
        self._check_compatible(other)
        dom = self.domain
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = dom.add(terms.get(e, dom.zero()), c)
        return MultiPoly(dom, self.nvars, terms)

    def __sub__(self, other):
        self._check_compatible(other)
        dom = self.domain
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = dom.sub(terms.get(e, dom.zero()), c)
        return MultiPoly(dom, self.nvars, terms)

    def __neg__(self):
        dom = self.domain
        return MultiPoly(dom, self.nvars, {e: dom.neg(c) for e, c in self.terms.items()})

    def __mul__(self, other):
        self._check_compatible(other)
        dom = self.domain
        terms: dict[tuple[int, ...], object] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                prod = dom.mul(c1, c2)
                if e in terms:
                    terms[e] = dom.add(terms[e], prod)
                else:
                    terms[e] = prod
        return MultiPoly(dom, self.nvars, terms)

    def scale(self, c) -> "MultiPoly":
        dom = self.domain
        return MultiPoly(dom, self.nvars, {e: dom.mul(v, c) for e, v in self.terms.items()})

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = MultiPoly.one(self.domain, self.nvars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def derivative(self, var_index: int) -> "MultiPoly":
        if not 0 <= var_index < self.nvars:
            raise ValueError(f"variable index {var_index} out of range")
        dom = self.domain
        terms = {}
        for e, c in self.terms.items():
            k = e[var_index]
            if k == 0:
                continue
            ne = e[:var_index] + (k - 1,) + e[var_index + 1:]
            nc = dom.mul(c, dom.from_int(k))
            if ne in terms:
                terms[ne] = dom.add(terms[ne], nc)
            else:
                terms[ne] = nc
        return MultiPoly(dom, self.nvars, terms)

    def gradient(self) -> list["MultiPoly"]:
        return [self.derivative(i) for i in range(self.nvars)]

    # -- evaluation and substitution ------------------------------------------

    def evaluate(self, point: Sequence):
        """Evaluate at a point given by domain scalars."""
        if len(point) != self.nvars:
            raise ValueError("wrong number of coordinates")
        dom = self.domain
        total = dom.zero()
        for e, c in self.terms.items():
            val = c
            for xi, ei in zip(point, e):
                for _ in range(ei):
                    val = dom.mul(val, xi)
            total = dom.add(total, val)
        return total

    def compose(self, targets: Sequence["MultiPoly"]) -> "MultiPoly":
        """Substitute ``x_i -> targets[i]``; targets share one ring."""
        if len(targets) != self.nvars:
            raise ValueError("need one substitution target per variable")
        t0 = targets[0]
        for t in targets:
            t0._check_compatible(t)
        if t0.domain != self.domain:
            raise DomainError("substitution targets use a different scalar domain")
        dom, nv = t0.domain, t0.nvars
        out = MultiPoly.zero(dom, nv)
        # cache powers of each target
        maxdeg = [0] * self.nvars
        for e in self.terms:
            for i, ei in enumerate(e):
                maxdeg[i] = max(maxdeg[i], ei)
        powers: list[list[MultiPoly]] = []
        for i, t in enumerate(targets):
            row = [MultiPoly.one(dom, nv)]
            for _ in range(maxdeg[i]):
                row.append(row[-1] * t)
            powers.append(row)
        for e, c in self.terms.items():
            term = MultiPoly.constant(dom, nv, c)
            for i, ei in enumerate(e):
                if ei:
                    term = term * powers[i][ei]
            out = out + term
        return out

    def substitute_linear(self, matrix) -> "MultiPoly":
        """Return f(T*y) for an invertible square matrix T over the domain."""
        from .linalg import ExactMatrix
        T = matrix if isinstance(matrix, ExactMatrix) else ExactMatrix(self.domain, matrix)
        if T.nrows != self.nvars or T.ncols != self.nvars:
            raise ValueError("transformation matrix has wrong shape")
        if T.domain != self.domain:
            raise DomainError("matrix domain differs from polynomial domain")
        if self.domain.is_zero(T.det()):
            raise ValueError("transformation matrix is singular")
        dom = self.domain
        targets = []
        for i in range(self.nvars):
            terms = {}
            for j in range(self.nvars):
                if not dom.is_zero(T.rows[i][j]):
                    e = tuple(1 if k == j else 0 for k in range(self.nvars))
                    terms[e] = T.rows[i][j]
            targets.append(MultiPoly(dom, self.nvars, terms))
        return self.compose(targets)

    def restrict_to_line(self, a: Sequence, b: Sequence) -> "MultiPoly":
        """Binary form f(s*A + t*B) in variables (s, t) = (x0, x1).

        Requires f homogeneous and A, B projectively distinct.
        """
        self.require_homogeneous("restriction to a line")
        if len(a) != self.nvars or len(b) != self.nvars:
            raise ValueError("points have wrong coordinate count")
        dom = self.domain
        # proportionality check
        if _proportional(dom, a, b):
            raise ValueError("line endpoints are projectively equal")
        s = MultiPoly.variable(dom, 2, 0)
        t = MultiPoly.variable(dom, 2, 1)
        targets = [s.scale(ai) + t.scale(bi) for ai, bi in zip(a, b)]
        return self.compose(targets)

    # -- structure ------------------------------------------------------------

    def euler_pairing_check(self) -> bool:
        """True iff sum_i x_i * df/dx_i == deg(f) * f (homogeneous input)."""
        d = self.require_homogeneous()
        dom = self.domain
        total = MultiPoly.zero(dom, self.nvars)
        for i in range(self.nvars):
            total = total + MultiPoly.variable(dom, self.nvars, i) * self.derivative(i)
        return total == self.scale(dom.from_int(max(d, 0)))

    def content_and_primitive(self) -> tuple[Fraction, "MultiPoly"]:
        """Over QQ: (content, primitive part) with integer coprime coefficients
        and positive leading (grlex-largest) coefficient."""
        if self.domain != QQ:
            raise DomainError("content is defined over the rationals here")
        if not self.terms:
            return Fraction(0), self
        coeffs = list(self.terms.values())
        num_gcd = 0
        den_lcm = 1
        for c in coeffs:
            num_gcd = math.gcd(num_gcd, abs(c.numerator))
            den_lcm = den_lcm * c.denominator // math.gcd(den_lcm, c.denominator)
        content = Fraction(num_gcd, den_lcm)
        lead = self.sorted_terms()[0][1]
        if lead < 0:
            content = -content
        return content, self.scale(1 / content)

    def primitive_part(self) -> "MultiPoly":
        return self.content_and_primitive()[1]

    # -- printing and parsing ---------------------------------------------------

    def to_string(self) -> str:
        if not self.terms:
            return "0"
        dom = self.domain
        parts = []
        for e, c in self.sorted_terms():
            cs = dom.to_str(c)
            if "+" in cs[1:] or "-" in cs[1:]:
                cs = f"({cs})"  # multi-term scalar (number field)
                neg = False
            else:
                neg = cs.startswith("-")
                if neg:
                    cs = cs[1:]
            vars_part = "*".join(
                f"x{i}" if ei == 1 else f"x{i}^{ei}"
                for i, ei in enumerate(e) if ei > 0)
            if vars_part:
                body = vars_part if cs == "1" else f"{cs}*{vars_part}"
            else:
                body = cs
            if not parts:
                parts.append(body if not neg else f"-{body}")
            else:
                parts.append(f"+{body}" if not neg else f"-{body}")
        return "".join(parts)

    def __repr__(self):
        return f"MultiPoly({self.to_string()!r})"

    @classmethod
    def parse(cls, text: str, nvars: int, domain: Domain = QQ) -> "MultiPoly":
        return _parse_poly(text, nvars, domain)


def _proportional(dom: Domain, a: Sequence, b: Sequence) -> bool:
    n = len(a)
    for i in range(n):
        for j in range(n):
            lhs = dom.mul(a[i], b[j])
            rhs = dom.mul(a[j], b[i])
            if not dom.is_zero(dom.sub(lhs, rhs)):
                return False
    return True


# -----------------------------------------------------------------------------
# Text grammar: terms `c*x0^e0*x1^e1*...` joined by `+`/`-`.  Coefficients are
# rationals `a` or `a/b`, prime-field integers, or parenthesised polynomials in
# `z` for number-field domains.  parse(print(f)) == f exactly.
# -----------------------------------------------------------------------------


def _split_terms(s: str) -> list[str]:
    terms = []
    depth = 0
    start = 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and i > start and s[i - 1] not in "+-*^/(":
            terms.append(s[start:i])
            start = i
    terms.append(s[start:])
    return terms


def _parse_poly(text: str, nvars: int, domain: Domain) -> MultiPoly:
    s = text.replace(" ", "").replace("**", "^")
    if not s:
        raise ValueError("empty polynomial string")
    if s == "0":
        return MultiPoly.zero(domain, nvars)
    terms: dict[tuple[int, ...], object] = {}
    for raw in _split_terms(s):
        term = raw
        negate = False
        while term and term[0] in "+-":
            if term[0] == "-":
                negate = not negate
            term = term[1:]
        if not term:
            raise ValueError(f"malformed term {raw!r}")
        coef = domain.one()
        exps = [0] * nvars
        for factor in _split_factors(term):
            if factor.startswith("x"):
                var, _, exp = factor.partition("^")
                idx = int(var[1:])
                if not 0 <= idx < nvars:
                    raise ValueError(f"variable {var} out of range for {nvars} variables")
                exps[idx] += int(exp) if exp else 1
            else:
                inner = factor[1:-1] if factor.startswith("(") and factor.endswith(")") else factor
                coef = domain.mul(coef, domain.parse_scalar(inner))
        if negate:
            coef = domain.neg(coef)
        key = tuple(exps)
        terms[key] = domain.add(terms.get(key, domain.zero()), coef)
    return MultiPoly(domain, nvars, terms)


def _split_factors(term: str) -> list[str]:
    factors = []
    depth = 0
    start = 0
    for i, ch in enumerate(term):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "*" and depth == 0:
            factors.append(term[start:i])
            start = i + 1
    factors.append(term[start:])
    # a rational like 3/4 stays one factor; "/" only appears inside scalars
    return [f for f in factors if f]


# -----------------------------------------------------------------------------
# Binary forms (homogeneous polynomials in two variables)
# -----------------------------------------------------------------------------


def _require_binary(b: MultiPoly) -> int:
    if b.nvars != 2:
        raise ValueError("binary form must have exactly two variables")
    return b.require_homogeneous("binary form")


def binary_to_univariate(b: MultiPoly) -> list:
    """Coefficients of b(t, 1) low to high; index = exponent of x0."""
    _require_binary(b)
    d = b.degree()
    dom = b.domain
    out = [dom.zero()] * (d + 1)
    for (e0, _e1), c in b.terms.items():
        out[e0] = c
    return uni_trim(dom, out)


def univariate_to_binary(coeffs: Sequence, degree: int, domain: Domain) -> MultiPoly:
    """Homogenise a univariate (low-first) to a binary form of given degree."""
    terms = {}
    for e, c in enumerate(coeffs):
        if not domain.is_zero(c):
            terms[(e, degree - e)] = c
    return MultiPoly(domain, 2, terms)


def squarefree_structure(b: MultiPoly) -> tuple[list[tuple[int, int]], int]:
    """Multiplicity profile of a nonzero binary form over a field of
    characteristic zero (or larger than the degree).

    Returns ``(profile, squarefree_degree)`` where profile lists pairs
    ``(multiplicity, number_of_distinct_roots)`` with positive counts, sorted
    by multiplicity, roots counted over the algebraic closure (the point at
    infinity included), and ``squarefree_degree`` is the total number of
    distinct roots.
    """
    d = _require_binary(b)
    if b.is_zero():
        raise ValueError("squarefree structure of the zero form")
    dom = b.domain
    if isinstance(dom, PrimeField) and dom.p <= d:
        raise DomainError("characteristic too small for squarefree analysis")
    g = binary_to_univariate(b)
    inf_mult = d - (len(g) - 1)  # multiplicity of the root at infinity (x1 = 0)
    profile: dict[int, int] = {}
    # Yun's algorithm on the dehomogenisation
    if len(g) > 1:
        g_prime = uni_derivative(dom, g)
        a = uni_gcd(dom, g, g_prime)
        b1, _ = uni_divmod(dom, g, a)
        c1, _ = uni_divmod(dom, g_prime, a)
        k = 1
        while len(b1) > 1:
            d1 = [dom.sub(x, y) for x, y in
                  _pad_pair(c1, uni_derivative(dom, b1), dom)]
            d1 = uni_trim(dom, d1)
            factor = uni_gcd(dom, b1, d1)
            if len(factor) > 1:
                profile[k] = profile.get(k, 0) + (len(factor) - 1)
            b1, _ = uni_divmod(dom, b1, factor)
            c1, _ = uni_divmod(dom, d1, factor)
            k += 1
    if inf_mult > 0:
        profile[inf_mult] = profile.get(inf_mult, 0) + 1
    sf_degree = sum(profile.values())
    return sorted(profile.items()), sf_degree


def _pad_pair(a: list, b: list, dom: Domain):
    n = max(len(a), len(b))
    a = list(a) + [dom.zero()] * (n - len(a))
    b = list(b) + [dom.zero()] * (n - len(b))
    return zip(a, b)


def linear_factor_test(f: MultiPoly, linear: MultiPoly) -> tuple[bool, MultiPoly | None]:
    """Exact divisibility of ``f`` by a nonzero linear form; returns
    ``(divides, quotient_or_None)``."""
    f._check_compatible(linear)
    if linear.is_zero() or linear.degree() != 1:
        raise ValueError("divisor must be a nonzero linear form")
    dom = f.domain
    if f.is_zero():
        return True, f
    # pick the pivot variable: grlex-largest variable present in the form
    pivot = None
    for e, c in linear.sorted_terms():
        if sum(e) == 1:
            pivot = e.index(1)
            break
    if pivot is None:
        raise ValueError("divisor has no linear part")
    c_piv = linear.coefficient(tuple(1 if i == pivot else 0 for i in range(f.nvars)))
    # linear = c_piv * x_piv - rest  =>  x_piv = rest / c_piv on V(linear)
    rest = MultiPoly(dom, f.nvars,
                     {e: dom.neg(c) for e, c in linear.terms.items()
                      if e[pivot] == 0})
    inv_piv = dom.inv(c_piv)
    # synthetic division in x_piv: f = sum a_k(y) x^k
    by_deg: dict[int, dict] = {}
    for e, c in f.terms.items():
        k = e[pivot]
        reduced = e[:pivot] + (0,) + e[pivot + 1:]
        by_deg.setdefault(k, {})[reduced] = c
    max_k = max(by_deg)
    a = [MultiPoly(dom, f.nvars, by_deg.get(k, {})) for k in range(max_k + 1)]
    quotient_coeffs = [MultiPoly.zero(dom, f.nvars) for _ in range(max_k)]
    carry = MultiPoly.zero(dom, f.nvars)
    for k in range(max_k, 0, -1):
        b_km1 = (a[k] + carry).scale(inv_piv)
        quotient_coeffs[k - 1] = b_km1
        carry = b_km1 * rest
    remainder = a[0] + carry
    if not remainder.is_zero():
        return False, None
    xp = MultiPoly.variable(dom, f.nvars, pivot)
    q = MultiPoly.zero(dom, f.nvars)
    power = MultiPoly.one(dom, f.nvars)
    for k in range(max_k):
        q = q + quotient_coeffs[k] * power
        power = power * xp
    return True, q


def reduce_poly(f: MultiPoly, target: Domain) -> MultiPoly:
    """Map a rational polynomial into a prime field or quadratic extension."""
    if f.domain != QQ:
        raise DomainError("reduction starts from a rational polynomial")
    terms = {}
    for e, c in f.terms.items():
        terms[e] = target.from_fraction(c)
    return MultiPoly(target, f.nvars, terms)
