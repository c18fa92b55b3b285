"""Exact scalar domains: rationals, prime fields, and quotient number fields.

Every coefficient in the toolkit lives in one of these domains.  Elements are
plain Python values (``Fraction``, ``int`` in ``[0, p)``, or a tuple of
``Fraction`` for number-field elements) and the domain object supplies the
arithmetic.  All operations are exact; there is no floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


class DomainError(ValueError):
    """Operands belong to different or unsuitable scalar domains."""


class NotInvertibleError(ZeroDivisionError):
    """Inversion of zero, or of a zero divisor in a non-field quotient ring."""

    def __init__(self, element, message="element is not invertible"):
        super().__init__(f"{message}: {element!r}")
        self.element = element


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Domain:
    """Common interface for exact scalar domains."""

    name = "abstract"

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def from_int(self, n: int):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        raise NotImplementedError

    def to_str(self, a) -> str:
        raise NotImplementedError

    def parse_scalar(self, text: str):
        raise NotImplementedError

    def element_spec(self, a):
        """JSON-friendly string form of an element (inverse of parse_scalar)."""
        return self.to_str(a)

    def coerce(self, x):
        """Best-effort conversion of ``x`` into a domain element."""
        if isinstance(x, int):
            return self.from_int(x)
        return x

    def __repr__(self):
        return self.name


class RationalField(Domain):
    """The rationals; elements are ``fractions.Fraction`` (lowest terms,
    positive denominator -- the stdlib maintains both invariants)."""

    name = "QQ"

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise NotInvertibleError(a)
        return 1 / a

    def is_zero(self, a):
        return a == 0

    def to_str(self, a):
        return str(a)

    def parse_scalar(self, text):
        return Fraction(text)

    def coerce(self, x):
        return Fraction(x)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


QQ = RationalField()


class PrimeField(Domain):
    """GF(p) for a prime p; elements are ints in ``[0, p)``."""

    def __init__(self, p: int):
        if not _is_prime(p):
            raise DomainError(f"{p} is not prime")
        self.p = p
        self.name = f"GF({p})"

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, n):
        return n % self.p

    def from_fraction(self, q: Fraction):
        """Reduce a rational mod p; the denominator must be a unit."""
        den = q.denominator % self.p
        if den == 0:
            raise DomainError(f"denominator of {q} vanishes mod {self.p}")
        return q.numerator * pow(den, self.p - 2, self.p) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise NotInvertibleError(a)
        return pow(a, self.p - 2, self.p)

    def is_zero(self, a):
        return a % self.p == 0

    def to_str(self, a):
        return str(a % self.p)

    def parse_scalar(self, text):
        return self.from_fraction(Fraction(text))

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


_GF_CACHE: dict[int, PrimeField] = {}


def GF(p: int) -> PrimeField:
    if p not in _GF_CACHE:
        _GF_CACHE[p] = PrimeField(p)
    return _GF_CACHE[p]


# ---------------------------------------------------------------------------
# Univariate polynomial helpers over a field domain.
#
# Polynomials are lists of domain elements, low degree first, with no trailing
# zeros ([] is the zero polynomial).  These back the number-field arithmetic
# and the squarefree analysis of binary forms.
# ---------------------------------------------------------------------------


def uni_trim(dom: Domain, c: list) -> list:
    while c and dom.is_zero(c[-1]):
        c.pop()
    return c


def uni_add(dom: Domain, a: Sequence, b: Sequence) -> list:
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else dom.zero()
        y = b[i] if i < len(b) else dom.zero()
        out.append(dom.add(x, y))
    return uni_trim(dom, out)


def uni_scale(dom: Domain, a: Sequence, c) -> list:
    if dom.is_zero(c):
        return []
    return uni_trim(dom, [dom.mul(x, c) for x in a])


def uni_mul(dom: Domain, a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [dom.zero()] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if dom.is_zero(x):
            continue
        for j, y in enumerate(b):
            out[i + j] = dom.add(out[i + j], dom.mul(x, y))
    return uni_trim(dom, out)


def uni_divmod(dom: Domain, a: Sequence, b: Sequence) -> tuple[list, list]:
    if not b:
        raise ZeroDivisionError("univariate division by zero polynomial")
    r = list(a)
    q = [dom.zero()] * max(0, len(a) - len(b) + 1)
    inv_lead = dom.inv(b[-1])
    while len(r) >= len(b):
        c = dom.mul(r[-1], inv_lead)
        k = len(r) - len(b)
        q[k] = c
        for i, y in enumerate(b):
            r[k + i] = dom.sub(r[k + i], dom.mul(c, y))
        uni_trim(dom, r)
        if not r:
            break
    return uni_trim(dom, q), r


def uni_monic(dom: Domain, a: Sequence) -> list:
    if not a:
        return []
    return uni_scale(dom, a, dom.inv(a[-1]))


def uni_gcd(dom: Domain, a: Sequence, b: Sequence) -> list:
    a, b = list(a), list(b)
    while b:
        _, r = uni_divmod(dom, a, b)
        a, b = b, r
    return uni_monic(dom, a)


def uni_ext_gcd(dom: Domain, a: Sequence, b: Sequence) -> tuple[list, list, list]:
    """Return (g, s, t) monic with s*a + t*b = g."""
    r0, r1 = list(a), list(b)
    s0, s1 = [dom.one()], []
    t0, t1 = [], [dom.one()]
    while r1:
        q, r = uni_divmod(dom, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, uni_add(dom, s0, uni_scale(dom, uni_mul(dom, q, s1), dom.neg(dom.one())))
        t0, t1 = t1, uni_add(dom, t0, uni_scale(dom, uni_mul(dom, q, t1), dom.neg(dom.one())))
    if not r0:
        return [], s0, t0
    lead_inv = dom.inv(r0[-1])
    return (uni_scale(dom, r0, lead_inv),
            uni_scale(dom, s0, lead_inv),
            uni_scale(dom, t0, lead_inv))


def uni_derivative(dom: Domain, a: Sequence) -> list:
    out = [dom.mul(a[i], dom.from_int(i)) for i in range(1, len(a))]
    return uni_trim(dom, out)


def _parse_uni_in_z(text: str) -> tuple[Fraction, ...]:
    """Parse a polynomial in ``z`` with rational coefficients, e.g.
    ``z^4-z^3+z^2-z+1`` or ``1/2*z + 3``.  Returns coefficients low to high."""
    s = text.replace(" ", "").replace("**", "^")
    if not s:
        raise ValueError("empty polynomial string")
    # split into signed terms
    terms: list[str] = []
    start = 0
    for i, ch in enumerate(s):
        if ch in "+-" and i > start and s[i - 1] not in "+-*^/":
            terms.append(s[start:i])
            start = i
    terms.append(s[start:])
    coeffs: dict[int, Fraction] = {}
    for term in terms:
        sign = Fraction(1)
        while term and term[0] in "+-":
            if term[0] == "-":
                sign = -sign
            term = term[1:]
        coef = Fraction(1)
        exp = 0
        for factor in term.split("*"):
            if not factor:
                raise ValueError(f"malformed term in {text!r}")
            if factor == "z":
                exp += 1
            elif factor.startswith("z^"):
                exp += int(factor[2:])
            elif factor[0] == "z":
                raise ValueError(f"malformed variable factor {factor!r}")
            else:
                coef *= Fraction(factor)
        coeffs[exp] = coeffs.get(exp, Fraction(0)) + sign * coef
    deg = max(coeffs) if coeffs else 0
    out = [coeffs.get(i, Fraction(0)) for i in range(deg + 1)]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return tuple(out)


def _format_uni_in_z(coeffs: Sequence[Fraction]) -> str:
    parts = []
    for e in range(len(coeffs) - 1, -1, -1):
        c = coeffs[e]
        if c == 0:
            continue
        if e == 0:
            body = str(abs(c))
        else:
            v = "z" if e == 1 else f"z^{e}"
            body = v if abs(c) == 1 else f"{abs(c)}*{v}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+{body}" if c > 0 else f"-{body}")
    return "".join(parts) if parts else "0"


class NumberField(Domain):
    """Q[z]/(modulus) for a monic modulus with rational coefficients.

    Elements are tuples of ``Fraction`` of length ``deg(modulus)``, low degree
    first.  The modulus need not be irreducible: inversion raises
    ``NotInvertibleError`` exactly on zero divisors.
    """

    def __init__(self, modulus: Sequence[Fraction] | str):
        if isinstance(modulus, str):
            modulus = _parse_uni_in_z(modulus)
        mod = [Fraction(c) for c in modulus]
        if len(mod) < 2:
            raise DomainError("modulus must have degree >= 1")
        if mod[-1] != 1:
            raise DomainError("modulus must be monic")
        self.modulus = tuple(mod)
        self.degree = len(mod) - 1
        self.name = f"QQ[z]/({_format_uni_in_z(mod)})"

    def _pad(self, coeffs: Sequence[Fraction]) -> tuple[Fraction, ...]:
        c = uni_trim(QQ, list(coeffs))
        if len(c) > self.degree:
            _, c = uni_divmod(QQ, c, list(self.modulus))
        return tuple(c) + (Fraction(0),) * (self.degree - len(c))

    def element(self, coeffs: Sequence) -> tuple[Fraction, ...]:
        return self._pad([Fraction(x) for x in coeffs])

    def generator(self) -> tuple[Fraction, ...]:
        return self.element([0, 1])

    def zero(self):
        return (Fraction(0),) * self.degree

    def one(self):
        return self.element([1])

    def from_int(self, n):
        return self.element([n])

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def mul(self, a, b):
        prod = uni_mul(QQ, uni_trim(QQ, list(a)), uni_trim(QQ, list(b)))
        return self._pad(prod)

    def inv(self, a):
        ap = uni_trim(QQ, list(a))
        if not ap:
            raise NotInvertibleError(a)
        g, s, _ = uni_ext_gcd(QQ, ap, list(self.modulus))
        if len(g) != 1:
            raise NotInvertibleError(a, "zero divisor in quotient ring")
        return self._pad(uni_scale(QQ, s, QQ.inv(g[0])))

    def is_zero(self, a):
        return all(x == 0 for x in a)

    def to_str(self, a):
        return _format_uni_in_z(list(a))

    def parse_scalar(self, text):
        return self._pad(list(_parse_uni_in_z(text)))

    def __eq__(self, other):
        return isinstance(other, NumberField) and other.modulus == self.modulus

    def __hash__(self):
        return hash(("NF", self.modulus))


class QuadraticExtension(Domain):
    """GF(p^2) realised as GF(p)[z]/(z^2 - r) with r the least non-residue.

    Elements are pairs ``(a, b)`` of ints representing ``a + b*z``.
    """

    def __init__(self, p: int):
        GF(p)  # validates primality
        if p == 2:
            raise DomainError("p must be odd")
        self.p = p
        r = next(r for r in range(2, p) if pow(r, (p - 1) // 2, p) == p - 1)
        self.non_residue = r
        self.name = f"GF({p}^2)"

    def zero(self):
        return (0, 0)

    def one(self):
        return (1, 0)

    def from_int(self, n):
        return (n % self.p, 0)

    def from_fraction(self, q: Fraction):
        return (GF(self.p).from_fraction(q), 0)

    def add(self, a, b):
        return ((a[0] + b[0]) % self.p, (a[1] + b[1]) % self.p)

    def sub(self, a, b):
        return ((a[0] - b[0]) % self.p, (a[1] - b[1]) % self.p)

    def neg(self, a):
        return ((-a[0]) % self.p, (-a[1]) % self.p)

    def mul(self, a, b):
        p, r = self.p, self.non_residue
        return ((a[0] * b[0] + r * a[1] * b[1]) % p, (a[0] * b[1] + a[1] * b[0]) % p)

    def inv(self, a):
        p, r = self.p, self.non_residue
        norm = (a[0] * a[0] - r * a[1] * a[1]) % p
        if norm == 0:
            raise NotInvertibleError(a)
        ninv = pow(norm, p - 2, p)
        return (a[0] * ninv % p, (-a[1]) * ninv % p)

    def is_zero(self, a):
        return a[0] % self.p == 0 and a[1] % self.p == 0

    def to_str(self, a):
        if a[1] == 0:
            return str(a[0])
        if a[0] == 0:
            return f"{a[1]}*z" if a[1] != 1 else "z"
        return f"{a[0]}+{a[1]}*z" if a[1] != 1 else f"{a[0]}+z"

    def parse_scalar(self, text):
        coeffs = _parse_uni_in_z(text)
        if len(coeffs) > 2:
            raise ValueError("element of a quadratic extension has degree <= 1")
        gfp = GF(self.p)
        a = gfp.from_fraction(coeffs[0])
        b = gfp.from_fraction(coeffs[1]) if len(coeffs) > 1 else 0
        return (a, b)

    def __eq__(self, other):
        return isinstance(other, QuadraticExtension) and other.p == self.p

    def __hash__(self):
        return hash(("GF2", self.p))


def field_spec(dom: Domain) -> dict:
    """JSON descriptor of a scalar domain."""
    if isinstance(dom, RationalField):
        return {"type": "rational"}
    if isinstance(dom, PrimeField):
        return {"type": "prime", "p": dom.p}
    if isinstance(dom, QuadraticExtension):
        return {"type": "prime-square", "p": dom.p}
    if isinstance(dom, NumberField):
        return {"type": "number-field", "modulus": _format_uni_in_z(dom.modulus)}
    raise DomainError(f"unknown domain {dom!r}")


def field_from_spec(spec: dict) -> Domain:
    kind = spec.get("type", "rational")
    if kind == "rational":
        return QQ
    if kind == "prime":
        return GF(int(spec["p"]))
    if kind == "prime-square":
        return QuadraticExtension(int(spec["p"]))
    if kind == "number-field":
        return NumberField(spec["modulus"])
    raise DomainError(f"unknown field spec {spec!r}")
