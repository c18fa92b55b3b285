"""Mechanized re-verification of the decisive computational steps behind the
analysis: the spectral counting bound, the uniqueness/reducibility of the
degenerate 10-point quintic, the emptiness of the cyclotomic linear systems,
and the exclusion identity for an 11th triple point on the Segre
configuration.  Each check is stateless and returns a verdict object.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .conditions import forms_with_multiplicity_basis
from .incidence import PointConfiguration, ProjectivePoint, segre_cubic
from .linalg import ExactMatrix
from .multipoly import MultiPoly, linear_factor_test
from .scalars import QQ, Domain, NumberField


# -- spectral bound --------------------------------------------------------------


@dataclass(frozen=True)
class SpectrumInterval:
    """A singularity spectrum (rational values with multiplicities) and the
    semicontinuity interval (alpha, alpha + 1)."""

    values: tuple[tuple[Fraction, int], ...]
    alpha: Fraction

    def length_in_interval(self) -> int:
        lo, hi = self.alpha, self.alpha + 1
        return sum(m for v, m in self.values if lo < v < hi)


TRIPLE_POINT_SPECTRUM: tuple[tuple[Fraction, int], ...] = (
    (Fraction(1, 3), 1), (Fraction(2, 3), 4), (Fraction(1), 6),
    (Fraction(4, 3), 4), (Fraction(5, 3), 1),
)

# spectrum of an ordinary fivefold point, truncated after 6/5 (sufficient for
# every interval (alpha, alpha+1) with alpha <= 2/5)
FIVEFOLD_SPECTRUM_LOW: tuple[tuple[Fraction, int], ...] = (
    (Fraction(-1, 5), 1), (Fraction(0), 4), (Fraction(1, 5), 10),
    (Fraction(2, 5), 20), (Fraction(3, 5), 31), (Fraction(4, 5), 40),
    (Fraction(1), 44), (Fraction(6, 5), 40),
)


@dataclass(frozen=True)
class SpectralBoundVerdict:
    triple_length: int
    fivefold_length: int
    bound: int
    ok: bool

    def to_json(self) -> dict:
        return {"triple_length": self.triple_length,
                "fivefold_length": self.fivefold_length,
                "bound": self.bound, "ok": self.ok}


def varchenko_bound(alpha: Fraction = Fraction(2, 5)) -> SpectralBoundVerdict:
    """Upper bound for triple points on a quintic threefold by spectrum
    semicontinuity against a fivefold point: floor(fivefold/triple length)."""
    triple = SpectrumInterval(TRIPLE_POINT_SPECTRUM, alpha).length_in_interval()
    five = SpectrumInterval(FIVEFOLD_SPECTRUM_LOW, alpha).length_in_interval()
    bound = five // triple
    return SpectralBoundVerdict(triple, five, bound,
                                ok=(triple == 14 and five == 155 and bound == 11))


# -- reducibility of the degenerate ten-point system ------------------------------


def _base_eight_points(domain: Domain = QQ) -> list[ProjectivePoint]:
    coords = [
        (0, 0, 1, 0, 0), (0, 0, 0, 1, 0), (0, 0, 0, 0, 1), (0, 0, 1, 1, 1),
        (0, 1, 0, 0, 0), (0, 1, 1, 1, 0), (1, 0, 0, 0, 0), (1, 0, 1, 0, 1),
    ]
    return [ProjectivePoint(c, domain) for c in coords]


def reducible_family_points(a1: Fraction) -> PointConfiguration:
    """The degenerate 10-point configuration with ninth and tenth points
    (1 : a1 : a1 : 0 : 0) and (1 : a1 : a1 : a1 : 1)."""
    pts = _base_eight_points()
    pts.append(ProjectivePoint([1, a1, a1, 0, 0], QQ))
    pts.append(ProjectivePoint([1, a1, a1, a1, 1], QQ))
    return PointConfiguration(pts)


def reducible_product(a1: Fraction) -> MultiPoly:
    """(x2-x3) * x3 * (x1-x2+x4) * (x0-x4) * (a1*x0 - x1); the last factor
    cuts the hyperplane through the ninth and tenth points (for a1 != 0 it is
    proportional to x0 - x1/a1)."""
    factors = ["x2-x3", "x3", "x1-x2+x4", "x0-x4"]
    F = MultiPoly.one(QQ, 5)
    for s in factors:
        F = F * MultiPoly.parse(s, 5)
    last = (MultiPoly.variable(QQ, 5, 0).scale(Fraction(a1))
            - MultiPoly.variable(QQ, 5, 1))
    return F * last


@dataclass(frozen=True)
class ReducibilityVerdict:
    a1: Fraction
    dimension: int
    generator_is_product: bool

    @property
    def ok(self) -> bool:
        return self.dimension == 1 and self.generator_is_product

    def to_json(self) -> dict:
        return {"a1": str(self.a1), "dimension": self.dimension,
                "generator_is_product": self.generator_is_product, "ok": self.ok}


def verify_reducibility_lemma(a1) -> ReducibilityVerdict:
    """The space of quintics triple at the degenerate 10-point configuration
    is one-dimensional and spanned by a product of five linear forms, for any
    rational a1 with a1 not in {0, 1} (the rational solutions of a1^5 = 1)."""
    a1 = Fraction(a1)
    if a1 in (Fraction(0), Fraction(1)):
        raise ValueError("a1 must avoid 0 and the fifth roots of unity")
    cfg = reducible_family_points(a1)
    basis = forms_with_multiplicity_basis(cfg, 3, 5)
    if len(basis) != 1:
        return ReducibilityVerdict(a1, len(basis), False)
    gen = basis[0]
    for s in ("x2-x3", "x3", "x1-x2+x4", "x0-x4"):
        ok, gen = linear_factor_test(gen, MultiPoly.parse(s, 5))
        if not ok:
            return ReducibilityVerdict(a1, 1, False)
    last = (MultiPoly.variable(QQ, 5, 0).scale(a1)
            - MultiPoly.variable(QQ, 5, 1))
    ok, gen = linear_factor_test(gen, last)
    matches = ok and gen is not None and gen.degree() == 0 and not gen.is_zero()
    return ReducibilityVerdict(a1, 1, matches)


# -- the cyclotomic linear systems -------------------------------------------------


CYCLOTOMIC_MODULUS = "z^4-z^3+z^2-z+1"


def _affine_linear(dom: Domain, const, coeffs) -> MultiPoly:
    """Affine-linear polynomial const + sum coeffs[i] * c_{i+1} in variables
    (c1, c2, c3, c4)."""
    terms = {(0, 0, 0, 0): dom.coerce(const)}
    for i, c in enumerate(coeffs):
        e = tuple(1 if j == i else 0 for j in range(4))
        terms[e] = dom.coerce(c)
    return MultiPoly(dom, 4, terms)


def cyclotomic_factor_pairs(dom: Domain, a1) -> list[tuple[MultiPoly, MultiPoly]]:
    """The five quadratic constraints on the coordinates (c1..c4) of a
    hypothetical 11th triple point, each as its pair of linear factors.

    Transcribed literally from the source display; the linearity of every
    factor is asserted when the pairs are built.
    """
    one = dom.one()
    zero = dom.zero()
    neg = dom.neg
    a = dom.coerce(a1)
    one_minus_a = dom.sub(one, a)
    pairs = [
        # (c3 - c4) * (a1*c4 - c3)
        (_affine_linear(dom, zero, [zero, zero, one, neg(one)]),
         _affine_linear(dom, zero, [zero, zero, neg(one), a])),
        # (1 - c4 - c1 + c3) * (1 - c4 - a1*c1 + a1*c3)
        (_affine_linear(dom, one, [neg(one), zero, one, neg(one)]),
         _affine_linear(dom, one, [neg(a), zero, a, neg(one)])),
        # (c2 - a1) * ((1 - a1)*(c1 - a1) + a1*(c2 - a1))
        (_affine_linear(dom, neg(a), [zero, one, zero, zero]),
         _affine_linear(dom, neg(a), [one_minus_a, a, zero, zero])),
        # (c2 - c4) * ((a1 - 1)*c1 - a1*(c2 - c4))
        (_affine_linear(dom, zero, [zero, one, zero, neg(one)]),
         _affine_linear(dom, zero, [neg(one_minus_a), neg(a), zero, a])),
        # (1 + c3 - c2) * (a1 + c3 - c2)
        (_affine_linear(dom, one, [zero, neg(one), one, zero]),
         _affine_linear(dom, a, [zero, neg(one), one, zero])),
    ]
    for f, g in pairs:
        if f.degree() > 1 or g.degree() > 1:
            raise AssertionError("cyclotomic factors must be affine-linear")
    return pairs


@dataclass(frozen=True)
class CyclotomicVerdict:
    modulus: str
    inconsistent_count: int
    consistent_witnesses: tuple[tuple[str, ...], ...]

    @property
    def ok(self) -> bool:
        return self.inconsistent_count == 32 and not self.consistent_witnesses

    def to_json(self) -> dict:
        return {"modulus": self.modulus,
                "inconsistent_count": self.inconsistent_count,
                "consistent_witnesses": [list(w) for w in self.consistent_witnesses],
                "ok": self.ok}


def cyclotomic_systems_over(dom: Domain, a1) -> CyclotomicVerdict:
    """Solve all 32 factor selections of the five constraints over a field;
    reports how many are inconsistent and the solutions of the others."""
    pairs = cyclotomic_factor_pairs(dom, a1)
    inconsistent = 0
    witnesses = []
    const_key = (0, 0, 0, 0)
    for mask in range(32):
        rows = []
        rhs = []
        for k in range(5):
            factor = pairs[k][(mask >> k) & 1]
            row = []
            for i in range(4):
                e = tuple(1 if j == i else 0 for j in range(4))
                row.append(factor.coefficient(e))
            rows.append(row)
            rhs.append(dom.neg(factor.coefficient(const_key)))
        sol = ExactMatrix(dom, rows).solve(rhs)
        if sol is None:
            inconsistent += 1
        else:
            witnesses.append(tuple(dom.to_str(v) for v in sol))
    name = getattr(dom, "name", str(dom))
    return CyclotomicVerdict(name, inconsistent, tuple(witnesses))


def verify_cyclotomic_system() -> CyclotomicVerdict:
    """Over Q[z]/(z^4 - z^3 + z^2 - z + 1) with a1 = z, every one of the 32
    linear systems must be inconsistent."""
    K = NumberField(CYCLOTOMIC_MODULUS)
    return cyclotomic_systems_over(K, K.generator())


# -- the exclusion identity ---------------------------------------------------------


def five_hyperplane_product(domain: Domain = QQ) -> MultiPoly:
    """Product of the five hyperplanes that each contain six points of the
    Segre configuration; it has triple points at all ten."""
    out = MultiPoly.one(domain, 5)
    for s in ("x1-x0", "x2-x4", "x0-x2+x3", "x3-x1", "x4"):
        out = out * MultiPoly.parse(s, 5, domain)
    return out


@dataclass(frozen=True)
class ExclusionVerdict:
    root_numerator_matches: bool
    identity_holds: bool
    sign: int
    difference_is_zero: bool

    @property
    def ok(self) -> bool:
        return self.root_numerator_matches and self.identity_holds

    def to_json(self) -> dict:
        return {"root_numerator_matches": self.root_numerator_matches,
                "identity_holds": self.identity_holds, "sign": self.sign,
                "ok": self.ok}


def verify_exclusion_identity() -> ExclusionVerdict:
    """Restricting the ten-node cubic and the five-hyperplane quintic to the
    line joining (0:0:1:0:0) to a symbolic point (c0:...:c4) and eliminating
    the residual root yields, after clearing the square of the cubic's value,
    a product of nine factors that forces the symbolic point onto one of five
    special hyperplanes.  Verified as a polynomial identity in c0..c4."""
    dom = QQ
    C3 = segre_cubic()
    G = five_hyperplane_product()
    # ring (c0..c4, t); the line is P1 + t * P11 with P1 = (0:0:1:0:0)
    nv = 6
    P1 = (0, 0, 1, 0, 0)
    targets = []
    t = MultiPoly.variable(dom, nv, 5)
    for i in range(5):
        ci = MultiPoly.variable(dom, nv, i)
        targets.append(MultiPoly.constant(dom, nv, Fraction(P1[i])) + ci * t)

    def t_coefficients(f: MultiPoly, upto: int) -> list[MultiPoly]:
        local = f.compose(targets)
        out = [dict() for _ in range(upto + 1)]
        for e, c in local.terms.items():
            k = e[5]
            if k <= upto:
                out[k][e[:5] + (0,)] = c
        polys = [MultiPoly(dom, nv, terms) for terms in out]
        return [_drop_t_variable(p) for p in polys]

    c_cubic = t_coefficients(C3, 3)
    assert c_cubic[0].is_zero() and c_cubic[1].is_zero(), \
        "restriction of the cubic must have a double root at t = 0"
    beta, gamma = c_cubic[2], c_cubic[3]

    c = [MultiPoly.variable(dom, 5, i) for i in range(5)]
    root_num = c[0] * c[3] - c[1] * c[4]
    root_matches = (-beta) == root_num

    c_quintic = t_coefficients(G, 5)
    for k in range(3):
        assert c_quintic[k].is_zero(), \
            "restriction of the quintic must have a triple root at t = 0"
    d0, d1, d2 = c_quintic[3], c_quintic[4], c_quintic[5]
    # value of (G restricted to the line / t^3) at the residual root of the
    # cubic, multiplied by gamma^2 = C3(P11)^2
    numerator = d0 * gamma * gamma + d1 * root_num * gamma + d2 * root_num * root_num

    target = c[0] * c[1] * c[3] * c[4]
    for f in (c[0] - c[1], c[1] - c[3], c[3] - c[4], c[4] - c[0],
              c[0] - c[1] + c[3] - c[4]):
        target = target * f
    if numerator == target:
        return ExclusionVerdict(root_matches, True, 1, True)
    if numerator == -target:
        return ExclusionVerdict(root_matches, True, -1, True)
    return ExclusionVerdict(root_matches, False, 0,
                            (numerator - target).is_zero())


def _drop_t_variable(p: MultiPoly) -> MultiPoly:
    return MultiPoly(p.domain, 5, {e[:5]: c for e, c in p.terms.items()})


# -- aggregate runner ---------------------------------------------------------------


def run_all_verifications(reducibility_values=(2, 3)) -> dict:
    """Run every verification; the result maps check names to verdicts."""
    out = {
        "spectral-bound": varchenko_bound(),
        "cyclotomic-system": verify_cyclotomic_system(),
        "exclusion-identity": verify_exclusion_identity(),
    }
    for a in reducibility_values:
        out[f"reducibility(a1={a})"] = verify_reducibility_lemma(a)
    return out
