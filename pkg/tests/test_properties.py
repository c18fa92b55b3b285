"""Property-based checks of the algebraic substrate."""

from fractions import Fraction

from hypothesis import given, settings, strategies as st

from tripoint import ExactMatrix, MultiPoly, QQ
from tripoint.multipoly import monomials_up_to_degree, squarefree_structure
from tripoint.scalars import GF

coeffs = st.fractions(min_value=-6, max_value=6, max_denominator=4)


def polys(nvars=3, max_degree=3):
    basis = monomials_up_to_degree(nvars, max_degree)
    return st.dictionaries(st.sampled_from(basis), coeffs, max_size=5).map(
        lambda terms: MultiPoly(QQ, nvars, terms))


def homogeneous_polys(nvars=3, degree=3):
    from tripoint.multipoly import monomials_of_degree
    basis = monomials_of_degree(nvars, degree)
    return st.dictionaries(st.sampled_from(basis), coeffs, max_size=5).map(
        lambda terms: MultiPoly(QQ, nvars, terms))


@settings(max_examples=40, deadline=None)
@given(homogeneous_polys(3, 2), homogeneous_polys(3, 3))
def test_degree_additivity_for_homogeneous_products(f, g):
    if f.is_zero() or g.is_zero():
        return
    assert (f * g).degree() == f.degree() + g.degree()


@settings(max_examples=40, deadline=None)
@given(polys(), polys(), polys())
def test_ring_axioms(f, g, h):
    assert f + g == g + f
    assert (f + g) + h == f + (g + h)
    assert f * g == g * f
    assert f * (g + h) == f * g + f * h


@settings(max_examples=40, deadline=None)
@given(polys())
def test_parse_print_round_trip(f):
    assert MultiPoly.parse(f.to_string(), f.nvars) == f


@settings(max_examples=30, deadline=None)
@given(homogeneous_polys(5, 3),
       st.lists(st.integers(-4, 4), min_size=5, max_size=5),
       st.lists(st.integers(-4, 4), min_size=5, max_size=5))
def test_restriction_endpoint_values(f, a, b):
    A = [Fraction(v) for v in a]
    B = [Fraction(v) for v in b]
    if all(v == 0 for v in A) or all(v == 0 for v in B):
        return
    from tripoint.multipoly import _proportional
    if _proportional(QQ, A, B):
        return
    r = f.restrict_to_line(A, B)
    d = 3
    assert r.coefficient((d, 0)) == f.evaluate(A)
    assert r.coefficient((0, d)) == f.evaluate(B)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.integers(-3, 3), st.integers(1, 3)),
                min_size=1, max_size=4))
def test_squarefree_multiplicities_sum_to_degree(root_data):
    """A product of (x0 - r*x1)^m factors has multiplicities summing to the
    degree of the form."""
    b = MultiPoly.one(QQ, 2)
    for r, m in root_data:
        factor = MultiPoly.parse(f"x0-{r}*x1" if r >= 0 else f"x0+{-r}*x1", 2)
        for _ in range(m):
            b = b * factor
    profile, _sf = squarefree_structure(b)
    assert sum(mult * count for mult, count in profile) == b.degree()


@settings(max_examples=25, deadline=None)
@given(st.lists(st.lists(st.integers(-9, 9), min_size=5, max_size=5),
                min_size=1, max_size=6))
def test_rank_nullity(rows):
    M = ExactMatrix(QQ, rows)
    kernel = M.kernel_basis()
    assert M.rank() + len(kernel) == 5
    for v in kernel:
        assert all(x == 0 for x in M.apply(v))


@settings(max_examples=15, deadline=None)
@given(st.lists(st.lists(st.integers(-9, 9), min_size=12, max_size=12),
                min_size=10, max_size=10))
def test_rational_rank_agrees_with_large_prime(rows):
    """Fraction-free elimination agrees with elimination mod a prime that
    does not divide the pivots (a large random prime in practice)."""
    M = ExactMatrix(QQ, rows)
    p = 2_147_483_647
    Mp = ExactMatrix(GF(p), [[v % p for v in row] for row in rows])
    assert Mp.rank() == M.rank()
