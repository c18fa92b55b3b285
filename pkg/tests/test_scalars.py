from fractions import Fraction

import pytest

from tripoint.scalars import (GF, QQ, DomainError, NotInvertibleError,
                              NumberField, QuadraticExtension, field_from_spec,
                              field_spec, uni_divmod, uni_ext_gcd, uni_gcd)


def test_rational_basics():
    assert QQ.add(Fraction(1, 2), Fraction(1, 3)) == Fraction(5, 6)
    assert QQ.inv(Fraction(-2, 7)) == Fraction(-7, 2)
    with pytest.raises(NotInvertibleError):
        QQ.inv(Fraction(0))


def test_prime_field():
    F7 = GF(7)
    assert F7.mul(3, 5) == 1
    assert F7.inv(3) == 5
    assert F7.from_fraction(Fraction(1, 2)) == 4
    with pytest.raises(DomainError):
        F7.from_fraction(Fraction(1, 7))
    with pytest.raises(DomainError):
        GF(6)


def test_uni_helpers():
    # (x^2 - 1) / (x - 1) = x + 1
    q, r = uni_divmod(QQ, [Fraction(-1), Fraction(0), Fraction(1)],
                      [Fraction(-1), Fraction(1)])
    assert q == [Fraction(1), Fraction(1)] and r == []
    g = uni_gcd(QQ, [Fraction(-1), Fraction(0), Fraction(1)],
                [Fraction(1), Fraction(1)])
    assert g == [Fraction(1), Fraction(1)]  # monic x + 1
    g, s, t = uni_ext_gcd(QQ, [Fraction(2)], [Fraction(0), Fraction(1)])
    assert g == [Fraction(1)]


class TestNumberField:
    def setup_method(self):
        self.K = NumberField("z^4-z^3+z^2-z+1")

    def test_z_pow_five_is_minus_one(self):
        z = self.K.generator()
        acc = self.K.one()
        for _ in range(5):
            acc = self.K.mul(acc, z)
        assert acc == self.K.neg(self.K.one())

    def test_inverse_of_one(self):
        assert self.K.inv(self.K.one()) == self.K.one()

    def test_inverse_of_one_minus_z(self):
        w = self.K.sub(self.K.one(), self.K.generator())
        winv = self.K.inv(w)
        assert self.K.mul(w, winv) == self.K.one()

    def test_zero_divisor_detected(self):
        # reducible modulus: z^2 - 1 = (z-1)(z+1)
        L = NumberField("z^2-1")
        zd = L.sub(L.generator(), L.one())
        with pytest.raises(NotInvertibleError):
            L.inv(zd)
        # but 2 is invertible
        assert L.mul(L.inv(L.from_int(2)), L.from_int(2)) == L.one()

    def test_scalar_round_trip(self):
        for text in ("z^3+z", "1/2*z^2-3", "-z+1", "5"):
            e = self.K.parse_scalar(text)
            assert self.K.parse_scalar(self.K.to_str(e)) == e

    def test_modulus_must_be_monic(self):
        with pytest.raises(DomainError):
            NumberField("2*z^2+1")


def test_quadratic_extension():
    F25 = QuadraticExtension(5)
    x = (2, 3)
    xin = F25.inv(x)
    assert F25.mul(x, xin) == F25.one()
    assert F25.mul((0, 1), (0, 1)) == (F25.non_residue % 5, 0)
    with pytest.raises(NotInvertibleError):
        F25.inv((0, 0))


def test_field_spec_round_trip():
    for dom in (QQ, GF(13), QuadraticExtension(7), NumberField("z^2-z+1")):
        assert field_from_spec(field_spec(dom)) == dom
