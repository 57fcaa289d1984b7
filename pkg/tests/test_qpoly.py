from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qverify.errors import NonIntegerCoefficient, NotAPolynomial, ZeroConstantTerm
from qverify.qpoly import (
    ONE, Q, ZERO, QLaurent, QSeries, as_series, poly_mul, poly_substitute_power,
    series_inverse_unit, to_polynomial,
)

from oracles import pmul


def P(d):
    return QLaurent(d)


laurents = st.dictionaries(st.integers(-6, 12), st.integers(-5, 5), max_size=6).map(QLaurent)
big_laurents = st.dictionaries(st.integers(0, 60), st.integers(-3, 3), max_size=30).map(QLaurent)


def test_canonical_form_drops_zeros():
    p = QLaurent({0: 1, 3: 0, 5: 2})
    assert p.as_dict() == {0: 1, 5: 2}
    assert p.min_exp == 0 and p.max_exp == 5
    assert QLaurent({}) == ZERO and ZERO.min_exp is None
    assert (Q - Q).is_zero()


def test_examples():
    assert (ONE - Q) * (ONE + Q) == ONE - Q ** 2
    p = (ONE - Q) * (ONE - Q ** 2) * (ONE - Q ** 3)
    assert p.as_dict() == {0: 1, 1: -1, 2: -1, 4: 1, 5: 1, 6: -1}
    assert poly_substitute_power(ONE + Q, 2) == ONE + Q ** 2
    assert poly_substitute_power(ONE + Q + Q ** 2, 2).as_dict() == {0: 1, 2: 1, 4: 1}
    assert poly_substitute_power(ONE + Q, 1) == ONE + Q


def test_degree_of_product():
    a, b = P({0: 1, 3: 2}), P({-2: 1, 4: -1})
    assert poly_mul(a, b).degree() == a.degree() + b.degree()


@given(laurents, laurents, laurents)
def test_ring_axioms(a, b, c):
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + ZERO == a and a * ONE == a
    assert a - a == ZERO


@settings(max_examples=40)
@given(big_laurents, big_laurents)
def test_product_matches_schoolbook(a, b):
    # large operands go through the packed-integer path
    assert (a * b).as_dict() == pmul(a.as_dict(), b.as_dict())


@given(laurents, st.integers(1, 4))
def test_substitute_power_scales_exponents(a, d):
    assert a.substitute_power(d).as_dict() == {d * e: c for e, c in a.as_dict().items()}


def test_series_inverse_examples():
    inv = series_inverse_unit(QSeries.from_laurent(ONE - Q, 4))
    assert list(inv.coeffs) == [1, 1, 1, 1, 1]
    assert list(series_inverse_unit(QSeries.one(5)).coeffs) == [1, 0, 0, 0, 0, 0]
    inv = series_inverse_unit(QSeries.from_laurent(ONE + Q ** 2, 6))
    assert list(inv.coeffs) == [1, 0, -1, 0, 1, 0, -1]
    with pytest.raises(ZeroConstantTerm):
        series_inverse_unit(QSeries.from_laurent(Q, 4))


unit_series = st.tuples(
    st.sampled_from([1, -1, 2, Fraction(1, 3)]),
    st.lists(st.integers(-4, 4), min_size=12, max_size=12),
).map(lambda t: QSeries([t[0]] + t[1], 12))


@settings(max_examples=200)
@given(unit_series)
def test_inverse_times_series_is_one(s):
    assert s * series_inverse_unit(s) == QSeries.one(12)


def test_to_polynomial():
    assert to_polynomial(Q * (ONE + Q ** -1)) == ONE + Q
    with pytest.raises(NotAPolynomial):
        to_polynomial(Q ** -1 + ONE)
    with pytest.raises(NonIntegerCoefficient):
        to_polynomial((ONE + Q).scale(Fraction(1, 2)))


def test_series_truncation_and_mixed_orders():
    p = P({0: 1, 2: 3, 9: 1})
    assert list(as_series(p, 10).coeffs) == [1, 0, 3, 0, 0, 0, 0, 0, 0, 1, 0]
    assert as_series(p, 4).to_laurent() == P({0: 1, 2: 3})
    with pytest.raises(ValueError):
        QSeries.one(3) + QSeries.one(4)
    # nothing above T survives a product
    s = QSeries.from_laurent(ONE + Q, 3)
    assert len((s * s * s * s).coeffs) == 4
