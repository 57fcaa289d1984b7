from fractions import Fraction

import pytest

from qverify.errors import InvalidParams, NonIntegerExponent
from qverify.gsum import (
    Affine, AltSumSpec, BinomFactor, GParams, alt_sum, alt_sum_double, g_eval, g_exponent,
    g_range,
)
from qverify.qbinom import qbin
from qverify.qpoly import ONE, Q, ZERO

from oracles import alt_binom_sum


def _spec(a, b, top, bottom, c=0):
    return AltSumSpec.of(a, b, c, [BinomFactor.of(top, bottom)])


def test_affine_parse_and_eval():
    f = Affine.parse("2L+1-3j")
    assert f.eval({"L": 4, "j": 1}) == 6
    assert Affine.parse("-v").eval({"v": 3}) == -3
    with pytest.raises(ValueError):
        Affine.parse("L*")


def test_g_examples():
    assert g_eval(GParams(0, 0, Fraction(1, 2), Fraction(3, 2), 2)) == ONE
    assert g_eval(GParams(1, 1, 1, 1, 2)) == ONE + Q


def test_gparams_validation():
    with pytest.raises(InvalidParams):
        GParams(1, 1, Fraction(1, 3), 0, 2)
    with pytest.raises(InvalidParams):
        GParams(-1, 0, 0, 0, 1)
    with pytest.raises(InvalidParams):
        GParams(0, 0, 0, 0, 0)


def test_g_exponent_always_integral():
    # j((aK+bK)j + aK-bK)/2 is even in the scaled form, so no cell is rejected
    for a in range(0, 9):
        for b in range(0, 9):
            p = GParams.from_scaled(4, 4, a, b, 3)
            for j in range(-4, 5):
                assert g_exponent(p, j) * 2 == j * ((a + b) * j + a - b)


def test_non_integer_exponent_is_an_error():
    spec = AltSumSpec.of(Fraction(1, 2), 0, 0, [BinomFactor.of("2L", "L-j")])
    with pytest.raises(NonIntegerExponent):
        alt_sum(spec, 2)


def test_g_range_is_tight():
    for N, M, K in [(5, 3, 2), (7, 7, 3), (4, 9, 1), (0, 6, 4)]:
        p = GParams.from_scaled(N, M, K, K, K)
        r = g_range(p)
        for j in (r.start - 1, r.stop):
            assert qbin(N + M, N - K * j) == ZERO


def test_g_against_direct_sum():
    for N, M, a, b, K in [(4, 5, 3, 1, 2), (6, 6, 4, 4, 3), (3, 7, 2, 0, 1)]:
        p = GParams.from_scaled(N, M, a, b, K)
        want = alt_binom_sum(lambda j: j * ((a + b) * j + (a - b)) // 2,
                             lambda j: N + M, lambda j: N - K * j)
        assert g_eval(p).as_dict() == want


def test_alt_sum_examples():
    ft = _spec(2, 1, "2L+1", "L-2j")
    assert alt_sum(ft, 1) == ONE + Q ** 2
    b = _spec(2, -2, "2L", "L-2j")
    assert alt_sum(b, 0) == ONE
    x = _spec(2, -1, "2L", "L-2j")
    assert alt_sum(x, 1) == ONE + Q


@pytest.mark.parametrize("L", range(0, 9))
def test_alt_sum_matches_wide_window(L):
    spec = _spec(3, 2, "2L+1", "L-3j")
    want = alt_binom_sum(lambda j: 3 * j * j + 2 * j, lambda j: 2 * L + 1, lambda j: L - 3 * j)
    assert alt_sum(spec, L).as_dict() == want


def test_double_sum_base_cases_and_burge_collapse():
    for v in range(1, 5):
        assert alt_sum_double(0, 0, v, 0) == ONE
    for L in range(0, 6):
        for M in range(0, 6):
            target = qbin(L + M, L, 2)
            assert alt_sum_double(L, M, 1, 0) == target
            assert alt_sum_double(L, M, 1, 1) == target


def test_cancelling_sum_vanishes():
    # terms pair off under j -> -j-1
    for v in range(1, 5):
        for L in range(0, 9):
            for M in range(0, 9):
                spec = AltSumSpec.of(v, v, 0, [
                    BinomFactor.of(f"L+M-{v - 1}j", f"L-{v}j"),
                    BinomFactor.of(f"L+{v - 1}+M+{v - 1}j", f"L+{v}+{v}j"),
                ])
                assert alt_sum(spec, L, M=M) == ZERO


@pytest.mark.parametrize("L", range(0, 26))
def test_even_and_odd_top_agree(L):
    even = _spec(2, 0, "2L", "L-2j")
    odd = _spec(2, 0, "2L+1", "L-2j")
    assert alt_sum(even, L) == alt_sum(odd, L)


def test_floor_division_bottom():
    spec = AltSumSpec.of(1, 0, 0, [BinomFactor.of("L", "L-2j", div=2)])
    # floor((L-2j)/2) uses Euclidean floor for negative values
    for L in range(0, 8):
        want = alt_binom_sum(lambda j: j * j, lambda j: L, lambda j: (L - 2 * j) // 2)
        assert alt_sum(spec, L).as_dict() == want
