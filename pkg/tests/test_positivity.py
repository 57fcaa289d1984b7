from fractions import Fraction

import pytest

from qverify.errors import InvalidParams, InvalidTag
from qverify.gsum import GParams, alt_sum, g_eval
from qverify.positivity import (
    CONJECTURE, K2_BOUNDARY, TAGS, check_cell, check_nonneg, checkpoint_line,
    enumerate_domain, enumerate_k2_boundary, in_domain, instance_generators, instance_params,
    is_member, raw_spec, read_checkpoint, scan,
)
from qverify.qpoly import ONE, Q

from oracles import domain_count


def test_check_nonneg_examples():
    assert check_nonneg(ONE + Q).ok
    v = check_nonneg(ONE - Q)
    assert (v.status, v.exponent, v.value) == ("NegativeCoefficient", 1, -1)


def test_smallest_domain():
    cells = list(enumerate_domain(1, 0, 0))
    assert [c.key for c in cells] == [(1, 0, 0, 0, 1), (1, 0, 0, 1, 0)]
    assert all(g_eval(c.params) == ONE for c in cells)
    assert list(enumerate_domain(0, 5, 5)) == []


@pytest.mark.parametrize("bounds", [(3, 4, 4), (2, 5, 3), (4, 2, 2)])
def test_domain_count_matches_rational_enumeration(bounds):
    cells = list(enumerate_domain(*bounds))
    assert len(cells) == domain_count(*bounds)
    assert [c.key for c in cells] == sorted(c.key for c in cells)
    assert len({c.key for c in cells}) == len(cells)


def test_k2_is_strict_on_both_chains():
    # N - M = beta - K and N - M = K - alpha are excluded at K = 2
    assert not in_domain(2, 0, 1, 1, 2)   # N - M = -1 = beta - K
    assert in_domain(2, 0, 1, 2, 1)
    assert not in_domain(2, 1, 0, 2, 1)   # N - M = 1 = K - alpha
    assert not in_domain(2, 0, 0, 1, 1)   # alpha + beta = 1
    assert in_domain(2, 0, 0, 2, 1)
    assert in_domain(2, 0, 0, 2, 1, strict_k2=False)
    assert in_domain(3, 0, 2, 0, 3)       # boundaries allowed for K != 2
    assert in_domain(3, 0, 0, 0, 3)
    boundary = list(enumerate_k2_boundary(3, 3))
    assert boundary and all(c.tag == K2_BOUNDARY and not is_member(c) for c in boundary)


def test_skip_integer_drops_integral_cells():
    kept = list(enumerate_domain(3, 3, 3, skip_integer=True))
    assert all(c.params.alpha.denominator != 1 or c.params.beta.denominator != 1
               for c in kept)
    assert len(kept) < len(list(enumerate_domain(3, 3, 3)))


def test_instance_examples():
    p = instance_params("Eq1.2star", 2, 3, i=2)
    assert p == GParams(3, 3, 1, 1, 2)
    for v in (2, 3):
        for D in range(v):
            for L in range(D, 6):
                assert instance_params("T4.6", v, L, D=D, n=1) == instance_params("Eq1.4", v, L, D=D)
                assert instance_params("T4.7", v, L, D=D, n=1) == instance_params("Eq1.8", v, L, D=D)
    with pytest.raises(InvalidTag):
        instance_params("Eq9.9", 2, 3)
    with pytest.raises(InvalidTag):
        list(instance_generators("Eq9.9"))
    with pytest.raises(InvalidParams):
        instance_params("Eq1.4", 2, 3, D=2)


def test_eq_1_2star_matches_even_sum():
    # G(L, L, 1, 1, 2) is sum (-1)^j q^{2j^2} [2L, L-2j]
    from qverify.catalog.polynomial import SPEC_I2_EVEN
    for L in range(0, 8):
        assert g_eval(instance_params("Eq1.2star", 2, L, i=2)) == alt_sum(SPEC_I2_EVEN, L)


@pytest.mark.parametrize("tag", ["Eq4.15o", "Eq4.16w"])
def test_raw_sums_equal_their_g_form(tag):
    for v in (2, 3):
        for L in range(1, 9):
            assert alt_sum(raw_spec(tag, v), L) == g_eval(instance_params(tag, v, L))


@pytest.mark.parametrize("tag", TAGS)
def test_instances_are_members_and_nonnegative(tag):
    cells = list(instance_generators(tag, (2, 3), range(7), (1, 2)))
    assert cells
    for c in cells:
        assert c.tag == tag and is_member(c)
        assert check_cell(c).ok


def test_scan_and_checkpoint(tmp_path):
    path = tmp_path / "ck.txt"
    cells = list(enumerate_domain(2, 3, 3))
    first = list(scan(cells[:10], checkpoint=path))
    assert all(v.ok for _, v in first)
    done = read_checkpoint(path)
    assert len(done) == 10
    rest = list(scan(cells, done=done, checkpoint=path))
    assert len(rest) == len(cells) - 10
    assert len(read_checkpoint(path)) == len(cells)
    line = checkpoint_line(cells[0], check_cell(cells[0]))
    assert line.split() == [*map(str, cells[0].key), "NonNegative"]


def test_scan_in_parallel_keeps_order():
    cells = list(enumerate_domain(2, 3, 3))
    serial = [(c.key, v) for c, v in scan(cells)]
    par = [(c.key, v) for c, v in scan(cells, jobs=2, chunk=7)]
    assert serial == par


def test_read_checkpoint_ignores_garbage(tmp_path):
    path = tmp_path / "ck.txt"
    path.write_text("1 0 0 0 1 NonNegative\nnot a line\n1 2 x 0 1 NonNegative\n")
    assert read_checkpoint(path) == {(1, 0, 0, 0, 1): "NonNegative"}
    assert read_checkpoint(tmp_path / "missing") == {}


def test_conjecture_tag_default():
    c = next(enumerate_domain(1, 0, 0))
    assert c.tag == CONJECTURE
    assert c.params.alpha == Fraction(0)
