from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from levelgray.bits import (BitVector, LevelInterval, a_value, b_value, common_down, common_up,
                            complement, flip_positions, from_str, hamming, popcount, special_a,
                            special_b, to_str, weight)


def bv(s):
    return BitVector.parse(s)


@pytest.mark.parametrize("s,w", [("00000", 0), ("11001", 3), ("11111", 5)])
def test_weight(s, w):
    assert weight(bv(s)) == w


def test_hamming_examples():
    assert hamming(bv("11001"), bv("11101")) == 1
    assert hamming(bv("01100"), bv("01100")) == 0
    assert hamming(bv("01100"), bv("10100")) == 2


def test_special_vertices():
    assert str(special_a(5, 2)) == "00011"
    assert str(special_b(5, 2)) == "00110"
    assert str(special_a(3, 1)) == "001"
    assert str(special_b(3, 1)) == "010"
    assert a_value(5, 2) == int(special_a(5, 2))
    assert b_value(5, 2) == int(special_b(5, 2))


def test_common_neighbours():
    x, y = bv("01100"), bv("10100")
    assert str(common_up(x, y)) == "11100"
    assert str(common_down(x, y)) == "00100"
    assert str(common_up(bv("001"), bv("010"))) == "011"
    assert str(common_down(bv("001"), bv("010"))) == "000"


def test_common_needs_distance_two():
    with pytest.raises(ValueError):
        common_up(bv("001"), bv("011"))


def test_position_one_is_leftmost():
    assert to_str(1, 4) == "1000"
    assert from_str("0001") == 8
    assert bv("1000")[1] == 1


def test_bitvector_rejects_bad_input():
    with pytest.raises(ValueError):
        BitVector.parse("0120")
    with pytest.raises(ValueError):
        BitVector(3, 8)


def test_level_interval():
    iv = LevelInterval(5, 1, 3)
    assert bv("11000") in iv
    assert bv("00000") not in iv
    with pytest.raises(ValueError):
        LevelInterval(5, 3, 1)


@given(st.integers(1, 40).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, (1 << n) - 1))))
def test_str_round_trip(nv):
    n, v = nv
    s = to_str(v, n)
    assert len(s) == n and from_str(s) == v
    assert popcount(v) == s.count("1")
    assert complement(complement(v, n), n) == v


@given(st.integers(0, 1 << 30), st.integers(0, 1 << 30))
def test_flip_positions_is_symmetric_difference(u, v):
    fp = flip_positions(u, v)
    assert len(fp) == popcount(u ^ v)
    w = u
    for q in fp:
        w ^= 1 << (q - 1)
    assert w == v


@given(st.integers(2, 30).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n - 1))))
def test_special_vertex_shapes(ni):
    n, i = ni
    assert popcount(a_value(n, i)) == i
    assert popcount(b_value(n, i)) == i
    assert to_str(a_value(n, i), n) == "0" * (n - i) + "1" * i
    assert to_str(b_value(n, i), n) == "0" * (n - i - 1) + "1" * i + "0"
