from __future__ import annotations

from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from levelgray.bits import a_value, popcount
from levelgray.satcycle import MAX_AMORTIZED_OPS, GlueCursor, sat_cycle, sat_cycle_high, sat_pair
from levelgray.verify import check_sequence


@pytest.mark.parametrize("nk,length", [((4, 1), 8), ((5, 2), 20), ((6, 2), 30)])
def test_sat_cycle_examples(cache, nk, length):
    n, k = nk
    w = sat_cycle(n, k, cache=cache)
    assert len(w) == length and w.start == a_value(n, k)
    r = check_sequence(w.start, w.steps, n, k, k + 1, "saturating")
    assert r.valid
    assert r.visited_by_level[k] == comb(n, k)


@pytest.mark.parametrize("nk,length", [((6, 3), 30), ((5, 2), 20), ((4, 2), 8)])
def test_sat_cycle_high_examples(cache, nk, length):
    n, k = nk
    w = sat_cycle_high(n, k, cache=cache)
    assert len(w) == length and w.start == (1 << (k + 1)) - 1
    assert check_sequence(w.start, w.steps, n, k, k + 1, "saturating").valid


def test_high_replays_low_flips(cache):
    assert sat_cycle_high(6, 3, cache=cache).steps == sat_cycle(6, 2, cache=cache).steps


def test_sat_pair_dispatch(cache):
    assert sat_pair(7, 2, cache=cache).start == a_value(7, 2)
    assert sat_pair(7, 4, cache=cache).start == (1 << 5) - 1


def test_rejects_out_of_range():
    with pytest.raises(ValueError):
        GlueCursor(6, 3)
    with pytest.raises(ValueError):
        sat_cycle_high(6, 1)


@pytest.mark.parametrize("n", range(3, 10))
def test_instrumented_checks_hold(cache, n):
    for k in range(1, (n - 1) // 2 + 1):
        cur = GlueCursor(n, k, cache=cache, check=True)
        steps = list(cur)
        assert len(steps) == len(cur) == 2 * comb(n, k)
        assert cur.max_height <= 3 * n
        assert cur.amortized_ops <= MAX_AMORTIZED_OPS


def test_check_mode_catches_corrupted_provider(cache):
    from levelgray.midlevels import MidPath, ProviderCache
    broken = ProviderCache()
    # same length, but the walk ends on the wrong vertex of the middle levels
    broken._table[1] = MidPath(1, (1, 3, 2, 2))
    with pytest.raises(AssertionError):
        list(GlueCursor(6, 2, cache=broken, check=True))


@settings(max_examples=15, deadline=None)
@given(st.integers(3, 11).flatmap(lambda n: st.tuples(st.just(n), st.integers(1, (n - 1) // 2))))
def test_cycle_is_simple_and_saturating(cache, nk):
    n, k = nk
    w = sat_cycle(n, k, cache=cache)
    vs = w.vertices()
    assert len(set(vs)) == len(vs) == 2 * comb(n, k)
    assert {popcount(v) for v in vs} == {k, k + 1}
    assert sum(popcount(v) == k for v in vs) == comb(n, k)
