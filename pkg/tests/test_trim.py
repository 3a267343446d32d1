from __future__ import annotations

from itertools import islice

import pytest
from hypothesis import given, settings, strategies as st

from levelgray.bits import popcount, to_str
from levelgray.reflected import gamma_values, upward
from levelgray.trim import MAX_OPS_PER_VISIT, TrimCursor, one_period, tight_new, tight_next, trim_new, trim_next
from levelgray.verify import check_sequence, v_delta


def oracle_trim(n, k, l, tight=False):
    """Trimmed cycle by brute force over the expanded reflected code.

    Trim mode keeps levels k+1..l-1 of the code and inserts the common
    neighbour between consecutive level vertices at distance two; tight mode
    keeps levels k..l as they are.
    """
    lo, hi = (k, l) if tight else (k + 1, l - 1)
    g = [v for v in gamma_values(n) if lo <= popcount(v) <= hi]
    out = []
    for a, b in zip(g, g[1:] + g[:1]):
        out.append(a)
        if popcount(a ^ b) == 2 and not tight:
            out.append(a | b if upward(a, n) else a & b)
    s = (1 << k) - 1 if tight else (1 << (k + 1)) - 1
    i = out.index(s)
    return out[i:] + out[:i]


def test_init_examples():
    c = trim_new(5, 1, 3)
    assert to_str(c.value, 5) == "11000" and c.c == 2
    assert c.p[1:3] == [2, 1] and c.nu[2] == 1
    c = trim_new(5, 0, 2)
    assert to_str(c.value, 5) == "10000" and c.c == 1
    c = trim_new(4, 0, 4)
    assert to_str(c.value, 4) == "1000" and c.c == 1


@pytest.mark.parametrize("nkl,length,omitted", [((5, 1, 3), 20, None), ((5, 0, 2), 10, {2})])
def test_trim_cycle_examples(nkl, length, omitted):
    n, k, l = nkl
    cur = trim_new(n, k, l)
    steps = list(one_period(cur))
    r = check_sequence(cur.start, steps, n, k, l, "trim")
    assert r.valid and r.length == length
    v, d = v_delta(n, k, l)
    assert length == v - d
    if omitted:
        assert set(r.omitted_by_level) == omitted


@pytest.mark.parametrize("nkl,td", [((5, 1, 3), 30), ((4, 0, 4), 16), ((9, 2, 4), 324)])
def test_tight_examples(nkl, td):
    n, k, l = nkl
    cur = tight_new(n, k, l)
    steps = list(one_period(cur))
    r = check_sequence(cur.start, steps, n, k, l, "tight")
    assert r.valid and r.total_distance == td
    assert r.distance_histogram.get(2, 0) == r.delta


def test_tight_full_cube_is_reflected_code():
    cur = tight_new(4, 0, 4)
    vs = [cur.start]
    for s in islice(iter(cur), 15):
        vs.append(vs[-1] ^ (1 << (s[0] - 1)))
    g = gamma_values(4)
    i = g.index(vs[0])
    assert vs == (g[i:] + g[:i])


@pytest.mark.parametrize("n", range(3, 10))
def test_cursor_matches_brute_force(n):
    for k in range(0, n):
        for l in range(k + 1, n + 1):
            for tight in (False, True):
                if not tight and l - k < 2:
                    continue
                cur = TrimCursor(n, k, l, tight=tight)
                v = cur.start
                vs = [v]
                for step in one_period(cur):
                    for q in step:
                        v ^= 1 << (q - 1)
                    vs.append(v)
                assert vs[-1] == vs[0]
                assert vs[:-1] == oracle_trim(n, k, l, tight), (n, k, l, tight)


def test_advance_and_wrappers():
    cur = trim_new(6, 1, 4)
    first = trim_next(cur)
    assert all(len(s) == 1 for s in first)
    t = tight_new(6, 1, 4)
    s = tight_next(t)
    assert 1 <= len(s) <= 2


def test_invalid_parameters():
    with pytest.raises(ValueError):
        TrimCursor(5, 1, 2)
    with pytest.raises(ValueError):
        TrimCursor(5, 3, 1, tight=True)


intervals = st.integers(3, 40).flatmap(
    lambda n: st.integers(0, n - 2).flatmap(lambda k: st.tuples(st.just(n), st.just(k), st.integers(k + 2, n))))


@settings(max_examples=40, deadline=None)
@given(intervals, st.booleans())
def test_cursor_invariants_and_loopless_bound(nkl, tight):
    n, k, l = nkl
    cur = TrimCursor(n, k, l, tight=tight)
    v = cur.value
    lo, hi = (k, l)
    for _ in range(400):
        for step in cur.advance():
            prev = v
            for q in step:
                v ^= 1 << (q - 1)
            assert lo <= popcount(v) <= hi
            if len(step) == 2:
                assert popcount(prev) == popcount(v)
        cur.check_invariants()
        assert cur.value == v
        if not tight:
            assert k < cur.c < l
    assert cur.max_ops <= MAX_OPS_PER_VISIT
