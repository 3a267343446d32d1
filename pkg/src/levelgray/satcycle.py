"""Algorithm S: saturating cycles in two consecutive levels, driven by a stack.

The recursion over (n', k') is unrolled onto an explicit stack of flip-items
and rec-items.  A rec-item with n' = 2k'+1 is handed to the middle-levels
provider, one with k' = 0 does nothing, and any other is replaced by two
smaller rec-items with two gluing flips between them.

With ``check=True`` the cursor asserts the prefix conditions on x at the
moments a rec-item is popped and processed, and rescans the stack shape
after every iteration.
"""

from __future__ import annotations

from math import comb
from typing import Iterator, Optional

from .bits import a_value, b_value
from .midlevels import LEFT, RIGHT, ProviderCache, default_cache
from .walk import Walk

FLIP = 0
REC = 1

MAX_AMORTIZED_OPS = 128


def _check_range(n: int, k: int) -> None:
    if n < 3 or not 1 <= k <= (n - 1) // 2:
        raise ValueError(f"saturating pair needs n >= 3 and 1 <= k <= floor((n-1)/2), got n={n}, k={k}")


class GlueCursor:
    """One period of the saturating cycle in Q_{n,[k,k+1]} from a_{n,k}."""

    def __init__(self, n: int, k: int, cache: Optional[ProviderCache] = None, check: bool = False):
        _check_range(n, k)
        self.n, self.k = n, k
        self.cache = cache or default_cache()
        self.check = check
        self.start = a_value(n, k)
        self.x = self.start
        self.stack: list = [(REC, (n, k, RIGHT)), (FLIP, n), (FLIP, n - k)]
        self.ops = 3
        self.visits = 0
        self.max_height = len(self.stack)
        self._pending: list = []

    def __len__(self) -> int:
        return 2 * comb(self.n, self.k)

    def _prefix_is(self, m: int, want: int) -> bool:
        return self.x & ((1 << m) - 1) == want

    def _settle(self, index: int) -> None:
        # every rec-item sitting above ``index`` has now been processed
        pend = self._pending
        while pend and pend[-1][0] > index:
            _, m, want, item = pend.pop()
            assert self._prefix_is(m, want), f"rec-item {item} processed with wrong prefix"

    def _check_stack(self) -> None:
        st = self.stack
        assert len(st) <= 3 * self.n, "stack exceeds 3n"
        if not st:
            return
        assert st[0][0] == REC, "bottom item is not a rec-item"
        recs = [i for i, it in enumerate(st) if it[0] == REC]
        for a, b in zip(recs, recs[1:]):
            assert b - a == 3, "rec-items not separated by exactly two flip-items"
        assert len(st) - 1 - recs[-1] <= 2, "more than two flip-items on top"
        ns = [st[i][1][0] for i in recs]
        for i in range(len(ns) - 1):
            if i < len(ns) - 2:
                assert ns[i] > ns[i + 1], f"rec dimensions not decreasing: {ns}"
            else:
                assert ns[i] >= ns[i + 1], f"rec dimensions not decreasing: {ns}"
        assert ns[-1] >= 3, f"rec dimension below 3: {ns}"

    def __iter__(self) -> Iterator[tuple]:
        st = self.stack
        push = st.append
        pop = st.pop
        check = self.check
        cache = self.cache
        while st:
            item = pop()
            self.ops += 2
            if check:
                self._settle(len(st))
            kind, r = item
            if kind == FLIP:
                self.x ^= 1 << (r - 1)
                self.ops += 2
                self.visits += 1
                yield (r,)
            else:
                m, kp, d = r
                if check:
                    lo, hi = (a_value(m, kp), b_value(m, kp)) if d == "<-" else (b_value(m, kp), a_value(m, kp))
                    assert self._prefix_is(m, lo), f"rec-item {r} popped with wrong prefix"
                    self._pending.append((len(st), m, hi, r))
                self.ops += 2
                if kp >= 1 and m == 2 * kp + 1:
                    flips = cache.get(kp).flips
                    it = flips if d == LEFT else reversed(flips)
                    for f in it:
                        self.x ^= 1 << (f - 1)
                        self.ops += 2
                        self.visits += 1
                        yield (f,)
                elif kp >= 1:
                    if d == LEFT:
                        push((REC, (m - 1, kp, RIGHT)))
                        push((FLIP, m))
                        push((FLIP, m - kp - 1))
                        push((REC, (m - 1, kp - 1, LEFT)))
                    else:
                        push((REC, (m - 1, kp - 1, RIGHT)))
                        push((FLIP, m - kp - 1))
                        push((FLIP, m))
                        push((REC, (m - 1, kp, LEFT)))
                    self.ops += 4
                    if len(st) > self.max_height:
                        self.max_height = len(st)
            if check:
                self._check_stack()
        if check:
            self._settle(-1)

    @property
    def amortized_ops(self) -> float:
        return self.ops / self.visits if self.visits else 0.0


def sat_cycle(n: int, k: int, cache: Optional[ProviderCache] = None, check: bool = False) -> Walk:
    """Saturating cycle in Q_{n,[k,k+1]}, 1 <= k <= floor((n-1)/2), from a_{n,k}."""
    cur = GlueCursor(n, k, cache=cache, check=check)
    return Walk(n, cur.start, list(cur))


def sat_cycle_high(n: int, k: int, cache: Optional[ProviderCache] = None, check: bool = False) -> Walk:
    """Saturating cycle in Q_{n,[k,k+1]} for floor(n/2) <= k <= n-2.

    Replays the flips of the cycle for level n-k-1 from 1^{k+1}0^{n-k-1},
    the complement of its start.
    """
    if n < 3 or not n // 2 <= k <= n - 2:
        raise ValueError(f"upper saturating pair needs floor(n/2) <= k <= n-2, got n={n}, k={k}")
    low = sat_cycle(n, n - k - 1, cache=cache, check=check)
    return Walk(n, (1 << (k + 1)) - 1, low.steps)


def sat_pair(n: int, k: int, cache: Optional[ProviderCache] = None) -> Walk:
    """Either variant, whichever covers level pair (k, k+1)."""
    if 1 <= k <= (n - 1) // 2:
        return sat_cycle(n, k, cache=cache)
    return sat_cycle_high(n, k, cache=cache)
