"""Loopless generation of the trimmed reflected Gray code.

``TrimCursor`` walks Gamma_n restricted to levels [k, l]: inside the open
interval (k, l) it follows Gamma_n, and every excursion above l-1 or below
k+1 is cut short through the common up/down neighbour of two consecutive
vertices of the boundary level.  In tight mode the same machinery runs on
[k-1, l+1] and the detour vertex is skipped, giving a distance-2 step inside
level k or l.

State is the current vertex x, its weight c, the array p of 1-positions
counted from the right (p[c] is the leftmost 1) and the block pointers nu.
Entries of p and nu above index c are stale and never cleaned up.

A step is a tuple of flipped 1-based positions.  ``advance`` performs one
iteration of the main loop and returns the steps it visited (two of them at
a trim boundary).
"""

from __future__ import annotations

from itertools import islice
from typing import Iterator

from .bits import BitVector

Step = tuple  # tuple[int, ...] of flipped positions

# Upper bound asserted on the per-iteration primitive-operation counter.
MAX_OPS_PER_VISIT = 64


class TrimCursor:
    """Endless cursor over the trimmed cycle in Q_{n,[k,l]}."""

    def __init__(self, n: int, k: int, l: int, tight: bool = False):
        if tight:
            lo, hi = k - 1, l + 1
            if n < 2 or not 0 <= k < l <= n:
                raise ValueError(f"tight trim needs 0 <= k < l <= n, got n={n}, k={k}, l={l}")
        else:
            lo, hi = k, l
            if n < 2 or not 0 <= k < l <= n or l - k < 2:
                raise ValueError(
                    f"trim needs n >= 2, 0 <= k < l <= n and l - k >= 2, got n={n}, k={k}, l={l}")
        self.n, self.k, self.l, self.tight = n, k, l, tight
        self._lo, self._hi = lo, hi
        c = lo + 1
        self.x = bytearray(n + 3)
        self.p = [0] * (n + 3)
        self.nu = [0] * (n + 3)
        for i in range(1, c + 1):
            self.x[i] = 1
        if c >= 1:
            self.nu[c] = 1
            for i in range(1, c + 1):
                self.p[i] = c - i + 1
        self.c = c
        self.start = (1 << c) - 1
        self.ops_last = 0
        self.max_ops = 0
        self.iterations = 0
        self._gen = self._run()

    @property
    def value(self) -> int:
        v = 0
        x = self.x
        for i in range(1, self.n + 1):
            if x[i]:
                v |= 1 << (i - 1)
        return v

    @property
    def vertex(self) -> BitVector:
        return BitVector(self.n, self.value)

    def advance(self) -> tuple[Step, ...]:
        return next(self._gen)

    def __iter__(self) -> Iterator[Step]:
        gen = self._gen
        while True:
            yield from next(gen)

    def check_invariants(self) -> None:
        """Full O(n) rescan of the ones index; raises AssertionError."""
        n, x, p, nu, c = self.n, self.x, self.p, self.nu, self.c
        assert x[0] == 0 and x[n + 1] == 0 and x[n + 2] == 0, "padding touched"
        pos = [i for i in range(n, 0, -1) if x[i]]
        assert len(pos) == c, f"weight {len(pos)} != c={c}"
        assert p[1:c + 1] == pos, f"p={p[1:c + 1]} but ones from right are {pos}"
        for i in range(1, c + 1):
            start = p[i]
            if start == 1 or not x[start - 1]:
                j = nu[i]
                assert 1 <= j <= i, f"nu[{i}]={j} out of range"
                end = p[j]
                assert all(x[t] for t in range(start, end + 1)), f"block {start}..{end} not all ones"
                assert end == n or not x[end + 1], f"block starting at {start} does not end at {end}"

    def _run(self):
        n, x, p, nu = self.n, self.x, self.p, self.nu
        lo, hi = self._lo, self._hi
        tight = self.tight
        c = self.c
        max_ops = 0
        while True:
            ops = 4
            if c % 2 == 0:
                upw = x[1] == 0
            else:
                pc = p[c]
                upw = pc < n and x[pc + 1] == 0
            if upw and c < hi - 1:
                # follow Gamma_n up
                if c % 2 == 0:
                    x[1] = 1
                    out = ((1,),)
                    c += 1
                    p[c] = 1
                    nu[c] = c if x[2] == 0 else nu[c - 1]
                    ops += 6
                else:
                    i = p[c]
                    x[i + 1] = 1
                    out = ((i + 1,),)
                    c += 1
                    p[c] = i
                    p[c - 1] = i + 1
                    nu[c] = c - 1 if (i + 1 == n or x[i + 2] == 0) else nu[c - 2]
                    ops += 9
            elif not upw and c > lo + 1:
                # follow Gamma_n down
                if c % 2 == 0:
                    x[1] = 0
                    out = ((1,),)
                    c -= 1
                    if x[2] == 1:
                        nu[c] = nu[c + 1]
                    ops += 6
                elif c == 1 and p[1] == n:
                    # 0^{n-1}1 -> 0^n closes Gamma_n (tight mode with k = 0 only)
                    x[n] = 0
                    out = ((n,),)
                    c = 0
                    ops += 4
                else:
                    i = p[c]
                    x[i + 1] = 0
                    out = ((i + 1,),)
                    c -= 1
                    p[c] = i
                    nu[c] = c
                    if x[i + 2] == 1:
                        nu[c - 1] = nu[c + 1]
                    ops += 10
            elif upw:
                # c == hi-1: follow Gamma_{n,c} through up(x, s(x))
                i = p[c]
                if c % 2 == 0:
                    x[i - 1] = 1
                    x[i] = 0
                    out = (i - 1, i)
                    p[c] = i - 1
                    if x[i + 1] == 1:
                        nu[c - 1] = nu[c]
                        nu[c] = c
                    ops += 9
                else:
                    x[i + 1] = 1
                    x[i] = 0
                    out = (i + 1, i)
                    p[c] = i + 1
                    if i + 2 <= n and x[i + 2] == 1:
                        nu[c] = nu[c - 1]
                    ops += 9
                out = (out,) if tight else ((out[0],), (out[1],))
            else:
                # c == lo+1: follow Gamma_{n,c} through down(x, s(x))
                vc = nu[c]
                i = 1 if x[1] == 0 else p[vc] + 1
                if (c - i) % 2:
                    x[i - 2] = 0
                    x[i] = 1
                    out = (i - 2, i)
                    p[vc + 1] = i - 1
                    p[vc] = i
                    if i + 1 <= n and x[i + 1] == 1:
                        nu[vc + 1] = nu[vc - 1]
                    else:
                        nu[vc + 1] = vc
                    if i > 3:
                        nu[c] = vc + 2
                    ops += 14
                else:
                    if x[1] == 0:
                        a = c
                    else:
                        a = vc - 1
                    j = p[a]
                    if j == n:
                        x[n] = 0
                        x[i] = 1
                        out = (n, i)
                        p[1] = i
                        nu[c] = 1
                        ops += 12
                    elif x[j + 1] == 0:
                        x[i - 1] = 0
                        x[j + 1] = 1
                        out = (i - 1, j + 1)
                        p[vc] = j
                        p[vc - 1] = j + 1
                        if j + 2 <= n and x[j + 2] == 1:
                            nu[vc] = nu[vc - 2]
                        else:
                            nu[vc] = vc - 1
                        if i > 2:
                            nu[c] = vc + 1
                        ops += 18
                    else:
                        x[j + 1] = 0
                        x[i] = 1
                        out = (j + 1, i)
                        p[a] = i
                        p[a - 1] = j
                        if j + 2 <= n and x[j + 2] == 1:
                            nu[a - 2] = nu[a]
                        if j == i + 1:
                            nu[c] = a - 1
                        else:
                            nu[a - 1] = a - 1
                            nu[c] = a
                        ops += 19
                out = (out,) if tight else ((out[0],), (out[1],))
            self.c = c
            self.ops_last = ops
            if ops > max_ops:
                max_ops = ops
                self.max_ops = ops
            self.iterations += 1
            yield out


def trim_new(n: int, k: int, l: int) -> TrimCursor:
    return TrimCursor(n, k, l)


def trim_next(cursor: TrimCursor) -> tuple[Step, ...]:
    return cursor.advance()


def tight_new(n: int, k: int, l: int) -> TrimCursor:
    return TrimCursor(n, k, l, tight=True)


def tight_next(cursor: TrimCursor) -> Step:
    (step,) = cursor.advance()
    return step


def one_period(cursor: TrimCursor) -> Iterator[Step]:
    """Steps of one full period, ending with the step back to the start."""
    v = start = cursor.value
    for step in cursor:
        for q in step:
            v ^= 1 << (q - 1)
        yield step
        if v == start:
            return


def trim_steps(n: int, k: int, l: int, tight: bool = False, limit: int | None = None) -> Iterator[Step]:
    cur = TrimCursor(n, k, l, tight=tight)
    it = one_period(cur) if limit is None else iter(cur)
    return islice(it, limit) if limit is not None else it
