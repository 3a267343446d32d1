"""Which construction serves a mode and interval, and its step stream.

``resolve`` validates parameters against the case matrix and returns a
``Plan``; ``Plan.stream()`` produces the start vertex plus an endless step
iterator, and ``Plan.period`` is the number of steps in one period.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import cycle
from math import comb
from typing import Callable, Iterator, Optional

from .glue import ConjectureGated, long_cycle, sat_cycle_range, tight_enum_pair, tight_enum_range
from .midlevels import ProviderCache
from .reflected import first_value, gamma_flip, level_next, up_down_counts
from .satcycle import sat_cycle, sat_cycle_high
from .trim import TrimCursor
from .verify import v_delta

MODES = ("reflected", "level", "trim", "saturating", "tight", "long")


class InvalidParameters(ValueError):
    pass


__all__ = ["MODES", "InvalidParameters", "ConjectureGated", "Plan", "resolve", "classify"]


@dataclass
class Plan:
    mode: str
    case: str
    n: int
    k: int
    l: int
    kind: str  # verifier kind
    period: int
    _factory: Callable
    c: Optional[int] = None

    def stream(self) -> tuple[int, Iterator[tuple]]:
        return self._factory()


def _walk_stream(build):
    def factory():
        w = build()
        return w.start, cycle(w.steps)
    return factory


def _cursor_stream(n, k, l, tight):
    def factory():
        cur = TrimCursor(n, k, l, tight=tight)
        return cur.value, iter(cur)
    return factory


def _gamma_stream(n):
    def factory():
        def gen():
            v = 0
            while True:
                f = gamma_flip(v, n)
                v ^= 1 << (f - 1)
                yield (f,)
        return 0, gen()
    return factory


def _level_stream(n, k):
    def factory():
        def gen():
            v = first_value(n, k)
            while True:
                nv, p1, p2, _ = level_next(v, n)
                v = nv
                yield (p1, p2)
        return first_value(n, k), gen()
    return factory


def classify(mode: str, n: int, k: int, l: int) -> str:
    """Case label for a saturating or tight interval; raises on bad input."""
    if n < 3 or not 0 <= k <= l <= n:
        raise InvalidParameters(f"need n >= 3 and 0 <= k <= l <= n, got n={n}, k={k}, l={l}")
    d = l - k
    one_side = l <= (n + 1) // 2 or k >= n // 2
    if k == 0 and l == n:
        return "Gamma_n"
    if mode == "saturating":
        if d == 0:
            raise InvalidParameters("a single level has no cycle; use --mode level (Thm2)")
        if d == 1:
            if 1 <= k <= n - 2:
                return "Thm3"
            raise InvalidParameters(f"levels [{k},{l}] form a star; no cycle (Thm3 needs 1 <= k <= n-2)")
        if k == 0 or l == n:
            return "Thm5(i)"
        if d % 2 == 0:
            return "Thm5(ii)"
        if one_side:
            return "Thm5(iii)"
        raise ConjectureGated(f"[{k},{l}] in Q_{n}: odd width straddling the middle is Thm5(iv), conjecture-gated")
    if mode == "tight":
        if d == 0:
            if not 0 < k < n:
                raise InvalidParameters(f"level {k} of Q_{n} is a single vertex; Thm2 needs 0 < k < n")
            return "Thm2"
        if k == 0 or l == n:
            return "Thm6(i)"
        if d % 2 == 0:
            return "Thm6(ii)"
        if d == 1:
            return "Thm6(iiia)"
        if one_side:
            return "Thm6(iiib)"
        raise ConjectureGated(f"[{k},{l}] in Q_{n}: odd width straddling the middle is Thm6(iv), conjecture-gated")
    raise InvalidParameters(f"no case matrix for mode {mode!r}")


def resolve(mode: str, n: Optional[int] = None, k: Optional[int] = None, l: Optional[int] = None,
            c: Optional[int] = None, cache: Optional[ProviderCache] = None) -> Plan:
    if mode not in MODES:
        raise InvalidParameters(f"unknown mode {mode!r}")
    if mode == "long":
        if k is None or c is None:
            raise InvalidParameters("long mode needs -k and -c")
        if k < 1 or not 0 <= c <= k:
            raise InvalidParameters(f"Thm7 needs k >= 1 and 0 <= c <= k, got k={k}, c={c}")
        nn = 2 * k + 1
        if n is not None and n != nn:
            raise InvalidParameters(f"long mode works in dimension 2k+1 = {nn}, got n={n}")
        lc = long_cycle(k, c, cache=cache)
        return Plan(mode, "Thm7", nn, k - c, k + c + 1, "long", len(lc.walk), _walk_stream(lambda: lc.walk), c=c)
    if n is None:
        raise InvalidParameters("missing -n")
    if mode == "reflected":
        if n < 1:
            raise InvalidParameters(f"need n >= 1, got n={n}")
        return Plan(mode, "Gamma_n", n, 0, n, "tight", 1 << n, _gamma_stream(n))
    if k is None:
        raise InvalidParameters("missing -k")
    if mode == "level":
        if n < 2 or not 0 < k < n:
            raise InvalidParameters(f"Thm2 level code needs 0 < k < n, got n={n}, k={k}")
        return Plan(mode, "Thm2", n, k, k, "tight", comb(n, k), _level_stream(n, k))
    if l is None:
        raise InvalidParameters("missing -l")
    if mode == "trim":
        if n < 2 or not 0 <= k < l <= n or l - k < 2:
            raise InvalidParameters(f"Thm4 needs n >= 2, 0 <= k < l <= n and l-k >= 2, got n={n}, k={k}, l={l}")
        return Plan(mode, "Thm4", n, k, l, "trim", _trim_period(n, k, l), _cursor_stream(n, k, l, False))
    case = classify(mode, n, k, l)
    v, delta = v_delta(n, k, l)
    if mode == "saturating":
        if case == "Gamma_n":
            return Plan(mode, case, n, k, l, "saturating", v, _cursor_stream(n, 0, n, True))
        if case in ("Thm5(i)", "Thm5(ii)"):
            return Plan(mode, case, n, k, l, "saturating", v - delta, _cursor_stream(n, k, l, False))
        if case == "Thm3":
            if k <= (n - 1) // 2:
                return Plan(mode, case, n, k, l, "saturating", v - delta,
                            _walk_stream(lambda: sat_cycle(n, k, cache=cache)))
            return Plan(mode, case, n, k, l, "saturating", v - delta,
                        _walk_stream(lambda: sat_cycle_high(n, k, cache=cache)))
        return Plan(mode, case, n, k, l, "saturating", v - delta,
                    _walk_stream(lambda: sat_cycle_range(n, k, l, cache=cache)))
    # tight
    if case == "Gamma_n":
        return Plan(mode, case, n, k, l, "tight", v, _cursor_stream(n, 0, n, True))
    if case == "Thm2":
        return Plan(mode, case, n, k, l, "tight", comb(n, k), _level_stream(n, k))
    if case in ("Thm6(i)", "Thm6(ii)"):
        return Plan(mode, case, n, k, l, "tight", v, _cursor_stream(n, k, l, True))
    if case == "Thm6(iiia)":
        return Plan(mode, case, n, k, l, "tight", v,
                    _walk_stream(lambda: tight_enum_pair(n, k, cache=cache).walk))
    return Plan(mode, case, n, k, l, "tight", v, _walk_stream(lambda: tight_enum_range(n, k, l, cache=cache)))


def _trim_period(n: int, k: int, l: int) -> int:
    """Inner vertices plus one detour per upward vertex of level l-1 and downward vertex of level k+1."""
    inner = sum(comb(n, i) for i in range(k + 1, l))
    return inner + up_down_counts(n, l - 1)[0] + up_down_counts(n, k + 1)[1]
