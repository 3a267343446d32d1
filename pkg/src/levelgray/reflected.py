"""The reflected Gray code and its restriction to single levels.

Everything here works on int-encoded vertices (see ``bits``); the BitVector
wrappers at the bottom are the public surface.  ``gamma_values`` expands the
recursive definition directly and is kept independent of the successor
formulas so it can serve as their oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Optional

from .bits import BitVector, popcount

ORACLE_CAP = 20


def _lowest_one(v: int) -> int:
    return (v & -v).bit_length()


def _lowest_zero(v: int) -> int:
    return (~v & (v + 1)).bit_length()


def gamma_flip(v: int, n: int) -> int:
    """Position flipped by the successor of v in Gamma_n."""
    if popcount(v) % 2 == 0:
        return 1
    if v == 1 << (n - 1):
        # last vertex 0^{n-1}1 wraps around to 0^n
        return n
    return _lowest_one(v) + 1


def gamma_next(v: int, n: int) -> int:
    return v ^ (1 << (gamma_flip(v, n) - 1))


def upward(v: int, n: int) -> bool:
    """True iff the Gamma_n successor of v is one level up."""
    return not (v >> (gamma_flip(v, n) - 1)) & 1


def level_next(v: int, n: int) -> tuple[int, int, int, bool]:
    """Successor of v within its level of Gamma_n.

    Returns (successor, p1, p2, is_upward); the intermediate vertex on the
    common up/down neighbour is ``v ^ e_{p1}``.
    """
    k = popcount(v)
    if not 0 < k < n:
        raise ValueError(f"level successor needs 0 < weight < n, got weight {k}, n={n}")
    if upward(v, n):
        i = _lowest_one(v)
        p1 = i - 1 if k % 2 == 0 else i + 1
        p2 = i
        up = True
    else:
        i = _lowest_zero(v)
        if (k - i) % 2:
            p1, p2 = i - 2, i
        else:
            j = _lowest_one(v >> i) + i
            if j == n:
                p1, p2 = n, i
            elif not (v >> j) & 1:
                p1, p2 = i - 1, j + 1
            else:
                p1, p2 = j + 1, i
        up = False
    assert 1 <= p1 <= n and 1 <= p2 <= n and p1 != p2, (v, n, p1, p2)
    return v ^ (1 << (p1 - 1)) ^ (1 << (p2 - 1)), p1, p2, up


def first_value(n: int, k: int) -> int:
    if not 0 <= k <= n:
        raise ValueError(f"level {k} outside [0, {n}]")
    return (1 << k) - 1


def last_value(n: int, k: int) -> int:
    if not 0 <= k <= n:
        raise ValueError(f"level {k} outside [0, {n}]")
    if k == 0:
        return 0
    return ((1 << (k - 1)) - 1) | (1 << (n - 1))


def gamma_values(n: int, cap: int = ORACLE_CAP) -> list[int]:
    """Gamma_n by its recursive definition; exponential, oracle use only."""
    if not 1 <= n <= cap:
        raise ValueError(f"expand_gamma: n={n} outside [1, {cap}]")
    seq = [0, 1]
    for m in range(1, n):
        top = 1 << m
        seq = seq + [v | top for v in reversed(seq)]
    return seq


def level_values(n: int, k: int, cap: int = ORACLE_CAP) -> list[int]:
    """Gamma_{n,k} extracted from the expanded Gamma_n."""
    return [v for v in gamma_values(n, cap) if popcount(v) == k]


@dataclass(frozen=True)
class LevelStep:
    successor: BitVector
    p1: int
    p2: int
    via_up: Optional[BitVector] = None
    via_down: Optional[BitVector] = None

    @property
    def via(self) -> BitVector:
        return self.via_up if self.via_up is not None else self.via_down


def gamma_successor(x: BitVector) -> BitVector:
    return BitVector(x.n, gamma_next(x.value, x.n))


def is_upward(x: BitVector) -> bool:
    return upward(x.value, x.n)


def level_successor(x: BitVector) -> LevelStep:
    succ, p1, p2, up = level_next(x.value, x.n)
    via = BitVector(x.n, x.value ^ (1 << (p1 - 1)))
    if up:
        return LevelStep(BitVector(x.n, succ), p1, p2, via_up=via)
    return LevelStep(BitVector(x.n, succ), p1, p2, via_down=via)


def level_first(n: int, k: int) -> BitVector:
    return BitVector(n, first_value(n, k))


def level_last(n: int, k: int) -> BitVector:
    return BitVector(n, last_value(n, k))


def _binom(m: int, r: int) -> int:
    return comb(m, r) if 0 <= r <= m else 0


def up_down_counts(n: int, k: int) -> tuple[int, int]:
    """Number of upward and downward vertices of Gamma_n in level k."""
    if not 0 <= k <= n:
        raise ValueError(f"level {k} outside [0, {n}]")
    return _binom(n - 1, k), _binom(n - 1, k - 1)


def expand_gamma(n: int, cap: int = ORACLE_CAP) -> list[BitVector]:
    return [BitVector(n, v) for v in gamma_values(n, cap)]
