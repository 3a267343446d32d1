"""Bitstrings as cube vertices.

A vertex of Q_n is stored as a plain int: bit position i (1-based, position 1
leftmost in text form) is the int bit ``i - 1``.  That makes the integer value
exactly sum(x_i * 2**(i-1)) and the text form x_1 x_2 ... x_n.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator


def popcount(v: int) -> int:
    return v.bit_count()


def to_str(v: int, n: int) -> str:
    """Render x_1..x_n left to right."""
    return format(v, f"0{n}b")[::-1] if n else ""


def from_str(s: str) -> int:
    s = s.strip()
    if not s or set(s) - {"0", "1"}:
        raise ValueError(f"not a bitstring: {s!r}")
    return int(s[::-1], 2)


def ones(v: int) -> Iterator[int]:
    """1-based positions of the 1-bits, ascending."""
    while v:
        low = v & -v
        yield low.bit_length()
        v ^= low


def a_value(n: int, i: int) -> int:
    """a_{n,i} = 0^{n-i} 1^i."""
    if not 0 <= i <= n:
        raise ValueError(f"a_{{n,i}} needs 0 <= i <= n, got n={n}, i={i}")
    return ((1 << i) - 1) << (n - i)


def b_value(n: int, i: int) -> int:
    """b_{n,i} = 0^{n-i-1} 1^i 0."""
    if not 0 <= i <= n - 1:
        raise ValueError(f"b_{{n,i}} needs 0 <= i <= n-1, got n={n}, i={i}")
    return ((1 << i) - 1) << (n - i - 1)


def complement(v: int, n: int) -> int:
    return v ^ ((1 << n) - 1)


def flip_positions(u: int, v: int) -> tuple[int, ...]:
    """Positions where u and v differ, ascending."""
    return tuple(ones(u ^ v))


@dataclass(frozen=True, slots=True)
class BitVector:
    """Immutable length-n bitstring, positions 1..n."""

    n: int
    value: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("length must be positive")
        if not 0 <= self.value < (1 << self.n):
            raise ValueError(f"value {self.value} does not fit in {self.n} bits")

    @classmethod
    def parse(cls, s: str) -> BitVector:
        return cls(len(s.strip()), from_str(s))

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> BitVector:
        bits = list(bits)
        v = 0
        for i, b in enumerate(bits):
            if b not in (0, 1):
                raise ValueError(f"bit {b!r} at position {i + 1}")
            v |= b << i
        return cls(len(bits), v)

    def __str__(self) -> str:
        return to_str(self.value, self.n)

    def __int__(self) -> int:
        return self.value

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, i: int) -> int:
        """1-based bit access, x[1] is the leftmost bit."""
        if not 1 <= i <= self.n:
            raise IndexError(i)
        return (self.value >> (i - 1)) & 1

    @property
    def weight(self) -> int:
        return popcount(self.value)

    def flip(self, *positions: int) -> BitVector:
        v = self.value
        for p in positions:
            if not 1 <= p <= self.n:
                raise IndexError(p)
            v ^= 1 << (p - 1)
        return BitVector(self.n, v)

    def complement(self) -> BitVector:
        return BitVector(self.n, complement(self.value, self.n))

    def ones(self) -> tuple[int, ...]:
        return tuple(ones(self.value))


@dataclass(frozen=True, slots=True)
class LevelInterval:
    """Levels [k, l] of Q_n."""

    n: int
    k: int
    l: int

    def __post_init__(self):
        if self.n < 1 or not 0 <= self.k <= self.l <= self.n:
            raise ValueError(f"need 0 <= k <= l <= n, got n={self.n}, k={self.k}, l={self.l}")

    def __contains__(self, x) -> bool:
        return self.k <= popcount(int(x)) <= self.l


def weight(x: BitVector) -> int:
    return x.weight


def hamming(x: BitVector, y: BitVector) -> int:
    if x.n != y.n:
        raise ValueError(f"length mismatch: {x.n} != {y.n}")
    return popcount(x.value ^ y.value)


def special_a(n: int, i: int) -> BitVector:
    return BitVector(n, a_value(n, i))


def special_b(n: int, i: int) -> BitVector:
    return BitVector(n, b_value(n, i))


def _check_pair(x: BitVector, y: BitVector) -> None:
    if x.weight != y.weight or hamming(x, y) != 2:
        raise ValueError(f"{x} and {y} are not a same-weight distance-2 pair")


def common_up(x: BitVector, y: BitVector) -> BitVector:
    """The unique common neighbour one level above a distance-2 pair."""
    _check_pair(x, y)
    return BitVector(x.n, x.value | y.value)


def common_down(x: BitVector, y: BitVector) -> BitVector:
    """The unique common neighbour one level below a distance-2 pair."""
    _check_pair(x, y)
    return BitVector(x.n, x.value & y.value)
