"""Closed walks as a start vertex plus flip steps.

A step is a tuple of 1-based positions flipped together.  One period of a
closed walk of length L is L steps; the last one returns to the start.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator


def replay(start: int, steps: Iterable[tuple]) -> Iterator[int]:
    """Vertices after each step (the start itself is not yielded)."""
    v = start
    for step in steps:
        for q in step:
            v ^= 1 << (q - 1)
        yield v


def steps_between(vertices: list[int]) -> list[tuple]:
    """Cyclic steps through a vertex list, closing back to the first one."""
    out = []
    m = len(vertices)
    for i in range(m):
        d = vertices[i] ^ vertices[(i + 1) % m]
        step = []
        while d:
            low = d & -d
            step.append(low.bit_length())
            d ^= low
        out.append(tuple(step))
    return out


@dataclass
class Walk:
    n: int
    start: int
    steps: list

    @classmethod
    def from_vertices(cls, n: int, vertices: list[int]) -> Walk:
        return cls(n, vertices[0], steps_between(vertices))

    def vertices(self) -> list[int]:
        """Start followed by every vertex except the closing repeat."""
        out = [self.start]
        out.extend(replay(self.start, self.steps[:-1]))
        return out

    def __len__(self) -> int:
        return len(self.steps)
