"""Brute-force checks for every generated cycle or enumeration.

``check_sequence`` replays a step stream from its start vertex and collects
level counts, distances and repeats in one pass.  Vertex sets are only
materialized for n <= 24; beyond that duplicates are not tracked and the
per-level counts are taken over visits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Optional

from .bits import popcount, to_str
from .reflected import gamma_values, level_next, up_down_counts, upward

KINDS = ("saturating", "tight", "trim", "long")
SET_LIMIT = 24


def _binom(m: int, r: int) -> int:
    return comb(m, r) if 0 <= r <= m else 0


def v_delta(n: int, k: int, l: int) -> tuple[int, int]:
    """Vertex count and bipartite imbalance of Q_{n,[k,l]}."""
    if n < 1 or not 0 <= k <= l <= n:
        raise ValueError(f"need 0 <= k <= l <= n, got n={n}, k={k}, l={l}")
    v = sum(comb(n, i) for i in range(k, l + 1))
    if (l - k) % 2 == 0:
        delta = _binom(n - 1, k - 1) + _binom(n - 1, l)
    else:
        delta = abs(_binom(n - 1, k - 1) - _binom(n - 1, l))
    return v, delta


def alternating_delta(n: int, k: int, l: int) -> int:
    return abs(sum((-1) ** i * comb(n, i) for i in range(k, l + 1)))


def epsilon_bound(k: int, c: int) -> float:
    """Missed-fraction bound for the long cycle in Q_{2k+1,[k-c,k+1+c]}."""
    if c > k or c < 0 or k < 1:
        raise ValueError(f"epsilon needs 0 <= c <= k and k >= 1, got k={k}, c={c}")
    if c == k:
        return 0.0
    x = (c + 1) ** 2 / (k - c)
    return (1.0 if x >= math.log(2) else math.expm1(x)) / (2 * (c + 1))


def epsilon_exact(k: int, c: int) -> Optional[Fraction]:
    """The bound as a rational when the min picks 1 (or c = k), else None."""
    if c == k:
        return Fraction(0)
    if math.exp((c + 1) ** 2 / (k - c)) - 1 >= 1 + 1e-9:
        return Fraction(1, 2 * (c + 1))
    return None


def within_epsilon(fraction: Fraction, k: int, c: int, slack: float = 1e-12) -> bool:
    exact = epsilon_exact(k, c)
    if exact is not None:
        return fraction <= exact
    return float(fraction) <= epsilon_bound(k, c) + slack


@dataclass
class CycleReport:
    n: int
    k: int
    l: int
    kind: str
    valid: bool = True
    closed: bool = True
    length: int = 0
    total_distance: int = 0
    visited: int = 0
    duplicates: Optional[int] = 0
    out_of_range: int = 0
    v: int = 0
    delta: int = 0
    visited_by_level: dict = field(default_factory=dict)
    omitted_by_level: dict = field(default_factory=dict)
    omitted_class_consistent: bool = True
    distance_histogram: dict = field(default_factory=dict)
    cross_level_long_steps: int = 0
    substructures: dict = field(default_factory=dict)
    fraction: Optional[Fraction] = None
    epsilon: Optional[float] = None
    errors: list = field(default_factory=list)

    @property
    def length_or_td(self) -> int:
        return self.total_distance if self.kind == "tight" else self.length

    def fail(self, msg: str) -> None:
        self.valid = False
        self.errors.append(msg)


def check_sequence(start: int, steps: Iterable, n: int, k: int, l: int, kind: str,
                   substructures: Optional[dict] = None) -> CycleReport:
    """Replay one period of ``steps`` from ``start`` and judge it as ``kind``."""
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}")
    r = CycleReport(n, k, l, kind)
    r.v, r.delta = v_delta(n, k, l)
    if substructures:
        r.substructures = dict(substructures)
    track = n <= SET_LIMIT
    seen = {start} if track else None
    if not 0 <= start < (1 << n):
        raise ValueError(f"start vertex {start} does not fit in {n} bits")
    hist: dict = {}
    by_level = {i: 0 for i in range(k, l + 1)}
    w0 = popcount(start)
    if k <= w0 <= l:
        by_level[w0] += 1
    else:
        r.out_of_range += 1
    dup = 0
    v = start
    length = 0
    td = 0
    last = None
    for step in steps:
        if not isinstance(step, (tuple, list)) or not step:
            raise ValueError(f"malformed step {step!r}")
        prev = v
        for q in step:
            if not isinstance(q, int) or not 1 <= q <= n:
                raise ValueError(f"flip position {q!r} outside 1..{n}")
            v ^= 1 << (q - 1)
        d = popcount(prev ^ v)
        length += 1
        td += d
        hist[d] = hist.get(d, 0) + 1
        if d == 0:
            r.fail(f"step {length} does not move")
        if d >= 2 and popcount(prev) != popcount(v):
            r.cross_level_long_steps += 1
        last = v
        if v == start:
            continue
        w = popcount(v)
        if not k <= w <= l:
            r.out_of_range += 1
            continue
        if track:
            if v in seen:
                dup += 1
                continue
            seen.add(v)
        by_level[w] += 1
    r.length, r.total_distance = length, td
    r.distance_histogram = dict(sorted(hist.items()))
    r.closed = last == start
    # the start is reached again only by the closing step; anything earlier is a repeat
    r.duplicates = dup if track else None
    r.visited_by_level = by_level
    r.visited = sum(by_level.values())
    r.omitted_by_level = {i: comb(n, i) - c for i, c in by_level.items() if comb(n, i) - c}
    parities = {i % 2 for i in r.omitted_by_level}
    r.omitted_class_consistent = len(parities) <= 1
    _judge(r, start, track, seen)
    return r


def _judge(r: CycleReport, start: int, track: bool, seen) -> None:
    if not r.closed:
        r.fail("walk does not return to its start")
    if r.out_of_range:
        r.fail(f"{r.out_of_range} vertices outside levels [{r.k},{r.l}]")
    if r.duplicates:
        r.fail(f"{r.duplicates} repeated vertices")
    if track and r.closed and r.length != len(seen):
        r.fail(f"start vertex revisited before the end ({r.length} steps, {len(seen)} vertices)")
    if any(c < 0 for c in r.omitted_by_level.values()):
        r.fail("more visits than vertices in some level")
    dist_one = set(r.distance_histogram) <= {1}
    if r.kind == "saturating":
        if not dist_one:
            r.fail("saturating cycle with a step of distance != 1")
        if r.length != r.v - r.delta:
            r.fail(f"length {r.length} != v - delta = {r.v - r.delta}")
        if not r.omitted_class_consistent:
            r.fail("omitted vertices in both bipartite classes")
    elif r.kind == "trim":
        if not dist_one:
            r.fail("trimmed cycle with a step of distance != 1")
        inner = [i for i in r.omitted_by_level if r.k < i < r.l]
        if inner:
            r.fail(f"vertices omitted at inner levels {inner}")
    elif r.kind == "tight":
        if r.visited != r.v:
            r.fail(f"visited {r.visited} of {r.v} vertices")
        if not set(r.distance_histogram) <= {1, 2}:
            r.fail("step of distance > 2")
        if r.cross_level_long_steps:
            r.fail("distance-2 step between different levels")
        if r.total_distance != r.v + r.delta:
            r.fail(f"total distance {r.total_distance} != v + delta = {r.v + r.delta}")
    elif r.kind == "long":
        if not dist_one:
            r.fail("long cycle with a step of distance != 1")
        kk = (r.n - 1) // 2
        c = kk - r.k
        if r.n % 2 == 0 or r.l != kk + 1 + c or c < 0:
            r.fail("long cycle needs levels [k-c, k+1+c] of Q_{2k+1}")
            return
        r.fraction = Fraction(r.v - r.visited, r.v)
        r.epsilon = epsilon_bound(kk, c)
        if not within_epsilon(r.fraction, kk, c):
            r.fail(f"missed fraction {float(r.fraction):.6g} exceeds epsilon {r.epsilon:.6g}")


def render_text(r: CycleReport) -> str:
    lines = [
        f"{r.kind} Q_{r.n}[{r.k},{r.l}]: {'VALID' if r.valid else 'INVALID'}",
        f"  v={r.v} delta={r.delta} length={r.length} total_distance={r.total_distance}",
        f"  visited={r.visited} duplicates={r.duplicates} closed={r.closed}",
        f"  omitted_by_level={r.omitted_by_level} one_class={r.omitted_class_consistent}",
        f"  distance_histogram={r.distance_histogram}",
    ]
    if r.fraction is not None:
        lines.append(f"  missed_fraction={float(r.fraction):.6g} epsilon={r.epsilon:.6g}")
    for name, val in r.substructures.items():
        lines.append(f"  {name}={val}")
    for e in r.errors:
        lines.append(f"  error: {e}")
    return "\n".join(lines)


def render_kv(r: CycleReport) -> str:
    kv = {
        "kind": r.kind, "n": r.n, "k": r.k, "l": r.l, "valid": int(r.valid),
        "v": r.v, "delta": r.delta, "length": r.length, "td": r.total_distance,
        "length_or_td": r.length_or_td, "visited": r.visited, "duplicates": r.duplicates,
        "closed": int(r.closed), "one_class": int(r.omitted_class_consistent),
    }
    for i, c in sorted(r.omitted_by_level.items()):
        kv[f"omitted.{i}"] = c
    for d, c in r.distance_histogram.items():
        kv[f"dist.{d}"] = c
    if r.fraction is not None:
        kv["fraction"] = f"{float(r.fraction):.12g}"
        kv["epsilon"] = f"{r.epsilon:.12g}"
    for name, val in r.substructures.items():
        kv[f"sub.{name}"] = val
    return "\n".join(f"{a}={b}" for a, b in kv.items())


# ---------------------------------------------------------------- lemma suite

def subsequence_lemma_suite(n: int) -> dict[str, bool]:
    """Exhaustive check of the level-sequence lemmas against the expanded code."""
    if n < 2:
        raise ValueError("lemma suite needs n >= 2")
    g = gamma_values(n)
    size = len(g)
    succ = {g[i]: g[(i + 1) % size] for i in range(size)}
    pred = {g[i]: g[i - 1] for i in range(size)}
    levels = {k: [x for x in g if popcount(x) == k] for k in range(n + 1)}
    up_oracle = {x: popcount(succ[x]) == popcount(x) + 1 for x in g}
    res = {"level_steps_distance_two": True, "up_down_subsequences": True, "up_is_gamma_neighbour": True, "upward_criterion": True,
           "up_down_counts": True, "up_parity_rule": True, "level_successor": True}

    for x in g:
        k = popcount(x)
        if k % 2 == 0:
            formula = not x & 1
        else:
            i = (x & -x).bit_length() if x != 1 << (n - 1) else n - 1
            formula = i + 1 <= n and not (x >> i) & 1
        if formula != up_oracle[x] or upward(x, n) != up_oracle[x]:
            res["upward_criterion"] = False

    for k in range(0, n + 1):
        ups = sum(up_oracle[x] for x in levels[k])
        if (ups, len(levels[k]) - ups) != up_down_counts(n, k):
            res["up_down_counts"] = False

    for k in range(1, n):
        seq = levels[k]
        m = len(seq)
        nxt = {seq[i]: seq[(i + 1) % m] for i in range(m)}
        for x in seq:
            y = nxt[x]
            if popcount(x ^ y) != 2:
                res["level_steps_distance_two"] = False
            if level_next(x, n)[0] != y:
                res["level_successor"] = False
            if up_oracle[x]:
                u = x | y
                if u not in (succ[x], pred[y]):
                    res["up_is_gamma_neighbour"] = False
                if u != (pred[y] if k % 2 == 0 else succ[x]):
                    res["up_parity_rule"] = False
        ups = [x | nxt[x] for x in seq if up_oracle[x]]
        if not _is_subsequence(ups, levels[k + 1]):
            res["up_down_subsequences"] = False
        downs = [x & nxt[x] for x in seq if not up_oracle[x]]
        if downs:
            rotated = downs[-1:] + downs[:-1]
            if not _is_subsequence(rotated, levels[k - 1]):
                res["up_down_subsequences"] = False
            if downs[-1] != levels[k - 1][0]:
                res["up_down_subsequences"] = False
            if k > 1 and levels[k - 1][-1] in downs:
                res["up_down_subsequences"] = False
    return res


def _is_subsequence(a: list, b: list) -> bool:
    it = iter(b)
    return all(any(x == y for y in it) for x in a)


def describe(v: int, n: int) -> str:
    return to_str(v, n)
