"""Hamilton paths through the middle levels, the base case of Algorithm S.

For kp >= 1 and n = 2kp+1 the provider supplies a flip sequence that starts
at a_{n,kp}, visits every vertex of Q_{n,[kp,kp+1]} except a_{n,kp+1} exactly
once and ends at b_{n,kp}.

How a path is found: rotation of coordinates acts on the middle levels with
orbits of size exactly n (gcd(n, kp) = 1).  A depth-first search picks one
vertex per orbit, walking from x0 = 1^kp 0^{kp+1} along cube edges, and
stops once it can step onto rot^s(x0) for some s coprime to n.  Repeating
that path under rot^s, rot^2s, ... closes a Hamilton cycle of the whole
middle-levels graph.  A coordinate permutation then sends three consecutive
cycle vertices to (a_kp, a_{kp+1}, b_kp), and dropping a_{kp+1} leaves the
required path.

Every path is replayed and certified before the cache hands it out.
"""

from __future__ import annotations

import os
import random
import sys
import threading
import time
from dataclasses import dataclass, field
from math import comb, gcd
from typing import Optional

from .bits import a_value, b_value, popcount

LEFT = "<-"   # a -> b
RIGHT = "->"  # b -> a

DEFAULT_KP_CAP = 6
CACHE_ENV = "LEVELGRAY_CACHE"


class ProviderError(RuntimeError):
    pass


class SearchTimeout(ProviderError):
    pass


@dataclass(frozen=True)
class MidPath:
    kp: int
    flips: tuple

    @property
    def n(self) -> int:
        return 2 * self.kp + 1


def _rot(v: int, n: int, full: int) -> int:
    return ((v << 1) | (v >> (n - 1))) & full


class _OrbitSearch:
    def __init__(self, kp: int):
        n = 2 * kp + 1
        full = (1 << n) - 1
        self.kp, self.n, self.full = kp, n, full
        oid: dict[int, int] = {}
        reps = []
        for v in range(1 << n):
            if popcount(v) in (kp, kp + 1) and v not in oid:
                w, i = v, len(reps)
                reps.append(v)
                for _ in range(n):
                    oid[w] = i
                    w = _rot(w, n, full)
        self.oid = oid
        self.m = len(reps)
        onb = [set() for _ in range(self.m)]
        for v, i in oid.items():
            for b in range(n):
                w = v ^ (1 << b)
                if w in oid:
                    onb[i].add(oid[w])
        self.onb = [tuple(s) for s in onb]
        self.x0 = (1 << kp) - 1
        self.targets = {}
        w = self.x0
        for s in range(1, n):
            w = _rot(w, n, full)
            if gcd(s, n) == 1:
                self.targets[w] = s
        self.nodes = 0

    def _prune_ok(self, used, cur) -> bool:
        onb, m = self.onb, self.m
        low = 0
        free = 0
        for o in range(m):
            if used[o]:
                continue
            free += 1
            d = 0
            for q in onb[o]:
                if not used[q] or q == cur:
                    d += 1
            if d == 0:
                return False
            if d == 1:
                low += 1
                if low > 1:
                    return False
        seen = {cur}
        stack = [cur]
        while stack:
            o = stack.pop()
            for q in onb[o]:
                if not used[q] and q not in seen:
                    seen.add(q)
                    stack.append(q)
        return len(seen) == free + 1

    def run(self, seed: int, node_limit: int, deadline: Optional[float]):
        """One randomized attempt; returns (path, s) or None."""
        n, oid, onb = self.n, self.oid, self.onb
        rng = random.Random(seed)
        used = [False] * self.m
        used[oid[self.x0]] = True
        path = [self.x0]
        budget = [node_limit]

        def dfs(u):
            self.nodes += 1
            budget[0] -= 1
            if budget[0] < 0:
                return None
            if deadline is not None and (self.nodes & 1023) == 0 and time.monotonic() > deadline:
                raise SearchTimeout(f"middle-levels search for kp={self.kp} timed out")
            if len(path) == self.m:
                for b in range(n):
                    s = self.targets.get(u ^ (1 << b))
                    if s is not None:
                        return s
                return False
            cand = [w for w in (u ^ (1 << b) for b in range(n)) if w in oid and not used[oid[w]]]
            rng.shuffle(cand)
            cand.sort(key=lambda w: sum(1 for q in onb[oid[w]] if not used[q]))
            for w in cand:
                o = oid[w]
                used[o] = True
                path.append(w)
                if self._prune_ok(used, o):
                    r = dfs(w)
                    if r:
                        return r
                    if r is None:
                        return None
                used[o] = False
                path.pop()
            return False

        old = sys.getrecursionlimit()
        sys.setrecursionlimit(max(old, self.m + 500))
        try:
            s = dfs(self.x0)
        finally:
            sys.setrecursionlimit(old)
        if not s:
            return None
        return path, s

    def lift(self, path, s) -> list[int]:
        """Hamilton cycle from the orbit-transversal path."""
        n, full = self.n, self.full
        cycle = []
        block = list(path)
        for _ in range(n):
            cycle.extend(block)
            for _ in range(s):
                block = [_rot(v, n, full) for v in block]
        return cycle


def _cycle_to_flips(kp: int, cycle: list[int]) -> tuple:
    n = 2 * kp + 1
    u, z, w = cycle[0], cycle[1], cycle[2]
    p = (u ^ z).bit_length()
    q = (z ^ w).bit_length()
    perm = {p: kp + 1, q: n}
    top = iter(range(kp + 2, n))
    bottom = iter(range(1, kp + 1))
    for i in range(1, n + 1):
        if i in perm:
            continue
        perm[i] = next(top) if (u >> (i - 1)) & 1 else next(bottom)
    seq = [u] + cycle[:1:-1]
    return tuple(perm[(x ^ y).bit_length()] for x, y in zip(seq, seq[1:]))


def certify(kp: int, flips) -> None:
    """Replay check of the MidPath contract; raises ValueError."""
    if kp < 1:
        raise ValueError(f"kp must be >= 1, got {kp}")
    n = 2 * kp + 1
    want = 2 * comb(n, kp) - 2
    if len(flips) != want:
        raise ValueError(f"kp={kp}: expected {want} flips, got {len(flips)}")
    skip = a_value(n, kp + 1)
    v = a_value(n, kp)
    seen = {v}
    for f in flips:
        if not 1 <= f <= n:
            raise ValueError(f"kp={kp}: flip position {f} outside 1..{n}")
        v ^= 1 << (f - 1)
        if popcount(v) not in (kp, kp + 1):
            raise ValueError(f"kp={kp}: left the middle levels")
        if v == skip or v in seen:
            raise ValueError(f"kp={kp}: vertex revisited or forbidden vertex reached")
        seen.add(v)
    if v != b_value(n, kp):
        raise ValueError(f"kp={kp}: path does not end at b")


@dataclass
class SearchStats:
    nodes: int = 0
    seeds: int = 0
    seconds: float = 0.0


def search(kp: int, timeout: Optional[float] = None, max_seeds: int = 100_000) -> tuple[MidPath, SearchStats]:
    t0 = time.monotonic()
    deadline = None if timeout is None else t0 + timeout
    eng = _OrbitSearch(kp)
    limit = max(1000, 20 * eng.m)
    for seed in range(max_seeds):
        found = eng.run(seed, limit, deadline)
        if found is not None:
            flips = _cycle_to_flips(kp, eng.lift(*found))
            certify(kp, flips)
            return MidPath(kp, flips), SearchStats(eng.nodes, seed + 1, time.monotonic() - t0)
    raise ProviderError(f"kp={kp}: no path found within {max_seeds} seeds")


def parse_records(text: str) -> dict[int, tuple]:
    out = {}
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    i = 0
    while i < len(lines):
        head = lines[i].split()
        if len(head) == 2 and head[0] == "K" and head[1].isdigit() and i + 1 < len(lines):
            try:
                out[int(head[1])] = tuple(int(t) for t in lines[i + 1].split())
            except ValueError:
                pass
            i += 2
        else:
            i += 1
    return out


def format_records(paths) -> str:
    return "".join(f"K {p.kp}\n{' '.join(map(str, p.flips))}\n" for p in paths)


@dataclass
class ProviderCache:
    """Per-process table of certified paths, keyed by kp only."""

    path: Optional[str] = None
    kp_cap: int = DEFAULT_KP_CAP
    timeout: Optional[float] = None
    _table: dict = field(default_factory=dict)
    _lock: threading.Lock = field(default_factory=threading.Lock)
    stats: dict = field(default_factory=dict)
    rejected: list = field(default_factory=list)

    def __post_init__(self):
        if self.path and os.path.exists(self.path):
            with open(self.path) as fh:
                self._absorb(parse_records(fh.read()), self.path)

    def _absorb(self, records, origin):
        for kp, flips in records.items():
            try:
                certify(kp, flips)
            except ValueError as exc:
                self.rejected.append((origin, kp, str(exc)))
                continue
            self._table[kp] = MidPath(kp, flips)

    def __contains__(self, kp) -> bool:
        return kp in self._table

    def get(self, kp: int) -> MidPath:
        hit = self._table.get(kp)
        if hit is not None:
            return hit
        if kp > self.kp_cap:
            raise ProviderError(f"kp={kp} above provider cap {self.kp_cap}")
        with self._lock:
            hit = self._table.get(kp)
            if hit is None:
                hit, st = search(kp, timeout=self.timeout)
                self.stats[kp] = st
                self._table[kp] = hit
                if self.path:
                    self._save()
        return hit

    def _save(self):
        tmp = f"{self.path}.tmp"
        with open(tmp, "w") as fh:
            fh.write(format_records(self._table[k] for k in sorted(self._table)))
        os.replace(tmp, self.path)


_default: Optional[ProviderCache] = None
_default_lock = threading.Lock()


def default_cache() -> ProviderCache:
    global _default
    with _default_lock:
        if _default is None:
            _default = ProviderCache(path=os.environ.get(CACHE_ENV) or None)
        return _default


def set_default_cache(cache: Optional[ProviderCache]) -> None:
    global _default
    with _default_lock:
        _default = cache


def provider_cache(kp: int) -> MidPath:
    return default_cache().get(kp)


def mid_path(kp: int, direction: str = LEFT, cache: Optional[ProviderCache] = None) -> tuple:
    """Flip sequence a -> b (LEFT) or b -> a (RIGHT)."""
    if kp < 1:
        raise ValueError(f"kp must be >= 1, got {kp}")
    if direction not in (LEFT, RIGHT):
        raise ValueError(f"direction must be {LEFT!r} or {RIGHT!r}")
    flips = (cache or default_cache()).get(kp).flips
    return flips if direction == LEFT else flips[::-1]
