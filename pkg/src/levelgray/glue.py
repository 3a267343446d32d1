"""Gluing pair cycles into longer cycles and tight enumerations.

Each construction takes cycles living on consecutive level pairs, relabels
coordinates of each one so that a few of its vertices land on the special
vertices a_i = 0^{n-i}1^i and b_i = 0^{n-i-1}1^i0, cuts a couple of edges
and joins neighbouring pieces with rungs a_{i-1}a_i and b_{i-1}b_i.

Cycles are handled as explicit vertex lists; edge surgery happens on an
adjacency table and the final cycle is read off by walking it.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Optional

from .bits import a_value, b_value, complement, popcount
from .midlevels import ProviderCache
from .satcycle import sat_cycle, sat_cycle_high
from .trim import TrimCursor, one_period
from .walk import Walk, replay


class ConjectureGated(ValueError):
    """Interval only covered conditionally on the symmetric-levels conjecture."""


# ---------------------------------------------------------------- relabelling

def coordinate_map(n: int, u: int, target: int, fixed: dict) -> list[int]:
    """Permutation perm[src] = dst with perm(u) = target.

    ``fixed`` pins some source positions; the rest of u's ones go to the rest
    of target's ones in increasing order, likewise for zeros.
    """
    perm = [0] * (n + 1)
    taken = set(fixed.values())
    for s, d in fixed.items():
        perm[s] = d
    free_one = iter(d for d in range(1, n + 1) if d not in taken and (target >> (d - 1)) & 1)
    free_zero = iter(d for d in range(1, n + 1) if d not in taken and not (target >> (d - 1)) & 1)
    for s in range(1, n + 1):
        if s in fixed:
            continue
        perm[s] = next(free_one) if (u >> (s - 1)) & 1 else next(free_zero)
    return perm


def apply_map(v: int, perm: list[int]) -> int:
    out = 0
    while v:
        low = v & -v
        out |= 1 << (perm[low.bit_length()] - 1)
        v ^= low
    return out


def _pos(u: int, v: int) -> int:
    return (u ^ v).bit_length()


def _relabel(n: int, cyc: list[int], anchors: list[tuple[int, int]], fixed: dict) -> list[int]:
    perm = coordinate_map(n, anchors[0][0], anchors[0][1], fixed)
    out = [apply_map(v, perm) for v in cyc]
    for src, dst in anchors:
        assert apply_map(src, perm) == dst, "relabelling missed an anchor"
    return out


# ------------------------------------------------------------- substructures

def find_three_path(vertices: list[int], k: int) -> Optional[int]:
    """Index j with (v_j..v_{j+3}) a 3-path from level k (cyclic)."""
    m = len(vertices)
    for j in range(m):
        q = [vertices[(j + t) % m] for t in range(4)]
        if [popcount(x) for x in q] == [k, k + 1, k, k + 1] and all(
                popcount(q[t] ^ q[t + 1]) == 1 for t in range(3)):
            return j
    return None


def find_switched_two_path(vertices: list[int], k: int) -> Optional[int]:
    """Index j with (u, v, w) contiguous, u in level k, both v and w adjacent to u."""
    m = len(vertices)
    for j in range(m):
        u, v, w = vertices[j], vertices[(j + 1) % m], vertices[(j + 2) % m]
        if popcount(u) == k and popcount(v) == popcount(w) == k + 1 and \
                popcount(u ^ v) == 1 and popcount(u ^ w) == 1:
            return j
    return None


def _window(vertices: list[int], j: int, size: int) -> list[int]:
    m = len(vertices)
    return [vertices[(j + t) % m] for t in range(size)]


# ------------------------------------------------------------------- surgery

class _Graph:
    def __init__(self):
        self.adj: dict[int, list[int]] = {}

    def add_cycle(self, cyc: list[int]) -> None:
        m = len(cyc)
        for i, v in enumerate(cyc):
            assert v not in self.adj, "pair cycles overlap"
            self.adj[v] = [cyc[(i + 1) % m], cyc[i - 1]]

    def cut(self, u: int, v: int) -> None:
        self.adj[u].remove(v)
        self.adj[v].remove(u)

    def join(self, u: int, v: int) -> None:
        self.adj.setdefault(u, []).append(v)
        self.adj.setdefault(v, []).append(u)

    def walk(self, start: int) -> list[int]:
        adj = self.adj
        for v, nb in adj.items():
            assert len(nb) == 2, f"vertex {v} has degree {len(nb)} after surgery"
        out = [start]
        prev, cur = start, adj[start][0]
        while cur != start:
            out.append(cur)
            a, b = adj[cur]
            prev, cur = cur, (b if a == prev else a)
        assert len(out) == len(adj), "surgery left more than one cycle"
        return out


def _rotate(vertices: list[int], start: int) -> list[int]:
    i = vertices.index(start)
    return vertices[i:] + vertices[:i]


# --------------------------------------------------------------- saturating

def _sat_pair_vertices(n: int, i: int, cache) -> list[int]:
    if 1 <= i <= (n - 1) // 2:
        return sat_cycle(n, i, cache=cache).vertices()
    return sat_cycle_high(n, i, cache=cache).vertices()


def _sat_chain(n: int, lo: int, hi: int, cache) -> list[int]:
    """Chain of saturating pair cycles i = lo, lo+2, ..., hi-1, glued.

    The bottom pair must have a vertex of level lo+1 it does not visit.
    """
    g = _Graph()
    tops = list(range(lo, hi, 2))
    for t, i in enumerate(tops):
        cyc = _sat_pair_vertices(n, i, cache)
        ai, ai1, bi = a_value(n, i), a_value(n, i + 1), b_value(n, i)
        if t == 0:
            seen = set(cyc)
            found = None
            for j, w in enumerate(cyc):
                if popcount(w) != i:
                    continue
                for p in range(1, n + 1):
                    z = w | (1 << (p - 1))
                    if z != w and z not in seen:
                        found = (w, cyc[(j + 1) % len(cyc)], z)
                        break
                if found:
                    break
            assert found, "bottom pair cycle leaves no vertex out"
            w, v, z = found
            bi1 = b_value(n, i + 1)
            cyc = _relabel(n, cyc, [(w, bi), (v, ai1), (z, bi1)],
                           {_pos(w, v): n, _pos(w, z): n - i - 1})
            g.add_cycle(cyc)
            g.cut(bi, ai1)
            g.join(bi, bi1)
        else:
            j = next(j for j, x in enumerate(cyc) if popcount(x) == i)
            u, v, w, x = _window(cyc, j, 4)
            bi1 = b_value(n, i + 1)
            if t == len(tops) - 1:
                cyc = _relabel(n, cyc, [(u, ai), (v, ai1), (w, bi)],
                               {_pos(u, v): n - i, _pos(v, w): n})
                g.add_cycle(cyc)
                g.cut(ai, ai1)
                g.cut(bi, ai1)
                del g.adj[ai1]
            else:
                cyc = _relabel(n, cyc, [(u, ai), (v, ai1), (w, bi), (x, bi1)],
                               {_pos(u, v): n - i, _pos(v, w): n, _pos(w, x): n - i - 1})
                g.add_cycle(cyc)
                g.cut(ai, ai1)
                g.cut(bi, bi1)
            g.join(a_value(n, i - 1), ai)
            g.join(b_value(n, i - 1), bi)
    return g.walk(a_value(n, lo))


def sat_cycle_range(n: int, k: int, l: int, cache: Optional[ProviderCache] = None) -> Walk:
    """Saturating cycle in Q_{n,[k,l]} for odd l-k on one side of the middle."""
    _check_odd_range(n, k, l, "saturating")
    if l - k == 1:
        if k <= (n - 1) // 2:
            return sat_cycle(n, k, cache=cache)
        return sat_cycle_high(n, k, cache=cache)
    if l <= (n + 1) // 2:
        return Walk.from_vertices(n, _sat_chain(n, k, l, cache))
    low = _sat_chain(n, n - l, n - k, cache)
    return Walk.from_vertices(n, [complement(v, n) for v in low])


def _check_odd_range(n: int, k: int, l: int, what: str) -> None:
    if n < 3 or not 1 <= k < l <= n - 1 or (l - k) % 2 == 0:
        raise ValueError(f"{what} range needs n >= 3, 1 <= k < l <= n-1 and odd l-k, got n={n}, k={k}, l={l}")
    if l - k >= 3 and not (l <= (n + 1) // 2 or k >= n // 2):
        raise ConjectureGated(
            f"[{k},{l}] in Q_{n} straddles the middle; only conditionally covered")


# -------------------------------------------------------------------- tight

@dataclass
class TightPair:
    walk: Walk
    three_path: Optional[int]
    switched_two_path: Optional[int]

    @property
    def vertices(self) -> list[int]:
        return self.walk.vertices()


_TIGHT_MEMO: dict = {}


def _tight_pair_low(n: int, k: int, cache) -> tuple:
    """Tight enumeration of Q_{n,[k,k+1]}, 0 <= k <= floor((n-1)/2); memoized."""
    key = (n, k, id(cache))
    hit = _TIGHT_MEMO.get(key)
    if hit is None:
        hit = _TIGHT_MEMO[key] = _tight_pair_build(n, k, cache)
    return hit


def _tight_pair_build(n: int, k: int, cache) -> tuple:
    if k == 0:
        cur = TrimCursor(n, 0, 1, tight=True)
        steps = list(one_period(cur))
        return tuple([0] + list(replay(0, steps[:-1])))
    if n == 2 * k + 1:
        return tuple(sat_cycle(n, k, cache=cache).vertices())
    m = n - 1
    c0 = list(_tight_pair_low(m, k, cache))
    c1 = list(_tight_pair_low(m, k - 1, cache))
    ak, ak1, bk, bk1 = a_value(m, k), a_value(m, k + 1), b_value(m, k), b_value(m, k + 1)
    bkm = b_value(m, k - 1)
    j = find_three_path(c0, k)
    assert j is not None, f"no 3-path in the pair enumeration ({m},{k})"
    u, v, w, x = _window(c0, j, 4)
    c0 = _relabel(m, c0, [(u, ak), (v, ak1), (w, bk), (x, bk1)],
                  {_pos(u, v): m - k, _pos(v, w): m, _pos(w, x): m - k - 1})
    j = find_switched_two_path(c1, k - 1)
    assert j is not None, f"no switched 2-path in the pair enumeration ({m},{k - 1})"
    u, v, w = _window(c1, j, 3)
    c1 = _relabel(m, c1, [(u, bkm), (v, bk), (w, ak)], {_pos(u, v): m - k, _pos(u, w): m})
    top = 1 << m
    g = _Graph()
    g.add_cycle(c0)
    g.add_cycle([y | top for y in c1])
    g.cut(bk, ak1)
    g.cut(ak | top, bk | top)
    g.join(ak1, ak | top)
    g.join(bk, bk | top)
    return tuple(g.walk(a_value(n, k)))


def _pair_list(n: int, k: int, cache) -> list[int]:
    return list(_tight_pair_low(n, k, cache))


def tight_enum_pair(n: int, k: int, cache: Optional[ProviderCache] = None) -> TightPair:
    """Tight enumeration of Q_{n,[k,k+1]} with its 3-path and switched 2-path located."""
    if n < 3 or not 0 <= k <= n - 1:
        raise ValueError(f"tight pair needs n >= 3 and 0 <= k <= n-1, got n={n}, k={k}")
    if k <= (n - 1) // 2:
        verts = _pair_list(n, k, cache)
    else:
        low = _pair_list(n, n - k - 1, cache)
        verts = [complement(v, n) for v in reversed(low)]
        verts = _rotate(verts, complement(a_value(n, n - k - 1), n))
    three = find_three_path(verts, k) if 1 <= k <= n - 2 else None
    switched = find_switched_two_path(verts, k) if k < n // 2 else None
    return TightPair(Walk.from_vertices(n, verts), three, switched)


def _tight_chain(n: int, lo: int, hi: int, cache) -> list[int]:
    g = _Graph()
    tops = list(range(lo, hi, 2))
    for t, i in enumerate(tops):
        cyc = _pair_list(n, i, cache)
        ai, ai1, bi, bi1 = a_value(n, i), a_value(n, i + 1), b_value(n, i), b_value(n, i + 1)
        if t == 0:
            j = find_switched_two_path(cyc, i)
            assert j is not None, "bottom pair has no switched 2-path"
            u, v, w = _window(cyc, j, 3)
            cyc = _relabel(n, cyc, [(u, bi), (v, bi1), (w, ai1)], {_pos(u, v): n - i - 1, _pos(u, w): n})
            g.add_cycle(cyc)
            g.cut(bi1, ai1)
            continue
        j = find_three_path(cyc, i)
        assert j is not None, "pair has no 3-path"
        u, v, w, x = _window(cyc, j, 4)
        cyc = _relabel(n, cyc, [(u, ai), (v, ai1), (w, bi), (x, bi1)],
                       {_pos(u, v): n - i, _pos(v, w): n, _pos(w, x): n - i - 1})
        g.add_cycle(cyc)
        g.cut(ai, ai1)
        g.cut(bi, bi1)
        if t == len(tops) - 1:
            g.join(ai1, bi1)
        g.join(a_value(n, i - 1), ai)
        g.join(b_value(n, i - 1), bi)
    return g.walk(a_value(n, lo))


def tight_enum_range(n: int, k: int, l: int, cache: Optional[ProviderCache] = None) -> Walk:
    """Tight enumeration of Q_{n,[k,l]} for odd l-k on one side of the middle."""
    _check_odd_range(n, k, l, "tight")
    if l - k == 1:
        return tight_enum_pair(n, k, cache=cache).walk
    if l <= (n + 1) // 2:
        return Walk.from_vertices(n, _tight_chain(n, k, l, cache))
    low = _tight_chain(n, n - l, n - k, cache)
    return Walk.from_vertices(n, [complement(v, n) for v in low])


# --------------------------------------------------------------------- long

@dataclass
class LongCycle:
    walk: Walk
    method: str  # "sat", "reflected", "trim" or "glue"
    missed: int
    total: int

    @property
    def fraction(self):
        from fractions import Fraction
        return Fraction(self.missed, self.total)


def long_cycle_misses(k: int, c: int) -> tuple[int, int]:
    """Predicted misses of the trimmed and of the glued construction."""
    trim = 2 * comb(2 * k, k + c + 1)
    mid = comb(2 * k, k) if c % 2 else comb(2 * k, k + 1)
    glue = 2 * (mid - comb(2 * k, k + c + 1))
    return trim, glue


def long_cycle(k: int, c: int, cache: Optional[ProviderCache] = None, method: str = "auto") -> LongCycle:
    """Long cycle in Q_{2k+1,[k-c,k+1+c]}.

    For 0 < c < k, ``method`` "auto" picks whichever of trimming and gluing
    misses fewer vertices; "trim" or "glue" forces one.
    """
    if k < 1 or not 0 <= c <= k:
        raise ValueError(f"long cycle needs k >= 1 and 0 <= c <= k, got k={k}, c={c}")
    if method not in ("auto", "trim", "glue"):
        raise ValueError(f"unknown method {method!r}")
    n = 2 * k + 1
    total = sum(comb(n, i) for i in range(k - c, k + c + 2))
    if c == 0:
        w = sat_cycle(n, k, cache=cache)
        return LongCycle(w, "sat", total - len(w), total)
    if c == k:
        cur = TrimCursor(n, 0, n, tight=True)
        w = Walk(n, 0, list(one_period(cur)))
        return LongCycle(w, "reflected", 0, total)
    trim, glue = long_cycle_misses(k, c)
    if method == "trim" or (method == "auto" and trim <= glue):
        cur = TrimCursor(n, k - c, k + c + 1)
        w = Walk(n, cur.value, list(one_period(cur)))
        return LongCycle(w, "trim", total - len(w), total)
    w = Walk.from_vertices(n, _sat_chain(n, k - c, k + c + 1, cache))
    return LongCycle(w, "glue", total - len(w), total)
