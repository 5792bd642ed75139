"""Exact flip distance by bidirectional breadth-first search."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .classify import TreePairProblem
from .triangulation import Triangulation, chord_index, chords, flip

DEFAULT_SIZE_CAP = 13


@dataclass(frozen=True)
class DistanceResult:
    distance: int
    explored: int


def flip_neighbors(tri: Triangulation) -> list[Triangulation]:
    return [flip(tri, d)[0] for d in tri.diagonals]


@lru_cache(maxsize=None)
def _bit_tables(m: int):
    ch = chords(m)
    nc = len(ch)
    bit_of = {d: 1 << (nc - 1 - i) for d, i in chord_index(m).items()}
    # chord at each bit position (position = nc - 1 - index)
    at_bit = [None] * nc
    for i, d in enumerate(ch):
        at_bit[nc - 1 - i] = d
    sides = [0] * m
    for v in range(m):
        sides[v] = (1 << ((v + 1) % m)) | (1 << ((v - 1) % m))
    return bit_of, at_bit, sides


def _mask_neighbors(mask: int, m: int) -> list[int]:
    bit_of, at_bit, sides = _bit_tables(m)
    adj = list(sides)
    diags = []
    x = mask
    while x:
        low = x & -x
        a, b = at_bit[low.bit_length() - 1]
        adj[a] |= 1 << b
        adj[b] |= 1 << a
        diags.append((low, a, b))
        x ^= low
    out = []
    for low, a, b in diags:
        # the two common neighbours of a and b are the quadrilateral apexes
        apex = adj[a] & adj[b]
        p = (apex & -apex).bit_length() - 1
        q = apex.bit_length() - 1
        out.append(mask ^ low ^ bit_of[(p, q)])
    return out


def exact_distance(pair: TreePairProblem, size_cap: int = DEFAULT_SIZE_CAP) -> DistanceResult:
    """Minimum number of flips between ``pair.S`` and ``pair.T``.

    Memory grows with C_n; sizes above ``size_cap`` are refused unless the cap
    is raised explicitly.
    """
    n = pair.size
    if n > size_cap:
        raise ValueError(
            f"size {n} exceeds the exact-distance cap {size_cap}; raise size_cap to override"
        )
    m = pair.m
    src, dst = pair.S.mask, pair.T.mask
    if src == dst:
        return DistanceResult(0, 1)
    seen = ({src: 0}, {dst: 0})
    frontier = ([src], [dst])
    while frontier[0] and frontier[1]:
        side = 0 if len(frontier[0]) <= len(frontier[1]) else 1
        mine, other = seen[side], seen[1 - side]
        best = None
        nxt = []
        for u in frontier[side]:
            du = mine[u] + 1
            for v in _mask_neighbors(u, m):
                if v in other:
                    total = du + other[v]
                    if best is None or total < best:
                        best = total
                if v not in mine:
                    mine[v] = du
                    nxt.append(v)
        if best is not None:
            return DistanceResult(best, len(seen[0]) + len(seen[1]))
        frontier = (nxt, frontier[1]) if side == 0 else (frontier[0], nxt)
    raise AssertionError("flip graph is connected; search cannot exhaust")
