"""Triangulations of a convex polygon stored as sorted diagonal sets.

Vertices of the m-gon are labelled 0..m-1 clockwise. The side (0, m-1) is the
marked root side; it is a polygon side, so it never appears as a diagonal.

Besides the object-level operations this module builds the packed tables used
by the census. Every non-side chord ``(a, b)`` of the m-gon gets an index in
lexicographic order, and a triangulation is a bitmask over that universe with
chord ``i`` stored at bit ``nchords - 1 - i``. With that convention a larger
mask means a lexicographically smaller sorted diagonal sequence, so the
canonical (lex-least) orbit member is simply the largest mask.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np



Diagonal = tuple[int, int]


class InvalidTriangulation(ValueError):
    """Raised when a diagonal set does not triangulate its polygon."""

    def __init__(self, errors: list[str]):
        self.errors = errors
        super().__init__("; ".join(errors))


@dataclass(frozen=True)
class Triangulation:
    m: int
    diagonals: tuple[Diagonal, ...] = ()

    def __post_init__(self):
        norm = tuple(sorted((min(a, b), max(a, b)) for a, b in self.diagonals))
        object.__setattr__(self, "diagonals", norm)

    @property
    def size(self) -> int:
        return self.m - 2

    def __str__(self) -> str:
        return f"{self.m}:" + ",".join(f"({a},{b})" for a, b in self.diagonals)

    @property
    def mask(self) -> int:
        index = chord_index(self.m)
        nc = len(index)
        out = 0
        for d in self.diagonals:
            out |= 1 << (nc - 1 - index[d])
        return out

    @classmethod
    def from_mask(cls, m: int, mask: int) -> "Triangulation":
        ch = chords(m)
        nc = len(ch)
        return cls(m, tuple(ch[i] for i in range(nc) if mask >> (nc - 1 - i) & 1))


_TRI_RE = re.compile(r"^\s*(\d+)\s*:(.*)$", re.S)
_PAIR_RE = re.compile(r"\(\s*(\d+)\s*,\s*(\d+)\s*\)")


def parse_triangulation(text: str) -> Triangulation:
    """Parse ``"m:(a,b),(c,d),..."`` and validate the result."""
    match = _TRI_RE.match(text)
    if not match:
        raise ValueError(f"not a triangulation string: {text!r}")
    m = int(match.group(1))
    body = match.group(2).strip()
    diags = [(int(a), int(b)) for a, b in _PAIR_RE.findall(body)]
    leftover = _PAIR_RE.sub("", body).replace(",", "").strip()
    if leftover:
        raise ValueError(f"unparsed text in triangulation string: {leftover!r}")
    if len(set((min(a, b), max(a, b)) for a, b in diags)) != len(diags):
        raise InvalidTriangulation(["duplicate diagonal"])
    tri = Triangulation(m, tuple(diags))
    check(tri)
    return tri


@lru_cache(maxsize=None)
def chords(m: int) -> tuple[Diagonal, ...]:
    """All diagonals of the m-gon in lexicographic order."""
    return tuple(
        (a, b)
        for a in range(m)
        for b in range(a + 2, m)
        if not (a == 0 and b == m - 1)
    )


@lru_cache(maxsize=None)
def chord_index(m: int) -> dict[Diagonal, int]:
    return {d: i for i, d in enumerate(chords(m))}


def is_diagonal(d: Diagonal, m: int) -> bool:
    a, b = d
    return 0 <= a < b < m and b - a >= 2 and not (a == 0 and b == m - 1)


def diagonals_cross(d1: Diagonal, d2: Diagonal) -> bool:
    """Strict interior crossing; a shared endpoint does not count."""
    a1, b1 = d1
    a2, b2 = d2
    return a1 < a2 < b1 < b2 or a2 < a1 < b2 < b1


def validate(tri: Triangulation) -> list[str]:
    """Return every violated invariant; an empty list means the input is valid."""
    errors = []
    m = tri.m
    if m < 3:
        return [f"polygon needs at least 3 vertices, got {m}"]
    diags = tri.diagonals
    for i, d in enumerate(diags):
        if not all(0 <= v < m for v in d):
            errors.append(f"diagonal {d} has a vertex out of range 0..{m - 1}")
        elif not is_diagonal(d, m):
            errors.append(f"{d} is a polygon side, not a diagonal")
        if i and diags[i - 1] == d:
            errors.append(f"duplicate diagonal {d}")
    if len(diags) != m - 3:
        errors.append(f"wrong diagonal count ({len(diags)} != {m - 3})")
    for i in range(len(diags)):
        for j in range(i + 1, len(diags)):
            if diagonals_cross(diags[i], diags[j]):
                errors.append(f"diagonal {i} {diags[i]} crosses diagonal {j} {diags[j]}")
    return errors


def check(tri: Triangulation) -> Triangulation:
    errors = validate(tri)
    if errors:
        raise InvalidTriangulation(errors)
    return tri


def _has_edge(edges: set[Diagonal], m: int, u: int, v: int) -> bool:
    a, b = (u, v) if u < v else (v, u)
    return b - a == 1 or (a == 0 and b == m - 1) or (a, b) in edges


def flip(tri: Triangulation, d: Diagonal) -> tuple[Triangulation, Diagonal]:
    """Replace ``d`` by the opposite diagonal of its quadrilateral."""
    a, b = min(d), max(d)
    m = tri.m
    if not is_diagonal((a, b), m):
        raise ValueError(f"{d} is not a diagonal of the {m}-gon")
    edges = set(tri.diagonals)
    if (a, b) not in edges:
        raise ValueError(f"{d} is not present in {tri}")
    apexes = [p for p in range(m) if p != a and p != b
              and _has_edge(edges, m, a, p) and _has_edge(edges, m, b, p)]
    if len(apexes) != 2:
        raise InvalidTriangulation([f"diagonal {d} borders {len(apexes)} triangles"])
    p, q = apexes
    new = (min(p, q), max(p, q))
    edges.discard((a, b))
    edges.add(new)
    return Triangulation(m, tuple(edges)), new


@dataclass(frozen=True)
class DihedralElement:
    """Polygon symmetry: optional reflection v -> m-1-v, then rotation by ``shift``."""

    shift: int = 0
    reflected: bool = False

    def apply(self, v: int, m: int) -> int:
        if self.reflected:
            v = m - 1 - v
        return (v + self.shift) % m


def dihedral_group(m: int) -> list[DihedralElement]:
    return [DihedralElement(s, r) for r in (False, True) for s in range(m)]


def apply_dihedral(tri: Triangulation, g: DihedralElement) -> Triangulation:
    m = tri.m
    return Triangulation(m, tuple((g.apply(a, m), g.apply(b, m)) for a, b in tri.diagonals))


def canonical_form(tri: Triangulation) -> tuple[Triangulation, int]:
    """Lexicographically least image over the dihedral group, and the orbit size."""
    group = dihedral_group(tri.m)
    images = [apply_dihedral(tri, g).diagonals for g in group]
    stabilizer = sum(1 for im in images if im == tri.diagonals)
    return Triangulation(tri.m, min(images)), len(group) // stabilizer


# --- enumeration and packed tables -------------------------------------------------


@lru_cache(maxsize=None)
def _sub_masks(length: int, m: int, offset: int) -> tuple[int, ...]:
    """Masks of the interior diagonals of the sub-polygon offset..offset+length.

    Order matches ``tree.enumerate_trees``: apex (left size) ascending, then the
    left part in its own order, right part varying fastest.
    """
    if length < 2:
        return (0,)
    index = chord_index(m)
    nc = len(index)
    i, j = offset, offset + length
    out = []
    for k in range(i + 1, j):
        bits = 0
        if k - i >= 2:
            bits |= 1 << (nc - 1 - index[(i, k)])
        if j - k >= 2:
            bits |= 1 << (nc - 1 - index[(k, j)])
        for left in _sub_masks(k - i, m, i):
            for right in _sub_masks(j - k, m, k):
                out.append(left | right | bits)
    return tuple(out)


@lru_cache(maxsize=4)
def triangulation_masks(n: int) -> tuple[int, ...]:
    """Masks of all C_n triangulations of the (n+2)-gon, in enumeration order."""
    if n < 1:
        raise ValueError(f"size must be >= 1, got {n}")
    m = n + 2
    masks = _sub_masks(m - 1, m, 0)
    _sub_masks.cache_clear()
    return masks


def enumerate_triangulations(n: int) -> Iterator[Triangulation]:
    """Yield every triangulation of the (n+2)-gon once.

    The order is the image under duality of ``tree.enumerate_trees(n)``.
    """
    m = n + 2
    for mask in triangulation_masks(n):
        yield Triangulation.from_mask(m, mask)


def n_words(m: int) -> int:
    return max(1, -(-len(chords(m)) // 64))


def pack_masks(masks, m: int) -> np.ndarray:
    """Python-int masks -> (len, W) uint64 array, most significant word first."""
    w = n_words(m)
    pad = 64 * w - len(chords(m))
    full = (1 << 64) - 1
    out = np.empty((len(masks), w), dtype=np.uint64)
    for k in range(w):
        sh = 64 * (w - 1 - k)
        out[:, k] = np.fromiter(((x << pad) >> sh & full for x in masks),
                                dtype=np.uint64, count=len(masks))
    return out


def _unpack_bool(words: np.ndarray, m: int) -> np.ndarray:
    """(N, W) packed words -> (N, nchords) bool, column i = chord i."""
    nc = len(chords(m))
    as_bytes = words.astype(">u8").view(np.uint8).reshape(len(words), -1)
    return np.unpackbits(as_bytes, axis=1, bitorder="big")[:, :nc].astype(bool)


def _pack_bool(bits: np.ndarray, m: int) -> np.ndarray:
    w = n_words(m)
    padded = np.zeros((bits.shape[0], 64 * w), dtype=bool)
    padded[:, : bits.shape[1]] = bits
    raw = np.packbits(padded, axis=1, bitorder="big")
    return raw.view(">u8").astype(np.uint64).reshape(bits.shape[0], w)


def chord_permutation(m: int, g: DihedralElement) -> np.ndarray:
    """perm[i] = index of the image of chord i under g."""
    index = chord_index(m)
    out = np.empty(len(index), dtype=np.intp)
    for (a, b), i in index.items():
        u, v = g.apply(a, m), g.apply(b, m)
        out[i] = index[(min(u, v), max(u, v))]
    return out


def _dihedral_images(bits: np.ndarray, m: int):
    """Yield packed words of every row's image, one array per group element."""
    for g in dihedral_group(m):
        perm = chord_permutation(m, g)
        inverse = np.empty_like(perm)
        inverse[perm] = np.arange(len(perm))
        yield _pack_bool(bits[:, inverse], m)


@lru_cache(maxsize=4)
def packed_table(n: int) -> np.ndarray:
    """All triangulations of the (n+2)-gon as packed words, enumeration order."""
    return pack_masks(triangulation_masks(n), n + 2)


@lru_cache(maxsize=4)
def class_table(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Indices (into ``packed_table(n)``) of orbit representatives and orbit sizes.

    A row is a representative when no group image has a larger packed key,
    i.e. when it already is the lexicographically least form of its orbit.
    """
    m = n + 2
    table = packed_table(n)
    bits = _unpack_bool(table, m)
    rows = len(table)
    is_rep = np.ones(rows, dtype=bool)
    stabilizer = np.zeros(rows, dtype=np.int64)
    for image in _dihedral_images(bits, m):
        greater = np.zeros(rows, dtype=bool)
        decided = np.zeros(rows, dtype=bool)
        for k in range(table.shape[1]):
            gt = image[:, k] > table[:, k]
            lt = image[:, k] < table[:, k]
            greater |= ~decided & gt
            decided |= gt | lt
        is_rep &= ~greater
        stabilizer += ~decided
    reps = np.flatnonzero(is_rep)
    orbit = (2 * m) // stabilizer[reps]
    return reps, orbit


def burnside_fixed_counts(n: int) -> list[int]:
    """Number of triangulations fixed by each element of ``dihedral_group(n+2)``."""
    m = n + 2
    table = packed_table(n)
    bits = _unpack_bool(table, m)
    return [int(np.all(image == table, axis=1).sum()) for image in _dihedral_images(bits, m)]


def enumerate_class_representatives(n: int) -> Iterator[tuple[Triangulation, int]]:
    """One canonical triangulation per dihedral orbit, with its orbit size."""
    m = n + 2
    masks = triangulation_masks(n)
    reps, orbit = class_table(n)
    for r, w in zip(reps.tolist(), orbit.tolist()):
        yield Triangulation.from_mask(m, masks[r]), w


@lru_cache(maxsize=8)
def crossing_words(m: int) -> np.ndarray:
    """(nchords, W) packed masks: row c holds every chord crossing chord c."""
    ch = chords(m)
    nc = len(ch)
    masks = []
    for c in ch:
        x = 0
        for i, e in enumerate(ch):
            if diagonals_cross(c, e):
                x |= 1 << (nc - 1 - i)
        masks.append(x)
    return pack_masks(masks, m)


def one_off_words(table: np.ndarray, m: int) -> np.ndarray:
    """For each packed triangulation, the chords crossing exactly one of its diagonals.

    A chord outside the triangulation with exactly one crossing is reachable
    by a single flip, so ``T & one_off_words(S)`` is the set of one-off edges
    of T relative to S.
    """
    cross = crossing_words(m)
    nc = len(chords(m))
    out_bits = np.zeros((len(table), nc), dtype=bool)
    for c in range(nc):
        count = np.zeros(len(table), dtype=np.uint8)
        for k in range(table.shape[1]):
            count += np.bitwise_count(table[:, k] & cross[c, k])
        out_bits[:, c] = count == 1
    return _pack_bool(out_bits, m)

