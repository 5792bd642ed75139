"""Common edges, one-off edges and difficulty of a pair of triangulations."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Union

from .triangulation import Diagonal, Triangulation, check, diagonals_cross, flip
from .tree import BinaryTree, tree_to_triangulation


class PairClass(enum.Enum):
    HAS_COMMON = "HAS_COMMON"
    ONE_OFF = "ONE_OFF"
    DIFFICULT = "DIFFICULT"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class TreePairProblem:
    S: Triangulation
    T: Triangulation

    def __post_init__(self):
        if self.S.m != self.T.m:
            raise ValueError(f"size mismatch: {self.S.size} vs {self.T.size}")

    @classmethod
    def of(cls, s: Union[Triangulation, BinaryTree], t: Union[Triangulation, BinaryTree],
           validate: bool = True) -> "TreePairProblem":
        s = tree_to_triangulation(s) if isinstance(s, BinaryTree) else s
        t = tree_to_triangulation(t) if isinstance(t, BinaryTree) else t
        if validate:
            check(s)
            check(t)
        return cls(s, t)

    @property
    def size(self) -> int:
        return self.S.size

    @property
    def m(self) -> int:
        return self.S.m


@dataclass(frozen=True, order=True)
class OneOffWitness:
    """``target`` lies in triangulation ``side``; flipping ``flipped`` in the
    other triangulation introduces it as a common edge."""

    side: str
    target: Diagonal
    flipped: Diagonal


def common_diagonals(pair: TreePairProblem) -> set[Diagonal]:
    return set(pair.S.diagonals) & set(pair.T.diagonals)


def _witnesses(own: Triangulation, other: Triangulation, side: str) -> list[OneOffWitness]:
    present = set(other.diagonals)
    out = []
    for d in own.diagonals:
        if d in present:
            continue
        crossing = [e for e in other.diagonals if diagonals_cross(d, e)]
        if len(crossing) == 1:
            out.append(OneOffWitness(side, d, crossing[0]))
    return out


def one_off_diagonals(pair: TreePairProblem) -> list[OneOffWitness]:
    """All one-off witnesses, side S first, then by target and flipped diagonal.

    A diagonal absent from the other triangulation is one flip away from it
    exactly when it crosses a single diagonal there.
    """
    return sorted(_witnesses(pair.S, pair.T, "S") + _witnesses(pair.T, pair.S, "T"))


def _has_one_off(pair: TreePairProblem) -> bool:
    for own, other in ((pair.S, pair.T), (pair.T, pair.S)):
        for d in own.diagonals:
            hits = 0
            for e in other.diagonals:
                if diagonals_cross(d, e):
                    hits += 1
                    if hits > 1:
                        break
            if hits == 1:
                return True
    return False


def classify_pair(pair: TreePairProblem) -> PairClass:
    if pair.size < 2:
        raise ValueError("classification is defined for size >= 2 only")
    if common_diagonals(pair):
        return PairClass.HAS_COMMON
    if _has_one_off(pair):
        return PairClass.ONE_OFF
    return PairClass.DIFFICULT


def _restrict(tri: Triangulation, vertices: list[int], cut: Diagonal) -> Triangulation:
    relabel = {v: i for i, v in enumerate(vertices)}
    diags = tuple(
        (relabel[a], relabel[b])
        for a, b in tri.diagonals
        if (a, b) != cut and a in relabel and b in relabel
    )
    return Triangulation(len(vertices), diags)


def split_common(pair: TreePairProblem, d: Diagonal) -> tuple[TreePairProblem, TreePairProblem]:
    """Cut both triangulations along the shared diagonal ``d``.

    Returns the sub-pair on vertices a..b first, then the one on the rest of
    the polygon; each side is relabelled order-preservingly onto 0..k.
    """
    a, b = min(d), max(d)
    if (a, b) not in common_diagonals(pair):
        raise ValueError(f"{d} is not a common diagonal")
    inner = list(range(a, b + 1))
    outer = list(range(0, a + 1)) + list(range(b, pair.m))
    return (
        TreePairProblem(_restrict(pair.S, inner, (a, b)), _restrict(pair.T, inner, (a, b))),
        TreePairProblem(_restrict(pair.S, outer, (a, b)), _restrict(pair.T, outer, (a, b))),
    )


def apply_one_off(pair: TreePairProblem, w: OneOffWitness) -> TreePairProblem:
    if w.side == "S":
        return TreePairProblem(pair.S, flip(pair.T, w.flipped)[0])
    return TreePairProblem(flip(pair.S, w.flipped)[0], pair.T)


def reduce_fully(pair: TreePairProblem) -> tuple[list[TreePairProblem], int]:
    """Split on common diagonals and follow one-off moves until only
    difficult parts remain.

    Policy: split on the least common diagonal first; otherwise take the
    first witness of ``one_off_diagonals``. Parts are processed depth-first,
    inner side before outer side, and parts of size <= 1 are dropped.
    """
    parts: list[TreePairProblem] = []
    moves = 0
    stack = [pair]
    while stack:
        p = stack.pop()
        if p.size <= 1:
            continue
        common = common_diagonals(p)
        if common:
            inner, outer = split_common(p, min(common))
            stack.extend((outer, inner))
            continue
        witnesses = one_off_diagonals(p)
        if witnesses:
            stack.append(apply_one_off(p, witnesses[0]))
            moves += 1
            continue
        parts.append(p)
    return parts, moves
