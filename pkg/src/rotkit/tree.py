"""Rooted binary (0-2) trees.

A tree is stored as nested tuples: a leaf is ``None`` and an internal node is
the pair ``(left, right)``. Internal nodes are addressed by in-order rank
(0-based), which is also the index of the leaf immediately to their left, so
addresses survive rotations unchanged.

Text form: ``tree := "L" | "(" tree tree ")"``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional, Union

import numpy as np

from .triangulation import Triangulation, check

Node = Optional[tuple]


class TreeSyntaxError(ValueError):
    def __init__(self, message: str, offset: int):
        self.offset = offset
        super().__init__(f"{message} at offset {offset}")


@dataclass(frozen=True)
class BinaryTree:
    root: Node
    size: int

    @classmethod
    def from_node(cls, root: Node) -> "BinaryTree":
        return cls(root, _count(root))

    def __str__(self) -> str:
        return render_tree(self)

    @property
    def n_leaves(self) -> int:
        return self.size + 1


def _count(node: Node) -> int:
    total = 0
    stack = [node]
    while stack:
        x = stack.pop()
        if x is not None:
            total += 1
            stack.extend(x)
    return total


def parse_tree(text: str) -> BinaryTree:
    if not text.strip():
        raise TreeSyntaxError("empty input", 0)
    # explicit stack so deep combs do not hit the recursion limit
    frames: list[list] = []
    result: Node = None
    done = False
    pos = 0
    while pos < len(text):
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if done:
            raise TreeSyntaxError(f"unexpected {ch!r} after complete tree", pos)
        if ch == "(":
            frames.append([])
        elif ch == "L":
            if not frames:
                result, done = None, True
            else:
                frames[-1].append(None)
        elif ch == ")":
            if not frames:
                raise TreeSyntaxError("unbalanced ')'", pos)
            kids = frames.pop()
            if len(kids) != 2:
                raise TreeSyntaxError(f"internal node needs 2 children, got {len(kids)}", pos)
            node = (kids[0], kids[1])
            if frames:
                frames[-1].append(node)
            else:
                result, done = node, True
        else:
            raise TreeSyntaxError(f"unexpected character {ch!r}", pos)
        if frames and len(frames[-1]) > 2:
            raise TreeSyntaxError("internal node has more than 2 children", pos)
        pos += 1
    if not done:
        raise TreeSyntaxError("unexpected end of input (unbalanced '(')", len(text))
    return BinaryTree.from_node(result)


def render_tree(tree: Union[BinaryTree, Node]) -> str:
    node = tree.root if isinstance(tree, BinaryTree) else tree
    out = []
    stack: list = [node]
    while stack:
        x = stack.pop()
        if isinstance(x, str):
            out.append(x)
        elif x is None:
            out.append("L")
        else:
            out.append("(")
            stack.extend((")", x[1], x[0]))
    return "".join(out)


def _rotate(tree: BinaryTree, at: int, left: bool) -> BinaryTree:
    if not 0 <= at < tree.size:
        raise IndexError(f"node address {at} out of range for size {tree.size}")

    def walk(node: Node, offset: int) -> Node:
        lsize = _count(node[0])
        rank = offset + lsize
        if at < rank:
            return (walk(node[0], offset), node[1])
        if at > rank:
            return (node[0], walk(node[1], rank + 1))
        a, b = node
        if left:
            if b is None:
                raise ValueError(f"left rotation at {at}: right child is a leaf")
            return ((a, b[0]), b[1])
        if a is None:
            raise ValueError(f"right rotation at {at}: left child is a leaf")
        return (a[0], (a[1], b))

    return BinaryTree(walk(tree.root, 0), tree.size)


def rotate_left(tree: BinaryTree, at: int) -> BinaryTree:
    """Demote node ``at`` to the left child of its (internal) right child."""
    return _rotate(tree, at, left=True)


def rotate_right(tree: BinaryTree, at: int) -> BinaryTree:
    """Inverse of ``rotate_left``: promote the internal left child of node ``at``."""
    return _rotate(tree, at, left=False)


# --- random generation ---------------------------------------------------------


def remy_bounds(size: int) -> np.ndarray:
    """Exclusive upper bounds of the draws consumed by one Rémy tree.

    Row i is ``(2i+1, 2)``: first the node choice among the 2i+1 existing
    nodes, then the side of the new leaf.
    """
    bounds = np.empty((size, 2), dtype=np.int64)
    bounds[:, 0] = 2 * np.arange(size) + 1
    bounds[:, 1] = 2
    return bounds


def remy_from_draws(draws) -> BinaryTree:
    """Grow a tree from a ``(size, 2)`` block of draws (see ``remy_bounds``).

    Nodes are labelled by creation time: the initial leaf is 0, and step i
    adds internal node 2i+1 and leaf 2i+2. Step i splices node 2i+1 above the
    chosen node; side 0 puts the new leaf on the left, side 1 on the right.
    """
    size = len(draws)
    total = 2 * size + 1
    left = [-1] * total
    right = [-1] * total
    parent = [-1] * total
    root = 0
    for i in range(size):
        k, side = int(draws[i][0]), int(draws[i][1])
        a, b = 2 * i + 1, 2 * i + 2
        p = parent[k]
        if p < 0:
            root = a
        elif left[p] == k:
            left[p] = a
        else:
            right[p] = a
        parent[a] = p
        if side == 0:
            left[a], right[a] = b, k
        else:
            left[a], right[a] = k, b
        parent[k] = parent[b] = a
    built: dict[int, Node] = {}
    stack = [(root, False)]
    while stack:
        v, expanded = stack.pop()
        if left[v] < 0:
            built[v] = None
        elif expanded:
            built[v] = (built.pop(left[v]), built.pop(right[v]))
        else:
            stack.extend(((v, True), (right[v], False), (left[v], False)))
    return BinaryTree(built[root], size)


def remy_sample(size: int, rng: Union[np.random.Generator, int, None] = None) -> BinaryTree:
    """Uniformly random tree of the given size by Rémy's growth procedure."""
    if size < 1:
        raise ValueError(f"remy_sample: size must be >= 1, got {size}")
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)
    return remy_from_draws(rng.integers(0, remy_bounds(size), dtype=np.int64))


# --- enumeration -----------------------------------------------------------------


@lru_cache(maxsize=None)
def _all_nodes(n: int) -> tuple:
    if n == 0:
        return (None,)
    return tuple(
        (left, right)
        for k in range(n)
        for left in _all_nodes(k)
        for right in _all_nodes(n - 1 - k)
    )


def enumerate_trees(size: int) -> Iterator[BinaryTree]:
    """Every tree of the given size once.

    Order: left subtree size ascending; within it, left subtrees in their own
    order with the right subtree varying fastest.
    """
    if size < 1:
        raise ValueError(f"enumerate_trees: size must be >= 1, got {size}")
    for node in _all_nodes(size):
        yield BinaryTree(node, size)


# --- duality with triangulations -------------------------------------------------


def tree_to_triangulation(tree: BinaryTree) -> Triangulation:
    """Leaf i is side (i, i+1), the root is side (0, n+1); a non-root internal
    node spanning leaves i..j becomes diagonal (i, j+1)."""
    diags = []

    def span(node: Node, first: int, is_root: bool) -> int:
        if node is None:
            return first
        mid = span(node[0], first, False)
        last = span(node[1], mid + 1, False)
        if not is_root:
            diags.append((first, last + 1))
        return last

    span(tree.root, 0, True)
    return Triangulation(tree.size + 2, tuple(diags))


def triangulation_to_tree(tri: Triangulation) -> BinaryTree:
    check(tri)
    m = tri.m
    edges = set(tri.diagonals)
    nbrs: dict[int, set[int]] = {v: set() for v in range(m)}
    for a, b in edges:
        nbrs[a].add(b)
        nbrs[b].add(a)

    def has(u: int, v: int) -> bool:
        return v - u == 1 or v in nbrs[u]

    def build(i: int, j: int) -> Node:
        if j - i == 1:
            return None
        # the apex of the triangle on side (i, j)
        for k in range(i + 1, j):
            if has(i, k) and has(k, j):
                return (build(i, k), build(k, j))
        raise AssertionError("validated triangulation has no apex")

    return BinaryTree(build(0, m - 1), m - 2)
