"""Compiled inner loops for Monte-Carlo sampling.

The kernel replays exactly the construction of ``tree.remy_from_draws`` and
the predicates of ``classify`` on arrays, so a draw block gives the same
counts whichever route consumes it.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def _grow(draws, n, left, right, parent):
    for v in range(2 * n + 1):
        left[v] = -1
        right[v] = -1
        parent[v] = -1
    root = 0
    for i in range(n):
        k = draws[i, 0]
        side = draws[i, 1]
        a = 2 * i + 1
        b = 2 * i + 2
        p = parent[k]
        if p < 0:
            root = a
        elif left[p] == k:
            left[p] = a
        else:
            right[p] = a
        parent[a] = p
        if side == 0:
            left[a] = b
            right[a] = k
        else:
            left[a] = k
            right[a] = b
        parent[k] = a
        parent[b] = a
    return root


@njit(cache=True)
def _diagonals(root, n, left, right, lo, hi, stack, out_a, out_b):
    """In-order traversal assigning leaf spans; writes the n-1 diagonals."""
    # lo/hi: first and last leaf index under each node
    top = 0
    stack[0] = root
    state = np.zeros(2 * n + 1, dtype=np.int8)
    leaf = 0
    count = 0
    while top >= 0:
        v = stack[top]
        if left[v] < 0:
            lo[v] = leaf
            hi[v] = leaf
            leaf += 1
            top -= 1
        elif state[v] == 0:
            state[v] = 1
            top += 1
            stack[top] = left[v]
        elif state[v] == 1:
            state[v] = 2
            top += 1
            stack[top] = right[v]
        else:
            lo[v] = lo[left[v]]
            hi[v] = hi[right[v]]
            if v != root:
                out_a[count] = lo[v]
                out_b[count] = hi[v] + 1
                count += 1
            top -= 1
    return count


@njit(cache=True)
def _one_off(a1, b1, a2, b2, k):
    """True if some diagonal of set 1 crosses exactly one diagonal of set 2."""
    for i in range(k):
        x = a1[i]
        y = b1[i]
        hits = 0
        for j in range(k):
            u = a2[j]
            w = b2[j]
            if (x < u < y < w) or (u < x < w < y):
                hits += 1
                if hits > 1:
                    break
        if hits == 1:
            return True
    return False


@njit(cache=True)
def sample_counts(draws, n):
    """draws: (pairs, 2, n, 2) int64 Rémy draw blocks. Returns (no_common, difficult)."""
    pairs = draws.shape[0]
    m = n + 2
    total = 2 * n + 1
    left = np.empty(total, dtype=np.int64)
    right = np.empty(total, dtype=np.int64)
    parent = np.empty(total, dtype=np.int64)
    lo = np.empty(total, dtype=np.int64)
    hi = np.empty(total, dtype=np.int64)
    stack = np.empty(total + 1, dtype=np.int64)
    sa = np.empty(n, dtype=np.int64)
    sb = np.empty(n, dtype=np.int64)
    ta = np.empty(n, dtype=np.int64)
    tb = np.empty(n, dtype=np.int64)
    in_s = np.zeros((m, m), dtype=np.uint8)
    no_common = 0
    difficult = 0
    for p in range(pairs):
        root = _grow(draws[p, 0], n, left, right, parent)
        k = _diagonals(root, n, left, right, lo, hi, stack, sa, sb)
        root = _grow(draws[p, 1], n, left, right, parent)
        _diagonals(root, n, left, right, lo, hi, stack, ta, tb)
        for i in range(k):
            in_s[sa[i], sb[i]] = 1
        common = False
        for i in range(k):
            if in_s[ta[i], tb[i]]:
                common = True
                break
        for i in range(k):
            in_s[sa[i], sb[i]] = 0
        if common:
            continue
        no_common += 1
        if not (_one_off(ta, tb, sa, sb, k) or _one_off(sa, sb, ta, tb, k)):
            difficult += 1
    return no_common, difficult
