"""Exact counting: Catalan numbers, instance totals and dihedral class counts."""

from __future__ import annotations

import math
from functools import lru_cache


@lru_cache(maxsize=None)
def catalan(n: int) -> int:
    """Return the n-th Catalan number as an exact integer."""
    if n < 0:
        raise ValueError(f"catalan: n must be >= 0, got {n}")
    return math.comb(2 * n, n) // (n + 1)


def count_instances(n: int) -> int:
    """Number of ordered tree pairs of size ``n`` (C_n squared)."""
    if n < 1:
        raise ValueError(f"count_instances: n must be >= 1, got {n}")
    return catalan(n) ** 2


def catalan_asymptotic(n: int) -> float:
    """Leading-order approximation 4^n / (n^1.5 * sqrt(pi)).

    Raises OverflowError once the value leaves double range.
    """
    if n < 1:
        raise ValueError(f"catalan_asymptotic: n must be >= 1, got {n}")
    try:
        value = 4.0 ** n / (n ** 1.5 * math.sqrt(math.pi))
    except OverflowError as exc:
        raise OverflowError(f"catalan_asymptotic({n}) exceeds double range") from exc
    if math.isinf(value):
        raise OverflowError(f"catalan_asymptotic({n}) exceeds double range")
    return value


def dihedral_class_count(n: int) -> int:
    """Number of triangulations of the (n+2)-gon up to rotation and reflection.

    Burnside's lemma over the 2(n+2) group elements; the number of
    triangulations fixed by each element is counted on the enumerated table.
    """
    if n < 1:
        raise ValueError(f"dihedral_class_count: n must be >= 1, got {n}")
    # local import: triangulation depends on this module for catalan()
    from .triangulation import burnside_fixed_counts

    fixed = burnside_fixed_counts(n)
    total = sum(fixed)
    group_order = 2 * (n + 2)
    if total % group_order:
        raise ArithmeticError(f"Burnside sum {total} not divisible by {group_order}")
    return total // group_order
