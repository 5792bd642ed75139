import math
from fractions import Fraction

import pytest

from rotkit.combinatorics import catalan, catalan_asymptotic, count_instances, dihedral_class_count
from rotkit.triangulation import canonical_form, enumerate_triangulations

from conftest import TABLE1


@pytest.mark.parametrize("n,expected", [(0, 1), (1, 1), (3, 5), (6, 132), (14, 2674440)])
def test_catalan_values(n, expected):
    assert catalan(n) == expected


def test_catalan_matches_factorial_formula():
    for n in range(41):
        assert catalan(n) == math.factorial(2 * n) // (math.factorial(n) * math.factorial(n + 1))


def test_catalan_recurrence():
    for n in range(60):
        assert catalan(n + 1) * (n + 2) == catalan(n) * (4 * n + 2)


def test_catalan_negative():
    with pytest.raises(ValueError):
        catalan(-1)


def test_catalan_14_is_sqrt_of_table_total():
    assert catalan(14) ** 2 == TABLE1[14][2]


@pytest.mark.parametrize("n", sorted(TABLE1))
def test_count_instances_matches_table_totals(n):
    assert count_instances(n) == TABLE1[n][2] == catalan(n) ** 2


def test_catalan_asymptotic_values():
    assert catalan_asymptotic(1) == pytest.approx(4 / math.sqrt(math.pi))
    assert catalan_asymptotic(1) == pytest.approx(2.2568, abs=1e-4)
    assert catalan_asymptotic(10) == pytest.approx(18708.0, abs=0.5)
    assert catalan(10) / catalan_asymptotic(10) == pytest.approx(0.898, abs=5e-4)


def test_catalan_ratio_increases_towards_one():
    ratios = [catalan(n) / catalan_asymptotic(n) for n in range(10, 201)]
    assert all(a < b for a, b in zip(ratios, ratios[1:]))
    assert ratios[-1] < 1


def test_catalan_asymptotic_overflow_is_reported():
    with pytest.raises(OverflowError):
        catalan_asymptotic(5000)


def _brute_classes(n):
    return len({canonical_form(t)[0] for t in enumerate_triangulations(n)})


@pytest.mark.parametrize("n,expected", [(1, 1), (2, 1), (3, 1), (4, 3)])
def test_dihedral_class_count_small(n, expected):
    assert dihedral_class_count(n) == expected == _brute_classes(n)


@pytest.mark.parametrize("n", range(5, 9))
def test_dihedral_class_count_against_canonical_bucketing(n):
    assert dihedral_class_count(n) == _brute_classes(n)


def test_dihedral_class_count_bounds():
    for n in range(1, 12):
        d = dihedral_class_count(n)
        assert d <= catalan(n) <= d * (2 * n + 4)


def test_closed_form_discrepancy_is_only_recorded():
    # the displayed closed form is not used; at n = 4 it gives 11/2, not an integer
    def c(x):
        return catalan(int(x)) if Fraction(x).denominator == 1 else 0

    n = 4
    k = n // 2 + 1
    closed = (Fraction(catalan(n), 2 * n) + Fraction(c(Fraction(n, 2) + 1), 4)
              + Fraction(catalan(k), 2) + Fraction(c(Fraction(n, 3) + 1), 3))
    assert closed == Fraction(11, 2)
    assert dihedral_class_count(4) == 3
