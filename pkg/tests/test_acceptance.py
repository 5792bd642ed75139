"""Exit criteria for the build; each test reports one PASS/FAIL summary line."""

import math
import time

import numpy as np
import pytest

from rotkit.census import exact_census, exact_census_naive, sample_census
from rotkit.classify import PairClass, TreePairProblem, classify_pair, reduce_fully
from rotkit.cli import run
from rotkit.combinatorics import catalan, dihedral_class_count
from rotkit.distance import exact_distance
from rotkit.stats import FractionPoint, fit_exponential, fit_power_cube
from rotkit.triangulation import (
    class_table,
    enumerate_triangulations,
    flip,
    parse_triangulation,
    validate,
)
from rotkit.tree import (
    enumerate_trees,
    remy_sample,
    rotate_left,
    rotate_right,
    tree_to_triangulation,
    triangulation_to_tree,
)

from conftest import SNOWFLAKE_S, SNOWFLAKE_T, TABLE1

SNOWFLAKE = TreePairProblem.of(parse_triangulation(SNOWFLAKE_S), parse_triangulation(SNOWFLAKE_T))


def rand_tri(n, rng):
    return tree_to_triangulation(remy_sample(n, rng))


@pytest.mark.criterion("1  gold census: sizes 3..10 match the reference counts via the CLI, within 10 minutes")
def test_c1_gold_census(capsys):
    start = time.perf_counter()
    for n in range(3, 11):
        assert run(["census", "--size", str(n), "--threads", "4"]) == 0
        line = capsys.readouterr().out.splitlines()[-1]
        assert line == ",".join(map(str, (n, *TABLE1[n])))
    assert time.perf_counter() - start <= 600


@pytest.mark.slow
@pytest.mark.criterion("1x extended census: sizes 11 and 12 match the reference counts")
def test_c1_extended_census():
    for n in (11, 12):
        row = exact_census(n, workers=4)
        assert (row.no_common, row.difficult, row.total) == TABLE1[n]


@pytest.mark.criterion("2  oracle equivalence: dihedral census == naive census for sizes 3..7")
def test_c2_oracle_equivalence():
    for n in range(3, 8):
        assert exact_census(n) == exact_census_naive(n)


@pytest.mark.criterion("3  reduction identity: exhaustive sizes <= 6, 10^4 random pairs at sizes 7-8")
def test_c3_reduction_identity():
    violations = 0

    def check(pair):
        parts, moves = reduce_fully(pair)
        lhs = exact_distance(pair).distance
        rhs = moves + sum(exact_distance(p).distance for p in parts)
        return lhs != rhs

    for n in range(1, 7):
        tris = list(enumerate_triangulations(n))
        violations += sum(check(TreePairProblem(s, t)) for s in tris for t in tris)
    rng = np.random.default_rng(7_8)
    for i in range(10_000):
        n = 7 + i % 2
        violations += check(TreePairProblem(rand_tri(n, rng), rand_tri(n, rng)))
    assert violations == 0


@pytest.mark.criterion("4  difficult witness: exactly 8 difficult ordered pairs at size 4, snowflake among them")
def test_c4_difficult_count():
    tris = list(enumerate_triangulations(4))
    hard = [(s, t) for s in tris for t in tris
            if classify_pair(TreePairProblem(s, t)) is PairClass.DIFFICULT]
    assert len(hard) == 8
    assert (SNOWFLAKE.S, SNOWFLAKE.T) in hard


def _fractions(col, sizes):
    return [FractionPoint(n, TABLE1[n][col] / TABLE1[n][2], TABLE1[n][col]) for n in sizes]


@pytest.mark.criterion("5  decay fits: no-common r in [0.905,0.925], difficult r in [0.75,0.79]; 13->14 ratios")
def test_c5_decay_fits():
    assert 0.905 <= fit_exponential(_fractions(0, range(8, 15))).ratio <= 0.925
    assert 0.75 <= fit_exponential(_fractions(1, range(8, 15))).ratio <= 0.79
    frac = {n: [TABLE1[n][c] / TABLE1[n][2] for c in (0, 1)] for n in (13, 14)}
    assert abs(frac[14][0] / frac[13][0] - 0.9167) <= 5e-4
    assert abs(frac[14][1] / frac[13][1] - 0.7695) <= 5e-4


@pytest.mark.criterion("6  growth fit: no-common counts n=10..14 give A in [14.7, 15.3]")
def test_c6_growth_fit():
    fit = fit_power_cube([FractionPoint(n, count=TABLE1[n][0]) for n in range(10, 15)])
    assert 14.7 <= fit.ratio <= 15.3


@pytest.mark.criterion("7  sampling: size 8 within 3 SE of exact; size 17 within model bands; deterministic")
def test_c7_sampling():
    iters = 10**6
    row = sample_census(8, iters, seed=8)
    exact = exact_census(8)
    for hits, count in ((row.no_common_hits, exact.no_common), (row.difficult_hits, exact.difficult)):
        p = count / exact.total
        assert abs(hits / iters - p) <= 3 * math.sqrt(p * (1 - p) / iters)

    iters = 2 * 10**6
    row = sample_census(17, iters, seed=17)
    nc_model = 0.4644 * 0.91641 ** 17
    hard_model = 0.09407 * 0.7705 ** 17
    assert abs(row.no_common_fraction / nc_model - 1) <= 0.10
    assert abs(row.difficult_fraction / hard_model - 1) <= 0.35

    assert sample_census(17, 100_000, seed=1, workers=4) == sample_census(17, 100_000, seed=1, workers=4)


@pytest.mark.criterion("8  sampler uniformity: 1.4e6 size-4 draws, each shape within 5% of 1/14")
def test_c8_remy_uniformity():
    draws = 1_400_000
    rng = np.random.default_rng(4)
    counts = {}
    for _ in range(draws):
        key = remy_sample(4, rng).root
        counts[key] = counts.get(key, 0) + 1
    assert len(counts) == 14
    for c in counts.values():
        assert abs(c / draws * 14 - 1) <= 0.05


@pytest.mark.criterion("9  duality and flips: round trips, flip involution m<=9, rotation<->flip size<=6")
def test_c9_duality_and_flips():
    for n in range(1, 9):
        for t in enumerate_trees(n):
            assert triangulation_to_tree(tree_to_triangulation(t)) == t
    rng = np.random.default_rng(50)
    for _ in range(10_000):
        t = remy_sample(50, rng)
        assert triangulation_to_tree(tree_to_triangulation(t)) == t
    for n in range(2, 8):
        for tri in enumerate_triangulations(n):
            for d in tri.diagonals:
                new, d2 = flip(tri, d)
                assert flip(new, d2)[0] == tri
    for n in range(2, 7):
        for t in enumerate_trees(n):
            before = set(tree_to_triangulation(t).diagonals)
            for rank in range(n):
                for rot in (rotate_left, rotate_right):
                    try:
                        u = rot(t, rank)
                    except ValueError:
                        continue
                    after = set(tree_to_triangulation(u).diagonals)
                    assert len(before ^ after) == 2 and not validate(tree_to_triangulation(u))


@pytest.mark.criterion("10 distance sanity: snowflake = 4, d <= 2n-6 at n=11, metric axioms on 10^3 triples")
def test_c10_distance():
    assert exact_distance(SNOWFLAKE).distance == 4
    rng = np.random.default_rng(11)
    for _ in range(100):
        assert exact_distance(TreePairProblem(rand_tri(11, rng), rand_tri(11, rng))).distance <= 2 * 11 - 6
    rng = np.random.default_rng(5)
    for i in range(1000):
        n = 5 + i % 4
        s, t, u = (rand_tri(n, rng) for _ in range(3))
        d = lambda a, b: exact_distance(TreePairProblem(a, b)).distance
        st = d(s, t)
        assert st == d(t, s)
        assert (st == 0) == (s == t)
        assert d(s, u) <= st + d(t, u)


@pytest.mark.criterion("11 class counting: orbit sums = C_n for n<=12, d(3)=1, d(4)=3")
def test_c11_class_counting():
    for n in range(1, 13):
        assert int(class_table(n)[1].sum()) == catalan(n)
    assert dihedral_class_count(3) == 1
    assert dihedral_class_count(4) == 3
