"""Exhaustive and sampled censuses of tree pairs.

The exact census classifies one representative R of each dihedral orbit of
triangulations against every triangulation T and weights each hit by the
orbit size of R; a motion g maps the pair (R, T) to (gR, gT) without changing
its class, so the weighted sums count all ordered pairs.

Sampling draws each pair from per-worker random substreams: worker ``w`` uses
PCG64 seeded with ``SeedSequence(seed, spawn_key=(w,))`` and takes
``iterations // workers`` pairs, plus one for the first
``iterations % workers`` workers. Each pair consumes two consecutive Rémy
draw blocks (S, then T; see ``tree.remy_bounds``).
"""

from __future__ import annotations

import logging
import multiprocessing
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Optional

import numpy as np

from .classify import PairClass, TreePairProblem, classify_pair
from .combinatorics import catalan
from .triangulation import class_table, enumerate_triangulations, one_off_words, packed_table
from .tree import remy_bounds, remy_sample, tree_to_triangulation

log = logging.getLogger(__name__)

DEFAULT_MAX_SIZE = 12
NAIVE_MAX_SIZE = 7
BLOCK = 64
SAMPLE_CHUNK = 1 << 15


@dataclass(frozen=True)
class CensusRow:
    size: int
    no_common: int
    difficult: int
    total: int

    def __post_init__(self):
        if not 0 <= self.difficult <= self.no_common <= self.total:
            raise ValueError(f"inconsistent census row {self}")


@dataclass(frozen=True)
class SampleRow:
    size: int
    iterations: int
    no_common_hits: int
    difficult_hits: int
    seed: int
    workers: int

    def __post_init__(self):
        if not 0 <= self.difficult_hits <= self.no_common_hits <= self.iterations:
            raise ValueError(f"inconsistent sample row {self}")

    @property
    def no_common_fraction(self) -> float:
        return self.no_common_hits / self.iterations

    @property
    def difficult_fraction(self) -> float:
        return self.difficult_hits / self.iterations


def _pool(workers: int) -> ProcessPoolExecutor:
    # fork shares the already-built tables with the workers
    return ProcessPoolExecutor(workers, mp_context=multiprocessing.get_context("fork"))


# --- exact census ----------------------------------------------------------------


@lru_cache(maxsize=2)
def _tables(n: int):
    table = packed_table(n)
    one_off = one_off_words(table, n + 2)
    reps, orbit = class_table(n)
    return table, one_off, reps, orbit


def _census_block(n: int, positions: list[int]) -> list[tuple[int, int, int]]:
    """Weighted (no_common, difficult) contributions of the listed representatives."""
    table, one_off, reps, orbit = _tables(n)
    words = table.shape[1]
    out = []
    for pos in positions:
        r = reps[pos]
        rep, rep_off = table[r], one_off[r]
        common = (table[:, 0] & rep[0]) != 0
        reach = ((table[:, 0] & rep_off[0]) | (one_off[:, 0] & rep[0])) != 0
        for k in range(1, words):
            common |= (table[:, k] & rep[k]) != 0
            reach |= ((table[:, k] & rep_off[k]) | (one_off[:, k] & rep[k])) != 0
        free = ~common
        w = int(orbit[pos])
        out.append((pos, w * int(free.sum()), w * int((free & ~reach).sum())))
    return out


def _read_checkpoint(path: Path, n: int) -> dict[int, tuple[int, int]]:
    done: dict[int, tuple[int, int]] = {}
    if not path.exists():
        return done
    lines = path.read_text().splitlines()
    if lines and lines[0] != f"# size={n}":
        raise ValueError(f"checkpoint {path} belongs to a different run ({lines[0]!r})")
    for line in lines[1:]:
        if line.strip():
            idx, nc, dif = (int(x) for x in line.split(","))
            done[idx] = (nc, dif)
    return done


def exact_census(
    n: int,
    workers: int = 1,
    max_size: int = DEFAULT_MAX_SIZE,
    checkpoint: Optional[os.PathLike] = None,
) -> CensusRow:
    """Exact counts of no-common and difficult ordered pairs of size ``n``.

    Representatives are dealt round-robin to ``workers`` shards and processed
    in blocks; totals are plain integer sums, so the result does not depend
    on ``workers``. With ``checkpoint`` every finished representative is
    appended as ``index,no_common,difficult`` and skipped on resume.
    """
    if not 3 <= n <= max_size:
        raise ValueError(f"exact census supports sizes 3..{max_size}, got {n}")
    if workers < 1:
        raise ValueError("workers must be >= 1")
    _tables(n)
    n_reps = len(_tables(n)[2])

    done: dict[int, tuple[int, int]] = {}
    ck = None
    if checkpoint is not None:
        ck_path = Path(checkpoint)
        done = _read_checkpoint(ck_path, n)
        if not ck_path.exists():
            ck_path.write_text(f"# size={n}\n")
        ck = ck_path.open("a")

    tasks = []
    for w in range(workers):
        shard = [p for p in range(w, n_reps, workers) if p not in done]
        tasks.extend(shard[i:i + BLOCK] for i in range(0, len(shard), BLOCK))

    no_common = sum(v[0] for v in done.values())
    difficult = sum(v[1] for v in done.values())

    def absorb(results):
        nonlocal no_common, difficult
        for pos, nc, dif in results:
            no_common += nc
            difficult += dif
            if ck is not None:
                ck.write(f"{pos},{nc},{dif}\n")
        if ck is not None:
            ck.flush()

    try:
        if workers == 1:
            for block in tasks:
                absorb(_census_block(n, block))
        else:
            with _pool(workers) as pool:
                for results in pool.map(_census_block, [n] * len(tasks), tasks):
                    absorb(results)
    finally:
        if ck is not None:
            ck.close()
    return CensusRow(n, no_common, difficult, catalan(n) ** 2)


def exact_census_naive(n: int) -> CensusRow:
    """All C_n^2 ordered pairs classified one by one, without symmetry."""
    if not 3 <= n <= NAIVE_MAX_SIZE:
        raise ValueError(f"naive census supports sizes 3..{NAIVE_MAX_SIZE}, got {n}")
    tris = list(enumerate_triangulations(n))
    no_common = difficult = 0
    for s in tris:
        for t in tris:
            cls = classify_pair(TreePairProblem(s, t))
            if cls is not PairClass.HAS_COMMON:
                no_common += 1
                if cls is PairClass.DIFFICULT:
                    difficult += 1
    return CensusRow(n, no_common, difficult, len(tris) ** 2)


# --- sampling --------------------------------------------------------------------


def substream(seed: int, worker: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(worker,))))


def worker_shares(iterations: int, workers: int) -> list[int]:
    base, extra = divmod(iterations, workers)
    return [base + (w < extra) for w in range(workers)]


def _sample_worker(n: int, count: int, seed: int, worker: int) -> tuple[int, int]:
    from ._kernels import sample_counts

    rng = substream(seed, worker)
    bounds = remy_bounds(n)
    no_common = difficult = 0
    left = count
    while left:
        c = min(left, SAMPLE_CHUNK)
        draws = rng.integers(0, np.broadcast_to(bounds, (c, 2, n, 2)), dtype=np.int64)
        nc, dif = sample_counts(draws, n)
        no_common += nc
        difficult += dif
        left -= c
    return no_common, difficult


def _check_sample_args(n: int, iterations: int, seed: int, workers: int) -> None:
    if n < 3:
        raise ValueError(f"sampling needs size >= 3, got {n}")
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    if not 0 <= seed < 2 ** 64:
        raise ValueError("seed must be a 64-bit unsigned integer")
    if workers < 1:
        raise ValueError("workers must be >= 1")


def sample_census(n: int, iterations: int, seed: int, workers: int = 1) -> SampleRow:
    """Monte-Carlo counts over ``iterations`` uniformly random ordered pairs."""
    _check_sample_args(n, iterations, seed, workers)
    shares = worker_shares(iterations, workers)
    if workers == 1:
        results: Iterable[tuple[int, int]] = [_sample_worker(n, shares[0], seed, 0)]
    else:
        with _pool(workers) as pool:
            results = list(pool.map(_sample_worker, [n] * workers, shares,
                                    [seed] * workers, range(workers)))
    no_common = sum(r[0] for r in results)
    difficult = sum(r[1] for r in results)
    log.info("sampled size %d: %d pairs, seed %d, %d workers", n, iterations, seed, workers)
    return SampleRow(n, iterations, no_common, difficult, seed, workers)


def sample_census_python(n: int, iterations: int, seed: int, workers: int = 1) -> SampleRow:
    """Slow reference for ``sample_census`` built from ``remy_sample`` and
    ``classify_pair``; consumes the same substreams in the same order."""
    _check_sample_args(n, iterations, seed, workers)
    no_common = difficult = 0
    for w, count in enumerate(worker_shares(iterations, workers)):
        rng = substream(seed, w)
        for _ in range(count):
            s = tree_to_triangulation(remy_sample(n, rng))
            t = tree_to_triangulation(remy_sample(n, rng))
            cls = classify_pair(TreePairProblem(s, t))
            if cls is not PairClass.HAS_COMMON:
                no_common += 1
                difficult += cls is PairClass.DIFFICULT
    return SampleRow(n, iterations, no_common, difficult, seed, workers)
