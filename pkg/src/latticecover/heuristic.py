"""Monte Carlo search for small covers of larger lattices.

Two samplers are provided: ``uniform-random`` draws ``t`` distinct vertices,
``symmetric-pairs`` picks one mirror axis of the square per candidate and
draws mirror-image pairs (or single vertices lying on the axis) until ``t``
vertices are placed.  An odd ``t`` on a mirror whose axis misses the lattice
gets one free vertex.  Candidates are generated and tested in vectorized
batches; every witness handed back to a caller is re-checked with
:func:`~latticecover.geometry.is_cover`.

Random streams are numpy ``PCG64`` generators seeded from
``SeedSequence([seed, restart])`` so that each restart is reproducible on
its own, independent of how restarts are scheduled.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Mapping, Optional

import numpy as np

from .errors import InsufficientVerticesError, InvalidInputError, OutOfRangeError
from .geometry import Solution, is_cover, lattice_index, pair_mask_words
from .symmetry import MIRRORS, OPS, canonical_indices, index_permutations

log = logging.getLogger(__name__)

STRATEGIES = ("uniform-random", "symmetric-pairs")
BATCH = 4096
DEFAULT_SEED = 20100531


@dataclass(frozen=True)
class SearchConfig:
    strategy: str = "symmetric-pairs"
    target_t: int = 2
    budget: int = 1_000_000
    seed: int = DEFAULT_SEED
    restarts: int = 16
    improve_rounds: int = 10_000

    def __post_init__(self):
        if self.strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {self.strategy!r}; choose from {STRATEGIES}")
        if self.target_t < 2:
            raise InsufficientVerticesError("target_t must be at least 2")
        if self.budget < 1:
            raise ValueError("budget must be at least 1")
        if self.restarts < 1:
            raise ValueError("restarts must be at least 1")


def rng_stream(seed: int, restart: int = 0) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed & (2**64 - 1), restart])))


@lru_cache(maxsize=64)
def mirror_units(n: int, op_index: int) -> tuple[np.ndarray, np.ndarray]:
    """Orbits of a mirror on flat indices: ``(units, sizes)``.

    ``units`` has shape (k, 2); a fixed vertex appears as ``(i, i)`` with size 1.
    """
    perm = index_permutations(n)[op_index]
    units = sorted({(min(i, j), max(i, j)) for i, j in enumerate(perm)})
    arr = np.array(units, dtype=np.intp)
    sizes = np.where(arr[:, 0] == arr[:, 1], 1, 2)
    return arr, sizes


MIRROR_INDICES = tuple(OPS.index(op) for op in MIRRORS)


def usable_mirrors(n: int, t: int) -> list[int]:
    """Mirror ops (as indices into OPS) able to hold a symmetric t-set.

    A mirror without fixed vertices takes an odd t with one free vertex.
    """
    out = []
    for k in MIRROR_INDICES:
        units, sizes = mirror_units(n, k)
        fixed = int((sizes == 1).sum())
        pairs = len(sizes) - fixed
        room = 2 * pairs + fixed if fixed else 2 * pairs + (t % 2)
        if room >= t:
            out.append(k)
    return out


def _sample_uniform(size: int, t: int, rng: np.random.Generator, count: int) -> np.ndarray:
    keys = rng.random((count, size))
    return np.argpartition(keys, t - 1, axis=1)[:, :t]


def _full_words(words: int, size: int) -> np.ndarray:
    full = np.full(words, np.uint64(2**64 - 1), dtype=np.uint64)
    rem = size % 64
    if rem:
        full[-1] = np.uint64((1 << rem) - 1)
    return full


@lru_cache(maxsize=64)
def unit_pair_masks(n: int, op_index: int) -> np.ndarray:
    """Coverage masks between mirror units, shape (k+1, k+1, words).

    Entry ``[a, b]`` holds every line through one vertex of unit ``a`` and one
    of unit ``b``; the diagonal holds the line inside a pair.  Index ``k`` is
    an empty unit used for padding.
    """
    masks = pair_mask_words(n)
    units, _ = mirror_units(n, op_index)
    k, words = len(units), masks.shape[2]
    u0, u1 = units[:, 0], units[:, 1]
    out = np.zeros((k + 1, k + 1, words), dtype=np.uint64)
    out[:k, :k] = masks[np.ix_(u0, u0)] | masks[np.ix_(u0, u1)] | masks[np.ix_(u1, u0)] | masks[np.ix_(u1, u1)]
    return out


def _first_fit(order: np.ndarray, sizes: np.ndarray, t: int):
    """Which positions of each unit ordering are taken when units are placed
    first-fit until ``t`` vertices are used.  Returns ``(taken, complete)``."""
    sz = sizes[order]
    c = np.cumsum(sz, axis=1)
    taken = c <= t
    filled = np.where(taken, c, 0).max(axis=1)
    # a single slot left over: only a unit lying on the axis fits
    short = filled == t - 1
    if short.any():
        plen = taken.sum(axis=1)
        pos = np.arange(order.shape[1])
        later = (sz == 1) & (pos >= plen[:, None]) & short[:, None]
        first = np.argmax(later, axis=1)
        has = later[np.arange(len(order)), first]
        taken[np.nonzero(has)[0], first[has]] = True
        filled = filled + has
    return taken, filled == t


def _place(order, taken, units, sizes, t):
    """Vertex rows and unit rows for the taken positions of each ordering."""
    m = len(order)
    r, p = np.nonzero(taken)
    u = order[r, p]
    sz = sizes[u]
    # slot of each taken unit among the vertices and among the units of its row
    vslot = np.cumsum(np.where(taken, sizes[order], 0), axis=1)[r, p] - sz
    uslot = np.cumsum(taken, axis=1)[r, p] - 1
    block = np.empty((m, t), dtype=np.intp)
    block[r, vslot] = units[u, 0]
    two = sz == 2
    block[r[two], vslot[two] + 1] = units[u[two], 1]
    ublock = np.full((m, int(uslot.max()) + 1), len(units), dtype=np.intp)
    ublock[r, uslot] = u
    return block, ublock


def _sample_symmetric_units(n: int, t: int, rng: np.random.Generator, count: int):
    """Symmetric candidates as ``(points, axes, groups)``.

    ``groups`` maps each mirror op index to ``(rows, unit_ids, free)`` where
    ``unit_ids`` lists the chosen units of each row, padded with the empty unit.
    For an odd t on a mirror without fixed vertices the last vertex of each
    row is drawn uniformly from the rest of the lattice and returned as
    ``free``; otherwise ``free`` is None.
    """
    size = (n + 1) ** 2
    axes_ok = usable_mirrors(n, t)
    if not axes_ok:
        raise OutOfRangeError(f"no mirror of the n={n} lattice admits a symmetric {t}-set")
    axes = np.array(axes_ok)[rng.integers(0, len(axes_ok), count)]
    out = np.empty((count, t), dtype=np.intp)
    groups = {}
    for k in axes_ok:
        rows = np.nonzero(axes == k)[0]
        if len(rows) == 0:
            continue
        units, sizes = mirror_units(n, k)
        m = len(rows)
        free_slot = bool(t % 2) and not (sizes == 1).any()
        tt = t - 1 if free_slot else t
        full_order = np.argsort(rng.random((m, len(units))), axis=1)
        # at most t units are placed, so a short prefix of each ordering nearly always suffices
        width = min(len(units), tt + 6)
        taken, complete = _first_fit(full_order[:, :width], sizes, tt)
        block, ublock = _place(full_order[:, :width], taken, units, sizes, t)
        if not complete.all():
            bad = np.nonzero(~complete)[0]
            order = full_order[bad]
            taken, complete = _first_fit(order, sizes, tt)
            while not complete.all():
                # rare: the axis ran out of vertices with an odd slot left
                redo = np.nonzero(~complete)[0]
                order[redo] = np.argsort(rng.random((len(redo), len(units))), axis=1)
                taken[redo], complete[redo] = _first_fit(order[redo], sizes, tt)
            b2, u2 = _place(order, taken, units, sizes, t)
            block[bad] = b2
            if u2.shape[1] > ublock.shape[1]:
                ublock = np.pad(ublock, ((0, 0), (0, u2.shape[1] - ublock.shape[1])), constant_values=len(units))
            ublock[bad] = len(units)
            ublock[bad, : u2.shape[1]] = u2
        free = None
        if free_slot:
            free = rng.integers(0, size, m)
            clash = (block[:, :tt] == free[:, None]).any(axis=1)
            while clash.any():
                bad = np.nonzero(clash)[0]
                free[bad] = rng.integers(0, size, len(bad))
                clash[bad] = (block[bad, :tt] == free[bad, None]).any(axis=1)
            block[:, tt] = free
        out[rows] = block
        groups[k] = (rows, ublock, free)
    return out, axes, groups


def _sample_symmetric(n: int, t: int, rng: np.random.Generator, count: int):
    out, axes, _ = _sample_symmetric_units(n, t, rng, count)
    return out, axes


def sample_candidates(n: int, strategy: str, t: int, rng: np.random.Generator, count: int):
    """``count`` candidate vertex sets as a (count, t) index array, plus the mirror
    op index chosen for each row (-1 for uniform sampling)."""
    size = (n + 1) ** 2
    if t < 2:
        raise InsufficientVerticesError("candidate sets need at least two vertices")
    if t > size:
        raise OutOfRangeError(f"cannot place {t} vertices on {size} lattice points")
    if strategy == "uniform-random":
        return _sample_uniform(size, t, rng, count), np.full(count, -1)
    if strategy == "symmetric-pairs":
        return _sample_symmetric(n, t, rng, count)
    raise ValueError(f"unknown strategy {strategy!r}")


def cover_batch(n: int, cand: np.ndarray) -> np.ndarray:
    """Boolean array: which rows of ``cand`` are covers of the n-lattice."""
    masks = pair_mask_words(n)
    size, _, words = masks.shape
    full = _full_words(words, size)
    t = cand.shape[1]
    tot = np.zeros((cand.shape[0], words), dtype=np.uint64)
    for a in range(t):
        ca = cand[:, a]
        for b in range(a + 1, t):
            tot |= masks[ca, cand[:, b]]
    return np.all(tot == full, axis=1)


def unit_cover_batch(n: int, op_index: int, unit_ids: np.ndarray, free=None, vertices=None) -> np.ndarray:
    """Like :func:`cover_batch` for rows of mirror units (padded with the empty unit).

    ``free`` optionally adds one vertex per row; ``vertices`` then lists the
    vertices of the units so the lines through the free vertex can be added.
    """
    um = unit_pair_masks(n, op_index)
    words = um.shape[2]
    full = _full_words(words, (n + 1) ** 2)
    k = unit_ids.shape[1]
    tot = np.zeros((unit_ids.shape[0], words), dtype=np.uint64)
    for a in range(k):
        ua = unit_ids[:, a]
        for b in range(a, k):
            tot |= um[ua, unit_ids[:, b]]
    if free is not None:
        masks = pair_mask_words(n)
        for c in range(vertices.shape[1]):
            tot |= masks[free, vertices[:, c]]
    return np.all(tot == full, axis=1)


def _sample_and_check(n: int, strategy: str, t: int, rng, count: int):
    if strategy == "symmetric-pairs" and t <= (n + 1) ** 2:
        cand, _, groups = _sample_symmetric_units(n, t, rng, count)
        ok = np.zeros(count, dtype=bool)
        for k, (rows, unit_ids, free) in groups.items():
            ok[rows] = unit_cover_batch(n, k, unit_ids, free, cand[rows, : t - 1])
        return cand, ok
    cand, _ = sample_candidates(n, strategy, t, rng, count)
    return cand, cover_batch(n, cand)


def _random_search_stream(n: int, t: int, strategy: str, budget: int, rng) -> Optional[Solution]:
    done = 0
    while done < budget:
        count = min(BATCH, budget - done)
        cand, hits = _sample_and_check(n, strategy, t, rng, count)
        ok = np.nonzero(hits)[0]
        done += count
        if len(ok):
            S = Solution.from_indices(n, cand[ok[0]].tolist())
            if is_cover(S):
                return S
    return None


def random_search(n: int, config: SearchConfig, rng: Optional[np.random.Generator] = None) -> Optional[Solution]:
    """Sample ``config.target_t``-sets until one covers or ``config.budget`` samples are spent."""
    if config.target_t > (n + 1) ** 2:
        raise OutOfRangeError("target_t exceeds the number of lattice vertices")
    rng = rng_stream(config.seed) if rng is None else rng
    return _random_search_stream(n, config.target_t, config.strategy, config.budget, rng)


def _delete_pass(idx, cur: list[int]) -> list[int]:
    changed = True
    while changed and len(cur) > 2:
        changed = False
        for v in list(cur):
            rest = [u for u in cur if u != v]
            if idx.is_cover(rest):
                cur = rest
                changed = True
                break
    return cur


def improve(S: Solution, budget: int = 10_000, seed: int = DEFAULT_SEED, rng=None) -> Solution:
    """Shrink a cover by greedy deletion and coverage-preserving swaps.

    Each of ``budget`` rounds replaces a random vertex by a random other
    vertex.  Swaps that keep the set a cover are kept (a walk over covers of
    equal size) and are followed by a deletion attempt.  ``budget=0`` gives
    deletion only.
    """
    if len(S) < 2 or not is_cover(S):
        raise InvalidInputError("improve needs a covering set")
    n = S.n
    idx = lattice_index(n)
    rng = rng_stream(seed, 0) if rng is None else rng
    cur = _delete_pass(idx, list(S.indices()))
    size = idx.size
    masks = idx.pair_mask
    for _ in range(budget):
        if len(cur) <= 2:
            break
        k = int(rng.integers(len(cur)))
        w = int(rng.integers(size))
        if w in cur:
            continue
        rest = cur[:k] + cur[k + 1:]
        bits = idx.cover_bits(rest)
        row = masks[w]
        for u in rest:
            bits |= row[u]
        if bits != idx.full:
            continue
        cur = _delete_pass(idx, rest + [w])
    out = Solution.from_indices(n, cur)
    assert is_cover(out)
    return out


def constructive_seed(n: int, known: Optional[Mapping[int, Solution]] = None) -> Solution:
    from .bounds import bounds_report, default_known

    known = default_known() if known is None else known
    if n in known:
        return known[n]
    return bounds_report(n, known).best.witness


def _descend(n: int, config: SearchConfig, restart: int, start: Solution) -> Solution:
    rng = rng_stream(config.seed, restart)
    best = improve(start, config.improve_rounds, rng=rng)
    while len(best) > config.target_t:
        t = len(best) - 1
        S = _random_search_stream(n, t, config.strategy, config.budget, rng)
        if S is None:
            log.debug("restart %d: no %d-cover of n=%d within budget", restart, t, n)
            break
        best = improve(S, config.improve_rounds, rng=rng)
    return best


def _run_restart(args):
    return _descend(*args)


def best_upper_bound_search(
    n: int,
    config: SearchConfig,
    known: Optional[Mapping[int, Solution]] = None,
    jobs: int = 1,
) -> tuple[int, Solution]:
    """Smallest cover found across restarts, starting from the best construction.

    Each restart walks down from the constructive witness, sampling a cover one
    vertex smaller at each step, and stops at ``config.target_t`` or at the
    first size it fails to reach within ``config.budget`` samples.  Restarts
    are consumed in order and the search ends with the first restart that
    reaches the target; the answer is the best of the restarts up to that one,
    so it does not depend on ``jobs``.  The result is an upper bound on t(n) only.
    """
    if n < 2:
        raise OutOfRangeError("heuristic search needs n >= 2")
    start = constructive_seed(n, known)
    tasks = [(n, config, r, start) for r in range(config.restarts)]
    results: list[Solution] = []
    pool = ProcessPoolExecutor(max_workers=jobs) if jobs > 1 else None
    try:
        step = max(1, jobs)
        for lo in range(0, len(tasks), step):
            chunk = tasks[lo : lo + step]
            done = list(pool.map(_run_restart, chunk)) if pool else [_run_restart(task) for task in chunk]
            hit = next((i for i, S in enumerate(done) if len(S) <= config.target_t), None)
            if hit is not None:
                results.extend(done[: hit + 1])
                break
            results.extend(done)
    finally:
        if pool:
            pool.shutdown()
    best = min(results, key=lambda S: (len(S), canonical_indices(n, S.indices())))
    if not is_cover(best):
        raise AssertionError("search produced a non-cover")
    log.info("n=%d: best %d after %d restarts", n, len(best), len(results))
    return len(best), best


def with_target(config: SearchConfig, t: int) -> SearchConfig:
    return replace(config, target_t=t)
