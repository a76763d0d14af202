"""Exhaustive search for minimum covers of small lattices.

The search builds vertex subsets depth first.  The first vertex is drawn from
the representatives of the single-point orbits and every later vertex from
points whose orbit representative is not smaller, which keeps at least one
member of every congruence class reachable.  The last two vertices of each
branch are evaluated together as a vectorized batch of pairs.
"""

from __future__ import annotations

import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import comb

import numpy as np

from .errors import CapacityError, OutOfRangeError
from .geometry import Solution, lattice_index, pair_mask_words
from .symmetry import CongruenceClass, classify, index_permutations

log = logging.getLogger(__name__)

DEFAULT_CAP = 7

# class counts reported for the proven minima; a mismatch is flagged loudly
KNOWN_CLASS_COUNTS = {2: 2, 3: 2, 4: 59, 5: 4}


@dataclass
class ExactResult:
    n: int
    t_min: int
    classes: list[CongruenceClass] = field(default_factory=list)
    subsets_examined: int = 0
    proven: bool = False


def lower_bound(n: int) -> int:
    """Smallest t for which t(t-1)/2 lines of n+1 points could reach every vertex."""
    t = 2
    while t * (t - 1) < 2 * (n + 1):
        t += 1
    return t


def default_jobs() -> int:
    env = os.environ.get("LATTICE_COVER_JOBS")
    if env:
        return max(1, int(env))
    return 1


def _words_to_int(a) -> int:
    v = 0
    for w, x in enumerate(a.tolist()):
        v |= int(x) << (64 * w)
    return v


def _int_to_words(v: int, words: int) -> np.ndarray:
    low = (1 << 64) - 1
    return np.array([(v >> (64 * w)) & low for w in range(words)], dtype=np.uint64)


@lru_cache(maxsize=256)
def _triu(k: int):
    return np.triu_indices(k, 1)


def _orbit_reps(n: int) -> list[int]:
    perms = index_permutations(n)
    size = (n + 1) ** 2
    return [min(p[i] for p in perms) for i in range(size)]


def branches(n: int, symmetry_prune: bool = True) -> list[tuple[int, tuple[int, ...]]]:
    """Top-level branches ``(first vertex, allowed later vertices)``."""
    size = (n + 1) ** 2
    if not symmetry_prune:
        return [(f, tuple(range(f + 1, size))) for f in range(size)]
    rep = _orbit_reps(n)
    out = []
    for f in sorted(set(rep)):
        allowed = tuple(i for i in range(size) if i != f and rep[i] >= f)
        out.append((f, allowed))
    return out


def search_branch(n: int, t: int, first: int, allowed: tuple[int, ...]):
    """All covering t-subsets ``{first} | C`` with ``C`` a subset of ``allowed``.

    Returns ``(covers, examined)`` where covers are sorted index tuples.
    """
    masks = pair_mask_words(n)
    size, _, words = masks.shape
    full_int = (1 << size) - 1
    full = _int_to_words(full_int, words)
    line_cap = n + 1
    A = np.array(allowed, dtype=np.intp)
    k = len(A)
    covers: list[tuple[int, ...]] = []
    examined = 0
    need = t - 1
    if need < 1 or k < need:
        return covers, examined
    PMA = masks[np.ix_(A, A)]
    macc0 = masks[first][A]

    if need == 1:
        ok = np.all(macc0 == full, axis=1)
        examined += k
        for j in np.nonzero(ok)[0]:
            covers.append(tuple(sorted((first, int(A[j])))))
        return covers, examined

    chosen: list[int] = []

    def pairs_level(start, cov_w, macc):
        nonlocal examined
        r = k - start
        if r < 2:
            return
        I, J = _triu(r)
        I = I + start
        J = J + start
        tot = macc[I] | macc[J] | PMA[I, J] | cov_w
        examined += len(I)
        hit = np.nonzero(np.all(tot == full, axis=1))[0]
        for h in hit:
            covers.append(tuple(sorted([first, *(int(A[c]) for c in chosen), int(A[I[h]]), int(A[J[h]])])))

    def rec(start, left, cov_int, macc):
        # left >= 3 vertices still to add from positions >= start
        c = t - left
        for j in range(start, k - left + 1):
            new_cov = cov_int | _words_to_int(macc[j])
            b = left - 1
            gain = comb(c + 1 + b, 2) - comb(c + 1, 2)
            if size - new_cov.bit_count() > gain * line_cap:
                continue
            new_macc = macc | PMA[j]
            chosen.append(j)
            if b == 2:
                pairs_level(j + 1, _int_to_words(new_cov, words), new_macc)
            else:
                rec(j + 1, b, new_cov, new_macc)
            chosen.pop()

    if need == 2:
        pairs_level(0, np.zeros(words, dtype=np.uint64), macc0)
    else:
        gain = comb(t, 2)
        if size <= gain * line_cap:
            rec(0, need, 0, macc0)
    return covers, examined


def _run_branch(args):
    return search_branch(*args)


def search_covers(n: int, t: int, jobs: int | None = None, symmetry_prune: bool = True):
    """Covering t-subsets of the n-lattice, at least one per congruence class.

    Returns ``(set of sorted index tuples, subsets examined)``.
    """
    if n < 1:
        raise OutOfRangeError("n must be at least 1")
    size = (n + 1) ** 2
    if not 2 <= t <= size:
        raise OutOfRangeError(f"t must lie in [2, {size}], got {t}")
    tasks = [(n, t, f, allowed) for f, allowed in branches(n, symmetry_prune)]
    jobs = default_jobs() if jobs is None else jobs
    found: set[tuple[int, ...]] = set()
    examined = 0
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_branch, tasks))
    else:
        results = [_run_branch(task) for task in tasks]
    for covers, count in results:
        found.update(covers)
        examined += count
    return found, examined


def solve_exact(n: int, t: int, jobs: int | None = None, symmetry_prune: bool = True) -> list[CongruenceClass]:
    found, _ = search_covers(n, t, jobs, symmetry_prune)
    return classify(Solution.from_indices(n, c) for c in found)


def naive_covers(n: int, t: int) -> set[tuple[int, ...]]:
    """Every covering t-subset, by plain enumeration.  Reference for small n."""
    idx = lattice_index(n)
    return {c for c in combinations(range(idx.size), t) if idx.is_cover(c)}


def t_min(n: int, cap: int = DEFAULT_CAP, jobs: int | None = None) -> ExactResult:
    if n < 1:
        raise OutOfRangeError("n must be at least 1")
    if n > cap:
        raise CapacityError(
            f"n={n} exceeds the exact-search cap of {cap}; use the heuristic solver for upper bounds"
        )
    examined = 0
    t = lower_bound(n)
    while True:
        found, count = search_covers(n, t, jobs)
        examined += count
        log.info("n=%d t=%d: %d covers from %d subsets", n, t, len(found), count)
        if found:
            classes = classify(Solution.from_indices(n, c) for c in found)
            expected = KNOWN_CLASS_COUNTS.get(n)
            if expected is not None and len(classes) != expected:
                log.warning("n=%d: found %d congruence classes, expected %d", n, len(classes), expected)
            return ExactResult(n, t, classes, examined, proven=True)
        t += 1


def corner_anchored_covers(n: int, t: int, jobs: int | None = None) -> list[Solution]:
    """Every t-vertex cover of the n-lattice that contains the four corners."""
    from .symmetry import OPS, apply_symmetry

    corners = {(0, 0), (0, n), (n, 0), (n, n)}
    out = set()
    for cls in solve_exact(n, t, jobs):
        for op in OPS:
            S = apply_symmetry(op, cls.representative)
            if corners <= set(S.vertices):
                out.add(S)
    return sorted(out, key=lambda S: S.vertices)
