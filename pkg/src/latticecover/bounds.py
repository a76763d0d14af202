"""Constructive upper bounds on the minimum cover order t(n).

Every generator returns an explicit witness; :func:`bounds_report` verifies
each witness with :func:`~latticecover.geometry.is_cover` before using it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Mapping, Optional

import numpy as np

from .errors import InvalidInputError, OutOfRangeError, PreconditionError
from .geometry import Point, Solution, is_cover


def _require_cover(S: Solution, what: str = "input"):
    if len(S) < 2 or not is_cover(S):
        raise InvalidInputError(f"{what} is not a cover of the n={S.n} lattice")


def symmetric_design(n: int) -> Solution:
    """Both main diagonals minus the column ``x = n // 2``: 2n vertices."""
    if n < 2:
        raise OutOfRangeError("symmetric design needs n >= 2")
    skip = n // 2
    pts = {(i, i) for i in range(n + 1)} | {(i, n - i) for i in range(n + 1)}
    return Solution(n, (p for p in pts if p[0] != skip))


def taper_extend(S: Solution) -> Solution:
    """Grow a cover of the (n-1)-lattice by one row and column using three corners."""
    _require_cover(S)
    n = S.n + 1
    return Solution(n, set(S.vertices) | {(n, n), (0, n), (n, 0)})


def corner_extend(S: Solution) -> Solution:
    """Shift a cover of the (n-2)-lattice by (1, 1) and add the four outer corners."""
    _require_cover(S)
    n = S.n + 2
    pts = {(x + 1, y + 1) for x, y in S.vertices}
    pts |= {(0, 0), (0, n), (n, 0), (n, n)}
    return Solution(n, pts)


def tile_offsets(n: int, m: int, k: int) -> list[int]:
    if k == 1:
        return [0]
    return [(j * (n - m)) // (k - 1) for j in range(k)]


def block_tile(n: int, block: Solution, k: int) -> Solution:
    """k x k copies of a cover of the m-lattice spread over the n-lattice.

    Neighbouring copies overlap or abut; they never leave a gap as long as
    ``k * (m + 1) >= n + 1``.
    """
    _require_cover(block, "block")
    m = block.n
    if m > n or k * (m + 1) < n + 1:
        raise PreconditionError(f"{k}x{k} blocks of size {m + 1} cannot tile the n={n} lattice")
    offs = tile_offsets(n, m, k)
    pts = {(x + ox, y + oy) for ox in offs for oy in offs for x, y in block.vertices}
    return Solution(n, pts)


def quad_tile(n: int, block: Solution) -> Solution:
    """Four quadrant copies of a cover of the floor(n/2)-lattice."""
    if block.n != n // 2:
        raise PreconditionError(f"quad tiling of n={n} needs a block for n={n // 2}, got n={block.n}")
    return block_tile(n, block, 2)


def stack_tiles(tile: Solution, i: int) -> Solution:
    """An i x i grid of copies of a corner-anchored tile sharing edge rows/columns."""
    k = tile.n
    corners = [(0, 0), (0, k), (k, 0), (k, k)]
    if any(c not in tile for c in corners):
        raise PreconditionError("stacked tiles must contain all four lattice corners")
    _require_cover(tile, "tile")
    if i < 1:
        raise OutOfRangeError("repetition count must be positive")
    pts = {(x + a * k, y + b * k) for a in range(i) for b in range(i) for x, y in tile.vertices}
    return Solution(k * i, pts)


def totients(m: int) -> np.ndarray:
    """phi(0..m) by a sieve; phi(0) is set to 0."""
    phi = np.arange(m + 1, dtype=np.int64)
    for p in range(2, m + 1):
        if phi[p] == p:
            phi[p::p] -= phi[p::p] // p
    return phi


def totient_summatory(m: int) -> int:
    if m < 0:
        raise OutOfRangeError("m must be non-negative")
    if m == 0:
        return 0
    return int(totients(m)[1:].sum())


def central_star_limit(n: int) -> int:
    return 1 + 4 * totient_summatory((n + 1) // 2)


def central_star(n: int) -> Solution:
    """A near-centre vertex plus one neighbour along each line through it that
    meets another lattice vertex."""
    if n < 2:
        raise OutOfRangeError("central star needs n >= 2")
    c = (n + 1) // 2
    dirs = set()
    for x in range(n + 1):
        for y in range(n + 1):
            dx, dy = x - c, y - c
            if dx == 0 and dy == 0:
                continue
            g = math.gcd(dx, dy)
            dx, dy = dx // g, dy // g
            if dx < 0 or (dx == 0 and dy < 0):
                dx, dy = -dx, -dy
            dirs.add((dx, dy))
    pts = {(c, c)}
    for dx, dy in dirs:
        x, y = c + dx, c + dy
        if not (0 <= x <= n and 0 <= y <= n):
            x, y = c - dx, c - dy
        pts.add((x, y))
    return Solution(n, pts)


@lru_cache(maxsize=1)
def _data_records():
    from .io import read_solutions

    text = resources.files("latticecover").joinpath("data/known.txt").read_text()
    tiles = resources.files("latticecover").joinpath("data/tiles.txt").read_text()
    return read_solutions(text, "known.txt"), read_solutions(tiles, "tiles.txt")


def default_known() -> dict[int, Solution]:
    """Shipped witnesses: exact minima for n <= 6, one per n."""
    known: dict[int, Solution] = {}
    for rec in _data_records()[0]:
        S = rec.solution()
        if rec.n not in known or len(S) < len(known[rec.n]):
            known[rec.n] = S
    return known


def stacking_tiles() -> dict[str, Solution]:
    """Corner-anchored n=4 tiles for the two t(4i) stacking bounds, keyed by source tag."""
    return {rec.source: rec.solution() for rec in _data_records()[1]}


CORNER_TILE_3 = Solution(3, [(0, 0), (0, 3), (3, 0), (3, 3)])


@dataclass
class BoundEntry:
    method: str
    value: int
    witness: Optional[Solution] = None
    formula: Optional[int] = None


@dataclass
class BoundsReport:
    n: int
    entries: list[BoundEntry] = field(default_factory=list)

    @property
    def best(self) -> BoundEntry:
        return min(self.entries, key=lambda e: e.value)

    def entry(self, method: str) -> Optional[BoundEntry]:
        for e in self.entries:
            if e.method == method:
                return e
        return None


def bounds_report(n: int, known: Optional[Mapping[int, Solution]] = None) -> BoundsReport:
    """Evaluate every construction for ``n``; recursions draw on ``known`` witnesses."""
    if n < 2:
        raise OutOfRangeError("bounds need n >= 2")
    known = {} if known is None else known
    rep = BoundsReport(n)

    def add(method, witness, formula=None):
        if witness is None:
            return
        _require_cover(witness, f"{method} witness")
        rep.entries.append(BoundEntry(method, len(witness), witness, formula))

    add("symmetric", symmetric_design(n), 2 * n)
    prev = known.get(n - 1)
    if prev is not None and len(prev) >= 2:
        add("taper", taper_extend(prev), len(prev) + 3)
    prev2 = known.get(n - 2)
    if prev2 is not None and len(prev2) >= 2:
        add("corner", corner_extend(prev2), len(prev2) + 4)
    for k in range(2, 6):
        m = -(-(n + 1) // k) - 1
        block = known.get(m)
        if m < 1 or m >= n or block is None or len(block) < 2:
            continue
        add(f"tile{k}x{k}", block_tile(n, block, k), k * k * len(block))
    if n % 3 == 0:
        i = n // 3
        add("stack3", stack_tiles(CORNER_TILE_3, i), (i + 1) ** 2)
    if n % 4 == 0:
        i = n // 4
        formulas = {"stack4-interstitial": (i + 1) ** 2 + 2 * i * i, "stack4-shared-edge": (i + 1) ** 2 + i * (i + 1)}
        for tag, tile in stacking_tiles().items():
            add(tag, stack_tiles(tile, i), formulas.get(tag))
    add("central-star", central_star(n), central_star_limit(n))
    return rep


def bounds_sweep(n_max: int, known: Optional[Mapping[int, Solution]] = None) -> dict[int, BoundsReport]:
    """Reports for 2..n_max, feeding each best witness back into the recursions."""
    pool = dict(default_known() if known is None else known)
    out = {}
    for n in range(2, n_max + 1):
        rep = bounds_report(n, pool)
        out[n] = rep
        best = rep.best.witness
        if n not in pool or len(best) < len(pool[n]):
            pool[n] = best
    return out


def summary_limit(n: int) -> float:
    """(n+1)^(2/3) * ln(n+1).  The logarithm base is assumed natural."""
    return (n + 1) ** (2.0 / 3.0) * math.log(n + 1)


def summary_check(n: int, t: int) -> bool:
    return t < summary_limit(n)


def derive_stacking_tiles() -> dict[str, Solution]:
    """Re-derive the two n=4 stacking tiles by constrained exhaustive search.

    Among the 6-vertex covers holding all four corners, take the first (in
    vertex order) whose 2x2 stack has (i+1)^2 + 2i^2 vertices, and the first
    whose stack has (i+1)^2 + i(i+1).
    """
    from .exact import corner_anchored_covers

    out = {}
    targets = {"stack4-interstitial": 9 + 8, "stack4-shared-edge": 9 + 6}
    for S in corner_anchored_covers(4, 6):
        size = len(stack_tiles(S, 2))
        for tag, want in targets.items():
            if tag not in out and size == want:
                out[tag] = S
    return out
