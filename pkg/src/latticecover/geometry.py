"""Integer-exact lattice points, spanned lines and coverage.

A lattice with parameter ``n`` has the (n+1)**2 vertices ``(x, y)`` with
``0 <= x, y <= n``.  Bit ``x*(n+1) + y`` of a coverage mask refers to vertex
``(x, y)``; this layout is part of the serialized format and must not change.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, NamedTuple

import numpy as np

from .errors import DegeneratePairError, InsufficientVerticesError, OutOfRangeError


class Point(NamedTuple):
    x: int
    y: int


class LineKey(NamedTuple):
    """The line ``a*x + b*y = c`` with gcd(|a|, |b|) = 1 and a > 0 or (a = 0, b > 0)."""

    a: int
    b: int
    c: int


@dataclass(frozen=True)
class Solution:
    """A vertex subset of the (n+1)x(n+1) lattice, kept sorted and duplicate free."""

    n: int
    vertices: tuple[Point, ...]

    def __init__(self, n: int, vertices: Iterable[Iterable[int]]):
        if n < 0:
            raise OutOfRangeError(f"lattice parameter must be non-negative, got {n}")
        pts = [Point(int(x), int(y)) for x, y in vertices]
        for p in pts:
            if not (0 <= p.x <= n and 0 <= p.y <= n):
                raise OutOfRangeError(f"vertex {tuple(p)} outside [0,{n}]^2")
        ordered = tuple(sorted(set(pts)))
        if len(ordered) != len(pts):
            raise OutOfRangeError("duplicate vertices in solution")
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "vertices", ordered)

    def __len__(self):
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def __contains__(self, p):
        return tuple(p) in self.vertices

    @property
    def t(self) -> int:
        return len(self.vertices)

    def indices(self) -> tuple[int, ...]:
        m = self.n + 1
        return tuple(x * m + y for x, y in self.vertices)

    @classmethod
    def from_indices(cls, n: int, indices: Iterable[int]) -> "Solution":
        m = n + 1
        return cls(n, (divmod(i, m) for i in indices))


@dataclass(frozen=True)
class CoverageMask:
    n: int
    bits: int

    @property
    def size(self) -> int:
        return (self.n + 1) ** 2

    def count(self) -> int:
        return self.bits.bit_count()

    def is_full(self) -> bool:
        return self.bits == (1 << self.size) - 1

    def __contains__(self, p) -> bool:
        x, y = p
        return bool(self.bits >> (x * (self.n + 1) + y) & 1)

    def uncovered(self) -> list[Point]:
        m = self.n + 1
        return [Point(*divmod(i, m)) for i in range(self.size) if not self.bits >> i & 1]


def normalize_line(p, q) -> LineKey:
    (px, py), (qx, qy) = p, q
    if px == qx and py == qy:
        raise DegeneratePairError(f"cannot span a line from the single point {tuple(p)}")
    a = qy - py
    b = px - qx
    g = math.gcd(a, b)
    a //= g
    b //= g
    if a < 0 or (a == 0 and b < 0):
        a, b = -a, -b
    return LineKey(a, b, a * px + b * py)


def points_on_line(line: LineKey, n: int) -> list[Point]:
    """Lattice points of ``[0, n]^2`` on ``line``, sorted."""
    a, b, c = line
    # direction (dx, dy) = (-b, a) is primitive; after sign rule dx <= 0 or dx == 0 < dy
    dx, dy = -b, a
    if dx < 0:
        dx, dy = -dx, -dy
    if dx == 0:
        # vertical line a*x = c with a == 1
        if a != 1 or not 0 <= c <= n:
            return []
        return [Point(c, y) for y in range(n + 1)]
    if dy == 0:
        if b != 1 or not 0 <= c <= n:
            return []
        return [Point(x, c) for x in range(n + 1)]
    # find the smallest x in [0, n] with a*x = c (mod |b|), then step by dx
    absb = abs(b)
    inv = pow(a % absb, -1, absb) if absb > 1 else 0
    x0 = (c * inv) % absb if absb > 1 else 0
    pts = []
    x = x0
    while x <= n:
        y, r = divmod(c - a * x, b)
        if r == 0 and 0 <= y <= n:
            pts.append(Point(x, y))
        x += dx
    return pts


def _line_bits(line: LineKey, n: int) -> int:
    m = n + 1
    bits = 0
    for x, y in points_on_line(line, n):
        bits |= 1 << (x * m + y)
    return bits


def spanned_lines(S: Solution) -> set[LineKey]:
    if len(S.vertices) < 2:
        raise InsufficientVerticesError("at least two vertices are needed to span a line")
    return {normalize_line(p, q) for p, q in combinations(S.vertices, 2)}


def coverage_by_lines(S: Solution) -> CoverageMask:
    bits = 0
    for line in spanned_lines(S):
        bits |= _line_bits(line, S.n)
    return CoverageMask(S.n, bits)


@lru_cache(maxsize=32)
def _direction_table(n: int) -> np.ndarray:
    """Direction id (up to sign) of every offset in [-n, n]^2; the zero offset gets -1."""
    r = np.arange(-n, n + 1, dtype=np.int64)
    dx, dy = np.meshgrid(r, r, indexing="ij")
    g = np.gcd(dx, dy)
    zero = g == 0
    g[zero] = 1
    dx, dy = dx // g, dy // g
    flip = (dx < 0) | ((dx == 0) & (dy < 0))
    dx = np.where(flip, -dx, dx)
    dy = np.where(flip, -dy, dy)
    ids = (dx * (2 * n + 1) + dy + n).astype(np.int32)
    ids[zero] = -1
    return ids


def coverage_by_directions(S: Solution) -> CoverageMask:
    """Coverage from the point of view of each lattice vertex.

    A vertex off the sublattice is covered when two sublattice vertices are
    seen from it along the same direction (up to sign).  Vectorized over all
    vertices, this beats line enumeration once the sublattice is large.
    """
    if len(S.vertices) < 2:
        raise InsufficientVerticesError("at least two vertices are needed to span a line")
    n = S.n
    m = n + 1
    table = _direction_table(n)
    V = np.array(S.vertices, dtype=np.intp)
    grid = np.arange(m * m, dtype=np.intp)
    px, py = grid // m, grid % m
    keys = table[V[None, :, 0] - px[:, None] + n, V[None, :, 1] - py[:, None] + n]
    keys.sort(axis=1)
    on_vertex = keys[:, 0] < 0
    repeated = (keys[:, 1:] == keys[:, :-1]).any(axis=1)
    covered = on_vertex | repeated
    bits = int.from_bytes(np.packbits(covered, bitorder="little").tobytes(), "little")
    return CoverageMask(n, bits)


def coverage(S: Solution) -> CoverageMask:
    t = len(S.vertices)
    if t >= 2 and t * (t - 1) // 2 > (S.n + 1) ** 2:
        return coverage_by_directions(S)
    return coverage_by_lines(S)


def is_cover(S: Solution) -> bool:
    return coverage(S).is_full()


def coverage_by_collinearity(S: Solution) -> CoverageMask:
    """Slow reference: test every lattice point against every vertex pair."""
    if len(S.vertices) < 2:
        raise InsufficientVerticesError("at least two vertices are needed to span a line")
    m = S.n + 1
    pairs = list(combinations(S.vertices, 2))
    bits = 0
    for x in range(m):
        for y in range(m):
            for (px, py), (qx, qy) in pairs:
                if (qx - px) * (y - py) - (qy - py) * (x - px) == 0:
                    bits |= 1 << (x * m + y)
                    break
    return CoverageMask(S.n, bits)


class LatticeIndex:
    """Precomputed pair masks for fast repeated coverage tests at a fixed ``n``.

    ``pair_mask[i][j]`` holds the coverage bits of the line through vertices with
    flat indices ``i`` and ``j`` (``pair_mask[i][i]`` is 0).
    """

    def __init__(self, n: int):
        self.n = n
        self.m = n + 1
        self.size = self.m * self.m
        self.full = (1 << self.size) - 1
        size = self.size
        masks = [[0] * size for _ in range(size)]
        for i in range(size):
            row = masks[i]
            pi = divmod(i, self.m)
            for j in range(i + 1, size):
                if row[j]:
                    continue
                line = normalize_line(pi, divmod(j, self.m))
                on = [x * self.m + y for x, y in points_on_line(line, n)]
                bits = 0
                for k in on:
                    bits |= 1 << k
                for u, v in combinations(on, 2):
                    masks[u][v] = bits
                    masks[v][u] = bits
        self.pair_mask = masks

    def cover_bits(self, indices) -> int:
        masks = self.pair_mask
        bits = 0
        idx = list(indices)
        for k, i in enumerate(idx):
            row = masks[i]
            for j in idx[k + 1:]:
                bits |= row[j]
        return bits

    def is_cover(self, indices) -> bool:
        return self.cover_bits(indices) == self.full


@lru_cache(maxsize=32)
def lattice_index(n: int) -> LatticeIndex:
    return LatticeIndex(n)


@lru_cache(maxsize=16)
def pair_mask_words(n: int) -> np.ndarray:
    """Pair masks as an array of shape (size, size, words) of uint64."""
    idx = lattice_index(n)
    words = (idx.size + 63) // 64
    out = np.zeros((idx.size, idx.size, words), dtype=np.uint64)
    low = (1 << 64) - 1
    for i, row in enumerate(idx.pair_mask):
        for j, bits in enumerate(row):
            for w in range(words):
                out[i, j, w] = (bits >> (64 * w)) & low
    return out
