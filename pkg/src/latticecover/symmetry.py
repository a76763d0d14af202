"""The eight symmetries of the square acting on vertex sets.

Names follow the crystallographic 4mm convention: ``mirror_x`` flips along
the horizontal mid axis (y -> n-y), ``mirror_y`` along the vertical one,
``mirror_d`` transposes about the main diagonal and ``mirror_d2`` reflects in
the secondary diagonal.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .errors import MismatchedLatticeError
from .geometry import Point, Solution


class SymmetryOp(enum.Enum):
    IDENTITY = "identity"
    ROT90 = "rot90"
    ROT180 = "rot180"
    ROT270 = "rot270"
    MIRROR_X = "mirror_x"
    MIRROR_Y = "mirror_y"
    MIRROR_D = "mirror_d"
    MIRROR_D2 = "mirror_d2"

    def apply_point(self, p, n: int) -> Point:
        x, y = p
        if self is SymmetryOp.IDENTITY:
            return Point(x, y)
        if self is SymmetryOp.ROT90:
            return Point(y, n - x)
        if self is SymmetryOp.ROT180:
            return Point(n - x, n - y)
        if self is SymmetryOp.ROT270:
            return Point(n - y, x)
        if self is SymmetryOp.MIRROR_X:
            return Point(x, n - y)
        if self is SymmetryOp.MIRROR_Y:
            return Point(n - x, y)
        if self is SymmetryOp.MIRROR_D:
            return Point(y, x)
        return Point(n - y, n - x)

    def compose(self, other: "SymmetryOp") -> "SymmetryOp":
        """The op equal to applying ``other`` first, then ``self``."""
        return _COMPOSITION[self, other]

    @property
    def is_mirror(self) -> bool:
        return self.value.startswith("mirror")


OPS: tuple[SymmetryOp, ...] = tuple(SymmetryOp)
MIRRORS: tuple[SymmetryOp, ...] = tuple(op for op in OPS if op.is_mirror)


def _build_composition():
    # an op is identified by its action on two generic points of a large lattice
    n = 7
    probes = ((1, 2), (3, 0))
    sig = {tuple(op.apply_point(p, n) for p in probes): op for op in OPS}
    table = {}
    for a in OPS:
        for b in OPS:
            img = tuple(a.apply_point(b.apply_point(p, n), n) for p in probes)
            table[a, b] = sig[img]
    return table


_COMPOSITION = _build_composition()


@dataclass(frozen=True)
class CongruenceClass:
    representative: Solution
    orbit_size: int


def apply_symmetry(op: SymmetryOp, S: Solution) -> Solution:
    return Solution(S.n, (op.apply_point(p, S.n) for p in S.vertices))


def images(S: Solution) -> list[tuple[Point, ...]]:
    """Sorted vertex tuples of all eight images of ``S`` (with repetition)."""
    n = S.n
    return [tuple(sorted(op.apply_point(p, n) for p in S.vertices)) for op in OPS]


def canonical_form(S: Solution) -> Solution:
    return Solution(S.n, min(images(S)))


def orbit_size(S: Solution) -> int:
    return len(set(images(S)))


def stabilizer(S: Solution) -> list[SymmetryOp]:
    own = S.vertices
    return [op for op, img in zip(OPS, images(S)) if img == own]


@lru_cache(maxsize=32)
def index_permutations(n: int) -> tuple[tuple[int, ...], ...]:
    """For each op, the map from flat vertex index to flat image index."""
    m = n + 1
    perms = []
    for op in OPS:
        perm = []
        for i in range(m * m):
            x, y = op.apply_point(divmod(i, m), n)
            perm.append(x * m + y)
        perms.append(tuple(perm))
    return tuple(perms)


def canonical_indices(n: int, indices: Iterable[int]) -> tuple[int, ...]:
    """Index-level canonical form; agrees with :func:`canonical_form` because the
    flat layout ``x*(n+1)+y`` orders vertices lexicographically."""
    idx = tuple(indices)
    return min(tuple(sorted(perm[i] for i in idx)) for perm in index_permutations(n))


def classify(solutions: Iterable[Solution]) -> list[CongruenceClass]:
    solutions = list(solutions)
    if not solutions:
        return []
    n = solutions[0].n
    reps = set()
    for S in solutions:
        if S.n != n:
            raise MismatchedLatticeError(f"cannot classify solutions for n={n} and n={S.n} together")
        reps.add(canonical_indices(n, S.indices()))
    classes = []
    for rep in sorted(reps):
        S = Solution.from_indices(n, rep)
        classes.append(CongruenceClass(S, orbit_size(S)))
    return classes
