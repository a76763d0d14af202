from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latticecover.errors import DegeneratePairError, InsufficientVerticesError, OutOfRangeError
from latticecover.geometry import (
    LineKey,
    Solution,
    coverage,
    coverage_by_collinearity,
    is_cover,
    lattice_index,
    normalize_line,
    points_on_line,
    spanned_lines,
)


@st.composite
def solutions(draw, max_n=8, min_t=2, max_t=8):
    n = draw(st.integers(1, max_n))
    size = (n + 1) ** 2
    t = draw(st.integers(min_t, min(max_t, size)))
    idx = draw(st.lists(st.integers(0, size - 1), min_size=t, max_size=t, unique=True))
    return Solution.from_indices(n, idx)


@pytest.mark.parametrize(
    "p, q, key",
    [
        ((0, 0), (2, 2), (1, -1, 0)),
        ((0, 2), (2, 0), (1, 1, 2)),
        ((0, 1), (2, 0), (1, 2, 2)),
        ((3, 1), (3, 7), (1, 0, 3)),
        ((0, 4), (5, 4), (0, 1, 4)),
    ],
)
def test_normalize_line_examples(p, q, key):
    assert normalize_line(p, q) == key
    assert normalize_line(q, p) == key


def test_normalize_line_rejects_single_point():
    with pytest.raises(DegeneratePairError):
        normalize_line((1, 1), (1, 1))


@pytest.mark.parametrize(
    "line, n, expected",
    [
        ((1, -1, 0), 3, [(0, 0), (1, 1), (2, 2), (3, 3)]),
        ((1, 2, 2), 2, [(0, 1), (2, 0)]),
        ((0, 1, 5), 3, []),
        ((1, 0, 2), 2, [(2, 0), (2, 1), (2, 2)]),
    ],
)
def test_points_on_line_examples(line, n, expected):
    assert points_on_line(LineKey(*line), n) == expected


def test_coverage_examples():
    corners2 = Solution(2, [(0, 0), (0, 2), (2, 0), (2, 2)])
    assert coverage(corners2).count() == 9
    corners3 = Solution(3, [(0, 0), (0, 3), (3, 0), (3, 3)])
    assert coverage(corners3).is_full()
    diag = coverage(Solution(2, [(0, 0), (1, 1)]))
    assert diag.bits == (1 << 0) | (1 << 4) | (1 << 8)
    assert set(diag.uncovered()) == {(x, y) for x in range(3) for y in range(3)} - {(0, 0), (1, 1), (2, 2)}


def test_mask_layout_is_x_major():
    mask = coverage(Solution(3, [(1, 0), (1, 3)]))
    assert mask.bits == sum(1 << (1 * 4 + y) for y in range(4))
    assert (1, 2) in mask and (2, 1) not in mask


def test_is_cover_examples():
    assert is_cover(Solution(3, [(0, 0), (0, 3), (3, 0), (3, 3)]))
    assert not is_cover(Solution(2, [(0, 0), (1, 1), (2, 2)]))
    row12 = [(0, 0), (0, 3), (2, 12), (3, 6), (3, 9), (6, 3), (6, 12), (9, 6), (9, 9), (12, 0), (12, 3)]
    assert is_cover(Solution(12, row12))


def test_spanned_lines_examples():
    assert len(spanned_lines(Solution(2, [(0, 0), (1, 1), (2, 2)]))) == 1
    assert len(spanned_lines(Solution(2, [(0, 0), (0, 2), (2, 0)]))) == 3
    assert len(spanned_lines(Solution(2, [(0, 0), (0, 2), (2, 0), (2, 2)]))) == 6


def test_fewer_than_two_vertices_rejected():
    with pytest.raises(InsufficientVerticesError):
        coverage(Solution(2, [(1, 1)]))
    with pytest.raises(InsufficientVerticesError):
        spanned_lines(Solution(2, []))


def test_solution_validation():
    with pytest.raises(OutOfRangeError):
        Solution(2, [(0, 3)])
    with pytest.raises(OutOfRangeError):
        Solution(2, [(0, 1), (0, 1)])
    S = Solution(3, [(2, 1), (0, 3), (0, 0)])
    assert S.vertices == ((0, 0), (0, 3), (2, 1))
    assert Solution.from_indices(3, S.indices()) == S


@settings(max_examples=200, deadline=None)
@given(solutions())
def test_line_properties(S):
    for p, q in combinations(S.vertices, 2):
        key = normalize_line(p, q)
        assert key == normalize_line(q, p)
        a, b, c = key
        assert a * p[0] + b * p[1] == c and a * q[0] + b * q[1] == c
        on = points_on_line(key, S.n)
        assert p in on and q in on
        assert on == sorted(on)
        brute = [(x, y) for x in range(S.n + 1) for y in range(S.n + 1) if a * x + b * y == c]
        assert on == brute


def _has_collinear_triple(S):
    for p, q, r in combinations(S.vertices, 3):
        if (q[0] - p[0]) * (r[1] - p[1]) == (q[1] - p[1]) * (r[0] - p[0]):
            return True
    return False


@settings(max_examples=200, deadline=None)
@given(solutions(max_t=8))
def test_line_count_bound(S):
    t = len(S)
    k = len(spanned_lines(S))
    assert k <= t * (t - 1) // 2
    assert (k == t * (t - 1) // 2) == (not _has_collinear_triple(S))


@settings(max_examples=150, deadline=None)
@given(solutions(), st.data())
def test_coverage_monotone(S, data):
    size = (S.n + 1) ** 2
    extra = data.draw(st.lists(st.integers(0, size - 1), max_size=4))
    bigger = Solution.from_indices(S.n, set(S.indices()) | set(extra))
    small, big = coverage(S).bits, coverage(bigger).bits
    assert small & ~big == 0


@settings(max_examples=150, deadline=None)
@given(solutions())
def test_coverage_matches_collinearity_oracle(S):
    assert coverage(S) == coverage_by_collinearity(S)
    assert lattice_index(S.n).cover_bits(S.indices()) == coverage(S).bits
