import pytest

from latticecover.errors import CapacityError, OutOfRangeError
from latticecover.exact import (
    branches,
    corner_anchored_covers,
    lower_bound,
    naive_covers,
    search_covers,
    solve_exact,
    t_min,
)
from latticecover.geometry import Solution, is_cover
from latticecover.symmetry import canonical_form, classify


@pytest.mark.parametrize("n, lb", [(1, 3), (2, 3), (3, 4), (5, 4), (6, 5), (14, 6)])
def test_lower_bound(n, lb):
    assert lower_bound(n) == lb
    assert lb * (lb - 1) // 2 * (n + 1) >= (n + 1) ** 2
    assert (lb - 1) * (lb - 2) // 2 * (n + 1) < (n + 1) ** 2


def test_n1_needs_all_four_corners():
    # every line meets the 2x2 lattice in at most two points
    res = t_min(1)
    assert res.t_min == 4
    assert len(res.classes) == 1


@pytest.mark.parametrize("n, t, classes", [(2, 4, 2), (3, 4, 2), (5, 6, 4)])
def test_small_minima(n, t, classes):
    res = t_min(n)
    assert res.t_min == t
    assert res.proven
    assert len(res.classes) == classes
    for c in res.classes:
        assert is_cover(c.representative)
        assert canonical_form(c.representative) == c.representative


def test_no_cover_below_minimum():
    assert search_covers(3, 3)[0] == set()
    assert search_covers(5, 5)[0] == set()


@pytest.mark.parametrize("n, t", [(1, 4), (2, 3), (2, 4), (2, 5), (3, 4), (3, 5)])
def test_pruned_search_matches_naive_oracle(n, t):
    naive = naive_covers(n, t)
    pruned, _ = search_covers(n, t)
    assert pruned <= naive
    sols = lambda cs: {c.representative for c in classify(Solution.from_indices(n, x) for x in cs)}
    assert sols(pruned) == sols(naive)
    unpruned, _ = search_covers(n, t, symmetry_prune=False)
    assert unpruned == naive


def test_branches_cover_every_orbit():
    reps = [f for f, _ in branches(4)]
    # a 5x5 lattice has 6 point orbits under the square group
    assert len(reps) == 6
    assert len(branches(4, symmetry_prune=False)) == 25


def test_parallel_matches_serial():
    a, na = search_covers(4, 6, jobs=1)
    b, nb = search_covers(4, 6, jobs=2)
    assert a == b and na == nb


def test_capacity_and_range_errors():
    with pytest.raises(CapacityError):
        t_min(8)
    with pytest.raises(OutOfRangeError):
        search_covers(0, 2)
    with pytest.raises(OutOfRangeError):
        search_covers(2, 10)
    assert t_min(3, cap=3).t_min == 4


def test_solve_exact_fixed_t():
    classes = solve_exact(2, 4)
    assert len(classes) == 2
    assert [len(c.representative) for c in classes] == [4, 4]
    # sorted by canonical representative
    reps = [c.representative.indices() for c in classes]
    assert reps == sorted(reps)


def test_corner_anchored_covers_n3():
    covers = corner_anchored_covers(3, 4)
    assert covers == [Solution(3, [(0, 0), (0, 3), (3, 0), (3, 3)])]
