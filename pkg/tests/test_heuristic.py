import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latticecover.bounds import symmetric_design
from latticecover.errors import InsufficientVerticesError, InvalidInputError
from latticecover.exact import t_min
from latticecover.geometry import Solution, is_cover
from latticecover.heuristic import (
    MIRROR_INDICES,
    SearchConfig,
    best_upper_bound_search,
    cover_batch,
    improve,
    mirror_units,
    random_search,
    rng_stream,
    sample_candidates,
    usable_mirrors,
    with_target,
)
from latticecover.symmetry import OPS, apply_symmetry


def test_config_validation():
    with pytest.raises(InsufficientVerticesError):
        SearchConfig(target_t=1)
    with pytest.raises(ValueError):
        SearchConfig(target_t=4, budget=0)
    with pytest.raises(ValueError):
        SearchConfig(strategy="annealing", target_t=4)
    cfg = SearchConfig()
    assert (cfg.budget, cfg.restarts, cfg.improve_rounds) == (1_000_000, 16, 10_000)
    assert with_target(cfg, 9).target_t == 9


def test_rng_streams_reproducible_and_distinct():
    a = rng_stream(7, 0).integers(0, 2**32, 8)
    b = rng_stream(7, 0).integers(0, 2**32, 8)
    c = rng_stream(7, 1).integers(0, 2**32, 8)
    assert (a == b).all()
    assert not (a == c).all()


@pytest.mark.parametrize("n", [2, 3, 6, 7])
def test_mirror_units_partition_lattice(n):
    size = (n + 1) ** 2
    for k in MIRROR_INDICES:
        units, sizes = mirror_units(n, k)
        seen = [i for u, s in zip(units, sizes) for i in u[:s]]
        assert sorted(seen) == list(range(size))


def test_usable_mirrors():
    # every mirror of an odd lattice has an axis only on the diagonals,
    # but a free vertex makes odd sizes possible on all four
    assert len(usable_mirrors(7, 8)) == 4
    assert len(usable_mirrors(7, 9)) == 4
    assert len(usable_mirrors(1, 4)) == 4


@pytest.mark.parametrize("n, t", [(4, 6), (7, 8), (8, 8), (10, 10), (11, 10)])
def test_symmetric_candidates_are_mirror_invariant(n, t):
    cand, axes = sample_candidates(n, "symmetric-pairs", t, rng_stream(3), 300)
    for row, k in zip(cand, axes):
        S = Solution.from_indices(n, row.tolist())
        assert len(S) == t
        assert apply_symmetry(OPS[k], S) == S


@pytest.mark.parametrize("n, t", [(5, 7), (11, 11)])
def test_odd_candidates_off_axis_by_at_most_one(n, t):
    cand, axes = sample_candidates(n, "symmetric-pairs", t, rng_stream(3), 300)
    for row, k in zip(cand, axes):
        S = Solution.from_indices(n, row.tolist())
        assert len(S) == t
        assert len(set(apply_symmetry(OPS[k], S).vertices) - set(S.vertices)) <= 1


def test_uniform_candidates_distinct():
    cand, axes = sample_candidates(6, "uniform-random", 7, rng_stream(1), 500)
    assert (axes == -1).all()
    assert all(len(set(r)) == 7 for r in cand.tolist())


def test_sample_rejects_tiny_sets():
    with pytest.raises(InsufficientVerticesError):
        sample_candidates(2, "uniform-random", 1, rng_stream(0), 1)


@settings(max_examples=20, deadline=None)
@given(st.integers(2, 9), st.integers(0, 2**32))
def test_cover_batch_matches_is_cover(n, seed):
    rng = rng_stream(seed)
    t = min(2 * n, (n + 1) ** 2)
    for strategy in ("uniform-random", "symmetric-pairs"):
        cand, _ = sample_candidates(n, strategy, t, rng, 64)
        ok = cover_batch(n, cand)
        assert ok.tolist() == [is_cover(Solution.from_indices(n, r.tolist())) for r in cand]


@pytest.mark.parametrize("n, t", [(7, 8), (9, 8)])
def test_random_search_finds_cover(n, t):
    S = random_search(n, SearchConfig(target_t=t))
    assert S is not None and len(S) == t and is_cover(S)


def test_random_search_failure_is_none():
    # a 5x5 lattice needs six vertices
    assert random_search(4, SearchConfig(target_t=5, budget=5000)) is None


def test_improve_never_grows():
    S = symmetric_design(4)
    out = improve(S, 2000, seed=1)
    assert len(out) <= 8 and is_cover(out)
    assert len(improve(out, 0)) == len(improve(improve(out, 0), 0))


def test_improve_keeps_minimum():
    rep = t_min(4).classes[0].representative
    assert len(improve(rep, 500, seed=3)) == 6


def test_improve_rejects_non_cover():
    with pytest.raises(InvalidInputError):
        improve(Solution(3, [(0, 0), (1, 1)]))


def test_search_reproducible_across_jobs():
    cfg = SearchConfig(target_t=8, budget=20_000, restarts=3, improve_rounds=200)
    a = best_upper_bound_search(7, cfg, jobs=1)
    b = best_upper_bound_search(7, cfg, jobs=1)
    c = best_upper_bound_search(7, cfg, jobs=2)
    assert a == b == c
    assert a[0] <= 8 and is_cover(a[1])


@pytest.mark.parametrize("n", [2, 5, 12])
def test_search_never_worse_than_design(n):
    cfg = SearchConfig(target_t=2, budget=2000, restarts=1, improve_rounds=100)
    t, S = best_upper_bound_search(n, cfg)
    assert t == len(S) <= 2 * n
    assert is_cover(S)
