import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latticecover.errors import MismatchedLatticeError
from latticecover.geometry import Solution, is_cover
from latticecover.symmetry import (
    OPS,
    SymmetryOp,
    apply_symmetry,
    canonical_form,
    canonical_indices,
    classify,
    orbit_size,
    stabilizer,
)

from test_geometry import solutions


def test_rot180_example():
    S = Solution(2, [(0, 0), (0, 1)])
    assert apply_symmetry(SymmetryOp.ROT180, S) == Solution(2, [(2, 1), (2, 2)])


def test_identity_and_diagonal_fixed_point():
    S = Solution(4, [(0, 0), (1, 3), (3, 1), (2, 2)])
    assert apply_symmetry(SymmetryOp.IDENTITY, S) == S
    assert apply_symmetry(SymmetryOp.MIRROR_D, S) == S


@pytest.mark.parametrize(
    "op, image",
    [
        (SymmetryOp.ROT90, (2, 4)),
        (SymmetryOp.ROT270, (3, 1)),
        (SymmetryOp.MIRROR_X, (1, 3)),
        (SymmetryOp.MIRROR_Y, (4, 2)),
        (SymmetryOp.MIRROR_D, (2, 1)),
        (SymmetryOp.MIRROR_D2, (3, 4)),
    ],
)
def test_point_formulas(op, image):
    assert op.apply_point((1, 2), 5) == image


def test_group_table_is_dihedral():
    rots = [SymmetryOp.IDENTITY, SymmetryOp.ROT90, SymmetryOp.ROT180, SymmetryOp.ROT270]
    assert SymmetryOp.ROT90.compose(SymmetryOp.ROT90) is SymmetryOp.ROT180
    for a in OPS:
        assert a.compose(SymmetryOp.IDENTITY) is a
        assert any(a.compose(b) is SymmetryOp.IDENTITY for b in OPS)
        for b in OPS:
            for c in OPS:
                assert a.compose(b).compose(c) is a.compose(b.compose(c))
    for m in OPS:
        if m.is_mirror:
            assert m.compose(m) is SymmetryOp.IDENTITY
            # reflections conjugate rotations to their inverses
            r = SymmetryOp.ROT90
            assert m.compose(r).compose(m) is SymmetryOp.ROT270
    # the rotation subgroup is cyclic of order 4
    assert [rots[1].compose(r) for r in rots] == rots[1:] + rots[:1]
    # composition acts like function composition on points
    for a in OPS:
        for b in OPS:
            for p in [(0, 1), (2, 3), (4, 4)]:
                assert a.compose(b).apply_point(p, 4) == a.apply_point(b.apply_point(p, 4), 4)


def test_canonical_form_example():
    assert canonical_form(Solution(2, [(2, 1), (2, 2)])) == Solution(2, [(0, 0), (0, 1)])


def test_orbit_size_examples():
    assert orbit_size(Solution(3, [(0, 0), (0, 3), (3, 0), (3, 3)])) == 1
    assert orbit_size(Solution(2, [(0, 0)])) == 4
    asym = Solution(6, [(0, 0), (0, 1), (1, 3), (2, 5), (4, 2), (5, 6)])
    assert len({apply_symmetry(op, asym) for op in OPS}) == 8
    assert orbit_size(asym) == 8


def test_classify_examples():
    S = Solution(5, [(0, 1), (2, 3), (4, 4)])
    classes = classify([S, apply_symmetry(SymmetryOp.ROT90, S)])
    assert len(classes) == 1
    assert classes[0].representative == canonical_form(S)
    with pytest.raises(MismatchedLatticeError):
        classify([S, Solution(4, [(0, 0)])])


@settings(max_examples=150, deadline=None)
@given(solutions())
def test_canonical_form_properties(S):
    c = canonical_form(S)
    assert canonical_form(c) == c
    for op in OPS:
        img = apply_symmetry(op, S)
        assert canonical_form(img) == c
        assert is_cover(img) == is_cover(S)
    assert canonical_indices(S.n, S.indices()) == c.indices()
    k = orbit_size(S)
    assert 8 % k == 0
    assert k * len(stabilizer(S)) == 8


@settings(max_examples=60, deadline=None)
@given(solutions(max_n=5, max_t=5))
def test_orbit_sizes_add_up(S):
    closed = {apply_symmetry(op, S) for op in OPS}
    classes = classify(closed)
    assert sum(c.orbit_size for c in classes) == len(closed)
