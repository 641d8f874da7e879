"""Intersection-matrix construction, exact determinants and kernels."""

import numpy as np
import pytest

from fintriple import (
    EmptySelection,
    Shape,
    SizeTooSmall,
    build_q,
    det_sequence,
    determinant,
    kernel_dimension,
    select_nondegenerate,
)

CIRCLE_PATTERN = [4, -3, 1, 0, 1, -3]  # det at n = 3, 4, 5, 6, 7, 8, then cyclic
SEGMENT_PATTERN = [0, 1, -1]  # det at n = 2, 3, 4, then cyclic


def segment_det_recurrence(n: int) -> int:
    # d_n = -d_{n-1} - d_{n-2} for the tridiagonal matrix, d_1 = -1, d_2 = 0
    d_prev, d = -1, 0
    for _ in range(n - 2):
        d_prev, d = d, -d - d_prev
    return d if n >= 2 else d_prev


def circle_det_recurrence(n: int) -> int:
    # corner expansion of the periodic tridiagonal determinant
    return segment_det_recurrence(n) - segment_det_recurrence(n - 2) - 2 * (-1) ** n


def fraction_det(entries) -> int:
    # plain fraction-based Gaussian elimination, independent of Bareiss
    from fractions import Fraction

    a = [[Fraction(int(x)) for x in row] for row in entries]
    n = len(a)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] * inv
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    assert det.denominator == 1
    return int(det)


def test_segment_3_matrix():
    q = build_q(Shape.SEGMENT, 3)
    assert q.entries.tolist() == [[-1, 1, 0], [1, -1, 1], [0, 1, -1]]


def test_circle_3_matrix_all_plus_one_off_diagonal():
    q = build_q(Shape.CIRCLE, 3)
    assert q.entries.tolist() == [[-1, 1, 1], [1, -1, 1], [1, 1, -1]]


def test_circle_5_has_corner_entries():
    q = build_q(Shape.CIRCLE, 5)
    assert q.entries[0, 4] == 1 and q.entries[4, 0] == 1
    assert q.entries[0, 2] == 0


@pytest.mark.parametrize("shape", list(Shape))
def test_q_is_symmetric_with_minus_one_diagonal(shape):
    for n in range(shape.min_size, 12):
        q = build_q(shape, n).entries
        assert np.array_equal(q, q.T)
        assert np.all(np.diag(q) == -1)


def test_circle_row_sums_are_plus_one():
    for n in range(3, 20):
        q = build_q(Shape.CIRCLE, n).entries
        assert np.all(q.sum(axis=1) == 1)


@pytest.mark.parametrize(
    "shape,n",
    [(Shape.CIRCLE, 2), (Shape.SEGMENT, 1), (Shape.SEGMENT, 0)],
)
def test_too_small_sizes_rejected(shape, n):
    with pytest.raises(SizeTooSmall):
        build_q(shape, n)


def test_det_sequence_circle_to_8():
    assert det_sequence(Shape.CIRCLE, 8) == [4, -3, 1, 0, 1, -3]


def test_det_sequence_segment_to_7():
    assert det_sequence(Shape.SEGMENT, 7) == [0, 1, -1, 0, 1, -1]


def test_det_sequence_segment_minimal():
    assert det_sequence(Shape.SEGMENT, 2) == [0]


def test_det_sequence_rejects_range_below_minimum():
    with pytest.raises(SizeTooSmall):
        det_sequence(Shape.CIRCLE, 2)


def test_circle_determinants_periodic_up_to_60():
    dets = det_sequence(Shape.CIRCLE, 60)
    for offset, det in enumerate(dets):
        n = 3 + offset
        assert det == CIRCLE_PATTERN[(n - 3) % 6]
        assert det == circle_det_recurrence(n)
    # first zero at n = 6, then every sixth size
    assert [3 + i for i, d in enumerate(dets) if d == 0] == list(range(6, 61, 6))


def test_segment_determinants_periodic_up_to_60():
    dets = det_sequence(Shape.SEGMENT, 60)
    for offset, det in enumerate(dets):
        n = 2 + offset
        assert det == SEGMENT_PATTERN[(n - 2) % 3]
        assert det == segment_det_recurrence(n)
    assert [2 + i for i, d in enumerate(dets) if d == 0] == list(range(2, 61, 3))


def test_segment_recurrence_holds_on_the_sequence():
    dets = det_sequence(Shape.SEGMENT, 30)
    for k in range(2, len(dets)):
        assert dets[k] == -dets[k - 1] - dets[k - 2]


def test_kernel_dimension_examples():
    assert kernel_dimension(build_q(Shape.CIRCLE, 6)) == 2
    assert kernel_dimension(build_q(Shape.SEGMENT, 5)) == 1
    assert kernel_dimension(build_q(Shape.CIRCLE, 5)) == 0


@pytest.mark.parametrize("shape", list(Shape))
def test_kernel_dimension_zero_iff_det_nonzero(shape):
    for n in range(shape.min_size, 30):
        q = build_q(shape, n)
        assert (kernel_dimension(q) == 0) == (determinant(q) != 0)
        assert shape.is_degenerate(n) == (determinant(q) == 0)


def test_select_nondegenerate_circle():
    assert select_nondegenerate(Shape.CIRCLE, 3, 12) == [3, 4, 5, 7, 8, 9, 10, 11]


def test_select_nondegenerate_segment():
    assert select_nondegenerate(Shape.SEGMENT, 2, 8) == [3, 4, 6, 7]


def test_select_nondegenerate_empty():
    with pytest.raises(EmptySelection):
        select_nondegenerate(Shape.CIRCLE, 6, 6)


def test_select_nondegenerate_rejects_bad_range():
    with pytest.raises(ValueError):
        select_nondegenerate(Shape.CIRCLE, 9, 3)


def test_bareiss_agrees_with_fraction_elimination_on_random_matrices():
    rng = np.random.default_rng(99)
    for _ in range(40):
        n = int(rng.integers(1, 7))
        m = rng.integers(-4, 5, size=(n, n))
        from fintriple.qmatrix import _bareiss_det

        assert _bareiss_det(m) == fraction_det(m)


def test_rational_rank_agrees_with_numpy_on_random_matrices():
    rng = np.random.default_rng(123)
    from fintriple.qmatrix import _rational_rank

    for _ in range(40):
        n = int(rng.integers(1, 7))
        m = rng.integers(-3, 4, size=(n, n))
        assert _rational_rank(m) == np.linalg.matrix_rank(m.astype(float))
