"""Intersection matrices for the discrete circle and segment.

A lattice with n points is encoded by the symmetric integer matrix q
with -1 on the diagonal, +1 between nearest neighbours, and a corner
entry b in the (0, n-1) slots: b = 1 closes the lattice into a circle,
b = 0 leaves a segment.  Whether q is invertible depends on n alone
(period 6 for the circle, period 3 for the segment), so determinants
and kernels are computed exactly with integer and rational arithmetic,
never in floating point.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import EmptySelection, SizeTooSmall

__all__ = [
    "Shape",
    "IntersectionMatrix",
    "build_q",
    "determinant",
    "det_sequence",
    "kernel_dimension",
    "select_nondegenerate",
]


class Shape(enum.Enum):
    """Lattice topology; fixes the corner entry b of q."""

    CIRCLE = "circle"
    SEGMENT = "segment"

    @property
    def corner(self) -> int:
        return 1 if self is Shape.CIRCLE else 0

    @property
    def min_size(self) -> int:
        # below this the nearest-neighbour pattern is ill-defined
        return 3 if self is Shape.CIRCLE else 2

    def is_degenerate(self, n: int) -> bool:
        """True when det(q) = 0 at this size (n = 0 mod 6 / n = 2 mod 3)."""
        if self is Shape.CIRCLE:
            return n % 6 == 0
        return n % 3 == 2

    def spacing(self, n: int) -> float:
        """Lattice spacing: circumference 2*pi for the circle, unit segment."""
        if self is Shape.CIRCLE:
            return 2.0 * np.pi / n
        return 1.0 / (n - 1)

    def points(self, n: int) -> np.ndarray:
        """Sample coordinates x_l."""
        if self is Shape.CIRCLE:
            return 2.0 * np.pi * np.arange(n) / n
        return np.linspace(0.0, 1.0, n)

    def neighbor(self, l: int, step: int, n: int) -> int | None:
        """Lattice point l + step, wrapping on the circle, None off a segment end."""
        m = l + step
        if self is Shape.CIRCLE:
            return m % n
        return m if 0 <= m < n else None


@dataclass(frozen=True, eq=False)
class IntersectionMatrix:
    """The integer matrix q together with its shape metadata."""

    shape: Shape
    n: int
    entries: np.ndarray

    def __post_init__(self):
        self.entries.flags.writeable = False

    def neighbor(self, l: int, step: int) -> int | None:
        return self.shape.neighbor(l, step, self.n)


def build_q(shape: Shape, n: int) -> IntersectionMatrix:
    """Assemble q for the given shape and size.

    Raises SizeTooSmall below n = 3 (circle) or n = 2 (segment).  Entries
    are set, not accumulated: where the corner slot of a small circle
    coincides with a neighbour slot the neighbour value +1 stands, so the
    n = 3 circle matrix has all off-diagonal entries +1, never 2.
    """
    if n < shape.min_size:
        raise SizeTooSmall(f"{shape.value} needs n >= {shape.min_size}, got {n}")
    q = -np.eye(n, dtype=np.int64)
    idx = np.arange(n - 1)
    q[idx, idx + 1] = 1
    q[idx + 1, idx] = 1
    if shape.corner and q[0, n - 1] == 0:
        q[0, n - 1] = shape.corner
        q[n - 1, 0] = shape.corner
    return IntersectionMatrix(shape, n, q)


def determinant(q: IntersectionMatrix) -> int:
    """det(q) in exact integer arithmetic."""
    return _bareiss_det(q.entries)


def det_sequence(shape: Shape, n_max: int) -> list[int]:
    """det(q) for every admissible size n <= n_max, exactly."""
    if n_max < shape.min_size:
        raise SizeTooSmall(
            f"n_max = {n_max} is below the minimum size {shape.min_size} for {shape.value}"
        )
    return [determinant(build_q(shape, n)) for n in range(shape.min_size, n_max + 1)]


def kernel_dimension(q: IntersectionMatrix) -> int:
    """dim ker(q) over the rationals (exact rank-nullity)."""
    return q.n - _rational_rank(q.entries)


def select_nondegenerate(shape: Shape, n_min: int, n_max: int) -> list[int]:
    """All sizes in [n_min, n_max] with det(q) != 0.

    Raises EmptySelection when no admissible size in the range survives.
    """
    if n_min > n_max:
        raise ValueError(f"n_min = {n_min} exceeds n_max = {n_max}")
    lo = max(n_min, shape.min_size)
    keep = [n for n in range(lo, n_max + 1) if determinant(build_q(shape, n)) != 0]
    if not keep:
        raise EmptySelection(
            f"no non-degenerate {shape.value} size in [{n_min}, {n_max}]"
        )
    return keep


def _bareiss_det(entries: np.ndarray) -> int:
    # Fraction-free elimination: every division below is exact over the
    # integers, intermediate entries are minors of the input.
    a = [[int(x) for x in row] for row in entries]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        piv = next((r for r in range(k, n) if a[r][k] != 0), None)
        if piv is None:
            return 0
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        row_k = a[k]
        akk = row_k[k]
        for i in range(k + 1, n):
            row_i = a[i]
            aik = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = akk
    return sign * a[-1][-1]


def _rational_rank(entries: np.ndarray) -> int:
    a = [[Fraction(int(x)) for x in row] for row in entries]
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    rank = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, nrows) if a[r][col]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = 1 / a[rank][col]
        prow = [x * inv for x in a[rank]]
        a[rank] = prow
        for r in range(rank + 1, nrows):
            f = a[r][col]
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], prow)]
        rank += 1
    return rank
