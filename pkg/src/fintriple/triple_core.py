"""Hilbert space, grading and real structure over an intersection matrix.

There is one basis vector e_ij for every nonzero entry q_ij (the circle
and segment matrices only produce multiplicity 1).  Vectors are grouped
by the column index j, and inside a column the row index runs through
j-1, j, j+1, so the three vectors attached to a lattice point occupy a
contiguous index range and the per-point blocks of [D, A] are plain
slices.

Sampling convention: an algebra element is the vector of values
a_l = a(x_l) on the lattice points; the left representation multiplies
e_ij by a_i, the opposite (right) representation by a_j.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DimensionMismatch
from .qmatrix import IntersectionMatrix

__all__ = [
    "DEFAULT_SEED",
    "Subspace",
    "TripleBasis",
    "Grading",
    "RealStructure",
    "AlgebraElement",
    "build_basis",
    "grading",
    "real_structure",
    "represent",
    "represent_opposite",
    "rep_diagonal",
    "rep_diagonal_opposite",
    "random_elements",
]

DEFAULT_SEED = 1729

# row offsets i - j within one column, in storage order
_COLUMN_OFFSETS = (-1, 0, 1)


class Subspace(NamedTuple):
    i: int
    j: int
    dim: int


@dataclass(frozen=True, eq=False)
class TripleBasis:
    """Ordered basis of H = sum over nonzero q_ij of H_ij."""

    q: IntersectionMatrix
    subspaces: tuple[Subspace, ...]
    offsets: dict[tuple[int, int], int]
    total_dim: int
    row_index: np.ndarray
    col_index: np.ndarray

    @property
    def n(self) -> int:
        return self.q.n

    def index(self, i: int, j: int) -> int:
        """Position of e_ij in the global basis."""
        return self.offsets[(i, j)]

    def column_indices(self, j: int) -> np.ndarray:
        """Basis positions of the column-j block, in storage order."""
        return np.flatnonzero(self.col_index == j)

    def column_rows(self, j: int) -> tuple[int, ...]:
        """Row indices i of the column-j block, in storage order."""
        return tuple(int(self.row_index[k]) for k in self.column_indices(j))


def build_basis(q: IntersectionMatrix) -> TripleBasis:
    """Enumerate the subspaces of q in column-major, offset-sorted order."""
    subspaces: list[Subspace] = []
    offsets: dict[tuple[int, int], int] = {}
    for j in range(q.n):
        for off in _COLUMN_OFFSETS:
            i = q.neighbor(j, off)
            if i is None or q.entries[i, j] == 0:
                continue
            offsets[(i, j)] = len(subspaces)
            subspaces.append(Subspace(i, j, abs(int(q.entries[i, j]))))
    row_index = np.array([s.i for s in subspaces], dtype=np.int64)
    col_index = np.array([s.j for s in subspaces], dtype=np.int64)
    row_index.flags.writeable = False
    col_index.flags.writeable = False
    return TripleBasis(
        q=q,
        subspaces=tuple(subspaces),
        offsets=offsets,
        total_dim=sum(s.dim for s in subspaces),
        row_index=row_index,
        col_index=col_index,
    )


@dataclass(frozen=True, eq=False)
class Grading:
    """Chirality signs, one per basis vector: the sign of q_ij."""

    signs: np.ndarray

    def matrix(self) -> np.ndarray:
        return np.diag(self.signs.astype(np.float64))


def grading(basis: TripleBasis) -> Grading:
    signs = np.sign(basis.q.entries[basis.row_index, basis.col_index]).astype(np.int64)
    signs.flags.writeable = False
    return Grading(signs)


@dataclass(frozen=True, eq=False)
class RealStructure:
    """Antilinear involution J(c e_ij) = conj(c) e_ji."""

    pairing: np.ndarray
    antilinear: bool = True

    def apply(self, v: np.ndarray) -> np.ndarray:
        return np.conj(np.asarray(v, dtype=np.complex128))[self.pairing]

    def permutation_matrix(self) -> np.ndarray:
        """Dense P with J v = P conj(v); for oracle-style checks."""
        d = len(self.pairing)
        p = np.zeros((d, d))
        p[np.arange(d), self.pairing] = 1.0
        return p


def real_structure(basis: TripleBasis) -> RealStructure:
    pairing = np.empty(basis.total_dim, dtype=np.int64)
    for (i, j), k in basis.offsets.items():
        pairing[k] = basis.offsets[(j, i)]
    pairing.flags.writeable = False
    return RealStructure(pairing)


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    """Lattice samples of a (complex-valued) function on the n points."""

    samples: np.ndarray
    convention: str = "a[l] = a(x_l)"

    def __post_init__(self):
        samples = np.array(self.samples, dtype=np.complex128)
        if samples.ndim != 1:
            raise DimensionMismatch("algebra element samples must be a flat vector")
        samples.flags.writeable = False
        object.__setattr__(self, "samples", samples)

    def __len__(self) -> int:
        return len(self.samples)


def _check_length(a: AlgebraElement, basis: TripleBasis):
    if len(a) != basis.n:
        raise DimensionMismatch(
            f"algebra element has {len(a)} samples, lattice has {basis.n} points"
        )


def rep_diagonal(a: AlgebraElement, basis: TripleBasis) -> np.ndarray:
    """Diagonal weights of the left action: a_i on e_ij."""
    _check_length(a, basis)
    return a.samples[basis.row_index]


def rep_diagonal_opposite(a: AlgebraElement, basis: TripleBasis) -> np.ndarray:
    """Diagonal weights of the opposite action J pi(a*) J: a_j on e_ij."""
    _check_length(a, basis)
    return a.samples[basis.col_index]


def represent(a: AlgebraElement, basis: TripleBasis) -> np.ndarray:
    """Dense matrix of the left multiplication action."""
    return np.diag(rep_diagonal(a, basis))


def represent_opposite(a: AlgebraElement, basis: TripleBasis) -> np.ndarray:
    """Dense matrix of the opposite-algebra action; scalar on each column block."""
    return np.diag(rep_diagonal_opposite(a, basis))


def random_elements(
    n: int, count: int = 8, seed: int = DEFAULT_SEED
) -> list[AlgebraElement]:
    """Deterministic pseudorandom complex sample vectors for property checks."""
    rng = np.random.default_rng(seed)
    return [
        AlgebraElement(rng.standard_normal(n) + 1j * rng.standard_normal(n))
        for _ in range(count)
    ]
