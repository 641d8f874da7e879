"""Commutators [D, A], their per-point blocks, kernels and rotations.

For the default couplings, [D, pi(a)] only connects subspaces within one
column block, and the interior block at point l in the ordered basis
(e_{l-1,l}, e_{l,l}, e_{l+1,l}) is

    i*c * [[0,    a'_-, 0   ],
           [a'_-, 0,    a'_+],
           [0,    a'_+, 0   ]]

with the one-sided quotients a'_- = (a_l - a_{l-1})/dx and
a'_+ = (a_{l+1} - a_l)/dx.  Its null direction is
a'_+ e_{l-1,l} - a'_- e_{l+1,l} and its nonzero singular value is
nu = c*sqrt(|a'_-|^2 + |a'_+|^2), doubly degenerate.  Rotating the block
to the frame orthogonal to the kernel exhibits the off-diagonal i*nu
pair; for real samples the discarded third row and column vanish.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dirac import DiracOperator
from .errors import DegenerateBlock, NotBlockDiagonal, ShapeUnsupported
from .qmatrix import Shape
from .triple_core import AlgebraElement, TripleBasis, rep_diagonal

__all__ = [
    "CommutatorBlockSet",
    "commutator",
    "blocks",
    "block_kernel",
    "rotate_block",
    "rotation_frame",
    "synthetic_block",
    "global_limit_frame",
]


@dataclass(frozen=True, eq=False)
class CommutatorBlockSet:
    """One per-point block of [D, pi(a)] with derived quantities.

    `a_minus` / `a_plus` are None at the matching segment end.  `kernel`
    is the normalized null direction, or None when the whole block
    vanishes (constant samples) or at a boundary.  `rotated` is the 2x2
    restriction to the frame orthogonal to the kernel.
    """

    l: int
    block: np.ndarray
    a_minus: complex | None
    a_plus: complex | None
    nu: float
    interior: bool
    kernel: np.ndarray | None
    rotated: np.ndarray | None

    @property
    def derivatives(self) -> tuple[complex | None, complex | None]:
        return (self.a_minus, self.a_plus)


def commutator(dirac: DiracOperator, a: AlgebraElement) -> np.ndarray:
    """[D, pi(a)] = D pi(a) - pi(a) D.

    Entry (r, c) equals D_rc * (w_c - w_r) for the diagonal weights w of
    pi(a), identical to the dense products.
    """
    w = rep_diagonal(a, dirac.basis)
    return dirac.matrix * (w[None, :] - w[:, None])


def blocks(
    C: np.ndarray, dirac: DiracOperator, tol: float = 1e-12
) -> list[CommutatorBlockSet]:
    """Split a column-block-diagonal commutator into per-point blocks.

    Raises NotBlockDiagonal when C has weight above `tol` outside the
    column-block structure.
    """
    basis = dirac.basis
    same_col = basis.col_index[:, None] == basis.col_index[None, :]
    off = float(np.max(np.abs(np.where(same_col, 0.0, C))))
    if off > tol:
        raise NotBlockDiagonal(f"off-block residual {off:.3e} exceeds {tol:.1e}")

    c = dirac.scale
    out = []
    for l in range(basis.n):
        idx = basis.column_indices(l)
        block = np.ascontiguousarray(C[np.ix_(idx, idx)])
        interior = len(idx) == 3
        if interior:
            a_minus = complex(block[0, 1] / (1j * c))
            a_plus = complex(block[1, 2] / (1j * c))
        elif l == 0:
            # left boundary column holds (e_00, e_10): only a forward quotient
            a_minus = None
            a_plus = complex(block[0, 1] / (1j * c))
        else:
            a_minus = complex(block[0, 1] / (1j * c))
            a_plus = None
        nu = c * float(
            np.sqrt(
                sum(abs(d) ** 2 for d in (a_minus, a_plus) if d is not None)
            )
        )
        kernel = None
        rotated = None
        if interior:
            kernel = _kernel_vector(a_minus, a_plus)
            if kernel is not None:
                rotated = _rotate(block, a_minus, a_plus)
        out.append(
            CommutatorBlockSet(
                l=l,
                block=block,
                a_minus=a_minus,
                a_plus=a_plus,
                nu=nu,
                interior=interior,
                kernel=kernel,
                rotated=rotated,
            )
        )
    return out


def _normalize_phase(v: np.ndarray) -> np.ndarray:
    v = v / np.linalg.norm(v)
    lead = v[np.flatnonzero(np.abs(v) > 1e-14)[0]]
    return v * (lead.conjugate() / abs(lead))


def _kernel_vector(a_minus: complex, a_plus: complex) -> np.ndarray | None:
    if a_minus == 0 and a_plus == 0:
        return None
    return _normalize_phase(np.array([a_plus, 0.0, -a_minus], dtype=np.complex128))


def block_kernel(b: CommutatorBlockSet) -> np.ndarray | None:
    """Normalized null direction a'_+ e_{l-1,l} - a'_- e_{l+1,l}.

    Returns None when both derivatives vanish: the block is zero and the
    whole 3-space is annihilated.  Unit norm, leading component rotated
    to positive real phase.
    """
    if not b.interior:
        raise ValueError("kernel is defined for interior blocks only")
    return _kernel_vector(b.a_minus, b.a_plus)


def rotation_frame(b: CommutatorBlockSet) -> np.ndarray:
    """Orthonormal frame (columns): range direction, e_ll, kernel."""
    if not b.interior:
        raise ValueError("rotation is defined for interior blocks only")
    am, ap = b.a_minus, b.a_plus
    nu0 = np.sqrt(abs(am) ** 2 + abs(ap) ** 2)
    if nu0 == 0:
        raise DegenerateBlock(f"block at point {b.l} has no derivative content")
    u1 = np.array([np.conj(am), 0.0, np.conj(ap)], dtype=np.complex128) / nu0
    u2 = np.array([0.0, 1.0, 0.0], dtype=np.complex128)
    u3 = np.array([ap, 0.0, -am], dtype=np.complex128) / nu0
    return np.column_stack([u1, u2, u3])


def _rotate(block: np.ndarray, a_minus: complex, a_plus: complex) -> np.ndarray:
    nu0 = np.sqrt(abs(a_minus) ** 2 + abs(a_plus) ** 2)
    u1 = np.array([np.conj(a_minus), 0.0, np.conj(a_plus)], dtype=np.complex128) / nu0
    u2 = np.array([0.0, 1.0, 0.0], dtype=np.complex128)
    frame = np.column_stack([u1, u2])
    return frame.conj().T @ block @ frame


def rotate_block(b: CommutatorBlockSet) -> np.ndarray:
    """2x2 restriction [[0, i*nu], [i*nu, 0]] in the kernel-orthogonal frame.

    Exact off-diagonal equality holds for real samples; in general the
    entries have modulus bounded by nu and the discarded column is zero.
    Raises DegenerateBlock when both derivatives vanish.
    """
    if not b.interior:
        raise ValueError("rotation is defined for interior blocks only")
    if b.a_minus == 0 and b.a_plus == 0:
        raise DegenerateBlock(f"block at point {b.l} has no derivative content")
    return _rotate(b.block, b.a_minus, b.a_plus)


def synthetic_block(
    a_minus: complex, a_plus: complex, scale: float = 1.0, l: int = 0
) -> CommutatorBlockSet:
    """Interior block with prescribed derivatives, detached from a lattice."""
    am = complex(a_minus)
    ap = complex(a_plus)
    block = 1j * scale * np.array(
        [[0.0, am, 0.0], [am, 0.0, ap], [0.0, ap, 0.0]], dtype=np.complex128
    )
    nu = scale * float(np.sqrt(abs(am) ** 2 + abs(ap) ** 2))
    kernel = _kernel_vector(am, ap)
    rotated = _rotate(block, am, ap) if kernel is not None else None
    return CommutatorBlockSet(
        l=l,
        block=block,
        a_minus=am,
        a_plus=ap,
        nu=nu,
        interior=True,
        kernel=kernel,
        rotated=rotated,
    )


def global_limit_frame(
    basis: TripleBasis,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Normalized summed vectors (E^-, E^0, E^+) over all circle points.

    E^- collects the e_{l-1,l}, E^0 the e_{l,l}, E^+ the e_{l+1,l}.  Only
    meaningful on the circle, where every point block is interior.
    """
    if basis.q.shape is not Shape.CIRCLE:
        raise ShapeUnsupported("the summed limit frame needs uniform circle blocks")
    n = basis.n
    e_minus = np.zeros(basis.total_dim, dtype=np.complex128)
    e_zero = np.zeros(basis.total_dim, dtype=np.complex128)
    e_plus = np.zeros(basis.total_dim, dtype=np.complex128)
    for l in range(n):
        e_minus[basis.index((l - 1) % n, l)] = 1.0
        e_zero[basis.index(l, l)] = 1.0
        e_plus[basis.index((l + 1) % n, l)] = 1.0
    root = np.sqrt(n)
    return e_minus / root, e_zero / root, e_plus / root
