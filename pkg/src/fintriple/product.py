"""Tensor products of two triples: D2 = D (x) 1 + gamma (x) D.

The product of two even triples keeps gamma2 = gamma (x) gamma and
J2 = J (x) J.  The commutator obeys the twisted Leibniz rule

    [D2, pi(a) (x) pi(b)]
        = [D, pi(a)] (x) pi(b)  +  (gamma pi(a)) (x) [D, pi(b)]

exactly, at any lattice size.  Projecting the per-point 9x9 block of the
product commutator onto the tensor product of the per-factor limit
frames {range direction, e_ll} gives two 4x4 generators whose
anticommutator shrinks with the spacing: the second term approaches an
independent Pauli direction.

Full dense product matrices are only assembled by `tensor_triple` (for
axiom checks and Leibniz tests at small sizes); the limit studies walk
the per-point blocks of the factors and never form the product matrix.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .calculus import blocks, commutator
from .dirac import (
    AxiomReport,
    Normalization,
    SpectralTriple,
    axiom_report,
)
from .errors import AxiomFailure, DegenerateBlock, ShapeUnsupported
from .functions import SampleFunction, sample
from .qmatrix import Shape
from .triple_core import (
    DEFAULT_SEED,
    AlgebraElement,
    random_elements,
    rep_diagonal,
    rep_diagonal_opposite,
)

__all__ = [
    "ProductTriple",
    "PointFrame2D",
    "LimitRecord",
    "tensor_triple",
    "product_commutator",
    "leibniz_residual",
    "limit_frame_2d",
    "limit_study",
]

_SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=np.complex128)
_SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=np.complex128)
_ID2 = np.eye(2, dtype=np.complex128)


@dataclass(frozen=True, eq=False)
class ProductTriple:
    """Dense tensor product of two validated triples."""

    factor1: SpectralTriple
    factor2: SpectralTriple
    d2: np.ndarray
    gamma2: np.ndarray
    j2_pairing: np.ndarray
    report: AxiomReport

    @property
    def total_dim(self) -> int:
        return self.d2.shape[0]


def tensor_triple(
    t1: SpectralTriple,
    t2: SpectralTriple,
    tol: float = 1e-10,
    n_elements: int = 8,
    seed: int = DEFAULT_SEED,
    strict: bool = True,
) -> ProductTriple:
    """Build D2, gamma2, J2 and re-run the axiom suite on the product.

    Both factors must pass their own axiom checks first; the product
    check uses pseudorandom elementary tensors a (x) b.  Raises
    AxiomFailure when any residual exceeds `tol`, unless strict=False,
    which embeds the failing report instead.
    """
    for label, t in (("first", t1), ("second", t2)):
        if not t.validate(n_elements=n_elements, seed=seed).all_passed:
            raise AxiomFailure(f"{label} factor fails the axiom checks")
    d1 = t1.basis.total_dim
    d2dim = t2.basis.total_dim
    g1 = t1.gamma.signs
    g2 = t2.gamma.signs
    dmat = np.kron(t1.dirac.matrix, np.eye(d2dim)) + np.kron(
        np.diag(g1.astype(np.float64)), t2.dirac.matrix
    )
    gamma2 = np.kron(g1, g2)
    pairing = (
        t1.real.pairing[:, None] * d2dim + t2.real.pairing[None, :]
    ).ravel()

    elems_a = random_elements(t1.basis.n, n_elements, seed)
    elems_b = random_elements(t2.basis.n, n_elements, seed + 1)
    lefts = [
        np.kron(rep_diagonal(a, t1.basis), rep_diagonal(b, t2.basis))
        for a, b in zip(elems_a, elems_b)
    ]
    rights = [
        np.kron(
            rep_diagonal_opposite(a, t1.basis), rep_diagonal_opposite(b, t2.basis)
        )
        for a, b in zip(elems_a, elems_b)
    ]
    report = axiom_report(dmat, gamma2, pairing, lefts, rights, tol=tol)
    if strict and not report.all_passed:
        worst = max(report.checks, key=lambda c: c.max_residual)
        raise AxiomFailure(
            f"product axiom {worst.name} has residual {worst.max_residual:.3e}"
        )
    return ProductTriple(
        factor1=t1,
        factor2=t2,
        d2=dmat,
        gamma2=gamma2,
        j2_pairing=pairing,
        report=report,
    )


def product_commutator(
    p: ProductTriple, a: AlgebraElement, b: AlgebraElement
) -> np.ndarray:
    """[D2, pi(a) (x) pi(b)] as a dense matrix."""
    w = np.kron(
        rep_diagonal(a, p.factor1.basis), rep_diagonal(b, p.factor2.basis)
    )
    return p.d2 * (w[None, :] - w[:, None])


def leibniz_residual(
    p: ProductTriple, a: AlgebraElement, b: AlgebraElement
) -> float:
    """Max-entry deviation from the twisted Leibniz expansion."""
    wa = rep_diagonal(a, p.factor1.basis)
    wb = rep_diagonal(b, p.factor2.basis)
    ga = p.factor1.gamma.signs * wa
    rhs = np.kron(commutator(p.factor1.dirac, a), np.diag(wb)) + np.kron(
        np.diag(ga), commutator(p.factor2.dirac, b)
    )
    return float(np.max(np.abs(product_commutator(p, a, b) - rhs)))


@dataclass(frozen=True, eq=False)
class PointFrame2D:
    """Projected commutator data at one point pair (l, m).

    g1 and g2 are the 4x4 projections of the two Leibniz terms onto the
    tensor frame; `projected` is their sum.  The sigma coefficients are
    Hilbert-Schmidt overlaps with sigma_x (x) 1 and sigma_z (x) sigma_x.
    """

    l: int
    m: int
    projected: np.ndarray
    g1: np.ndarray
    g2: np.ndarray
    anticommutator_norm: float
    top_singular_value: float
    coeff_sigma_x: complex
    coeff_sigma_y: complex


@dataclass(frozen=True, eq=False)
class LimitRecord:
    """Per-size summary of the two-dimensional limit study."""

    n: int
    dx: float
    max_anticommutator_norm: float
    max_singular_value_error: float
    diagonal: tuple[tuple[int, float, float], ...]  # (l, top sv, target) at m = l


def _factor_frames(t: SpectralTriple, a: AlgebraElement):
    """Per-point (block, 3x2 frame, column samples) for one circle factor."""
    bls = blocks(commutator(t.dirac, a), t.dirac)
    frames = []
    e_mid = np.array([0.0, 1.0, 0.0], dtype=np.complex128)
    for b in bls:
        if b.nu == 0:
            # flat samples at this point: any unit vector off the middle works,
            # the projected second term vanishes there anyway
            u1 = np.array([1.0, 0.0, 1.0], dtype=np.complex128) / np.sqrt(2.0)
        else:
            nu0 = np.sqrt(abs(b.a_minus) ** 2 + abs(b.a_plus) ** 2)
            u1 = (
                np.array(
                    [np.conj(b.a_minus), 0.0, np.conj(b.a_plus)],
                    dtype=np.complex128,
                )
                / nu0
            )
        frames.append((b, np.column_stack([u1, e_mid])))
    return frames


def _point_frames(
    t1: SpectralTriple,
    t2: SpectralTriple,
    a: AlgebraElement,
    b: AlgebraElement,
) -> list[PointFrame2D]:
    if t1.basis.q.shape is not Shape.CIRCLE or t2.basis.q.shape is not Shape.CIRCLE:
        raise ShapeUnsupported("the 2d limit frames need two circle factors")
    frames1 = _factor_frames(t1, a)
    frames2 = _factor_frames(t2, b)
    g_col = np.array([1.0, -1.0, 1.0])  # grading on one column block
    out = []
    for bl, f in frames1:
        a_col = a.samples[list(t1.basis.column_rows(bl.l))]
        p_comm = f.conj().T @ bl.block @ f
        p_gamma_a = f.conj().T @ ((g_col * a_col)[:, None] * f)
        for bm, g in frames2:
            if bl.nu == 0 and bm.nu == 0:
                raise DegenerateBlock(
                    f"all derivatives vanish at point pair ({bl.l}, {bm.l})"
                )
            b_col = b.samples[list(t2.basis.column_rows(bm.l))]
            q_b = g.conj().T @ (b_col[:, None] * g)
            q_comm = g.conj().T @ bm.block @ g
            gen1 = np.kron(p_comm, q_b)
            gen2 = np.kron(p_gamma_a, q_comm)
            total = gen1 + gen2
            anti = gen1 @ gen2 + gen2 @ gen1
            out.append(
                PointFrame2D(
                    l=bl.l,
                    m=bm.l,
                    projected=total,
                    g1=gen1,
                    g2=gen2,
                    anticommutator_norm=float(np.linalg.norm(anti, 2)),
                    top_singular_value=float(
                        np.linalg.svd(total, compute_uv=False)[0]
                    ),
                    coeff_sigma_x=complex(
                        np.trace(np.kron(_SIGMA_X, _ID2).conj().T @ total) / 4.0
                    ),
                    coeff_sigma_y=complex(
                        np.trace(np.kron(_SIGMA_Z, _SIGMA_X).conj().T @ total) / 4.0
                    ),
                )
            )
    return out


def limit_frame_2d(
    p: ProductTriple, a: AlgebraElement, b: AlgebraElement
) -> list[PointFrame2D]:
    """Project [D2, pi(a) (x) pi(b)] onto the per-point tensor frames."""
    return _point_frames(p.factor1, p.factor2, a, b)


def limit_study(
    n_list: list[int],
    fn_x: SampleFunction,
    fn_y: SampleFunction,
    normalization: Normalization = Normalization.SQRT2_CORRECTED,
) -> list[LimitRecord]:
    """Anticommutator decay and singular-value convergence over sizes.

    Both factors are circles of the same size n.  The singular-value
    target at (l, m) is sqrt(|a'|^2 |b|^2 + |a|^2 |b'|^2) evaluated at
    (x_l, y_m); both named functions must provide derivatives.
    """
    if fn_x.derivative is None or fn_y.derivative is None:
        raise ValueError("limit study needs functions with known derivatives")
    records = []
    for n in n_list:
        t1 = SpectralTriple.standard(Shape.CIRCLE, n, normalization)
        t2 = SpectralTriple.standard(Shape.CIRCLE, n, normalization)
        x = Shape.CIRCLE.points(n)
        a = AlgebraElement(fn_x.f(x))
        b = AlgebraElement(fn_y.f(x))
        ax, dax = fn_x.f(x), fn_x.derivative(x)
        by, dby = fn_y.f(x), fn_y.derivative(x)
        target = np.sqrt(
            np.abs(dax[:, None]) ** 2 * np.abs(by[None, :]) ** 2
            + np.abs(ax[:, None]) ** 2 * np.abs(dby[None, :]) ** 2
        )
        max_anti = 0.0
        max_err = 0.0
        diag = []
        for pf in _point_frames(t1, t2, a, b):
            max_anti = max(max_anti, pf.anticommutator_norm)
            max_err = max(
                max_err, abs(pf.top_singular_value - target[pf.l, pf.m])
            )
            if pf.l == pf.m:
                diag.append(
                    (pf.l, pf.top_singular_value, float(target[pf.l, pf.m]))
                )
        records.append(
            LimitRecord(
                n=n,
                dx=Shape.CIRCLE.spacing(n),
                max_anticommutator_norm=max_anti,
                max_singular_value_error=max_err,
                diagonal=tuple(diag),
            )
        )
    return records
