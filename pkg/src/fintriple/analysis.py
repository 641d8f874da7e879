"""Convergence sweeps, spectra, degeneracy surveys and zeta sums.

CSV output of the convergence sweep uses the fixed column order
(n, dx, metric, value, reference, error) so runs can be diffed by
machine.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .calculus import blocks, commutator
from .dirac import DiracOperator, Normalization, SpectralTriple
from .errors import AllZeroSpectrum, DegenerateSize
from .functions import SampleFunction
from .qmatrix import Shape, build_q, determinant, kernel_dimension
from .triple_core import AlgebraElement

__all__ = [
    "ConvergenceRecord",
    "ConvergenceStudy",
    "SpectrumRecord",
    "ZetaAction",
    "SurveyRow",
    "converge_1d",
    "fit_order",
    "spectrum",
    "zeta_action",
    "degeneracy_survey",
]

_ZERO_EIGENVALUE_TOL = 1e-10


@dataclass(frozen=True)
class ConvergenceRecord:
    n: int
    dx: float
    metric: str
    value: float
    reference: float

    @property
    def error(self) -> float:
        return abs(self.value - self.reference)


@dataclass(frozen=True, eq=False)
class ConvergenceStudy:
    """Sweep records sorted by n plus the fitted convergence order."""

    shape: Shape
    function: str
    normalization: Normalization
    metric: str
    records: tuple[ConvergenceRecord, ...]
    fitted_order: float


def fit_order(dx: list[float], errors: list[float]) -> float:
    """Least-squares slope of log error against log dx.

    Returns inf when every error is at rounding level (exact scheme).
    """
    err = np.asarray(errors, dtype=np.float64)
    if np.all(err < 1e-14):
        return float("inf")
    if np.any(err <= 0):
        raise ValueError("cannot fit an order through zero errors")
    return float(np.polyfit(np.log(np.asarray(dx)), np.log(err), 1)[0])


def converge_1d(
    fn: SampleFunction,
    shape: Shape,
    n_list: list[int],
    normalization: Normalization = Normalization.SQRT2_CORRECTED,
) -> ConvergenceStudy:
    """Deviation of the block singular values from |a'(x_l)| over sizes.

    For each n the metric is the max over interior points of
    |nu_l - |a'(x_l)||.  Raises DegenerateSize when a requested size has
    det(q) = 0.
    """
    if fn.derivative is None:
        raise ValueError(f"function {fn.name!r} has no derivative to compare against")
    records = []
    for n in sorted(n_list):
        if shape.is_degenerate(n):
            raise DegenerateSize(f"{shape.value} size {n} has det(q) = 0")
        t = SpectralTriple.standard(shape, n, normalization)
        x = shape.points(n)
        a = AlgebraElement(fn.f(x))
        bls = blocks(commutator(t.dirac, a), t.dirac)
        deviation = max(
            abs(b.nu - abs(fn.derivative(x[b.l])))
            for b in bls
            if b.interior
        )
        records.append(
            ConvergenceRecord(
                n=n,
                dx=shape.spacing(n),
                metric="max_nu_error",
                value=float(deviation),
                reference=0.0,
            )
        )
    order = fit_order([r.dx for r in records], [r.error for r in records])
    return ConvergenceStudy(
        shape=shape,
        function=fn.name,
        normalization=normalization,
        metric="max_nu_error",
        records=tuple(records),
        fitted_order=order,
    )


@dataclass(frozen=True, eq=False)
class SpectrumRecord:
    n: int
    eigenvalues: np.ndarray
    kernel_dim: int


def _as_matrix(d: DiracOperator | np.ndarray) -> tuple[np.ndarray, int]:
    if isinstance(d, DiracOperator):
        return d.matrix, d.basis.n
    m = np.asarray(d, dtype=np.complex128)
    return m, m.shape[0]


def spectrum(d: DiracOperator | np.ndarray) -> SpectrumRecord:
    """Sorted eigenvalues of a self-adjoint operator, with kernel count."""
    m, n = _as_matrix(d)
    scale = float(np.max(np.abs(m))) if m.size else 0.0
    if float(np.max(np.abs(m - m.conj().T))) > 1e-10 * (1.0 + scale):
        raise ValueError("operator is not self-adjoint")
    ev = np.linalg.eigvalsh(m)
    cut = _ZERO_EIGENVALUE_TOL * max(1.0, float(np.max(np.abs(ev))) if ev.size else 0.0)
    return SpectrumRecord(
        n=n, eigenvalues=ev, kernel_dim=int(np.count_nonzero(np.abs(ev) <= cut))
    )


@dataclass(frozen=True, eq=False)
class ZetaAction:
    """Partial zeta sums over the largest eigenvalue moduli.

    value = sum over the `cutoff` largest nonzero |lambda| of |lambda|^-s.
    `dixmier_proxy` holds S_k / log(k) for k >= 2: a labeled, exploratory
    stand-in for a singular-trace normalization, nothing more.
    """

    s: float
    cutoff: int
    value: float
    partial_sums: np.ndarray
    dixmier_proxy: np.ndarray

    def __float__(self) -> float:
        return self.value


def zeta_action(
    d: DiracOperator | np.ndarray, s: float, cutoff: int
) -> ZetaAction:
    """Sum |lambda|^-s over the `cutoff` largest nonzero eigenvalue moduli."""
    if s <= 0:
        raise ValueError("the exponent s must be positive")
    if cutoff < 1:
        raise ValueError("cutoff must be a positive integer")
    m, _ = _as_matrix(d)
    moduli = np.sort(np.abs(np.linalg.eigvalsh(m)))[::-1]
    top = float(moduli[0]) if moduli.size else 0.0
    moduli = moduli[moduli > _ZERO_EIGENVALUE_TOL * max(1.0, top)]
    if moduli.size == 0:
        raise AllZeroSpectrum("operator has no nonzero eigenvalues")
    k = min(cutoff, moduli.size)
    partial = np.cumsum(moduli[:k] ** (-s))
    ks = np.arange(1, k + 1)
    proxy = partial[1:] / np.log(ks[1:]) if k >= 2 else np.empty(0)
    return ZetaAction(
        s=s,
        cutoff=cutoff,
        value=float(partial[-1]),
        partial_sums=partial,
        dixmier_proxy=proxy,
    )


class SurveyRow(NamedTuple):
    n: int
    det: int
    kernel_dim: int


def degeneracy_survey(shape: Shape, n_max: int) -> list[SurveyRow]:
    """(n, det, kernel dim) for every admissible size up to n_max, exactly.

    det != 0 forces kernel dimension 0, so the rational rank is only
    computed at the degenerate sizes.
    """
    rows = []
    for n in range(shape.min_size, n_max + 1):
        q = build_q(shape, n)
        det = determinant(q)
        kdim = 0 if det != 0 else kernel_dimension(q)
        rows.append(SurveyRow(n=n, det=det, kernel_dim=kdim))
    return rows
