"""Dirac operators on the tripled lattice representation, plus axiom checks.

A Dirac operator is stored as a coupling map m[(i,j),(k,l)] between basis
subspaces, subject to three restrictions:

  * pattern  -- couplings exist only between subspaces sharing a row or a
    column index (i == k or j == l);
  * chirality -- only between subspaces of opposite grading sign;
  * symmetry  -- the map is closed under the two conjugations
        m[(i,j),(k,l)] = conj(m[(k,l),(i,j)])   (self-adjointness)
        m[(i,j),(k,l)] = conj(m[(j,i),(l,k)])   (compatibility with J).

The default couplings put i*c/dx between each diagonal subspace H_ll and
its column neighbours H_{l-1,l}, H_{l+1,l}; the symmetry closure then
forces the fixed-row couplings automatically.  Dropping the row couplings
would break JD = DJ, so they are always generated.

With c = 1/sqrt(2) (the default) the nonzero singular value of a
commutator block is c*sqrt(|a'_-|^2 + |a'_+|^2), which converges to the
modulus of the derivative; c = 1 keeps the raw sqrt of the two one-sided
quotients.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import (
    ChiralityViolation,
    PatternViolation,
    SymmetryViolation,
)
from .qmatrix import Shape, build_q
from .triple_core import (
    DEFAULT_SEED,
    Grading,
    RealStructure,
    TripleBasis,
    build_basis,
    grading,
    random_elements,
    real_structure,
    rep_diagonal,
    rep_diagonal_opposite,
)

__all__ = [
    "Normalization",
    "DiracOperator",
    "SpectralTriple",
    "AxiomCheck",
    "AxiomReport",
    "default_couplings",
    "close_couplings",
    "build_dirac",
    "validate_axioms",
    "axiom_report",
]

CouplingKey = tuple[tuple[int, int], tuple[int, int]]
CouplingMap = dict[CouplingKey, complex]

_SYMMETRY_TOL = 1e-12


class Normalization(enum.Enum):
    """Overall coupling scale c in m = i*c/dx."""

    SQRT2_CORRECTED = "sqrt2"
    UNIT = "unit"

    @property
    def scale(self) -> float:
        return 1.0 if self is Normalization.UNIT else 2.0 ** -0.5


@dataclass(frozen=True, eq=False)
class DiracOperator:
    """Self-adjoint matrix assembled from a constraint-checked coupling map."""

    basis: TripleBasis
    matrix: np.ndarray
    couplings: CouplingMap
    spacing: float
    normalization: Normalization

    def __post_init__(self):
        self.matrix.flags.writeable = False

    @property
    def scale(self) -> float:
        return self.normalization.scale


def close_couplings(seeds: CouplingMap) -> CouplingMap:
    """Extend a coupling map with all conjugation-symmetry partners.

    Each seed m[(i,j),(k,l)] generates m[(k,l),(i,j)] and m[(j,i),(l,k)]
    as conjugates and m[(l,k),(j,i)] with the original value.  Conflicting
    assignments raise SymmetryViolation.
    """
    closed: CouplingMap = {}
    for ((i, j), (k, l)), m in seeds.items():
        m = complex(m)
        orbit = (
            (((i, j), (k, l)), m),
            (((k, l), (i, j)), m.conjugate()),
            (((j, i), (l, k)), m.conjugate()),
            (((l, k), (j, i)), m),
        )
        for key, value in orbit:
            if key in closed and abs(closed[key] - value) > _SYMMETRY_TOL:
                raise SymmetryViolation(
                    f"conflicting values for coupling {key}: "
                    f"{closed[key]} vs {value}"
                )
            closed[key] = value
    return closed


def default_couplings(
    basis: TripleBasis,
    spacing: float,
    normalization: Normalization = Normalization.SQRT2_CORRECTED,
) -> CouplingMap:
    """Nearest-neighbour couplings i*c/dx on every column, symmetry-closed.

    Segment end points only carry the couplings toward their existing
    neighbour.
    """
    m0 = 1j * normalization.scale / spacing
    seeds: CouplingMap = {}
    for l in range(basis.n):
        lm = basis.q.neighbor(l, -1)
        lp = basis.q.neighbor(l, +1)
        if lm is not None:
            seeds[((lm, l), (l, l))] = m0
        if lp is not None:
            seeds[((l, l), (lp, l))] = m0
    return close_couplings(seeds)


def build_dirac(
    basis: TripleBasis,
    couplings: CouplingMap,
    spacing: float = 1.0,
    normalization: Normalization = Normalization.SQRT2_CORRECTED,
) -> DiracOperator:
    """Assemble the matrix of a coupling map, rejecting invalid couplings.

    Raises PatternViolation when a coupling connects subspaces with
    neither row nor column in common (or references a missing subspace),
    ChiralityViolation when the grading signs agree, and
    SymmetryViolation when a conjugate partner is missing or mismatched.
    """
    q = basis.q.entries
    matrix = np.zeros((basis.total_dim, basis.total_dim), dtype=np.complex128)
    for key in sorted(couplings):
        (i, j), (k, l) = key
        m = complex(couplings[key])
        if (i, j) not in basis.offsets or (k, l) not in basis.offsets:
            raise PatternViolation(f"coupling {key} references a missing subspace")
        if i != k and j != l:
            raise PatternViolation(
                f"coupling {key} has no fixed row or column index"
            )
        if np.sign(q[i, j]) == np.sign(q[k, l]):
            raise ChiralityViolation(
                f"coupling {key} connects subspaces of equal grading"
            )
        partner = couplings.get(((k, l), (i, j)))
        if partner is None or abs(partner - m.conjugate()) > _SYMMETRY_TOL:
            raise SymmetryViolation(f"self-adjoint partner of {key} missing or off")
        mirror = couplings.get(((j, i), (l, k)))
        if mirror is None or abs(mirror - m.conjugate()) > _SYMMETRY_TOL:
            raise SymmetryViolation(f"conjugation partner of {key} missing or off")
        matrix[basis.offsets[(i, j)], basis.offsets[(k, l)]] = m
    return DiracOperator(
        basis=basis,
        matrix=matrix,
        couplings=dict(couplings),
        spacing=spacing,
        normalization=normalization,
    )


@dataclass(frozen=True, eq=False)
class SpectralTriple:
    """Bundle of basis, grading, real structure and Dirac operator."""

    basis: TripleBasis
    gamma: Grading
    real: RealStructure
    dirac: DiracOperator

    @classmethod
    def standard(
        cls,
        shape: Shape,
        n: int,
        normalization: Normalization = Normalization.SQRT2_CORRECTED,
        spacing: float | None = None,
    ) -> "SpectralTriple":
        q = build_q(shape, n)
        basis = build_basis(q)
        dx = shape.spacing(n) if spacing is None else spacing
        coup = default_couplings(basis, dx, normalization)
        d = build_dirac(basis, coup, spacing=dx, normalization=normalization)
        return cls(basis, grading(basis), real_structure(basis), d)

    def validate(self, **kwargs) -> "AxiomReport":
        return validate_axioms(self.basis, self.gamma, self.real, self.dirac, **kwargs)


@dataclass(frozen=True)
class AxiomCheck:
    name: str
    max_residual: float
    passed: bool


@dataclass(frozen=True, eq=False)
class AxiomReport:
    """Pass/fail and max residual for the five spectral-triple axioms."""

    checks: tuple[AxiomCheck, ...]
    tolerance: float

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> AxiomCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "tolerance": self.tolerance,
            "all_pass": self.all_passed,
            "checks": [
                {
                    "check_name": c.name,
                    "max_residual": c.max_residual,
                    "pass": c.passed,
                }
                for c in self.checks
            ],
        }


def _max_abs(m: np.ndarray) -> float:
    return float(np.max(np.abs(m))) if m.size else 0.0


def axiom_report(
    matrix: np.ndarray,
    gamma_signs: np.ndarray,
    pairing: np.ndarray,
    rep_weights: list[np.ndarray],
    opposite_weights: list[np.ndarray],
    tol: float = 1e-12,
) -> AxiomReport:
    """Residuals of the five axioms for a diagonal algebra representation.

    rep_weights / opposite_weights are the diagonals of the left and
    opposite actions of the test elements; the commuting / first-order
    checks run over all ordered pairs.  Products against diagonals are
    computed entrywise, which agrees bit for bit with dense
    multiplication by the corresponding diagonal matrix.
    """
    g = gamma_signs.astype(np.float64)
    r_adjoint = _max_abs(matrix - matrix.conj().T)
    r_grading = _max_abs(matrix * (g[:, None] + g[None, :]))
    r_real = _max_abs(matrix.conj()[pairing, :] - matrix[:, pairing])
    r_zero = 0.0
    r_first = 0.0
    for wa in rep_weights:
        comm = matrix * (wa[None, :] - wa[:, None])
        for wb in opposite_weights:
            r_zero = max(r_zero, _max_abs(wa * wb - wb * wa))
            r_first = max(r_first, _max_abs(comm * (wb[None, :] - wb[:, None])))
    checks = tuple(
        AxiomCheck(name, residual, residual < tol)
        for name, residual in (
            ("self_adjoint", r_adjoint),
            ("grading_anticommutation", r_grading),
            ("real_structure_commutation", r_real),
            ("zero_order", r_zero),
            ("first_order", r_first),
        )
    )
    return AxiomReport(checks=checks, tolerance=tol)


def validate_axioms(
    basis: TripleBasis,
    gamma: Grading,
    real: RealStructure,
    dirac: DiracOperator | np.ndarray,
    n_elements: int = 8,
    seed: int = DEFAULT_SEED,
    tol: float = 1e-12,
) -> AxiomReport:
    """Run the axiom suite on deterministic pseudorandom algebra elements.

    `dirac` may be a DiracOperator or a raw matrix (e.g. loaded from a
    fixture file); failures are reported, not raised.
    """
    matrix = dirac.matrix if isinstance(dirac, DiracOperator) else np.asarray(dirac)
    elements = random_elements(basis.n, n_elements, seed)
    lefts = [rep_diagonal(a, basis) for a in elements]
    rights = [rep_diagonal_opposite(a, basis) for a in elements]
    return axiom_report(matrix, gamma.signs, real.pairing, lefts, rights, tol=tol)
