"""Finite spectral triples on circle and segment lattices.

Builds the intersection matrices of the discrete circle and segment,
assembles the associated Hilbert space, grading, real structure and
Dirac operators, and studies how the commutators [D, A] and
[D2, A (x) A] approach the one- and two-dimensional derivative
operators as the lattice is refined.
"""

from .analysis import (
    ConvergenceRecord,
    ConvergenceStudy,
    SpectrumRecord,
    SurveyRow,
    ZetaAction,
    converge_1d,
    degeneracy_survey,
    fit_order,
    spectrum,
    zeta_action,
)
from .calculus import (
    CommutatorBlockSet,
    block_kernel,
    blocks,
    commutator,
    global_limit_frame,
    rotate_block,
    rotation_frame,
    synthetic_block,
)
from .dirac import (
    AxiomCheck,
    AxiomReport,
    DiracOperator,
    Normalization,
    SpectralTriple,
    axiom_report,
    build_dirac,
    close_couplings,
    default_couplings,
    validate_axioms,
)
from .errors import (
    AllZeroSpectrum,
    AxiomFailure,
    ChiralityViolation,
    DegenerateBlock,
    DegenerateSize,
    DimensionMismatch,
    EmptySelection,
    FintripleError,
    NotBlockDiagonal,
    PatternViolation,
    ShapeUnsupported,
    SizeTooSmall,
    SymmetryViolation,
    UsageError,
)
from .functions import SampleFunction, builtin_function, load_sample_file, sample
from .product import (
    LimitRecord,
    PointFrame2D,
    ProductTriple,
    leibniz_residual,
    limit_frame_2d,
    limit_study,
    product_commutator,
    tensor_triple,
)
from .qmatrix import (
    IntersectionMatrix,
    Shape,
    build_q,
    det_sequence,
    determinant,
    kernel_dimension,
    select_nondegenerate,
)
from .triple_core import (
    DEFAULT_SEED,
    AlgebraElement,
    Grading,
    RealStructure,
    TripleBasis,
    build_basis,
    grading,
    random_elements,
    real_structure,
    rep_diagonal,
    rep_diagonal_opposite,
    represent,
    represent_opposite,
)

__version__ = "0.1.0"
