"""Exception types shared across the package."""


class FintripleError(Exception):
    """Base class for all library errors."""


class SizeTooSmall(FintripleError):
    """Lattice size below the minimum for the requested shape."""


class EmptySelection(FintripleError):
    """No non-degenerate lattice size in the requested range."""


class DimensionMismatch(FintripleError):
    """Sample vector or operator dimensions are inconsistent."""


class PatternViolation(FintripleError):
    """Coupling outside the allowed fixed-row/fixed-column pattern."""


class ChiralityViolation(FintripleError):
    """Coupling between subspaces of equal grading sign."""


class SymmetryViolation(FintripleError):
    """Coupling map is not closed under the conjugation symmetries."""


class NotBlockDiagonal(FintripleError):
    """Commutator has weight outside the per-point column blocks."""


class DegenerateBlock(FintripleError):
    """Both one-sided derivatives vanish; no rotation frame exists."""


class ShapeUnsupported(FintripleError):
    """Operation defined only for the circle lattice."""


class DegenerateSize(FintripleError):
    """Lattice size with det(q) = 0 where a non-degenerate one is required."""


class AxiomFailure(FintripleError):
    """A spectral-triple axiom residual exceeded its tolerance."""


class AllZeroSpectrum(FintripleError):
    """Operator has no nonzero eigenvalues to sum over."""


class UsageError(FintripleError):
    """Invalid command-line arguments."""
