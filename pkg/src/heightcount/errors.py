"""Exception types shared across the package."""


class HeightcountError(Exception):
    """Base class for all library errors."""


class InvalidD(HeightcountError):
    """d in {0, 1} cannot define a quadratic field."""


class NotSquarefree(HeightcountError):
    """d has a square factor; refusing to reduce it silently."""


class NotFundamental(HeightcountError):
    """Integer is not a fundamental discriminant."""


class ZeroVector(HeightcountError):
    """All coordinates vanish."""


class DimensionMismatch(HeightcountError):
    pass


class Reducible(HeightcountError):
    """Quadratic polynomial has a rational root."""


class NotPrimitive(HeightcountError):
    """Polynomial coefficients share a common factor."""


class UnsupportedDegree(HeightcountError):
    """Operation needs element-level arithmetic, only available for degree <= 2."""


class UnsupportedClassNumber(HeightcountError):
    """Counting is implemented for imaginary quadratic fields only."""


class UnsupportedRegime(HeightcountError):
    """Parameters outside the convergence regime of the requested sum."""


class UnsupportedFinitePart(HeightcountError):
    """Finite norms outside the diagonal ideal-twist family."""


class UnsupportedInfiniteNorm(HeightcountError):
    """Exact height evaluation needs max or l2 norms at infinite places."""


class InvalidG(HeightcountError):
    """g is not a proper divisor of e."""


class MissingClassData(HeightcountError):
    pass


class MissingZeta(HeightcountError):
    pass


class CoverageFailure(HeightcountError):
    """A sampled boundary point escaped every declared Lipschitz map."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class CapTooSmall(HeightcountError):
    """Search cap below the constructive upper bound; the minimum could escape."""


class ScanTooSmall(HeightcountError):
    """Discriminant scan bound below the certified inversion of the height lower bound."""


class DegenerateGrid(HeightcountError):
    """Grid too small or too narrow for a meaningful exponent fit."""


class InvariantsFileError(HeightcountError):
    """Malformed field-invariants data file."""
