"""Exception types shared across the package."""


class NilconeError(Exception):
    """Base class for all package-specific errors."""


class ShapeError(NilconeError):
    """Operand dimensions are incompatible or indices are out of range."""


class SingularMatrixError(NilconeError):
    """A matrix that must be invertible is singular."""


class GenericityError(NilconeError):
    """Input fails the genericity (nonvanishing corner minor) precondition."""


class PatternError(NilconeError):
    """A matrix is not in the required zero/one cell pattern."""


class NotConjugateError(NilconeError):
    """No invertible in-group witness exists, or none was found in budget."""


class NotToricError(NilconeError):
    """A function expected to be monomial on subdiagonal matrices is not."""


class NotSumFreeError(NilconeError):
    """Row and column block sizes share a proper partial sum."""


class AcceptabilityError(NilconeError):
    """A selected entry vanishes on generic subdiagonal input."""


class UnsupportedMorphismError(NilconeError):
    """Morphism data in a form the datum translation does not cover."""


class ScaleError(NilconeError):
    """Problem size exceeds the supported desk scale."""


class ConsistencyError(NilconeError):
    """Internal invariant violated; indicates a bug, not bad input."""
