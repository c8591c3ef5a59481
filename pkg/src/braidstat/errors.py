"""Exception hierarchy shared by all braidstat modules."""


class BraidstatError(Exception):
    """Base class for every error raised by this package."""


class DivisionByZeroError(BraidstatError, ZeroDivisionError):
    """Inversion of an exactly-zero scalar."""


class MissingParameterError(BraidstatError):
    """A numeric evaluation referenced a symbol absent from the value map."""


class NumericDenominatorZeroError(BraidstatError):
    """A ratio was evaluated at a point where the denominator vanishes."""


class EvenNError(BraidstatError):
    """Operation requires the odd-size nested basis."""


class ZeroParameterError(BraidstatError):
    """A generalized-basis parameter was zero."""


class SingularParameterError(BraidstatError):
    """A generalized-basis parameter u satisfies u + 1/u = 0."""


class InvalidParamSetError(BraidstatError):
    """A parameter set does not match the expected symbol collection."""


class OrderOverflowError(BraidstatError):
    """A requested tensor order exceeds the configured size cap."""


class EigensolverFailureError(BraidstatError):
    """The dense eigensolver did not converge on a subspace block."""


class UnresolvedEigenvalueError(BraidstatError):
    """An eigenvalue trajectory could not be matched to the exponent lattice."""


class DegenerateParametersError(UnresolvedEigenvalueError):
    """Parameter values collide on the exponent lattice; classification needs generic values."""


class NonPrimeOrderError(BraidstatError):
    """The multiplet census requires a prime transfer order."""


class UnsupportedNError(BraidstatError):
    """Closed-form construction only available for the smallest odd size."""


class InadmissibleLambdaError(BraidstatError):
    """The shift parameter hits the excluded spectrum."""


class SingularMatrixError(BraidstatError):
    """Numeric inversion target is singular to working precision."""


class ConfigError(BraidstatError):
    """Bad command-line or file configuration."""
