"""Exception hierarchy shared by all planebranch modules."""


class SeriesError(Exception):
    """Base class for truncated-series failures."""


class ZeroUpToPrecision(SeriesError):
    """The series has no stored term; its order cannot be determined."""


class InsufficientPrecision(SeriesError):
    """An operation would need coefficients at or beyond the precision bound."""


class NotAPerfectPower(SeriesError):
    """The order of the series is not divisible by the requested root index."""


class NonMonic(SeriesError):
    """The leading coefficient is not 1 where a monic series is required."""


class EpsilonBeyondPrecision(InsufficientPrecision):
    """Every stored exponent is divisible by the given divisor."""


class BranchError(Exception):
    """Base class for plane-branch failures."""


class GcdNotOne(BranchError):
    """The supports visible within precision have gcd > 1."""


class InternalMismatch(BranchError):
    """Two independent computation paths disagreed; signals a bug."""


class SemigroupError(Exception):
    """Base class for numerical-semigroup failures."""


class NotNumericalSemigroup(SemigroupError):
    """The generators do not define a numerical semigroup (gcd != 1)."""


class BaseNotInSemigroup(SemigroupError):
    """The requested Apery base is not an element of the semigroup."""


class LiftNotSemigroup(SemigroupError):
    """The lifted value set is not closed under addition."""


class NotPlane(SemigroupError):
    """The semigroup is not the value semigroup of a plane branch."""


class NotMember(SemigroupError):
    """The value does not belong to the semigroup."""


class ParseError(Exception):
    """Syntax error in the text grammar, with 1-based position."""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class DuplicateVariable(ParseError):
    """The same variable is assigned twice."""


class NonPositiveExponent(ParseError):
    """A parametrization term has exponent 0."""


class NotNonIncreasing(ParseError):
    """A multiplicity sequence increases after expansion."""
