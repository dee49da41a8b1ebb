"""Exception types raised by the library.

Every domain failure derives from :class:`DomainError`; the CLI turns these
into exit code 1 with a JSON error object on stderr.
"""


class DomainError(Exception):
    """Base class for all domain errors."""

    @property
    def kind(self) -> str:
        return type(self).__name__


class DivisionByZero(DomainError, ZeroDivisionError):
    pass


class UnboundVariable(DomainError, KeyError):
    def __str__(self) -> str:
        return Exception.__str__(self)


class ParseError(DomainError, ValueError):
    pass


class NonPlanarEmbedding(DomainError):
    pass


class InvalidGraph(DomainError):
    pass


class ZeroLambda(DomainError):
    pass


class ProductNotOne(DomainError):
    pass


class NoPerfectOrientation(DomainError):
    pass


class NotPerfectlyOrientable(DomainError):
    pass


class ValencyMismatch(DomainError):
    pass


class NotPerfect(DomainError):
    pass


class NotASquareFace(DomainError):
    pass


class MovePole(DomainError):
    pass


class NotMoveSymmetricGraph(DomainError):
    pass


class NotMoveSymmetricWeighting(DomainError):
    pass


class ConstantNotSquare(DomainError):
    pass


class OddValency(DomainError):
    pass


class EvenValency(DomainError):
    pass


class Singular(DomainError):
    pass


class ZeroParameter(DomainError):
    pass


class NotCentralizing(DomainError):
    pass


class NotReduced(DomainError):
    pass


class LetterOutOfRange(DomainError):
    pass


class LengthMismatch(DomainError):
    pass


class NotInTorus(DomainError):
    pass


class ZeroLeadingMinor(DomainError):
    pass


class ZeroDenominator(DomainError):
    pass


class NotInGroup(DomainError):
    pass


class NotTNN(DomainError):
    pass


class ExtractionFailed(DomainError):
    pass
