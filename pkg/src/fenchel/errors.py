"""Exception hierarchy.

Every error raised by the library derives from :class:`FenchelError`; the CLI
reports ``type(exc).__name__`` verbatim, so class names are part of the
public interface.
"""


class FenchelError(Exception):
    """Base class for all domain errors."""


class ValidationError(FenchelError):
    """Malformed input values (mapped to CLI exit code 2)."""


class NegativeParameter(ValidationError):
    pass


class InvalidPeriod(ValidationError):
    pass


class EmptyInput(ValidationError):
    pass


class MalformedHom(ValidationError):
    pass


class DomainError(FenchelError):
    """The input is well formed but outside the operation's domain."""


class TrivialGroupInput(DomainError):
    pass


class ClassificationGap(FenchelError):
    pass


class NonSurjective(DomainError):
    pass


class NonIntegralGenus(FenchelError):
    pass


class BoundExceeded(DomainError):
    pass


class IdentityCover(DomainError):
    pass


class WrongShape(DomainError):
    pass


class PerfectInput(DomainError):
    pass


class TrivialInput(DomainError):
    pass


class NotAffine(DomainError):
    pass


class ZeroOneObstruction(DomainError):
    pass


class HasTorsion(DomainError):
    pass


class AbelianShape(DomainError):
    pass


class InvalidPayload(ValidationError):
    """Input document does not match the command's schema."""


class UnknownCommand(ValidationError):
    pass
