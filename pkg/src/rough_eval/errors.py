"""Exception hierarchy.

Every error carries a short machine-readable ``code`` (the class name) so the
CLI can report failures as one-line records.
"""


class RoughEvalError(Exception):
    """Base class for all errors raised by this package."""

    @property
    def code(self) -> str:
        return type(self).__name__


class ValidationError(RoughEvalError, ValueError):
    """Input data or configuration failed validation."""


class MissingCell(ValidationError):
    pass


class OutOfRange(ValidationError):
    pass


class UnknownLabel(ValidationError):
    pass


class DuplicateObjectId(ValidationError):
    pass


class UnknownAttribute(ValidationError, KeyError):
    def __str__(self) -> str:  # KeyError would repr() the message
        return str(self.args[0]) if self.args else ""


class OverlappingLevels(ValidationError):
    pass


class UncoveredAttribute(ValidationError):
    pass


class ConfigError(ValidationError):
    """Config file is malformed or carries an unsupported version."""


class UnknownObject(ValidationError):
    pass


class UniverseMismatch(ValidationError):
    pass


class AmbiguousCategory(RoughEvalError):
    pass


class ScaleTooSmall(RoughEvalError):
    pass


class AllRedundant(RoughEvalError):
    """Every attribute of a level has zero significance."""


class MalformedValue(ValidationError):
    """A numeric cell could not be parsed as a decimal real."""
