"""Exception hierarchy.

Every error raised on purpose by the library derives from :class:`GaborError`.
Errors that signal a violated precondition of an operation (wrong shape of
parameters, unsupported index set, ...) also derive from
:class:`PreconditionError`; the CLI maps those to exit code 3.
"""


class GaborError(Exception):
    """Base class for all library errors."""


class SchemaError(GaborError, ValueError):
    """Input data does not match the JSON schema."""


class PreconditionError(GaborError, ValueError):
    """An operation was called outside its domain."""


class InvalidSet(PreconditionError):
    pass


class InvalidSystem(PreconditionError):
    pass


class InvalidAtom(PreconditionError, IndexError):
    pass


class ParameterMismatch(PreconditionError):
    pass


class SupportTooWide(PreconditionError):
    pass


class SingularDiagonal(PreconditionError):
    pass


class DensityViolation(PreconditionError):
    pass


class ShapeViolation(PreconditionError):
    pass


class UnsupportedSet(PreconditionError):
    pass


class GridTooCoarse(PreconditionError):
    pass


class DimensionMismatch(PreconditionError):
    pass


class RangeViolation(PreconditionError):
    pass


class ImaginaryResidue(GaborError, ArithmeticError):
    """A quantity that must be real came out with a non-negligible imaginary part."""


class FormDisagreement(GaborError, AssertionError):
    """Two equivalent characterizations disagreed; indicates a bug."""
