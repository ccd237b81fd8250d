"""Exception types shared across the package."""


class CDiffError(Exception):
    """Base class for every error raised by cdiffkit."""


class InvalidPolynomialError(CDiffError, ValueError):
    pass


class IrreducibilityError(CDiffError, ValueError):
    pass


class DatabaseMissError(CDiffError, LookupError):
    pass


class FieldSizeError(CDiffError, ValueError):
    pass


class CharacteristicError(CDiffError, ValueError):
    pass


class HypothesisError(CDiffError, ValueError):
    """A fast path was called outside the range where it is valid."""


class NotApplicableError(CDiffError, ValueError):
    """A claim was instantiated at parameters its predicates reject."""


class ElementLiteralError(CDiffError, ValueError):
    pass
