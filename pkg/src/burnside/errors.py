"""Exception hierarchy shared by all modules."""


class BurnsideError(Exception):
    """Base class for every error raised by this package."""


class ParseError(BurnsideError):
    """Bad group-spec or ring-spec grammar."""


class OrderBoundError(BurnsideError):
    """A construction would exceed the hard group-order bound."""


class NotAGroupError(BurnsideError):
    """A multiplication table fails the group axioms."""


class NotContainedError(BurnsideError):
    """A subgroup/element argument does not live where it must."""


class MismatchError(BurnsideError):
    """Operands disagree on group or coefficient ring."""


class GroupMismatchError(MismatchError):
    """Operands belong to different groups."""


class RingMismatchError(MismatchError):
    """Operands belong to different coefficient rings."""


class BadLabelError(BurnsideError):
    """Unknown subgroup-class label."""


class NotInvertibleError(BurnsideError):
    """A required quantity is not a unit in the coefficient ring."""


class DimensionMismatchError(BurnsideError):
    """Incompatible matrix/vector dimensions."""


class ResourceBoundError(BurnsideError):
    """An internal enumeration cap was exceeded."""


class NotAProductGroupError(BurnsideError):
    """The operation needs a group recorded as a direct product."""


class FactorMismatchError(BurnsideError):
    """Referenced product factors do not match."""


class NotAnIsomorphismError(BurnsideError):
    """A supplied map is not a bijective homomorphism."""


class InternalInconsistencyError(BurnsideError):
    """Two routes that must agree by theorem disagreed; indicates a bug."""
