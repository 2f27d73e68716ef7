"""Exception hierarchy shared by all flagalg modules."""


class FlagAlgError(Exception):
    """Base class for all library errors."""


# -- poset construction ------------------------------------------------------

class CycleDetected(FlagAlgError):
    pass


class NotGraded(FlagAlgError):
    """A cover relation skips a rank level."""


class DuplicateCover(FlagAlgError):
    pass


class SizeLimitExceeded(FlagAlgError):
    """A construction would exceed the configured size cap."""


class InvalidParams(FlagAlgError):
    pass


class ElementOutOfRange(FlagAlgError):
    pass


# -- flag algebra ------------------------------------------------------------

class EnumerationLimitExceeded(FlagAlgError):
    """Flag enumeration would exceed the configured cap."""


class ArityMismatch(FlagAlgError):
    pass


class PosetMismatch(FlagAlgError):
    pass


class IndexOutOfRange(FlagAlgError):
    pass


class FlagNotInPoset(FlagAlgError):
    pass


# -- symbolic KL index machinery ---------------------------------------------

class CapExceeded(FlagAlgError):
    pass


class InvalidShift(FlagAlgError):
    pass


class MalformedTerm(FlagAlgError):
    pass


class RankTooSmall(FlagAlgError):
    pass


# -- polynomial-level computations -------------------------------------------

class NotBoundedBelow(FlagAlgError):
    pass


class NotBounded(FlagAlgError):
    pass


class NotLattice(FlagAlgError):
    pass


class InconsistentRecursion(FlagAlgError):
    """The defining functional equation produced inconsistent coefficients.

    Signals either a non-lattice input whose recursion degenerates or an
    implementation fault; never expected on graded bounded lattices.
    """


class VariableCountMismatch(FlagAlgError):
    pass
