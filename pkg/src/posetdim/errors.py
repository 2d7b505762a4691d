"""Exception types shared across the library.

Errors that carry combinatorial evidence (a cycle, a partial bound, an
offending element) expose it as attributes so callers and tests can inspect
the certificate instead of parsing messages.
"""


class PosetError(Exception):
    """Base class for all library errors."""


class InvalidId(PosetError):
    """An element id is outside 0..n-1."""


class CyclicRelation(PosetError):
    """The transitive closure of the input relation violates antisymmetry.

    Attributes:
        cycle: a list of element ids witnessing a <= b and b <= a.
    """

    def __init__(self, message, cycle=None):
        super().__init__(message)
        self.cycle = cycle or []


class PairNotIncomparable(PosetError):
    """A pair passed as incomparable is in fact comparable."""

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class ResourceLimit(PosetError):
    """A search exhausted its budget.

    For dimension searches the best bounds proven so far are attached:
    `lower_bound <= exact value <= upper_bound` (upper_bound may be None when
    no feasible partition was found before the budget ran out).
    """

    def __init__(self, message, lower_bound=None, upper_bound=None):
        super().__init__(message)
        self.lower_bound = lower_bound
        self.upper_bound = upper_bound


class FalsifiedClaim(PosetError):
    """A runtime check of a proven statement failed.

    This always indicates a bug or invalid input (e.g. a broken drawing),
    never a tolerable condition; the offending evidence is attached.
    """

    def __init__(self, message, evidence=None):
        super().__init__(message)
        self.evidence = evidence


class DegenerateWalk(PosetError):
    """A walk passes exactly through an element it must avoid."""


class NotConnected(PosetError):
    """Operation requires a connected poset."""


class BadBase(PosetError):
    """Unfolding base element is not minimal or maximal."""


class BadParameter(PosetError):
    """A construction parameter is outside its admissible range."""


class PreconditionFailed(PosetError):
    """A documented operation precondition does not hold."""


class ParseError(PosetError):
    """A poset document failed to parse.

    Attributes:
        line: 1-based line number of the offending line, if known.
    """

    def __init__(self, message, line=None):
        super().__init__(message)
        self.line = line
