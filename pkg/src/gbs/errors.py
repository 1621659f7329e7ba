"""Exception hierarchy.

Every error carries a stable machine-readable ``code`` which the CLI puts
into its JSON error record.
"""

from __future__ import annotations


class GBSError(Exception):
    code = "GBSError"

    def __init__(self, message: str = ""):
        super().__init__(message or self.code)
        self.message = message or self.code

    def to_record(self) -> dict:
        return {"error": self.code, "message": self.message}


class MalformedInput(GBSError):
    """Input does not follow the graph or move schema."""

    code = "MalformedInput"


class ZeroIndex(GBSError):
    """An edge index is zero."""

    code = "ZeroIndex"


class Disconnected(GBSError):
    """The graph has more than one component."""

    code = "Disconnected"


class BadInvolution(GBSError):
    """Edge identifiers do not define a valid involution."""

    code = "BadInvolution"


class UnknownReference(GBSError):
    """A move refers to a vertex or edge that does not exist."""

    code = "UnknownReference"


class LoopCollapse(GBSError):
    """Attempted to collapse a loop."""

    code = "LoopCollapse"


class NotCollapsible(GBSError):
    """The collapsing end does not have index +-1."""

    code = "NotCollapsible"


class IndivisibleEnd(GBSError):
    """An expanded end is not divisible by the expansion factor."""

    code = "IndivisibleEnd"


class EmptyVertex(GBSError):
    """The expansion vertex does not exist."""

    code = "EmptyVertex"


class NotDivisible(GBSError):
    """Slide requires i(e) to divide the moving index."""

    code = "NotDivisible"


class SelfSlide(GBSError):
    """An edge cannot slide over itself."""

    code = "SelfSlide"


class NotAscendingLoop(GBSError):
    """Induction needs a loop with an index +-1."""

    code = "NotAscendingLoop"


class FactorNotDividing(GBSError):
    """Induction factor does not divide the loop index."""

    code = "FactorNotDividing"


class EndNotDivisible(GBSError):
    """Induction divide: some end is not divisible by the factor."""

    code = "EndNotDivisible"


class NotReduced(GBSError):
    """The graph admits a collapse move."""

    code = "NotReduced"


class IntegralModuli(GBSError):
    """The modular group contains an integer other than 1."""

    code = "IntegralModuli"


class MalformedPath(GBSError):
    """The path is not a sequence of loops followed by a non-loop edge."""

    code = "MalformedPath"


class NotAdmissible(GBSError):
    """The path is not admissible."""

    code = "NotAdmissible"


class WrongShape(GBSError):
    """The path is not of the form (e1,...,e1, essential..., f)."""

    code = "WrongShape"


class StateBudgetExceeded(GBSError):
    """Slide closure exceeded its state budget."""

    code = "StateBudgetExceeded"


class CollapsibleStateReached(GBSError):
    """A slide produced a non-reduced graph."""

    code = "CollapsibleStateReached"


class AscendingLoopObstruction(GBSError):
    """The move pair trades a strict virtually ascending loop for a strict ascending loop."""

    code = "AscendingLoopObstruction"


class NoPattern(GBSError):
    """The moves at this position match no rewrite rule."""

    code = "NoPattern"


class NonTerminating(GBSError):
    """Normalization exceeded its step budget."""

    code = "NonTerminating"


ERROR_CODES = sorted(cls.code for cls in GBSError.__subclasses__())
