"""Exception hierarchy shared by every module."""


class PhyloError(ValueError):
    """Base class for invalid-input errors."""


class MalformedNewick(PhyloError):
    pass


class DuplicateTaxon(PhyloError):
    pass


class NonBinary(PhyloError):
    pass


class MissingTaxon(PhyloError):
    pass


class UnknownTaxon(PhyloError):
    pass


class MalformedLine(PhyloError):
    pass


class EmptySet(PhyloError):
    pass


class OverlappingBlocks(PhyloError):
    pass


class BadQuartetSize(PhyloError):
    pass


class LeafSetMismatch(PhyloError):
    pass


class TooSmall(PhyloError):
    pass


class PartialExtension(PhyloError):
    pass


class PartialCharacter(PhyloError):
    pass


class DegenerateDegrees(PhyloError):
    pass


class TooFewTaxa(PhyloError):
    pass


class TooFewBlocks(PhyloError):
    pass


class NoConflict(PhyloError):
    pass


class NotConflicting(PhyloError):
    pass


class NotSpanningDisjoint(PhyloError):
    pass


class PreconditionViolated(PhyloError):
    pass


class TooLarge(PhyloError):
    pass


class IdenticalTrees(PhyloError):
    pass


class ExactCapExceeded(PhyloError):
    pass


class UnknownSuite(PhyloError):
    pass


class BadSpec(PhyloError):
    pass


class InternalBoundViolation(RuntimeError):
    """A proven bound failed at runtime; this is a bug, not bad input."""
