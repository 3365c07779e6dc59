"""Exception hierarchy shared across the toolkit."""


class FatmashError(Exception):
    """Base class for all toolkit errors."""


class DegenerateSimplex(FatmashError):
    """A quality measure was requested for a (near-)degenerate simplex."""


class InvalidComplex(FatmashError):
    """An operation required a valid complex and got an invalid one."""


class OutsideModel(FatmashError):
    """A point lies outside the domain of the hyperbolic model."""


class InvalidSpec(FatmashError):
    """A tube or scene specification violates its invariants."""


class NonpositiveDelta(FatmashError):
    """A separation constant that must be positive was not."""


class NotSpherical(FatmashError):
    """An order triple does not define a spherical (finite) symmetry group."""


class CannotResolve(FatmashError):
    """General position could not be reached within the retry budget."""


class DegenerateConfiguration(FatmashError):
    """An intersection query hit a configuration excluded by general position."""


class NotConvex(FatmashError):
    """A polygon that had to be convex is not."""


class AngleTooSmall(FatmashError):
    """An input polygon angle is below the floor the repair requires."""


class NotSimple(FatmashError):
    """A polygon that had to be simple self-intersects."""


class WrongReflexCount(FatmashError):
    """A quadrilateral repair expected exactly one reflex vertex."""


class NonConvexFront(FatmashError):
    """The eroded front boundary is not convex toward the stitch region."""


class TargetUnreachable(FatmashError):
    """A fattening pass could not reach the configured quality floor."""


class CapExceeded(FatmashError):
    """Angle mixing hit its iteration cap before reaching the target.

    Carries the final state so callers can inspect how far it got.
    """

    def __init__(self, message, state=None):
        super().__init__(message)
        self.state = state


class NoValidK2(FatmashError):
    """No inset depth in the allowed range makes the cross quads simple."""


class ApexOnPlane(FatmashError):
    """A cone apex lies on the base plane."""


class ZeroHeight(FatmashError):
    """An apex lift was requested with zero minimum star height."""


class TubesTooClose(FatmashError):
    """Two tube axes are closer than the configured separation."""


class GateUnreachable(FatmashError):
    """The fine/coarse size gate could not be established by refinement."""


class NotBipartite(FatmashError):
    """The facet-adjacency graph has an odd cycle; no chessboard coloring."""
