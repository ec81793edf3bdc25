"""Exception hierarchy shared by every module in the package."""


class PolyrankError(Exception):
    """Base class for all package-specific failures."""


class DimensionMismatch(PolyrankError):
    """Operands live in incompatible ambient spaces."""


class ZeroVector(PolyrankError):
    """A direction argument was the zero vector."""


class NotPrimitive(PolyrankError):
    """An integer vector was expected to have coprime entries."""


class NotUnimodular(PolyrankError):
    """A square integer matrix with determinant +-1 was expected."""


class EmptyPolyhedron(PolyrankError):
    """The operation is undefined on the empty polyhedron."""


class EmptyGeneratorList(PolyrankError):
    """A cone was described by an empty generator list."""


class NotIntegralDescription(PolyrankError):
    """Integer inequality data was expected."""


class NotIntegral(PolyrankError):
    """An integral polyhedron (all minimal faces hit the lattice) was expected."""


class Unbounded(PolyrankError):
    """The operation requires a bounded polyhedron."""


class UnboundedVolume(PolyrankError):
    """Volume of an unbounded set was requested."""


class SearchCapExceeded(PolyrankError):
    """An enumeration hit its configured safety cap before finishing."""


class CapExceeded(PolyrankError):
    """An iteration cap was reached before the computation converged.

    For closure-rank computations ``last`` holds the last polyhedron that
    was computed, which is often useful for diagnosis.
    """

    def __init__(self, message: str, last=None, rounds: int | None = None):
        super().__init__(message)
        self.last = last
        self.rounds = rounds


class RayMissesHull(PolyrankError):
    """The ray never meets the integer hull, so no finite step exists."""


class PointNotInQ(PolyrankError):
    """The anchor point of a bound computation must belong to the polyhedron."""


class InvalidWitness(PolyrankError):
    """A claimed certificate failed its side conditions."""


class ParseError(PolyrankError):
    """A polyhedron document is malformed; the message names the field."""


class IrrationalData(ParseError):
    """Input contained floats or other non-rational numeric data."""


class InternalInvariantError(PolyrankError):
    """A cross-check that should never fail did fail; please report."""
