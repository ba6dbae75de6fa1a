"""
Exception hierarchy for knotball.

Every error raised by the library derives from KnotballError so the CLI can
turn it into a usage error (exit code 2). Search budgets running out is never
an error: those outcomes are reported as "unknown" values.
"""


class KnotballError(Exception):
    """Base class for all knotball errors."""


class FormatError(KnotballError):
    """Malformed .cplx, trace or group-table text."""


class UnknownName(KnotballError):
    """A catalog entry or group name that is not registered."""


# ============================================================================
# Complex construction and face access
# ============================================================================

class ComplexError(KnotballError):
    """Invalid simplicial complex or invalid use of one."""


class NonPure(ComplexError):
    pass


class EmptyComplex(ComplexError):
    pass


class ContainedFacet(ComplexError):
    pass


class NotAFace(ComplexError):
    pass


class NotAFacet(ComplexError):
    pass


class NotAVertex(ComplexError):
    pass


class VertexClash(ComplexError):
    pass


class DimensionMismatch(ComplexError):
    pass


class WrongDimension(ComplexError):
    pass


class UnsupportedDimension(ComplexError):
    pass


class BadDimension(ComplexError):
    pass


# ============================================================================
# Certification
# ============================================================================

class NotABall(KnotballError):
    pass


class NotBallOrSphere(KnotballError):
    pass


class NotACandidate(KnotballError):
    """The given cycle is not an empty 3-cycle of the complex."""


class Inadmissible(KnotballError):
    """A bistellar move that cannot be applied to the complex."""


class TooManyGenerators(KnotballError):
    pass


class InvalidGroupTable(KnotballError):
    pass
