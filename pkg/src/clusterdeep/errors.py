"""Exceptions shared across the package.

Everything raised on purpose derives from ClusterDeepError so callers can
catch the whole family at an API boundary (the CLI does exactly that).
"""


class ClusterDeepError(Exception):
    """Base class for all errors raised deliberately by this package."""


class QuiverFormatError(ClusterDeepError):
    """Malformed quiver data: loops, 2-cycles, frozen-frozen arrows, bad JSON."""


class NotDivisible(ClusterDeepError):
    """Exact Laurent division failed.

    During seed mutation this signals a violated Laurent-phenomenon
    expectation, which means the input was not a valid seed in the first
    place (or there is a bug upstream).  It is never swallowed.
    """


class ZeroAtNegativeExponent(ClusterDeepError):
    """Evaluation hit value 0 in a variable that occurs with negative exponent."""


class TermGuardExceeded(ClusterDeepError):
    """A Laurent operation produced more terms than the configured cap."""


class NotAcyclic(ClusterDeepError):
    """An operation requiring an acyclic mutable part got a cyclic one."""


class NonIndependentZeroSet(ClusterDeepError):
    """The zero coordinates of a point are adjacent in the quiver."""


class RelationUnsatisfiable(ClusterDeepError):
    """Requested point values cannot satisfy the variety relations."""


class InconsistentPoint(ClusterDeepError):
    """Propagation met a zero pivot whose exchange sum is nonzero."""


class WitnessError(ClusterDeepError):
    """A witness identity failed symbolic verification or evaluation."""


class NotReducedTree(ClusterDeepError):
    """Input quiver is not (or cannot be put) in reduced sink/source tree form."""


class ExplorationExceeded(ClusterDeepError):
    """A breadth-first exploration hit its node or depth cap."""


class CoverInvariantError(ClusterDeepError):
    """Internal contradiction in the covering recursion; indicates a bug."""
