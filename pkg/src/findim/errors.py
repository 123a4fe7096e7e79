"""Exception hierarchy shared by all findim modules.

Every error the library raises derives from FindimError so callers can catch
one base class. The CLI maps these onto process exit codes (see cli.py).
"""


class FindimError(Exception):
    """Base class for all findim errors."""


class MalformedInput(FindimError):
    """Input fails structural validation (shape, symmetry, parse errors)."""


class DegenerateInput(FindimError):
    """Point clouds with coordinate-identical points (separation would be 0)."""


class NotAMetric(FindimError):
    """Distance matrix violates a metric axiom beyond tolerance."""


class SingletonSpace(FindimError):
    """Operation needs at least two points."""


class EmptySpace(FindimError):
    """Operation needs at least one point."""


class BadParameter(FindimError):
    """Parameter outside its documented range."""


class NoCoverExists(FindimError):
    """No two-cover exists at the requested diameter level."""


class InfiniteDimensionError(FindimError):
    """The space has focal points, so no fine cover exists and both
    dimensions are infinite; exact cover solving is undefined there."""


class MalformedCover(FindimError):
    """A purported two-cover fails validation against its space."""


class NoUniqueSolution(FindimError):
    """The cover-exponent equation has no unique root for this cover."""


class FastPathInapplicable(FindimError):
    """Locally-uniform shortcut requested on a space that is not."""


class ExactLimitExceeded(FindimError):
    """Space is larger than the exact-solver budget."""


class OracleTooLarge(FindimError):
    """Brute-force oracle refuses spaces above its hard size cap."""


class HypothesisViolated(FindimError):
    """Mass-distribution hypothesis fails on a candidate set."""

    def __init__(self, message, members=None):
        super().__init__(message)
        self.members = members


class OracleMismatch(FindimError):
    """Optimized solver and brute-force oracle disagreed."""


class EmptyApproximation(FindimError):
    """Cube oracle marked no cube as intersecting."""


class TooFine(FindimError):
    """Lattice approximation would exceed the configured cube cap."""
