"""Exception types raised by the pipeline."""


class MonadicaError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(MonadicaError, ValueError):
    """A polynomial string does not match the grammar."""


class FactorizationFailed(MonadicaError):
    """A factor could not be certified irreducible within the configured caps."""


class DepthLimitExceeded(MonadicaError):
    """The residue-class search for valuation profiles hit its depth cap."""


class NotIntegerValued(MonadicaError):
    """A rational polynomial does not map Z into Z."""


class NotMember(MonadicaError):
    """An element does not lie in the monadic submonoid under consideration."""


class AtomBoundExceeded(MonadicaError):
    """An atom was found on the boundary of a manual degree bound."""


class CrossCheckMismatch(MonadicaError):
    """Two independent characterizations of the primes disagree."""


class RankMismatch(MonadicaError):
    """The class group contradicts the rank formula for integer generators."""


class HypothesisViolated(MonadicaError):
    """Input does not satisfy the hypotheses of a constructed family."""
