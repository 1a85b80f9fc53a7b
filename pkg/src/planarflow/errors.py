"""Exception types shared across the package."""


class PlanarFlowError(Exception):
    """Base class for all planarflow errors."""


class NonEmbedding(PlanarFlowError):
    """The rotation system does not describe a planar embedding."""


class DanglingDart(PlanarFlowError):
    """A rotation references a dart that does not exist."""


class NotConnected(PlanarFlowError):
    """Operation requires a connected graph."""


class InvalidParams(PlanarFlowError):
    """Generator or division parameters are out of range."""


class ParseError(PlanarFlowError):
    """Malformed PLEM/PFLO input."""


class CyclicSupport(PlanarFlowError):
    """Excess draining requires an acyclic flow support graph."""


class TooManySinks(PlanarFlowError):
    """The recursive solver accepts at most the configured number of sinks."""


class CannotSatisfyBounds(PlanarFlowError):
    """Division failed to meet size/boundary/hole bounds within the split budget."""


class SeparatorFailed(PlanarFlowError):
    """No fundamental cycle achieved the required weight balance."""


class SearchFailed(PlanarFlowError):
    """Bounded counterexample search exhausted without a hit."""
