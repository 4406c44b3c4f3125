"""Exception types shared across the package."""


class GillabError(Exception):
    """Base class for library errors."""


class BracketSearchError(GillabError):
    """A bracket/witness search hit its stage ceiling.

    Signals insufficient refinement for the requested certificate, not a
    mathematical failure of the underlying construction.
    """


class BoxCountError(GillabError):
    """A box-chain composition exceeded the configured box-count ceiling."""


class CacheError(GillabError):
    """A cache file is missing, corrupt, or fails its content-hash check."""
