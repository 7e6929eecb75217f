"""Exception types shared across the package.

Builtin exceptions cover the generic cases; the classes here name the
domain failures that callers are expected to branch on.
"""


class SwathEvalError(Exception):
    """Base class for all domain errors raised by this package."""


class EmptyListing(SwathEvalError):
    """Raised when a training listing resolves to zero images."""


class EmptyCorpus(SwathEvalError):
    """Raised when a search corpus has no candidates (after excluding
    the query itself)."""


class ModelLoadError(SwathEvalError):
    """Raised when a model artifact is missing, unreadable, or not one
    of ours."""


class MaskMismatch(SwathEvalError):
    """Raised when a mask and the image it annotates disagree in size."""
