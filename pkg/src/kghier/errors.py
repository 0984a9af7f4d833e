"""Exception types raised by the ingestion and pipeline layers.

Contract violations in library calls (unknown tags, mismatched trees,
bad hyperparameters) raise plain ValueError/KeyError instead.
"""


class KghierError(Exception):
    """Base class for data and pipeline errors."""


class ParseError(KghierError):
    """A malformed line in a TSV input file."""

    def __init__(self, message, line=None, source=None):
        self.line = line
        self.source = source
        prefix = ""
        if source is not None:
            prefix += f"{source}: "
        if line is not None:
            prefix += f"line {line}: "
        super().__init__(prefix + message)


class EmptyResultError(KghierError):
    """An ingestion step produced no usable annotations."""


class RootConflictError(KghierError):
    """The synthetic root tag is already present in the vocabulary."""
