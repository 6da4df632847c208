"""Exception types shared across the package."""

from __future__ import annotations


class LoreTagError(Exception):
    """Base class for all errors raised by this package."""


class DataFormatError(LoreTagError):
    """An input file does not conform to its documented format."""


class TokenMismatchError(LoreTagError):
    """Prediction and gold corpora disagree on their token sequences.

    Scoring requires both sides to contain the very same tokens; the first
    point of divergence is recorded so the offending sentence can be found.
    """

    def __init__(
        self,
        message: str,
        sentence_index: int | None = None,
        token_index: int | None = None,
    ):
        super().__init__(message)
        self.sentence_index = sentence_index
        self.token_index = token_index
