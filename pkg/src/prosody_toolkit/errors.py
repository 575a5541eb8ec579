"""
Error Types
-----------

Every failure the toolkit reports on purpose is a subclass of
:class:`ProsodyToolkitError`.  The base derives from ``ValueError`` so that
callers which only care about "bad input" can keep catching that, while
batch drivers and the CLI can tell toolkit errors apart from programming
errors.
"""

from __future__ import annotations


class ProsodyToolkitError(ValueError):
    """Base class for all toolkit errors."""


class ConfigError(ProsodyToolkitError):
    """Settings file or option values are invalid."""


# audio
class MalformedHeader(ProsodyToolkitError):
    """Truncated or invalid RIFF/WAVE container."""


class UnsupportedEncoding(ProsodyToolkitError):
    """WAVE data that is not 16-bit PCM."""


class EmptySignal(ProsodyToolkitError):
    """An analysis was asked for on zero samples."""


# features
class NoValues(ProsodyToolkitError):
    """Nothing to pool, e.g. every pitch frame is unvoiced."""


class KindMismatch(ProsodyToolkitError):
    """Pitch statistics applied to energy or vice versa."""


class DurationMismatch(ProsodyToolkitError):
    """Phoneme durations do not add up to the contour length."""


class NegativeDuration(ProsodyToolkitError):
    """A phoneme duration below zero."""


# alignment artifacts
class SchemaError(ProsodyToolkitError):
    """A document does not match the expected schema."""


class SpanOverlap(ProsodyToolkitError):
    """Word spans overlap or are out of order."""


class DurationCountMismatch(ProsodyToolkitError):
    """Number of durations differs from number of phonemes."""


class TokenError(ProsodyToolkitError):
    """Malformed token in a pharaoh alignment line."""


class NegativeInterval(ProsodyToolkitError):
    """Sync-map fragment whose end is not after its begin."""


# sfv
class LengthMismatch(ProsodyToolkitError):
    """Two sequences that must line up have different lengths."""


class IndexOutOfRange(ProsodyToolkitError):
    """Alignment link pointing past a word list."""


class VocabMiss(ProsodyToolkitError):
    """Phoneme label missing from the vocabulary."""


class MissingInput(ProsodyToolkitError):
    """An input required by the selected mode was not given."""


# evaluation
class InsufficientData(ProsodyToolkitError):
    """Fewer values than a statistic needs."""


class EmptySequence(ProsodyToolkitError):
    """A contour has no voiced frames left to compare."""


class MissingUtterance(ProsodyToolkitError):
    """A generated utterance has no ground-truth counterpart."""


class EmptySystem(ProsodyToolkitError):
    """A system to evaluate has no utterances."""


class UtteranceFailures(ProsodyToolkitError):
    """One or more utterances failed during a batched evaluation.

    ``failures`` holds every ``(key, exception)`` pair so that callers can
    list them all, not just the first.
    """

    def __init__(self, failures: list[tuple[str, Exception]]) -> None:
        self.failures = list(failures)
        keys = ", ".join(key for key, _ in self.failures)
        super().__init__(f"{len(self.failures)} utterance(s) failed: {keys}")


# corpus
class OutOfRange(ProsodyToolkitError):
    """Fragment reaches beyond the end of the chapter audio."""


class MissingTranscript(ProsodyToolkitError):
    """A manifest record has no transcript."""


class BadSpec(ProsodyToolkitError):
    """Split counts or ratios are inconsistent with the manifest."""


__all__ = [name for name in dir() if name[0].isupper()]
