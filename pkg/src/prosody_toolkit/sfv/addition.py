"""Post-processing of variance predictor outputs."""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from ..alignment.utterance import Utterance
from ..errors import IndexOutOfRange, LengthMismatch


def apply_addition(predicted: Sequence[float], sfv_channel: Sequence[float]) -> np.ndarray:
    """Add one SFV channel to the matching predictor output, phoneme by phoneme.

    Source words below the corpus average carry negative z-scores and so
    lower the prediction.  A zero channel leaves the prediction unchanged.
    """
    predicted = np.asarray(predicted, dtype=np.float64)
    sfv_channel = np.asarray(sfv_channel, dtype=np.float64)
    if predicted.shape != sfv_channel.shape:
        raise LengthMismatch(f"prediction has {predicted.shape[0]} phonemes, SFV channel {sfv_channel.shape[0]}")
    return predicted + sfv_channel


def apply_word_offset(
    predicted: Sequence[float],
    utt: Utterance,
    word_indices: Iterable[int],
    delta: float,
) -> np.ndarray:
    """Raise (or lower, for negative ``delta``) the prediction over selected words."""
    predicted = np.array(predicted, dtype=np.float64)
    if predicted.shape[0] != utt.num_phonemes:
        raise LengthMismatch(f"{utt.id}: prediction has {predicted.shape[0]} phonemes, utterance {utt.num_phonemes}")
    for w in sorted(set(word_indices)):
        if not 0 <= w < len(utt.words):
            raise IndexOutOfRange(f"{utt.id}: word {w} out of range ({len(utt.words)} words)")
        word = utt.words[w]
        predicted[word.start : word.end] += delta
    return predicted


__all__ = ["apply_addition", "apply_word_offset"]
