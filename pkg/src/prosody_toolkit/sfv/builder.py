"""
Source Feature Vectors
----------------------

A source feature vector (SFV) carries the source sentence's word-level
prosody over to the target phonemes:

1. z-scored phoneme values of the source utterance are averaged per word;
2. every target word takes the plain mean of the source words linked to it
   by the word alignment;
3. that value is repeated over each phoneme of the target word.

Target phonemes of unlinked words, and phonemes outside every word span,
get exactly 0 in both channels (0 is the corpus average after
normalization) and ``aligned_mask`` false.

SFV file::

    {"utterance_id": "...", "pitch": [...], "energy": [...], "aligned_mask": [...]}
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Any

import numpy as np
from pydantic import BaseModel, ValidationError, model_validator

from ..alignment.pharaoh import WordAlignment
from ..alignment.utterance import Utterance
from ..errors import IndexOutOfRange, LengthMismatch, SchemaError
from ..features.contours import FeatureKind
from ..features.normalize import PhonemeValues
from ..utils.jsonio import read_json, write_json


@dataclass(frozen=True, eq=False)
class WordValues:
    values: np.ndarray
    kind: FeatureKind
    normalized: bool = True

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", np.asarray(self.values, dtype=np.float64))
        object.__setattr__(self, "kind", FeatureKind(self.kind))

    def __len__(self) -> int:
        return self.values.shape[0]


@dataclass(frozen=True, eq=False)
class SourceFeatureVector:
    pitch: np.ndarray
    energy: np.ndarray
    aligned_mask: np.ndarray

    def __post_init__(self) -> None:
        pitch = np.asarray(self.pitch, dtype=np.float64)
        energy = np.asarray(self.energy, dtype=np.float64)
        mask = np.asarray(self.aligned_mask, dtype=bool)
        if not pitch.shape == energy.shape == mask.shape or pitch.ndim != 1:
            raise LengthMismatch(
                f"SFV channels differ in length: pitch {pitch.shape}, energy {energy.shape}, mask {mask.shape}"
            )
        if np.any(pitch[~mask] != 0) or np.any(energy[~mask] != 0):
            raise ValueError("unaligned SFV positions must be 0 in both channels")
        object.__setattr__(self, "pitch", pitch)
        object.__setattr__(self, "energy", energy)
        object.__setattr__(self, "aligned_mask", mask)

    def __len__(self) -> int:
        return self.pitch.shape[0]

    def channel(self, kind: FeatureKind | str) -> np.ndarray:
        return self.pitch if FeatureKind(kind) is FeatureKind.PITCH else self.energy

    def to_dict(self, utterance_id: str) -> dict[str, Any]:
        return {
            "utterance_id": utterance_id,
            "pitch": self.pitch.tolist(),
            "energy": self.energy.tolist(),
            "aligned_mask": self.aligned_mask.tolist(),
        }


class _SfvDocument(BaseModel):
    utterance_id: str
    pitch: list[float]
    energy: list[float]
    aligned_mask: list[bool]

    @model_validator(mode="after")
    def _equal_lengths(self) -> "_SfvDocument":
        if not len(self.pitch) == len(self.energy) == len(self.aligned_mask):
            raise ValueError("pitch, energy and aligned_mask must have the same length")
        return self


def word_averages(phoneme_values: PhonemeValues, utt: Utterance) -> WordValues:
    """Frame-weighted mean of the phoneme values inside each word span.

    Phonemes are weighted by ``support`` when the values carry it (voiced
    frame counts for pitch), otherwise by their durations.  A word with no
    weight at all, e.g. fully unvoiced, is 0.
    """
    if len(phoneme_values) != utt.num_phonemes:
        raise LengthMismatch(
            f"{utt.id}: {len(phoneme_values)} phoneme values for {utt.num_phonemes} phonemes"
        )
    if phoneme_values.support is not None:
        weights = phoneme_values.support.astype(np.float64)
    else:
        weights = np.asarray(utt.durations, dtype=np.float64)

    values = np.zeros(len(utt.words))
    for w, word in enumerate(utt.words):
        span_weights = weights[word.start : word.end]
        total = span_weights.sum()
        if total > 0:
            values[w] = float(np.dot(phoneme_values.values[word.start : word.end], span_weights) / total)
    return WordValues(values, phoneme_values.kind, normalized=phoneme_values.normalized)


def _check_links(align: WordAlignment, num_source: int, num_target: int) -> None:
    for i, j in sorted(align.links):
        if not 0 <= i < num_source:
            raise IndexOutOfRange(f"link {i}-{j}: source word {i} out of range ({num_source} words)")
        if not 0 <= j < num_target:
            raise IndexOutOfRange(f"link {i}-{j}: target word {j} out of range ({num_target} words)")


def build_sfv(
    src_pitch: WordValues,
    src_energy: WordValues,
    align: WordAlignment,
    tgt: Utterance,
) -> SourceFeatureVector:
    if len(src_pitch) != len(src_energy):
        raise LengthMismatch(f"source pitch has {len(src_pitch)} words, energy {len(src_energy)}")
    _check_links(align, len(src_pitch), len(tgt.words))

    pitch = np.zeros(tgt.num_phonemes)
    energy = np.zeros(tgt.num_phonemes)
    mask = np.zeros(tgt.num_phonemes, dtype=bool)
    for j, word in enumerate(tgt.words):
        sources = align.sources_of(j)
        if not sources:
            continue
        pitch[word.start : word.end] = np.mean(src_pitch.values[sources])
        energy[word.start : word.end] = np.mean(src_energy.values[sources])
        mask[word.start : word.end] = True
    return SourceFeatureVector(pitch, energy, mask)


def zero_sfv(tgt: Utterance) -> SourceFeatureVector:
    n = tgt.num_phonemes
    return SourceFeatureVector(np.zeros(n), np.zeros(n), np.zeros(n, dtype=bool))


def save_sfv(path: str | Path, utterance_id: str, sfv: SourceFeatureVector) -> None:
    write_json(path, sfv.to_dict(utterance_id))


def load_sfv(path: str | Path) -> tuple[str, SourceFeatureVector]:
    data = read_json(path)
    try:
        doc = _SfvDocument.model_validate(data)
        return doc.utterance_id, SourceFeatureVector(doc.pitch, doc.energy, doc.aligned_mask)
    except ValidationError as exc:
        raise SchemaError(f"{path}: invalid SFV file ({exc})") from exc
    except ValueError as exc:
        raise SchemaError(f"{path}: inconsistent SFV file ({exc})") from exc


__all__ = [
    "WordValues",
    "SourceFeatureVector",
    "word_averages",
    "build_sfv",
    "zero_sfv",
    "save_sfv",
    "load_sfv",
]
