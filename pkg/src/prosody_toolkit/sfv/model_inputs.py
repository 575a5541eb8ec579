"""
Model Input Layouts
-------------------

Serializes what an acoustic model trainer needs for each conditioning mode:

``pho``
    source and target phoneme ids concatenated (source first).
``emb``
    target phoneme ids plus a ``2 x #PHONEME`` SFV block (row 0 pitch,
    row 1 energy) that replaces the last two embedding dimensions.
``epi``
    same block, additionally stacked onto the variance predictor input.

Model input file::

    {"utterance_id": "...", "mode": "emb", "phoneme_ids": [...],
     "sfv_channels": [[...], [...]] | null, "injection_site": "embedding-tail"}

Phoneme ids come from a vocabulary of ``label@language`` tokens so that
each language keeps its own phoneme namespace.  Id 0 is padding.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Any, Iterable, Optional

import numpy as np

from ..alignment.utterance import Utterance
from ..errors import LengthMismatch, MissingInput, SchemaError, VocabMiss
from ..utils.jsonio import read_json, write_json
from .builder import SourceFeatureVector

PAD_TOKEN = "<pad>"


class InputMode(str, Enum):
    PHO = "pho"
    EMB = "emb"
    EPI = "epi"


class InjectionSite(str, Enum):
    EMBEDDING_TAIL = "embedding-tail"
    EMBEDDING_TAIL_AND_PREDICTOR_INPUT = "embedding-tail-and-predictor-input"
    NONE = "none"


_SITES = {
    InputMode.PHO: InjectionSite.NONE,
    InputMode.EMB: InjectionSite.EMBEDDING_TAIL,
    InputMode.EPI: InjectionSite.EMBEDDING_TAIL_AND_PREDICTOR_INPUT,
}


def phoneme_token(label: str, language: str) -> str:
    return f"{label}@{language}"


class PhonemeVocabulary:
    """Bidirectional mapping between ``label@language`` tokens and ids."""

    def __init__(self, tokens: Iterable[str]) -> None:
        ordered = [PAD_TOKEN] + sorted(set(tokens) - {PAD_TOKEN})
        self._ids = {token: i for i, token in enumerate(ordered)}
        self._tokens = ordered

    @classmethod
    def from_utterances(cls, utterances: Iterable[Utterance]) -> "PhonemeVocabulary":
        return cls(phoneme_token(p, utt.language) for utt in utterances for p in utt.phonemes)

    def __len__(self) -> int:
        return len(self._tokens)

    def __contains__(self, token: str) -> bool:
        return token in self._ids

    @property
    def tokens(self) -> list[str]:
        return list(self._tokens)

    def id_of(self, label: str, language: str) -> int:
        token = phoneme_token(label, language)
        try:
            return self._ids[token]
        except KeyError:
            raise VocabMiss(f"phoneme {token!r} is not in the vocabulary") from None

    def encode(self, utt: Utterance) -> list[int]:
        return [self.id_of(p, utt.language) for p in utt.phonemes]

    def save(self, path: str | Path) -> None:
        write_json(path, {"tokens": self._tokens})

    @classmethod
    def load(cls, path: str | Path) -> "PhonemeVocabulary":
        data = read_json(path)
        tokens = data.get("tokens") if isinstance(data, dict) else None
        if not isinstance(tokens, list) or not tokens or tokens[0] != PAD_TOKEN:
            raise SchemaError(f"{path}: vocabulary must be a token list starting with {PAD_TOKEN!r}")
        return cls(tokens)


@dataclass(frozen=True, eq=False)
class ModelInputs:
    mode: InputMode
    phoneme_ids: tuple[int, ...]
    sfv_channels: Optional[np.ndarray]
    injection_site: InjectionSite

    def to_dict(self, utterance_id: str) -> dict[str, Any]:
        return {
            "utterance_id": utterance_id,
            "mode": self.mode.value,
            "phoneme_ids": list(self.phoneme_ids),
            "sfv_channels": None if self.sfv_channels is None else self.sfv_channels.tolist(),
            "injection_site": self.injection_site.value,
        }


def build_model_inputs(
    mode: InputMode | str,
    src_utt: Optional[Utterance],
    tgt_utt: Utterance,
    sfv: Optional[SourceFeatureVector],
    phoneme_vocab: PhonemeVocabulary,
) -> ModelInputs:
    mode = InputMode(mode)
    if mode is InputMode.PHO:
        if src_utt is None:
            raise MissingInput("mode 'pho' needs the source utterance")
        ids = phoneme_vocab.encode(src_utt) + phoneme_vocab.encode(tgt_utt)
        return ModelInputs(mode, tuple(ids), None, _SITES[mode])

    if sfv is None:
        raise MissingInput(f"mode {mode.value!r} needs a source feature vector")
    if tgt_utt.num_phonemes == 0:
        raise LengthMismatch(f"{tgt_utt.id}: target utterance has no phonemes")
    if len(sfv) != tgt_utt.num_phonemes:
        raise LengthMismatch(f"{tgt_utt.id}: SFV has {len(sfv)} positions for {tgt_utt.num_phonemes} phonemes")
    channels = np.vstack([sfv.pitch, sfv.energy])
    return ModelInputs(mode, tuple(phoneme_vocab.encode(tgt_utt)), channels, _SITES[mode])


def save_model_inputs(path: str | Path, utterance_id: str, inputs: ModelInputs) -> None:
    write_json(path, inputs.to_dict(utterance_id))


__all__ = [
    "PAD_TOKEN",
    "InputMode",
    "InjectionSite",
    "PhonemeVocabulary",
    "ModelInputs",
    "phoneme_token",
    "build_model_inputs",
    "save_model_inputs",
]
