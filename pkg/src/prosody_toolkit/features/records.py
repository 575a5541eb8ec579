"""
Feature Files
-------------

On-disk formats for extracted features.  All files are UTF-8 JSON.

Feature record (one per utterance)::

    {"utterance_id": "...",
     "config": {<AnalysisConfig fields>},
     "f0": [Hz, ...], "voiced": [true, ...], "energy": [...]}

Normalization statistics::

    {"kind": "pitch" | "energy", "mean": ..., "std": ..., "count": ...}

Phoneme values (output of the aggregate step)::

    {"utterance_id": "...", "pitch": [...], "energy": [...],
     "pitch_support": [...], "energy_support": [...]}
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional

from pydantic import BaseModel, ValidationError, model_validator

from ..audio.spectral import stft_magnitudes
from ..audio.wav import AudioBuffer, resample
from ..config import AnalysisConfig
from ..errors import SchemaError
from ..utils.jsonio import read_json, write_json
from .contours import EnergyContour, FeatureKind, PitchContour
from .energy import extract_energy
from .normalize import NormStats, PhonemeValues
from .pitch import extract_pitch


@dataclass(frozen=True, eq=False)
class FeatureRecord:
    utterance_id: str
    pitch: PitchContour
    energy: EnergyContour

    def __post_init__(self) -> None:
        if len(self.pitch) != len(self.energy):
            raise ValueError(f"{self.utterance_id}: pitch has {len(self.pitch)} frames, energy {len(self.energy)}")

    @property
    def config(self) -> AnalysisConfig:
        return self.pitch.config

    def to_dict(self) -> dict[str, Any]:
        return {
            "utterance_id": self.utterance_id,
            "config": self.config.model_dump(),
            "f0": self.pitch.f0.tolist(),
            "voiced": self.pitch.voiced.tolist(),
            "energy": self.energy.energy.tolist(),
        }


class _FeatureDocument(BaseModel):
    utterance_id: str
    config: AnalysisConfig
    f0: list[float]
    voiced: list[bool]
    energy: list[float]

    @model_validator(mode="after")
    def _equal_lengths(self) -> "_FeatureDocument":
        if not len(self.f0) == len(self.voiced) == len(self.energy):
            raise ValueError("f0, voiced and energy must have the same length")
        return self


class _PhonemeValuesDocument(BaseModel):
    utterance_id: str
    pitch: list[float]
    energy: list[float]
    pitch_support: Optional[list[int]] = None
    energy_support: Optional[list[int]] = None


def extract_features(buf: AudioBuffer, cfg: AnalysisConfig, utterance_id: str) -> FeatureRecord:
    """Resample to the analysis rate and compute pitch and energy."""
    buf = resample(buf, cfg.sample_rate)
    pitch = extract_pitch(buf, cfg)
    energy = extract_energy(stft_magnitudes(buf, cfg))
    return FeatureRecord(utterance_id, pitch, energy)


def feature_record_from_dict(data: dict[str, Any]) -> FeatureRecord:
    try:
        doc = _FeatureDocument.model_validate(data)
        return FeatureRecord(
            doc.utterance_id,
            PitchContour(doc.f0, doc.voiced, doc.config),
            EnergyContour(doc.energy, doc.config),
        )
    except ValidationError as exc:
        raise SchemaError(f"invalid feature record: {exc}") from exc
    except ValueError as exc:
        raise SchemaError(f"inconsistent feature record: {exc}") from exc


def save_feature_record(path: str | Path, record: FeatureRecord) -> None:
    write_json(path, record.to_dict())


def load_feature_record(path: str | Path) -> FeatureRecord:
    return feature_record_from_dict(read_json(path))


def load_feature_dir(directory: str | Path) -> dict[str, FeatureRecord]:
    """All ``*.json`` feature records in a directory, keyed by utterance id."""
    records = {}
    for path in sorted(Path(directory).glob("*.json")):
        record = load_feature_record(path)
        records[record.utterance_id] = record
    return records


def save_norm_stats(path: str | Path, stats: NormStats) -> None:
    write_json(path, stats.to_dict())


def load_norm_stats(path: str | Path) -> NormStats:
    data = read_json(path)
    try:
        return NormStats.from_dict(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"{path}: invalid normalization statistics ({exc})") from exc


def save_phoneme_values(path: str | Path, utterance_id: str, pitch: PhonemeValues, energy: PhonemeValues) -> None:
    payload = {
        "utterance_id": utterance_id,
        "pitch": pitch.values.tolist(),
        "energy": energy.values.tolist(),
        "pitch_support": None if pitch.support is None else pitch.support.tolist(),
        "energy_support": None if energy.support is None else energy.support.tolist(),
    }
    write_json(path, payload)


def load_phoneme_values(path: str | Path) -> tuple[str, PhonemeValues, PhonemeValues]:
    data = read_json(path)
    try:
        doc = _PhonemeValuesDocument.model_validate(data)
        pitch = PhonemeValues(doc.pitch, FeatureKind.PITCH, True, doc.pitch_support)
        energy = PhonemeValues(doc.energy, FeatureKind.ENERGY, True, doc.energy_support)
    except ValidationError as exc:
        raise SchemaError(f"{path}: invalid phoneme values ({exc})") from exc
    except ValueError as exc:
        raise SchemaError(f"{path}: inconsistent phoneme values ({exc})") from exc
    if len(pitch) != len(energy):
        raise SchemaError(f"{path}: pitch and energy phoneme counts differ")
    return doc.utterance_id, pitch, energy


__all__ = [
    "FeatureRecord",
    "extract_features",
    "feature_record_from_dict",
    "save_feature_record",
    "load_feature_record",
    "load_feature_dir",
    "save_norm_stats",
    "load_norm_stats",
    "save_phoneme_values",
    "load_phoneme_values",
]
