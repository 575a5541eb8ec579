"""
Normalization and Phoneme Aggregation
-------------------------------------

Corpus statistics are pooled over every frame of a language's training
split (voiced frames only for pitch) and used to z-score contours, so that
0 means "average pitch or energy for this corpus".  Normalized contours are
then averaged over each phoneme's frame span.

Sums go through ``math.fsum`` so the statistics do not depend on the order
in which files were pooled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from ..errors import DurationMismatch, KindMismatch, NegativeDuration, NoValues
from ..utils.logger import get_logger
from .contours import Contour, EnergyContour, FeatureKind, PitchContour

logger = get_logger(__name__)


@dataclass(frozen=True)
class NormStats:
    kind: FeatureKind
    mean: float
    std: float
    count: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", FeatureKind(self.kind))
        if self.std < 0:
            raise ValueError("std must be nonnegative")
        if self.count < 1:
            raise ValueError("count must be at least 1")

    @property
    def degenerate(self) -> bool:
        return self.std == 0.0

    def to_dict(self) -> dict:
        return {"kind": self.kind.value, "mean": self.mean, "std": self.std, "count": self.count}

    @classmethod
    def from_dict(cls, data: dict) -> "NormStats":
        return cls(FeatureKind(data["kind"]), float(data["mean"]), float(data["std"]), int(data["count"]))


@dataclass(frozen=True, eq=False)
class PhonemeValues:
    """One value per phoneme.

    ``support`` counts the frames each value was averaged over (voiced
    frames for pitch), which lets word-level averages be recomputed
    exactly as frame means.
    """

    values: np.ndarray
    kind: FeatureKind
    normalized: bool
    support: Optional[np.ndarray] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", np.asarray(self.values, dtype=np.float64))
        object.__setattr__(self, "kind", FeatureKind(self.kind))
        if self.support is not None:
            support = np.asarray(self.support, dtype=np.int64)
            if support.shape != self.values.shape:
                raise ValueError("support must have one entry per phoneme")
            object.__setattr__(self, "support", support)

    def __len__(self) -> int:
        return self.values.shape[0]


def _check_kind(contour: Contour, kind: FeatureKind) -> None:
    if contour.kind != kind:
        raise KindMismatch(f"expected a {kind.value} contour, got {contour.kind.value}")


def fit_norm_stats(contours: Iterable[Contour], kind: FeatureKind | str) -> NormStats:
    """Mean and population standard deviation over the pooled values."""
    kind = FeatureKind(kind)
    pooled: list[float] = []
    for contour in contours:
        _check_kind(contour, kind)
        pooled.extend(contour.pooled_values.tolist())
    if not pooled:
        raise NoValues(f"no {kind.value} values to pool")
    count = len(pooled)
    mean = math.fsum(pooled) / count
    std = math.sqrt(math.fsum((v - mean) ** 2 for v in pooled) / count)
    stats = NormStats(kind, mean, std, count)
    if stats.degenerate:
        logger.warning("Degenerate %s statistics: all %d pooled values equal %.6g", kind.value, count, mean)
    return stats


def z_normalize(contour: Contour, stats: NormStats) -> Contour:
    """(v - mean) / std; unvoiced pitch frames stay 0, degenerate stats give all zeros."""
    _check_kind(contour, stats.kind)
    if stats.degenerate:
        scaled = np.zeros(len(contour))
    else:
        scaled = (contour.values - stats.mean) / stats.std
    if isinstance(contour, PitchContour):
        return PitchContour(np.where(contour.voiced, scaled, 0.0), contour.voiced, contour.config, normalized=True)
    return EnergyContour(scaled, contour.config, normalized=True)


def phoneme_average(contour: Contour, durations: Sequence[int]) -> PhonemeValues:
    """Average a contour over consecutive phoneme spans of ``durations`` frames."""
    durations = np.asarray(durations, dtype=np.int64)
    if np.any(durations < 0):
        raise NegativeDuration(f"negative phoneme duration in {durations.tolist()}")
    if int(durations.sum()) != len(contour):
        raise DurationMismatch(f"durations sum to {int(durations.sum())} frames, contour has {len(contour)}")

    if isinstance(contour, PitchContour):
        mask = contour.voiced
    else:
        mask = np.ones(len(contour), dtype=bool)

    values = np.zeros(len(durations))
    counts = np.zeros(len(durations), dtype=np.int64)
    bounds = np.concatenate([[0], np.cumsum(durations)])
    for p, (start, end) in enumerate(zip(bounds[:-1], bounds[1:])):
        span = contour.values[start:end][mask[start:end]]
        if span.size:
            values[p] = span.mean()
            counts[p] = span.size
    return PhonemeValues(values, contour.kind, contour.normalized, support=counts)


__all__ = ["NormStats", "PhonemeValues", "fit_norm_stats", "z_normalize", "phoneme_average"]
