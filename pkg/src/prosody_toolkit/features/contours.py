"""Frame-level prosodic contours."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from ..config import AnalysisConfig


class FeatureKind(str, Enum):
    PITCH = "pitch"
    ENERGY = "energy"


def _frozen(values: np.ndarray, dtype: type) -> np.ndarray:
    arr = np.array(values, dtype=dtype)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class PitchContour:
    """F0 per frame plus voicing mask.

    Raw contours hold Hz with ``f0`` in [pitch_floor, pitch_ceiling] where
    voiced.  Normalized contours hold z-scores.  Unvoiced frames are 0 in
    both cases.
    """

    f0: np.ndarray
    voiced: np.ndarray
    config: AnalysisConfig
    normalized: bool = False

    kind = FeatureKind.PITCH

    def __post_init__(self) -> None:
        f0 = _frozen(self.f0, np.float64)
        voiced = _frozen(self.voiced, bool)
        if f0.shape != voiced.shape or f0.ndim != 1:
            raise ValueError(f"f0 {f0.shape} and voiced {voiced.shape} must be equal-length vectors")
        if np.any(f0[~voiced] != 0):
            raise ValueError("unvoiced frames must carry f0 = 0")
        if not self.normalized and voiced.any():
            lo, hi = f0[voiced].min(), f0[voiced].max()
            if lo < self.config.pitch_floor or hi > self.config.pitch_ceiling:
                raise ValueError(f"voiced f0 range [{lo:.1f}, {hi:.1f}] Hz outside the configured pitch range")
        object.__setattr__(self, "f0", f0)
        object.__setattr__(self, "voiced", voiced)

    def __len__(self) -> int:
        return self.f0.shape[0]

    @property
    def values(self) -> np.ndarray:
        return self.f0

    @property
    def pooled_values(self) -> np.ndarray:
        return self.f0[self.voiced]


@dataclass(frozen=True, eq=False)
class EnergyContour:
    """Frame energy (L2 norm of the magnitude spectrum), or its z-scores."""

    energy: np.ndarray
    config: AnalysisConfig
    normalized: bool = False

    kind = FeatureKind.ENERGY

    def __post_init__(self) -> None:
        energy = _frozen(self.energy, np.float64)
        if energy.ndim != 1 or not np.all(np.isfinite(energy)):
            raise ValueError("energy must be a finite vector")
        if not self.normalized and np.any(energy < 0):
            raise ValueError("raw energy must be nonnegative")
        object.__setattr__(self, "energy", energy)

    def __len__(self) -> int:
        return self.energy.shape[0]

    @property
    def values(self) -> np.ndarray:
        return self.energy

    @property
    def pooled_values(self) -> np.ndarray:
        return self.energy


Contour = PitchContour | EnergyContour

__all__ = ["FeatureKind", "PitchContour", "EnergyContour", "Contour"]
