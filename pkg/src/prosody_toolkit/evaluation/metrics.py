"""
Prosody Metrics
---------------

``pitch_moments``
    standard deviation, skewness and kurtosis of pooled voiced F0.  The
    standard deviation is the population one; kurtosis is non-excess
    (``m4 / m2**2``, 3 for a normal distribution).
``dtw_pitch_distance``
    DTW over voiced F0 with local cost ``|a_i - b_j|`` and the symmetric
    step pattern (diagonal steps weigh 2).  Normalized mode divides the
    accumulated cost by ``len(a) + len(b)``.
``energy_mae``
    mean absolute frame difference; generated speech is expected to reuse
    ground-truth durations, so frame counts must agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from dtw import dtw
from scipy.stats import kurtosis, skew

from ..errors import EmptySequence, InsufficientData, LengthMismatch
from ..features.contours import EnergyContour, PitchContour


@dataclass(frozen=True)
class PitchMoments:
    sigma: float
    gamma: float
    kappa: float


def pitch_moments(pooled_f0: Sequence[float]) -> PitchMoments:
    """Population standard deviation, skewness and kurtosis of pooled voiced f0.

    Besides needing two values, the pool must not be constant: skewness and
    kurtosis divide by the variance, so a flat pool raises
    ``InsufficientData`` rather than reporting a made-up shape.
    """
    values = np.asarray(pooled_f0, dtype=np.float64)
    if values.size < 2:
        raise InsufficientData(f"pitch moments need at least 2 values, got {values.size}")
    sigma = float(np.std(values))
    if sigma == 0.0:
        raise InsufficientData(f"all {values.size} pooled pitch values are equal; skewness is undefined")
    return PitchMoments(
        sigma=sigma,
        gamma=float(skew(values, bias=True)),
        kappa=float(kurtosis(values, fisher=False, bias=True)),
    )


def _voiced_values(contour: PitchContour | Sequence[float]) -> np.ndarray:
    if isinstance(contour, PitchContour):
        return contour.pooled_values
    return np.asarray(contour, dtype=np.float64)


def dtw_pitch_distance(
    a: PitchContour | Sequence[float],
    b: PitchContour | Sequence[float],
    normalized: bool = True,
) -> float:
    """DTW distance between the voiced frames of two pitch contours.

    Plain sequences are taken as already voiced-only values.
    """
    x = _voiced_values(a)
    y = _voiced_values(b)
    if x.size == 0 or y.size == 0:
        raise EmptySequence(f"no voiced frames to compare ({x.size} vs {y.size})")
    local_cost = np.abs(x[:, None] - y[None, :])
    alignment = dtw(local_cost, step_pattern="symmetric2", distance_only=True)
    distance = float(alignment.distance)
    if normalized:
        distance /= x.size + y.size
    return distance


def energy_mae(gt: EnergyContour | Sequence[float], gen: EnergyContour | Sequence[float]) -> float:
    x = gt.values if isinstance(gt, EnergyContour) else np.asarray(gt, dtype=np.float64)
    y = gen.values if isinstance(gen, EnergyContour) else np.asarray(gen, dtype=np.float64)
    if x.shape != y.shape:
        raise LengthMismatch(
            f"energy contours have {x.shape[0]} and {y.shape[0]} frames; was the generation run with GT durations?"
        )
    if x.size == 0:
        raise EmptySequence("energy contours are empty")
    return float(np.mean(np.abs(x - y)))


__all__ = ["PitchMoments", "pitch_moments", "dtw_pitch_distance", "energy_mae"]
