"""Pitch and energy extraction, corpus normalization and phoneme aggregation."""

from .contours import Contour, EnergyContour, FeatureKind, PitchContour
from .energy import extract_energy
from .normalize import NormStats, PhonemeValues, fit_norm_stats, phoneme_average, z_normalize
from .pitch import extract_pitch
from .records import (
    FeatureRecord,
    extract_features,
    load_feature_dir,
    load_feature_record,
    load_norm_stats,
    load_phoneme_values,
    save_feature_record,
    save_norm_stats,
    save_phoneme_values,
)

__all__ = [
    "Contour",
    "EnergyContour",
    "FeatureKind",
    "PitchContour",
    "extract_energy",
    "extract_pitch",
    "NormStats",
    "PhonemeValues",
    "fit_norm_stats",
    "z_normalize",
    "phoneme_average",
    "FeatureRecord",
    "extract_features",
    "load_feature_dir",
    "load_feature_record",
    "save_feature_record",
    "load_norm_stats",
    "save_norm_stats",
    "load_phoneme_values",
    "save_phoneme_values",
]
