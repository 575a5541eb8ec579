"""Pitch moments, DTW pitch distance, energy MAE and corpus-level reports."""

from .corpus import GT_SYSTEM, EvalReport, EvalRow, evaluate_corpus, load_mos_scores
from .metrics import PitchMoments, dtw_pitch_distance, energy_mae, pitch_moments

__all__ = [
    "GT_SYSTEM",
    "EvalReport",
    "EvalRow",
    "evaluate_corpus",
    "load_mos_scores",
    "PitchMoments",
    "dtw_pitch_distance",
    "energy_mae",
    "pitch_moments",
]
