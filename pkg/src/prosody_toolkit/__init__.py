"""
Prosody Toolkit
===============

Prosody feature pipeline for cross-lingual text-to-speech: pitch and energy
extraction, corpus normalization, phoneme and word aggregation, source
feature vectors (SFVs) that carry source-sentence prosody onto target
phonemes, model-input layouts, evaluation metrics and dataset tooling.

Modules
-------

``audio``
    WAV decoding/encoding, resampling, STFT and mel spectrograms.

``features``
    YIN pitch, frame energy, normalization statistics, phoneme averages.

``alignment``
    Utterance records, pharaoh word alignments, sync maps, TextGrid import.

``sfv``
    Word averages, SFV construction, model inputs, the addition transform.

``evaluation`` / ``reporting``
    Pitch moments, DTW pitch distance, energy MAE and report rendering.

``corpus``
    Chapter segmentation, manifests, duration filter, statistics, splits.

``cli``
    The ``prosody-toolkit`` command line.
"""

from .config import AnalysisConfig, Config, ToolConfig
from .executor import BatchExecutor
from .reporting.reporter import Reporter

__all__ = [
    "AnalysisConfig",
    "Config",
    "ToolConfig",
    "BatchExecutor",
    "Reporter",
]
