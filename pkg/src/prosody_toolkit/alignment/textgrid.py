"""
TextGrid Conversion
-------------------

Turns an aligner TextGrid with a phone tier and a word tier into the
utterance record schema.  Phone boundaries are quantized to analysis
frames the way TTS preprocessing does it::

    duration = round(end * sr / hop) - round(start * sr / hop)

Empty or silence intervals become silence phonemes outside any word span.
When the number of feature frames is known, the last phoneme absorbs the
rounding difference so that durations add up to the contour length.
"""

from __future__ import annotations

from pathlib import Path
from typing import Any, Optional

import numpy as np
import tgt

from ..config import AnalysisConfig
from ..errors import SchemaError

SILENCE_LABELS = frozenset({"", "sil", "sp", "spn"})
_EPS = 1e-6


def textgrid_to_record(
    path: str | Path,
    utterance_id: str,
    language: str,
    cfg: AnalysisConfig,
    num_frames: Optional[int] = None,
    phone_tier: str = "phones",
    word_tier: str = "words",
) -> dict[str, Any]:
    try:
        grid = tgt.io.read_textgrid(str(path), include_empty_intervals=True)
        phones = grid.get_tier_by_name(phone_tier).intervals
        words = grid.get_tier_by_name(word_tier).intervals
    except ValueError as exc:
        raise SchemaError(f"{path}: {exc}") from exc

    labels: list[str] = []
    durations: list[int] = []
    for interval in phones:
        label = interval.text.strip()
        labels.append("sil" if label in SILENCE_LABELS else label)
        durations.append(
            int(
                np.round(interval.end_time * cfg.sample_rate / cfg.hop_length)
                - np.round(interval.start_time * cfg.sample_rate / cfg.hop_length)
            )
        )

    if num_frames is not None and durations:
        durations[-1] += num_frames - sum(durations)
        if durations[-1] < 0:
            raise SchemaError(f"{path}: alignment runs {-durations[-1]} frames past the {num_frames}-frame contour")

    spans = []
    for word in words:
        text = word.text.strip()
        if text.lower() in SILENCE_LABELS:
            continue
        inside = [
            i
            for i, phone in enumerate(phones)
            if phone.start_time >= word.start_time - _EPS
            and phone.end_time <= word.end_time + _EPS
            and labels[i] != "sil"
        ]
        if inside:
            spans.append({"text": text, "span": [inside[0], inside[-1] + 1]})

    return {
        "id": utterance_id,
        "language": language,
        "phonemes": labels,
        "durations": durations,
        "words": spans,
    }


__all__ = ["textgrid_to_record", "SILENCE_LABELS"]
