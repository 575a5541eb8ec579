"""
Chapter Segmentation
--------------------

Cuts chapter recordings into sentence utterances along sync-map fragments.
Fragment ``i`` holds samples ``[round(begin * sr), round(end * sr))`` with
halves rounded away from zero, so fragments that share a timestamp share
no sample.
"""

from __future__ import annotations

import math

from ..alignment.syncmap import SegmentMap
from ..audio.wav import AudioBuffer
from ..errors import OutOfRange


def sample_index(seconds: float, sample_rate: int) -> int:
    return int(math.floor(seconds * sample_rate + 0.5))


def segment_audio(chapter: AudioBuffer, segments: SegmentMap) -> list[AudioBuffer]:
    pieces = []
    for fragment in segments:
        start = sample_index(fragment.begin, chapter.sample_rate)
        end = sample_index(fragment.end, chapter.sample_rate)
        if end > len(chapter):
            raise OutOfRange(
                f"fragment {fragment.id} ends at {fragment.end:.3f} s, chapter is {chapter.duration:.3f} s long"
            )
        pieces.append(AudioBuffer(chapter.samples[start:end], chapter.sample_rate))
    return pieces


__all__ = ["segment_audio", "sample_index"]
