"""Dataset tooling: segmentation, manifests, statistics and splits."""

from .manifest import (
    Manifest,
    ManifestRecord,
    SplitSpec,
    duration_filter,
    read_manifest,
    split_manifest,
    write_manifest,
    write_split,
)
from .segment import segment_audio
from .stats import CorpusStats, corpus_stats, corpus_stats_by_language, render_stats_table

__all__ = [
    "Manifest",
    "ManifestRecord",
    "SplitSpec",
    "duration_filter",
    "read_manifest",
    "split_manifest",
    "write_manifest",
    "write_split",
    "segment_audio",
    "CorpusStats",
    "corpus_stats",
    "corpus_stats_by_language",
    "render_stats_table",
]
