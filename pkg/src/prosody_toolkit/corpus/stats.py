"""
Corpus Statistics
-----------------

Per-language counts in the shape of a dataset table:

    # Audio files, # unique Tokens, # Words, # Speakers, Duration (hh:mm:ss)

Words are whitespace tokens after lowercasing and stripping punctuation.
Speakers are distinct ``(book, speaker)`` pairs, so a reader of several
books counts once per book.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Literal, Mapping, Optional

from ..errors import MissingTranscript
from ..reporting.tables import render_markdown_table, render_tsv_table
from .manifest import Manifest

_PUNCTUATION = re.compile(r"[^\w\s]")
THIN_SPACE = "\u2009"

STAT_ROWS = ("# Audio files", "# unique Tokens", "# Words", "# Speakers", "Duration (hh:mm:ss)")


def tokenize(text: str) -> list[str]:
    return _PUNCTUATION.sub("", text.lower()).split()


def format_count(n: int) -> str:
    """Thousands separated by thin spaces: 25635 -> '25 635'."""
    return f"{n:,}".replace(",", THIN_SPACE)


def format_duration(seconds: float) -> str:
    total = int(math.floor(seconds + 0.5))
    hours, rest = divmod(total, 3600)
    minutes, secs = divmod(rest, 60)
    return f"{hours:02d}:{minutes:02d}:{secs:02d}"


@dataclass(frozen=True)
class CorpusStats:
    audio_file_count: int = 0
    unique_token_count: int = 0
    word_count: int = 0
    speaker_count: int = 0
    total_seconds: float = 0.0

    @property
    def total_duration(self) -> str:
        return format_duration(self.total_seconds)

    def cells(self) -> list[str]:
        return [
            format_count(self.audio_file_count),
            format_count(self.unique_token_count),
            format_count(self.word_count),
            format_count(self.speaker_count),
            self.total_duration,
        ]


def corpus_stats(man: Manifest, transcripts: Optional[Mapping[str, str]] = None) -> CorpusStats:
    """Counts over a manifest; ``transcripts`` overrides the manifest's text column."""
    vocabulary: set[str] = set()
    words = 0
    speakers = set()
    for record in man:
        text = transcripts.get(record.id) if transcripts is not None else record.text
        if text is None:
            raise MissingTranscript(f"no transcript for {record.id}")
        tokens = tokenize(text)
        words += len(tokens)
        vocabulary.update(tokens)
        speakers.add((record.book, record.speaker))
    return CorpusStats(
        audio_file_count=len(man),
        unique_token_count=len(vocabulary),
        word_count=words,
        speaker_count=len(speakers),
        total_seconds=man.total_seconds,
    )


def corpus_stats_by_language(
    man: Manifest, transcripts: Optional[Mapping[str, str]] = None
) -> dict[str, CorpusStats]:
    languages = sorted({r.language for r in man})
    return {
        lang: corpus_stats(Manifest(tuple(r for r in man if r.language == lang)), transcripts)
        for lang in languages
    }


def render_stats_table(stats_by_language: Mapping[str, CorpusStats], fmt: Literal["tsv", "markdown"] = "tsv") -> str:
    languages = list(stats_by_language)
    columns = {lang: stats_by_language[lang].cells() for lang in languages}
    rows = [[label] + [columns[lang][i] for lang in languages] for i, label in enumerate(STAT_ROWS)]
    header = [""] + languages
    if fmt == "tsv":
        return render_tsv_table(header, rows)
    if fmt == "markdown":
        return render_markdown_table(header, rows)
    raise ValueError(f"unknown table format {fmt!r}")


__all__ = [
    "STAT_ROWS",
    "CorpusStats",
    "corpus_stats",
    "corpus_stats_by_language",
    "render_stats_table",
    "format_count",
    "format_duration",
    "tokenize",
]
