"""
Utterance Records
-----------------

Forced-alignment output distilled into a toolkit-defined JSON record::

    {"id": "frankenstein_de_0001",
     "language": "de",
     "phonemes": ["HH", "AH0", "L", "OW1"],
     "durations": [3, 2, 4, 6],
     "words": [{"text": "hello", "span": [0, 4]}]}

Durations are frame counts at the analysis hop.  Word spans are half-open
phoneme index ranges; silence and punctuation phonemes may sit outside
every span.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Annotated, Any

from pydantic import BaseModel, Field, ValidationError

from ..errors import DurationCountMismatch, SchemaError, SpanOverlap
from ..utils.jsonio import read_json, write_json


@dataclass(frozen=True)
class WordSpan:
    text: str
    start: int
    end: int

    def __len__(self) -> int:
        return self.end - self.start


@dataclass(frozen=True)
class Utterance:
    id: str
    language: str
    phonemes: tuple[str, ...]
    durations: tuple[int, ...]
    words: tuple[WordSpan, ...]

    @property
    def num_phonemes(self) -> int:
        return len(self.phonemes)

    @property
    def num_frames(self) -> int:
        return sum(self.durations)

    def word_phonemes(self, index: int) -> tuple[str, ...]:
        word = self.words[index]
        return self.phonemes[word.start : word.end]


class _WordDocument(BaseModel):
    text: str
    span: tuple[int, int]


class _UtteranceDocument(BaseModel):
    id: str
    language: str = Field(min_length=1)
    phonemes: list[str]
    durations: list[Annotated[int, Field(ge=0)]]
    words: list[_WordDocument] = []


def parse_utterance_record(document: dict[str, Any]) -> Utterance:
    try:
        doc = _UtteranceDocument.model_validate(document)
    except ValidationError as exc:
        raise SchemaError(f"invalid utterance record: {exc}") from exc

    if len(doc.durations) != len(doc.phonemes):
        raise DurationCountMismatch(
            f"{doc.id}: {len(doc.phonemes)} phonemes but {len(doc.durations)} durations"
        )

    previous_end = 0
    for word in doc.words:
        start, end = word.span
        if start < previous_end:
            raise SpanOverlap(f"{doc.id}: span {list(word.span)} of '{word.text}' overlaps the previous word")
        if start >= end:
            raise SchemaError(f"{doc.id}: empty or reversed span {list(word.span)} for '{word.text}'")
        if end > len(doc.phonemes):
            raise SchemaError(f"{doc.id}: span {list(word.span)} reaches past {len(doc.phonemes)} phonemes")
        previous_end = end

    return Utterance(
        id=doc.id,
        language=doc.language,
        phonemes=tuple(doc.phonemes),
        durations=tuple(doc.durations),
        words=tuple(WordSpan(w.text, w.span[0], w.span[1]) for w in doc.words),
    )


def serialize_utterance(utt: Utterance) -> dict[str, Any]:
    return {
        "id": utt.id,
        "language": utt.language,
        "phonemes": list(utt.phonemes),
        "durations": list(utt.durations),
        "words": [{"text": w.text, "span": [w.start, w.end]} for w in utt.words],
    }


def load_utterance(path: str | Path) -> Utterance:
    try:
        return parse_utterance_record(read_json(path))
    except (SchemaError, DurationCountMismatch, SpanOverlap) as exc:
        raise type(exc)(f"{path}: {exc}") from exc


def save_utterance(path: str | Path, utt: Utterance) -> None:
    write_json(path, serialize_utterance(utt))


__all__ = [
    "WordSpan",
    "Utterance",
    "parse_utterance_record",
    "serialize_utterance",
    "load_utterance",
    "save_utterance",
]
