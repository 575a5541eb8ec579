"""
Sync Maps
---------

Chapter-level sentence timestamps from a text-to-audio aligner::

    {"fragments": [{"id": "f000001", "begin": 0.0, "end": 1.0, "text": "..."}]}

``begin``/``end`` may be numbers or numeric strings ("1.280"), and the
aligner's ``lines`` list is accepted in place of ``text``.  Fragments are
ordered by begin time.  Overlapping fragments are kept; the map is flagged
and a warning logged.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Optional

from pydantic import BaseModel, Field, ValidationError

from ..errors import NegativeInterval, SchemaError
from ..utils.logger import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class Fragment:
    id: str
    begin: float
    end: float
    text: str

    @property
    def duration(self) -> float:
        return self.end - self.begin


@dataclass(frozen=True)
class SegmentMap:
    entries: tuple[Fragment, ...]
    has_overlap: bool = False

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


class _FragmentDocument(BaseModel):
    id: str
    begin: float = Field(ge=0.0)
    end: float = Field(ge=0.0)
    text: Optional[str] = None
    lines: Optional[list[str]] = None


class _SyncMapDocument(BaseModel):
    fragments: list[_FragmentDocument]


def parse_sync_map(document: dict[str, Any]) -> SegmentMap:
    try:
        doc = _SyncMapDocument.model_validate(document)
    except ValidationError as exc:
        raise SchemaError(f"invalid sync map: {exc}") from exc

    fragments = []
    for frag in doc.fragments:
        if frag.end <= frag.begin:
            raise NegativeInterval(f"fragment {frag.id}: end {frag.end} is not after begin {frag.begin}")
        text = frag.text if frag.text is not None else " ".join(frag.lines or [])
        fragments.append(Fragment(frag.id, frag.begin, frag.end, text))
    fragments.sort(key=lambda f: (f.begin, f.end))

    overlap = False
    for prev, cur in zip(fragments, fragments[1:]):
        if cur.begin < prev.end:
            logger.warning("Fragments %s and %s overlap (%.3f < %.3f)", prev.id, cur.id, cur.begin, prev.end)
            overlap = True
    return SegmentMap(tuple(fragments), has_overlap=overlap)


def serialize_sync_map(segments: SegmentMap) -> dict[str, Any]:
    return {
        "fragments": [
            {"id": f.id, "begin": f.begin, "end": f.end, "text": f.text} for f in segments.entries
        ]
    }


__all__ = ["Fragment", "SegmentMap", "parse_sync_map", "serialize_sync_map"]
