"""Parsers for forced-alignment records, pharaoh word alignments and sync maps."""

from .pharaoh import (
    WordAlignment,
    format_word_alignment,
    parse_word_alignment,
    read_word_alignments,
    write_word_alignments,
)
from .syncmap import Fragment, SegmentMap, parse_sync_map, serialize_sync_map
from .textgrid import textgrid_to_record
from .utterance import (
    Utterance,
    WordSpan,
    load_utterance,
    parse_utterance_record,
    save_utterance,
    serialize_utterance,
)

__all__ = [
    "WordAlignment",
    "parse_word_alignment",
    "format_word_alignment",
    "read_word_alignments",
    "write_word_alignments",
    "Fragment",
    "SegmentMap",
    "parse_sync_map",
    "serialize_sync_map",
    "textgrid_to_record",
    "Utterance",
    "WordSpan",
    "parse_utterance_record",
    "serialize_utterance",
    "load_utterance",
    "save_utterance",
]
