"""
Pharaoh Word Alignments
-----------------------

One line per sentence pair, whitespace-separated zero-based ``i-j``
tokens linking source word ``i`` to target word ``j``.  An empty line means
the pair has no links.  "Possible" links written as ``i-j-p`` (or ``i?j``)
are rejected rather than guessed at.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from ..errors import TokenError

_LINK = re.compile(r"^([0-9]+)-([0-9]+)$")


@dataclass(frozen=True)
class WordAlignment:
    links: frozenset[tuple[int, int]]

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]]) -> "WordAlignment":
        return cls(frozenset((int(i), int(j)) for i, j in pairs))

    def __len__(self) -> int:
        return len(self.links)

    def sources_of(self, target_index: int) -> list[int]:
        """Source word indices linked to one target word, ascending."""
        return sorted(i for i, j in self.links if j == target_index)


def parse_word_alignment(line: str) -> WordAlignment:
    links = set()
    for token in line.split():
        match = _LINK.match(token)
        if match is None:
            raise TokenError(f"malformed alignment token {token!r}")
        links.add((int(match.group(1)), int(match.group(2))))
    return WordAlignment(frozenset(links))


def format_word_alignment(align: WordAlignment) -> str:
    return " ".join(f"{i}-{j}" for i, j in sorted(align.links))


def read_word_alignments(path: str | Path) -> list[WordAlignment]:
    """Parse a pharaoh file, one alignment per line, keeping line order."""
    alignments = []
    with open(path, "r", encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            try:
                alignments.append(parse_word_alignment(line))
            except TokenError as exc:
                raise TokenError(f"{path}:{lineno}: {exc}") from exc
    return alignments


def write_word_alignments(path: str | Path, alignments: Iterable[WordAlignment]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for align in alignments:
            f.write(format_word_alignment(align) + "\n")


__all__ = [
    "WordAlignment",
    "parse_word_alignment",
    "format_word_alignment",
    "read_word_alignments",
    "write_word_alignments",
]
