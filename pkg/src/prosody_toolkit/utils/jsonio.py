"""JSON read/write helpers shared by every artifact format."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from ..errors import SchemaError


def write_json(path: str | Path, payload: Any) -> None:
    """Write UTF-8 JSON with a trailing newline; parent directories are created."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(payload, f, ensure_ascii=False)
        f.write("\n")


def read_json(path: str | Path) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: not valid JSON ({exc})") from exc


__all__ = ["write_json", "read_json"]
