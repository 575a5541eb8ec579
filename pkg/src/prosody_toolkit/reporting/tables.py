"""
Markdown Tables
---------------

One jinja2 template renders every markdown table the toolkit writes: the
evaluation report and the per-language corpus statistics.  A table is a
header row, a ``---`` separator with one cell per column, then the body
rows, optionally preceded by an italic caption and a blank line.
"""

from __future__ import annotations

from typing import Optional, Sequence

from jinja2 import Environment

_TABLE_TEMPLATE = """\
{% if caption %}
_{{ caption }}_

{% endif %}
| {{ header | join(" | ") }} |
{{ separator }}
{% for cells in rows %}
| {{ cells | join(" | ") }} |
{% endfor %}
"""

_env = Environment(trim_blocks=True, lstrip_blocks=True, keep_trailing_newline=True)
_table = _env.from_string(_TABLE_TEMPLATE)


def render_markdown_table(
    header: Sequence[str], rows: Sequence[Sequence[str]], caption: Optional[str] = None
) -> str:
    return _table.render(
        caption=caption,
        header=list(header),
        separator="|" + " --- |" * len(header),
        rows=[list(cells) for cells in rows],
    )


def render_tsv_table(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    """Header plus rows, tab separated, one line each."""
    return "".join("\t".join(cells) + "\n" for cells in [header, *rows])


__all__ = ["render_markdown_table", "render_tsv_table"]
