"""Tables and their text / JSON / CSV renderings."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

SCHEMA_VERSION = 1
FORMATS = ("text", "json", "csv")


@dataclass
class Table:
    title: str
    columns: List[str]
    rows: List[Dict[str, Any]] = field(default_factory=list)
    data: Optional[Any] = None
    notes: List[str] = field(default_factory=list)


def _cell(value: Any) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    if value is None:
        return ""
    if isinstance(value, (dict, list, tuple)):
        return json.dumps(value, separators=(",", ":"), sort_keys=False)
    return str(value)


def render_text(table: Table) -> str:
    cells = [[_cell(r.get(c)) for c in table.columns] for r in table.rows]
    widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(table.columns)]
    lines = [table.title]
    lines.extend(f"# {n}" for n in table.notes)
    lines.append("  ".join(c.ljust(w) for c, w in zip(table.columns, widths)).rstrip())
    lines.append("  ".join("-" * w for w in widths))
    for row in cells:
        lines.append("  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"


def render_json(table: Table) -> str:
    obj = {"schema_version": SCHEMA_VERSION, "title": table.title, "columns": table.columns,
           "rows": [{c: r.get(c) for c in table.columns} for r in table.rows]}
    if table.notes:
        obj["notes"] = table.notes
    if table.data is not None:
        obj["data"] = table.data
    return json.dumps(obj, indent=2) + "\n"


def render_csv(table: Table) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(table.columns)
    for r in table.rows:
        w.writerow([_cell(r.get(c)) for c in table.columns])
    return buf.getvalue()


def emit(table: Table, fmt: str = "text") -> str:
    if fmt == "text":
        return render_text(table)
    if fmt == "json":
        return render_json(table)
    if fmt == "csv":
        return render_csv(table)
    raise ValueError(f"unknown format {fmt!r}")


__all__ = ["FORMATS", "SCHEMA_VERSION", "Table", "emit", "render_csv", "render_json",
           "render_text"]
