"""CSV / JSON table serialization.

Floats are written with ``repr`` (shortest round-trip decimal), booleans as
``true``/``false``; CSV uses ``\\n`` line endings and a fixed column order per
table. JSON output is ``{"config": ..., "rows": [...], "version": ...}``.
"""

from __future__ import annotations

import dataclasses
import json
import math
import os
from pathlib import Path
from typing import Any, Sequence

from . import __version__


def _cell(v: Any) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    if v is None:
        return ""
    return str(v)


def _json_value(v: Any) -> Any:
    if isinstance(v, float) and not math.isfinite(v):
        return repr(v)
    return v


def to_csv(rows: Sequence[dict], columns: Sequence[str]) -> str:
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(_cell(row[c]) for c in columns))
    return "\n".join(lines) + "\n"


def to_json(rows: Sequence[dict], columns: Sequence[str], config: dict) -> str:
    doc = {
        "config": config,
        "rows": [{c: _json_value(row[c]) for c in columns} for row in rows],
        "version": __version__,
    }
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def render(rows: Sequence[dict], columns: Sequence[str], fmt: str, config: dict) -> str:
    if fmt == "csv":
        return to_csv(rows, columns)
    if fmt == "json":
        return to_json(rows, columns, config)
    raise ValueError(f"unknown format {fmt!r}")


def write_text(text: str, path: str | os.PathLike | None) -> None:
    if path is None or str(path) == "-":
        import sys

        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(Path(path), "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def row_of(obj, **extra) -> dict:
    """Flatten a result dataclass (and its properties named in ``extra``) to a dict."""
    d = {}
    for f in dataclasses.fields(obj):
        v = getattr(obj, f.name)
        if f.name == "cls":
            d.update(q=v.q, a=v.a, phi_q=v.phi_q)
        elif isinstance(v, float):
            d[f.name] = float(v)
        else:
            d[f.name] = v
    d.update(extra)
    return d
