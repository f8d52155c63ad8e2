"""On-disk segment cache.

Each segment is a raw binary file plus a JSON manifest next to it::

    mobius_<lo>_<hi>.bin     int8 mu values, one byte per n
    mangoldt_<lo>_<hi>.bin   packed records <u8 p, u1 m> per n (p = 0: not a prime power)
    <kind>_<lo>_<hi>.json    {"lo": .., "hi": .., "kind": .., "version": ..}
"""

from __future__ import annotations

import json
import os
from pathlib import Path

import numpy as np

from .arith import MangoldtTable, MobiusTable

CACHE_VERSION = 1
ENV_VAR = "PNTLAB_CACHE"

MANGOLDT_RECORD = np.dtype([("p", "<u8"), ("m", "u1")])


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "pntlab"


class SegmentCache:
    def __init__(self, root: str | os.PathLike):
        self.root = Path(root)

    def _stem(self, kind: str, lo: int, hi: int) -> Path:
        if kind not in ("mobius", "mangoldt"):
            raise ValueError(f"unknown segment kind {kind!r}")
        return self.root / f"{kind}_{lo}_{hi}"

    def save(self, table: MobiusTable | MangoldtTable) -> Path:
        self.root.mkdir(parents=True, exist_ok=True)
        if isinstance(table, MobiusTable):
            kind = "mobius"
            payload = table.values.astype(np.int8).tobytes()
        else:
            kind = "mangoldt"
            rec = np.empty(table.hi - table.lo, dtype=MANGOLDT_RECORD)
            rec["p"] = table.p
            rec["m"] = table.m
            payload = rec.tobytes()
        stem = self._stem(kind, table.lo, table.hi)
        stem.with_suffix(".bin").write_bytes(payload)
        manifest = {"lo": table.lo, "hi": table.hi, "kind": kind, "version": CACHE_VERSION}
        stem.with_suffix(".json").write_text(json.dumps(manifest, sort_keys=True) + "\n")
        return stem.with_suffix(".bin")

    def load(self, kind: str, lo: int, hi: int) -> MobiusTable | MangoldtTable | None:
        stem = self._stem(kind, lo, hi)
        man_path, bin_path = stem.with_suffix(".json"), stem.with_suffix(".bin")
        if not (man_path.exists() and bin_path.exists()):
            return None
        manifest = json.loads(man_path.read_text())
        if manifest != {"lo": lo, "hi": hi, "kind": kind, "version": CACHE_VERSION}:
            return None
        raw = bin_path.read_bytes()
        if kind == "mobius":
            vals = np.frombuffer(raw, dtype=np.int8).copy()
            if vals.size != hi - lo:
                return None
            return MobiusTable(lo, hi, vals)
        rec = np.frombuffer(raw, dtype=MANGOLDT_RECORD)
        if rec.size != hi - lo:
            return None
        return MangoldtTable(lo, hi, rec["p"].astype(np.uint64), rec["m"].astype(np.uint8))

    def segments(self, kind: str) -> list[tuple[int, int]]:
        out = []
        for man in sorted(self.root.glob(f"{kind}_*.json")):
            m = json.loads(man.read_text())
            out.append((m["lo"], m["hi"]))
        return sorted(out)
