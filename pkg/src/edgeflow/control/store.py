"""File-backed append-only run store.

One canonical-JSON document per entity under kind-specific directories, plus
an index file carrying the id counters. Terminal records are immutable: a
second put with different content raises; an identical put is a no-op.
"""

from __future__ import annotations

import os
import threading
from pathlib import Path

from edgeflow.control.docio import canonical_json_bytes, parse_json
from edgeflow.errors import InvalidDocumentError

PLANS = "plans"
SIMULATIONS = "simulations"
RUNS = "runs"
COMPARES = "compares"
KINDS = (PLANS, SIMULATIONS, RUNS, COMPARES)

_ID_PREFIX = {PLANS: "plan", RUNS: "run", COMPARES: "cmp"}


class RunStore:
    def __init__(self, root: str | os.PathLike):
        self.root = Path(root)
        self._lock = threading.Lock()
        for kind in KINDS:
            (self.root / kind).mkdir(parents=True, exist_ok=True)
        self._index_path = self.root / "index.json"
        if not self._index_path.exists():
            self._write_index({"counters": {}})

    def _write_index(self, index: dict) -> None:
        tmp = self._index_path.with_suffix(".tmp")
        tmp.write_bytes(canonical_json_bytes(index))
        tmp.replace(self._index_path)

    def _read_index(self) -> dict:
        return parse_json(self._index_path.read_bytes())

    def next_id(self, kind: str) -> str:
        prefix = _ID_PREFIX[kind]
        with self._lock:
            index = self._read_index()
            counter = index["counters"].get(kind, 0) + 1
            index["counters"][kind] = counter
            self._write_index(index)
        return f"{prefix}-{counter:06d}"

    def _path(self, kind: str, entity_id: str) -> Path:
        if kind not in KINDS:
            raise InvalidDocumentError(f"unknown store kind {kind!r}")
        safe = entity_id.replace("/", "_")
        return self.root / kind / f"{safe}.json"

    def put(self, kind: str, entity_id: str, doc: dict, overwrite: bool = False) -> None:
        payload = canonical_json_bytes(doc)
        path = self._path(kind, entity_id)
        with self._lock:
            if path.exists() and not overwrite:
                if path.read_bytes() == payload:
                    return
                raise InvalidDocumentError(
                    f"{kind}/{entity_id} already exists with different content"
                )
            tmp = path.with_suffix(".tmp")
            tmp.write_bytes(payload)
            tmp.replace(path)

    def get(self, kind: str, entity_id: str) -> dict | None:
        path = self._path(kind, entity_id)
        with self._lock:
            if not path.exists():
                return None
            return parse_json(path.read_bytes())

    def raw_bytes(self, kind: str, entity_id: str) -> bytes | None:
        path = self._path(kind, entity_id)
        with self._lock:
            return path.read_bytes() if path.exists() else None

    def exists(self, kind: str, entity_id: str) -> bool:
        return self._path(kind, entity_id).exists()

    def list_ids(self, kind: str) -> list[str]:
        return sorted(p.stem for p in (self.root / kind).glob("*.json"))
