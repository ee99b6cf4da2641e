"""Canonical structured-text (JSON) document handling.

Every persisted or transported document is serialized through
``canonical_json_bytes`` so byte-level equality holds for equal documents:
sorted keys, two-space indent, trailing newline.
"""

from __future__ import annotations

import json

from edgeflow.errors import InvalidDocumentError


def canonical_json_bytes(doc) -> bytes:
    return (json.dumps(doc, sort_keys=True, indent=2) + "\n").encode("utf-8")


def canonical_json_str(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def parse_json(text: str | bytes):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidDocumentError(f"invalid JSON document: {exc}") from exc
