"""The four built-in computing tasks and their dispatcher.

Inputs are derived pseudorandomly from the binding's seed, so a real run is
reproducible: same binding, same input, same result digest. The compute cores
live in the kernel backends; this module generates inputs, validates
parameters, and summarizes results.
"""

from __future__ import annotations

import random
import zlib

from edgeflow import workflow as wf
from edgeflow.accel import kernels
from edgeflow.errors import TaskPanicError

# byte -> 'a'/'b' (kmp) and 'a'..'d' (levenshtein) translation tables
_AB_TABLE = bytes(97 + (i & 1) for i in range(256))
_ABCD_TABLE = bytes(97 + (i & 3) for i in range(256))


def pi_estimate(terms: int) -> float:
    return kernels.pi_estimate(terms)


def kmp_search(text: str, pattern: str) -> list[int]:
    return kernels.kmp_search(text, pattern)


def levenshtein(a: str, b: str) -> int:
    return kernels.levenshtein(a, b)


def selection_sort(values) -> list[int]:
    return kernels.selection_sort(values)


def _seeded_text(seed: int, length: int, table: bytes) -> str:
    rng = random.Random(seed)
    return rng.randbytes(length).translate(table).decode("ascii")


def _digest(payload: str) -> str:
    return format(zlib.crc32(payload.encode("utf-8")), "08x")


def run_builtin(binding: wf.TaskBinding) -> dict:
    """Execute one bound task; returns a result summary with a digest.

    Raises TaskPanicError for simulated-only bindings or invalid parameters;
    the executor maps that to the Failed status.
    """
    try:
        if binding.kind == wf.SIMULATED_ONLY:
            raise TaskPanicError("simulated-only binding cannot run for real")
        if binding.kind == wf.PI_CALCULATION:
            terms = int(binding.params.get("terms", 0))
            if terms < 1:
                raise TaskPanicError("pi-calculation needs terms >= 1")
            estimate = pi_estimate(terms)
            return {
                "kind": binding.kind,
                "terms": terms,
                "estimate": estimate,
                "digest": _digest(repr(estimate)),
            }
        if binding.kind == wf.KMP_MATCH:
            text_len = int(binding.params.get("text_len", 0))
            pattern_len = int(binding.params.get("pattern_len", 0))
            seed = int(binding.params.get("seed", 0))
            if text_len < 1 or pattern_len < 1 or pattern_len > text_len:
                raise TaskPanicError("kmp-match needs 1 <= pattern_len <= text_len")
            text = _seeded_text(seed, text_len, _AB_TABLE)
            pattern = _seeded_text(seed + 1, pattern_len, _AB_TABLE)
            positions = kmp_search(text, pattern)
            return {
                "kind": binding.kind,
                "text_len": text_len,
                "pattern_len": pattern_len,
                "matches": len(positions),
                "first": positions[0] if positions else -1,
                "digest": _digest(",".join(map(str, positions))),
            }
        if binding.kind == wf.LEVENSHTEIN_DISTANCE:
            len_a = int(binding.params.get("len_a", 0))
            len_b = int(binding.params.get("len_b", 0))
            seed = int(binding.params.get("seed", 0))
            if len_a < 1 or len_b < 1:
                raise TaskPanicError("levenshtein-distance needs both lengths >= 1")
            a = _seeded_text(seed, len_a, _ABCD_TABLE)
            b = _seeded_text(seed + 1, len_b, _ABCD_TABLE)
            distance = levenshtein(a, b)
            return {
                "kind": binding.kind,
                "len_a": len_a,
                "len_b": len_b,
                "distance": distance,
                "digest": _digest(str(distance)),
            }
        if binding.kind == wf.SELECTION_SORT:
            n = int(binding.params.get("n", 0))
            seed = int(binding.params.get("seed", 0))
            if n < 1:
                raise TaskPanicError("selection-sort needs n >= 1")
            rng = random.Random(seed)
            values = [rng.randrange(1_000_000) for _ in range(n)]
            ordered = selection_sort(values)
            if any(ordered[i] > ordered[i + 1] for i in range(n - 1)):
                raise TaskPanicError("selection-sort produced unsorted output")
            return {
                "kind": binding.kind,
                "n": n,
                "min": ordered[0],
                "max": ordered[-1],
                "digest": _digest(",".join(map(str, ordered))),
            }
        raise TaskPanicError(f"unknown binding kind {binding.kind!r}")
    except TaskPanicError:
        raise
    except Exception as exc:  # any internal failure maps to Failed upstream
        raise TaskPanicError(f"{binding.kind} failed: {exc}") from exc
