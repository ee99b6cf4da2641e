"""Synthetic workflow generators: Montage-family layout and simple patterns."""

from __future__ import annotations

import random

from edgeflow.errors import InvalidCountError, InvalidWidthError
from edgeflow.workflow import DataEdge, TaskSpec, WorkflowDag

SEQUENTIAL = "sequential"
PARALLEL = "parallel"
HYBRID = "hybrid"
PATTERN_KINDS = (SEQUENTIAL, PARALLEL, HYBRID)

# Per-layer MI factors applied to the 1000 MI base length.
MONTAGE_LAYER_FACTORS = {
    "proj": 1.0,
    "diff": 0.5,
    "concat-fit": 0.8,
    "bg-model": 1.2,
    "corr": 0.6,
    "img-tbl": 0.4,
    "add": 2.0,
    "shrink": 0.7,
    "jpeg": 0.5,
}
MONTAGE_BASE_MI = 1000.0
MONTAGE_EDGE_BYTES = 1_000_000


def generate_montage(width: int, length_profile: float = 1.0, data_profile: float = 1.0) -> WorkflowDag:
    """Montage-family layered DAG with 3*width + 5 tasks.

    width projections feed adjacent-pair diffs; all diffs feed one concat-fit,
    then one background model; each of width corrections consumes the model
    plus its own projection; all corrections feed the image table, then
    add -> shrink -> jpeg linearly.
    """
    if width < 2:
        raise InvalidWidthError(f"montage width must be >= 2, got {width}")
    if length_profile <= 0 or data_profile <= 0:
        raise InvalidWidthError("profiles must be > 0")

    def mk(layer: str, index: int | None = None) -> TaskSpec:
        tid = layer if index is None else f"{layer}-{index:03d}"
        length = MONTAGE_BASE_MI * MONTAGE_LAYER_FACTORS[layer] * length_profile
        return TaskSpec(id=tid, label=tid, length=length)

    bytes_ = int(round(MONTAGE_EDGE_BYTES * data_profile))
    tasks: list[TaskSpec] = []
    edges: list[DataEdge] = []

    projs = [mk("proj", i) for i in range(width)]
    diffs = [mk("diff", i) for i in range(width - 1)]
    concat = mk("concat-fit")
    bg = mk("bg-model")
    corrs = [mk("corr", i) for i in range(width)]
    imgtbl = mk("img-tbl")
    add = mk("add")
    shrink = mk("shrink")
    jpeg = mk("jpeg")
    tasks = projs + diffs + [concat, bg] + corrs + [imgtbl, add, shrink, jpeg]

    for i, diff in enumerate(diffs):
        edges.append(DataEdge(projs[i].id, diff.id, bytes_))
        edges.append(DataEdge(projs[i + 1].id, diff.id, bytes_))
    for diff in diffs:
        edges.append(DataEdge(diff.id, concat.id, bytes_))
    edges.append(DataEdge(concat.id, bg.id, bytes_))
    for i, corr in enumerate(corrs):
        edges.append(DataEdge(bg.id, corr.id, bytes_))
        edges.append(DataEdge(projs[i].id, corr.id, bytes_))
    for corr in corrs:
        edges.append(DataEdge(corr.id, imgtbl.id, bytes_))
    edges.append(DataEdge(imgtbl.id, add.id, bytes_))
    edges.append(DataEdge(add.id, shrink.id, bytes_))
    edges.append(DataEdge(shrink.id, jpeg.id, bytes_))

    return WorkflowDag(f"montage-{width}", tuple(tasks), tuple(edges))


def generate_pattern(kind: str, n: int, seed: int = 0) -> WorkflowDag:
    """Template patterns: a chain, a fork-join, or a seeded random layered DAG."""
    if kind not in PATTERN_KINDS:
        raise InvalidCountError(f"unknown pattern kind {kind!r}")
    if kind == PARALLEL:
        if n < 3:
            raise InvalidCountError(f"parallel pattern needs n >= 3, got {n}")
    elif n < 1:
        raise InvalidCountError(f"{kind} pattern needs n >= 1, got {n}")

    def tid(i: int) -> str:
        return f"t{i:03d}"

    if kind == SEQUENTIAL:
        tasks = tuple(TaskSpec(tid(i), tid(i), 1000.0) for i in range(n))
        edges = tuple(DataEdge(tid(i), tid(i + 1), 1_000_000) for i in range(n - 1))
        return WorkflowDag(f"sequential-{n}", tasks, edges)

    if kind == PARALLEL:
        tasks = tuple(TaskSpec(tid(i), tid(i), 1000.0) for i in range(n))
        edges = [DataEdge(tid(0), tid(i), 1_000_000) for i in range(1, n - 1)]
        edges += [DataEdge(tid(i), tid(n - 1), 1_000_000) for i in range(1, n - 1)]
        return WorkflowDag(f"parallel-{n}", tasks, tuple(edges))

    # hybrid: seeded random layered DAG, every non-root wired to >= 1 parent
    # in the previous layer
    rng = random.Random(seed)
    tasks = tuple(
        TaskSpec(tid(i), tid(i), float(rng.randrange(500, 2001))) for i in range(n)
    )
    layers: list[list[int]] = []
    remaining = n
    idx = 0
    while remaining > 0:
        size = min(remaining, rng.randint(1, max(1, min(4, remaining))))
        layers.append(list(range(idx, idx + size)))
        idx += size
        remaining -= size
    edges = []
    for li in range(1, len(layers)):
        prev = layers[li - 1]
        for i in layers[li]:
            k = rng.randint(1, min(2, len(prev)))
            for p in sorted(rng.sample(prev, k)):
                edges.append(
                    DataEdge(tid(p), tid(i), rng.randrange(100_000, 2_000_001, 1000))
                )
    return WorkflowDag(f"hybrid-{n}-{seed}", tasks, tuple(edges))
