"""Shared fixtures and the seeded random-instance corpus."""

from __future__ import annotations

import random

import pytest

from edgeflow.environment import (
    CLOUD,
    DEVICE,
    EDGE,
    Environment,
    NetworkModel,
    NodeSpec,
    table1_environment,
)
from edgeflow.workflow import DataEdge, TaskSpec, WorkflowDag


@pytest.fixture(scope="session")
def table1():
    return table1_environment()


@pytest.fixture(scope="session")
def single_node_env():
    """One Medium node per tier; the origin is the only device."""
    return table1_environment(counts={DEVICE: 1, EDGE: 1, CLOUD: 1})


def make_dag(name, tasks, edges=()):
    """tasks: (id, length) pairs; edges: (parent, child, bytes) triples."""
    return WorkflowDag(
        name,
        tuple(TaskSpec(tid, tid, length) for tid, length in tasks),
        tuple(DataEdge(p, c, b) for p, c, b in edges),
    )


def random_dag(rng: random.Random, max_tasks: int = 6) -> WorkflowDag:
    """Forward-edge random DAG with varied payloads (zero bytes included)."""
    n = rng.randint(1, max_tasks)
    tasks = [(f"t{i:02d}", float(rng.randrange(200, 3001))) for i in range(n)]
    edges = []
    for j in range(1, n):
        for i in range(j):
            if rng.random() < 0.4:
                nbytes = rng.choice([0, rng.randrange(1, 3_000_000)])
                edges.append((f"t{i:02d}", f"t{j:02d}", nbytes))
    return make_dag(f"rand-{n}", tasks, edges)


def random_env(rng: random.Random, max_nodes: int = 3) -> Environment:
    """1..max_nodes nodes across mixed tiers; always one origin device."""
    tiers = [DEVICE]
    extra = rng.randint(0, max_nodes - 1)
    pool = [DEVICE, EDGE, CLOUD]
    for _ in range(extra):
        tiers.append(rng.choice(pool))
    nodes = []
    for i, tier in enumerate(tiers):
        mips = float(rng.choice([600, 800, 1000, 1300, 1600, 2400]))
        if tier == DEVICE:
            nodes.append(
                NodeSpec(f"{tier}-{i:02d}", tier, mips, p_run=700.0, p_idle=30.0,
                         p_tx=100.0, p_rx=25.0, cost_rate=0.0)
            )
        else:
            rate = 0.48 if tier == EDGE else 0.96
            nodes.append(NodeSpec(f"{tier}-{i:02d}", tier, mips, cost_rate=rate))
    latency = {}
    if rng.random() < 0.3:
        from edgeflow.environment import tier_pair

        latency[tier_pair(DEVICE, EDGE)] = rng.choice([0.005, 0.02])
        latency[tier_pair(DEVICE, CLOUD)] = rng.choice([0.02, 0.05])
    network = NetworkModel(latency=latency)
    return Environment(tuple(nodes), network, nodes[0].id)


def corpus(master_seed: int, count: int):
    """The seeded random instance corpus used by the oracle suites."""
    rng = random.Random(master_seed)
    for k in range(count):
        yield k, random_dag(rng), random_env(rng)
