"""Three-tier computing environment: nodes, network, and the primitive
time / energy / cost formulas everything else consumes.

Units: mips = MI/s, powers in mW, cost in dollars per busy hour, bandwidth in
bits per second, latency in seconds, payloads in bytes.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from edgeflow.errors import (
    InvalidCountError,
    InvalidEnvironmentError,
    MissingLinkError,
)
from edgeflow.workflow import TaskSpec

DEVICE = "device"
EDGE = "edge"
CLOUD = "cloud"
TIERS = (DEVICE, EDGE, CLOUD)

SMALL = "small"
MEDIUM = "medium"
LARGE = "large"
SIZE_CLASSES = (SMALL, MEDIUM, LARGE)

# Small/Large scale mips (and cost_rate on paid tiers) around the Medium
# baseline; Medium multiplier is exactly 1.
SIZE_FACTORS = {SMALL: 0.75, MEDIUM: 1.0, LARGE: 1.5}

# Default per-tier parameters (the Medium column of the preset table).
TIER_DEFAULTS = {
    DEVICE: dict(mips=1000.0, p_run=700.0, p_idle=30.0, p_tx=100.0, p_rx=25.0, cost_rate=0.0),
    EDGE: dict(mips=1300.0, p_run=0.0, p_idle=0.0, p_tx=0.0, p_rx=0.0, cost_rate=0.48),
    CLOUD: dict(mips=1600.0, p_run=0.0, p_idle=0.0, p_tx=0.0, p_rx=0.0, cost_rate=0.96),
}

MBPS = 1_000_000.0

# Default link speeds; ordering reflects fast local edge links and a slower
# device-cloud uplink. All configurable per pair.
DEFAULT_BANDWIDTH = {
    (DEVICE, DEVICE): 10 * MBPS,
    (DEVICE, EDGE): 10 * MBPS,
    (DEVICE, CLOUD): 5 * MBPS,
    (EDGE, EDGE): 100 * MBPS,
    (EDGE, CLOUD): 100 * MBPS,
    (CLOUD, CLOUD): 1000 * MBPS,
}


def tier_pair(a: str, b: str) -> tuple[str, str]:
    """Canonical unordered tier pair key (ordered by tier rank)."""
    ia, ib = TIERS.index(a), TIERS.index(b)
    return (a, b) if ia <= ib else (b, a)


@dataclass(frozen=True)
class NodeSpec:
    id: str
    tier: str
    mips: float
    p_run: float = 0.0
    p_idle: float = 0.0
    p_tx: float = 0.0
    p_rx: float = 0.0
    cost_rate: float = 0.0

    def __post_init__(self):
        if self.tier not in TIERS:
            raise InvalidEnvironmentError(f"node {self.id!r}: unknown tier {self.tier!r}")
        if not self.mips > 0:
            raise InvalidEnvironmentError(f"node {self.id!r}: mips must be > 0")
        for name in ("p_run", "p_idle", "p_tx", "p_rx", "cost_rate"):
            if getattr(self, name) < 0:
                raise InvalidEnvironmentError(f"node {self.id!r}: {name} must be >= 0")


@dataclass(frozen=True)
class NetworkModel:
    """Bandwidth/latency per unordered tier pair; same-node transfers are free."""

    bandwidth: dict = field(default_factory=lambda: dict(DEFAULT_BANDWIDTH))
    latency: dict = field(default_factory=dict)

    def __post_init__(self):
        for pair, bw in self.bandwidth.items():
            if not bw > 0:
                raise InvalidEnvironmentError(f"bandwidth for {pair} must be > 0")
        for pair, lat in self.latency.items():
            if lat < 0:
                raise InvalidEnvironmentError(f"latency for {pair} must be >= 0")

    def link(self, tier_a: str, tier_b: str) -> tuple[float, float]:
        """(bandwidth bps, latency s) for a tier pair; raises MissingLinkError."""
        pair = tier_pair(tier_a, tier_b)
        if pair not in self.bandwidth:
            raise MissingLinkError(f"no bandwidth entry for tier pair {pair}")
        return self.bandwidth[pair], self.latency.get(pair, 0.0)


@dataclass(frozen=True)
class Environment:
    nodes: tuple[NodeSpec, ...]
    network: NetworkModel
    origin_device: str

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        ids = [n.id for n in self.nodes]
        if len(set(ids)) != len(ids):
            raise InvalidEnvironmentError("duplicate node ids")
        origin = next((n for n in self.nodes if n.id == self.origin_device), None)
        if origin is None:
            raise InvalidEnvironmentError(f"origin device {self.origin_device!r} not in nodes")
        if origin.tier != DEVICE:
            raise InvalidEnvironmentError("origin device must be a Device-tier node")

    def node(self, node_id: str) -> NodeSpec:
        for n in self.nodes:
            if n.id == node_id:
                return n
        raise KeyError(node_id)

    def tier_nodes(self, tier: str) -> list[NodeSpec]:
        """Nodes of a tier in ascending id order."""
        return sorted((n for n in self.nodes if n.tier == tier), key=lambda n: n.id)

    def fastest_node(self, tier: str) -> NodeSpec | None:
        """Highest-mips node of a tier (ties to the lowest id), or None."""
        nodes = self.tier_nodes(tier)
        if not nodes:
            return None
        return sorted(nodes, key=lambda n: (-n.mips, n.id))[0]


def table1_environment(
    sizes: dict[str, str] | None = None,
    counts: dict[str, int] | None = None,
    network: NetworkModel | None = None,
) -> Environment:
    """Build the preset environment: per-tier node counts and size classes.

    Medium reproduces the preset table exactly; Small/Large scale mips by
    0.75/1.5 and scale cost_rate by the same factor on Edge/Cloud. Power draws
    never scale. Default is 2 nodes per tier, all Medium.
    """
    sizes = dict(sizes or {})
    counts = dict(counts or {})
    nodes: list[NodeSpec] = []
    for tier in TIERS:
        count = counts.get(tier, 2)
        if count < 1:
            raise InvalidCountError(f"{tier} count must be >= 1, got {count}")
        size = sizes.get(tier, MEDIUM)
        if size not in SIZE_CLASSES:
            raise InvalidEnvironmentError(f"unknown size class {size!r}")
        factor = SIZE_FACTORS[size]
        base = TIER_DEFAULTS[tier]
        for i in range(count):
            nodes.append(
                NodeSpec(
                    id=f"{tier}-{i:02d}",
                    tier=tier,
                    mips=base["mips"] * factor,
                    p_run=base["p_run"],
                    p_idle=base["p_idle"],
                    p_tx=base["p_tx"],
                    p_rx=base["p_rx"],
                    cost_rate=base["cost_rate"] * factor,
                )
            )
    return Environment(
        nodes=tuple(nodes),
        network=network or NetworkModel(),
        origin_device=nodes[0].id,
    )


def exec_time(task: TaskSpec, node: NodeSpec) -> float:
    """Seconds to execute a task on a node: length / mips."""
    return task.length / node.mips


def transfer_time(bytes_: int, from_node: NodeSpec, to_node: NodeSpec, net: NetworkModel) -> float:
    """Seconds to move a payload between nodes; zero on the same node."""
    if from_node.id == to_node.id:
        return 0.0
    bw, lat = net.link(from_node.tier, to_node.tier)
    return lat + 8.0 * bytes_ / bw


def busy_cost(node: NodeSpec, busy_seconds: float) -> float:
    """Dollars for keeping a node busy: cost_rate is per busy hour."""
    if busy_seconds < 0:
        raise InvalidEnvironmentError("busy_seconds must be >= 0")
    return node.cost_rate * busy_seconds / 3600.0


# --- structured-text (JSON document) form -----------------------------------

def environment_to_doc(env: Environment) -> dict:
    return {
        "nodes": [
            {
                "id": n.id,
                "tier": n.tier,
                "mips": n.mips,
                "p_run": n.p_run,
                "p_idle": n.p_idle,
                "p_tx": n.p_tx,
                "p_rx": n.p_rx,
                "cost_rate": n.cost_rate,
            }
            for n in env.nodes
        ],
        "network": {
            "bandwidth": {f"{a}-{b}": v for (a, b), v in sorted(env.network.bandwidth.items())},
            "latency": {f"{a}-{b}": v for (a, b), v in sorted(env.network.latency.items())},
        },
        "origin_device": env.origin_device,
    }


def _pair_from_key(key: str) -> tuple[str, str]:
    a, _, b = key.partition("-")
    if a not in TIERS or b not in TIERS:
        raise InvalidEnvironmentError(f"bad tier pair key {key!r}")
    return tier_pair(a, b)


def network_from_doc(doc: dict, base: NetworkModel | None = None) -> NetworkModel:
    """Network from a document; entries override the defaults (or ``base``)."""
    base = base or NetworkModel()
    bandwidth = dict(base.bandwidth)
    latency = dict(base.latency)
    for key, value in (doc.get("bandwidth") or {}).items():
        bandwidth[_pair_from_key(key)] = float(value)
    for key, value in (doc.get("latency") or {}).items():
        latency[_pair_from_key(key)] = float(value)
    return NetworkModel(bandwidth, latency)


def environment_from_doc(doc: dict) -> Environment:
    """Environment from a config document.

    Preset form: {"sizes": {...}, "counts": {...}, "network": {...},
    "node_overrides": {node-id: {field: value}}}. Explicit form instead lists
    "nodes" verbatim (plus "network" and "origin_device").
    """
    try:
        if "nodes" in doc:
            nodes = tuple(
                NodeSpec(
                    id=n["id"],
                    tier=n["tier"],
                    mips=float(n["mips"]),
                    p_run=float(n.get("p_run", 0.0)),
                    p_idle=float(n.get("p_idle", 0.0)),
                    p_tx=float(n.get("p_tx", 0.0)),
                    p_rx=float(n.get("p_rx", 0.0)),
                    cost_rate=float(n.get("cost_rate", 0.0)),
                )
                for n in doc["nodes"]
            )
            network = network_from_doc(doc.get("network") or {})
            origin = doc.get("origin_device") or next(
                n.id for n in nodes if n.tier == DEVICE
            )
            return Environment(nodes, network, origin)
        env = table1_environment(
            sizes=doc.get("sizes"),
            counts={t: int(c) for t, c in (doc.get("counts") or {}).items()},
            network=network_from_doc(doc.get("network") or {}),
        )
        overrides = doc.get("node_overrides") or {}
        if overrides:
            nodes = []
            for n in env.nodes:
                fields = overrides.get(n.id)
                if fields:
                    n = replace(n, **{k: float(v) for k, v in fields.items()})
                nodes.append(n)
            env = Environment(tuple(nodes), env.network, env.origin_device)
        return env
    except (KeyError, TypeError, ValueError, StopIteration) as exc:
        raise InvalidEnvironmentError(f"bad environment document: {exc}") from exc
