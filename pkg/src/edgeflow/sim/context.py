"""Kernel-context construction: flattens a (dag, env[, plan]) triple into the
dense index arrays the evaluation kernels operate on."""

from __future__ import annotations

from edgeflow import accel
from edgeflow.environment import DEVICE, Environment, TIERS
from edgeflow.errors import EmptyTierError, InconsistentAssignmentError
from edgeflow.workflow import WorkflowDag, validate

_TIER_CODE = {tier: i for i, tier in enumerate(TIERS)}


class SimContext:
    """Dense-index view of a workflow/environment pair.

    Task indices follow the dag.tasks order; node indices follow ascending
    node id. When an offloading plan is given, ``allowed[i]`` lists the node
    indices task i may use, in ascending node-id order.
    """

    def __init__(self, dag: WorkflowDag, env: Environment, plan=None, kernels=None):
        self.dag = dag
        self.env = env
        self.kernels = kernels or accel.kernels

        self.task_ids = [t.id for t in dag.tasks]
        self.task_index = {tid: i for i, tid in enumerate(self.task_ids)}
        self.topo_ids = validate(dag)
        self.topo_order = [self.task_index[tid] for tid in self.topo_ids]
        self.lengths = [t.length for t in dag.tasks]

        self.node_ids = sorted(n.id for n in env.nodes)
        self.node_index = {nid: i for i, nid in enumerate(self.node_ids)}
        nodes = [env.node(nid) for nid in self.node_ids]
        self.nodes = nodes
        self.node_tier = [_TIER_CODE[n.tier] for n in nodes]
        self.origin = self.node_index[env.origin_device]

        n_tasks = len(self.task_ids)
        in_edges: list[list[tuple[int, int]]] = [[] for _ in range(n_tasks)]
        out_total = [0.0] * n_tasks
        for e in dag.edges:
            p = self.task_index[e.parent]
            c = self.task_index[e.child]
            in_edges[c].append((p, e.bytes))
            out_total[p] += float(e.bytes)
        for lst in in_edges:
            lst.sort()
        self.in_edges = in_edges
        self.out_total = out_total
        self.is_entry = [1 if not in_edges[i] else 0 for i in range(n_tasks)]
        out_deg = [0] * n_tasks
        for e in dag.edges:
            out_deg[self.task_index[e.parent]] += 1
        self.is_exit = [1 if out_deg[i] == 0 else 0 for i in range(n_tasks)]

        n_nodes = len(nodes)
        pair_lat = [0.0] * (n_nodes * n_nodes)
        pair_bw = [0.0] * (n_nodes * n_nodes)
        for a in range(n_nodes):
            for b in range(n_nodes):
                if a == b:
                    continue
                bw, lat = env.network.link(nodes[a].tier, nodes[b].tier)
                pair_lat[a * n_nodes + b] = lat
                pair_bw[a * n_nodes + b] = bw
        self.pair_lat = pair_lat
        self.pair_bw = pair_bw

        # CSR of in-edges, grouped per child task
        edge_child: list[int] = []
        edge_parent: list[int] = []
        edge_bytes: list[float] = []
        edge_ptr = [0]
        for i in range(n_tasks):
            for p, w in in_edges[i]:
                edge_child.append(i)
                edge_parent.append(p)
                edge_bytes.append(float(w))
            edge_ptr.append(len(edge_parent))

        self.kctx = self.kernels.SimKernelContext(
            topo_order=self.topo_order,
            lengths=self.lengths,
            edge_child=edge_child,
            edge_parent=edge_parent,
            edge_bytes=edge_bytes,
            edge_ptr=edge_ptr,
            entry_payload=out_total,
            is_entry=self.is_entry,
            is_exit=self.is_exit,
            node_tier=self.node_tier,
            node_mips=[n.mips for n in nodes],
            node_p_run=[n.p_run for n in nodes],
            node_p_idle=[n.p_idle for n in nodes],
            node_p_tx=[n.p_tx for n in nodes],
            node_p_rx=[n.p_rx for n in nodes],
            node_cost_rate=[n.cost_rate for n in nodes],
            origin=self.origin,
            pair_lat=pair_lat,
            pair_bw=pair_bw,
        )

        self.plan = plan
        self.allowed: list[list[int]] | None = None
        if plan is not None:
            allowed = []
            for tid in self.task_ids:
                tier = plan.tier_of[tid]
                node_idxs = [
                    self.node_index[n.id] for n in env.tier_nodes(tier)
                ]
                if not node_idxs:
                    raise EmptyTierError(
                        f"task {tid!r} offloaded to {tier} but the tier has no nodes"
                    )
                allowed.append(node_idxs)
            self.allowed = allowed

    # --- helpers shared by schedulers ----------------------------------------

    def exec_seconds(self, task_idx: int, node_idx: int) -> float:
        return self.lengths[task_idx] / self.nodes[node_idx].mips

    def transfer_seconds(self, a: int, b: int, bytes_: float) -> float:
        if a == b:
            return 0.0
        k = a * len(self.nodes) + b
        return self.pair_lat[k] + 8.0 * bytes_ / self.pair_bw[k]

    def assignment_vector(self, assignment: dict[str, str]) -> list[int]:
        """Node-index vector (task order) from an id -> id assignment map."""
        vec = []
        for tid in self.task_ids:
            nid = assignment.get(tid)
            if nid is None:
                raise InconsistentAssignmentError(f"task {tid!r} has no node assigned")
            idx = self.node_index.get(nid)
            if idx is None:
                raise InconsistentAssignmentError(
                    f"task {tid!r} assigned to unknown node {nid!r}"
                )
            if self.allowed is not None and idx not in self.allowed[self.task_index[tid]]:
                raise InconsistentAssignmentError(
                    f"task {tid!r} assigned to {nid!r} outside its offloaded tier"
                )
            vec.append(idx)
        return vec

    def assignment_map(self, vec) -> dict[str, str]:
        return {tid: self.node_ids[vec[i]] for i, tid in enumerate(self.task_ids)}

    def evaluate(self, vec) -> tuple[float, float, float]:
        """(makespan, energy, cost) for a node-index vector."""
        return self.kernels.evaluate_kernel(self.kctx, vec)

    def simulate_raw(self, vec) -> dict:
        return self.kernels.simulate_kernel(self.kctx, vec)
