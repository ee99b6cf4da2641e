"""Pure-Python hot kernels.

Reference implementation of the list-scheduling evaluation kernel and the
four built-in computing workloads. edgeflow._kernels (Cython) mirrors this
module operation-for-operation; both must produce bit-identical results, so
keep every arithmetic expression and accumulation order in sync between the
two files.
"""

from __future__ import annotations

BACKEND = "pure-python"

_TIER_DEVICE = 0  # tier codes shared with the compiled kernel


class SimKernelContext:
    """Precomputed arrays for one (dag, env) pair.

    Tasks and nodes are referred to by dense indices; the engine layer owns
    the id <-> index mapping. ``pair_lat``/``pair_bw`` are flat n_nodes^2
    row-major matrices.
    """

    def __init__(
        self,
        topo_order,       # task indices, processing order
        lengths,          # MI per task
        edge_child,       # per edge: child task index (grouped by child, CSR)
        edge_parent,      # per edge: parent task index
        edge_bytes,       # per edge: payload bytes (float)
        edge_ptr,         # CSR offsets per task into edge_parent/edge_bytes
        entry_payload,    # per task: upload payload proxy (out-edge total)
        is_entry,         # per task: 1 if no in-edges
        is_exit,          # per task: 1 if no out-edges
        node_tier,        # per node: 0 device, 1 edge, 2 cloud
        node_mips,
        node_p_run,
        node_p_idle,
        node_p_tx,
        node_p_rx,
        node_cost_rate,
        origin,           # origin device node index
        pair_lat,         # flat node-pair latency seconds
        pair_bw,          # flat node-pair bandwidth bits/s (0 on the diagonal)
    ):
        self.n_tasks = len(lengths)
        self.n_nodes = len(node_mips)
        self.topo_order = list(topo_order)
        self.lengths = [float(x) for x in lengths]
        self.edge_child = list(edge_child)
        self.edge_parent = list(edge_parent)
        self.edge_bytes = [float(x) for x in edge_bytes]
        self.edge_ptr = list(edge_ptr)
        self.entry_payload = [float(x) for x in entry_payload]
        self.is_entry = list(is_entry)
        self.is_exit = list(is_exit)
        self.node_tier = list(node_tier)
        self.node_mips = [float(x) for x in node_mips]
        self.node_p_run = [float(x) for x in node_p_run]
        self.node_p_idle = [float(x) for x in node_p_idle]
        self.node_p_tx = [float(x) for x in node_p_tx]
        self.node_p_rx = [float(x) for x in node_p_rx]
        self.node_cost_rate = [float(x) for x in node_cost_rate]
        self.origin = int(origin)
        self.pair_lat = [float(x) for x in pair_lat]
        self.pair_bw = [float(x) for x in pair_bw]


def _transfer_seconds(ctx, a: int, b: int, bytes_: float) -> float:
    if a == b:
        return 0.0
    k = a * ctx.n_nodes + b
    return ctx.pair_lat[k] + 8.0 * bytes_ / ctx.pair_bw[k]


def _union(intervals):
    """Merge a list of (start, end) into disjoint intervals, sorted."""
    if not intervals:
        return []
    intervals.sort()
    out = [intervals[0]]
    for s, e in intervals[1:]:
        ls, le = out[-1]
        if s <= le:
            if e > le:
                out[-1] = (ls, e)
        else:
            out.append((s, e))
    return out


def _subtract_length(intervals, blockers):
    """Total length of ``intervals`` minus any overlap with ``blockers``.

    Both inputs must be sorted and internally disjoint.
    """
    total = 0.0
    j = 0
    nb = len(blockers)
    for s, e in intervals:
        cur = s
        while j < nb and blockers[j][1] <= cur:
            j += 1
        k = j
        while k < nb and blockers[k][0] < e:
            bs, be = blockers[k]
            if bs > cur:
                total += bs - cur
            if be > cur:
                cur = be
            if cur >= e:
                break
            k += 1
        if cur < e:
            total += e - cur
    return total


def simulate_kernel(ctx: SimKernelContext, assignment) -> dict:
    """Evaluate an assignment (node index per task) under list scheduling.

    Returns start/finish/transfer_in per task, makespan, end-device energy in
    joules, busy-hour cost in dollars, and the per-device time partition.
    """
    n_tasks = ctx.n_tasks
    n_nodes = ctx.n_nodes
    origin = ctx.origin
    starts = [0.0] * n_tasks
    finishes = [0.0] * n_tasks
    transfer_in = [0.0] * n_tasks
    avail = [0.0] * n_nodes
    busy_sec = [0.0] * n_nodes
    # per-node transfer interval collections (only device tiers accumulate)
    tx_iv = [[] for _ in range(n_nodes)]
    rx_iv = [[] for _ in range(n_nodes)]
    busy_iv = [[] for _ in range(n_nodes)]

    if len(assignment) != n_tasks:
        raise ValueError("assignment length mismatch")

    makespan = 0.0
    for i in ctx.topo_order:
        n = assignment[i]
        if n < 0 or n >= n_nodes:
            raise ValueError(f"assignment maps task {i} to unknown node {n}")
        data_ready = 0.0
        t_max = 0.0
        if ctx.is_entry[i]:
            if n != origin:
                tt = _transfer_seconds(ctx, origin, n, ctx.entry_payload[i])
                if tt > 0.0:
                    data_ready = tt
                    t_max = tt
                    tx_iv[origin].append((0.0, tt))
                    if ctx.node_tier[n] == _TIER_DEVICE:
                        rx_iv[n].append((0.0, tt))
        else:
            for k in range(ctx.edge_ptr[i], ctx.edge_ptr[i + 1]):
                p = ctx.edge_parent[k]
                a = assignment[p]
                fp = finishes[p]
                if a != n:
                    tt = _transfer_seconds(ctx, a, n, ctx.edge_bytes[k])
                    arrival = fp + tt
                    if arrival > data_ready:
                        data_ready = arrival
                    if tt > t_max:
                        t_max = tt
                    if tt > 0.0:
                        iv = (fp, fp + tt)
                        if ctx.node_tier[a] == _TIER_DEVICE:
                            tx_iv[a].append(iv)
                        if ctx.node_tier[n] == _TIER_DEVICE:
                            rx_iv[n].append(iv)
                else:
                    if fp > data_ready:
                        data_ready = fp
        start = avail[n] if avail[n] > data_ready else data_ready
        finish = start + ctx.lengths[i] / ctx.node_mips[n]
        starts[i] = start
        finishes[i] = finish
        transfer_in[i] = t_max
        avail[n] = finish
        busy_sec[n] += finish - start
        busy_iv[n].append((start, finish))
        if finish > makespan:
            makespan = finish

    # exit results return to the origin device (latency-only when no payload)
    for i in ctx.topo_order:
        if ctx.is_exit[i]:
            n = assignment[i]
            if n != origin:
                tt = _transfer_seconds(ctx, n, origin, 0.0)
                if tt > 0.0:
                    end = finishes[i] + tt
                    if ctx.node_tier[n] == _TIER_DEVICE:
                        tx_iv[n].append((finishes[i], end))
                    rx_iv[origin].append((finishes[i], end))
                    if end > makespan:
                        makespan = end

    # device accounting: one state at a time, priority run > tx > rx > idle
    energy = 0.0
    cost = 0.0
    device_times = []
    for n in range(n_nodes):
        if ctx.node_tier[n] == _TIER_DEVICE:
            busy = busy_iv[n]
            busy_len = 0.0
            for s, e in busy:
                busy_len += e - s
            tx_un = _union(tx_iv[n])
            tx_len = _subtract_length(tx_un, busy)
            occupied = _union(busy + tx_un)
            rx_un = _union(rx_iv[n])
            rx_len = _subtract_length(rx_un, occupied)
            idle_len = makespan - busy_len - tx_len - rx_len
            energy += (
                ctx.node_p_run[n] * busy_len
                + ctx.node_p_tx[n] * tx_len
                + ctx.node_p_rx[n] * rx_len
                + ctx.node_p_idle[n] * idle_len
            ) / 1000.0
            device_times.append((n, busy_len, tx_len, rx_len, idle_len))
        else:
            cost += ctx.node_cost_rate[n] * busy_sec[n] / 3600.0

    return {
        "starts": starts,
        "finishes": finishes,
        "transfer_in": transfer_in,
        "makespan": makespan,
        "energy": energy,
        "cost": cost,
        "device_times": device_times,
        "busy_sec": busy_sec,
    }


def evaluate_kernel(ctx: SimKernelContext, assignment):
    """(makespan, energy, cost) fast path used inside fitness loops."""
    res = simulate_kernel(ctx, assignment)
    return res["makespan"], res["energy"], res["cost"]


# --- built-in computing workloads --------------------------------------------

def pi_estimate(terms: int) -> float:
    """Alternating-series estimate of pi with a half-tail correction.

    Summed smallest-term-first; the correction keeps the absolute error
    within 4/((2n+1)(2n+3)), well under 1/(2n+1) for every n >= 1.
    """
    if terms < 1:
        raise ValueError("terms must be >= 1")
    acc = 0.0
    k = terms - 1
    while k >= 0:
        if k & 1:
            acc -= 1.0 / (2.0 * k + 1.0)
        else:
            acc += 1.0 / (2.0 * k + 1.0)
        k -= 1
    tail = 0.5 / (2.0 * terms + 1.0)
    if terms & 1:
        acc -= tail
    else:
        acc += tail
    return 4.0 * acc


def kmp_search(text: str, pattern: str) -> list[int]:
    """All (overlapping) match positions of pattern in text, via the KMP
    failure function."""
    if not pattern:
        raise ValueError("pattern must be non-empty")
    t = [ord(c) for c in text]
    p = [ord(c) for c in pattern]
    m = len(p)
    fail = [0] * m
    k = 0
    for i in range(1, m):
        while k > 0 and p[i] != p[k]:
            k = fail[k - 1]
        if p[i] == p[k]:
            k += 1
        fail[i] = k
    out = []
    k = 0
    for i in range(len(t)):
        while k > 0 and t[i] != p[k]:
            k = fail[k - 1]
        if t[i] == p[k]:
            k += 1
        if k == m:
            out.append(i - m + 1)
            k = fail[k - 1]
    return out


def levenshtein(a: str, b: str) -> int:
    """Edit distance (insert/delete/substitute), two-row DP."""
    xs = [ord(c) for c in a]
    ys = [ord(c) for c in b]
    n, m = len(xs), len(ys)
    if n == 0:
        return m
    if m == 0:
        return n
    prev = list(range(m + 1))
    cur = [0] * (m + 1)
    for i in range(1, n + 1):
        cur[0] = i
        xi = xs[i - 1]
        for j in range(1, m + 1):
            sub = prev[j - 1] + (0 if xi == ys[j - 1] else 1)
            ins = cur[j - 1] + 1
            dele = prev[j] + 1
            best = sub if sub <= ins else ins
            if dele < best:
                best = dele
            cur[j] = best
        prev, cur = cur, prev
    return prev[m]


def selection_sort(values) -> list[int]:
    """Classic O(n^2) selection sort; returns a new sorted list."""
    arr = list(values)
    n = len(arr)
    for i in range(n - 1):
        lo = i
        for j in range(i + 1, n):
            if arr[j] < arr[lo]:
                lo = j
        if lo != i:
            arr[i], arr[lo] = arr[lo], arr[i]
    return arr
