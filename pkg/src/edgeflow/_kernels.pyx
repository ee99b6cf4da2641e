# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot kernels.

Mirrors edgeflow._kernels_py operation-for-operation; both backends must
produce bit-identical results. Keep every arithmetic expression and every
accumulation order in sync with the pure module when changing either.
"""

from cpython.mem cimport PyMem_Free, PyMem_Malloc

import numpy as np

BACKEND = "cython"

cdef int TIER_DEVICE = 0


cdef class SimKernelContext:
    """Precomputed arrays for one (dag, env) pair; see the pure twin."""

    cdef public int n_tasks, n_nodes, origin
    cdef int[::1] topo_order
    cdef double[::1] lengths
    cdef int[::1] edge_parent
    cdef double[::1] edge_bytes
    cdef int[::1] edge_ptr
    cdef double[::1] entry_payload
    cdef signed char[::1] is_entry
    cdef signed char[::1] is_exit
    cdef signed char[::1] node_tier
    cdef double[::1] node_mips, node_p_run, node_p_idle, node_p_tx, node_p_rx
    cdef double[::1] node_cost_rate
    cdef double[::1] pair_lat, pair_bw

    def __init__(self, topo_order, lengths, edge_child, edge_parent, edge_bytes,
                  edge_ptr, entry_payload, is_entry, is_exit, node_tier, node_mips,
                  node_p_run, node_p_idle, node_p_tx, node_p_rx, node_cost_rate,
                  origin, pair_lat, pair_bw):
        self.n_tasks = len(lengths)
        self.n_nodes = len(node_mips)
        self.origin = origin
        self.topo_order = np.ascontiguousarray(topo_order, dtype=np.intc)
        self.lengths = np.ascontiguousarray(lengths, dtype=np.float64)
        self.edge_parent = np.ascontiguousarray(edge_parent, dtype=np.intc)
        self.edge_bytes = np.ascontiguousarray(edge_bytes, dtype=np.float64)
        self.edge_ptr = np.ascontiguousarray(edge_ptr, dtype=np.intc)
        self.entry_payload = np.ascontiguousarray(entry_payload, dtype=np.float64)
        self.is_entry = np.ascontiguousarray(is_entry, dtype=np.int8)
        self.is_exit = np.ascontiguousarray(is_exit, dtype=np.int8)
        self.node_tier = np.ascontiguousarray(node_tier, dtype=np.int8)
        self.node_mips = np.ascontiguousarray(node_mips, dtype=np.float64)
        self.node_p_run = np.ascontiguousarray(node_p_run, dtype=np.float64)
        self.node_p_idle = np.ascontiguousarray(node_p_idle, dtype=np.float64)
        self.node_p_tx = np.ascontiguousarray(node_p_tx, dtype=np.float64)
        self.node_p_rx = np.ascontiguousarray(node_p_rx, dtype=np.float64)
        self.node_cost_rate = np.ascontiguousarray(node_cost_rate, dtype=np.float64)
        self.pair_lat = np.ascontiguousarray(pair_lat, dtype=np.float64)
        self.pair_bw = np.ascontiguousarray(pair_bw, dtype=np.float64)


cdef inline double _transfer_seconds(SimKernelContext ctx, int a, int b, double bytes_):
    if a == b:
        return 0.0
    cdef int k = a * ctx.n_nodes + b
    return ctx.pair_lat[k] + 8.0 * bytes_ / ctx.pair_bw[k]


cdef void _sort_pairs(double* s, double* e, int n):
    # insertion sort by (start, end); interval counts stay small
    cdef int i, j
    cdef double ks, ke
    for i in range(1, n):
        ks = s[i]
        ke = e[i]
        j = i - 1
        while j >= 0 and (s[j] > ks or (s[j] == ks and e[j] > ke)):
            s[j + 1] = s[j]
            e[j + 1] = e[j]
            j -= 1
        s[j + 1] = ks
        e[j + 1] = ke


cdef int _union_inplace(double* s, double* e, int n):
    # merge sorted intervals in place; returns the merged count
    if n == 0:
        return 0
    cdef int w = 0
    cdef int i
    for i in range(1, n):
        if s[i] <= e[w]:
            if e[i] > e[w]:
                e[w] = e[i]
        else:
            w += 1
            s[w] = s[i]
            e[w] = e[i]
    return w + 1


cdef double _subtract_length(double* is_, double* ie, int n, double* bs, double* be, int nb):
    # total length of sorted disjoint intervals minus overlap with blockers
    cdef double total = 0.0
    cdef double cur
    cdef int j = 0
    cdef int i, k
    for i in range(n):
        cur = is_[i]
        while j < nb and be[j] <= cur:
            j += 1
        k = j
        while k < nb and bs[k] < ie[i]:
            if bs[k] > cur:
                total += bs[k] - cur
            if be[k] > cur:
                cur = be[k]
            if cur >= ie[i]:
                break
            k += 1
        if cur < ie[i]:
            total += ie[i] - cur
    return total


def simulate_kernel(SimKernelContext ctx, assignment):
    """Evaluate an assignment; see the pure twin for the semantics."""
    return _run(ctx, assignment, True)


def evaluate_kernel(SimKernelContext ctx, assignment):
    """(makespan, energy, cost) fast path used inside fitness loops."""
    res = _run(ctx, assignment, False)
    return res["makespan"], res["energy"], res["cost"]


cdef _run(SimKernelContext ctx, assignment, bint full):
    cdef int n_tasks = ctx.n_tasks
    cdef int n_nodes = ctx.n_nodes
    cdef int origin = ctx.origin
    cdef const int[::1] assign = np.ascontiguousarray(assignment, dtype=np.intc)
    if assign.shape[0] != n_tasks:
        raise ValueError("assignment length mismatch")

    cdef int n_edges = ctx.edge_parent.shape[0]
    cdef int iv_cap = n_edges + 2 * n_tasks + 2
    cdef int scratch_cap = 2 * iv_cap + 2 * n_tasks + 4
    cdef Py_ssize_t ndoubles = (
        3 * n_tasks + 2 * n_nodes + 2 * n_tasks + 4 * iv_cap + 4 * scratch_cap
    )
    cdef double* starts = <double*> PyMem_Malloc(ndoubles * sizeof(double))
    cdef int* tx_n = <int*> PyMem_Malloc((2 * iv_cap + n_tasks) * sizeof(int))
    if starts == NULL or tx_n == NULL:
        PyMem_Free(starts)
        PyMem_Free(tx_n)
        raise MemoryError()
    cdef double* finishes = starts + n_tasks
    cdef double* tin = finishes + n_tasks
    cdef double* avail = tin + n_tasks
    cdef double* busy_sec = avail + n_nodes
    cdef double* busy_s = busy_sec + n_nodes
    cdef double* busy_e = busy_s + n_tasks
    cdef double* tx_s = busy_e + n_tasks
    cdef double* tx_e = tx_s + iv_cap
    cdef double* rx_s = tx_e + iv_cap
    cdef double* rx_e = rx_s + iv_cap
    cdef double* g1_s = rx_e + iv_cap
    cdef double* g1_e = g1_s + scratch_cap
    cdef double* g2_s = g1_e + scratch_cap
    cdef double* g2_e = g2_s + scratch_cap
    cdef int* rx_n = tx_n + iv_cap
    cdef int* busy_n = rx_n + iv_cap
    cdef int tx_cnt = 0, rx_cnt = 0, busy_cnt = 0

    cdef int i, n, k, p, a, ti
    cdef double data_ready, t_max, tt, arrival, fp, start, finish, makespan, end

    for i in range(n_tasks):
        starts[i] = 0.0
        finishes[i] = 0.0
        tin[i] = 0.0
    for i in range(n_nodes):
        avail[i] = 0.0
        busy_sec[i] = 0.0

    makespan = 0.0
    for ti in range(n_tasks):
        i = ctx.topo_order[ti]
        n = assign[i]
        if n < 0 or n >= n_nodes:
            PyMem_Free(starts)
            PyMem_Free(tx_n)
            raise ValueError("assignment maps task %d to unknown node %d" % (i, n))
        data_ready = 0.0
        t_max = 0.0
        if ctx.is_entry[i]:
            if n != origin:
                tt = _transfer_seconds(ctx, origin, n, ctx.entry_payload[i])
                if tt > 0.0:
                    data_ready = tt
                    t_max = tt
                    tx_s[tx_cnt] = 0.0
                    tx_e[tx_cnt] = tt
                    tx_n[tx_cnt] = origin
                    tx_cnt += 1
                    if ctx.node_tier[n] == TIER_DEVICE:
                        rx_s[rx_cnt] = 0.0
                        rx_e[rx_cnt] = tt
                        rx_n[rx_cnt] = n
                        rx_cnt += 1
        else:
            for k in range(ctx.edge_ptr[i], ctx.edge_ptr[i + 1]):
                p = ctx.edge_parent[k]
                a = assign[p]
                fp = finishes[p]
                if a != n:
                    tt = _transfer_seconds(ctx, a, n, ctx.edge_bytes[k])
                    arrival = fp + tt
                    if arrival > data_ready:
                        data_ready = arrival
                    if tt > t_max:
                        t_max = tt
                    if tt > 0.0:
                        if ctx.node_tier[a] == TIER_DEVICE:
                            tx_s[tx_cnt] = fp
                            tx_e[tx_cnt] = fp + tt
                            tx_n[tx_cnt] = a
                            tx_cnt += 1
                        if ctx.node_tier[n] == TIER_DEVICE:
                            rx_s[rx_cnt] = fp
                            rx_e[rx_cnt] = fp + tt
                            rx_n[rx_cnt] = n
                            rx_cnt += 1
                else:
                    if fp > data_ready:
                        data_ready = fp
        start = avail[n] if avail[n] > data_ready else data_ready
        finish = start + ctx.lengths[i] / ctx.node_mips[n]
        starts[i] = start
        finishes[i] = finish
        tin[i] = t_max
        avail[n] = finish
        busy_sec[n] += finish - start
        busy_s[busy_cnt] = start
        busy_e[busy_cnt] = finish
        busy_n[busy_cnt] = n
        busy_cnt += 1
        if finish > makespan:
            makespan = finish

    # exit results return to the origin device (latency-only when no payload)
    for ti in range(n_tasks):
        i = ctx.topo_order[ti]
        if ctx.is_exit[i]:
            n = assign[i]
            if n != origin:
                tt = _transfer_seconds(ctx, n, origin, 0.0)
                if tt > 0.0:
                    end = finishes[i] + tt
                    if ctx.node_tier[n] == TIER_DEVICE:
                        tx_s[tx_cnt] = finishes[i]
                        tx_e[tx_cnt] = end
                        tx_n[tx_cnt] = n
                        tx_cnt += 1
                    rx_s[rx_cnt] = finishes[i]
                    rx_e[rx_cnt] = end
                    rx_n[rx_cnt] = origin
                    rx_cnt += 1
                    if end > makespan:
                        makespan = end

    # device accounting: one state at a time, priority run > tx > rx > idle
    cdef double energy = 0.0
    cdef double cost = 0.0
    cdef double busy_len, tx_len, rx_len, idle_len
    cdef int nb, ntx, nrx, nocc, b1, b2
    device_times = []
    for n in range(n_nodes):
        if ctx.node_tier[n] == TIER_DEVICE:
            # this node's busy intervals are already time-sorted
            nb = 0
            busy_len = 0.0
            for k in range(busy_cnt):
                if busy_n[k] == n:
                    g2_s[nb] = busy_s[k]
                    g2_e[nb] = busy_e[k]
                    busy_len += busy_e[k] - busy_s[k]
                    nb += 1
            ntx = 0
            for k in range(tx_cnt):
                if tx_n[k] == n:
                    g1_s[ntx] = tx_s[k]
                    g1_e[ntx] = tx_e[k]
                    ntx += 1
            _sort_pairs(g1_s, g1_e, ntx)
            ntx = _union_inplace(g1_s, g1_e, ntx)
            tx_len = _subtract_length(g1_s, g1_e, ntx, g2_s, g2_e, nb)
            # occupied = union(busy ++ tx): ordered merge matching a stable
            # (start, end) sort of the concatenation, then one union pass
            nocc = 0
            b1 = 0
            b2 = 0
            while b1 < nb or b2 < ntx:
                if b2 >= ntx or (b1 < nb and (g2_s[b1] < g1_s[b2] or
                        (g2_s[b1] == g1_s[b2] and g2_e[b1] <= g1_e[b2]))):
                    g1_s[ntx + nocc] = g2_s[b1]
                    g1_e[ntx + nocc] = g2_e[b1]
                    b1 += 1
                else:
                    g1_s[ntx + nocc] = g1_s[b2]
                    g1_e[ntx + nocc] = g1_e[b2]
                    b2 += 1
                nocc += 1
            nocc = _union_inplace(g1_s + ntx, g1_e + ntx, nocc)
            nrx = 0
            for k in range(rx_cnt):
                if rx_n[k] == n:
                    g2_s[nb + nrx] = rx_s[k]
                    g2_e[nb + nrx] = rx_e[k]
                    nrx += 1
            _sort_pairs(g2_s + nb, g2_e + nb, nrx)
            nrx = _union_inplace(g2_s + nb, g2_e + nb, nrx)
            rx_len = _subtract_length(g2_s + nb, g2_e + nb, nrx, g1_s + ntx, g1_e + ntx, nocc)
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

    result = {
        "makespan": makespan,
        "energy": energy,
        "cost": cost,
        "device_times": device_times,
    }
    if full:
        result["starts"] = [starts[i] for i in range(n_tasks)]
        result["finishes"] = [finishes[i] for i in range(n_tasks)]
        result["transfer_in"] = [tin[i] for i in range(n_tasks)]
        result["busy_sec"] = [busy_sec[i] for i in range(n_nodes)]
    PyMem_Free(starts)
    PyMem_Free(tx_n)
    return result


# --- built-in computing workloads --------------------------------------------

def pi_estimate(terms):
    """Alternating-series estimate of pi with a half-tail correction."""
    cdef long long n = terms
    if n < 1:
        raise ValueError("terms must be >= 1")
    cdef double acc = 0.0
    cdef long long k = n - 1
    while k >= 0:
        if k & 1:
            acc -= 1.0 / (2.0 * k + 1.0)
        else:
            acc += 1.0 / (2.0 * k + 1.0)
        k -= 1
    cdef double tail = 0.5 / (2.0 * n + 1.0)
    if n & 1:
        acc -= tail
    else:
        acc += tail
    return 4.0 * acc


def kmp_search(text, pattern):
    """All (overlapping) match positions of pattern in text."""
    if not pattern:
        raise ValueError("pattern must be non-empty")
    cdef const int[::1] t = np.frombuffer(text.encode("utf-32-le"), dtype=np.int32)
    cdef const int[::1] p = np.frombuffer(pattern.encode("utf-32-le"), dtype=np.int32)
    cdef int m = p.shape[0]
    cdef int nt = t.shape[0]
    cdef int* fail = <int*> PyMem_Malloc(m * sizeof(int))
    if fail == NULL:
        raise MemoryError()
    cdef int i, k
    fail[0] = 0
    k = 0
    for i in range(1, m):
        while k > 0 and p[i] != p[k]:
            k = fail[k - 1]
        if p[i] == p[k]:
            k += 1
        fail[i] = k
    out = []
    k = 0
    for i in range(nt):
        while k > 0 and t[i] != p[k]:
            k = fail[k - 1]
        if t[i] == p[k]:
            k += 1
        if k == m:
            out.append(i - m + 1)
            k = fail[k - 1]
    PyMem_Free(fail)
    return out


def levenshtein(a, b):
    """Edit distance (insert/delete/substitute), two-row DP."""
    cdef const int[::1] xs = np.frombuffer(a.encode("utf-32-le"), dtype=np.int32)
    cdef const int[::1] ys = np.frombuffer(b.encode("utf-32-le"), dtype=np.int32)
    cdef int n = xs.shape[0]
    cdef int m = ys.shape[0]
    if n == 0:
        return m
    if m == 0:
        return n
    cdef int* base = <int*> PyMem_Malloc(2 * (m + 1) * sizeof(int))
    if base == NULL:
        raise MemoryError()
    cdef int* prev = base
    cdef int* cur = base + m + 1
    cdef int* tmp
    cdef int i, j, xi, sub, ins, dele, best
    for j in range(m + 1):
        prev[j] = j
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
        tmp = prev
        prev = cur
        cur = tmp
    best = prev[m]
    PyMem_Free(base)
    return best


def selection_sort(values):
    """Classic O(n^2) selection sort; returns a new sorted list."""
    arr = np.array(values, dtype=np.int64)
    cdef long long[::1] v = arr
    cdef long long n = v.shape[0]
    cdef long long i, j, lo
    cdef long long swap
    for i in range(n - 1):
        lo = i
        for j in range(i + 1, n):
            if v[j] < v[lo]:
                lo = j
        if lo != i:
            swap = v[i]
            v[i] = v[lo]
            v[lo] = swap
    return [v[i] for i in range(n)]
