"""Reach centrality and betweenness centrality, exact by construction.

Betweenness uses the unordered-pair convention: each pair {s, t} with
s != t != u is counted once.  Exact mode keeps every value a Fraction
(shortest-path ties produce fractional contributions, and the verification
thresholds separate by amounts far below the totals, so rounding is not an
option there).  Float mode exists for benchmarks.

Two routes to the same number:

* :func:`betweenness` — classic Brandes dependency accumulation over every
  node, pure python, meant for small and medium graphs.
* :func:`betweenness_of` — single-node value via per-source shortest-path
  counts, backed by the compiled BFS kernels; this is what the decision
  pipelines use on gadget-sized graphs.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction

import numpy as np

from . import kernels
from .graph import DisconnectedError, GraphError, LabeledGraph, bfs_distances

# per-source counts above this trigger the big-integer fallback
_SIGMA_GUARD = np.int64(1) << 40


def reach_centrality(g: LabeledGraph, u: int) -> int:
    """max over pairs (s, t) with d(s,t) = d(s,u) + d(u,t) of min(d(s,u), d(u,t))."""
    g._check_node(u)
    du = bfs_distances(g, u)
    if (du < 0).any():
        raise DisconnectedError("graph is disconnected")
    n = g.n_nodes
    best = 0
    chunk = max(1, (1 << 22) // max(n, 1))
    row = np.empty((chunk, n), np.int32)
    for lo in range(0, n, chunk):
        src = np.arange(lo, min(lo + chunk, n), dtype=np.int32)
        out = row[: src.shape[0]]
        kernels.dist_many_kernel(g.indptr, g.indices, src, out)
        through = out == du[src][:, None] + du[None, :]
        vals = np.minimum(du[src][:, None], du[None, :])
        if through.any():
            best = max(best, int(vals[through].max()))
    return best


def _adjacency_lists(g: LabeledGraph) -> list[list[int]]:
    return [g.neighbors(v).tolist() for v in range(g.n_nodes)]


def _brandes_source(adj, s):
    """One Brandes phase: returns (stack order, predecessors, sigma, dist)."""
    n = len(adj)
    dist = [-1] * n
    sigma = [0] * n
    preds: list[list[int]] = [[] for _ in range(n)]
    dist[s] = 0
    sigma[s] = 1
    order = []
    q = deque([s])
    while q:
        v = q.popleft()
        order.append(v)
        for w in adj[v]:
            if dist[w] < 0:
                dist[w] = dist[v] + 1
                q.append(w)
            if dist[w] == dist[v] + 1:
                sigma[w] += sigma[v]
                preds[w].append(v)
    return order, preds, sigma, dist


def betweenness(g: LabeledGraph, mode: str = "exact", allow_disconnected: bool = False):
    """Betweenness of every node; a list of Fractions or a float array.

    O(nm) BFS phases with dependency accumulation; exact mode does all
    fractional arithmetic in Fractions (no rounding ever).  Pairs in
    different components have no paths and contribute nothing; opting in via
    ``allow_disconnected`` makes that explicit.
    """
    if mode not in ("exact", "float"):
        raise GraphError(f"unknown mode {mode!r}")
    adj = _adjacency_lists(g)
    n = g.n_nodes
    zero = Fraction(0) if mode == "exact" else 0.0
    bc = [zero] * n
    for s in range(n):
        order, preds, sigma, dist = _brandes_source(adj, s)
        if len(order) != n and not allow_disconnected:
            raise DisconnectedError("graph is disconnected")
        delta = [zero] * n
        for w in reversed(order):
            if preds[w]:
                if mode == "exact":
                    coeff = (1 + delta[w]) / Fraction(sigma[w])
                else:
                    coeff = (1 + delta[w]) / sigma[w]
                for v in preds[w]:
                    delta[v] += sigma[v] * coeff
            if w != s:
                bc[w] += delta[w]
    # each unordered pair was accumulated from both endpoints
    if mode == "exact":
        return [x / 2 for x in bc]
    return np.asarray(bc) / 2.0


def _sigma_rows_python(adj, s):
    """Big-integer dist and sigma from s (fallback when counts overflow int64)."""
    n = len(adj)
    dist = [-1] * n
    sigma = [0] * n
    dist[s] = 0
    sigma[s] = 1
    q = deque([s])
    while q:
        v = q.popleft()
        for w in adj[v]:
            if dist[w] < 0:
                dist[w] = dist[v] + 1
                q.append(w)
            if dist[w] == dist[v] + 1:
                sigma[w] += sigma[v]
    return dist, sigma


def betweenness_of(g: LabeledGraph, x: int, mode: str = "exact", allow_disconnected: bool = False):
    """Betweenness of the single node x over unordered pairs {s, t}.

    Sums sigma(s,x) * sigma(x,t) / sigma(s,t) over pairs with
    d(s,x) + d(x,t) = d(s,t).  Contributions are grouped by denominator so
    the exact total costs one Fraction addition per distinct sigma value.
    """
    if mode not in ("exact", "float"):
        raise GraphError(f"unknown mode {mode!r}")
    g._check_node(x)
    n = g.n_nodes
    dist_x = np.empty(n, np.int32)
    sigma_x = np.empty(n, np.int64)
    mx = kernels.bfs_sigma_kernel(g.indptr, g.indices, x, dist_x, sigma_x)
    if (dist_x < 0).any() and not allow_disconnected:
        raise DisconnectedError("graph is disconnected")
    if mx > _SIGMA_GUARD:
        return _betweenness_of_python(g, x, mode)
    by_denom: dict[int, int] = {}
    total_f = 0.0
    dist_s = np.empty(n, np.int32)
    sigma_s = np.empty(n, np.int64)
    t_all = np.arange(n)
    for s in range(n):
        if s == x:
            continue
        ms = kernels.bfs_sigma_kernel(g.indptr, g.indices, s, dist_s, sigma_s)
        if ms > _SIGMA_GUARD or int(ms) * int(mx) > int(_SIGMA_GUARD):
            return _betweenness_of_python(g, x, mode)
        if dist_s[x] < 0:
            continue  # s in a component that does not contain x
        mask = (t_all > s) & (t_all != x) & (dist_s >= 0) & (dist_s == dist_s[x] + dist_x)
        if not mask.any():
            continue
        nums = sigma_s[x] * sigma_x[mask]
        dens = sigma_s[mask]
        if mode == "float":
            total_f += float((nums / dens).sum())
            continue
        uniq, inverse = np.unique(dens, return_inverse=True)
        acc = np.zeros(uniq.shape[0], np.int64)
        np.add.at(acc, inverse, nums)
        for dd, num in zip(uniq.tolist(), acc.tolist()):
            by_denom[dd] = by_denom.get(dd, 0) + num
    if mode == "float":
        return total_f
    return sum((Fraction(num, dd) for dd, num in sorted(by_denom.items())), Fraction(0))


def betweenness_subset_of(g: LabeledGraph, x: int, sources, targets,
                          mode: str = "exact", allow_disconnected: bool = False):
    """Contribution to the betweenness of x from pairs (s, t) in sources x targets.

    Sources and targets must be disjoint node sets not containing x; each
    pair is counted once.  Same exact arithmetic as :func:`betweenness_of`.
    """
    if mode not in ("exact", "float"):
        raise GraphError(f"unknown mode {mode!r}")
    g._check_node(x)
    src = [int(s) for s in sources]
    tgt = np.asarray(targets, np.int64)
    if x in src or x in tgt:
        raise GraphError("x must not be among the sources or targets")
    if set(src) & set(tgt.tolist()):
        raise GraphError("sources and targets must be disjoint")
    n = g.n_nodes
    dist_x = np.empty(n, np.int32)
    sigma_x = np.empty(n, np.int64)
    mx = kernels.bfs_sigma_kernel(g.indptr, g.indices, x, dist_x, sigma_x)
    if (dist_x < 0).any() and not allow_disconnected:
        raise DisconnectedError("graph is disconnected")
    by_denom: dict[int, int] = {}
    total_f = 0.0
    dist_s = np.empty(n, np.int32)
    sigma_s = np.empty(n, np.int64)
    for s in src:
        ms = kernels.bfs_sigma_kernel(g.indptr, g.indices, s, dist_s, sigma_s)
        if ms > _SIGMA_GUARD or int(ms) * int(mx) > int(_SIGMA_GUARD):
            raise GraphError("shortest-path counts exceed the int64 guard")
        if dist_s[x] < 0:
            continue
        dt = dist_s[tgt]
        mask = (dt >= 0) & (dt == dist_s[x] + dist_x[tgt])
        if not mask.any():
            continue
        nums = sigma_s[x] * sigma_x[tgt[mask]]
        dens = sigma_s[tgt[mask]]
        if mode == "float":
            total_f += float((nums / dens).sum())
            continue
        uniq, inverse = np.unique(dens, return_inverse=True)
        acc = np.zeros(uniq.shape[0], np.int64)
        np.add.at(acc, inverse, nums)
        for dd, num in zip(uniq.tolist(), acc.tolist()):
            by_denom[dd] = by_denom.get(dd, 0) + num
    if mode == "float":
        return total_f
    return sum((Fraction(num, dd) for dd, num in sorted(by_denom.items())), Fraction(0))


def _betweenness_of_python(g: LabeledGraph, x: int, mode: str):
    adj = _adjacency_lists(g)
    n = g.n_nodes
    dist_x, sigma_x = _sigma_rows_python(adj, x)
    total = Fraction(0)
    for s in range(n):
        if s == x:
            continue
        dist_s, sigma_s = _sigma_rows_python(adj, s)
        if dist_s[x] < 0:
            continue
        for t in range(s + 1, n):
            if t == x or dist_s[t] < 0:
                continue
            if dist_s[t] == dist_s[x] + dist_x[t]:
                total += Fraction(sigma_s[x] * sigma_x[t], sigma_s[t])
    return float(total) if mode == "float" else total
