"""Compiled BFS kernels over CSR adjacency.

These are the hot loops behind the exact solvers: plain BFS distances,
BFS with shortest-path counting, and batched eccentricity / distance-matrix
sweeps.  All distances are hop counts; unreachable nodes get -1.

Shortest-path counts are kept in int64.  ``SIGMA_LIMIT`` guards against
overflow: kernels report the maximum count seen and callers fall back to the
big-integer python implementation when it is exceeded (never the case for the
gadget graphs at desk scale, but checked).
"""

from __future__ import annotations

import numpy as np
from numba import njit

SIGMA_LIMIT = np.int64(1) << 60


@njit(cache=True)
def bfs_kernel(indptr, indices, source, dist):
    """Fill ``dist`` with hop counts from ``source``; -1 marks unreachable."""
    n = dist.shape[0]
    for i in range(n):
        dist[i] = -1
    queue = np.empty(n, np.int32)
    head = 0
    tail = 0
    queue[tail] = source
    tail += 1
    dist[source] = 0
    while head < tail:
        v = queue[head]
        head += 1
        dv = dist[v]
        for e in range(indptr[v], indptr[v + 1]):
            w = indices[e]
            if dist[w] < 0:
                dist[w] = dv + 1
                queue[tail] = w
                tail += 1


@njit(cache=True)
def bfs_sigma_kernel(indptr, indices, source, dist, sigma):
    """BFS distances plus shortest-path counts; returns the max count seen."""
    n = dist.shape[0]
    for i in range(n):
        dist[i] = -1
        sigma[i] = 0
    queue = np.empty(n, np.int32)
    head = 0
    tail = 0
    queue[tail] = source
    tail += 1
    dist[source] = 0
    sigma[source] = 1
    max_sigma = np.int64(1)
    while head < tail:
        v = queue[head]
        head += 1
        dv = dist[v]
        sv = sigma[v]
        for e in range(indptr[v], indptr[v + 1]):
            w = indices[e]
            if dist[w] < 0:
                dist[w] = dv + 1
                queue[tail] = w
                tail += 1
            if dist[w] == dv + 1:
                sigma[w] += sv
                if sigma[w] > max_sigma:
                    max_sigma = sigma[w]
    return max_sigma


@njit(cache=True)
def ecc_many_kernel(indptr, indices, sources, out):
    """Eccentricity per source; -1 if the graph is disconnected from it."""
    n = indptr.shape[0] - 1
    dist = np.empty(n, np.int32)
    for k in range(sources.shape[0]):
        bfs_kernel(indptr, indices, sources[k], dist)
        ecc = 0
        ok = True
        for i in range(n):
            if dist[i] < 0:
                ok = False
                break
            if dist[i] > ecc:
                ecc = dist[i]
        out[k] = ecc if ok else -1


@njit(cache=True)
def dist_many_kernel(indptr, indices, sources, out):
    """Distance rows for a batch of sources; out has shape (len(sources), n)."""
    for k in range(sources.shape[0]):
        bfs_kernel(indptr, indices, sources[k], out[k])


@njit(cache=True)
def max_dist_to_targets_kernel(indptr, indices, sources, targets, out):
    """For each source, the max hop distance to any target (-1 if unreachable)."""
    n = indptr.shape[0] - 1
    dist = np.empty(n, np.int32)
    for k in range(sources.shape[0]):
        bfs_kernel(indptr, indices, sources[k], dist)
        best = 0
        for t in range(targets.shape[0]):
            dt = dist[targets[t]]
            if dt < 0:
                best = -1
                break
            if dt > best:
                best = dt
        out[k] = best


def warmup() -> None:
    """Trigger compilation of all kernels on a 2-node graph."""
    indptr = np.array([0, 1, 2], np.int64)
    indices = np.array([1, 0], np.int32)
    dist = np.empty(2, np.int32)
    sigma = np.empty(2, np.int64)
    bfs_kernel(indptr, indices, 0, dist)
    bfs_sigma_kernel(indptr, indices, 0, dist, sigma)
    src = np.array([0], np.int32)
    out1 = np.empty(1, np.int32)
    ecc_many_kernel(indptr, indices, src, out1)
    out2 = np.empty((1, 2), np.int32)
    dist_many_kernel(indptr, indices, src, out2)
    max_dist_to_targets_kernel(indptr, indices, src, src, out1)
