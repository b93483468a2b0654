"""Undirected unweighted labeled graphs and the exact distance solvers.

Graphs are immutable once built: adjacency is CSR (sorted, duplicate-free,
symmetric), roles live in a compact per-node table.  ``GraphBuilder``
accumulates nodes and edges and validates on ``build()``.

Distances are hop counts.  Unreachable is the explicit sentinel
``UNREACHABLE`` (-1), never a large number; eccentricity-style solvers raise
:class:`DisconnectedError` when they meet it.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass

import numpy as np

from . import kernels
from .roles import PARAM_NAMES, Role, RoleKind

UNREACHABLE = -1


class GraphError(ValueError):
    pass


class DisconnectedError(GraphError):
    pass


class RoleTable:
    """Per-node role storage: one kind code and four int parameters."""

    def __init__(self, kinds: np.ndarray, params: np.ndarray):
        self.kinds = kinds          # (n,) int16
        self.params = params        # (n, 4) int32

    def __len__(self) -> int:
        return self.kinds.shape[0]

    def role(self, v: int) -> Role:
        p = self.params[v]
        return Role(RoleKind(int(self.kinds[v])), int(p[0]), int(p[1]), int(p[2]), int(p[3]))

    def nodes_of_kind(self, kind: RoleKind) -> np.ndarray:
        return np.flatnonzero(self.kinds == int(kind))

    def counts(self) -> dict[str, int]:
        out = {}
        for kind in RoleKind:
            c = int((self.kinds == int(kind)).sum())
            if c:
                out[kind.name.lower()] = c
        return out


class LabeledGraph:
    def __init__(self, indptr: np.ndarray, indices: np.ndarray, roles: RoleTable):
        self.indptr = indptr
        self.indices = indices
        self.roles = roles

    @property
    def n_nodes(self) -> int:
        return self.indptr.shape[0] - 1

    @property
    def n_edges(self) -> int:
        return self.indices.shape[0] // 2

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v] : self.indptr[v + 1]]

    def degree(self, v: int) -> int:
        return int(self.indptr[v + 1] - self.indptr[v])

    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def role(self, v: int) -> Role:
        return self.roles.role(v)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(np.isin(v, self.neighbors(u)))

    def edge_list(self) -> np.ndarray:
        """All edges as (m, 2) with u < v, sorted."""
        u = np.repeat(np.arange(self.n_nodes), np.diff(self.indptr))
        v = self.indices
        mask = u < v
        return np.stack([u[mask], v[mask]], axis=1)

    def _check_node(self, v: int) -> None:
        if not (0 <= v < self.n_nodes):
            raise GraphError(f"node id {v} out of range [0, {self.n_nodes})")


class GraphBuilder:
    def __init__(self):
        self._kinds = array("h")
        self._params = array("i")
        self._eu = array("i")
        self._ev = array("i")
        self._path_counter = 0

    def new_path_id(self) -> int:
        self._path_counter += 1
        return self._path_counter - 1

    @property
    def n_nodes(self) -> int:
        return len(self._kinds)

    def new_node(self, kind: RoleKind, p0: int = 0, p1: int = 0, p2: int = 0, p3: int = 0) -> int:
        v = len(self._kinds)
        self._kinds.append(int(kind))
        self._params.extend((p0, p1, p2, p3))
        return v

    def add_edge(self, u: int, v: int) -> None:
        if u == v:
            raise GraphError(f"self-loop at node {u}")
        self._eu.append(u)
        self._ev.append(v)

    def add_path(self, u: int, v: int, length: int, kind: RoleKind, p0: int = 0, p3: int = 0) -> list[int]:
        """Join u and v by a path of ``length`` hops: length-1 fresh nodes.

        Internal nodes get role (kind, p0, pos, 0, p3) with pos counted from
        the u end starting at 1.  length == 1 degenerates to a single edge.
        Returns the internal node ids.
        """
        if length < 1:
            raise GraphError("path length must be >= 1")
        inner = [self.new_node(kind, p0, pos, 0, p3) for pos in range(1, length)]
        prev = u
        for w in inner:
            self.add_edge(prev, w)
            prev = w
        self.add_edge(prev, v)
        return inner

    def add_tree(self, n_leaves: int, kind: RoleKind, p0: int = 0, p1: int = 0, p3: int = 0,
                 root: int | None = None, root_kind: RoleKind | None = None,
                 root_params: tuple[int, int, int, int] = (0, 0, 0, 0)) -> tuple[int, list[int]]:
        """Heap-shaped balanced binary tree with exactly ``n_leaves`` leaves.

        2k-1 nodes, height ceil(lg k); leaf depths differ by at most one.
        Non-root nodes get role (kind, p0, p1, depth, p3).  The root is either
        the existing node ``root`` or a fresh node with ``root_kind``.
        Returns (root id, leaf ids in heap order).
        """
        if n_leaves < 1:
            raise GraphError("tree needs at least one leaf")
        size = 2 * n_leaves - 1
        ids = np.empty(size, np.int64)
        for h in range(size):
            if h == 0:
                if root is not None:
                    ids[0] = root
                else:
                    ids[0] = self.new_node(root_kind, *root_params)
            else:
                depth = (h + 1).bit_length() - 1
                ids[h] = self.new_node(kind, p0, p1, depth, p3)
                self.add_edge(int(ids[(h - 1) // 2]), int(ids[h]))
        leaves = [int(ids[h]) for h in range(n_leaves - 1, size)]
        return int(ids[0]), leaves

    def build(self) -> LabeledGraph:
        n = len(self._kinds)
        if n == 0:
            raise GraphError("empty graph")
        eu = np.frombuffer(self._eu, dtype=np.int32) if len(self._eu) else np.empty(0, np.int32)
        ev = np.frombuffer(self._ev, dtype=np.int32) if len(self._ev) else np.empty(0, np.int32)
        if eu.size and (eu.min() < 0 or max(eu.max(), ev.max()) >= n):
            raise GraphError("edge endpoint out of range")
        u = np.concatenate([eu, ev])
        v = np.concatenate([ev, eu])
        order = np.lexsort((v, u))
        u = u[order]
        v = v[order]
        if u.size:
            dup = (u[1:] == u[:-1]) & (v[1:] == v[:-1])
            if dup.any():
                k = int(np.flatnonzero(dup)[0])
                raise GraphError(f"parallel edge ({u[k]}, {v[k]})")
        indptr = np.zeros(n + 1, np.int64)
        np.add.at(indptr, u + 1, 1)
        indptr = np.cumsum(indptr)
        kinds = np.frombuffer(self._kinds, dtype=np.int16).copy()
        params = np.frombuffer(self._params, dtype=np.int32).reshape(n, 4).copy()
        return LabeledGraph(indptr, v.astype(np.int32).copy(), RoleTable(kinds, params))


# ---------------------------------------------------------------------------
# Exact solvers (one BFS per source).


def bfs_distances(g: LabeledGraph, s: int) -> np.ndarray:
    """Hop distances from s; UNREACHABLE (-1) where no path exists."""
    g._check_node(s)
    dist = np.empty(g.n_nodes, np.int32)
    kernels.bfs_kernel(g.indptr, g.indices, s, dist)
    return dist


def eccentricity(g: LabeledGraph, s: int) -> int:
    dist = bfs_distances(g, s)
    if (dist < 0).any():
        raise DisconnectedError(f"node {s} cannot reach the whole graph")
    return int(dist.max())


def eccentricities_of(g: LabeledGraph, sources, unreachable: str = "raise") -> np.ndarray:
    """Eccentricity for each listed source (BFS per source).

    ``unreachable="keep"`` returns UNREACHABLE (-1) for sources that cannot
    reach the whole graph (an infinite eccentricity) instead of raising.
    """
    if unreachable not in ("raise", "keep"):
        raise GraphError(f"unknown unreachable policy {unreachable!r}")
    src = np.asarray(sources, np.int32)
    if src.size and (src.min() < 0 or src.max() >= g.n_nodes):
        raise GraphError("source id out of range")
    out = np.empty(src.shape[0], np.int32)
    kernels.ecc_many_kernel(g.indptr, g.indices, src, out)
    if unreachable == "raise" and (out < 0).any():
        raise DisconnectedError("graph is disconnected")
    return out


def all_eccentricities(g: LabeledGraph, unreachable: str = "raise") -> np.ndarray:
    return eccentricities_of(g, np.arange(g.n_nodes, dtype=np.int32), unreachable)


def diameter(g: LabeledGraph) -> int:
    return int(all_eccentricities(g).max())


def radius(g: LabeledGraph) -> int:
    return int(all_eccentricities(g).min())


def distance_matrix(g: LabeledGraph, sources=None) -> np.ndarray:
    """Distance rows for the given sources (all nodes by default)."""
    if sources is None:
        sources = np.arange(g.n_nodes, dtype=np.int32)
    src = np.asarray(sources, np.int32)
    out = np.empty((src.shape[0], g.n_nodes), np.int32)
    kernels.dist_many_kernel(g.indptr, g.indices, src, out)
    return out


def max_degree(g: LabeledGraph) -> int:
    return int(g.degrees().max())


def assert_connected(g: LabeledGraph) -> bool:
    dist = bfs_distances(g, 0)
    return not bool((dist < 0).any())


def relabel_bfs_order(g: LabeledGraph, start: int = 0) -> tuple[LabeledGraph, np.ndarray]:
    """Relabel nodes in breadth-first-level order from ``start``.

    Pure locality optimization: the result is isomorphic (roles travel with
    their nodes) but neighbor ids cluster, which makes the BFS sweeps on
    multi-million-node graphs markedly faster.  Returns (graph, new_of_old).
    Unreachable nodes, if any, sort after all reachable ones.
    """
    g._check_node(start)
    dist = bfs_distances(g, start)
    key = np.where(dist < 0, dist.max() + 1, dist)
    order = np.argsort(key, kind="stable").astype(np.int32)
    new_of_old = np.empty(g.n_nodes, np.int32)
    new_of_old[order] = np.arange(g.n_nodes, dtype=np.int32)

    deg = np.diff(g.indptr)
    new_src = new_of_old[np.repeat(np.arange(g.n_nodes), deg)]
    new_dst = new_of_old[g.indices]
    perm = np.lexsort((new_dst, new_src))
    indices = new_dst[perm].astype(np.int32)
    indptr = np.zeros(g.n_nodes + 1, np.int64)
    np.cumsum(deg[order], out=indptr[1:])
    roles = RoleTable(g.roles.kinds[order].copy(), g.roles.params[order].copy())
    return LabeledGraph(indptr, indices, roles), new_of_old


# ---------------------------------------------------------------------------
# Degree-3 splitting.


def split_to_degree3(g: LabeledGraph) -> tuple[LabeledGraph, np.ndarray]:
    """Replace every degree-4 node by two adjacent twins, 2/2 edge split.

    The twin keeping the two lowest-id neighbors stays at the original id;
    its sibling is appended after all original nodes, in id order of the
    split nodes.  Returns (new graph, origin map from new ids to old ids).
    """
    deg = g.degrees()
    if deg.max() > 4:
        raise GraphError(f"max degree {int(deg.max())} > 4, cannot split to degree 3")
    split_nodes = np.flatnonzero(deg == 4)
    n = g.n_nodes
    origin = np.concatenate([np.arange(n, dtype=np.int64), split_nodes.astype(np.int64)])
    twin_of = {int(v): n + k for k, v in enumerate(split_nodes)}

    b = GraphBuilder()
    for v in range(n):
        if v in twin_of:
            b.new_node(RoleKind.SPLIT_TWIN, v, 0)
        else:
            r = g.role(v)
            b.new_node(r.kind, *r.params)
    for v in split_nodes:
        b.new_node(RoleKind.SPLIT_TWIN, int(v), 1)

    def endpoint(v: int, other: int) -> int:
        # adjacency is sorted, so the first two neighbors are the lowest ids
        if v not in twin_of:
            return v
        low = g.neighbors(v)[:2]
        return v if other in low else twin_of[v]

    for u, v in g.edge_list():
        b.add_edge(endpoint(int(u), int(v)), endpoint(int(v), int(u)))
    for v in split_nodes:
        b.add_edge(int(v), twin_of[int(v)])
    return b.build(), origin


# ---------------------------------------------------------------------------
# Serialization: line-based edge list with a role table header, and DOT.

_FORMAT_TAG = "# ovgadgets-graph 1"


def dumps_graph(g: LabeledGraph) -> str:
    lines = [_FORMAT_TAG, f"# nodes {g.n_nodes}", f"# edges {g.n_edges}"]
    for v in range(g.n_nodes):
        r = g.role(v)
        lines.append(f"# role {v} {r.kind.name} {r.p0} {r.p1} {r.p2} {r.p3}")
    for u, v in g.edge_list():
        lines.append(f"{u} {v}")
    return "\n".join(lines) + "\n"


def loads_graph(text: str) -> LabeledGraph:
    lines = text.splitlines()
    if not lines or lines[0].strip() != _FORMAT_TAG:
        raise GraphError("not an ovgadgets graph file")
    b = GraphBuilder()
    n_declared = m_declared = None
    roles: dict[int, tuple] = {}
    edges = []
    for ln in lines[1:]:
        ln = ln.strip()
        if not ln:
            continue
        if ln.startswith("#"):
            parts = ln[1:].split()
            if parts[0] == "nodes":
                n_declared = int(parts[1])
            elif parts[0] == "edges":
                m_declared = int(parts[1])
            elif parts[0] == "role":
                v = int(parts[1])
                roles[v] = (RoleKind[parts[2]], *map(int, parts[3:7]))
        else:
            u, v = map(int, ln.split())
            edges.append((u, v))
    if n_declared is None or len(roles) != n_declared:
        raise GraphError("role table does not match declared node count")
    for v in range(n_declared):
        kind, *params = roles[v]
        b.new_node(kind, *params)
    for u, v in edges:
        b.add_edge(u, v)
    g = b.build()
    if m_declared is not None and g.n_edges != m_declared:
        raise GraphError(f"declared {m_declared} edges, found {g.n_edges}")
    return g


def write_graph(g: LabeledGraph, path) -> None:
    from pathlib import Path

    Path(path).write_text(dumps_graph(g))


def read_graph(path) -> LabeledGraph:
    from pathlib import Path

    return loads_graph(Path(path).read_text())


_DOT_COLORS = {
    RoleKind.VECTOR_ROOT: "green3",
    RoleKind.VECTOR_TREE: "palegreen",
    RoleKind.COORD: "dodgerblue",
    RoleKind.C_TREE: "lightblue",
    RoleKind.PATH: "gray80",
    RoleKind.SHORTCUT_ROOT: "red3",
    RoleKind.SHORTCUT_TREE: "lightcoral",
    RoleKind.PATH_END: "gold",
    RoleKind.MID: "purple",
    RoleKind.VECTOR: "green3",
    RoleKind.X: "orange",
    RoleKind.Y: "orange",
    RoleKind.X_TREE: "moccasin",
    RoleKind.Y_TREE: "moccasin",
    RoleKind.B_PRIME: "white",
    RoleKind.SPLIT_TWIN: "gray50",
}


def dumps_dot(g: LabeledGraph, name: str = "G") -> str:
    lines = [f"graph {name} {{", "  node [style=filled];"]
    for v in range(g.n_nodes):
        r = g.role(v)
        color = _DOT_COLORS[r.kind]
        lines.append(f'  {v} [label="{r.describe()}", fillcolor="{color}"];')
    for u, v in g.edge_list():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
