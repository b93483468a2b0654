"""Constructors for the five reduction graphs.

Each constructor returns the graph together with a :class:`GadgetMeta` record
locating every landmark node the verifiers need.  Constructions are
deterministic: the same (instance, p) yields the same node numbering.

Conventions used throughout:

* "lg" means ceil(log2) of the relevant count (n and d need not be powers of
  two); recorded tree heights use the same ceiling.
* a "path of length p" inserts exactly p - 1 fresh internal nodes; p = 1
  degenerates to a single edge.
* balanced trees are heap-shaped with exactly k leaves (2k - 1 nodes, height
  ceil(lg k)); leaf order left-to-right maps to coordinate / vector index,
  which keeps every tree leaf at degree <= 2 in the finished graph.
* k = 1 trees degenerate to a single node of height 0, so n = 1 and d = 1
  instances are legal.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .graph import GraphBuilder, LabeledGraph, assert_connected, max_degree
from .instances import OVInstance
from .roles import SIDE_A, SIDE_B, LANDMARK_KINDS, RoleKind


class GadgetError(ValueError):
    pass


def ceil_lg(k: int) -> int:
    if k < 1:
        raise GadgetError("ceil_lg needs a positive argument")
    return (k - 1).bit_length()


def default_p(n: int, d: int, multiplier: int = 4) -> int:
    """Path-length parameter keeping the 6p vs 4p + O(lg) separation with slack."""
    if multiplier < 4:
        raise GadgetError("multiplier must be >= 4 or the separation is not guaranteed")
    return multiplier * (ceil_lg(n) + ceil_lg(d)) + 4


@dataclass
class GadgetMeta:
    kind: str
    n: int
    d: int
    p: int = 0
    h_vec: int = 0
    h_c: int = 0
    h_short: int = 0
    ones_a: int = 0
    ones_b: int = 0
    a_r: list[int] = field(default_factory=list)
    b_r: list[int] = field(default_factory=list)
    a_p: list[int] = field(default_factory=list)
    b_p: list[int] = field(default_factory=list)
    c: list[int] = field(default_factory=list)
    shortcut_root_a: Optional[int] = None
    shortcut_root_b: Optional[int] = None
    u: Optional[int] = None
    x: Optional[int] = None
    y: Optional[int] = None
    b_prime: list[int] = field(default_factory=list)
    n_nodes: int = 0
    n_edges: int = 0
    role_counts: dict = field(default_factory=dict)
    extra: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(self.__dict__, indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "GadgetMeta":
        return cls(**json.loads(text))


@dataclass
class BcPair:
    g1: LabeledGraph
    g2: LabeledGraph
    meta1: GadgetMeta
    meta2: GadgetMeta


def _check_all_coordinates_used(inst: OVInstance) -> None:
    used = (inst.a.sum(axis=0) + inst.b.sum(axis=0)) > 0
    if not used.all():
        j = int(np.flatnonzero(~used)[0])
        raise GadgetError(
            f"coordinate {j} has no 1-bit on either side; the gadget would be "
            "disconnected (drop unused coordinates first)"
        )


def _finish(meta: GadgetMeta, g: LabeledGraph) -> GadgetMeta:
    meta.n_nodes = g.n_nodes
    meta.n_edges = g.n_edges
    meta.role_counts = g.roles.counts()
    return meta


# ---------------------------------------------------------------------------
# Base OV-graph.


def build_ov_graph(inst: OVInstance) -> tuple[LabeledGraph, GadgetMeta]:
    """Tripartite gadget: vector nodes for A and B, coordinate nodes, 1-bit edges.

    May be disconnected (a fully orthogonal instance has no a-b connections);
    meta.extra records whether it is connected.
    """
    b = GraphBuilder()
    meta = GadgetMeta("ov", inst.n, inst.d)
    meta.a_r = [b.new_node(RoleKind.VECTOR, SIDE_A, i) for i in range(inst.n)]
    meta.b_r = [b.new_node(RoleKind.VECTOR, SIDE_B, i) for i in range(inst.n)]
    meta.c = [b.new_node(RoleKind.COORD, j) for j in range(inst.d)]
    for i in range(inst.n):
        for j in range(inst.d):
            if inst.a[i, j]:
                b.add_edge(meta.a_r[i], meta.c[j])
            if inst.b[i, j]:
                b.add_edge(meta.b_r[i], meta.c[j])
    meta.ones_a = int(inst.a.sum())
    meta.ones_b = int(inst.b.sum())
    g = b.build()
    meta.extra["connected"] = assert_connected(g)
    return g, _finish(meta, g)


# ---------------------------------------------------------------------------
# OV_dia and relatives.


def _emit_dia_core(b: GraphBuilder, inst: OVInstance, p: int, *, copy: int = 0) -> dict:
    """Vector trees, c-trees, and the 1-bit paths; shared by several builds."""
    n, d = inst.n, inst.d
    lm: dict = {}
    lm["a_r"] = []
    lm["b_r"] = []
    leaves = {SIDE_A: [], SIDE_B: []}
    for side, key in ((SIDE_A, "a_r"), (SIDE_B, "b_r")):
        for i in range(n):
            root, lv = b.add_tree(
                d, RoleKind.VECTOR_TREE, side, i, p3=copy,
                root_kind=RoleKind.VECTOR_ROOT, root_params=(side, i, 0, copy),
            )
            lm[key].append(root)
            leaves[side].append(lv)
    lm["vec_leaves"] = leaves
    lm["c"] = []
    c_leaves = {SIDE_A: [], SIDE_B: []}
    for j in range(d):
        cj = b.new_node(RoleKind.COORD, j, 0, 0, copy)
        lm["c"].append(cj)
        for side in (SIDE_A, SIDE_B):
            _, lv = b.add_tree(n, RoleKind.C_TREE, j, side, p3=copy, root=cj)
            c_leaves[side].append(lv)
    lm["c_leaves"] = c_leaves
    for side, rows in ((SIDE_A, inst.a), (SIDE_B, inst.b)):
        for i in range(n):
            for j in range(d):
                if rows[i, j]:
                    b.add_path(
                        leaves[side][i][j], c_leaves[side][j][i], p,
                        RoleKind.PATH, b.new_path_id(), p3=copy,
                    )
    return lm


def _emit_shortcuts_and_pendants(b: GraphBuilder, n: int, p: int, lm: dict, *,
                                 copy: int = 0, shared_a_p: list[int] | None = None) -> None:
    for side, roots_key, sc_key, pend_key in (
        (SIDE_A, "a_r", "shortcut_root_a", "a_p"),
        (SIDE_B, "b_r", "shortcut_root_b", "b_p"),
    ):
        sc_root, sc_leaves = b.add_tree(
            n, RoleKind.SHORTCUT_TREE, side, 0, p3=copy,
            root_kind=RoleKind.SHORTCUT_ROOT, root_params=(side, 0, 0, copy),
        )
        lm[sc_key] = sc_root
        for i in range(n):
            b.add_path(sc_leaves[i], lm[roots_key][i], p, RoleKind.PATH, b.new_path_id(), p3=copy)
        ends = []
        for i in range(n):
            if side == SIDE_A and shared_a_p is not None:
                end = shared_a_p[i]
            else:
                end = b.new_node(RoleKind.PATH_END, side, i, 0, copy)
            b.add_path(lm[roots_key][i], end, p, RoleKind.PATH, b.new_path_id(), p3=copy)
            ends.append(end)
        lm[pend_key] = ends


def _dia_meta(inst: OVInstance, p: int, kind: str) -> GadgetMeta:
    meta = GadgetMeta(kind, inst.n, inst.d, p)
    meta.h_vec = ceil_lg(inst.d)
    meta.h_c = ceil_lg(inst.n)
    meta.h_short = ceil_lg(inst.n)
    meta.ones_a = int(inst.a.sum())
    meta.ones_b = int(inst.b.sum())
    return meta


def min_p(inst: OVInstance) -> int:
    return ceil_lg(inst.n) + ceil_lg(inst.d) + 1


def build_ov_dia(inst: OVInstance, p: int) -> tuple[LabeledGraph, GadgetMeta]:
    """The bounded-degree diameter gadget.

    Max degree is exactly 4 (only vector roots and coordinate nodes reach it,
    and only for n, d >= 2); the graph is connected provided every coordinate
    carries at least one 1-bit.
    """
    if p < min_p(inst):
        raise GadgetError(f"p={p} too small; need at least {min_p(inst)}")
    _check_all_coordinates_used(inst)
    b = GraphBuilder()
    lm = _emit_dia_core(b, inst, p)
    _emit_shortcuts_and_pendants(b, inst.n, p, lm)
    g = b.build()
    meta = _dia_meta(inst, p, "dia")
    meta.a_r, meta.b_r, meta.c = lm["a_r"], lm["b_r"], lm["c"]
    meta.a_p, meta.b_p = lm["a_p"], lm["b_p"]
    meta.shortcut_root_a = lm["shortcut_root_a"]
    meta.shortcut_root_b = lm["shortcut_root_b"]
    return g, _finish(meta, g)


def predict_ov_dia_counts(n: int, d: int, ones: int, p: int) -> tuple[int, int]:
    """Closed-form (nodes, edges) of OV_dia, validated against built graphs."""
    nodes = (
        2 * n * (2 * d - 1)        # vector trees
        + d * (4 * n - 3)          # coordinate nodes with both c-trees
        + 2 * (2 * n - 1)          # shortcut trees
        + (p - 1) * (ones + 2 * n) # 1-bit paths and shortcut-leaf paths
        + 2 * n * p                # pendant paths including their a_p/b_p ends
    )
    edges = (
        2 * n * (2 * d - 2)
        + d * (4 * n - 4)
        + 2 * (2 * n - 2)
        + p * (ones + 2 * n)
        + 2 * n * p
    )
    return nodes, edges


def build_ov_rad(inst: OVInstance, p: int) -> tuple[LabeledGraph, GadgetMeta]:
    """Two OV_dia copies glued at the a_p nodes (copy 2 mirrors copy 1)."""
    if p < min_p(inst):
        raise GadgetError(f"p={p} too small; need at least {min_p(inst)}")
    _check_all_coordinates_used(inst)
    b = GraphBuilder()
    lm1 = _emit_dia_core(b, inst, p, copy=1)
    _emit_shortcuts_and_pendants(b, inst.n, p, lm1, copy=1)
    lm2 = _emit_dia_core(b, inst, p, copy=2)
    _emit_shortcuts_and_pendants(b, inst.n, p, lm2, copy=2, shared_a_p=lm1["a_p"])
    g = b.build()
    meta = _dia_meta(inst, p, "rad")
    meta.a_p = lm1["a_p"]
    meta.a_r, meta.b_r, meta.c = lm1["a_r"], lm1["b_r"], lm1["c"]
    meta.b_p = lm1["b_p"]
    meta.shortcut_root_a = lm1["shortcut_root_a"]
    meta.shortcut_root_b = lm1["shortcut_root_b"]
    meta.extra["copy2"] = {
        "a_r": lm2["a_r"], "b_r": lm2["b_r"], "c": lm2["c"], "b_p": lm2["b_p"],
        "shortcut_root_a": lm2["shortcut_root_a"],
        "shortcut_root_b": lm2["shortcut_root_b"],
    }
    return g, _finish(meta, g)


def build_rc_gadget(inst: OVInstance, p: int) -> tuple[LabeledGraph, GadgetMeta]:
    """OV_dia plus a path of 2(p - lg n) hops between the shortcut roots.

    The middle node u sits at p - lg n hops from either root, so
    d(u, a_r) = 2p whenever the shortcut-tree leaves sit at full height.
    """
    hs = ceil_lg(inst.n)
    if p <= hs + 1:
        raise GadgetError(f"p={p} too small for the connecting path; need p > {hs + 1}")
    if p < min_p(inst):
        raise GadgetError(f"p={p} too small; need at least {min_p(inst)}")
    _check_all_coordinates_used(inst)
    b = GraphBuilder()
    lm = _emit_dia_core(b, inst, p)
    _emit_shortcuts_and_pendants(b, inst.n, p, lm)
    u = b.new_node(RoleKind.MID)
    half = p - hs
    b.add_path(lm["shortcut_root_a"], u, half, RoleKind.PATH, b.new_path_id())
    b.add_path(u, lm["shortcut_root_b"], half, RoleKind.PATH, b.new_path_id())
    g = b.build()
    meta = _dia_meta(inst, p, "rc")
    meta.a_r, meta.b_r, meta.c = lm["a_r"], lm["b_r"], lm["c"]
    meta.a_p, meta.b_p = lm["a_p"], lm["b_p"]
    meta.shortcut_root_a = lm["shortcut_root_a"]
    meta.shortcut_root_b = lm["shortcut_root_b"]
    meta.u = u
    return g, _finish(meta, g)


# ---------------------------------------------------------------------------
# Betweenness constructions.


def build_bc_sparse(inst: OVInstance) -> BcPair:
    """Sparse betweenness pair: G2 is the full graph, G1 drops the B side.

    G2: the base OV-graph plus x adjacent to every a and to y, y adjacent to
    every b.  G1 is the same construction with all B nodes (and their edges)
    removed; it may be disconnected when some coordinate has no A-side 1-bit.
    """

    def emit(with_b: bool) -> tuple[LabeledGraph, GadgetMeta]:
        b = GraphBuilder()
        meta = GadgetMeta("bc-sparse", inst.n, inst.d)
        meta.ones_a = int(inst.a.sum())
        meta.ones_b = int(inst.b.sum()) if with_b else 0
        meta.a_r = [b.new_node(RoleKind.VECTOR, SIDE_A, i) for i in range(inst.n)]
        if with_b:
            meta.b_r = [b.new_node(RoleKind.VECTOR, SIDE_B, i) for i in range(inst.n)]
        meta.c = [b.new_node(RoleKind.COORD, j) for j in range(inst.d)]
        meta.x = b.new_node(RoleKind.X)
        meta.y = b.new_node(RoleKind.Y)
        b.add_edge(meta.x, meta.y)
        for i in range(inst.n):
            b.add_edge(meta.a_r[i], meta.x)
            if with_b:
                b.add_edge(meta.b_r[i], meta.y)
            for j in range(inst.d):
                if inst.a[i, j]:
                    b.add_edge(meta.a_r[i], meta.c[j])
                if with_b and inst.b[i, j]:
                    b.add_edge(meta.b_r[i], meta.c[j])
        g = b.build()
        meta.extra["connected"] = assert_connected(g)
        return g, _finish(meta, g)

    g1, meta1 = emit(False)
    g2, meta2 = emit(True)
    return BcPair(g1, g2, meta1, meta2)


def build_bc_bounded(inst: OVInstance, p: int, allow_unused_coordinates: bool = False) -> BcPair:
    """Bounded-degree betweenness pair.

    Vector trees and c-trees exactly as OV_dia (no shortcut trees, no
    pendants); x and y root balanced trees with n leaves, each leaf joined to
    the matching vector root by a length-p path, plus a length-p path x - y.
    G2 additionally hangs a pendant b' off every b_r.

    With ``allow_unused_coordinates`` a coordinate without 1-bits keeps its
    (then isolated) c-trees; betweenness is unaffected but the graph is
    disconnected.  Calibration uses this to keep tree heights a function of
    the declared d.
    """
    if p < min_p(inst):
        raise GadgetError(f"p={p} too small; need at least {min_p(inst)}")
    if not allow_unused_coordinates:
        _check_all_coordinates_used(inst)

    def emit(with_b_prime: bool) -> tuple[LabeledGraph, GadgetMeta]:
        b = GraphBuilder()
        lm = _emit_dia_core(b, inst, p)
        x, x_leaves = b.add_tree(inst.n, RoleKind.X_TREE, root_kind=RoleKind.X)
        y, y_leaves = b.add_tree(inst.n, RoleKind.Y_TREE, root_kind=RoleKind.Y)
        for i in range(inst.n):
            b.add_path(x_leaves[i], lm["a_r"][i], p, RoleKind.PATH, b.new_path_id())
            b.add_path(y_leaves[i], lm["b_r"][i], p, RoleKind.PATH, b.new_path_id())
        b.add_path(x, y, p, RoleKind.PATH, b.new_path_id())
        meta = _dia_meta(inst, p, "bc-bounded")
        if with_b_prime:
            meta.b_prime = [b.new_node(RoleKind.B_PRIME, i) for i in range(inst.n)]
            for i in range(inst.n):
                b.add_edge(lm["b_r"][i], meta.b_prime[i])
        g = b.build()
        meta.a_r, meta.b_r, meta.c = lm["a_r"], lm["b_r"], lm["c"]
        meta.x, meta.y = x, y
        return g, _finish(meta, g)

    g1, meta1 = emit(False)
    g2, meta2 = emit(True)
    return BcPair(g1, g2, meta1, meta2)


def predict_bc_bounded_counts(n: int, d: int, ones: int, p: int, with_b_prime: bool) -> tuple[int, int]:
    nodes = (
        2 * n * (2 * d - 1)
        + d * (4 * n - 3)
        + (p - 1) * ones
        + 2 * (2 * n - 1)          # x-tree and y-tree
        + 2 * n * (p - 1)          # leaf-to-root paths
        + (p - 1)                  # x - y path
        + (n if with_b_prime else 0)
    )
    edges = (
        2 * n * (2 * d - 2)
        + d * (4 * n - 4)
        + p * ones
        + 2 * (2 * n - 2)
        + 2 * n * p
        + p
        + (n if with_b_prime else 0)
    )
    return nodes, edges


BUILDERS = {
    "ov": lambda inst, p: build_ov_graph(inst),
    "dia": build_ov_dia,
    "rad": build_ov_rad,
    "rc": build_rc_gadget,
}


# ---------------------------------------------------------------------------
# Construction audit and description.


def audit_gadget(g: LabeledGraph, meta: GadgetMeta, require_connected: bool = True) -> None:
    """Check structural invariants; raises GadgetError on any violation."""
    if meta.n_nodes != g.n_nodes or meta.n_edges != g.n_edges:
        raise GadgetError("meta counts do not match the graph")
    if require_connected and not assert_connected(g):
        raise GadgetError("gadget graph is disconnected")
    if max_degree(g) > 4:
        raise GadgetError(f"max degree {max_degree(g)} exceeds 4")
    seen = set()
    for v in range(g.n_nodes):
        r = g.role(v)
        if r.kind in LANDMARK_KINDS:
            key = (r.kind, r.params)
            if key in seen:
                raise GadgetError(f"duplicate landmark role {r.describe()} at node {v}")
            seen.add(key)
    for name, ids in (("a_r", meta.a_r), ("b_r", meta.b_r), ("a_p", meta.a_p),
                      ("b_p", meta.b_p), ("c", meta.c), ("b_prime", meta.b_prime)):
        for v in ids:
            g._check_node(v)
    for v in (meta.shortcut_root_a, meta.shortcut_root_b, meta.u, meta.x, meta.y):
        if v is not None:
            g._check_node(v)


def landmark_table(g: LabeledGraph, meta: GadgetMeta) -> str:
    """Human-readable landmark listing used by the describe emission."""
    rows = []

    def add(label, v):
        if v is None:
            return
        rows.append(f"{label:>16}  node {v:>8}  {g.role(v).describe()}")

    for i, v in enumerate(meta.a_r):
        add(f"a_r[{i}]", v)
    for i, v in enumerate(meta.b_r):
        add(f"b_r[{i}]", v)
    for i, v in enumerate(meta.a_p):
        add(f"a_p[{i}]", v)
    for i, v in enumerate(meta.b_p):
        add(f"b_p[{i}]", v)
    for j, v in enumerate(meta.c):
        add(f"c[{j}]", v)
    add("A-shortcut root", meta.shortcut_root_a)
    add("B-shortcut root", meta.shortcut_root_b)
    add("u", meta.u)
    add("x", meta.x)
    add("y", meta.y)
    for i, v in enumerate(meta.b_prime):
        add(f"b'[{i}]", v)
    header = (
        f"gadget {meta.kind}  n={meta.n} d={meta.d} p={meta.p}  "
        f"nodes={meta.n_nodes} edges={meta.n_edges}"
    )
    return "\n".join([header] + rows) + "\n"


def describe_gadget(g: LabeledGraph, meta: GadgetMeta) -> tuple[str, str]:
    """(DOT text, landmark table) for debugging and figures."""
    from .graph import dumps_dot

    return dumps_dot(g, name=meta.kind.replace("-", "_")), landmark_table(g, meta)
