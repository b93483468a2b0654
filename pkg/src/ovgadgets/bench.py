"""Benchmark runner: reduction size and solver scaling, streamed as CSV.

The point of the measurements: the diameter gadget has Theta(n log n)-ish
nodes and edges and is built in near-linear time, while deciding via distances
needs one BFS per a_p source, i.e. roughly quadratic total work.  The runner
records both wall-times per shape so the two slopes can be read off a log-log
fit.

Environment knobs (also honored by the command line front end):

* ``OVGADGETS_THREADS`` — worker thread count for the compiled kernels.
* ``OVGADGETS_MAX_NODES`` — memory budget as a node-count cap; shapes whose
  predicted size exceeds it are emitted as skipped rows instead of crashing.
"""

from __future__ import annotations

import csv
import os
import time
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Iterable, Optional, Sequence

import numpy as np

from . import kernels
from .gadgets import build_ov_dia, default_p, predict_ov_dia_counts
from .graph import eccentricities_of, relabel_bfs_order
from .instances import OVInstance, drop_unused_coordinates, find_orthogonal_pair, gen_random

DEFAULT_MAX_NODES = 20_000_000


def max_nodes_budget() -> int:
    raw = os.environ.get("OVGADGETS_MAX_NODES", "")
    if not raw.strip():
        return DEFAULT_MAX_NODES
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"OVGADGETS_MAX_NODES={raw!r} is not an integer") from exc
    if value < 1:
        raise ValueError("OVGADGETS_MAX_NODES must be positive")
    return value


def configure_threads() -> int:
    """Apply OVGADGETS_THREADS to the compiled kernels; returns the count."""
    raw = os.environ.get("OVGADGETS_THREADS", "")
    if not raw.strip():
        return 0
    count = int(raw)
    if count < 1:
        raise ValueError("OVGADGETS_THREADS must be positive")
    import numba

    numba.set_num_threads(min(count, numba.config.NUMBA_NUM_THREADS))
    return count


@dataclass
class BenchRecord:
    gadget: str
    n: int
    d: int
    p: int
    seed: int
    nodes: int = 0
    edges: int = 0
    predicted_nodes: int = 0
    predicted_edges: int = 0
    build_s: float = 0.0
    oracle_s: float = 0.0
    solver_s: float = 0.0
    decision: str = ""
    skipped: bool = False
    note: str = ""


CSV_FIELDS = [f.name for f in fields(BenchRecord)]


def bench_dia(inst: OVInstance, p: int, seed: int,
              max_nodes: Optional[int] = None) -> BenchRecord:
    """One diameter-gadget measurement: build, brute-force oracle, all-a_p BFS."""
    inst = drop_unused_coordinates(inst)
    budget = max_nodes_budget() if max_nodes is None else max_nodes
    ones = int(inst.a.sum() + inst.b.sum())
    pred_nodes, pred_edges = predict_ov_dia_counts(inst.n, inst.d, ones, p)
    rec = BenchRecord("dia", inst.n, inst.d, p, seed,
                      predicted_nodes=pred_nodes, predicted_edges=pred_edges)
    if pred_nodes > budget:
        rec.skipped = True
        rec.note = f"predicted {pred_nodes} nodes exceeds budget {budget}"
        return rec

    t0 = time.perf_counter()
    g, meta = build_ov_dia(inst, p)
    g, new_of_old = relabel_bfs_order(g)  # solver-ready locality, part of the build
    sources = new_of_old[np.asarray(meta.a_p, np.int32)]
    rec.build_s = time.perf_counter() - t0
    rec.nodes, rec.edges = meta.n_nodes, meta.n_edges

    t0 = time.perf_counter()
    oracle = find_orthogonal_pair(inst).found
    rec.oracle_s = time.perf_counter() - t0

    # the solver the reduction argument needs: a BFS from every a_p source
    t0 = time.perf_counter()
    eccs = eccentricities_of(g, sources)
    rec.solver_s = time.perf_counter() - t0
    rec.decision = str(bool(int(eccs.max()) >= 6 * p))
    rec.note = "" if rec.decision == str(oracle) else "decision disagrees with oracle"
    return rec


def run_grid(ns: Sequence[int], d: int = 16, multiplier: int = 4,
             seeds: Sequence[int] = (0,), density: float = 0.5,
             max_nodes: Optional[int] = None) -> Iterable[BenchRecord]:
    """Yield one record per (n, seed); kernels are compiled before any timing."""
    kernels.warmup()
    for n in ns:
        p = default_p(n, d, multiplier)
        for seed in seeds:
            inst = gen_random(n, d, density=density, seed=seed)
            yield bench_dia(inst, p, seed, max_nodes=max_nodes)


def write_csv(records: Iterable[BenchRecord], fh) -> list[BenchRecord]:
    writer = csv.DictWriter(fh, fieldnames=CSV_FIELDS)
    writer.writeheader()
    out = []
    for rec in records:
        writer.writerow({k: getattr(rec, k) for k in CSV_FIELDS})
        fh.flush()
        out.append(rec)
    return out


def read_csv(path) -> list[BenchRecord]:
    rows = []
    with Path(path).open() as fh:
        for row in csv.DictReader(fh):
            rows.append(BenchRecord(
                row["gadget"], int(row["n"]), int(row["d"]), int(row["p"]),
                int(row["seed"]), int(row["nodes"]), int(row["edges"]),
                int(row["predicted_nodes"]), int(row["predicted_edges"]),
                float(row["build_s"]), float(row["oracle_s"]), float(row["solver_s"]),
                row["decision"], row["skipped"] == "True", row["note"],
            ))
    return rows


def loglog_slope(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Least-squares slope of log y against log x."""
    xs = np.asarray(xs, float)
    ys = np.asarray(ys, float)
    if xs.size < 2:
        raise ValueError("need at least two points for a slope")
    if (xs <= 0).any() or (ys <= 0).any():
        raise ValueError("log-log fit needs positive values")
    return float(np.polyfit(np.log(xs), np.log(ys), 1)[0])


def scaling_summary(records: Sequence[BenchRecord]) -> dict:
    """Build-time and solver-time slopes vs n, plus the size-prediction check."""
    live = [r for r in records if not r.skipped]
    by_n: dict[int, list[BenchRecord]] = {}
    for r in live:
        by_n.setdefault(r.n, []).append(r)
    ns = sorted(by_n)
    build = [float(np.mean([r.build_s for r in by_n[n]])) for n in ns]
    solve = [float(np.mean([r.solver_s for r in by_n[n]])) for n in ns]
    exact = all(r.nodes == r.predicted_nodes and r.edges == r.predicted_edges for r in live)
    enough = len(ns) >= 2
    return {
        "ns": ns,
        "build_slope": loglog_slope(ns, build) if enough else None,
        "solver_slope": loglog_slope(ns, solve) if enough else None,
        "counts_exact": exact,
        "skipped": len(records) - len(live),
    }
