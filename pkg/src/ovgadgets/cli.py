"""Command-line front end: gen / build / verify / bench / export.

Exit codes: 0 all verdicts pass, 1 a verification check or decision failed,
2 usage or parameter error.  ``OVGADGETS_THREADS`` and ``OVGADGETS_MAX_NODES``
set the kernel thread count and the memory budget (as a node-count cap).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import bench as bench_mod
from .gadgets import (
    BUILDERS,
    GadgetError,
    build_bc_bounded,
    build_bc_sparse,
    default_p,
    describe_gadget,
    landmark_table,
)
from .graph import GraphError, dumps_dot, read_graph, split_to_degree3, write_graph
from .instances import (
    GENERATORS,
    InstanceError,
    find_hitting_vectors,
    find_orthogonal_pair,
    read_instance,
    write_instance,
)
from .verify import (
    CalibrationError,
    calibrate_bc_threshold,
    check_dia_claims,
    check_ecc_gap,
    check_ov_observation,
    cross_validate,
    decide_hs_via_radius,
    decide_ov_via_bc_bounded,
    decide_ov_via_bc_sparse,
    decide_ov_via_diameter,
    decide_ov_via_rc,
)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

PAIR_GADGETS = ("bc-sparse", "bc-bounded")
GADGETS = tuple(BUILDERS) + PAIR_GADGETS
SUITES = ("obs1", "dia-claims", "diameter", "radius", "ecc", "rc",
          "bc-sparse", "bc-bounded", "all")


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ovgadgets",
                                 description="Gadget graphs for vector-orthogonality "
                                             "reductions, with machine-checked claims.")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a seeded instance file")
    g.add_argument("kind", choices=sorted(GENERATORS))
    g.add_argument("n", type=int)
    g.add_argument("d", type=int)
    g.add_argument("--density", type=float, default=0.5)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", type=Path, help="output path (default: stdout)")

    b = sub.add_parser("build", help="build a gadget graph from an instance file")
    b.add_argument("gadget", choices=GADGETS)
    b.add_argument("instance", type=Path)
    b.add_argument("--p", type=int, help="path-length parameter (default: from --K)")
    b.add_argument("--K", type=int, default=4,
                   help="p = K*(ceil lg n + ceil lg d) + 4 when --p is not given")
    b.add_argument("--out", type=Path, required=True, help="output path prefix")
    b.add_argument("--split3", action="store_true",
                   help="also emit the degree-3 split graph and its origin map")
    b.add_argument("--dot", action="store_true", help="also emit DOT")

    v = sub.add_parser("verify", help="run a verification suite on an instance file")
    v.add_argument("suite", choices=SUITES)
    v.add_argument("instance", type=Path)
    v.add_argument("--p", type=int)
    v.add_argument("--K", type=int, default=4)
    v.add_argument("--cal-seeds", default="0,1,2",
                   help="comma-separated seeds for the bounded-BC calibration")
    v.add_argument("--json", action="store_true", help="emit reports as JSON")

    n = sub.add_parser("bench", help="size and timing grid, CSV on stdout or --out")
    n.add_argument("--ns", default="64,128,256,512,1024,2048",
                   help="comma-separated n values")
    n.add_argument("--d", type=int, default=16)
    n.add_argument("--K", type=int, default=4)
    n.add_argument("--seeds", default="0")
    n.add_argument("--density", type=float, default=0.5)
    n.add_argument("--out", type=Path, help="CSV path (default: stdout)")

    e = sub.add_parser("export", help="re-read a built graph file and emit DOT")
    e.add_argument("graph", type=Path)
    e.add_argument("--out", type=Path, help="output path (default: stdout)")
    return ap


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def _pick_p(args, inst) -> int:
    if args.p is not None:
        return args.p
    return default_p(inst.n, inst.d, args.K)


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise ValueError(f"bad integer list {text!r}") from exc


def _cmd_gen(args) -> int:
    gen = GENERATORS[args.kind]
    inst = gen(args.n, args.d, seed=args.seed, density=args.density)
    from .instances import dumps_instance

    _emit(dumps_instance(inst), args.out)
    return EXIT_PASS


def _write_graph_set(prefix: Path, g, meta, split3: bool, dot: bool) -> None:
    def path(ext: str) -> Path:
        return prefix.with_name(prefix.name + ext)

    write_graph(g, path(".edges"))
    path(".meta.json").write_text(meta.to_json() + "\n")
    path(".landmarks.txt").write_text(landmark_table(g, meta) + "\n")
    if dot:
        path(".dot").write_text(describe_gadget(g, meta)[0])
    if split3:
        g3, origin = split_to_degree3(g)
        write_graph(g3, path(".split3.edges"))
        lines = "\n".join(f"{v} {int(origin[v])}" for v in range(g3.n_nodes))
        path(".split3.origin").write_text(lines + "\n")


def _cmd_build(args) -> int:
    inst = read_instance(args.instance)
    p = _pick_p(args, inst)
    prefix = args.out
    if args.gadget in PAIR_GADGETS:
        if args.split3 and args.gadget == "bc-sparse":
            raise GadgetError("--split3 needs a bounded-degree gadget")
        if args.gadget == "bc-sparse":
            pair = build_bc_sparse(inst)
        else:
            pair = build_bc_bounded(inst, p)
        _write_graph_set(prefix.with_name(prefix.name + ".g1"), pair.g1, pair.meta1,
                         args.split3, args.dot)
        _write_graph_set(prefix.with_name(prefix.name + ".g2"), pair.g2, pair.meta2,
                         args.split3, args.dot)
        print(f"built {args.gadget}: g1 {pair.meta1.n_nodes} nodes, "
              f"g2 {pair.meta2.n_nodes} nodes -> {prefix}.g1/.g2")
        return EXIT_PASS
    if args.split3 and args.gadget == "ov":
        raise GadgetError("--split3 needs a bounded-degree gadget")
    g, meta = BUILDERS[args.gadget](inst, p)
    _write_graph_set(prefix, g, meta, args.split3, args.dot)
    print(f"built {args.gadget}: {meta.n_nodes} nodes, {meta.n_edges} edges -> {prefix}.*")
    return EXIT_PASS


def _verify_reports(suite: str, inst, p: int, cal_seeds: list[int]):
    """Yield (report, decision, oracle) triples; oracle None for pure checks."""
    ov = find_orthogonal_pair(inst).found
    hs = bool(find_hitting_vectors(inst))
    if suite in ("obs1", "all"):
        yield check_ov_observation(inst), None, None
    if suite in ("dia-claims", "all"):
        yield check_dia_claims(inst, p), None, None
    if suite == "diameter":
        dec, rep = decide_ov_via_diameter(inst, p)
        yield rep, dec, ov
    if suite == "radius":
        dec, rep = decide_hs_via_radius(inst, p)
        yield rep, dec, hs
    if suite == "ecc":
        yield check_ecc_gap(inst, p), None, None
    if suite == "rc":
        dec, rep = decide_ov_via_rc(inst, p)
        yield rep, dec, ov
    if suite == "bc-sparse":
        dec, rep = decide_ov_via_bc_sparse(inst)
        yield rep, dec, ov
    if suite == "bc-bounded":
        p_bc = p if p % 2 == 1 else p + 1
        cal = calibrate_bc_threshold(inst.n, inst.d, p_bc, cal_seeds)
        dec, rep = decide_ov_via_bc_bounded(inst, p_bc, cal)
        yield rep, dec, ov
    if suite == "all":
        yield cross_validate(inst, p, tuple(cal_seeds)), None, None


def _cmd_verify(args) -> int:
    inst = read_instance(args.instance)
    p = _pick_p(args, inst)
    cal_seeds = _int_list(args.cal_seeds)
    ok = True
    for rep, dec, oracle in _verify_reports(args.suite, inst, p, cal_seeds):
        if dec is not None:
            rep.add("decision matches brute-force oracle", dec == oracle, dec, oracle)
        print(rep.to_json() if args.json else rep.to_text(), end="" if not args.json else "\n")
        ok = ok and rep.passed
    print("RESULT: " + ("PASS" if ok else "FAIL"))
    return EXIT_PASS if ok else EXIT_FAIL


def _cmd_bench(args) -> int:
    ns = _int_list(args.ns)
    seeds = _int_list(args.seeds)
    if not ns or not seeds:
        raise ValueError("--ns and --seeds must be nonempty")
    records = bench_mod.run_grid(ns, d=args.d, multiplier=args.K,
                                 seeds=seeds, density=args.density)
    if args.out is None:
        done = bench_mod.write_csv(records, sys.stdout)
    else:
        with args.out.open("w") as fh:
            done = bench_mod.write_csv(records, fh)
    summary = bench_mod.scaling_summary(done)

    def fmt(slope):
        return "n/a" if slope is None else f"{slope:.2f}"

    print(f"# build slope {fmt(summary['build_slope'])}, "
          f"solver slope {fmt(summary['solver_slope'])}, "
          f"counts exact: {summary['counts_exact']}, "
          f"skipped: {summary['skipped']}", file=sys.stderr)
    return EXIT_PASS


def _cmd_export(args) -> int:
    g = read_graph(args.graph)
    _emit(dumps_dot(g), args.out)
    return EXIT_PASS


_COMMANDS = {
    "gen": _cmd_gen,
    "build": _cmd_build,
    "verify": _cmd_verify,
    "bench": _cmd_bench,
    "export": _cmd_export,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        bench_mod.configure_threads()
        return _COMMANDS[args.command](args)
    except (GadgetError, GraphError, InstanceError, CalibrationError,
            ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
