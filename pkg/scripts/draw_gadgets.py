#!/usr/bin/env python3
"""Emit role-colored DOT figures and landmark tables for tiny gadgets.

One file pair per gadget kind, built on a fixed 2x2 instance, sized so the
figures stay readable.  Render with: dot -Tsvg out/dia.dot -o dia.svg
"""

import argparse
import sys
from pathlib import Path

from ovgadgets import (
    build_bc_bounded,
    build_bc_sparse,
    build_ov_dia,
    build_ov_graph,
    build_ov_rad,
    build_rc_gadget,
    describe_gadget,
)
from ovgadgets.instances import make_instance


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=Path("gadget-figures"))
    ap.add_argument("--p", type=int, default=5)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    inst = make_instance([[1, 0], [1, 1]], [[0, 1], [1, 1]])
    built = {
        "ov": build_ov_graph(inst),
        "dia": build_ov_dia(inst, args.p),
        "rad": build_ov_rad(inst, args.p),
        "rc": build_rc_gadget(inst, args.p),
    }
    sparse = build_bc_sparse(inst)
    bounded = build_bc_bounded(inst, args.p)
    built["bc-sparse-g2"] = (sparse.g2, sparse.meta2)
    built["bc-bounded-g2"] = (bounded.g2, bounded.meta2)

    for name, (g, meta) in built.items():
        dot, table = describe_gadget(g, meta)
        (args.out / f"{name}.dot").write_text(dot)
        (args.out / f"{name}.landmarks.txt").write_text(table + "\n")
        print(f"{name}: {g.n_nodes} nodes, {g.n_edges} edges -> {args.out / name}.dot")
    return 0


if __name__ == "__main__":
    sys.exit(main())
