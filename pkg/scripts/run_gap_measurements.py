#!/usr/bin/env python3
"""Measure the finite-size decision gaps: diameter, eccentricity, radius, RC.

For each shape, builds gadgets on planted and structure-free instances and
reports the measured separation ratios next to the asymptotic targets
(diameter 3/2, eccentricity 5/3).  Larger K widens the gap.
"""

import argparse
import sys

from ovgadgets import (
    all_eccentricities,
    build_ov_dia,
    build_ov_rad,
    build_rc_gadget,
    default_p,
    diameter,
    reach_centrality,
)
from ovgadgets.graph import eccentricities_of
from ovgadgets.instances import (
    drop_unused_coordinates,
    gen_hitting_free,
    gen_orthogonal_free,
    gen_planted_hitting,
    gen_planted_orthogonal,
)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--shapes", default="2x2,4x4,8x4")
    ap.add_argument("--K", type=int, default=32)
    ap.add_argument("--rc-K", type=int, default=16)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    print(f"{'shape':>8} {'p':>5} {'dia+':>6} {'dia-':>6} {'ratio':>6} "
          f"{'ecc+':>6} {'ecc-':>6} {'ratio':>6} {'rad+':>6} {'rad-':>6} "
          f"{'rc+':>5} {'rc-':>5}")
    for token in args.shapes.split(","):
        n, d = map(int, token.split("x"))
        p = default_p(n, d, args.K)
        plus = drop_unused_coordinates(gen_planted_orthogonal(n, d, seed=args.seed))
        minus = drop_unused_coordinates(gen_orthogonal_free(n, d, seed=args.seed))

        def agg(eccs, how):
            return "inf" if (eccs < 0).any() else int(how(eccs))

        g_plus, m_plus = build_ov_dia(plus, p)
        g_minus, m_minus = build_ov_dia(minus, p)
        dia_plus = agg(all_eccentricities(g_plus, unreachable="keep"), max)
        dia_minus = agg(all_eccentricities(g_minus, unreachable="keep"), max)
        ecc_plus = agg(eccentricities_of(g_plus, m_plus.a_r, unreachable="keep"), max)
        ecc_minus = agg(eccentricities_of(g_minus, m_minus.a_r, unreachable="keep"), max)

        hit = drop_unused_coordinates(gen_planted_hitting(n, d, seed=args.seed))
        nohit = drop_unused_coordinates(gen_hitting_free(n, d, seed=args.seed))
        rad_plus = agg(all_eccentricities(build_ov_rad(hit, p)[0], unreachable="keep"), min)
        rad_minus = agg(all_eccentricities(build_ov_rad(nohit, p)[0], unreachable="keep"), min)

        p_rc = default_p(n, d, args.rc_K)
        g_rc_p, mm = build_rc_gadget(plus, p_rc)
        rc_plus = reach_centrality(g_rc_p, mm.u)
        g_rc_m, mm = build_rc_gadget(minus, p_rc)
        rc_minus = reach_centrality(g_rc_m, mm.u)

        def ratio(a, b):
            return f"{a / b:.3f}" if isinstance(a, int) and isinstance(b, int) else "-"

        print(f"{token:>8} {p:>5} {dia_plus:>6} {dia_minus:>6} "
              f"{ratio(dia_plus, dia_minus):>6} {ecc_plus:>6} {ecc_minus:>6} "
              f"{ratio(ecc_plus, ecc_minus):>6} {rad_plus:>6} {rad_minus:>6} "
              f"{rc_plus:>5} {rc_minus:>5}")
    print("targets: diameter ratio -> 3/2, eccentricity ratio -> 5/3; "
          "rad+ < 5p <= rad-; rc+ > 2p >= rc-")
    return 0


if __name__ == "__main__":
    sys.exit(main())
