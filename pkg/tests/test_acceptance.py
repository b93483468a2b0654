"""End-to-end acceptance suite: ten criteria, one printed verdict line each.

Every criterion checks a decision procedure or a measured quantity against an
independent brute-force oracle or a closed-form bound, at sizes that run in
minutes on one machine.  Run with ``pytest tests/test_acceptance.py`` — the
ACCEPTANCE lines print to the real terminal even under capture.
"""

import random
from itertools import product

import numpy as np
import pytest

from conftest import build_labeled
from oracles import bc_enum_oracle, graph_to_adj, random_small_graph
from ovgadgets.bench import run_grid, scaling_summary
from ovgadgets.centrality import betweenness
from ovgadgets.gadgets import (
    build_bc_bounded,
    build_ov_dia,
    build_ov_rad,
    build_rc_gadget,
    ceil_lg,
    default_p,
)
from ovgadgets.graph import (
    all_eccentricities,
    eccentricities_of,
    max_degree,
    split_to_degree3,
)
from ovgadgets.instances import (
    drop_unused_coordinates,
    find_hitting_vectors,
    find_orthogonal_pair,
    gen_hitting_free,
    gen_orthogonal_free,
    gen_planted_hitting,
    gen_planted_orthogonal,
    gen_random,
    gen_two_sided_orthogonal,
    make_two_sided,
)
from ovgadgets.verify import (
    calibrate_bc_threshold,
    check_dia_claims,
    check_ecc_gap,
    check_ov_observation,
    decide_hs_via_radius,
    decide_ov_via_bc_bounded,
    decide_ov_via_bc_sparse,
    decide_ov_via_diameter,
    decide_ov_via_rc,
)


def _emit(capsys, num: int, ok: bool, detail: str) -> None:
    with capsys.disabled():
        print(f"ACCEPTANCE {num:02d} {'PASS' if ok else 'FAIL'} {detail}")
    assert ok, f"criterion {num}: {detail}"


def _measured_diameter(inst, p):
    """Diameter of the bounded-degree diameter gadget; None if disconnected."""
    g, _ = build_ov_dia(drop_unused_coordinates(inst), p)
    eccs = all_eccentricities(g, unreachable="keep")
    return None if (eccs < 0).any() else int(eccs.max())


def test_criterion_01_observation_equivalence(capsys):
    shapes = [(1, 2), (2, 2), (3, 5), (4, 6), (8, 12), (16, 10), (24, 7), (32, 12)]
    total = bad = 0
    for (n, d), seed, gen in product(
        shapes, range(9), (gen_random, gen_planted_orthogonal, gen_orthogonal_free)
    ):
        total += 1
        if not check_ov_observation(gen(n, d, seed=seed)).passed:
            bad += 1
    _emit(capsys, 1, total >= 200 and bad == 0,
          f"d(a,b)<=2 iff non-orthogonal on {total - bad}/{total} instances")


def test_criterion_02_five_distance_claims(capsys):
    total = bad = 0
    for n, d in product((1, 2, 4, 8, 16), (1, 2, 4, 8)):
        p = default_p(n, d, 4)
        for seed in range(10):
            corpus = [
                make_two_sided(gen_random(n, d, seed=seed), seed=seed),
                make_two_sided(gen_orthogonal_free(n, d, seed=seed), seed=seed),
            ]
            if n >= 2 and d >= 2:
                corpus.append(gen_two_sided_orthogonal(n, d, seed=seed))
            for inst in corpus:
                total += 1
                if not check_dia_claims(inst, p).passed:
                    bad += 1
    _emit(capsys, 2, bad == 0,
          f"five distance claims: {bad} violations over {total} reports "
          f"(20 shapes x 10 seeds)")


def test_criterion_03_diameter_decision(capsys):
    plan = [((2, 2), 10), ((4, 4), 10), ((4, 8), 2), ((8, 4), 5),
            ((8, 8), 3), ((16, 4), 2), ((16, 8), 2)]
    total = bad = 0
    for (n, d), n_seeds in plan:
        p = default_p(n, d)
        for seed in range(n_seeds):
            for gen in (gen_planted_orthogonal, gen_orthogonal_free, gen_random):
                total += 1
                dec, _ = decide_ov_via_diameter(gen(n, d, seed=seed), p)
                if dec != find_orthogonal_pair(gen(n, d, seed=seed)).found:
                    bad += 1
    p32 = default_p(4, 4, 32)
    planted, free = [], []
    for seed in range(3):
        dp = _measured_diameter(gen_planted_orthogonal(4, 4, seed=seed), p32)
        df = _measured_diameter(gen_orthogonal_free(4, 4, seed=seed), p32)
        if dp is not None:
            planted.append(dp)
        free.append(df)
    ratio = min(planted) / max(free)
    _emit(capsys, 3, total >= 100 and bad == 0 and ratio >= 1.45,
          f"diameter decision {total - bad}/{total} vs oracle; "
          f"planted/free diameter ratio {ratio:.3f} at K=32")


def test_criterion_04_radius_decision(capsys):
    plan = [((2, 2), 10), ((4, 4), 10), ((4, 8), 5), ((8, 4), 5), ((8, 8), 4)]
    total = bad = argmin_bad = 0
    for (n, d), n_seeds in plan:
        p = default_p(n, d)
        for seed in range(n_seeds):
            for gen in (gen_planted_hitting, gen_hitting_free, gen_random):
                total += 1
                inst = gen(n, d, seed=seed)
                dec, rep = decide_hs_via_radius(inst, p)
                if dec != bool(find_hitting_vectors(inst)):
                    bad += 1
                if not rep.passed:
                    argmin_bad += 1
    _emit(capsys, 4, total >= 100 and bad == 0 and argmin_bad == 0,
          f"radius decision {total - bad}/{total} vs oracle; "
          f"argmin eccentricity at a_p in all {total} graphs")


def test_criterion_05_eccentricity_gap(capsys):
    # the free upper bound assumes every coordinate is used on both sides,
    # so the corpus is repaired the same way as the distance-claims sweep
    def planted(n, d, seed):
        return gen_two_sided_orthogonal(n, d, seed=seed)

    def free_two_sided(n, d, seed):
        return make_two_sided(gen_orthogonal_free(n, d, seed=seed), seed=seed)

    total = bad = 0
    for (n, d), seed in product([(2, 2), (4, 4), (8, 4), (8, 8)], range(5)):
        p = default_p(n, d)
        for gen in (planted, free_two_sided):
            total += 1
            if not check_ecc_gap(gen(n, d, seed=seed), p).passed:
                bad += 1
    p32 = default_p(4, 4, 32)
    witness, free = [], []
    for seed in range(3):
        for gen, sink in ((planted, witness), (free_two_sided, free)):
            eff = drop_unused_coordinates(gen(4, 4, seed=seed))
            g, meta = build_ov_dia(eff, p32)
            eccs = eccentricities_of(g, meta.a_r, unreachable="keep")
            if (eccs >= 0).all():
                sink.append(int(eccs.max()))
    ratio = min(witness) / max(free)
    _emit(capsys, 5, bad == 0 and ratio >= 5 / 3 - 0.05,
          f"eccentricity bounds hold on {total - bad}/{total} instances; "
          f"witness/free ratio {ratio:.3f} at K=32")


def test_criterion_06_reach_centrality_decision(capsys):
    plan = [((2, 2), 10), ((4, 4), 10), ((4, 8), 3), ((8, 4), 3), ((8, 8), 2)]
    total = bad = bound_bad = 0
    for (n, d), n_seeds in plan:
        p = default_p(n, d, 16)  # comfortably above the separation threshold
        for seed in range(n_seeds):
            for gen in (gen_planted_orthogonal, gen_orthogonal_free):
                total += 1
                inst = gen(n, d, seed=seed)
                dec, rep = decide_ov_via_rc(inst, p)
                if dec != find_orthogonal_pair(inst).found:
                    bad += 1
                if not rep.passed:  # includes >=3p orth / <=3p/2+6lg free checks
                    bound_bad += 1
    _emit(capsys, 6, total >= 50 and bad == 0 and bound_bad == 0,
          f"reach-centrality decision {total - bad}/{total} vs oracle, "
          f"RC bounds hold on all {total}")


def test_criterion_07_betweenness_sparse(capsys):
    plan = [((2, 2), 10), ((4, 4), 10), ((8, 8), 5), ((16, 8), 5), ((16, 12), 4)]
    total = bad = 0
    for (n, d), n_seeds in plan:
        for seed in range(n_seeds):
            for gen in (gen_planted_orthogonal, gen_orthogonal_free, gen_random):
                total += 1
                inst = gen(n, d, seed=seed)
                dec, _ = decide_ov_via_bc_sparse(inst)
                if dec != find_orthogonal_pair(inst).found:
                    bad += 1
    graphs = mismatches = 0
    for seed in range(1000):
        rng = random.Random(seed)
        n, edges = random_small_graph(rng, max_nodes=10, connected=True)
        g = build_labeled(n, edges)
        adj = graph_to_adj(g)
        graphs += 1
        if betweenness(g) != [bc_enum_oracle(adj, x) for x in range(n)]:
            mismatches += 1
    _emit(capsys, 7, total >= 100 and bad == 0 and graphs >= 1000 and mismatches == 0,
          f"sparse-betweenness decision {total - bad}/{total} vs oracle; "
          f"Brandes = path enumeration on {graphs - mismatches}/{graphs} small graphs")


def test_criterion_08_betweenness_bounded(capsys):
    shapes = {(2, 2): 9, (4, 4): 13, (8, 4): 15, (8, 8): 17}  # odd p per shape
    total = bad = 0
    band_ok = True
    for (n, d), p in shapes.items():
        cal = calibrate_bc_threshold(n, d, p, range(10))  # raises if not identical
        band_ok = band_ok and cal.within_band
        for seed in range(7):
            for gen in (gen_planted_orthogonal, gen_orthogonal_free):
                total += 1
                inst = gen(n, d, seed=seed)
                dec, _ = decide_ov_via_bc_bounded(inst, p, cal)
                if dec != find_orthogonal_pair(inst).found:
                    bad += 1
    _emit(capsys, 8, total >= 50 and bad == 0 and band_ok,
          f"calibrated decision {total - bad}/{total} vs oracle; baseline identical "
          f"across 10 free seeds per shape and within the predicted band")


def test_criterion_09_degree_contract(capsys):
    total = deg_bad = dec_bad = 0
    for (n, d), seed in product([(2, 2), (4, 4), (8, 4)], range(3)):
        p = default_p(n, d)
        for gen in (gen_planted_orthogonal, gen_orthogonal_free,
                    lambda *a, **k: make_two_sided(gen_random(*a, **k))):
            inst = drop_unused_coordinates(gen(n, d, seed=seed))
            total += 1
            g_dia, _ = build_ov_dia(inst, p)
            g_rad, _ = build_ov_rad(inst, p)
            g_rc, _ = build_rc_gadget(inst, p)
            pair = build_bc_bounded(inst, p + 1)
            pre = [g_dia, g_rad, g_rc, pair.g1, pair.g2]
            post = [split_to_degree3(g)[0] for g in pre]
            if any(max_degree(g) > 4 for g in pre) or any(max_degree(g) > 3 for g in post):
                deg_bad += 1

            def dia_dec(g):
                eccs = all_eccentricities(g, unreachable="keep")
                return True if (eccs < 0).any() else int(eccs.max()) >= 6 * p

            if dia_dec(g_dia) != dia_dec(post[0]):
                dec_bad += 1
    _emit(capsys, 9, deg_bad == 0 and dec_bad == 0,
          f"max degree <=4 pre-split and <=3 post-split on all {total} instances "
          f"x 5 gadget graphs; diameter decision unchanged by splitting")


def test_criterion_10_size_and_scaling(capsys):
    records = list(run_grid([64, 128, 256, 512, 1024, 2048], d=16, multiplier=4, seeds=[0]))
    s = scaling_summary(records)
    ok = (s["counts_exact"] and s["skipped"] == 0
          and 0.9 <= s["build_slope"] <= 1.3 and 1.6 <= s["solver_slope"] <= 2.4)
    _emit(capsys, 10, ok,
          f"node/edge counts exact on all shapes; build slope "
          f"{s['build_slope']:.2f} in [0.9,1.3], solver slope "
          f"{s['solver_slope']:.2f} in [1.6,2.4]")
