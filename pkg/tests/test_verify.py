from fractions import Fraction

import pytest

from ovgadgets.centrality import betweenness_of
from ovgadgets.gadgets import GadgetError, build_bc_sparse, default_p
from ovgadgets.instances import (
    find_hitting_vectors,
    find_orthogonal_pair,
    gen_hitting_free,
    gen_orthogonal_free,
    gen_planted_hitting,
    gen_planted_orthogonal,
    gen_random,
    gen_two_sided_orthogonal,
    make_instance,
    make_two_sided,
)
from ovgadgets.verify import (
    CalibrationError,
    bc_pair_difference,
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
    rc_separation_min_p,
)


class TestObservation:
    @pytest.mark.parametrize("seed", range(10))
    def test_random_instances(self, seed):
        assert check_ov_observation(gen_random(6, 5, seed=seed)).passed

    def test_fully_orthogonal_instance(self):
        assert check_ov_observation(make_instance([[1, 0]], [[0, 1]])).passed


class TestDiaClaims:
    @pytest.mark.parametrize("seed", range(5))
    @pytest.mark.parametrize("gen", [gen_random, gen_orthogonal_free])
    def test_two_sided_corpus_passes(self, gen, seed):
        inst = make_two_sided(gen(4, 4, seed=seed), seed=seed)
        rep = check_dia_claims(inst, default_p(4, 4))
        assert rep.passed, rep.to_text()

    @pytest.mark.parametrize("seed", range(5))
    def test_two_sided_orthogonal_passes(self, seed):
        inst = gen_two_sided_orthogonal(4, 4, seed=seed)
        rep = check_dia_claims(inst, default_p(4, 4))
        assert rep.passed, rep.to_text()

    def test_single_sided_coordinate_fails_with_note(self):
        # coordinate 1 is used by A only: c-tree nodes of that coordinate
        # must detour through the far side, exceeding the eccentricity bound
        inst = make_instance([[0, 1], [0, 1]], [[0, 1], [1, 0]])
        rep = check_dia_claims(inst, 12)
        claim4 = [c for c in rep.checks if c.claim.startswith("claim4")][0]
        assert not claim4.passed
        assert "single-sided" in claim4.note

    def test_disconnected_instance_flags_components(self):
        rep = check_dia_claims(make_instance([[1, 0]], [[0, 1]]), 12)
        assert rep.passed
        assert any("component-restricted" in c.note for c in rep.checks)


class TestDiameterDecision:
    @pytest.mark.parametrize("seed", range(4))
    @pytest.mark.parametrize("gen", [gen_planted_orthogonal, gen_orthogonal_free, gen_random])
    def test_agrees_with_oracle(self, gen, seed):
        inst = gen(4, 4, seed=seed)
        dec, _ = decide_ov_via_diameter(inst, default_p(4, 4))
        assert dec == find_orthogonal_pair(inst).found

    def test_disconnected_means_orthogonal(self):
        dec, rep = decide_ov_via_diameter(make_instance([[1, 0]], [[0, 1]]), 12)
        assert dec is True and rep.passed

    def test_precondition(self):
        with pytest.raises(GadgetError, match="precondition"):
            decide_ov_via_diameter(gen_random(4, 4, seed=0), 8)


class TestRadiusDecision:
    @pytest.mark.parametrize("seed", range(4))
    @pytest.mark.parametrize("gen", [gen_planted_hitting, gen_hitting_free, gen_random])
    def test_agrees_with_oracle(self, gen, seed):
        inst = gen(4, 4, seed=seed)
        dec, rep = decide_hs_via_radius(inst, default_p(4, 4))
        assert dec == bool(find_hitting_vectors(inst))
        assert rep.passed  # includes the argmin-at-a_p check


class TestEccGap:
    @pytest.mark.parametrize("seed", range(4))
    def test_planted_and_free(self, seed):
        p = default_p(4, 4)
        assert check_ecc_gap(gen_planted_orthogonal(4, 4, seed=seed), p).passed
        assert check_ecc_gap(gen_orthogonal_free(4, 4, seed=seed), p).passed


class TestRcDecision:
    @pytest.mark.parametrize("seed", range(4))
    @pytest.mark.parametrize("gen", [gen_planted_orthogonal, gen_orthogonal_free])
    def test_agrees_with_oracle(self, gen, seed):
        inst = gen(4, 4, seed=seed)
        dec, rep = decide_ov_via_rc(inst, default_p(4, 4, 16))
        assert dec == find_orthogonal_pair(inst).found
        assert rep.passed

    def test_guaranteed_threshold_formula(self):
        assert rc_separation_min_p(4, 4) == 12 * 4 + 4


class TestBcSparseDecision:
    @pytest.mark.parametrize("seed", range(6))
    @pytest.mark.parametrize("gen", [gen_planted_orthogonal, gen_orthogonal_free, gen_random])
    def test_agrees_with_oracle(self, gen, seed):
        inst = gen(5, 5, seed=seed)
        dec, _ = decide_ov_via_bc_sparse(inst)
        assert dec == find_orthogonal_pair(inst).found

    def test_minimal_instances(self):
        assert decide_ov_via_bc_sparse(make_instance([[1, 0]], [[0, 1]]))[0] is True
        assert decide_ov_via_bc_sparse(make_instance([[1, 1]], [[1, 1]]))[0] is False

    def test_raw_inequality_counterexample(self):
        # deleting the B side reroutes coordinate-pair and y-side shortest
        # paths through x1, so the raw BC(x2) > BC(x1) comparison can point
        # the wrong way even though an orthogonal pair exists; the refined
        # (a,b)-restricted decision stays correct
        inst = gen_planted_orthogonal(4, 4, seed=3)
        assert find_orthogonal_pair(inst).found
        pair = build_bc_sparse(inst)
        bc1 = betweenness_of(pair.g1, pair.meta1.x, allow_disconnected=True)
        bc2 = betweenness_of(pair.g2, pair.meta2.x, allow_disconnected=True)
        assert bc2 < bc1  # the raw comparison is wrong here...
        dec, _ = decide_ov_via_bc_sparse(inst)
        assert dec is True  # ...and the restricted decision is not


class TestBcBounded:
    def test_even_p_calibration_raises(self):
        # even p places a tie node on the x-to-root routes whose fractional
        # contribution depends on the bit pattern, so the baseline is not a
        # shape constant and calibration must refuse it
        with pytest.raises(CalibrationError, match="baseline differs"):
            calibrate_bc_threshold(4, 4, 12, range(6))

    def test_odd_p_calibration_and_band(self):
        cal = calibrate_bc_threshold(4, 4, 13, range(10))
        assert cal.within_band
        assert cal.margin == Fraction(13, 4)

    def test_decision_agrees_with_oracle(self):
        cal = calibrate_bc_threshold(4, 4, 13, range(3))
        for seed in range(4):
            for gen in (gen_planted_orthogonal, gen_orthogonal_free):
                inst = gen(4, 4, seed=seed)
                dec, _ = decide_ov_via_bc_bounded(inst, 13, cal)
                assert dec == find_orthogonal_pair(inst).found

    def test_shape_mismatch_raises(self):
        cal = calibrate_bc_threshold(4, 4, 13, range(3))
        with pytest.raises(CalibrationError, match="shape"):
            decide_ov_via_bc_bounded(gen_random(5, 4, seed=0), 13, cal)

    def test_difference_deterministic(self):
        inst = gen_orthogonal_free(3, 4, seed=1)
        assert bc_pair_difference(inst, 13) == bc_pair_difference(inst, 13)


class TestCrossValidate:
    @pytest.mark.parametrize("seed", range(3))
    @pytest.mark.parametrize("gen", [gen_planted_orthogonal, gen_orthogonal_free,
                                     gen_planted_hitting, gen_hitting_free])
    def test_all_pipelines_consistent(self, gen, seed):
        inst = gen(4, 4, seed=seed)
        rep = cross_validate(inst, default_p(4, 4))
        assert rep.passed, rep.to_text()

    def test_fully_orthogonal_instance(self):
        rep = cross_validate(make_instance([[1, 0], [1, 0]], [[0, 1], [0, 1]]), 20)
        assert rep.passed, rep.to_text()


class TestReportPlumbing:
    def test_json_and_text(self):
        rep = check_ov_observation(gen_random(3, 3, seed=0))
        assert '"passed": true' in rep.to_json()
        assert rep.to_text().startswith("== ov-observation")

    def test_failed_check_gets_witness(self):
        from ovgadgets.verify import VerdictReport

        rep = VerdictReport("t")
        c = rep.add("x", False)
        assert c.witness is not None and not rep.passed
