import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ovgadgets.instances import (
    GENERATORS,
    InstanceError,
    OraclePairResult,
    drop_unused_coordinates,
    dumps_instance,
    find_hitting_vectors,
    find_orthogonal_pair,
    gen_hitting_free,
    gen_orthogonal_free,
    gen_planted_hitting,
    gen_planted_orthogonal,
    gen_random,
    gen_two_sided_orthogonal,
    has_hitting_vector,
    is_orthogonal,
    loads_instance,
    make_instance,
    make_two_sided,
)
from oracles import hitting_rows_scan, orthogonal_pairs_scan


class TestConstruction:
    def test_rejects_all_zero_row(self):
        with pytest.raises(InstanceError, match="all-zero row"):
            make_instance([[0, 0], [1, 1]], [[1, 0], [0, 1]])

    def test_rejects_shape_mismatch(self):
        with pytest.raises(InstanceError, match="shape"):
            make_instance([[1, 0]], [[1, 0], [0, 1]])

    def test_rejects_non_binary(self):
        with pytest.raises(InstanceError, match="0 or 1"):
            make_instance([[2, 0]], [[1, 0]])

    def test_rejects_empty(self):
        with pytest.raises(InstanceError):
            make_instance(np.empty((0, 3)), np.empty((0, 3)))

    def test_frozen_arrays(self):
        inst = make_instance([[1, 0]], [[0, 1]])
        with pytest.raises(ValueError):
            inst.a[0, 0] = 0

    def test_equality_and_hash(self):
        i1 = make_instance([[1, 0]], [[0, 1]])
        i2 = make_instance([[1, 0]], [[0, 1]])
        assert i1 == i2 and hash(i1) == hash(i2)
        assert i1 != make_instance([[1, 1]], [[0, 1]])


class TestOracles:
    def test_is_orthogonal(self):
        assert is_orthogonal([1, 0, 0], [0, 1, 1])
        assert not is_orthogonal([1, 0, 1], [0, 0, 1])

    def test_witness_consistency(self):
        with pytest.raises(ValueError):
            OraclePairResult(True, None)
        with pytest.raises(ValueError):
            OraclePairResult(False, (0, 0))

    @pytest.mark.parametrize("seed", range(20))
    def test_matches_per_bit_scan(self, seed):
        inst = gen_random(6, 5, seed=seed)
        pairs = orthogonal_pairs_scan(inst)
        res = find_orthogonal_pair(inst)
        assert res.found == bool(pairs)
        if res.found:
            assert res.witness in pairs
        assert find_hitting_vectors(inst) == set(hitting_rows_scan(inst))

    def test_first_witness_row_major(self):
        inst = make_instance([[1, 0], [0, 1]], [[0, 1], [1, 0]])
        assert find_orthogonal_pair(inst).witness == (0, 0)

    @pytest.mark.parametrize("seed", range(10))
    def test_permutation_invariance(self, seed):
        inst = gen_random(5, 4, seed=seed)
        rng = np.random.default_rng(seed)
        perm = inst.permuted(rng.permutation(5), rng.permutation(5))
        assert find_orthogonal_pair(inst).found == find_orthogonal_pair(perm).found
        assert has_hitting_vector(inst) == has_hitting_vector(perm)


class TestGenerators:
    @pytest.mark.parametrize("seed", range(15))
    def test_planted_orthogonal_has_pair(self, seed):
        assert find_orthogonal_pair(gen_planted_orthogonal(6, 5, seed=seed)).found

    @pytest.mark.parametrize("seed", range(15))
    def test_orthogonal_free_has_none(self, seed):
        assert not find_orthogonal_pair(gen_orthogonal_free(6, 5, seed=seed)).found

    @pytest.mark.parametrize("seed", range(15))
    def test_planted_hitting(self, seed):
        assert has_hitting_vector(gen_planted_hitting(6, 5, seed=seed))

    @pytest.mark.parametrize("seed", range(15))
    def test_hitting_free(self, seed):
        assert not has_hitting_vector(gen_hitting_free(6, 5, seed=seed))

    @pytest.mark.parametrize("seed", range(15))
    def test_two_sided_orthogonal(self, seed):
        inst = gen_two_sided_orthogonal(6, 5, seed=seed)
        assert is_orthogonal(inst.a[0], inst.b[0])
        assert (inst.a.sum(axis=0) > 0).all() and (inst.b.sum(axis=0) > 0).all()

    def test_generators_deterministic(self):
        for kind, gen in GENERATORS.items():
            if kind == "two-sided-orthogonal":
                continue
            assert gen(4, 4, seed=7) == gen(4, 4, seed=7), kind

    def test_bad_parameters(self):
        with pytest.raises(InstanceError):
            gen_random(0, 3)
        with pytest.raises(InstanceError):
            gen_random(3, 3, density=0.0)
        with pytest.raises(InstanceError):
            gen_planted_orthogonal(3, 1)


class TestTwoSidedRepair:
    @pytest.mark.parametrize("seed", range(10))
    def test_no_new_orthogonal_pairs(self, seed):
        inst = gen_random(5, 6, seed=seed, density=0.3)
        repaired = make_two_sided(inst, seed=seed)
        before = set(orthogonal_pairs_scan(inst))
        after = set(orthogonal_pairs_scan(repaired))
        assert after <= before
        assert (repaired.a.sum(axis=0) > 0).all()
        assert (repaired.b.sum(axis=0) > 0).all()

    def test_protected_rows_untouched(self):
        inst = make_instance([[1, 0, 0], [1, 1, 0]], [[0, 0, 1], [0, 1, 1]])
        rep = make_two_sided(inst, protect_a=0, protect_b=0)
        assert (rep.a[0] == inst.a[0]).all() and (rep.b[0] == inst.b[0]).all()


class TestDropUnused:
    def test_drops_only_both_zero_columns(self):
        inst = make_instance([[1, 0, 0], [1, 0, 1]], [[0, 0, 1], [1, 0, 1]])
        eff = drop_unused_coordinates(inst)
        assert eff.d == 2
        assert find_orthogonal_pair(eff).found == find_orthogonal_pair(inst).found
        assert has_hitting_vector(eff) == has_hitting_vector(inst)

    def test_noop_when_all_used(self):
        inst = make_instance([[1, 0]], [[0, 1]])
        assert drop_unused_coordinates(inst) is inst


class TestTextFormat:
    def test_round_trip_examples(self):
        inst = gen_random(8, 6, seed=1)
        text = dumps_instance(inst)
        assert text.splitlines()[0] == "8 6"
        assert loads_instance(text) == inst

    @settings(max_examples=60, deadline=None)
    @given(st.integers(1, 6), st.integers(1, 6), st.integers(0, 10 ** 6))
    def test_round_trip_random(self, n, d, seed):
        rng = np.random.default_rng(seed)
        rows = rng.integers(0, 2, size=(2 * n, d), dtype=np.uint8)
        rows[rows.sum(axis=1) == 0, 0] = 1
        inst = make_instance(rows[:n], rows[n:])
        assert loads_instance(dumps_instance(inst)) == inst

    @pytest.mark.parametrize("text", ["", "2 2\n10\n01\n11", "1 2\n12\n01", "x y\n"])
    def test_rejects_malformed(self, text):
        with pytest.raises(InstanceError):
            loads_instance(text)

    def test_file_round_trip(self, tmp_path):
        from ovgadgets.instances import read_instance, write_instance

        inst = gen_planted_hitting(4, 4, seed=3)
        write_instance(inst, tmp_path / "i.txt")
        assert read_instance(tmp_path / "i.txt") == inst
