import pytest

from annlab.capacity import (DecisionFamily, capacity_bound,
                             hard_decision_family, near_predicate,
                             shattering_check)
from annlab.errors import TooLarge
from annlab.hamming import BitVector, Dataset
from annlab.instances import build_instance, generate_code
from annlab.qrac import nayak_bound

bv = BitVector.from_string


class TestNearPredicate:
    def test_member_always_near(self):
        ds = Dataset((bv("0101"), bv("1111")))
        for r in (0, 1, 4):
            assert near_predicate(ds, bv("1111"), r) == 1

    def test_diameter_bound(self):
        ds = Dataset((bv("0000"),))
        assert near_predicate(ds, bv("1111"), 4) == 1

    def test_far_query(self):
        ds = Dataset((bv("0000"),))
        assert near_predicate(ds, bv("1110"), 2) == 0

    def test_hard_family_flips_with_selector(self):
        code = generate_code(4, 16, 4, seed=1)
        for x_int in range(16):
            x = format(x_int, "04b")[::-1]
            inst = build_instance(code, x)
            for i in range(4):
                assert (near_predicate(inst.dataset, inst.queries[i], 0)
                        == 1 - int(x[i]))


class TestShattering:
    def test_hard_family_shatters(self):
        code = generate_code(5, 24, 4, seed=2)
        report = shattering_check(hard_decision_family(code, r=0))
        assert report.shattered
        assert report.distinct_labelings == 2 ** 5
        assert report.t == 5

    def test_labelings_complement_selectors(self):
        code = generate_code(4, 16, 4, seed=3)
        fam = hard_decision_family(code, r=0)
        for x_int, ds in enumerate(fam.datasets):
            x = format(x_int, "04b")[::-1]
            labeling = tuple(near_predicate(ds, q, 0) for q in fam.queries)
            assert labeling == tuple(1 - int(b) for b in x)

    def test_single_dataset_not_shattered(self):
        ds = Dataset((bv("0101"),))
        fam = DecisionFamily(datasets=(ds,), radius=1,
                             queries=(bv("0000"), bv("1111")))
        report = shattering_check(fam)
        assert report.distinct_labelings == 1
        assert not report.shattered

    def test_duplicate_datasets_collapse(self):
        ds = Dataset((bv("0101"),))
        fam = DecisionFamily(datasets=(ds, ds), radius=1,
                             queries=(bv("0000"),))
        assert shattering_check(fam).distinct_labelings == 1

    def test_query_cap(self):
        ds = Dataset((bv("0"),))
        fam = DecisionFamily(datasets=(ds,), radius=0,
                             queries=tuple(bv("0") for _ in range(21)))
        with pytest.raises(TooLarge):
            shattering_check(fam)


class TestCapacityBound:
    def test_endpoints(self):
        assert capacity_bound(9, 1.0) == 9.0
        assert capacity_bound(9, 0.5) == pytest.approx(0.0, abs=1e-12)

    def test_frozen_value(self):
        assert capacity_bound(12, 0.85) == pytest.approx(4.6819, abs=1e-3)

    def test_shared_with_memory_bound(self):
        for t, p in ((1, 0.5), (12, 0.85), (30, 0.99)):
            assert capacity_bound(t, p) == nayak_bound(t, p)
