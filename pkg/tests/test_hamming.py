import pytest
from hypothesis import given, strategies as st

from annlab.errors import (DimensionMismatch, IndexOutOfRange,
                           InvalidApproximation)
from annlab.hamming import (BitVector, Dataset, enumerate_valid_answers,
                            hamming_distance, is_valid_cann_answer,
                            nearest_neighbor_bruteforce)

bv = BitVector.from_string


def bitvectors(dim):
    return st.integers(0, 2 ** dim - 1).map(lambda v: BitVector(dim, v))


class TestBitVector:
    def test_string_roundtrip(self):
        assert bv("0110").to_string() == "0110"
        assert bv("0110").bits == (0, 1, 1, 0)

    def test_coordinate_zero_first(self):
        # bit 0 of the packed value is the first character
        assert bv("100").value == 1
        assert bv("001").value == 4

    def test_concat_appends_last(self):
        assert bv("01").concat(1).to_string() == "011"
        assert bv("01").concat(1).last_bit() == 1

    def test_rejects_bad_bits(self):
        with pytest.raises(ValueError):
            BitVector.from_bits([0, 2])


class TestHammingDistance:
    def test_identical(self):
        assert hamming_distance(bv("0000"), bv("0000")) == 0

    def test_two_positions(self):
        assert hamming_distance(bv("0101"), bv("0110")) == 2

    def test_lifted_pair_offset(self):
        # appending opposite label bits adds exactly one to the distance
        a, b = bv("10110"), bv("01110")
        assert (hamming_distance(a.concat(0), b.concat(1))
                == hamming_distance(a, b) + 1)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            hamming_distance(bv("01"), bv("011"))

    @given(bitvectors(12), bitvectors(12), bitvectors(12))
    def test_metric_axioms(self, a, b, c):
        assert hamming_distance(a, b) == hamming_distance(b, a)
        assert (hamming_distance(a, b) == 0) == (a == b)
        assert (hamming_distance(a, c)
                <= hamming_distance(a, b) + hamming_distance(b, c))


class TestNearestNeighbor:
    def test_simple(self):
        ds = Dataset((bv("000"), bv("111")))
        assert nearest_neighbor_bruteforce(ds, bv("001")) == (1, 1)

    def test_exact_hit(self):
        ds = Dataset((bv("110"), bv("011"), bv("000")))
        assert nearest_neighbor_bruteforce(ds, bv("011")) == (2, 0)

    def test_smallest_index_wins_ties(self):
        ds = Dataset((bv("001"), bv("010")))
        idx, dist = nearest_neighbor_bruteforce(ds, bv("000"))
        assert (idx, dist) == (1, 1)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            nearest_neighbor_bruteforce(Dataset((bv("01"),)), bv("011"))


class TestValidAnswers:
    def test_optimum_always_valid(self):
        ds = Dataset((bv("000"), bv("111")))
        for c in (1, 2, 10.0):
            assert is_valid_cann_answer(ds, bv("001"), 1, c)

    def test_zero_distance_forces_exact(self):
        ds = Dataset((bv("000"), bv("001")))
        assert not is_valid_cann_answer(ds, bv("000"), 2, 1)
        assert not is_valid_cann_answer(ds, bv("000"), 2, 5)

    def test_factor_boundary(self):
        # dist(q,P)=1, candidate at distance c+1 fails, at distance c passes
        ds = Dataset((bv("000000"), bv("011100")))
        q = bv("000001")
        assert not is_valid_cann_answer(ds, q, 2, 2)  # distance 4 > 2*1
        assert is_valid_cann_answer(ds, q, 2, 4)

    def test_enumerate_simple(self):
        ds = Dataset((bv("000"), bv("111")))
        assert enumerate_valid_answers(ds, bv("000"), 1) == {1}
        ds2 = Dataset((bv("000"), bv("001")))
        assert enumerate_valid_answers(ds2, bv("000"), 1) == {1}

    def test_index_and_factor_errors(self):
        ds = Dataset((bv("000"),))
        with pytest.raises(IndexOutOfRange):
            is_valid_cann_answer(ds, bv("000"), 2, 1)
        with pytest.raises(InvalidApproximation):
            is_valid_cann_answer(ds, bv("000"), 1, 0.5)

    @given(st.lists(bitvectors(8), min_size=1, max_size=6),
           bitvectors(8),
           st.sampled_from([1, 1.5, 2, 3.0]))
    def test_nearest_always_enumerated(self, points, q, c):
        ds = Dataset(tuple(points))
        idx, _ = nearest_neighbor_bruteforce(ds, q)
        valid = enumerate_valid_answers(ds, q, c)
        assert idx in valid

    @given(st.lists(bitvectors(8), min_size=1, max_size=6), bitvectors(8))
    def test_monotone_in_c(self, points, q):
        ds = Dataset(tuple(points))
        prev = set()
        for c in (1, 2, 3, 10):
            cur = enumerate_valid_answers(ds, q, c)
            assert prev <= cur
            prev = cur


class TestDatasetJson:
    def test_roundtrip(self):
        ds = Dataset((bv("0101"), bv("1110")))
        assert Dataset.from_json(ds.to_json()) == ds
        assert ds.to_json() == {"dim": 4, "points": ["0101", "1110"]}

    def test_mixed_dims_rejected(self):
        with pytest.raises(DimensionMismatch):
            Dataset((bv("01"), bv("011")))
