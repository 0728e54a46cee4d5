"""Bit-exact Hamming-space primitives.

BitVectors are immutable; the bit pattern is stored packed in a single
Python int (machine-word popcount via ``int.bit_count``), while the
semantic contract remains the unpacked 0/1 sequence, coordinate 0 first.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels
from .errors import DimensionMismatch, IndexOutOfRange, InvalidApproximation


@dataclass(frozen=True)
class BitVector:
    """A point of fixed dimension in Hamming space {0,1}^d."""

    dim: int
    value: int  # packed bits, coordinate j at bit j

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dim must be positive")
        if not 0 <= self.value < (1 << self.dim):
            raise ValueError("packed value out of range for dim")

    @classmethod
    def from_bits(cls, bits) -> "BitVector":
        bits = [int(b) for b in bits]
        value = 0
        for j, b in enumerate(bits):
            if b not in (0, 1):
                raise ValueError("bits must be 0 or 1")
            value |= b << j
        return cls(len(bits), value)

    @classmethod
    def from_string(cls, s: str) -> "BitVector":
        return cls.from_bits(int(ch) for ch in s)

    @property
    def bits(self) -> tuple:
        return tuple((self.value >> j) & 1 for j in range(self.dim))

    def to_string(self) -> str:
        return "".join(str(b) for b in self.bits)

    def concat(self, bit: int) -> "BitVector":
        """Append one coordinate at the end (the last index)."""
        if bit not in (0, 1):
            raise ValueError("bit must be 0 or 1")
        return BitVector(self.dim + 1, self.value | (bit << self.dim))

    def last_bit(self) -> int:
        return (self.value >> (self.dim - 1)) & 1


@dataclass(frozen=True)
class Dataset:
    """An ordered list of equal-dimension points; external indices are 1..n."""

    points: tuple

    def __post_init__(self):
        if len(self.points) < 1:
            raise ValueError("dataset must contain at least one point")
        dims = {p.dim for p in self.points}
        if len(dims) != 1:
            raise DimensionMismatch("all dataset points must share one dim")
        object.__setattr__(self, "points", tuple(self.points))

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def dim(self) -> int:
        return self.points[0].dim

    def packed(self) -> np.ndarray:
        """(n, W) uint64 matrix for the kernel paths."""
        return _kernels.pack_bits(
            np.array([p.bits for p in self.points], dtype=np.uint8))

    def to_json(self) -> dict:
        return {"dim": self.dim, "points": [p.to_string() for p in self.points]}

    @classmethod
    def from_json(cls, obj: dict) -> "Dataset":
        points = tuple(BitVector.from_string(s) for s in obj["points"])
        ds = cls(points)
        if ds.dim != obj["dim"]:
            raise DimensionMismatch("declared dim does not match points")
        return ds


def hamming_distance(a: BitVector, b: BitVector) -> int:
    if a.dim != b.dim:
        raise DimensionMismatch(f"dims differ: {a.dim} vs {b.dim}")
    return (a.value ^ b.value).bit_count()


def nearest_neighbor_bruteforce(dataset: Dataset, q: BitVector):
    """Exact nearest neighbor by full scan; smallest index wins ties.

    Returns (index, distance) with index in 1..n.
    """
    if q.dim != dataset.dim:
        raise DimensionMismatch(f"dims differ: {q.dim} vs {dataset.dim}")
    best_idx, best_dist = 1, dataset.dim + 1
    for j, p in enumerate(dataset.points, start=1):
        d = (q.value ^ p.value).bit_count()
        if d < best_dist:
            best_idx, best_dist = j, d
    return best_idx, best_dist


def _within_factor(dist: int, c, dmin: int) -> bool:
    """dist <= c * dmin, exact when c is rational."""
    if isinstance(c, (int, Fraction)):
        cf = Fraction(c)
        return dist * cf.denominator <= cf.numerator * dmin
    return dist <= c * dmin  # strict float comparison, no tolerance


def is_valid_cann_answer(dataset: Dataset, q: BitVector, idx: int, c) -> bool:
    """Whether point idx is a correct c-approximate nearest neighbor of q."""
    if c < 1:
        raise InvalidApproximation(f"approximation factor must be >= 1, got {c}")
    if not 1 <= idx <= dataset.n:
        raise IndexOutOfRange(f"index {idx} not in 1..{dataset.n}")
    _, dmin = nearest_neighbor_bruteforce(dataset, q)
    return _within_factor(hamming_distance(q, dataset.points[idx - 1]), c, dmin)


def enumerate_valid_answers(dataset: Dataset, q: BitVector, c) -> set:
    """All indices whose point is a correct c-ANN answer; never empty."""
    if c < 1:
        raise InvalidApproximation(f"approximation factor must be >= 1, got {c}")
    if q.dim != dataset.dim:
        raise DimensionMismatch(f"dims differ: {q.dim} vs {dataset.dim}")
    _, dmin = nearest_neighbor_bruteforce(dataset, q)
    return {
        j for j, p in enumerate(dataset.points, start=1)
        if _within_factor(hamming_distance(q, p), c, dmin)
    }
