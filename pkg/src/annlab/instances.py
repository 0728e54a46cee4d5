"""Hard-instance family: random code construction, lifted datasets, forcing.

Each codeword C(i) is lifted to the tight pair u_i = C(i)∘0, v_i = C(i)∘1
in dimension code_length + 1; a selector string x picks one point per pair
and the queries are the u_i.  For approximation factors up to
min_distance - 1 the only valid approximate-neighbor answer to query i is
the pair member selected by x_i, so answers leak the selector bits.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels
from .errors import (ApproxOutOfRange, DimensionMismatch, Infeasible,
                     InvalidParams, LengthMismatch)
from .hamming import BitVector, Dataset, enumerate_valid_answers

# Above this denominator the int64 kernel comparison could overflow; the
# sweep falls back to exact Python arithmetic.
_MAX_KERNEL_DENOM = 1 << 20


@dataclass(frozen=True)
class Code:
    """n codewords of length code_length with a verified minimum distance."""

    n: int
    code_length: int
    codewords: tuple
    min_distance: int
    seed: int | None = None
    attempts: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "codewords", tuple(self.codewords))
        if len(self.codewords) != self.n:
            raise InvalidParams("codeword count does not match n")
        if any(cw.dim != self.code_length for cw in self.codewords):
            raise DimensionMismatch("codeword length mismatch")
        if recompute_min_distance(self.codewords) != self.min_distance:
            raise InvalidParams("declared min_distance fails verification")

    def packed(self) -> np.ndarray:
        return _kernels.pack_bits(
            np.array([cw.bits for cw in self.codewords], dtype=np.uint8))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "code_length": self.code_length,
            "min_distance": self.min_distance,
            "codewords": [cw.to_string() for cw in self.codewords],
            "seed": self.seed,
            "attempts": self.attempts,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Code":
        return cls(
            n=obj["n"],
            code_length=obj["code_length"],
            codewords=tuple(BitVector.from_string(s) for s in obj["codewords"]),
            min_distance=obj["min_distance"],
            seed=obj.get("seed"),
            attempts=obj.get("attempts"),
        )


def recompute_min_distance(codewords) -> int:
    """Exhaustive pairwise check; the certification step of the construction.

    A singleton code has no pair constraint; it gets the sentinel
    code_length + 1 (every foreign-point distance bound holds vacuously).
    """
    n = len(codewords)
    if n < 2:
        return codewords[0].dim + 1
    packed = _kernels.pack_bits(
        np.array([cw.bits for cw in codewords], dtype=np.uint8))
    dist = _kernels.hamming_cross(packed, packed)
    off = dist[~np.eye(n, dtype=bool)]
    return int(off.min())


def generate_code(n: int, code_length: int, min_dist: int, seed: int,
                  max_retries: int = 100) -> Code:
    """Draw codewords i.i.d. uniform, certify the pairwise distance, retry.

    Each retry redraws all n codewords; deterministic given seed.
    """
    if n < 2:
        raise InvalidParams("need n >= 2 codewords")
    if max_retries < 1:
        raise InvalidParams("max_retries must be >= 1")
    if min_dist < 0:
        raise InvalidParams("min_dist must be >= 0")
    if min_dist > code_length:
        raise InvalidParams(
            f"min_dist {min_dist} exceeds code_length {code_length}")

    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
    best = -1
    for attempt in range(1, max_retries + 1):
        bits = rng.integers(0, 2, size=(n, code_length), dtype=np.uint8)
        codewords = tuple(BitVector.from_bits(row) for row in bits)
        d = recompute_min_distance(codewords)
        if d >= min_dist:
            return Code(n=n, code_length=code_length, codewords=codewords,
                        min_distance=d, seed=seed, attempts=attempt)
        best = max(best, d)
    raise Infeasible(
        f"no code with min distance >= {min_dist} in {max_retries} retries "
        f"(best seen: {best})", best_min_distance=best)


@dataclass(frozen=True)
class HardInstance:
    """A code, a selector x, the lifted dataset P_x and the queries."""

    code: Code
    x: str
    dataset: Dataset
    queries: tuple

    @property
    def n(self) -> int:
        return self.code.n

    @property
    def c_max(self):
        """Largest approximation factor with guaranteed forcing."""
        return self.code.min_distance - 1

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "code_length": self.code.code_length,
            "min_distance": self.code.min_distance,
            "codewords": [cw.to_string() for cw in self.code.codewords],
            "x": self.x,
            "dataset": [p.to_string() for p in self.dataset.points],
            "queries": [q.to_string() for q in self.queries],
            "seed": self.code.seed,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "HardInstance":
        code = Code(
            n=obj["n"], code_length=obj["code_length"],
            codewords=tuple(BitVector.from_string(s) for s in obj["codewords"]),
            min_distance=obj["min_distance"], seed=obj.get("seed"))
        return build_instance(code, obj["x"])


def build_instance(code: Code, x: str) -> HardInstance:
    """Lift the code through selector x: point i is C(i)∘x_i, query i is C(i)∘0."""
    if len(x) != code.n:
        raise LengthMismatch(f"selector length {len(x)} != n {code.n}")
    if any(ch not in "01" for ch in x):
        raise InvalidParams("selector must be a binary string")
    points = tuple(cw.concat(int(b)) for cw, b in zip(code.codewords, x))
    queries = tuple(cw.concat(0) for cw in code.codewords)
    return HardInstance(code=code, x=x, dataset=Dataset(points), queries=queries)


def forced_answer(instance: HardInstance, i: int) -> int:
    """The unique valid answer index predicted by the forcing argument."""
    if not 1 <= i <= instance.n:
        raise InvalidParams(f"query index {i} not in 1..{instance.n}")
    return i


def forced_point(instance: HardInstance, i: int) -> BitVector:
    """The predicted answered point: u_i when x_i = 0, v_i when x_i = 1."""
    idx = forced_answer(instance, i)
    return instance.dataset.points[idx - 1]


def decode_bit(code: Code, i: int, answered_point: BitVector) -> int:
    """Blind selector-bit decoder: reads only the appended last coordinate."""
    if answered_point.dim != code.code_length + 1:
        raise DimensionMismatch(
            f"answered point has dim {answered_point.dim}, "
            f"expected {code.code_length + 1}")
    if not 1 <= i <= code.n:
        raise InvalidParams(f"query index {i} not in 1..{code.n}")
    return answered_point.last_bit()


@dataclass
class ForcingReport:
    c: object
    checked: int
    violations: list
    guaranteed: bool

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "c": float(self.c),
            "checked": self.checked,
            "guaranteed": self.guaranteed,
            "violations": self.violations,
        }


def verify_forcing(instance: HardInstance, c) -> ForcingReport:
    """Check that each query's valid c-ANN answer set is exactly {i}.

    When c exceeds c_max the forcing guarantee lapses; the report is still
    produced but flagged informational.
    """
    if c < 1:
        raise ApproxOutOfRange(f"approximation factor must be >= 1, got {c}")
    guaranteed = c <= instance.c_max
    violations = []
    for i in range(1, instance.n + 1):
        valid = enumerate_valid_answers(instance.dataset,
                                        instance.queries[i - 1], c)
        if valid != {forced_answer(instance, i)}:
            violations.append({"x": instance.x, "i": i,
                               "valid_set": sorted(valid)})
    return ForcingReport(c=c, checked=instance.n, violations=violations,
                         guaranteed=guaranteed)


def verify_forcing_all(code: Code, c) -> ForcingReport:
    """Exhaustive forcing sweep over all 2^n selectors and all n queries."""
    if c < 1:
        raise ApproxOutOfRange(f"approximation factor must be >= 1, got {c}")
    if code.n > 20:
        raise InvalidParams("sweep over 2^n selectors capped at n = 20")
    guaranteed = c <= code.min_distance - 1

    frac = Fraction(c) if isinstance(c, (int, Fraction)) else Fraction(float(c))
    u = _kernels.pack_bits(np.array(
        [cw.concat(0).bits for cw in code.codewords], dtype=np.uint8))
    v = _kernels.pack_bits(np.array(
        [cw.concat(1).bits for cw in code.codewords], dtype=np.uint8))

    violations = []
    if frac.denominator <= _MAX_KERNEL_DENOM:
        raw = _kernels.forcing_sweep(u, v, np.int64(frac.numerator),
                                     np.int64(frac.denominator))
        for x_int, i in raw:
            x = format(int(x_int), f"0{code.n}b")[::-1]  # bit j of x_int is x_{j+1}
            inst = build_instance(code, x)
            valid = enumerate_valid_answers(inst.dataset,
                                            inst.queries[int(i)], c)
            violations.append({"x": x, "i": int(i) + 1,
                               "valid_set": sorted(valid)})
    else:
        for x_int in range(1 << code.n):
            x = format(x_int, f"0{code.n}b")[::-1]
            rep = verify_forcing(build_instance(code, x), c)
            violations.extend(rep.violations)

    return ForcingReport(c=c, checked=(1 << code.n) * code.n,
                         violations=violations, guaranteed=guaranteed)
