"""Decision-version near-neighbor capacity: shattering enumeration over a
finite dataset family and the resulting memory bound."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DimensionMismatch, TooLarge
from .hamming import BitVector, Dataset, nearest_neighbor_bruteforce
from .instances import Code, build_instance
from .qrac import nayak_bound


@dataclass(frozen=True)
class DecisionFamily:
    """A finite family of datasets, a radius, and the probe queries."""

    datasets: tuple
    radius: int
    queries: tuple

    def __post_init__(self):
        object.__setattr__(self, "datasets", tuple(self.datasets))
        object.__setattr__(self, "queries", tuple(self.queries))
        dims = {d.dim for d in self.datasets} | {q.dim for q in self.queries}
        if len(dims) != 1:
            raise DimensionMismatch("family dims disagree")
        if self.radius < 0:
            raise ValueError("radius must be >= 0")


def near_predicate(dataset: Dataset, q: BitVector, r: int) -> int:
    """1 iff some dataset point lies within Hamming distance r of q."""
    if r < 0:
        raise ValueError("radius must be >= 0")
    _, dmin = nearest_neighbor_bruteforce(dataset, q)
    return int(dmin <= r)


def _labeling(dataset: Dataset, queries, r: int) -> tuple:
    return tuple(near_predicate(dataset, q, r) for q in queries)


@dataclass
class ShatteringReport:
    t: int
    num_datasets: int
    distinct_labelings: int
    shattered: bool

    def to_json(self, p: float | None = None) -> dict:
        obj = {"t": self.t, "num_datasets": self.num_datasets,
               "distinct_labelings": self.distinct_labelings,
               "shattered": self.shattered}
        if p is not None:
            obj["bound_at_p"] = {"p": p, "qubits": capacity_bound(self.t, p)}
        return obj


def shattering_check(family: DecisionFamily) -> ShatteringReport:
    """Enumerate the labelings the family realizes on the query set;
    shattered iff all 2^t of them occur."""
    t = len(family.queries)
    if t > 20:
        raise TooLarge("shattering enumeration capped at t = 20 queries")
    labelings = {_labeling(d, family.queries, family.radius)
                 for d in family.datasets}
    return ShatteringReport(t=t, num_datasets=len(family.datasets),
                            distinct_labelings=len(labelings),
                            shattered=len(labelings) == 2 ** t)


def capacity_bound(t: int, p: float) -> float:
    """Memory bound (1 - h(p)) t from a shattered set of t queries; the same
    formula (and implementation) as the random access code bound."""
    return nayak_bound(t, p)


def hard_decision_family(code: Code, r: int = 0) -> DecisionFamily:
    """The full hard family {P_x} with its queries, at radius r.

    At r = 0 the realized labeling of P_x is the bitwise complement of x.
    """
    datasets = []
    queries = None
    for x_int in range(1 << code.n):
        x = format(x_int, f"0{code.n}b")[::-1]
        inst = build_instance(code, x)
        datasets.append(inst.dataset)
        if queries is None:
            queries = inst.queries
    return DecisionFamily(datasets=tuple(datasets), radius=r, queries=queries)
