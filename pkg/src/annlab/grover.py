"""Candidate-scanning quantum search: exact rotation analytics, statevector
simulation with query accounting, and the hybrid-argument experiment that
bounds how far Q oracle queries can move the final state.

The register is the M-element candidate set itself (no power-of-two
padding): the start state is the uniform superposition over candidates and
the diffusion step reflects about it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DomainError, NoMarked, RegimeViolation, TooLarge

MAX_STATEVECTOR = 1 << 20
MAX_HYBRID = 1 << 14


@dataclass(frozen=True)
class CandidateInstance:
    """A candidate set of size M with a marked (satisfying) subset."""

    size: int
    marked: frozenset

    def __post_init__(self):
        if self.size < 1:
            raise DomainError("candidate set must be nonempty")
        marked = frozenset(int(s) for s in self.marked)
        if any(not 0 <= s < self.size for s in marked):
            raise DomainError("marked indices out of range")
        object.__setattr__(self, "marked", marked)

    @property
    def t(self) -> int:
        return len(self.marked)


@dataclass
class GroverRun:
    instance: CandidateInstance
    k: int
    queries_used: int
    success_probability: float
    found: int | None
    seed: int

    @property
    def succeeded(self) -> bool:
        return self.found in self.instance.marked

    def to_json(self) -> dict:
        return {"M": self.instance.size, "t": self.instance.t,
                "marked": sorted(self.instance.marked), "k": self.k,
                "queries_used": self.queries_used,
                "success_probability": self.success_probability,
                "found": self.found, "succeeded": self.succeeded,
                "seed": self.seed}


def _theta(m_size: int, t: int) -> float:
    if not 1 <= t <= m_size:
        raise DomainError(f"need 1 <= t <= M, got t={t}, M={m_size}")
    return math.asin(math.sqrt(t / m_size))


def rotation_success(m_size: int, t: int, k: int) -> float:
    """Exact success probability sin^2((2k+1) theta), theta = asin(sqrt(t/M))."""
    if k < 0:
        raise DomainError("iteration count must be >= 0")
    return math.sin((2 * k + 1) * _theta(m_size, t)) ** 2


def optimal_iterations(m_size: int, t: int) -> int:
    """floor(pi / (4 theta)); guarantees success >= 1/2 at the returned k."""
    return int(math.pi / (4.0 * _theta(m_size, t)))


def grover_statevector(instance: CandidateInstance, k: int,
                       seed: int = 0) -> GroverRun:
    """Simulate k iterates (phase oracle + reflection about the start state)
    on the length-M amplitude vector; one oracle query per iterate."""
    if instance.t == 0:
        raise NoMarked("no marked candidates; handle absence separately")
    if instance.size > MAX_STATEVECTOR:
        raise TooLarge(f"M capped at {MAX_STATEVECTOR}")
    marked = np.array(sorted(instance.marked), dtype=np.int64)
    amp = _kernels.grover_amplitudes(instance.size, marked, k)
    probs = amp ** 2
    probs /= probs.sum()
    success = float(probs[marked].sum())
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
    found = int(rng.choice(instance.size, p=probs))
    return GroverRun(instance=instance, k=k, queries_used=k,
                     success_probability=success, found=found, seed=seed)


def search_unknown_t(instance: CandidateInstance, seed: int = 0,
                     max_rounds: int = 64):
    """Search without knowing t: exponentially growing iteration budget with
    a uniformly random k each round (scheduling is plumbing, not analysis;
    expected total queries O(sqrt(M/t)))."""
    if instance.t == 0:
        raise NoMarked("no marked candidates")
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
    limit = 1.0
    total_queries = 0
    for round_idx in range(max_rounds):
        k = int(rng.integers(0, max(1, int(limit))))
        run = grover_statevector(instance, k,
                                 seed=int(rng.integers(0, 2 ** 63)))
        total_queries += run.queries_used
        if run.found in instance.marked:
            return run.found, total_queries
        limit = min(limit * 1.2, math.sqrt(instance.size))
    return None, total_queries


@dataclass
class ScalingRow:
    m_size: int
    t: int
    k_opt: int
    ratio: float
    exact_success: float
    empirical_success: float


@dataclass
class ScalingTable:
    rows: list

    def to_json(self) -> dict:
        return {"rows": [{"M": r.m_size, "t": r.t, "k_opt": r.k_opt,
                          "ratio": r.ratio,
                          "exact_success": r.exact_success,
                          "empirical_success": r.empirical_success}
                         for r in self.rows]}

    def to_csv(self) -> str:
        lines = ["M,t,k_opt,ratio,exact_success,empirical_success"]
        for r in self.rows:
            lines.append(f"{r.m_size},{r.t},{r.k_opt},{r.ratio!r},"
                         f"{r.exact_success!r},{r.empirical_success!r}")
        return "\n".join(lines) + "\n"


def scaling_experiment(m_list, t: int, seeds) -> ScalingTable:
    """Query-count scaling at the analytic iteration count: the ratio
    k_opt / sqrt(M/t) approaches pi/4 and success stays constant."""
    if t < 1:
        raise DomainError("need t >= 1")
    rows = []
    for m_size in m_list:
        if t > m_size:
            raise DomainError(f"t={t} exceeds M={m_size}")
        k_opt = optimal_iterations(m_size, t)
        ratio = k_opt / math.sqrt(m_size / t)
        exact = rotation_success(m_size, t, k_opt)
        hits = 0
        for seed in seeds:
            ss = np.random.SeedSequence(entropy=seed, spawn_key=(m_size,))
            rng = np.random.Generator(np.random.PCG64(ss))
            marked = frozenset(
                int(s) for s in rng.choice(m_size, size=t, replace=False))
            run = grover_statevector(
                CandidateInstance(size=m_size, marked=marked), k_opt,
                seed=int(rng.integers(0, 2 ** 63)))
            hits += run.succeeded
        rows.append(ScalingRow(m_size=m_size, t=t, k_opt=k_opt, ratio=ratio,
                               exact_success=exact,
                               empirical_success=hits / len(seeds)))
    return ScalingTable(rows=rows)


@dataclass
class HybridReport:
    m_size: int
    q: int
    distances: np.ndarray  # D_s = ||psi_s - psi_0||^2 per marked position s
    average: float
    bound: float
    satisfied: bool

    def to_json(self) -> dict:
        return {"M": self.m_size, "Q": self.q,
                "distances": self.distances.tolist(),
                "average": self.average, "bound": self.bound,
                "satisfied": self.satisfied}

    def to_csv(self) -> str:
        lines = ["s,D_s"]
        for s, d in enumerate(self.distances.tolist()):
            lines.append(f"{s},{d!r}")
        lines.append(f"average,{self.average!r}")
        lines.append(f"bound,{self.bound!r}")
        return "\n".join(lines) + "\n"


def bbbv_hybrid(m_size: int, q: int, algorithm=None) -> HybridReport:
    """Hybrid-distance experiment for the query lower bound.

    Runs a Q-query algorithm once per oracle: the empty oracle and, for each
    s, the oracle marking {s}; reports D_s = ||psi_s - psi_0||^2 and checks
    the average against 4 Q^2 / M.  The default algorithm is Q iterates of
    the search recursion (the distance-maximizing case).

    A custom ``algorithm(m_size, q, s_or_None) -> final amplitude vector``
    may be supplied.
    """
    if m_size > MAX_HYBRID:
        raise TooLarge(f"M capped at {MAX_HYBRID}")
    if q < 0:
        raise DomainError("Q must be >= 0")
    if algorithm is None:
        distances = _kernels.bbbv_distances(m_size, q)
    else:
        psi0 = np.asarray(algorithm(m_size, q, None), dtype=np.float64)
        distances = np.empty(m_size)
        for s in range(m_size):
            psi_s = np.asarray(algorithm(m_size, q, s), dtype=np.float64)
            distances[s] = float(((psi_s - psi0) ** 2).sum())
    average = float(distances.mean())
    bound = 4.0 * q * q / m_size
    return HybridReport(m_size=m_size, q=q, distances=distances,
                        average=average, bound=bound,
                        satisfied=average <= bound + 1e-12)


@dataclass
class DistinguishabilityReport:
    m_size: int
    q: int
    avg_distance: float
    avg_identification: float
    trace_bounds: np.ndarray
    indistinguishable: bool

    def to_json(self) -> dict:
        return {"M": self.m_size, "Q": self.q,
                "avg_distance": self.avg_distance,
                "avg_identification": self.avg_identification,
                "trace_bounds": self.trace_bounds.tolist(),
                "indistinguishable": self.indistinguishable}


def distinguishability_check(m_size: int, q: int) -> DistinguishabilityReport:
    """In the deep sub-optimal regime the per-s final states stay close to
    the oracle-free state, so no output rule can identify s reliably."""
    if q > optimal_iterations(m_size, 1) // 4:
        raise RegimeViolation(
            f"Q={q} too large; need Q <= optimal_iterations/4 "
            f"= {optimal_iterations(m_size, 1) // 4}")
    report = bbbv_hybrid(m_size, q)
    # Concentration of the final state on its own marked index.
    ident = rotation_success(m_size, 1, q) if q > 0 else 1.0 / m_size
    trace_bounds = np.minimum(1.0, np.sqrt(report.distances) + 1.0 / m_size)
    return DistinguishabilityReport(
        m_size=m_size, q=q, avg_distance=report.average,
        avg_identification=ident, trace_bounds=trace_bounds,
        indistinguishable=ident < 0.5)
