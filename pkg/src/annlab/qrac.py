"""Quantum random access codes: reference constructions, worst-case success
evaluation, the (1 - h(p)) n memory certificate, the information audit, and
the sketch-to-QRAC reduction over the hard instance family.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from itertools import product

import numpy as np

from .errors import (DomainError, IncompatibleSketch, InvalidParams,
                     InvalidScheme, SubRandomDecoder, TooLarge)
from .hamming import BitVector, Dataset
from .instances import Code, build_instance, decode_bit
from .states import (CqEnsemble, Povm, QuantumState, binary_entropy,
                     conditional_information_chain, holevo_mutual_information)

_PAULI = {
    "X": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "Z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}


@dataclass(frozen=True)
class QracScheme:
    """Encoder family {x -> rho_x} with one binary-outcome decoder per index.

    Decoder POVMs are labeled (0, 1); decoding bit i of x means measuring
    decoders[i-1] and reading the outcome label.
    """

    n: int
    qubits: int
    encoder: dict
    decoders: tuple

    def __post_init__(self):
        if len(self.encoder) != 2 ** self.n:
            raise InvalidScheme("encoder must cover all 2^n strings")
        for x, rho in self.encoder.items():
            if len(x) != self.n or rho.qubits != self.qubits:
                raise InvalidScheme(f"bad encoder entry for {x!r}")
        if len(self.decoders) != self.n:
            raise InvalidScheme("need one decoder per index")
        for dec in self.decoders:
            if tuple(dec.labels) != (0, 1):
                raise InvalidScheme("decoders must be binary with labels (0, 1)")


@dataclass
class QracEvaluation:
    n: int
    qubits: int
    worst_p: float
    table: list  # entries {"x":…, "i":…, "p":…}

    def to_json(self) -> dict:
        return {"n": self.n, "m": self.qubits, "worst_p": self.worst_p,
                "table": self.table}


@dataclass
class NayakCertificate:
    n: int
    qubits: int
    worst_case_p: float
    bound: float
    satisfied: bool
    slack: float

    def to_json(self) -> dict:
        return {"n": self.n, "m": self.qubits,
                "worst_case_p": self.worst_case_p, "bound": self.bound,
                "satisfied": self.satisfied, "slack": self.slack}


def _all_strings(n: int):
    return ["".join(bits) for bits in product("01", repeat=n)]


def _axis_scheme(axes: tuple) -> QracScheme:
    """Single-qubit scheme: bit i flips the Bloch component along axes[i];
    decoder i measures that axis."""
    n = len(axes)
    norm = 1.0 / math.sqrt(n)
    encoder = {}
    for x in _all_strings(n):
        bloch = {"X": 0.0, "Y": 0.0, "Z": 0.0}
        for bit, axis in zip(x, axes):
            bloch[axis] = norm * (1.0 if bit == "0" else -1.0)
        encoder[x] = QuantumState.from_bloch(bloch["X"], bloch["Y"], bloch["Z"])
    eye = np.eye(2, dtype=np.complex128)
    decoders = tuple(
        Povm(labels=(0, 1),
             elements=((eye + _PAULI[a]) / 2, (eye - _PAULI[a]) / 2))
        for a in axes)
    return QracScheme(n=n, qubits=1, encoder=encoder, decoders=decoders)


def qrac_2to1() -> QracScheme:
    """Two bits in one qubit: Bloch vectors at the four diagonal directions
    of the X-Z plane; success 1/2 + 1/(2 sqrt 2) for every (x, i)."""
    return _axis_scheme(("X", "Z"))


def qrac_3to1() -> QracScheme:
    """Three bits in one qubit: Bloch vectors at the cube corners
    (+-1, +-1, +-1)/sqrt(3); success 1/2 + 1/(2 sqrt 3)."""
    return _axis_scheme(("X", "Y", "Z"))


def _basis_projector(n: int, i: int, bit: int) -> np.ndarray:
    dim = 2 ** n
    diag = np.zeros(dim)
    for k in range(dim):
        label = format(k, f"0{n}b")
        if int(label[i]) == bit:
            diag[k] = 1.0
    return np.diag(diag).astype(np.complex128)


def basis_encoding_qrac(n: int) -> QracScheme:
    """Classical baseline: x stored as the basis state |x> on n qubits."""
    if n > 10:
        raise TooLarge("basis encoding capped at n = 10")
    dim = 2 ** n
    encoder = {}
    for x in _all_strings(n):
        vec = np.zeros(dim)
        vec[int(x, 2)] = 1.0
        encoder[x] = QuantumState.pure(n, vec)
    decoders = tuple(
        Povm(labels=(0, 1),
             elements=(_basis_projector(n, i, 0), _basis_projector(n, i, 1)))
        for i in range(n))
    return QracScheme(n=n, qubits=n, encoder=encoder, decoders=decoders)


def evaluate_qrac(scheme: QracScheme) -> QracEvaluation:
    """Worst-case success over all strings x and indices i, plus the full table."""
    from .states import measure

    table = []
    worst = 1.0
    for x in _all_strings(scheme.n):
        rho = scheme.encoder[x]
        for i in range(scheme.n):
            probs = measure(rho, scheme.decoders[i])
            p = float(probs[int(x[i])])
            table.append({"x": x, "i": i + 1, "p": p})
            worst = min(worst, p)
    return QracEvaluation(n=scheme.n, qubits=scheme.qubits,
                          worst_p=worst, table=table)


def nayak_bound(n: int, p: float) -> float:
    """Minimum qubit count (1 - h(p)) n implied by an (n, m, p)-QRAC."""
    if not 0.5 <= p <= 1.0:
        raise DomainError(f"bound needs p in [1/2, 1], got {p}")
    return (1.0 - binary_entropy(p)) * n


def certify_nayak(scheme: QracScheme) -> NayakCertificate:
    """Check m >= (1 - h(p)) n at the scheme's measured worst-case p.

    A failed certificate would contradict the memory lower bound, so it
    always indicates an implementation bug.
    """
    worst_p = evaluate_qrac(scheme).worst_p
    if worst_p < 0.5:
        raise SubRandomDecoder(
            f"worst-case success {worst_p:.4f} < 1/2; bound is vacuous")
    bound = nayak_bound(scheme.n, worst_p)
    slack = scheme.qubits - bound
    return NayakCertificate(n=scheme.n, qubits=scheme.qubits,
                            worst_case_p=worst_p, bound=bound,
                            satisfied=slack >= -1e-9, slack=slack)


def scheme_ensemble(scheme: QracScheme) -> CqEnsemble:
    """Uniform classical-quantum ensemble over the encoder states."""
    labels = _all_strings(scheme.n)
    return CqEnsemble(labels=tuple(labels),
                      probabilities=tuple([2.0 ** -scheme.n] * len(labels)),
                      states=tuple(scheme.encoder[x] for x in labels))


@dataclass
class AuditReport:
    n: int
    qubits: int
    worst_p: float
    mutual_information: float
    chain_terms: list
    lower_bound: float
    sandwich_ok: bool
    chain_ok: bool

    def to_json(self) -> dict:
        return {"n": self.n, "m": self.qubits, "worst_p": self.worst_p,
                "mutual_information": self.mutual_information,
                "chain_terms": self.chain_terms,
                "lower_bound": self.lower_bound,
                "sandwich_ok": self.sandwich_ok, "chain_ok": self.chain_ok}


def information_audit(scheme: QracScheme) -> AuditReport:
    """Numeric sandwich n(1 - h(p)) <= I(X:B) <= m plus the chain identity."""
    if scheme.n > 3:
        raise TooLarge("information audit capped at n = 3 label bits")
    ens = scheme_ensemble(scheme)
    info = holevo_mutual_information(ens)
    terms = conditional_information_chain(ens)
    worst_p = evaluate_qrac(scheme).worst_p
    lower = nayak_bound(scheme.n, worst_p) if worst_p >= 0.5 else 0.0
    sandwich_ok = (lower - 1e-6 <= info <= scheme.qubits + 1e-9)
    chain_ok = abs(sum(terms) - info) <= 1e-9
    return AuditReport(n=scheme.n, qubits=scheme.qubits, worst_p=worst_p,
                       mutual_information=info, chain_terms=terms,
                       lower_bound=lower, sandwich_ok=sandwich_ok,
                       chain_ok=chain_ok)


# ---------------------------------------------------------------------------
# Sketch simulators and the reduction
# ---------------------------------------------------------------------------

class SketchSimulator(ABC):
    """A dataset-to-state encoder with a measurement-based query answerer.

    Answer measurements are exposed as point-labeled POVMs so the reduction
    can compose them with the blind bit decoder; sampling an answer always
    acts on a fresh state copy (states here are immutable, which models the
    fresh-copy requirement for free).
    """

    qubits: int

    @abstractmethod
    def encode(self, dataset: Dataset) -> QuantumState:
        ...

    @abstractmethod
    def answer_measurement(self, i: int) -> list:
        """POVM for query q_i as [(answered_point, element), ...]."""
        ...

    def answer(self, i: int, state: QuantumState, rng) -> BitVector:
        """Sample an answered point for query q_i from a fresh copy."""
        outcomes = self.answer_measurement(i)
        probs = np.array([float(np.trace(e @ state.matrix).real)
                          for _, e in outcomes])
        probs = np.clip(probs, 0.0, None)
        probs /= probs.sum()
        return outcomes[rng.choice(len(outcomes), p=probs)][0]


def _selector_of(code: Code, dataset: Dataset) -> str:
    if dataset.dim != code.code_length + 1:
        raise IncompatibleSketch(
            f"dataset dim {dataset.dim} != code_length + 1 "
            f"= {code.code_length + 1}")
    bits = []
    for cw, p in zip(code.codewords, dataset.points):
        if p.value & ((1 << code.code_length) - 1) != cw.value:
            raise IncompatibleSketch("dataset is not from this code's family")
        bits.append(str(p.last_bit()))
    return "".join(bits)


class ExhaustiveClassicalSketch(SketchSimulator):
    """Stores the selector string in n qubits and answers by exact lookup."""

    def __init__(self, code: Code):
        if code.n > 10:
            raise TooLarge("exhaustive sketch capped at n = 10")
        self.code = code
        self.qubits = code.n

    def encode(self, dataset: Dataset) -> QuantumState:
        x = _selector_of(self.code, dataset)
        vec = np.zeros(2 ** self.code.n)
        vec[int(x, 2)] = 1.0
        return QuantumState.pure(self.code.n, vec)

    def answer_measurement(self, i: int) -> list:
        u_i = self.code.codewords[i - 1].concat(0)
        v_i = self.code.codewords[i - 1].concat(1)
        return [(u_i, _basis_projector(self.code.n, i - 1, 0)),
                (v_i, _basis_projector(self.code.n, i - 1, 1))]


class NoisyClassicalSketch(SketchSimulator):
    """Like the exhaustive sketch, but each query answers correctly only
    with probability p0, else returns the other member of the pair."""

    def __init__(self, code: Code, p0: float):
        if code.n > 10:
            raise TooLarge("noisy sketch capped at n = 10")
        if not 0.0 <= p0 <= 1.0:
            raise InvalidParams(f"p0 must be in [0,1], got {p0}")
        self.code = code
        self.p0 = p0
        self.qubits = code.n

    def encode(self, dataset: Dataset) -> QuantumState:
        x = _selector_of(self.code, dataset)
        vec = np.zeros(2 ** self.code.n)
        vec[int(x, 2)] = 1.0
        return QuantumState.pure(self.code.n, vec)

    def answer_measurement(self, i: int) -> list:
        u_i = self.code.codewords[i - 1].concat(0)
        v_i = self.code.codewords[i - 1].concat(1)
        pi0 = _basis_projector(self.code.n, i - 1, 0)
        pi1 = _basis_projector(self.code.n, i - 1, 1)
        return [(u_i, self.p0 * pi0 + (1 - self.p0) * pi1),
                (v_i, self.p0 * pi1 + (1 - self.p0) * pi0)]


def sketch_to_qrac(sketch: SketchSimulator, code: Code) -> QracScheme:
    """Turn an ANN sketch into a random access code over the hard family.

    Encoder: x -> sketch state for dataset P_x.  Decoder i: run the sketch's
    answer measurement for q_i and read the answered point's last coordinate
    through the blind bit decoder.
    """
    if code.min_distance < 2:
        raise InvalidParams(
            "code needs min_distance >= 2 so c = 1 forcing holds")
    encoder = {}
    for x in _all_strings(code.n):
        instance = build_instance(code, x)
        encoder[x] = sketch.encode(instance.dataset)

    decoders = []
    dim = 2 ** sketch.qubits
    for i in range(1, code.n + 1):
        elems = {0: np.zeros((dim, dim), dtype=np.complex128),
                 1: np.zeros((dim, dim), dtype=np.complex128)}
        for point, element in sketch.answer_measurement(i):
            elems[decode_bit(code, i, point)] += element
        decoders.append(Povm(labels=(0, 1), elements=(elems[0], elems[1])))
    return QracScheme(n=code.n, qubits=sketch.qubits,
                      encoder=encoder, decoders=tuple(decoders))
