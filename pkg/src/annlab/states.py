"""Density-matrix algebra for small systems: POVM statistics, von Neumann
entropy, the Holevo quantity of a classical-quantum ensemble, and its
per-bit chain decomposition.

All entropies are base-2 (bits).  Dense Hermitian eigendecomposition only;
intended for <= 10 qubits per state and <= 3 classical label bits in chain
computations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

import numpy as np

from .errors import (DimensionMismatch, DomainError, InvalidEnsemble,
                     InvalidPovm, InvalidState, UnsupportedPrior)

HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-10
EIGENVALUE_TOL = 1e-10
POVM_SUM_TOL = 1e-10


@dataclass(frozen=True)
class QuantumState:
    """A validated density matrix on a declared number of qubits."""

    qubits: int
    matrix: np.ndarray

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=np.complex128)
        dim = 2 ** self.qubits
        if mat.shape != (dim, dim):
            raise InvalidState(
                f"matrix shape {mat.shape} does not match {self.qubits} qubits")
        if np.abs(mat - mat.conj().T).max() > HERMITIAN_TOL:
            raise InvalidState("matrix is not Hermitian within tolerance")
        if abs(mat.trace() - 1.0) > TRACE_TOL:
            raise InvalidState(f"trace {mat.trace():.3g} is not 1 within tolerance")
        eigs = np.linalg.eigvalsh(mat)
        if eigs.min() < -EIGENVALUE_TOL:
            raise InvalidState(f"negative eigenvalue {eigs.min():.3g}")
        mat = mat.copy()
        mat.flags.writeable = False
        object.__setattr__(self, "matrix", mat)

    @property
    def dim(self) -> int:
        return 2 ** self.qubits

    @classmethod
    def pure(cls, qubits: int, vector) -> "QuantumState":
        v = np.asarray(vector, dtype=np.complex128)
        v = v / np.linalg.norm(v)
        return cls(qubits, np.outer(v, v.conj()))

    @classmethod
    def maximally_mixed(cls, qubits: int) -> "QuantumState":
        dim = 2 ** qubits
        return cls(qubits, np.eye(dim) / dim)

    @classmethod
    def from_bloch(cls, bx: float, by: float, bz: float) -> "QuantumState":
        mat = 0.5 * np.array([[1 + bz, bx - 1j * by],
                              [bx + 1j * by, 1 - bz]])
        return cls(1, mat)

    def to_json(self) -> dict:
        return {"qubits": self.qubits,
                "re": self.matrix.real.tolist(),
                "im": self.matrix.imag.tolist()}

    @classmethod
    def from_json(cls, obj: dict) -> "QuantumState":
        mat = np.array(obj["re"]) + 1j * np.array(obj["im"])
        return cls(obj["qubits"], mat)


@dataclass(frozen=True)
class Povm:
    """A labeled POVM: positive elements summing to the identity."""

    labels: tuple
    elements: tuple

    def __post_init__(self):
        if len(self.labels) != len(self.elements) or not self.elements:
            raise InvalidPovm("need one label per element")
        elems = tuple(np.asarray(e, dtype=np.complex128) for e in self.elements)
        dim = elems[0].shape[0]
        total = np.zeros((dim, dim), dtype=np.complex128)
        for e in elems:
            if e.shape != (dim, dim):
                raise InvalidPovm("element shapes differ")
            if np.abs(e - e.conj().T).max() > HERMITIAN_TOL:
                raise InvalidPovm("element is not Hermitian")
            if np.linalg.eigvalsh(e).min() < -EIGENVALUE_TOL:
                raise InvalidPovm("element is not positive semidefinite")
            total += e
        if np.abs(total - np.eye(dim)).max() > POVM_SUM_TOL:
            raise InvalidPovm("elements do not sum to identity")
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "elements", elems)

    @property
    def dim(self) -> int:
        return self.elements[0].shape[0]


@dataclass(frozen=True)
class CqEnsemble:
    """Classical labels with probabilities, each carrying a quantum state."""

    labels: tuple
    probabilities: tuple
    states: tuple

    def __post_init__(self):
        if not (len(self.labels) == len(self.probabilities) == len(self.states)):
            raise InvalidEnsemble("labels, probabilities, states must align")
        probs = tuple(float(p) for p in self.probabilities)
        if any(p < 0 for p in probs):
            raise InvalidEnsemble("negative probability")
        if abs(sum(probs) - 1.0) > 1e-12:
            raise InvalidEnsemble("probabilities do not sum to 1")
        qs = {s.qubits for s in self.states}
        if len(qs) != 1:
            raise InvalidEnsemble("states must share a common qubit count")
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "probabilities", probs)
        object.__setattr__(self, "states", tuple(self.states))

    @property
    def qubits(self) -> int:
        return self.states[0].qubits

    def average_matrix(self) -> np.ndarray:
        avg = np.zeros_like(self.states[0].matrix)
        for p, s in zip(self.probabilities, self.states):
            avg = avg + p * s.matrix
        return avg


def binary_entropy(p: float) -> float:
    """h(p) = -p log2 p - (1-p) log2 (1-p), with 0 log 0 = 0."""
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"binary entropy needs p in [0,1], got {p}")
    if p in (0.0, 1.0):
        return 0.0
    return -p * math.log2(p) - (1 - p) * math.log2(1 - p)


def _entropy_of_matrix(mat: np.ndarray) -> float:
    eigs = np.linalg.eigvalsh(mat)
    if eigs.min() < -EIGENVALUE_TOL:
        raise InvalidState(f"negative eigenvalue {eigs.min():.3g}")
    eigs = np.clip(eigs, 0.0, None)
    nz = eigs[eigs > 0]
    return float(-(nz * np.log2(nz)).sum())


def von_neumann_entropy(rho: QuantumState) -> float:
    """S(rho) in bits; 0 for pure states, m for the maximally mixed state."""
    return _entropy_of_matrix(rho.matrix)


def measure(rho: QuantumState, povm: Povm) -> np.ndarray:
    """Outcome distribution: probability of outcome k is tr(E_k rho)."""
    if povm.dim != rho.dim:
        raise DimensionMismatch(
            f"POVM dim {povm.dim} != state dim {rho.dim}")
    probs = np.array([float(np.trace(e @ rho.matrix).real)
                      for e in povm.elements])
    return np.clip(probs, 0.0, None)


def holevo_mutual_information(ens: CqEnsemble) -> float:
    """I(X:B) = S(avg state) - sum_x p_x S(rho_x)."""
    avg = _entropy_of_matrix(ens.average_matrix())
    cond = sum(p * von_neumann_entropy(s)
               for p, s in zip(ens.probabilities, ens.states))
    return avg - cond


def _require_uniform_cube(ens: CqEnsemble) -> int:
    lengths = {len(lbl) for lbl in ens.labels}
    if len(lengths) != 1:
        raise UnsupportedPrior("labels must share a common length")
    n = lengths.pop()
    expected = {"".join(bits) for bits in product("01", repeat=n)}
    if set(ens.labels) != expected or len(ens.labels) != 2 ** n:
        raise UnsupportedPrior("labels must cover {0,1}^n exactly once")
    if any(abs(p - 2.0 ** -n) > 1e-12 for p in ens.probabilities):
        raise UnsupportedPrior("prior must be uniform")
    return n


def conditional_information_chain(ens: CqEnsemble) -> list:
    """Per-bit terms I(X_i : B | X_{<i}) for a uniform ensemble over {0,1}^n.

    Term i averages, over prefixes a, the Holevo quantity of the two-state
    sub-ensemble obtained by fixing X_{<i} = a and marginalizing the bits
    after i.  The terms sum to the total mutual information.
    """
    n = _require_uniform_cube(ens)
    by_label = dict(zip(ens.labels, ens.states))

    def prefix_avg(prefix: str) -> np.ndarray:
        rest = n - len(prefix)
        mats = [by_label[prefix + "".join(suf)].matrix
                for suf in product("01", repeat=rest)]
        return sum(mats) / len(mats)

    terms = []
    for i in range(n):
        acc = 0.0
        for bits in product("01", repeat=i):
            a = "".join(bits)
            sigma0 = prefix_avg(a + "0")
            sigma1 = prefix_avg(a + "1")
            acc += (_entropy_of_matrix((sigma0 + sigma1) / 2)
                    - 0.5 * _entropy_of_matrix(sigma0)
                    - 0.5 * _entropy_of_matrix(sigma1))
        terms.append(acc / 2 ** i)
    return terms
