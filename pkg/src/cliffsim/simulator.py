"""Statevector simulation utilities.

States are 1-d complex arrays of length 2^n, unit normalized, with qubit 1
on the most significant bit of the basis index.  Sampling operations take
an explicit 64-bit seed (or a Generator) and record the seed alongside the
counts so every stochastic result is reproducible.

The overlap test runs both as the closed-form probability
Pr(0) = (1 + |<psi|phi>|^2) / 2 and as the full (2n+1)-qubit ancilla
protocol (Hadamard, controlled register swap, Hadamard, projection); the
two routes are required to agree and the protocol is simulated directly on
the statevector, never through dense exponentials.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import linalg

STATE_TOL = 1e-10


def n_qubits(state) -> int:
    size = np.asarray(state).shape[0]
    n = int(size).bit_length() - 1
    if 2 ** n != size:
        raise ValueError(f"state length {size} is not a power of two")
    return n


def _require_state(state, name: str = "state") -> np.ndarray:
    v = np.asarray(state, dtype=complex)
    if v.ndim != 1:
        raise ValueError(f"{name} must be 1-d, got ndim={v.ndim}")
    if not np.isfinite(v).all():
        raise ValueError(f"{name} contains non-finite amplitudes")
    n_qubits(v)
    norm = float(np.linalg.norm(v))
    if abs(norm - 1.0) > STATE_TOL:
        raise ValueError(f"{name} is not normalized: |norm - 1| = {abs(norm - 1.0):.3e}")
    return v


def basis_state(n: int, index: int) -> np.ndarray:
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    if not 0 <= index < 2 ** n:
        raise ValueError(f"basis index {index} out of range for n={n}")
    v = np.zeros(2 ** n, dtype=complex)
    v[index] = 1.0
    return v


def random_state(n: int, rng: np.random.Generator) -> np.ndarray:
    v = rng.normal(size=2 ** n) + 1j * rng.normal(size=2 ** n)
    return v / np.linalg.norm(v)


def inner(a, b) -> complex:
    """<a|b> with the first argument conjugated."""
    return complex(np.vdot(np.asarray(a), np.asarray(b)))


def apply(u, state) -> np.ndarray:
    m = linalg.as_matrix(u)
    v = np.asarray(state, dtype=complex)
    if m.shape[1] != v.shape[0]:
        raise ValueError(f"dimension mismatch: {m.shape} applied to length {v.shape[0]}")
    return m @ v


def state_tensor(*states) -> np.ndarray:
    out = np.ones(1, dtype=complex)
    for s in states:
        out = np.kron(out, np.asarray(s, dtype=complex))
    return out


def measure(state, rng: np.random.Generator) -> tuple[int, np.ndarray]:
    """Projective computational-basis measurement; collapses the state."""
    v = _require_state(state)
    probs = np.abs(v) ** 2
    probs = probs / probs.sum()
    outcome = int(rng.choice(len(v), p=probs))
    return outcome, basis_state(n_qubits(v), outcome)


def sample_counts(state, shots: int, seed: int) -> np.ndarray:
    """Multinomial outcome counts over the computational basis."""
    if shots < 1:
        raise ValueError(f"need shots >= 1, got {shots}")
    v = _require_state(state)
    probs = np.abs(v) ** 2
    rng = np.random.default_rng(seed)
    return rng.multinomial(shots, probs / probs.sum())


@dataclass(frozen=True)
class ShotTally:
    shots: int
    zero_count: int
    seed: int
    clamped: bool = False  # sampling noise pushed the radicand below zero

    def __post_init__(self):
        if self.shots < 1:
            raise ValueError(f"need shots >= 1, got {self.shots}")
        if not 0 <= self.zero_count <= self.shots:
            raise ValueError(f"zero_count {self.zero_count} out of range 0..{self.shots}")


def swap_test_circuit_probability(psi, phi) -> float:
    """Pr(ancilla = 0) from the full (2n+1)-qubit protocol, statevector path."""
    p = _require_state(psi, "psi")
    q = _require_state(phi, "phi")
    if p.shape != q.shape:
        raise ValueError(f"register sizes differ: {p.shape[0]} vs {q.shape[0]}")
    dim = p.shape[0]
    # |0, phi, psi>: ancilla on the most significant bit
    full = state_tensor(basis_state(1, 0), q, p)

    def hadamard_ancilla(v):
        r = v.reshape(2, dim * dim)
        return np.concatenate([(r[0] + r[1]), (r[0] - r[1])]) / math.sqrt(2.0)

    full = hadamard_ancilla(full)
    # controlled swap of the two registers when the ancilla is 1
    r = full.reshape(2, dim, dim)
    swapped = np.stack([r[0], r[1].T])
    full = hadamard_ancilla(swapped.reshape(-1))
    return float(np.sum(np.abs(full[: dim * dim]) ** 2))


def swap_test_exact(psi, phi, tol: float = STATE_TOL) -> float:
    """Pr(0) = (1 + |<psi|phi>|^2) / 2, cross-checked against the protocol."""
    p = _require_state(psi, "psi")
    q = _require_state(phi, "phi")
    overlap = abs(inner(p, q))
    formula = (1.0 + overlap ** 2) / 2.0
    protocol = swap_test_circuit_probability(p, q)
    if abs(formula - protocol) > tol:
        raise RuntimeError(
            f"swap-test routes disagree: formula {formula!r} vs protocol {protocol!r}")
    return formula


def swap_test_sampled(psi, phi, shots: int, seed: int) -> tuple[ShotTally, float]:
    """Sample ancilla outcomes and invert Pr(0) = (1 + ov^2)/2 for |ov|.

    The estimate is sqrt(max(0, 2*zero_count/shots - 1)); a negative
    radicand (possible only through sampling noise) clamps to zero and is
    flagged on the tally.
    """
    if shots < 1:
        raise ValueError(f"need shots >= 1, got {shots}")
    p0 = swap_test_exact(psi, phi)
    rng = np.random.default_rng(seed)
    zeros = int(rng.binomial(shots, p0))
    radicand = 2.0 * zeros / shots - 1.0
    tally = ShotTally(shots, zeros, seed, clamped=radicand < 0.0)
    return tally, math.sqrt(max(radicand, 0.0))


def entanglement_entropy(state, cut: int) -> float:
    """Von Neumann entropy (bits) of qubits 1..cut against the rest."""
    v = _require_state(state)
    n = n_qubits(v)
    if not 1 <= cut < n:
        raise ValueError(f"cut must satisfy 1 <= cut < {n}, got {cut}")
    m = v.reshape(2 ** cut, 2 ** (n - cut))
    # Schmidt weights from the smaller reduced density matrix
    rho = m @ np.conj(m).T if cut <= n - cut else np.conj(m).T @ m
    w = np.clip(linalg.hermitian_eigen(rho).eigenvalues, 0.0, 1.0)
    w = w[w > 1e-15]
    return float(-np.sum(w * np.log2(w)))
