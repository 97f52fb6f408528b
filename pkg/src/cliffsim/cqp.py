"""Clifford quantum perceptrons.

States are prepared by exponentiating real combinations of Hermitian
blades: |x> = exp(i * sum_j c_j B_j) |0..0>.  A Type II unit uses exactly
the 2n single-generator blades; Type I may use any explicit blade list.

Forward pass: phi = arccos(activation(Re<x|w>)), then the output state is
y = exp(i * phi * B_mu) |0..0> for the configured output blade B_mu.
Fidelity against the target angle beta is the numeric |<r|y>| where the
reference state is rotated by the opposite angle, r = exp(-i*beta*B_mu)|0..0>,
so that for output blades with zero diagonal expectation the fidelity obeys
F = |cos(phi + beta)|.

Learning is plain gradient ascent on the fidelity with central
finite-difference gradients; no analytic gradient is trusted anywhere.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Sequence

import numpy as np

from . import linalg
from .clifford import Blade
from .simulator import basis_state, inner

_ACT_RANGE_SLACK = 1e-12


class Activation(enum.Enum):
    IDENTITY = "identity"
    TANH = "tanh"
    CLAMP = "clamp"

    def apply(self, u: float) -> float:
        if self is Activation.IDENTITY:
            return float(u)
        if self is Activation.TANH:
            return math.tanh(u)
        return min(1.0, max(-1.0, float(u)))


def generator_blades(n: int) -> tuple[Blade, ...]:
    """The 2n single-generator blades (omega = 1 for grade 1)."""
    return tuple(Blade(n, (a,)) for a in range(2 * n))


@dataclass(frozen=True)
class PerceptronConfig:
    n: int
    flavor: str                        # "I" or "II"
    active_blades: tuple[Blade, ...]
    output_blade: Blade
    activation: Activation = Activation.TANH
    eta: float = 0.1
    overlap_mode: str = "real"         # "real" or "abs" (sensitivity studies)

    def __post_init__(self):
        if self.flavor not in ("I", "II"):
            raise ValueError(f"flavor must be 'I' or 'II', got {self.flavor!r}")
        if not self.active_blades:
            raise ValueError("active_blades must be non-empty")
        seen = set()
        for b in self.active_blades:
            if b.n != self.n:
                raise ValueError(f"blade {b.indices} has n={b.n}, config has n={self.n}")
            if not b.indices:
                raise ValueError("the identity blade cannot be an active blade")
            if b.indices in seen:
                raise ValueError(f"duplicate active blade {b.indices}")
            seen.add(b.indices)
        if self.flavor == "II" and self.active_blades != generator_blades(self.n):
            raise ValueError("Type II requires exactly the 2n generator blades, in order")
        if self.output_blade.n != self.n or not self.output_blade.indices:
            raise ValueError("output_blade must be a non-identity blade on the same register")
        if not self.eta > 0:
            raise ValueError(f"need eta > 0, got {self.eta}")
        if self.overlap_mode not in ("real", "abs"):
            raise ValueError(f"overlap_mode must be 'real' or 'abs', got {self.overlap_mode!r}")

    @classmethod
    def type_ii(cls, n: int, output_index: int = 0, **kw) -> "PerceptronConfig":
        return cls(n=n, flavor="II", active_blades=generator_blades(n),
                   output_blade=Blade(n, (output_index,)), **kw)

    @classmethod
    def type_i(cls, n: int, blade_index_sets: Sequence[Sequence[int]],
               output_indices: Sequence[int], **kw) -> "PerceptronConfig":
        blades = tuple(Blade(n, tuple(s)) for s in blade_index_sets)
        return cls(n=n, flavor="I", active_blades=blades,
                   output_blade=Blade(n, tuple(output_indices)), **kw)

    @cached_property
    def _blade_stack(self) -> np.ndarray:
        return np.stack([b.dense() for b in self.active_blades])


def encode(config: PerceptronConfig, coeffs) -> np.ndarray:
    """|x> = exp(i * sum_j coeffs[j] * B_j) |0..0>."""
    c = np.asarray(coeffs, dtype=float)
    if c.shape != (len(config.active_blades),):
        raise ValueError(
            f"expected {len(config.active_blades)} coefficients, got shape {c.shape}")
    if not np.isfinite(c).all():
        raise ValueError("coefficients must be finite")
    h = np.tensordot(c, config._blade_stack, axes=1)
    return linalg.expm_i(h) @ basis_state(config.n, 0)


def forward(x, w, activation: Activation, output_blade: Blade,
            overlap_mode: str = "real") -> tuple[float, np.ndarray]:
    """Perceptron forward pass: returns (phi, output state)."""
    raw = inner(x, w)
    u = abs(raw) if overlap_mode == "abs" else raw.real
    v = activation.apply(u)
    if abs(v) > 1.0 + _ACT_RANGE_SLACK:
        raise ValueError(
            f"activation output {v!r} is outside [-1, 1]; arccos undefined")
    phi = math.acos(min(1.0, max(-1.0, v)))
    y = linalg.expm_i(output_blade.dense(), phi) @ basis_state(output_blade.n, 0)
    return phi, y


def target_state(output_blade: Blade, target_angle: float) -> np.ndarray:
    """Reference state rotated opposite to the output rotation."""
    return linalg.expm_i(output_blade.dense(), -target_angle) @ basis_state(output_blade.n, 0)


def fidelity(y, target_angle: float, output_blade: Blade) -> float:
    f = abs(inner(target_state(output_blade, target_angle), np.asarray(y, dtype=complex)))
    return float(min(f, 1.0))


@dataclass(frozen=True)
class TrainingSample:
    input_coeffs: np.ndarray
    target_angle: float

    def __post_init__(self):
        object.__setattr__(self, "input_coeffs",
                           np.asarray(self.input_coeffs, dtype=float))


@dataclass(frozen=True)
class TrainRecord:
    iteration: int
    theta: np.ndarray
    fidelity: float

    def __post_init__(self):
        if not 0.0 <= self.fidelity <= 1.0 + 1e-10:
            raise ValueError(f"fidelity {self.fidelity} outside [0, 1]")


def _fd_gradient(score: Callable[[np.ndarray], float], theta: np.ndarray,
                 step: float) -> np.ndarray:
    grad = np.empty_like(theta)
    for j in range(theta.size):
        bump = np.zeros_like(theta)
        bump[j] = step
        grad[j] = (score(theta + bump) - score(theta - bump)) / (2.0 * step)
        if not math.isfinite(grad[j]):
            raise ValueError(
                f"non-finite finite-difference gradient at component {j} "
                f"(activation kink or overflow)")
    return grad


def train(config: PerceptronConfig, sample: TrainingSample, theta0,
          iterations: int, fd_step: float = 1e-5) -> list[TrainRecord]:
    """Gradient ascent on the fidelity; one record per iteration, initial included."""
    if iterations < 0:
        raise ValueError(f"need iterations >= 0, got {iterations}")
    if not 0 < fd_step < 1e-2:
        raise ValueError(f"fd_step {fd_step} outside (0, 1e-2)")
    theta = np.asarray(theta0, dtype=float).copy()
    if theta.shape != (len(config.active_blades),):
        raise ValueError(
            f"theta0 must have {len(config.active_blades)} components, got {theta.shape}")
    x = encode(config, sample.input_coeffs)
    ref = target_state(config.output_blade, sample.target_angle)

    def score(t: np.ndarray) -> float:
        w = encode(config, t)
        _, y = forward(x, w, config.activation, config.output_blade, config.overlap_mode)
        return float(min(abs(inner(ref, y)), 1.0))

    records = [TrainRecord(0, theta.copy(), score(theta))]
    for k in range(1, iterations + 1):
        theta = theta + config.eta * _fd_gradient(score, theta, fd_step)
        records.append(TrainRecord(k, theta.copy(), score(theta)))
    return records


def multilayer_forward(layers: Sequence[np.ndarray], x_coeffs,
                       config: PerceptronConfig) -> np.ndarray:
    """Feed-forward network where each layer's phis re-encode the next state.

    layers[m] has one weight row per neuron; the neuron count must equal
    len(config.active_blades) so the resulting phi vector is a valid
    coefficient vector for the next encoding.
    """
    m_blades = len(config.active_blades)
    state = encode(config, x_coeffs)
    for depth, layer in enumerate(layers):
        weights = np.asarray(layer, dtype=float)
        if weights.ndim != 2 or weights.shape != (m_blades, m_blades):
            raise ValueError(
                f"layer {depth}: expected shape ({m_blades}, {m_blades}), "
                f"got {weights.shape}")
        phis = np.empty(m_blades)
        for j in range(m_blades):
            w = encode(config, weights[j])
            raw = inner(state, w)
            u = abs(raw) if config.overlap_mode == "abs" else raw.real
            v = config.activation.apply(u)
            if abs(v) > 1.0 + _ACT_RANGE_SLACK:
                raise ValueError(f"layer {depth} neuron {j}: activation out of range")
            phis[j] = math.acos(min(1.0, max(-1.0, v)))
        state = encode(config, phis)
    return state


def type_equivalence_check(config: PerceptronConfig, u, x_coeffs=None,
                           w_coeffs=None, seed: int = 0,
                           tol: float = linalg.DEFAULT_TOL) -> bool:
    """Joint unitary change of input and weight leaves (phi, y) unchanged."""
    m = linalg.as_matrix(u)
    defect = linalg.unitarity_defect(m)
    if defect > tol:
        raise ValueError(f"u is not unitary (defect {defect:.3e})")
    if x_coeffs is None or w_coeffs is None:
        rng = np.random.default_rng(seed)
        size = len(config.active_blades)
        if x_coeffs is None:
            x_coeffs = rng.uniform(-1.0, 1.0, size)
        if w_coeffs is None:
            w_coeffs = rng.uniform(-1.0, 1.0, size)
    x = encode(config, x_coeffs)
    w = encode(config, w_coeffs)
    phi, y = forward(x, w, config.activation, config.output_blade, config.overlap_mode)
    phi_u, y_u = forward(m @ x, m @ w, config.activation, config.output_blade,
                         config.overlap_mode)
    return abs(phi - phi_u) <= tol and float(np.linalg.norm(y - y_u)) <= tol


def operator_activation_forward(x, activation: Activation, reference_index: int,
                                desired) -> tuple[np.ndarray, float, float]:
    """Operator-valued activation on the amplitude spectrum of |x>.

    A = diag(|a_j|) in the computational basis of |x> = sum_j a_j |j>;
    the output is phi(A)|e_i> normalized by N = |phi(|a_i|)| for the
    reference basis state i.  Returns (y_out, cost, readout) where cost is
    the fidelity |<y_out|desired>| and readout is the scalar
    <x|phi(A)|x> = sum_j phi(|a_j|) |a_j|^2.
    """
    v = np.asarray(x, dtype=complex)
    d = np.asarray(desired, dtype=complex)
    if v.ndim != 1 or d.shape != v.shape:
        raise ValueError("x and desired must be 1-d states of equal length")
    if not 0 <= reference_index < v.shape[0]:
        raise ValueError(f"reference_index {reference_index} out of range")
    moduli = np.abs(v)
    acted = np.array([activation.apply(m) for m in moduli])
    norm = abs(acted[reference_index])
    if norm <= 1e-300:
        raise ValueError(
            f"degenerate output: activation vanishes on reference component "
            f"{reference_index} (|a| = {moduli[reference_index]!r})")
    y_out = np.zeros_like(v)
    y_out[reference_index] = acted[reference_index] / norm
    cost = abs(inner(y_out, d))
    readout = float(np.sum(acted * moduli ** 2))
    return y_out, cost, readout
