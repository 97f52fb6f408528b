"""First-order product-formula error measurement and a priori bounds.

For H = sum_j eta_j * B_j over Hermitian blades, the exact evolution is
U = exp(-i t H) and the approximant is V = (prod_j exp(-i t/r * eta_j B_j))^r
with the product taken in term-list order.  The measured error is the
spectral norm ||U - V||.

Three bounds are reported per (t, r):

  bound_simple     = (L * Lambda * t)^2 / r
  bound_full       = bound_simple * exp(L * Lambda * |t| / r)
  bound_commutator = Omega * (Lambda * t)^2 / r
                     + (L * |t|^3 * Lambda)^2 / (3 r^2) * exp(L * Lambda * |t| / r)

with L the term count, Lambda = max_j |eta_j| and Omega the number of
unordered non-commuting term pairs.  Only bound_full is a proven envelope
and only it is ever asserted; bound_commutator is reported verbatim for
inspection (note the cubed |t| in its second addend) but never enforced.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import linalg
from .clifford import Blade, anticommutes


@dataclass(frozen=True)
class HamiltonianTerm:
    coeff: float
    blade: Blade

    def __post_init__(self):
        if not math.isfinite(self.coeff):
            raise ValueError(f"coefficient must be finite, got {self.coeff!r}")

    def dense(self) -> np.ndarray:
        return self.coeff * self.blade.dense()


@dataclass(frozen=True)
class TrotterReport:
    r: int
    t: float
    measured_error: float
    bound_simple: float
    bound_full: float
    bound_commutator: float
    omega: int


def _register_size(terms: Sequence[HamiltonianTerm]) -> int:
    ns = {term.blade.n for term in terms}
    if len(ns) > 1:
        raise ValueError(f"terms live on different registers: n in {sorted(ns)}")
    return ns.pop() if ns else 1


def total_hamiltonian(terms: Sequence[HamiltonianTerm]) -> np.ndarray:
    n = _register_size(terms)
    h = np.zeros((2 ** n, 2 ** n), dtype=complex)
    for term in terms:
        h += term.dense()
    return h


def exact_unitary(terms: Sequence[HamiltonianTerm], t: float) -> np.ndarray:
    return linalg.expm_i(total_hamiltonian(terms), -t)


def product_formula(terms: Sequence[HamiltonianTerm], t: float, r: int) -> np.ndarray:
    if r < 1:
        raise ValueError(f"need r >= 1, got {r}")
    n = _register_size(terms)
    step = np.eye(2 ** n, dtype=complex)
    for term in terms:
        step = step @ linalg.expm_i(term.dense(), -t / r)
    return np.linalg.matrix_power(step, r)


def noncommuting_pair_count(terms: Sequence[HamiltonianTerm]) -> int:
    return sum(1 for a, b in itertools.combinations(terms, 2)
               if anticommutes(a.blade.indices, b.blade.indices))


def _bounds(terms, t: float, r: int, omega: int) -> tuple[float, float, float]:
    count = len(terms)
    lam = max((abs(term.coeff) for term in terms), default=0.0)
    simple = (count * lam * t) ** 2 / r
    growth = math.exp(count * lam * abs(t) / r)
    full = simple * growth
    commutator = (omega * (lam * t) ** 2 / r
                  + (count * abs(t) ** 3 * lam) ** 2 / (3.0 * r ** 2) * growth)
    return simple, full, commutator


def trotter_report(terms: Sequence[HamiltonianTerm], t: float, r: int) -> TrotterReport:
    measured = linalg.spectral_norm(exact_unitary(terms, t) - product_formula(terms, t, r))
    omega = noncommuting_pair_count(terms)
    simple, full, commutator = _bounds(terms, t, r, omega)
    return TrotterReport(r, t, measured, simple, full, commutator, omega)


def error_sweep(terms: Sequence[HamiltonianTerm], t: float,
                rs: Sequence[int]) -> list[TrotterReport]:
    """Reports over an r grid, reusing the per-term eigendecompositions."""
    if any(r < 1 for r in rs):
        raise ValueError(f"need every r >= 1, got {list(rs)}")
    n = _register_size(terms)
    dim = 2 ** n
    exact = exact_unitary(terms, t)
    eigs = [linalg.hermitian_eigen(term.dense()) for term in terms]
    omega = noncommuting_pair_count(terms)
    reports = []
    for r in rs:
        step = np.eye(dim, dtype=complex)
        for lam, v in eigs:
            step = step @ ((v * np.exp(-1j * (t / r) * lam)) @ linalg.adjoint(v))
        measured = linalg.spectral_norm(exact - np.linalg.matrix_power(step, int(r)))
        simple, full, commutator = _bounds(terms, t, int(r), omega)
        reports.append(TrotterReport(int(r), t, measured, simple, full, commutator, omega))
    return reports


def random_instance(n: int, num_terms: int, seed: int) -> list[HamiltonianTerm]:
    """Seeded term list over distinct non-identity blades, coefficients in
    +-[0.2, 1.0] (bounded away from zero so instances stay non-degenerate)."""
    from .clifford import hermitian_basis

    pool = [b for b in hermitian_basis(n) if b.indices]
    if not 1 <= num_terms <= len(pool):
        raise ValueError(f"num_terms must be in 1..{len(pool)} for n={n}, got {num_terms}")
    rng = np.random.default_rng(seed)
    picks = rng.choice(len(pool), size=num_terms, replace=False)
    signs = rng.choice([-1.0, 1.0], size=num_terms)
    mags = rng.uniform(0.2, 1.0, size=num_terms)
    return [HamiltonianTerm(float(signs[i] * mags[i]), pool[int(picks[i])])
            for i in range(num_terms)]
