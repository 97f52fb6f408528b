"""Dense complex linear-algebra kernel.

Matrices and state vectors are plain ``numpy.ndarray`` values (complex128,
row-major).  Qubit convention used throughout the package: qubit 1 is the
most significant bit of a computational-basis index, so ``tensor(A, B)``
places ``A`` on the high bits.

Every exponential in this package is of the form exp(i*s*H) with H
Hermitian, so the matrix exponential is computed through an explicit
Hermitian eigendecomposition (cyclic-by-rows Jacobi) instead of a general
Pade scheme.  Failure of the Jacobi sweep to converge signals pathological
input and is a hard error, never a silent fallback.
"""
from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

DEFAULT_TOL = 1e-10

# Jacobi termination: all off-diagonal moduli below this, within the sweep cap.
_JACOBI_OFF_TOL = 1e-13
_JACOBI_MAX_SWEEPS = 100


class JacobiConvergenceError(RuntimeError):
    """Cyclic Jacobi failed to reach the off-diagonal threshold."""


def as_matrix(a) -> np.ndarray:
    """Coerce to a 2-d complex array, rejecting non-finite entries."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got ndim={m.ndim}")
    if not np.isfinite(m).all():
        raise ValueError("matrix contains non-finite entries")
    return m


def _square(a, where: str) -> np.ndarray:
    m = as_matrix(a)
    if m.shape[0] != m.shape[1]:
        raise ValueError(f"{where}: matrix must be square, got shape {m.shape}")
    return m


def adjoint(a) -> np.ndarray:
    return np.conj(np.asarray(a)).T


def tensor(*factors) -> np.ndarray:
    """Kronecker product; the first factor acts on the most significant qubit."""
    out = np.eye(1, dtype=complex)
    for f in factors:
        out = np.kron(out, np.asarray(f, dtype=complex))
    return out


def embed_qubit_operator(op, qubit: int, n: int) -> np.ndarray:
    """Embed a single-qubit operator on 1-based `qubit` of an n-qubit register."""
    m = _square(op, "embed_qubit_operator")
    if m.shape != (2, 2):
        raise ValueError(f"expected a 2x2 operator, got {m.shape}")
    if not 1 <= qubit <= n:
        raise ValueError(f"qubit index {qubit} out of range 1..{n}")
    return tensor(np.eye(2 ** (qubit - 1)), m, np.eye(2 ** (n - qubit)))


def frobenius_norm(a) -> float:
    return float(np.sqrt(np.sum(np.abs(np.asarray(a)) ** 2)))


def hermiticity_defect(a) -> float:
    m = _square(a, "hermiticity_defect")
    return frobenius_norm(m - adjoint(m))


def unitarity_defect(a) -> float:
    m = _square(a, "unitarity_defect")
    eye = np.eye(m.shape[0])
    return max(frobenius_norm(m @ adjoint(m) - eye),
               frobenius_norm(adjoint(m) @ m - eye))


def is_hermitian(a, tol: float = DEFAULT_TOL) -> bool:
    return hermiticity_defect(a) <= tol


def is_unitary(a, tol: float = DEFAULT_TOL) -> bool:
    return unitarity_defect(a) <= tol


class HermitianEigen(NamedTuple):
    eigenvalues: np.ndarray   # real, ascending
    eigenvectors: np.ndarray  # orthonormal columns, paired with eigenvalues


def _max_offdiag(a: np.ndarray) -> float:
    off = np.abs(a - np.diag(np.diag(a)))
    return float(off.max()) if off.size else 0.0


def _jacobi_rotate(a: np.ndarray, v: np.ndarray, p: int, q: int) -> None:
    """One complex Jacobi rotation zeroing a[p, q] (and a[q, p])."""
    apq = a[p, q]
    phase = apq / abs(apq)
    theta = 0.5 * math.atan2(2.0 * abs(apq), (a[p, p] - a[q, q]).real)
    c, s = math.cos(theta), math.sin(theta)

    # a <- R^dag a R with R the identity apart from the (p, q) block
    # [[c, -s e^{i phi}], [s e^{-i phi}, c]].
    cp, cq = a[:, p].copy(), a[:, q].copy()
    a[:, p] = c * cp + s * np.conj(phase) * cq
    a[:, q] = -s * phase * cp + c * cq
    rp, rq = a[p, :].copy(), a[q, :].copy()
    a[p, :] = c * rp + s * phase * rq
    a[q, :] = -s * np.conj(phase) * rp + c * rq

    vp, vq = v[:, p].copy(), v[:, q].copy()
    v[:, p] = c * vp + s * np.conj(phase) * vq
    v[:, q] = -s * phase * vp + c * vq

    # the rotation annihilates the pair analytically; drop the roundoff residue
    a[p, q] = 0.0
    a[q, p] = 0.0
    a[p, p] = a[p, p].real
    a[q, q] = a[q, q].real


def hermitian_eigen(h, tol: float = DEFAULT_TOL) -> HermitianEigen:
    """Eigendecomposition of a Hermitian matrix by cyclic-by-rows Jacobi."""
    a = _square(h, "hermitian_eigen")
    defect = hermiticity_defect(a)
    if defect > tol:
        raise ValueError(
            f"hermitian_eigen: input is not Hermitian (defect {defect:.3e} > tol {tol:.3e})")
    a = (a + adjoint(a)) / 2.0
    d = a.shape[0]
    v = np.eye(d, dtype=complex)
    for _ in range(_JACOBI_MAX_SWEEPS):
        if _max_offdiag(a) < _JACOBI_OFF_TOL:
            break
        for p in range(d - 1):
            for q in range(p + 1, d):
                if abs(a[p, q]) >= _JACOBI_OFF_TOL:
                    _jacobi_rotate(a, v, p, q)
    else:
        residue = _max_offdiag(a)
        if residue >= _JACOBI_OFF_TOL:
            raise JacobiConvergenceError(
                f"no convergence after {_JACOBI_MAX_SWEEPS} sweeps "
                f"(max off-diagonal {residue:.3e})")
    lam = np.diag(a).real.copy()
    order = np.argsort(lam, kind="stable")
    return HermitianEigen(lam[order], v[:, order])


def expm_i(h, s: float = 1.0, tol: float = DEFAULT_TOL) -> np.ndarray:
    """exp(i*s*H) for Hermitian H, unitary by construction."""
    m = _square(h, "expm_i")
    defect = hermiticity_defect(m)
    if defect > tol:
        raise ValueError(
            f"expm_i: input is not Hermitian (defect {defect:.3e} > tol {tol:.3e})")
    lam, v = hermitian_eigen(m, tol)
    return (v * np.exp(1j * s * lam)) @ adjoint(v)


def spectral_norm(a) -> float:
    """Largest singular value, via the eigenvalues of A^dag A."""
    m = _square(a, "spectral_norm")
    w = hermitian_eigen(adjoint(m) @ m).eigenvalues
    return float(math.sqrt(max(float(w[-1]), 0.0)))


def random_hermitian(dim: int, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return scale * (m + adjoint(m)) / 2.0


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    return expm_i(random_hermitian(dim, rng))
