"""Symbolic Pauli strings and Hermitian Clifford generator products.

A register of n qubits carries 2n anticommuting generators, each realized
as a Pauli string with a single X or Y letter followed by a Z tail:

    gamma(n, 2k)   = I^(n-k-1) (x) X (x) Z^k
    gamma(n, 2k+1) = I^(n-k-1) (x) Y (x) Z^k      for k = 0..n-1.

Products of distinct generators ("blades") are made Hermitian by a phase
factor omega in {1, i} chosen from the grade: omega = i exactly when
zeta*(zeta-1)/2 is odd (zeta = number of factors), i.e. zeta = 2, 3 mod 4.
The factor multiplies the product on the left; construction certifies the
result is Hermitian and aborts otherwise rather than flipping the factor.

All symbolic products track a global phase i**phase_power (phase_power
mod 4), so every algebraic identity here can be checked without building
dense matrices, while ``dense()`` provides the 2^n x 2^n realization with
qubit 1 on the most significant bit.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import linalg

DEFAULT_TOL = linalg.DEFAULT_TOL

PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

# single-letter products: (a, b) -> (c, k) meaning a*b = i**k * c
_MUL = {
    ("I", "I"): ("I", 0), ("I", "X"): ("X", 0), ("I", "Y"): ("Y", 0), ("I", "Z"): ("Z", 0),
    ("X", "I"): ("X", 0), ("Y", "I"): ("Y", 0), ("Z", "I"): ("Z", 0),
    ("X", "X"): ("I", 0), ("Y", "Y"): ("I", 0), ("Z", "Z"): ("I", 0),
    ("X", "Y"): ("Z", 1), ("Y", "X"): ("Z", 3),
    ("Y", "Z"): ("X", 1), ("Z", "Y"): ("X", 3),
    ("Z", "X"): ("Y", 1), ("X", "Z"): ("Y", 3),
}


@dataclass(frozen=True)
class PauliString:
    """A tensor word over {I, X, Y, Z} with global phase i**phase_power."""

    n: int
    letters: tuple[str, ...]
    phase_power: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"need n >= 1, got {self.n}")
        if len(self.letters) != self.n:
            raise ValueError(f"expected {self.n} letters, got {len(self.letters)}")
        bad = [c for c in self.letters if c not in PAULI]
        if bad:
            raise ValueError(f"invalid Pauli letters: {bad}")
        object.__setattr__(self, "phase_power", self.phase_power % 4)

    @property
    def phase(self) -> complex:
        return 1j ** self.phase_power

    def is_hermitian_symbolic(self) -> bool:
        # a bare Pauli word is Hermitian; the phase must be +-1
        return self.phase_power % 2 == 0

    def dense(self) -> np.ndarray:
        return self.phase * linalg.tensor(*(PAULI[c] for c in self.letters))

    def __matmul__(self, other: "PauliString") -> "PauliString":
        return pauli_mul(self, other)


def identity_string(n: int) -> PauliString:
    return PauliString(n, ("I",) * n)


def pauli_mul(p: PauliString, q: PauliString) -> PauliString:
    """Symbolic product with exact phase tracking (never builds matrices)."""
    if p.n != q.n:
        raise ValueError(f"length mismatch: {p.n} vs {q.n}")
    power = p.phase_power + q.phase_power
    letters = []
    for a, b in zip(p.letters, q.letters):
        c, k = _MUL[(a, b)]
        letters.append(c)
        power += k
    return PauliString(p.n, tuple(letters), power % 4)


def gamma(n: int, a: int) -> PauliString:
    """Generator a of the 2n-generator set on n qubits (phase-free word)."""
    if not 1 <= n <= 4:
        raise ValueError(f"need 1 <= n <= 4, got n={n}")
    if not 0 <= a <= 2 * n - 1:
        raise ValueError(f"generator index {a} out of range 0..{2 * n - 1}")
    k = a // 2
    head = "X" if a % 2 == 0 else "Y"
    letters = ["I"] * (n - k - 1) + [head] + ["Z"] * k
    return PauliString(n, tuple(letters))


@dataclass(frozen=True)
class Blade:
    """Hermitian product omega * gamma_{j1} ... gamma_{jz}, indices ascending."""

    n: int
    indices: tuple[int, ...]

    def __post_init__(self):
        idx = tuple(self.indices)
        if list(idx) != sorted(set(idx)):
            raise ValueError(f"indices must be strictly ascending, got {idx}")
        if idx and not (0 <= idx[0] and idx[-1] <= 2 * self.n - 1):
            raise ValueError(f"indices {idx} out of range for n={self.n}")
        object.__setattr__(self, "indices", idx)

    @property
    def grade(self) -> int:
        return len(self.indices)

    @property
    def omega(self) -> complex:
        z = self.grade
        return 1j if (z * (z - 1) // 2) % 2 else 1.0 + 0j

    @cached_property
    def word(self) -> PauliString:
        w = identity_string(self.n)
        for a in self.indices:
            w = pauli_mul(w, gamma(self.n, a))
        if self.omega == 1j:
            w = PauliString(w.n, w.letters, w.phase_power + 1)
        if not w.is_hermitian_symbolic():
            # the omega rule guarantees Hermiticity; reaching this means the
            # construction itself is broken, so fail loudly
            raise ValueError(
                f"blade {self.indices} on n={self.n} is not Hermitian "
                f"(phase power {w.phase_power}); refusing to flip omega")
        return w

    @cached_property
    def _dense(self) -> np.ndarray:
        return self.word.dense()

    def dense(self) -> np.ndarray:
        return self._dense


def blade_dense(b: Blade) -> np.ndarray:
    return b.dense()


def hermitian_basis(n: int) -> list[Blade]:
    """All 4^n blades, grade-major, index-lexicographic inside each grade."""
    if not 1 <= n <= 4:
        raise ValueError(f"need 1 <= n <= 4, got n={n}")
    blades = []
    for grade in range(2 * n + 1):
        for idx in itertools.combinations(range(2 * n), grade):
            blades.append(Blade(n, idx))
    return blades


def pauli_word_basis(n: int) -> list[PauliString]:
    """All 4^n phase-free words, in lexicographic I < X < Y < Z order."""
    if not 1 <= n <= 4:
        raise ValueError(f"need 1 <= n <= 4, got n={n}")
    return [PauliString(n, letters)
            for letters in itertools.product("IXYZ", repeat=n)]


def anticommutes(j1: Iterable[int], j2: Iterable[int]) -> bool:
    """Whether the blades with index sets j1, j2 anticommute.

    Commuting each generator of one product past each generator of the
    other flips the sign unless the indices coincide, so the products
    anticommute exactly when |j1|*|j2| - |intersection| is odd.
    """
    s1, s2 = set(j1), set(j2)
    return (len(s1) * len(s2) - len(s1 & s2)) % 2 == 1


def omega_count(n: int) -> int:
    """Number of unordered non-commuting basis pairs, by the parity rule."""
    if not 1 <= n <= 3:
        raise ValueError(f"need 1 <= n <= 3, got n={n}")
    subsets = [b.indices for b in hermitian_basis(n)]
    return sum(1 for a, b in itertools.combinations(subsets, 2)
               if anticommutes(a, b))


def omega_count_dense(n: int) -> int:
    """Brute-force count via dense commutators; oracle for omega_count."""
    if not 1 <= n <= 3:
        raise ValueError(f"need 1 <= n <= 3, got n={n}")
    mats = [b.dense() for b in hermitian_basis(n)]
    count = 0
    for a, b in itertools.combinations(mats, 2):
        if linalg.frobenius_norm(a @ b - b @ a) > 1e-9:
            count += 1
    return count


def gram_rank(mats: Sequence[np.ndarray], tol: float = 1e-8) -> int:
    """Rank of the Gram matrix of vectorized matrices (linear independence)."""
    vecs = np.array([np.asarray(m).ravel() for m in mats])
    g = np.conj(vecs) @ vecs.T  # G[a,b] = <vec a, vec b>; Hermitian PSD
    w = linalg.hermitian_eigen(g).eigenvalues
    cutoff = tol * max(1.0, float(w[-1]))
    return int(np.sum(w > cutoff))


def pauli_coefficients(h, n: int) -> np.ndarray:
    """Real expansion coefficients of a Hermitian matrix over pauli_word_basis.

    c_w = Tr(w h) / 2^n; reconstruction sum(c_w * w) recovers h exactly.
    """
    m = linalg.as_matrix(h)
    dim = 2 ** n
    if m.shape != (dim, dim):
        raise ValueError(f"expected {dim}x{dim} matrix for n={n}, got {m.shape}")
    defect = linalg.hermiticity_defect(m)
    if defect > linalg.DEFAULT_TOL:
        raise ValueError(f"matrix is not Hermitian (defect {defect:.3e})")
    coeffs = np.array([np.trace(w.dense() @ m) / dim for w in pauli_word_basis(n)])
    if np.abs(coeffs.imag).max() > 1e-9:
        raise ValueError("trace coefficients of a Hermitian matrix must be real")
    return coeffs.real


def lie_embedding_check(first: Sequence[np.ndarray], second: Sequence[np.ndarray],
                        tol: float = DEFAULT_TOL) -> bool:
    """Certify psi([B,C]) = [psi(B), psi(C)] for per-qubit su(2) components.

    psi places each 2x2 anti-Hermitian traceless component on its own qubit
    and sums the embeddings; the bracket on tuples acts componentwise.
    """
    if len(first) != len(second):
        raise ValueError(f"component counts differ: {len(first)} vs {len(second)}")
    n = len(first)

    def psi(components):
        out = np.zeros((2 ** n, 2 ** n), dtype=complex)
        for pos, comp in enumerate(components, start=1):
            c = linalg.as_matrix(comp)
            if c.shape != (2, 2):
                raise ValueError(f"component {pos} must be 2x2, got {c.shape}")
            out += linalg.embed_qubit_operator(c, pos, n)
        return out

    pb, pc = psi(first), psi(second)
    lhs = pb @ pc - pc @ pb
    rhs = psi([np.asarray(b) @ np.asarray(c) - np.asarray(c) @ np.asarray(b)
               for b, c in zip(first, second)])
    return linalg.frobenius_norm(lhs - rhs) <= tol


def random_su2_components(n: int, rng: np.random.Generator) -> list[np.ndarray]:
    """Random anti-Hermitian traceless 2x2 components, one per qubit."""
    comps = []
    for _ in range(n):
        b = rng.normal(size=3)
        comps.append(1j * (b[0] * PAULI["X"] + b[1] * PAULI["Y"] + b[2] * PAULI["Z"]))
    return comps
