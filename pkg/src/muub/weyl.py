"""Generalized Pauli (Weyl) operators and Hilbert-Schmidt geometry on M(d, C).

Convention: ``X|j> = |j+1 mod d>`` and ``Z = diag(1, w, ..., w^(d-1))`` with
``w = exp(2 pi i / d)``. For d = 3 this reproduces

    X = [[0, 0, 1],      Z = diag(1, w, w^2)
         [1, 0, 0],
         [0, 1, 0]]

Under this convention ``Z X = w X Z``, so ``X^r Z^s = w^(-r s) Z^s X^r``.
"""
from __future__ import annotations

import cmath
import math
import os
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError, UnsupportedDimensionError

MAX_DIM = 31
DEFAULT_EPS = 1e-9
CONVENTION = "X|j>=|j+1 mod d>, Z=diag(w^j)"


@dataclass(frozen=True)
class Tolerance:
    eps: float = DEFAULT_EPS

    def __post_init__(self):
        if not (0.0 < self.eps < 1e-3):
            raise InvalidArgumentError(f"tolerance must satisfy 0 < eps < 1e-3, got {self.eps}")

    @classmethod
    def from_env(cls) -> "Tolerance":
        raw = os.environ.get("MUUB_TOL")
        if raw is None:
            return cls()
        try:
            return cls(float(raw))
        except ValueError as exc:
            raise InvalidArgumentError(f"MUUB_TOL is not a number: {raw!r}") from exc


def as_tolerance(tol: Tolerance | float | None) -> Tolerance:
    if tol is None:
        return Tolerance.from_env()
    if isinstance(tol, Tolerance):
        return tol
    return Tolerance(float(tol))


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % p for p in range(2, math.isqrt(n) + 1))


def check_dim(d: int, max_dim: int | None = MAX_DIM) -> int:
    """Validate a prime dimension, optionally capped at ``max_dim``."""
    if isinstance(d, bool) or not isinstance(d, (int, np.integer)):
        raise InvalidArgumentError(f"dimension must be an integer, got {d!r}")
    d = int(d)
    if not is_prime(d):
        raise UnsupportedDimensionError(f"dimension must be prime, got {d}")
    if max_dim is not None and d > max_dim:
        raise UnsupportedDimensionError(f"dimension {d} exceeds supported maximum {max_dim}")
    return d


def root_of_unity(L: int, k: int) -> complex:
    """Return exp(2 pi i k / L), reducing k mod L first.

    Quarter turns are returned exactly.
    """
    if L < 1:
        raise InvalidArgumentError(f"root order must be positive, got {L}")
    k %= L
    if k == 0:
        return complex(1.0, 0.0)
    if 2 * k == L:
        return complex(-1.0, 0.0)
    if 4 * k == L:
        return complex(0.0, 1.0)
    if 4 * k == 3 * L:
        return complex(0.0, -1.0)
    return cmath.exp(2j * math.pi * k / L)


def roots_table(L: int) -> np.ndarray:
    """Array ``t`` with ``t[k] = exp(2 pi i k / L)`` for k in 0..L-1."""
    return np.array([root_of_unity(L, k) for k in range(L)], dtype=complex)


def _as_square(A, name="operator") -> np.ndarray:
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise InvalidArgumentError(f"{name} must be a square matrix, got shape {A.shape}")
    return A


def weyl_operator(d: int, r: int, s: int) -> np.ndarray:
    """Return the d x d matrix ``X^r Z^s``."""
    d = check_dim(d)
    if not (0 <= r < d and 0 <= s < d):
        raise InvalidArgumentError(f"indices must lie in [0, {d}), got r={r}, s={s}")
    w = roots_table(d)
    M = np.zeros((d, d), dtype=complex)
    j = np.arange(d)
    M[(j + r) % d, j] = w[(s * j) % d]
    return M


def weyl_basis(d: int) -> np.ndarray:
    """All ``X^r Z^s`` stacked as shape (d*d, d, d), ordered lexicographically in (r, s)."""
    d = check_dim(d)
    return np.stack([weyl_operator(d, r, s) for r in range(d) for s in range(d)])


def hs_inner(A, B) -> complex:
    """Hilbert-Schmidt inner product Tr(A^dagger B)."""
    A = np.asarray(A, dtype=complex)
    B = np.asarray(B, dtype=complex)
    if A.shape != B.shape:
        raise InvalidArgumentError(f"dimension mismatch: {A.shape} vs {B.shape}")
    return complex(np.vdot(A, B))


def hs_overlap(A, B) -> float:
    """Return |Tr(A^dagger B)|^2."""
    return abs(hs_inner(A, B)) ** 2


def overlap_table(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Matrix of |Tr(A_i^dagger B_j)|^2 for stacks of operators of shape (n, d, d)."""
    return np.abs(np.einsum("aij,bij->ab", np.conj(A), B)) ** 2


def unitarity_residual(A) -> float:
    A = _as_square(A)
    return float(np.max(np.abs(A.conj().T @ A - np.eye(A.shape[0]))))


def is_unitary(A, tol: Tolerance | float | None = None) -> bool:
    return unitarity_residual(A) <= as_tolerance(tol).eps


def guess_quality(V, V_R, tol: Tolerance | float | None = None) -> float:
    """Average fidelity of guessing ``V_R`` for ``V``: |Tr(V V_R^dagger)|^2 / d^2."""
    V = _as_square(V, "V")
    V_R = _as_square(V_R, "V_R")
    if V.shape != V_R.shape:
        raise InvalidArgumentError(f"dimension mismatch: {V.shape} vs {V_R.shape}")
    tol = as_tolerance(tol)
    if not (is_unitary(V, tol) and is_unitary(V_R, tol)):
        raise InvalidArgumentError("guess_quality requires unitary arguments")
    d = V.shape[0]
    return abs(np.trace(V @ V_R.conj().T)) ** 2 / d**2


def weyl_coefficients(A) -> np.ndarray:
    """Coefficients ``c[r, s] = Tr((X^r Z^s)^dagger A) / d`` as a (d, d) array.

    The r-th cyclic subdiagonal of A holds ``sum_s c[r, s] w^(s j)``, so each
    row of coefficients is one DFT of that subdiagonal.
    """
    A = _as_square(A)
    d = A.shape[0]
    j = np.arange(d)
    diagonals = np.stack([A[(j + r) % d, j] for r in range(d)])
    return np.fft.fft(diagonals, axis=-1) / d


def weyl_expand(A) -> dict[tuple[int, int], complex]:
    c = weyl_coefficients(A)
    d = c.shape[0]
    return {(r, s): complex(c[r, s]) for r in range(d) for s in range(d)}


def from_weyl_coefficients(coeffs) -> np.ndarray:
    """Inverse of :func:`weyl_coefficients`; accepts a (..., d, d) array or a dict."""
    if isinstance(coeffs, dict):
        d = max(max(k) for k in coeffs) + 1
        arr = np.zeros((d, d), dtype=complex)
        for (r, s), v in coeffs.items():
            arr[r, s] = v
        coeffs = arr
    coeffs = np.asarray(coeffs, dtype=complex)
    d = coeffs.shape[-1]
    diagonals = np.fft.ifft(coeffs, axis=-1) * d
    out = np.zeros(coeffs.shape, dtype=complex)
    j = np.arange(d)
    for r in range(d):
        out[..., (j + r) % d, j] = diagonals[..., r, :]
    return out


def weyl_power(a: int, b: int, k: int, d: int) -> tuple[int, int, int]:
    """Write ``(X^a Z^b)^k`` as ``w^e X^r Z^s``; returns (e, r, s) exactly."""
    e = (a * b * k * (k - 1) // 2) % d
    return e, (a * k) % d, (b * k) % d


def weyl_product(r1: int, s1: int, r2: int, s2: int, d: int) -> tuple[int, int, int]:
    """Write ``X^r1 Z^s1 X^r2 Z^s2`` as ``w^e X^r Z^s``; returns (e, r, s)."""
    return (s1 * r2) % d, (r1 + r2) % d, (s1 + s2) % d
