"""Operators as bipartite states, and the MES-MUB counting results.

``choi_vector(U)[r*d + s] = <s|U|r> / sqrt(d)``, so
``<choi(U)|choi(V)> = Tr(U^dagger V) / d``. A unitary maps to a maximally
entangled state, and a C = 1 MUUB collection maps to MUBs of C^d (x) C^d
whose cross overlaps are all 1/d^2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, count, islice

import numpy as np

from .errors import DegenerateInputError, InvalidArgumentError
from .verify import MuubCollection
from .weyl import Tolerance, as_tolerance, check_dim, is_prime


def choi_vector(U) -> np.ndarray:
    """Return the d^2 amplitudes indexed by r*d + s for ``|r>|s>``."""
    U = np.asarray(U, dtype=complex)
    if U.ndim != 2 or U.shape[0] != U.shape[1]:
        raise InvalidArgumentError(f"expected a square matrix, got shape {U.shape}")
    if not np.any(U):
        raise DegenerateInputError("zero operator has no Choi state")
    d = U.shape[0]
    return U.T.reshape(d * d) / math.sqrt(d)


def reduced_state(v, d: int) -> np.ndarray:
    """Partial trace over the second factor."""
    psi = np.asarray(v, dtype=complex).reshape(d, d)
    return psi @ psi.conj().T


def entanglement_residual(v, d: int) -> float:
    return float(np.max(np.abs(reduced_state(v, d) - np.eye(d) / d)))


def is_maximally_entangled(v, tol: Tolerance | float | None = None) -> bool:
    tol = as_tolerance(tol)
    v = np.asarray(v, dtype=complex)
    d = math.isqrt(v.size)
    if d * d != v.size or d < 2:
        raise InvalidArgumentError(f"state length {v.size} is not a square")
    if abs(np.linalg.norm(v) - 1.0) > tol.eps:
        raise InvalidArgumentError("state is not normalized")
    return entanglement_residual(v, d) <= tol.eps


@dataclass
class MesMubReport:
    dim: int
    basis_count: int
    expected_overlap: float
    pair_overlaps: dict[tuple[int, int], tuple[float, float]] = field(default_factory=dict)
    entanglement_residuals: list[np.ndarray] = field(default_factory=list)
    orthonormality_residuals: list[float] = field(default_factory=list)
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def worst_entanglement_residual(self) -> float:
        return max((float(r.max()) for r in self.entanglement_residuals), default=0.0)

    def summary(self) -> str:
        worst_pair = max(
            (max(abs(lo - self.expected_overlap), abs(hi - self.expected_overlap)) for lo, hi in self.pair_overlaps.values()),
            default=0.0,
        )
        return (
            f"mes={'pass' if self.passed else 'fail'} bases={self.basis_count} "
            f"overlap={self.expected_overlap:.10g} worst_overlap_dev={worst_pair:.3g} "
            f"worst_entanglement={self.worst_entanglement_residual:.3g}"
        )


def mes_mub_report_states(state_bases, d: int, expected_overlap: float | None = None,
                          tol: Tolerance | float | None = None) -> MesMubReport:
    """Check bases of C^d (x) C^d, each given as an (n, d^2) array of states.

    Every state must be maximally entangled, each basis orthonormal, and every
    cross-basis ``|<u|v>|^2`` equal to ``expected_overlap`` (default 1/d^2).
    """
    tol = as_tolerance(tol)
    if expected_overlap is None:
        expected_overlap = 1.0 / d**2
    bases = [np.asarray(b, dtype=complex) for b in state_bases]
    report = MesMubReport(dim=d, basis_count=len(bases), expected_overlap=expected_overlap)
    for a, B in enumerate(bases):
        res = np.array([entanglement_residual(v, d) for v in B])
        report.entanglement_residuals.append(res)
        for i in np.flatnonzero(res > tol.eps):
            report.failures.append(f"basis {a} state {i}: not maximally entangled (residual {res[i]:.3g})")
        gram = B.conj() @ B.T
        orth = float(np.max(np.abs(gram - np.eye(len(B)))))
        report.orthonormality_residuals.append(orth)
        if orth > tol.eps:
            report.failures.append(f"basis {a}: not orthonormal (residual {orth:.3g})")
    for a, b in combinations(range(len(bases)), 2):
        ov = np.abs(bases[a].conj() @ bases[b].T) ** 2
        report.pair_overlaps[(a, b)] = (float(ov.min()), float(ov.max()))
        bad = np.argwhere(np.abs(ov - expected_overlap) > tol.eps)
        if len(bad):
            i, j = bad[0]
            report.failures.append(
                f"bases {a},{b} states {i},{j}: overlap {ov[i, j]:.6g} != {expected_overlap:.6g}"
                + (f" (+{len(bad) - 1} more)" if len(bad) > 1 else "")
            )
    return report


def mes_mub_report(collection: MuubCollection, tol: Tolerance | float | None = None) -> MesMubReport:
    """Map a certified full-space collection to states and check the MES-MUB property."""
    d = collection.dim
    if not collection.is_full_space:
        raise InvalidArgumentError("MES report requires bases of the full d^2-dimensional space")
    C = 1.0 if collection.constant_C is None else float(collection.constant_C)
    states = [np.stack([choi_vector(U) for U in b.elements]) for b in collection.bases]
    return mes_mub_report_states(states, d, expected_overlap=C / d**2, tol=tol)


def min_mes_mub_count(d: int) -> int:
    d = check_dim(d, max_dim=None)
    return max(3, d * (d - 1))


def ratio_R_exact(d: int) -> Fraction:
    if d < 2:
        raise InvalidArgumentError(f"ratio requires d >= 2, got {d}")
    check_dim(d, max_dim=None)
    return Fraction(d * d - 1, d * (d - 1))


def ratio_R(d: int) -> float:
    """Maximal over minimal MES-MUB count, (d^2 - 1) / (d (d - 1)) = (d + 1) / d."""
    return float(ratio_R_exact(d))


def odd_primes():
    return (n for n in count(3, 2) if is_prime(n))


def emit_ratio_table(n: int) -> list[tuple[int, float]]:
    """Rows (d, R) for the first ``n`` primes from 3 upward."""
    if n < 0:
        raise InvalidArgumentError("count must be non-negative")
    return [(p, ratio_R(p)) for p in islice(odd_primes(), n)]


def ratio_csv(rows) -> str:
    lines = ["d,R"] + [f"{d},{R:.10g}" for d, R in rows]
    return "\n".join(lines) + "\n"
