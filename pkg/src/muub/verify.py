"""Operator bases, MUUB collections and their certificates.

Two orthogonal unitary bases ``A`` and ``B`` of the same subspace are
mutually unbiased when every ``|Tr(A_i^dagger B_j)|^2`` takes one common
nonzero value C. Residual thresholds follow the natural scale of each
quantity: unitarity residuals are compared against ``eps``; squared
trace overlaps, which scale with d^2, against ``eps * d^2``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .errors import (
    BoundViolationError,
    DegenerateConstantError,
    InvalidArgumentError,
    NotUnbiasedError,
)
from .weyl import Tolerance, as_tolerance, check_dim, overlap_table, weyl_basis


@dataclass(frozen=True, eq=False)
class OperatorBasis:
    """An ordered list of ``span_dim`` operators on C^d.

    ``weyl_exponents`` optionally gives each element exactly as a list of
    ``(r, s, g)`` terms meaning ``m^(-1/2) sum w_L^g X^r Z^s`` over its m
    terms, with L the collection's root order. ``z_coeffs`` (shape (n, d))
    records subspace elements as ``sum_i c_i Z^i``.
    """

    elements: np.ndarray
    label: str = ""
    weyl_exponents: tuple | None = None
    z_coeffs: np.ndarray | None = None

    def __post_init__(self):
        try:
            els = np.asarray(self.elements, dtype=complex)
        except ValueError as exc:
            raise InvalidArgumentError(f"basis elements have mixed dimensions: {exc}") from exc
        if els.ndim != 3 or els.shape[1] != els.shape[2] or els.shape[0] == 0:
            raise InvalidArgumentError(f"basis elements must have shape (n, d, d), got {els.shape}")
        els.setflags(write=False)
        object.__setattr__(self, "elements", els)

    @property
    def dim(self) -> int:
        return self.elements.shape[1]

    @property
    def span_dim(self) -> int:
        return self.elements.shape[0]

    def __len__(self):
        return self.span_dim


@dataclass(frozen=True, eq=False)
class MuubCollection:
    dim: int
    bases: tuple[OperatorBasis, ...]
    constant_C: float | None = None
    root_order: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "bases", tuple(self.bases))
        for b in self.bases:
            if b.dim != self.dim:
                raise InvalidArgumentError(f"basis {b.label!r} has dimension {b.dim}, expected {self.dim}")

    @property
    def span_dim(self) -> int:
        return self.bases[0].span_dim if self.bases else 0

    @property
    def is_full_space(self) -> bool:
        return self.span_dim == self.dim**2


@dataclass
class Failure:
    kind: str
    bases: tuple[int, int]
    elements: tuple[int, int]
    value: float

    def describe(self) -> str:
        (a, b), (i, j) = self.bases, self.elements
        return f"{self.kind}: basis {a} element {i} vs basis {b} element {j} -> {self.value:.6g}"


@dataclass
class Certificate:
    verdict: bool
    dim: int
    basis_count: int
    constant_C: float | None
    worst_orthogonality_residual: float
    worst_unitarity_residual: float
    worst_unbiasedness_residual: float
    failures: list[Failure] = field(default_factory=list)
    pair_constants: dict[tuple[int, int], float] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict

    def summary(self) -> str:
        C = "n/a" if self.constant_C is None else f"{self.constant_C:.10g}"
        return (
            f"verdict={'pass' if self.verdict else 'fail'} dim={self.dim} bases={self.basis_count} C={C} "
            f"unitarity={self.worst_unitarity_residual:.3g} "
            f"orthogonality={self.worst_orthogonality_residual:.3g} "
            f"unbiasedness={self.worst_unbiasedness_residual:.3g}"
        )


def canonical_basis(d: int) -> OperatorBasis:
    """The Weyl basis ``{X^r Z^s}`` of M(d, C)."""
    d = check_dim(d)
    terms = tuple(((r, s, 0),) for r in range(d) for s in range(d))
    return OperatorBasis(weyl_basis(d), label="canonical", weyl_exponents=terms)


def _basis_residuals(basis: OperatorBasis):
    E = basis.elements
    d = basis.dim
    gram = np.einsum("aji,ajk->aik", np.conj(E), E)
    unit = np.max(np.abs(gram - np.eye(d)), axis=(1, 2))
    ov = overlap_table(E, E)
    np.fill_diagonal(ov, 0.0)
    return unit, ov


def check_orthogonal_unitary_basis(basis: OperatorBasis, tol: Tolerance | float | None = None, index: int = 0) -> Certificate:
    """Certify that every element is unitary and distinct elements are trace-orthogonal."""
    tol = as_tolerance(tol)
    d = basis.dim
    unit, ov = _basis_residuals(basis)
    failures = [Failure("non-unitary", (index, index), (i, i), float(u)) for i, u in enumerate(unit) if u > tol.eps]
    for i, j in zip(*np.nonzero(np.triu(ov) > tol.eps * d**2)):
        failures.append(Failure("non-orthogonal", (index, index), (int(i), int(j)), float(ov[i, j])))
    unit_max = float(unit.max())
    ortho_max = float(ov.max()) if ov.size > 1 else 0.0
    return Certificate(
        verdict=not failures,
        dim=d,
        basis_count=1,
        constant_C=None,
        worst_orthogonality_residual=ortho_max,
        worst_unitarity_residual=unit_max,
        worst_unbiasedness_residual=0.0,
        failures=failures,
    )


def cross_overlaps(A: OperatorBasis, B: OperatorBasis) -> np.ndarray:
    if A.dim != B.dim or A.span_dim != B.span_dim:
        raise InvalidArgumentError(
            f"bases differ in shape: ({A.dim}, {A.span_dim}) vs ({B.dim}, {B.span_dim})"
        )
    return overlap_table(A.elements, B.elements)


def check_mutually_unbiased(A: OperatorBasis, B: OperatorBasis, tol: Tolerance | float | None = None) -> float:
    """Return the common overlap C of two bases, or raise if there is none."""
    tol = as_tolerance(tol)
    ov = cross_overlaps(A, B)
    lo, hi = float(ov.min()), float(ov.max())
    scale = tol.eps * A.dim**2
    if hi - lo > scale:
        raise NotUnbiasedError(f"overlaps range over [{lo:.6g}, {hi:.6g}]", lo, hi)
    C = float(ov.mean())
    if C <= scale:
        raise DegenerateConstantError(f"common overlap {C:.3g} is zero")
    return C


def max_full_space_bases(d: int) -> int:
    return d * d - 1


def verify_collection(collection: MuubCollection, tol: Tolerance | float | None = None) -> Certificate:
    """Certify every basis and every unordered basis pair against one global C.

    Raises :class:`BoundViolationError` for full-space collections with more
    than d^2 - 1 bases, which cannot exist.
    """
    tol = as_tolerance(tol)
    d = collection.dim
    bases = collection.bases
    if not bases:
        raise InvalidArgumentError("collection has no bases")
    n = bases[0].span_dim
    for b in bases:
        if b.span_dim != n:
            raise InvalidArgumentError("bases in a collection must span the same number of elements")
    if collection.is_full_space and len(bases) > max_full_space_bases(d):
        raise BoundViolationError(
            f"{len(bases)} bases exceed the maximum d^2-1 = {max_full_space_bases(d)} for d={d}"
        )

    failures: list[Failure] = []
    unit_max = ortho_max = 0.0
    for idx, basis in enumerate(bases):
        cert = check_orthogonal_unitary_basis(basis, tol, index=idx)
        failures.extend(cert.failures)
        unit_max = max(unit_max, cert.worst_unitarity_residual)
        ortho_max = max(ortho_max, cert.worst_orthogonality_residual)

    tables = {(a, b): cross_overlaps(bases[a], bases[b]) for a, b in combinations(range(len(bases)), 2)}
    pair_constants = {k: float(v.mean()) for k, v in tables.items()}
    scale = tol.eps * d**2

    if collection.constant_C is not None:
        C = float(collection.constant_C)
    elif tables:
        C = float(np.median(np.concatenate([v.ravel() for v in tables.values()])))
    else:
        C = None

    unb_max = 0.0
    for (a, b), ov in tables.items():
        dev = np.abs(ov - C)
        unb_max = max(unb_max, float(dev.max()))
        for i, j in zip(*np.nonzero(dev > scale)):
            failures.append(Failure("biased", (a, b), (int(i), int(j)), float(ov[i, j])))
    if C is not None and C <= scale:
        failures.append(Failure("zero-constant", (0, 1), (0, 0), C))

    failures.sort(key=lambda f: (f.bases, f.elements, f.kind))
    return Certificate(
        verdict=not failures,
        dim=d,
        basis_count=len(bases),
        constant_C=C,
        worst_orthogonality_residual=ortho_max,
        worst_unitarity_residual=unit_max,
        worst_unbiasedness_residual=unb_max,
        failures=failures,
        pair_constants=pair_constants,
    )


def same_up_to_phases(A: OperatorBasis, B: OperatorBasis, tol: Tolerance | float | None = None) -> bool:
    """True if the element sets coincide up to a phase on each element.

    For unitaries ``|Tr(U^dagger V)| = d`` iff ``V = e^(i theta) U``, so a
    perfect matching on the d^2-valued overlaps decides equivalence.
    """
    tol = as_tolerance(tol)
    if A.dim != B.dim or A.span_dim != B.span_dim:
        return False
    d = A.dim
    match = np.abs(cross_overlaps(A, B) - d**2) <= tol.eps * d**2
    return bool(np.all(match.sum(axis=1) == 1) and np.all(match.sum(axis=0) == 1))
