"""The diagonal subspace span{I, Z, ..., Z^(d-1)} and its maximal MUUB sets.

States of C^d form a commutative monoid under the cyclic convolution
``bullet``; the linear map ``G(sum m_i |i>) = sum m_i Z^i`` carries it onto
the operator product on the subspace. Pulling the adjoint back through G
gives ``dagger_state``, so G(v) is unitary exactly when
``bullet(v, dagger_state(v)) == |0>``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidArgumentError
from .verify import MuubCollection, OperatorBasis
from .weyl import Tolerance, as_tolerance, check_dim, roots_table


@dataclass(frozen=True, eq=False)
class MonoidVector:
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex)
        if c.ndim != 1 or c.size < 2:
            raise InvalidArgumentError(f"coefficient vector must be 1-d with at least 2 entries, got {c.shape}")
        if not np.all(np.isfinite(c)):
            raise InvalidArgumentError("coefficients must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def ket(cls, d: int, i: int) -> "MonoidVector":
        c = np.zeros(d, dtype=complex)
        c[i % d] = 1.0
        return cls(c)

    @property
    def dim(self) -> int:
        return self.coeffs.size

    def allclose(self, other: "MonoidVector", eps: float = 1e-9) -> bool:
        return self.dim == other.dim and bool(np.max(np.abs(self.coeffs - other.coeffs)) <= eps)


@dataclass(frozen=True, eq=False)
class SubspaceOperator:
    z_coeffs: np.ndarray

    @property
    def dim(self) -> int:
        return len(self.z_coeffs)

    def matrix(self) -> np.ndarray:
        # sum_i c_i Z^i is diagonal with entry j = sum_i c_i w^(i j)
        d = self.dim
        return np.diag(np.fft.ifft(self.z_coeffs) * d)


def bullet(u: MonoidVector, v: MonoidVector) -> MonoidVector:
    """Cyclic convolution: coefficient q collects m_i n_j over i + j = q mod d."""
    if u.dim != v.dim:
        raise InvalidArgumentError(f"dimension mismatch: {u.dim} vs {v.dim}")
    out = np.zeros(u.dim, dtype=complex)
    for i, m in enumerate(u.coeffs):
        out += m * np.roll(v.coeffs, i)
    return MonoidVector(out)


def dagger_state(v: MonoidVector) -> MonoidVector:
    """``sum conj(m_i) |(d - i) mod d>``."""
    d = v.dim
    return MonoidVector(np.conj(v.coeffs)[(-np.arange(d)) % d])


def maps_to_unitary(v: MonoidVector, tol: Tolerance | float | None = None) -> bool:
    tol = as_tolerance(tol)
    prod = bullet(v, dagger_state(v))
    return prod.allclose(MonoidVector.ket(v.dim, 0), tol.eps)


def iso_G(v: MonoidVector) -> SubspaceOperator:
    return SubspaceOperator(v.coeffs.copy())


def iso_G_inv(op: SubspaceOperator) -> MonoidVector:
    return MonoidVector(op.z_coeffs)


def quadratic_exponent(d: int, h: int) -> int:
    """``alpha_h = h + (h+1) + ... + (d-1)``."""
    return (d * (d - 1) - h * (h - 1)) // 2


def durt_mub_state(d: int, k: int, t: int) -> MonoidVector:
    """The t-th state of the k-th non-computational MUB of C^d.

    For odd d the amplitude at ``|h>`` is ``gamma^(t(d-h) - k alpha_h) / sqrt(d)``
    with ``gamma = exp(2 pi i/d)``, exponents reduced mod d. At d = 2 that
    quadratic phase is trivial mod 2, so the k = 1 family instead takes the
    extra factor ``(-i)^h``, giving the remaining qubit MUB.
    """
    d = check_dim(d, max_dim=None)
    if not (0 <= k < d and 0 <= t < d):
        raise InvalidArgumentError(f"k and t must lie in [0, {d}), got k={k}, t={t}")
    h = np.arange(d)
    if d == 2:
        L = 4
        exps = 2 * t * (d - h) + 3 * k * h
    else:
        L = d
        exps = np.array([t * (d - x) - k * quadratic_exponent(d, x) for x in h])
    return MonoidVector(roots_table(L)[exps % L] / math.sqrt(d))


def durt_exponents(d: int, k: int, t: int) -> list[int]:
    """Integer phase exponents (mod d) of :func:`durt_mub_state` for odd d."""
    return [(t * (d - h) - k * quadratic_exponent(d, h)) % d for h in range(d)]


def computational_states(d: int) -> list[MonoidVector]:
    return [MonoidVector.ket(d, i) for i in range(d)]


def subspace_canonical_basis(d: int) -> OperatorBasis:
    z = np.eye(d, dtype=complex)
    return OperatorBasis(
        np.stack([SubspaceOperator(c).matrix() for c in z]), label="Z(0)", z_coeffs=z
    )


def subspace_basis(d: int, k: int) -> OperatorBasis:
    """``{G(durt_mub_state(d, k, t)) : t}``."""
    z = np.stack([durt_mub_state(d, k, t).coeffs for t in range(d)])
    return OperatorBasis(
        np.stack([SubspaceOperator(c).matrix() for c in z]), label=f"Z({k})", z_coeffs=z
    )


def subspace_recipe(d: int) -> MuubCollection:
    """The d mutually unbiased unitary bases of the diagonal subspace."""
    d = check_dim(d)
    bases = [subspace_canonical_basis(d)] + [subspace_basis(d, k) for k in range(1, d)]
    return MuubCollection(dim=d, bases=bases)


@dataclass
class Theorem1Witness:
    dim: int
    rows: dict[int, list[bool]] = field(default_factory=dict)
    computational: list[bool] = field(default_factory=list)
    uniform_product: MonoidVector | None = None

    @property
    def surviving(self) -> int:
        """Number of the d + 1 MUBs of C^d that G maps to unitary bases."""
        return int(all(self.computational)) + sum(all(r) for r in self.rows.values())

    def table(self) -> str:
        lines = ["family,unitary_states,verdict"]
        lines.append(f"computational,{sum(self.computational)}/{self.dim},{'unitary' if all(self.computational) else 'non-unitary'}")
        for k, row in self.rows.items():
            lines.append(f"k={k},{sum(row)}/{self.dim},{'unitary' if all(row) else 'non-unitary'}")
        return "\n".join(lines)


def theorem1_witness(d: int, tol: Tolerance | float | None = None) -> Theorem1Witness:
    """Test every MUB state of C^d for mapping to a unitary under G."""
    d = check_dim(d, max_dim=None)
    tol = as_tolerance(tol)
    w = Theorem1Witness(dim=d)
    w.computational = [maps_to_unitary(v, tol) for v in computational_states(d)]
    for k in range(d):
        w.rows[k] = [maps_to_unitary(durt_mub_state(d, k, t), tol) for t in range(d)]
    v0 = durt_mub_state(d, 0, 0)
    w.uniform_product = bullet(v0, dagger_state(v0))
    return w
