"""Phase-exponent search for bases unbiased to the Weyl basis.

A candidate generator is ``Y = (1/d) sum_{r,s} w_L^g[r,s] X^r Z^s``. Every
coefficient has modulus 1/d, so any *unitary* Y is automatically unbiased
(C = 1) to ``{X^r Z^s}``, and ``{Y X^a Z^b}`` is then a full orthogonal
unitary basis. The search keeps the unitary candidates and greedily grows a
pairwise unbiased collection from them.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DegenerateConstantError,
    InvalidArgumentError,
    NotUnbiasedError,
    SearchSpaceTooLargeError,
)
from .verify import (
    MuubCollection,
    OperatorBasis,
    canonical_basis,
    check_mutually_unbiased,
    max_full_space_bases,
    same_up_to_phases,
)
from .weyl import (
    Tolerance,
    as_tolerance,
    check_dim,
    from_weyl_coefficients,
    roots_table,
    unitarity_residual,
    weyl_basis,
)

DEFAULT_MAX_NODES = 2_000_000


def default_root_order(d: int) -> int:
    # d-th roots admit no unitary generator at d = 2; 4th roots do.
    return 2 * d if d == 2 else d


@dataclass(frozen=True, eq=False)
class PhaseVector:
    """Exponents ``g[r, s]`` in Z_L of a candidate generator, gauge-fixed to g[0, 0] = 0."""

    dim: int
    root_order: int
    g: np.ndarray

    def __post_init__(self):
        d, L = self.dim, self.root_order
        g = np.asarray(self.g, dtype=np.int64)
        if g.shape != (d, d):
            raise InvalidArgumentError(f"phase table must have shape ({d}, {d}), got {g.shape}")
        if g.min() < 0 or g.max() >= L:
            raise InvalidArgumentError(f"phase exponents must lie in Z_{L}")
        if g[0, 0] != 0:
            raise InvalidArgumentError("phase exponent of the identity term must be 0")
        g.setflags(write=False)
        object.__setattr__(self, "g", g)

    @classmethod
    def from_flat(cls, dim: int, root_order: int, flat) -> "PhaseVector":
        """Build from the d^2 - 1 exponents following g[0, 0], in (r, s) order."""
        return cls(dim, root_order, np.concatenate([[0], np.asarray(flat, dtype=np.int64)]).reshape(dim, dim))

    @property
    def flat(self) -> tuple[int, ...]:
        return tuple(int(x) for x in self.g.ravel()[1:])

    def coefficients(self) -> np.ndarray:
        return roots_table(self.root_order)[self.g] / self.dim

    def terms(self) -> tuple[tuple[int, int, int], ...]:
        d = self.dim
        return tuple((r, s, int(self.g[r, s])) for r in range(d) for s in range(d))

    def __eq__(self, other):
        if not isinstance(other, PhaseVector):
            return NotImplemented
        return (self.dim, self.root_order, self.flat) == (other.dim, other.root_order, other.flat)

    def __hash__(self):
        return hash((self.dim, self.root_order, self.flat))

    def __repr__(self):
        return f"PhaseVector(dim={self.dim}, root_order={self.root_order}, g={self.flat})"


@dataclass
class SearchConfig:
    dim: int
    root_order: int | None = None
    max_generators: int | None = None
    max_nodes: int = DEFAULT_MAX_NODES
    tol: Tolerance = field(default_factory=Tolerance.from_env)
    dedup: bool = True

    def __post_init__(self):
        self.dim = check_dim(self.dim)
        if self.root_order is None:
            self.root_order = default_root_order(self.dim)
        if self.root_order < 2:
            raise InvalidArgumentError(f"root order must be at least 2, got {self.root_order}")
        if self.max_generators is not None and self.max_generators < 0:
            raise InvalidArgumentError("max_generators must be non-negative")
        self.tol = as_tolerance(self.tol)

    @property
    def space_size(self) -> int:
        return self.root_order ** (self.dim**2 - 1)


def generator_from_phases(pv: PhaseVector) -> np.ndarray:
    """Materialize ``(1/d) sum w_L^g X^r Z^s``."""
    return from_weyl_coefficients(pv.coefficients())


def _element_terms(pv: PhaseVector, a: int, b: int):
    # Y X^a Z^b: each term X^r Z^s X^a Z^b = w_d^(s a) X^(r+a) Z^(s+b)
    d, L = pv.dim, pv.root_order
    step = L // d
    terms = [((r + a) % d, (s + b) % d, (g + step * s * a) % L) for r, s, g in pv.terms()]
    return tuple(sorted(terms))


def basis_from_generator(Y, phases: PhaseVector | None = None, tol: Tolerance | float | None = None, label: str = "") -> OperatorBasis:
    """The basis ``{Y X^a Z^b}``, lexicographic in (a, b).

    When ``phases`` is given and its root order is a multiple of d, each
    element also carries its exact exponent terms.
    """
    Y = np.asarray(Y, dtype=complex)
    tol = as_tolerance(tol)
    if unitarity_residual(Y) > tol.eps:
        raise InvalidArgumentError("generator is not unitary")
    d = check_dim(Y.shape[0])
    elements = np.einsum("ij,njk->nik", Y, weyl_basis(d))
    terms = None
    if phases is not None and phases.root_order % d == 0:
        terms = tuple(_element_terms(phases, a, b) for a in range(d) for b in range(d))
    return OperatorBasis(elements, label=label, weyl_exponents=terms)


def _block_table(d: int, L: int, first: bool):
    """All exponent rows for one X-power block and the subdiagonal each yields.

    Row r of the coefficient table fixes the r-th cyclic subdiagonal of Y:
    ``Y[j + r, j] = (1/d) sum_s w_L^g[r, s] w_d^(s j)``.
    """
    n_free = d - 1 if first else d
    exps = np.array(list(itertools.product(range(L), repeat=n_free)), dtype=np.int64).reshape(-1, n_free)
    if first:
        exps = np.hstack([np.zeros((len(exps), 1), dtype=np.int64), exps])
    diag = np.fft.ifft(roots_table(L)[exps], axis=-1)
    return exps, np.abs(diag) ** 2


def _pruned(cfg: SearchConfig):
    """Depth-first over blocks, pruning on partial row/column norms of Y.

    Each column and each row of a unitary has unit norm, and every block adds
    a nonnegative amount to both, so a partial sum above 1 is infeasible.
    """
    d, L, eps = cfg.dim, cfg.root_order, cfg.tol.eps
    tables = [_block_table(d, L, r == 0) for r in range(d)]
    nodes = 0
    found: list[PhaseVector] = []
    chosen = [None] * d
    slack = 1.0 + 1e3 * eps

    def visit(r, colnorm, rownorm):
        nonlocal nodes
        exps, mass = tables[r]
        nodes += len(exps)
        if nodes > cfg.max_nodes:
            raise SearchSpaceTooLargeError(
                f"pruned search visited more than {cfg.max_nodes} nodes (d={d}, L={L})"
            )
        cols = colnorm + mass
        rows = rownorm + np.roll(mass, r, axis=1)
        ok = np.all(cols <= slack, axis=1) & np.all(rows <= slack, axis=1)
        if r == d - 1:
            ok &= np.all(cols >= 2.0 - slack, axis=1)
        for idx in np.flatnonzero(ok):
            chosen[r] = exps[idx]
            if r < d - 1:
                if visit(r + 1, cols[idx], rows[idx]):
                    return True
                continue
            pv = PhaseVector(d, L, np.stack(chosen))
            if unitarity_residual(generator_from_phases(pv)) <= eps:
                found.append(pv)
                if cfg.max_generators is not None and len(found) >= cfg.max_generators:
                    return True
        return False

    visit(0, np.zeros(d), np.zeros(d))
    return found


def _exhaustive(cfg: SearchConfig, chunk: int = 1 << 15):
    d, L, eps = cfg.dim, cfg.root_order, cfg.tol.eps
    total = cfg.space_size
    if total > cfg.max_nodes:
        raise SearchSpaceTooLargeError(f"{total} candidates exceed the cap of {cfg.max_nodes}")
    n_free = d * d - 1
    powers = L ** np.arange(n_free - 1, -1, -1, dtype=np.int64)
    roots = roots_table(L)
    eye = np.eye(d)
    found: list[PhaseVector] = []
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        flat = (idx[:, None] // powers) % L
        g = np.hstack([np.zeros((len(idx), 1), dtype=np.int64), flat]).reshape(-1, d, d)
        Y = from_weyl_coefficients(roots[g] / d)
        res = np.max(np.abs(np.einsum("nji,njk->nik", np.conj(Y), Y) - eye), axis=(1, 2))
        for k in np.flatnonzero(res <= eps):
            found.append(PhaseVector(d, L, g[k]))
            if cfg.max_generators is not None and len(found) >= cfg.max_generators:
                return found
    return found


def enumerate_unitary_generators(cfg: SearchConfig, method: str = "pruned") -> list[PhaseVector]:
    """All phase vectors (lexicographic in g) whose generator is unitary.

    ``method`` is ``"pruned"`` (default) or ``"exhaustive"``; both return the
    same list. The node cap applies to visited block assignments for the
    pruned walk and to the raw candidate count for exhaustion.
    """
    if cfg.max_generators == 0:
        return []
    if method == "pruned":
        return _pruned(cfg)
    if method == "exhaustive":
        return _exhaustive(cfg)
    raise InvalidArgumentError(f"unknown search method {method!r}")


def _unbiased_c1(A: OperatorBasis, B: OperatorBasis, tol: Tolerance) -> bool:
    try:
        C = check_mutually_unbiased(A, B, tol)
    except (NotUnbiasedError, DegenerateConstantError):
        return False
    return abs(C - 1.0) <= tol.eps * A.dim**2


def assemble_collection(generators, cfg: SearchConfig) -> MuubCollection:
    """Greedily grow a C = 1 collection from the canonical basis, in input order."""
    d, tol = cfg.dim, cfg.tol
    accepted = [canonical_basis(d)]
    limit = max_full_space_bases(d)
    for pv in generators:
        if len(accepted) >= limit:
            break
        Y = generator_from_phases(pv)
        if unitarity_residual(Y) > tol.eps:
            raise InvalidArgumentError(f"generator {pv!r} is not unitary")
        candidate = basis_from_generator(Y, pv, tol, label=f"U{len(accepted)} g={''.join(map(str, pv.flat))}")
        if cfg.dedup and any(same_up_to_phases(candidate, b, tol) for b in accepted):
            continue
        if all(_unbiased_c1(b, candidate, tol) for b in accepted):
            accepted.append(candidate)
    return MuubCollection(
        dim=d,
        bases=accepted,
        constant_C=1.0 if len(accepted) > 1 else None,
        root_order=cfg.root_order,
    )


def search(cfg: SearchConfig, method: str = "pruned") -> MuubCollection:
    return assemble_collection(enumerate_unitary_generators(cfg, method), cfg)
