"""Reference data: the seven qutrit generators of the published 8-MUUB set.

The table lists phase exponents t (of w = exp(2 pi i/3)) against the words
I, X, X^2, Z, Z^2, XZ, (XZ)^2, XZ^2, (XZ^2)^2. Two of those words are powers
of a product, which differ from X^r Z^s by a phase; :func:`reference_phase_vector`
folds that phase into the exponent.
"""
from __future__ import annotations

from importlib import resources

from .search import PhaseVector, basis_from_generator, generator_from_phases
from .verify import MuubCollection, canonical_basis
from .weyl import weyl_power

# (a, b, k) stands for (X^a Z^b)^k
QUTRIT_WORDS = (
    (0, 0, 0),
    (1, 0, 1),
    (1, 0, 2),
    (0, 1, 1),
    (0, 1, 2),
    (1, 1, 1),
    (1, 1, 2),
    (1, 2, 1),
    (1, 2, 2),
)

QUTRIT_WORD_EXPONENTS = (
    (0, 1, 2, 1, 2, 1, 2, 1, 2),
    (0, 0, 1, 0, 1, 2, 0, 2, 0),
    (0, 0, 1, 0, 2, 0, 2, 2, 2),
    (0, 0, 1, 0, 2, 1, 0, 1, 1),
    (0, 0, 2, 0, 1, 0, 2, 1, 0),
    (0, 0, 2, 0, 1, 1, 0, 0, 2),
    (0, 0, 2, 0, 2, 2, 2, 0, 1),
)

BUNDLED = {"paper_d3": "paper_d3.json"}


def reference_phase_vector(index: int) -> PhaseVector:
    """Generator ``index`` (1..7) as exponents over X^r Z^s, d = L = 3."""
    d = 3
    t = QUTRIT_WORD_EXPONENTS[index - 1]
    g = [[0] * d for _ in range(d)]
    for (a, b, k), e in zip(QUTRIT_WORDS, t):
        phase, r, s = weyl_power(a, b, k, d)
        g[r][s] = (e + phase) % d
    return PhaseVector(d, d, g)


def reference_phase_vectors() -> list[PhaseVector]:
    return [reference_phase_vector(i) for i in range(1, len(QUTRIT_WORD_EXPONENTS) + 1)]


def reference_d3_collection() -> MuubCollection:
    bases = [canonical_basis(3)]
    for i, pv in enumerate(reference_phase_vectors(), start=1):
        bases.append(basis_from_generator(generator_from_phases(pv), pv, label=f"U{i}"))
    return MuubCollection(dim=3, bases=bases, constant_C=1.0, root_order=3)


def bundled_text(name: str) -> str:
    if name not in BUNDLED:
        raise KeyError(f"unknown bundled collection {name!r}; available: {', '.join(BUNDLED)}")
    return resources.files("muub").joinpath("data", BUNDLED[name]).read_text()
