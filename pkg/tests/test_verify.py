import math

import numpy as np
import pytest

from muub.errors import BoundViolationError, InvalidArgumentError, NotUnbiasedError
from muub.search import PhaseVector, basis_from_generator, generator_from_phases
from muub.subspace import subspace_recipe
from muub.verify import (
    MuubCollection,
    OperatorBasis,
    canonical_basis,
    check_mutually_unbiased,
    check_orthogonal_unitary_basis,
    same_up_to_phases,
    verify_collection,
)
from muub.weyl import hs_overlap

from conftest import W3, X3, Z3, random_unitary


def eq28_basis(k):
    # Z_m^(k) = (I + w^(2m) Z + w^(m+k) Z^2) / sqrt(3), literal coefficients
    Z2 = Z3 @ Z3
    els = [(np.eye(3) + W3 ** (2 * m) * Z3 + W3 ** (m + k) * Z2) / math.sqrt(3) for m in range(3)]
    return OperatorBasis(np.stack(els), label=f"Z({k})")


def test_canonical_basis_passes():
    cert = check_orthogonal_unitary_basis(canonical_basis(3))
    assert cert.verdict
    assert cert.worst_unitarity_residual < 1e-12


def test_duplicate_element_fails():
    els = np.stack([np.eye(3), X3, X3])
    cert = check_orthogonal_unitary_basis(OperatorBasis(els))
    assert not cert.verdict
    assert cert.worst_orthogonality_residual == pytest.approx(9)
    assert cert.failures[0].kind == "non-orthogonal"


def test_subspace_canonical_passes():
    els = np.stack([np.eye(3), Z3, Z3 @ Z3])
    assert check_orthogonal_unitary_basis(OperatorBasis(els)).verdict


def test_mixed_dimensions_rejected():
    with pytest.raises(InvalidArgumentError):
        OperatorBasis([np.eye(2), np.eye(3)])


def test_unbiased_to_reference_generator_basis():
    pv = PhaseVector(3, 3, [[0, 1, 2], [1, 1, 1], [2, 1, 0]])
    B = basis_from_generator(generator_from_phases(pv), pv)
    assert check_mutually_unbiased(canonical_basis(3), B) == pytest.approx(1)


def test_self_comparison_not_unbiased():
    with pytest.raises(NotUnbiasedError) as info:
        check_mutually_unbiased(canonical_basis(3), canonical_basis(3))
    assert info.value.min_overlap == pytest.approx(0, abs=1e-9)
    assert info.value.max_overlap == pytest.approx(9)


def test_eq28_bases_unbiased_with_c3():
    A, B = eq28_basis(1), eq28_basis(2)
    # brute force oracle over all nine pairs
    brute = [hs_overlap(a, b) for a in A.elements for b in B.elements]
    assert np.allclose(brute, 3)
    assert check_mutually_unbiased(A, B) == pytest.approx(3)


def test_symmetry(reference_collection):
    A, B = reference_collection.bases[2], reference_collection.bases[5]
    assert check_mutually_unbiased(A, B) == pytest.approx(check_mutually_unbiased(B, A), abs=1e-12)


def test_reference_collection_passes(reference_collection):
    cert = verify_collection(reference_collection)
    assert cert.verdict and cert.basis_count == 8
    assert cert.constant_C == pytest.approx(1)
    assert len(cert.pair_constants) == 28


def test_repeated_basis_fails():
    c = MuubCollection(3, [canonical_basis(3), canonical_basis(3)])
    cert = verify_collection(c)
    assert not cert.verdict
    assert any(f.kind == "biased" for f in cert.failures)


def test_subspace_recipe_d5():
    cert = verify_collection(subspace_recipe(5))
    assert cert.verdict and cert.basis_count == 5
    assert cert.constant_C == pytest.approx(5)


def test_bound_violation():
    bases = [canonical_basis(2)] * 4
    with pytest.raises(BoundViolationError):
        verify_collection(MuubCollection(2, bases))


def test_phase_gauge_invariance(reference_collection, rng):
    rephased = []
    for b in reference_collection.bases:
        phases = np.exp(1j * rng.uniform(0, 2 * np.pi, size=len(b)))
        rephased.append(OperatorBasis(b.elements * phases[:, None, None], label=b.label))
    cert = verify_collection(MuubCollection(3, rephased))
    assert cert.verdict and cert.constant_C == pytest.approx(1)
    assert same_up_to_phases(rephased[3], reference_collection.bases[3])
    assert not same_up_to_phases(rephased[3], reference_collection.bases[4])


@pytest.mark.parametrize("d", [2, 3, 5])
def test_counting_identity(d, rng):
    B = canonical_basis(d)
    for _ in range(20):
        U = random_unitary(rng, d)
        assert sum(hs_overlap(U, P) for P in B.elements) == pytest.approx(d * d, abs=1e-9)


def test_single_element_perturbation_detected(reference_collection):
    bases = list(reference_collection.bases)
    els = bases[1].elements.copy()
    els[4, 0, 0] += 1e-3
    bases[1] = OperatorBasis(els, label="perturbed")
    cert = verify_collection(MuubCollection(3, bases, constant_C=1.0))
    assert not cert.verdict
    kinds = {f.kind for f in cert.failures}
    assert "non-unitary" in kinds and "biased" in kinds
    assert any(f.bases == (1, 1) and 4 in f.elements for f in cert.failures)
