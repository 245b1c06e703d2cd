import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from muub.errors import InvalidArgumentError, UnsupportedDimensionError
from muub.search import basis_from_generator
from muub.subspace import (
    MonoidVector,
    bullet,
    computational_states,
    dagger_state,
    durt_exponents,
    durt_mub_state,
    iso_G,
    iso_G_inv,
    maps_to_unitary,
    subspace_recipe,
    theorem1_witness,
)
from muub.verify import MuubCollection, OperatorBasis, verify_collection
from muub.weyl import is_unitary

from conftest import W3

ket = MonoidVector.ket


def vec(*c):
    return MonoidVector(np.array(c, dtype=complex))


def test_bullet_examples(rng):
    psi = MonoidVector(rng.normal(size=5) + 1j * rng.normal(size=5))
    assert bullet(ket(5, 0), psi).allclose(psi)
    assert bullet(ket(3, 1), ket(3, 2)).allclose(ket(3, 0))
    assert bullet(vec(1, 1, 0), vec(1, 1, 0)).allclose(vec(1, 2, 1))
    with pytest.raises(InvalidArgumentError):
        bullet(ket(2, 0), ket(3, 0))


def test_dagger_examples():
    assert dagger_state(ket(3, 0)).allclose(ket(3, 0))
    assert dagger_state(ket(3, 1)).allclose(ket(3, 2))
    a, b = 1 + 2j, -0.5j
    assert dagger_state(vec(a, b, 0)).allclose(vec(np.conj(a), 0, np.conj(b)))


def test_maps_to_unitary_examples():
    u = durt_mub_state(3, 0, 0)
    assert not maps_to_unitary(u)
    assert bullet(u, dagger_state(u)).allclose(vec(1, 1, 1))
    assert maps_to_unitary(ket(3, 1))
    v = durt_mub_state(5, 2, 3)
    assert maps_to_unitary(v)
    assert is_unitary(iso_G(v).matrix())


def test_iso_G_examples():
    Z = np.diag([1, W3, W3**2])
    assert np.allclose(iso_G(ket(3, 0)).matrix(), np.eye(3))
    assert np.allclose(iso_G(ket(3, 1)).matrix(), Z)
    s = 1 / math.sqrt(2)
    assert np.allclose(iso_G(vec(s, s, 0)).matrix(), (np.eye(3) + Z) * s)
    v = vec(1, 2j, 3)
    assert iso_G_inv(iso_G(v)).allclose(v)


@pytest.mark.parametrize("m", range(3))
def test_durt_d3_matches_eq28(m):
    # Z_m^(1) = (I + w^(2m) Z + w^(m+1) Z^2)/sqrt3 ; Z_n^(2) = (I + w^(2n) Z + w^(n+2) Z^2)/sqrt3
    assert durt_exponents(3, 1, m) == [0, (2 * m) % 3, (m + 1) % 3]
    assert durt_exponents(3, 2, m) == [0, (2 * m) % 3, (m + 2) % 3]
    expected = np.array([1, W3 ** (2 * m), W3 ** (m + 1)]) / math.sqrt(3)
    assert durt_mub_state(3, 1, m).allclose(MonoidVector(expected), 1e-12)


def test_durt_uniform_state():
    assert durt_mub_state(3, 0, 0).allclose(MonoidVector(np.ones(3) / math.sqrt(3)))


def test_durt_guards():
    with pytest.raises(InvalidArgumentError):
        durt_mub_state(3, 3, 0)
    with pytest.raises(UnsupportedDimensionError):
        durt_mub_state(4, 0, 0)


@pytest.mark.parametrize("d", [2, 3, 5, 7, 11, 13])
def test_mub_consistency(d):
    families = [np.stack([v.coeffs for v in computational_states(d)])]
    families += [np.stack([durt_mub_state(d, k, t).coeffs for t in range(d)]) for k in range(d)]
    for F in families:
        assert np.allclose(F.conj() @ F.T, np.eye(d), atol=1e-12)
    for i in range(len(families)):
        for j in range(i + 1, len(families)):
            assert np.allclose(np.abs(families[i].conj() @ families[j].T) ** 2, 1 / d, atol=1e-12)


@pytest.mark.parametrize("d", [2, 3, 5, 7, 11, 13])
def test_recipe_validity(d):
    coll = subspace_recipe(d)
    cert = verify_collection(coll)
    assert cert.verdict and cert.basis_count == d
    assert cert.constant_C == pytest.approx(d)


def test_recipe_cannot_absorb_k0_family():
    d = 5
    k0 = np.stack([iso_G(durt_mub_state(d, 0, t)).matrix() for t in range(d)])
    extended = MuubCollection(d, list(subspace_recipe(d).bases) + [OperatorBasis(k0)])
    cert = verify_collection(extended)
    assert not cert.verdict
    assert any(f.kind == "non-unitary" and f.bases == (d, d) for f in cert.failures)
    with pytest.raises(InvalidArgumentError):
        basis_from_generator(k0[0])


@pytest.mark.parametrize("d,surviving", [(2, 2), (3, 3), (7, 7)])
def test_theorem1_witness(d, surviving):
    w = theorem1_witness(d)
    assert w.surviving == surviving
    assert not any(w.rows[0])
    assert all(all(w.rows[k]) for k in range(1, d))
    assert all(w.computational)
    assert w.uniform_product.allclose(MonoidVector(np.ones(d)))


def unitary_state(rng, d):
    """A state whose G-image is a random diagonal unitary."""
    diag = np.exp(1j * rng.uniform(0, 2 * np.pi, size=d))
    return MonoidVector(np.fft.fft(diag) / d)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([2, 3, 5, 7, 11]), st.integers(0, 2**32 - 1))
def test_monoid_laws(d, seed):
    rng = np.random.default_rng(seed)
    u, v, w = (MonoidVector(rng.normal(size=d) + 1j * rng.normal(size=d)) for _ in range(3))
    assert bullet(bullet(u, v), w).allclose(bullet(u, bullet(v, w)), 1e-9)
    assert bullet(u, v).allclose(bullet(v, u), 1e-9)
    e = ket(d, 0)
    assert bullet(e, u).allclose(u) and bullet(u, e).allclose(u)
    assert dagger_state(dagger_state(u)).allclose(u)
    Gu, Gv = iso_G(u).matrix(), iso_G(v).matrix()
    assert np.allclose(iso_G(bullet(u, v)).matrix(), Gu @ Gv, atol=1e-9)
    assert np.allclose(iso_G(dagger_state(u)).matrix(), Gu.conj().T, atol=1e-9)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([2, 3, 5, 7]), st.integers(0, 2**32 - 1), st.booleans())
def test_criterion_matches_matrix_unitarity(d, seed, unitary):
    rng = np.random.default_rng(seed)
    if unitary:
        v = unitary_state(rng, d)
    else:
        c = rng.normal(size=d) + 1j * rng.normal(size=d)
        v = MonoidVector(c / np.linalg.norm(c))
    assert maps_to_unitary(v) == is_unitary(iso_G(v).matrix())
    assert maps_to_unitary(v) == unitary
