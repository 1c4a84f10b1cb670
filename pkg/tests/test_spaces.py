import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from convexroof.spaces import (
    DensityOp,
    HermitianOp,
    Ket,
    ProductSpace,
    eig_hermitian,
    identity,
    kron,
    matrix_from_json,
    matrix_to_json,
    partial_trace,
    partial_transpose,
    permute_parties,
    random_density,
    random_haar_ket,
    random_hermitian,
    space,
)

from convexroof.oracles import SIGMA_Z, bell_state


def test_product_space_invariants():
    s = space(2, 3, 4)
    assert s.total_dim == 24
    assert s.n_parties == 3
    with pytest.raises(ValueError):
        ProductSpace(())
    with pytest.raises(ValueError):
        ProductSpace((2, 0))


def test_kron_identity_case():
    one2 = identity(space(2))
    out = kron(one2, one2)
    assert out.space.party_dims == (2, 2)
    assert np.allclose(out.entries, np.eye(4))


def test_kron_sigma_z_spectrum():
    sz = HermitianOp(space(2), SIGMA_Z)
    out = kron(sz, sz)
    w = np.linalg.eigvalsh(out.entries)
    assert np.allclose(np.sort(w), [-1.0, -1.0, 1.0, 1.0])


def test_kron_trace_multiplicative(rng):
    for _ in range(20):
        a = random_hermitian(space(3), rng)
        b = random_hermitian(space(2), rng)
        lhs = kron(a, b).trace()
        assert abs(lhs - a.trace() * b.trace()) < 1e-10


def test_partial_trace_bell_marginal():
    rho = bell_state(0).density()
    red = partial_trace(rho, {1})
    assert red.space.party_dims == (2,)
    assert np.allclose(red.entries, np.eye(2) / 2, atol=1e-12)


def test_partial_trace_product(rng):
    ra = random_density(space(2), 2, rng)
    rb = random_density(space(3), 3, rng)
    prod = kron(ra, rb)
    back = partial_trace(prod, {1})
    assert np.allclose(back.entries, ra.entries, atol=1e-12)


def test_partial_trace_preserves_trace(rng):
    x = random_hermitian(space(2, 3, 2), rng)
    red = partial_trace(x, {1})
    assert abs(red.trace() - x.trace()) < 1e-10
    with pytest.raises(ValueError):
        partial_trace(x, {5})


def test_partial_transpose_involution(rng):
    x = random_hermitian(space(2, 3), rng)
    twice = partial_transpose(partial_transpose(x, {0}), {0})
    assert np.allclose(twice.entries, x.entries, atol=1e-14)


def test_partial_transpose_bell_min_eig():
    rho = bell_state(0).density()
    pt = partial_transpose(rho, {0})
    w = np.linalg.eigvalsh(pt.entries)
    assert abs(w[0] + 0.5) < 1e-12


def test_partial_transpose_product_stays_psd(rng):
    ra = random_density(space(2), 2, rng)
    rb = random_density(space(2), 1, rng)
    prod = kron(ra, rb)
    pt = partial_transpose(prod, {0})
    assert np.linalg.eigvalsh(pt.entries)[0] > -1e-12


def test_partial_transpose_commutes_with_partial_trace(rng):
    x = random_hermitian(space(2, 2, 3), rng)
    a = partial_transpose(partial_trace(x, {2}), {0})
    b = partial_trace(partial_transpose(x, {0}), {2})
    assert np.allclose(a.entries, b.entries, atol=1e-12)


def test_eig_hermitian_basics(rng):
    w, _ = eig_hermitian(HermitianOp(space(2), SIGMA_Z))
    assert np.allclose(w, [-1.0, 1.0])
    w, _ = eig_hermitian(identity(space(5)))
    assert np.allclose(w, np.ones(5))
    x = random_hermitian(space(3, 3), rng)
    w, v = eig_hermitian(x)
    recon = (v * w) @ v.conj().T
    assert np.abs(recon - x.entries).max() < 1e-10
    assert abs(w.sum() - x.trace()) < 1e-10 * max(1.0, abs(x.trace()))


def test_random_states(rng):
    psi = random_haar_ket(space(2, 2), rng)
    rho = psi.density()
    assert abs(np.trace(rho.entries @ rho.entries).real - 1.0) < 1e-10
    r = random_density(space(3), 2, rng)
    lam = np.linalg.eigvalsh(r.entries)
    assert (lam > 1e-10).sum() == 2
    with pytest.raises(ValueError):
        random_density(space(2), 5, rng)


def test_random_ket_unitary_invariance(rng):
    acc = np.zeros((2, 2), dtype=complex)
    for _ in range(10000):
        k = random_haar_ket(space(2), rng)
        acc += np.outer(k.amplitudes, k.amplitudes.conj())
    acc /= 10000
    assert np.abs(acc - np.eye(2) / 2).max() < 0.02


def test_partial_trace_of_kron_recovers_factors(rng):
    a = random_hermitian(space(2), rng)
    b = random_hermitian(space(3), rng)
    prod = kron(a, b)
    ra = partial_trace(prod, {1})
    assert np.abs(ra.entries - a.entries * b.trace()).max() < 1e-10


def test_permute_parties(rng):
    a = random_hermitian(space(2), rng)
    b = random_hermitian(space(3), rng)
    ab = kron(a, b)
    ba = permute_parties(ab, [1, 0])
    assert ba.space.party_dims == (3, 2)
    assert np.allclose(ba.entries, np.kron(b.entries, a.entries), atol=1e-14)


def test_density_invariants_enforced():
    with pytest.raises(ValueError):
        DensityOp(space(2), np.diag([2.0, 0.0]))
    with pytest.raises(ValueError):
        DensityOp(space(2), np.diag([1.5, -0.5]))
    with pytest.raises(ValueError):
        Ket(space(2), np.array([1.0, 1.0]))
    with pytest.raises(ValueError):
        HermitianOp(space(2), np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_matrix_json_roundtrip(rng):
    x = random_hermitian(space(2, 3), rng)
    data = json.loads(json.dumps(matrix_to_json(x)))
    y = matrix_from_json(data)
    assert y.space.party_dims == (2, 3)
    assert np.abs(y.entries - x.entries).max() < 1e-14


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 4), st.integers(2, 3), st.integers(0, 10**6))
def test_partial_ops_properties(da, db, seed):
    rng = np.random.default_rng(seed)
    x = random_hermitian(space(da, db), rng)
    # trace preservation under partial trace
    red = partial_trace(x, {0})
    assert abs(red.trace() - x.trace()) < 1e-9
    # partial transpose preserves hermiticity and trace
    pt = partial_transpose(x, {1})
    assert abs(pt.trace() - x.trace()) < 1e-9
    assert np.abs(pt.entries - pt.entries.conj().T).max() < 1e-12
