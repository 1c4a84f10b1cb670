import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from convexroof.spaces import (
    permute_parties_mat,
    random_density,
    random_haar_ket,
    random_hermitian,
    space,
)
from convexroof.symmetric import (
    antisym_projector_pair,
    antisymmetrizer,
    build_antisym_isometry,
    build_sym_isometry,
    compress,
    embed,
    flip_operator,
    sym_projector,
)


def elementary_symmetric(vals, k):
    # e_k from the coefficient recursion, independent of any copy machinery
    e = np.zeros(k + 1)
    e[0] = 1.0
    for v in vals:
        for j in range(min(k, len(vals)), 0, -1):
            e[j] += v * e[j - 1]
    return e[k]


def test_flip_basics():
    f = flip_operator(2)
    assert abs(np.trace(f.entries) - 2.0) < 1e-14
    v01 = np.zeros(4)
    v01[1] = 1.0
    v10 = np.zeros(4)
    v10[2] = 1.0
    assert np.allclose(f.entries @ v01, v10)
    assert np.allclose(f.entries @ f.entries, np.eye(4))


def test_flip_purity_identity(rng):
    for d in (2, 3):
        rho = random_density(space(d), d, rng)
        f = flip_operator(d)
        val = np.trace(f.entries @ np.kron(rho.entries, rho.entries)).real
        assert abs(val - np.trace(rho.entries @ rho.entries).real) < 1e-12


def test_antisym_pair_spectrum():
    a = antisym_projector_pair(2)
    w = np.linalg.eigvalsh(a.entries)
    assert np.allclose(np.sort(w), [0.0, 0.0, 0.0, 2.0], atol=1e-12)


def test_antisym_pair_two_copy_linear_entropy(rng):
    # tr[(1-F)_AA' x 1_BB' (psi x psi)] = 1 - tr(rho_A^2) on random kets
    da, db = 2, 3
    a_op = np.kron(antisym_projector_pair(da).entries, np.eye(db * db))
    # reorder legs (A, A', B, B') -> (A, B, A', B')
    m = permute_parties_mat(a_op, (da, da, db, db), [0, 2, 1, 3])
    for _ in range(5):
        psi = random_haar_ket(space(da, db), rng)
        rho = psi.density().entries
        two = np.kron(rho, rho)
        red = rho.reshape(da, db, da, db)
        rho_a = np.einsum("abcb->ac", red)
        val = np.trace(m @ two).real
        assert abs(val - (1.0 - np.trace(rho_a @ rho_a).real)) < 1e-12


def test_antisym_pair_zero_on_products(rng):
    da, db = 2, 2
    a_op = np.kron(antisym_projector_pair(da).entries, np.eye(db * db))
    m = permute_parties_mat(a_op, (da, da, db, db), [0, 2, 1, 3])
    alpha = random_haar_ket(space(da), rng).amplitudes
    beta = random_haar_ket(space(db), rng).amplitudes
    psi = np.kron(alpha, beta)
    two = np.outer(np.kron(psi, psi), np.kron(psi, psi).conj())
    assert abs(np.trace(m @ two).real) < 1e-12


def test_antisymmetrizer_rank():
    p = antisymmetrizer(3, 3)
    w = np.linalg.eigvalsh(p.entries)
    assert int(np.round(w.sum())) == 1
    assert np.allclose(p.entries @ p.entries, p.entries, atol=1e-12)
    z = antisymmetrizer(2, 3)
    assert np.abs(z.entries).max() == 0.0


def test_antisymmetrizer_elementary_symmetric(rng):
    for d, k in [(3, 2), (3, 3), (4, 2)]:
        rho = random_density(space(d), d, rng)
        p = antisymmetrizer(d, k)
        copies = rho.entries
        for _ in range(k - 1):
            copies = np.kron(copies, rho.entries)
        val = np.trace(p.entries @ copies).real
        lam = np.linalg.eigvalsh(rho.entries)
        assert abs(val - elementary_symmetric(lam, k)) < 1e-12


def test_sym_isometry_dimensions():
    assert build_sym_isometry(2, 2).sym_dim == 3
    assert build_sym_isometry(9, 2).sym_dim == 45
    assert build_sym_isometry(8, 4).sym_dim == 330
    with pytest.raises(ValueError):
        build_sym_isometry(50, 4)


def test_sym_isometry_invariants():
    for d, n in [(2, 2), (3, 2), (2, 3)]:
        b = build_sym_isometry(d, n)
        v = b.isometry
        assert np.abs(v.T @ v - np.eye(b.sym_dim)).max() < 1e-12
        pi = sym_projector(b)
        assert np.abs(pi @ pi - pi).max() < 1e-12
        assert abs(np.trace(pi) - math.comb(d + n - 1, n)) < 1e-10
        # every adjacent copy swap fixes the projector
        for i in range(n - 1):
            perm = list(range(n))
            perm[i], perm[i + 1] = perm[i + 1], perm[i]
            swapped = permute_parties_mat(pi, (d,) * n, perm)
            assert np.abs(swapped - pi).max() < 1e-12


def test_compress_embed_roundtrip(rng):
    b = build_sym_isometry(3, 2)
    y = random_hermitian(space(b.sym_dim), rng).entries
    back = compress(embed(y, b), b)
    assert np.abs(back - y).max() < 1e-12
    pi = sym_projector(b)
    assert np.abs(embed(np.eye(b.sym_dim), b) - pi).max() < 1e-12
    assert np.abs(compress(pi, b) - np.eye(b.sym_dim)).max() < 1e-12
    emb = embed(y, b)
    assert np.abs(emb - pi @ emb @ pi).max() < 1e-12


def test_two_copy_ket_is_symmetric(rng):
    for d in (2, 4):
        b = build_sym_isometry(d, 2)
        pi = sym_projector(b)
        psi = random_haar_ket(space(d), rng).amplitudes
        two = np.kron(psi, psi)
        assert np.linalg.norm(pi @ two - two) < 1e-12


def test_objective_sides_agree_on_sym(rng):
    # compress of A_AA' x 1_BB' equals compress of 1_AA' x A_BB'
    da, db = 2, 3
    d = da * db
    b = build_sym_isometry(d, 2)
    left = permute_parties_mat(
        np.kron(antisym_projector_pair(da).entries, np.eye(db * db)),
        (da, da, db, db), [0, 2, 1, 3])
    right = permute_parties_mat(
        np.kron(np.eye(da * da), antisym_projector_pair(db).entries),
        (da, da, db, db), [0, 2, 1, 3])
    assert np.abs(compress(left, b) - compress(right, b)).max() < 1e-12


def test_antisym_isometry_splits_swap_invariants(rng):
    d = 3
    vs = build_sym_isometry(d, 2).isometry
    va = build_antisym_isometry(d)
    assert va.shape == (9, 3)
    assert np.abs(va.T @ va - np.eye(3)).max() < 1e-12
    assert np.abs(vs.T @ va).max() < 1e-12
    f = flip_operator(d).entries
    assert np.abs(f @ va + va).max() < 1e-12


@settings(max_examples=10, deadline=None)
@given(st.integers(2, 3), st.integers(0, 10**6))
def test_sym_support_of_two_copy_mixtures(d, seed):
    rng = np.random.default_rng(seed)
    b = build_sym_isometry(d, 2)
    pi = sym_projector(b)
    mix = np.zeros((d * d, d * d), dtype=complex)
    for _ in range(3):
        psi = random_haar_ket(space(d), rng).amplitudes
        two = np.kron(psi, psi)
        mix += np.outer(two, two.conj()) / 3.0
    assert np.abs(pi @ mix @ pi - mix).max() < 1e-12
