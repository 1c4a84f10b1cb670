"""Symmetric-subspace machinery for multi-copy optimization variables.

Flip and antisymmetrizer operators, the isometry onto Sym^N(C^d) in the
occupation-number basis, and compression/embedding of operators between
full-space and symmetric coordinates.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .spaces import HermitianOp, ProductSpace

SYM_DIM_CAP = 5000


def flip_operator(d: int) -> HermitianOp:
    """Two-copy swap operator F|i>|j> = |j>|i>."""
    if d < 1:
        raise ValueError(f"dimension must be positive, got {d}")
    f = np.zeros((d * d, d * d))
    for i in range(d):
        for j in range(d):
            f[j * d + i, i * d + j] = 1.0
    return HermitianOp(ProductSpace((d, d)), f)


def antisym_projector_pair(d: int) -> HermitianOp:
    """The two-copy operator 1 - F (twice the antisymmetric projector).

    Its expectation value on psi x psi equals twice the purity deficit of
    either marginal, which is the pure-state linear entropy realized on
    two copies.
    """
    f = flip_operator(d)
    return HermitianOp(f.space, np.eye(d * d) - f.entries)


def antisymmetrizer(d: int, k: int) -> HermitianOp:
    """Orthogonal projector onto the fully antisymmetric subspace of k copies.

    Rank C(d, k); the zero operator when k > d.  Its expectation value on
    rho^(x k) is the k-th elementary symmetric polynomial of the spectrum.
    """
    if d < 1 or k < 1:
        raise ValueError(f"invalid dimensions d={d}, k={k}")
    dim = d**k
    proj = np.zeros((dim, dim))
    if k > d:
        return HermitianOp(ProductSpace((d,) * k), proj)
    # sum of sign(sigma) P_sigma / k!, built row by row on basis products
    strides = [d ** (k - 1 - i) for i in range(k)]
    for idx in itertools.product(range(d), repeat=k):
        col = sum(i * s for i, s in zip(idx, strides))
        for perm in itertools.permutations(range(k)):
            sign = _perm_sign(perm)
            row = sum(idx[perm[i]] * strides[i] for i in range(k))
            proj[row, col] += sign
    proj /= math.factorial(k)
    return HermitianOp(ProductSpace((d,) * k), proj)


def _perm_sign(perm: tuple[int, ...]) -> float:
    sign = 1.0
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, clen = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            clen += 1
        if clen % 2 == 0:
            sign = -sign
    return sign


@dataclass(frozen=True)
class SymBasis:
    """Isometry V from Sym^N(C^d) to (C^d)^N in the occupation basis.

    Columns are normalized symmetrized product vectors indexed by
    multisets (lexicographic combinations_with_replacement order), so
    serialized programs are reproducible.
    """

    local_dim: int
    copies: int
    sym_dim: int
    isometry: np.ndarray
    occupations: tuple[tuple[int, ...], ...]

    @property
    def full_dim(self) -> int:
        return self.local_dim**self.copies


def build_sym_isometry(d: int, n: int) -> SymBasis:
    """Symmetric-subspace isometry for n copies of a d-dimensional system."""
    if d < 1 or n < 1:
        raise ValueError(f"invalid d={d}, n={n}")
    sym_dim = math.comb(d + n - 1, n)
    if sym_dim > SYM_DIM_CAP:
        raise ValueError(f"symmetric dimension {sym_dim} exceeds cap {SYM_DIM_CAP}")
    dim = d**n
    strides = [d ** (n - 1 - i) for i in range(n)]
    v = np.zeros((dim, sym_dim))
    combos = list(itertools.combinations_with_replacement(range(d), n))
    for col, combo in enumerate(combos):
        # distinct arrangements of the multiset, each with weight 1/sqrt(count)
        arrangements = set(itertools.permutations(combo))
        w = 1.0 / math.sqrt(len(arrangements))
        for arr in arrangements:
            row = sum(i * s for i, s in zip(arr, strides))
            v[row, col] = w
    return SymBasis(d, n, sym_dim, v, tuple(combos))


def sym_projector(basis: SymBasis) -> np.ndarray:
    return basis.isometry @ basis.isometry.T


def compress(x: np.ndarray, basis: SymBasis) -> np.ndarray:
    """V^dag X V: full-space operator to symmetric coordinates."""
    if x.shape[0] != basis.full_dim:
        raise ValueError(f"operator dimension {x.shape[0]} != {basis.full_dim}")
    return basis.isometry.T @ x @ basis.isometry


def embed(y: np.ndarray, basis: SymBasis) -> np.ndarray:
    """V Y V^dag: symmetric-coordinate operator embedded in the full space."""
    if y.shape[0] != basis.sym_dim:
        raise ValueError(f"operator dimension {y.shape[0]} != {basis.sym_dim}")
    return basis.isometry @ y @ basis.isometry.T


def build_antisym_isometry(d: int) -> np.ndarray:
    """Two-copy antisymmetric-subspace isometry (d^2 x C(d,2)).

    Used to split the partial transpose of a real swap-invariant operator
    into its symmetric and antisymmetric blocks.
    """
    cols = []
    for i in range(d):
        for j in range(i + 1, d):
            v = np.zeros(d * d)
            v[i * d + j] = 1.0 / math.sqrt(2.0)
            v[j * d + i] = -1.0 / math.sqrt(2.0)
            cols.append(v)
    if not cols:
        return np.zeros((d * d, 0))
    return np.stack(cols, axis=1)
