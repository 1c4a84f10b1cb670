"""Dense complex linear algebra over labeled tensor-product spaces.

Kronecker products, partial trace / partial transpose, Hermitian
eigendecompositions and random-state generation, all over an explicit
list of party dimensions.  Party indexing is 0-based; when several
copies of a system are stacked, parties are ordered copy by copy
(copy-1 parties first, then copy-2 parties, ...).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

HERM_TOL = 1e-12
PSD_TOL = -1e-9
TRACE_TOL = 1e-9
NORM_TOL = 1e-12


@dataclass(frozen=True)
class ProductSpace:
    """Ordered list of local dimensions of a tensor-product space."""

    party_dims: tuple[int, ...]

    def __post_init__(self) -> None:
        dims = tuple(int(d) for d in self.party_dims)
        object.__setattr__(self, "party_dims", dims)
        if len(dims) == 0:
            raise ValueError("party_dims must be non-empty")
        if any(d < 1 for d in dims):
            raise ValueError(f"party dimensions must be positive, got {dims}")

    @property
    def total_dim(self) -> int:
        return int(np.prod(self.party_dims))

    @property
    def n_parties(self) -> int:
        return len(self.party_dims)

    def __mul__(self, other: "ProductSpace") -> "ProductSpace":
        return ProductSpace(self.party_dims + other.party_dims)

    def copies(self, n: int) -> "ProductSpace":
        return ProductSpace(self.party_dims * n)


def space(*dims: int) -> ProductSpace:
    """Shorthand constructor: space(2, 2) is a two-qubit space."""
    return ProductSpace(tuple(dims))


def _as_matrix(entries: Iterable) -> np.ndarray:
    m = np.asarray(entries, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    return m


@dataclass(frozen=True)
class Ket:
    """Unit vector on a ProductSpace."""

    space: ProductSpace
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        amp = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amp.size != self.space.total_dim:
            raise ValueError(
                f"amplitude length {amp.size} does not match space dimension "
                f"{self.space.total_dim}"
            )
        nrm = np.linalg.norm(amp)
        if abs(nrm - 1.0) > 1e-10:
            raise ValueError(f"ket norm {nrm} deviates from 1 beyond tolerance")
        amp = amp / nrm
        amp.flags.writeable = False
        object.__setattr__(self, "amplitudes", amp)

    def density(self) -> "DensityOp":
        return DensityOp(self.space, np.outer(self.amplitudes, self.amplitudes.conj()))


@dataclass(frozen=True)
class HermitianOp:
    """Hermitian operator on a ProductSpace."""

    space: ProductSpace
    entries: np.ndarray

    def __post_init__(self) -> None:
        m = _as_matrix(self.entries)
        if m.shape[0] != self.space.total_dim:
            raise ValueError(
                f"matrix dimension {m.shape[0]} does not match space dimension "
                f"{self.space.total_dim}"
            )
        dev = np.abs(m - m.conj().T).max()
        scale = max(1.0, np.abs(m).max())
        if dev > HERM_TOL * scale * 10 and dev > 1e-10:
            raise ValueError(f"matrix is not Hermitian within tolerance: deviation {dev}")
        m = 0.5 * (m + m.conj().T)
        m.flags.writeable = False
        object.__setattr__(self, "entries", m)

    @property
    def dim(self) -> int:
        return self.space.total_dim

    def trace(self) -> float:
        return float(np.trace(self.entries).real)


@dataclass(frozen=True)
class DensityOp(HermitianOp):
    """Unit-trace positive semidefinite HermitianOp."""

    def __post_init__(self) -> None:
        super().__post_init__()
        tr = np.trace(self.entries).real
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValueError(f"density operator trace {tr} deviates from 1")
        lam_min = float(np.linalg.eigvalsh(self.entries)[0])
        if lam_min < PSD_TOL:
            raise ValueError(f"density operator has negative eigenvalue {lam_min}")


def kron(a: HermitianOp, b: HermitianOp) -> HermitianOp:
    """Tensor product; the result space concatenates the input spaces."""
    return HermitianOp(a.space * b.space, np.kron(a.entries, b.entries))


def kron_all(mats: Sequence[np.ndarray]) -> np.ndarray:
    out = np.asarray(mats[0])
    for m in mats[1:]:
        out = np.kron(out, m)
    return out


def _check_parties(space_: ProductSpace, parties: Iterable[int]) -> list[int]:
    ps = sorted(set(int(p) for p in parties))
    for p in ps:
        if p < 0 or p >= space_.n_parties:
            raise ValueError(f"party index {p} out of range for {space_.party_dims}")
    return ps


def partial_trace_mat(m: np.ndarray, dims: Sequence[int], traced: Iterable[int]) -> np.ndarray:
    """Partial trace of a raw matrix over the given party indices."""
    dims = list(dims)
    n = len(dims)
    traced = sorted(set(traced))
    keep = [i for i in range(n) if i not in traced]
    t = m.reshape(dims + dims)
    # trace highest party first; remaining row/column axis pairs keep aligned
    for p in reversed(traced):
        t = np.trace(t, axis1=p, axis2=p + t.ndim // 2)
    dkeep = int(np.prod([dims[i] for i in keep])) if keep else 1
    return t.reshape(dkeep, dkeep)


def partial_trace(x: HermitianOp, traced_parties: Iterable[int]) -> HermitianOp:
    """Trace out the listed parties; the result lives on the remaining ones."""
    traced = _check_parties(x.space, traced_parties)
    dims = list(x.space.party_dims)
    keep = [i for i in range(len(dims)) if i not in traced]
    if not keep:
        raise ValueError("cannot trace out every party")
    out = partial_trace_mat(x.entries, dims, traced)
    return HermitianOp(ProductSpace(tuple(dims[i] for i in keep)), out)


def partial_transpose_mat(m: np.ndarray, dims: Sequence[int], parties: Iterable[int]) -> np.ndarray:
    """Transpose the listed parties of a raw matrix."""
    dims = list(dims)
    n = len(dims)
    ps = sorted(set(parties))
    t = m.reshape(dims + dims)
    perm = list(range(2 * n))
    for p in ps:
        perm[p], perm[p + n] = perm[p + n], perm[p]
    t = t.transpose(perm)
    d = int(np.prod(dims))
    return t.reshape(d, d)


def partial_transpose(x: HermitianOp, parties: Iterable[int]) -> HermitianOp:
    """Partial transpose on the listed parties (an involution)."""
    ps = _check_parties(x.space, parties)
    return HermitianOp(x.space, partial_transpose_mat(x.entries, x.space.party_dims, ps))


def permute_parties_mat(m: np.ndarray, dims: Sequence[int], perm: Sequence[int]) -> np.ndarray:
    """Reorder parties of a raw matrix: new party i is old party perm[i]."""
    dims = list(dims)
    n = len(dims)
    if sorted(perm) != list(range(n)):
        raise ValueError(f"invalid party permutation {perm}")
    axes = list(perm) + [p + n for p in perm]
    t = m.reshape(dims + dims).transpose(axes)
    d = int(np.prod(dims))
    return t.reshape(d, d)


def permute_parties(x: HermitianOp, perm: Sequence[int]) -> HermitianOp:
    dims = x.space.party_dims
    new_dims = tuple(dims[p] for p in perm)
    return HermitianOp(ProductSpace(new_dims), permute_parties_mat(x.entries, dims, perm))


def eig_hermitian(x: HermitianOp) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and eigenvectors of a Hermitian operator."""
    w, v = np.linalg.eigh(x.entries)
    return w, v


def identity(space_: ProductSpace) -> HermitianOp:
    return HermitianOp(space_, np.eye(space_.total_dim, dtype=complex))


def random_haar_ket(space_: ProductSpace, rng: np.random.Generator) -> Ket:
    """Haar-random unit vector (unitarily invariant distribution)."""
    d = space_.total_dim
    z = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return Ket(space_, z / np.linalg.norm(z))


def random_density(space_: ProductSpace, rank: int, rng: np.random.Generator) -> DensityOp:
    """Random rank-constrained density operator (partial trace of a Haar ket)."""
    d = space_.total_dim
    if rank < 1 or rank > d:
        raise ValueError(f"rank {rank} invalid for dimension {d}")
    g = rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))
    m = g @ g.conj().T
    return DensityOp(space_, m / np.trace(m).real)


def random_hermitian(space_: ProductSpace, rng: np.random.Generator) -> HermitianOp:
    d = space_.total_dim
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return HermitianOp(space_, 0.5 * (g + g.conj().T))


def operator_norm(m: np.ndarray) -> float:
    return float(np.linalg.norm(m, 2))


# Matrix JSON format shared by every module and the CLI:
# {"dims": [d1, ...], "re": [[...]], "im": [[...]]}, row-major.

def matrix_to_json(x: HermitianOp) -> dict:
    return {
        "dims": list(x.space.party_dims),
        "re": x.entries.real.tolist(),
        "im": x.entries.imag.tolist(),
    }


def matrix_from_json(data: dict) -> HermitianOp:
    dims = tuple(int(d) for d in data["dims"])
    re = np.asarray(data["re"], dtype=float)
    im = np.asarray(data.get("im", np.zeros_like(re)), dtype=float)
    return HermitianOp(ProductSpace(dims), re + 1j * im)


def save_matrix(x: HermitianOp, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(matrix_to_json(x), fh)


def load_matrix(path: str) -> HermitianOp:
    with open(path) as fh:
        return matrix_from_json(json.load(fh))


def load_density(path: str) -> DensityOp:
    h = load_matrix(path)
    return DensityOp(h.space, h.entries)
