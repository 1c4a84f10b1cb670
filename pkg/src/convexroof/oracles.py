"""Independent ground-truth generators.

Closed-form entanglement quantities (Wootters concurrence, negativity,
the three-qubit quartic invariant), an ensemble-search upper bound on
convex roofs, and the named benchmark state families.  Everything here
is deliberately implemented without the multi-copy machinery so it can
serve as an independent oracle for it.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence

import numpy as np
from scipy.linalg import expm, sqrtm
from scipy.optimize import minimize

from .spaces import (
    DensityOp,
    HermitianOp,
    Ket,
    ProductSpace,
    partial_trace_mat,
    partial_transpose_mat,
)

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)


def wootters_concurrence(rho: DensityOp) -> float:
    """Concurrence of a two-qubit state via the spin-flip construction.

    C = max(0, l1 - l2 - l3 - l4) where l_i are the decreasing square
    roots of the eigenvalues of rho (sy x sy) rho* (sy x sy).
    """
    if rho.space.party_dims != (2, 2):
        raise ValueError(f"concurrence needs a 2x2 system, got {rho.space.party_dims}")
    yy = np.kron(SIGMA_Y, SIGMA_Y)
    w, v = np.linalg.eigh(rho.entries)
    root = (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T
    # the sorted lambdas are the singular values of sqrt(rho) yy sqrt(rho)*,
    # which avoids the precision loss of rooting near-zero eigenvalues
    lams = np.linalg.svd(root @ yy @ root.conj(), compute_uv=False)
    return float(max(0.0, lams[0] - lams[1] - lams[2] - lams[3]))


def cayley_hyperdeterminant(psi: Ket | np.ndarray) -> complex:
    """Quartic local-SU(2) invariant of three-qubit amplitudes.

    The modulus relates to the residual (three-way) entanglement of the
    ket: tau = 4|result| for pure states.
    """
    if isinstance(psi, Ket):
        if psi.space.party_dims != (2, 2, 2):
            raise ValueError(f"three qubits required, got {psi.space.party_dims}")
        t = psi.amplitudes
    else:
        t = np.asarray(psi, dtype=complex).reshape(-1)
        if t.size != 8:
            raise ValueError(f"three-qubit amplitude vector required, got size {t.size}")
    d1 = t[0] ** 2 * t[7] ** 2 + t[1] ** 2 * t[6] ** 2 + t[2] ** 2 * t[5] ** 2 + t[3] ** 2 * t[4] ** 2
    d2 = (
        t[0] * t[7] * t[3] * t[4]
        + t[0] * t[7] * t[5] * t[2]
        + t[0] * t[7] * t[6] * t[1]
        + t[3] * t[4] * t[5] * t[2]
        + t[3] * t[4] * t[6] * t[1]
        + t[5] * t[2] * t[6] * t[1]
    )
    d3 = t[0] * t[6] * t[5] * t[3] + t[7] * t[1] * t[2] * t[4]
    return complex(d1 - 2.0 * d2 + 4.0 * d3)


def negativity(rho: DensityOp, cut: Sequence[int] = (0,)) -> float:
    """(|rho^{T_cut}|_1 - 1) / 2 for the given set of transposed parties."""
    m = partial_transpose_mat(rho.entries, rho.space.party_dims, cut)
    ev = np.linalg.eigvalsh(m)
    return float(max(0.0, (np.abs(ev).sum() - 1.0) / 2.0))


def linear_entropy_of_ket(amps: np.ndarray, dims: Sequence[int], cut: Sequence[int]) -> float:
    """S_lin of the reduced state of the parties in `cut` for a pure ket."""
    rho = np.outer(amps, amps.conj())
    keep_complement = [i for i in range(len(dims)) if i not in set(cut)]
    red = partial_trace_mat(rho, dims, keep_complement)
    return float(1.0 - np.trace(red @ red).real)


def linear_entropy_functional(dims: Sequence[int], cut: Sequence[int] = (0,)) -> Callable:
    dims = tuple(dims)
    cut = tuple(cut)
    return lambda amps: linear_entropy_of_ket(amps, dims, cut)


def _ensemble_objective(theta: np.ndarray, kernel: np.ndarray, m: int, r: int,
                        functional: Callable) -> float:
    # U = exp(iH) with H Hermitian from theta; first r columns mix the kernel
    h = np.zeros((m, m), dtype=complex)
    iu = np.triu_indices(m, 1)
    nd = m * (m - 1) // 2
    h[iu] = theta[m:m + nd] + 1j * theta[m + nd:]
    h = h + h.conj().T
    h[np.diag_indices(m)] = theta[:m]
    u = expm(1j * h)[:, :r]
    branches = u @ kernel  # (m, d): unnormalized branch kets
    total = 0.0
    for k in range(m):
        q = float(np.vdot(branches[k], branches[k]).real)
        if q < 1e-14:
            continue
        total += q * functional(branches[k] / math.sqrt(q))
    return total


def _one_restart(args) -> float:
    theta0, kernel, m, r, functional = args
    res = minimize(
        _ensemble_objective,
        theta0,
        args=(kernel, m, r, functional),
        method="Powell",
        options={"maxiter": 4000, "xtol": 1e-6, "ftol": 1e-9},
    )
    return float(res.fun)


def resolve_workers(workers: int | None = None) -> int:
    if workers is not None and workers > 0:
        return int(workers)
    env = os.environ.get("CONVEXROOF_WORKERS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def ensemble_upper_bound(
    rho: DensityOp,
    functional: Callable,
    branches: int | None = None,
    restarts: int = 20,
    seed: int = 0,
    workers: int | None = None,
    target: float | None = None,
) -> float:
    """Upper bound on a convex roof by explicit decomposition search.

    Every pure-state decomposition of rho arises from an isometry acting
    on the ancilla of a purification, so decompositions into m branches
    are parametrized by the first rank(rho) columns of an m x m unitary;
    those columns mix the eigenvector kernel sqrt(lam_i)|e_i>.  The
    ensemble average of `functional` is minimized locally (Powell) from
    `restarts` random starting points; the best value found is returned.
    A known lower `target` allows early stopping once reached within 1e-9.
    """
    lam, vec = np.linalg.eigh(rho.entries)
    keep = lam > 1e-12
    lam, vec = lam[keep], vec[:, keep]
    r = int(lam.size)
    if r == 1:
        return float(functional(vec[:, 0]))
    m = branches if branches is not None else r + 2
    if m < r:
        raise ValueError(f"branch count {m} below rank {r}")
    kernel = (vec * np.sqrt(lam)).T  # (r, d) rows sqrt(lam_i) e_i^T
    rng = np.random.default_rng(seed)
    npar = m * m
    tasks = [(rng.normal(scale=1.5, size=npar), kernel, m, r, functional)
             for _ in range(restarts)]
    tasks[0] = (np.zeros(npar), kernel, m, r, functional)  # eigendecomposition start
    nw = resolve_workers(workers)
    best = math.inf
    if nw > 1:
        with ProcessPoolExecutor(max_workers=nw) as pool:
            for val in pool.map(_one_restart, tasks):
                best = min(best, val)
                if target is not None and best <= target + 1e-9:
                    break
    else:
        for t in tasks:
            best = min(best, _one_restart(t))
            if target is not None and best <= target + 1e-9:
                break
    return float(best)


# ----------------------------------------------------------------------
# Benchmark state families


def bell_state(kind: int = 0) -> Ket:
    """Two-qubit Bell basis: 0 -> (|00>+|11>)/sqrt2, 1 -> (|00>-|11>)/sqrt2,
    2 -> (|01>+|10>)/sqrt2, 3 -> (|01>-|10>)/sqrt2."""
    v = np.zeros(4, dtype=complex)
    if kind == 0:
        v[0] = v[3] = 1.0
    elif kind == 1:
        v[0], v[3] = 1.0, -1.0
    elif kind == 2:
        v[1] = v[2] = 1.0
    elif kind == 3:
        v[1], v[2] = 1.0, -1.0
    else:
        raise ValueError(f"Bell index {kind} out of range")
    return Ket(ProductSpace((2, 2)), v / math.sqrt(2.0))


def ghz_ket(n: int = 3, sign: float = 1.0) -> Ket:
    v = np.zeros(2**n, dtype=complex)
    v[0] = 1.0 / math.sqrt(2.0)
    v[-1] = sign / math.sqrt(2.0)
    return Ket(ProductSpace((2,) * n), v)


def w_ket() -> Ket:
    v = np.zeros(8, dtype=complex)
    v[1] = v[2] = v[4] = 1.0 / math.sqrt(3.0)
    return Ket(ProductSpace((2, 2, 2)), v)


def werner_state(visibility: float) -> DensityOp:
    """v |Bell><Bell| + (1-v) 1/4 on two qubits."""
    b = bell_state(0).density().entries
    m = visibility * b + (1.0 - visibility) * np.eye(4) / 4.0
    return DensityOp(ProductSpace((2, 2)), m)


def horodecki_state(a: float) -> DensityOp:
    """The 3x3 positive-partial-transpose entangled family, parameter a in [0,1].

    Explicit matrix (basis |ij>, row-major, normalization 8a+1):
    diagonal (a,a,a,a,a,a,(1+a)/2,a,(1+a)/2); coherences a between
    |00>,|11>,|22|; coherence sqrt(1-a^2)/2 between |20> and |22>.
    """
    if not 0.0 <= a <= 1.0:
        raise ValueError(f"parameter a={a} outside [0,1]")
    m = np.zeros((9, 9), dtype=complex)
    for i in range(9):
        m[i, i] = a
    m[6, 6] = (1.0 + a) / 2.0
    m[8, 8] = (1.0 + a) / 2.0
    for i, j in [(0, 4), (0, 8), (4, 8)]:
        m[i, j] = a
        m[j, i] = a
    c = math.sqrt(max(0.0, 1.0 - a * a)) / 2.0
    m[6, 8] += c
    m[8, 6] += c
    return DensityOp(ProductSpace((3, 3)), m / (8.0 * a + 1.0))


def horodecki_noisy(a: float, p: float) -> DensityOp:
    """White-noise mixture p * horodecki_state(a) + (1-p) 1/9."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"parameter p={p} outside [0,1]")
    m = p * horodecki_state(a).entries + (1.0 - p) * np.eye(9) / 9.0
    return DensityOp(ProductSpace((3, 3)), m)


def rhoxy_state(x: float, y: float) -> DensityOp:
    """Three-qubit mixture x GHZ+ + y GHZ- + (1-x-y) W."""
    if x < 0 or y < 0 or x + y > 1.0 + 1e-12:
        raise ValueError(f"(x, y)=({x}, {y}) outside the simplex")
    m = (
        x * ghz_ket(3, 1.0).density().entries
        + y * ghz_ket(3, -1.0).density().entries
        + (1.0 - x - y) * w_ket().density().entries
    )
    return DensityOp(ProductSpace((2, 2, 2)), m)


def schmidt_family(p_cn: float) -> DensityOp:
    """(1-p) |Psi_S><Psi_S| + p * colored noise on the 2x2 corner of 3x3,
    with Psi_S = (|00>+|11>+|22>)/sqrt3."""
    if not 0.0 <= p_cn <= 1.0:
        raise ValueError(f"parameter p_cn={p_cn} outside [0,1]")
    v = np.zeros(9, dtype=complex)
    v[0] = v[4] = v[8] = 1.0 / math.sqrt(3.0)
    noise = np.zeros((9, 9), dtype=complex)
    for i in (0, 1):
        for j in (0, 1):
            noise[3 * i + j, 3 * i + j] = 0.25
    m = (1.0 - p_cn) * np.outer(v, v.conj()) + p_cn * noise
    return DensityOp(ProductSpace((3, 3)), m)


def bell_embedded_family(p_b: float) -> DensityOp:
    """p |Phi+><Phi+| + (1-p) 1/9 with the Bell state on the 2x2 corner of 3x3."""
    if not 0.0 <= p_b <= 1.0:
        raise ValueError(f"parameter p_b={p_b} outside [0,1]")
    v = np.zeros(9, dtype=complex)
    v[0] = v[4] = 1.0 / math.sqrt(2.0)
    m = p_b * np.outer(v, v.conj()) + (1.0 - p_b) * np.eye(9) / 9.0
    return DensityOp(ProductSpace((3, 3)), m)


def elin_family(p_e: float, eps: float = 0.3) -> DensityOp:
    """p |Psi_E><Psi_E| + (1-p) 1/9 with
    Psi_E = eps|00> + eps|11> + sqrt(1-2 eps^2)|22> on 3x3."""
    if not 0.0 <= p_e <= 1.0:
        raise ValueError(f"parameter p_e={p_e} outside [0,1]")
    if 2.0 * eps * eps > 1.0:
        raise ValueError(f"eps={eps} outside range (needs 2 eps^2 <= 1)")
    v = np.zeros(9, dtype=complex)
    v[0] = v[4] = eps
    v[8] = math.sqrt(1.0 - 2.0 * eps * eps)
    m = p_e * np.outer(v, v.conj()) + (1.0 - p_e) * np.eye(9) / 9.0
    return DensityOp(ProductSpace((3, 3)), m)


FAMILY_PARAMS = {
    "horodecki": ("a", "p"),
    "rhoxy": ("x", "y"),
    "schmidt": ("pcn",),
    "bell33": ("pb",),
    "elin33": ("pe", "eps"),
    "werner": ("v",),
}


def state_family(name: str, **params: float) -> DensityOp:
    """Dispatch a named benchmark family; parameter names as in FAMILY_PARAMS."""
    if name == "horodecki":
        return horodecki_noisy(params["a"], params.get("p", 1.0))
    if name == "rhoxy":
        return rhoxy_state(params["x"], params["y"])
    if name == "schmidt":
        return schmidt_family(params["pcn"])
    if name == "bell33":
        return bell_embedded_family(params["pb"])
    if name == "elin33":
        return elin_family(params["pe"], params.get("eps", 0.3))
    if name == "werner":
        return werner_state(params["v"])
    raise ValueError(f"unknown state family '{name}'")


def random_separable(space_: ProductSpace, n_terms: int, rng: np.random.Generator) -> DensityOp:
    """Random mixture of product pure states (manifestly separable)."""
    d = space_.total_dim
    m = np.zeros((d, d), dtype=complex)
    w = rng.dirichlet(np.ones(n_terms))
    for k in range(n_terms):
        factors = []
        for dp in space_.party_dims:
            z = rng.standard_normal(dp) + 1j * rng.standard_normal(dp)
            factors.append(z / np.linalg.norm(z))
        v = factors[0]
        for f in factors[1:]:
            v = np.kron(v, f)
        m += w[k] * np.outer(v, v.conj())
    return DensityOp(space_, m)
