"""Internal primal-dual semidefinite programming solver.

Standard form over a direct sum of PSD blocks:

    minimize    sum_b <C_b, X_b>
    subject to  sum_b <A_ib, X_b> = b_i,   X_b >= 0,

solved by an infeasible-start path-following interior-point method with
Nesterov-Todd scaling and a Mehrotra predictor-corrector.  Complex
Hermitian blocks are handled through a real symmetric embedding of
doubled size; real blocks are detected and kept real.  Certificates of
primal or dual infeasibility (Farkas-type improving rays) are returned
when the iterates diverge in the characteristic way.

The solver never trusts its own bookkeeping for the final report:
verify_kkt recomputes all residuals from the returned solution.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.linalg import blas as sla_blas
from scipy.linalg import cho_factor, cho_solve, cholesky, solve_triangular

DEFAULT_TOL = 1e-7
DEFAULT_FEAS_TOL = 1e-8
DEFAULT_MAX_ITER = 200
RANK_THRESHOLD = 1e-10
REAL_THRESHOLD = 1e-13
STEP_FRACTION = 0.98


class SdpError(Exception):
    pass


@dataclass
class SdpProblem:
    """Block-diagonal semidefinite program.

    blocks: list of block dimensions (of the possibly complex operators).
    objective: one Hermitian matrix per block.
    constraints: list of (per-block operator list, rhs) pairs.
    sense: "min" or "max" (max is negated internally).
    """

    blocks: list[int]
    objective: list[np.ndarray]
    constraints: list[tuple[list[np.ndarray], float]]
    sense: str = "min"

    def __post_init__(self) -> None:
        if self.sense not in ("min", "max"):
            raise SdpError(f"sense must be min or max, got {self.sense}")
        if len(self.objective) != len(self.blocks):
            raise SdpError("objective must provide one matrix per block")
        for b, (dim, c) in enumerate(zip(self.blocks, self.objective)):
            c = np.asarray(c)
            if c.shape != (dim, dim):
                raise SdpError(f"objective block {b} has shape {c.shape}, expected {(dim, dim)}")
            if np.abs(c - c.conj().T).max() > 1e-9 * max(1.0, np.abs(c).max()):
                raise SdpError(f"objective block {b} is not Hermitian")
        for i, (ops, rhs) in enumerate(self.constraints):
            if len(ops) != len(self.blocks):
                raise SdpError(f"constraint {i} must provide one operator per block")
            if abs(float(np.imag(rhs))) > 1e-12 if np.iscomplexobj(rhs) else False:
                raise SdpError(f"constraint {i} has non-real rhs")
            for b, (dim, a) in enumerate(zip(self.blocks, ops)):
                a = np.asarray(a)
                if a.shape != (dim, dim):
                    raise SdpError(f"constraint {i} block {b} has wrong shape {a.shape}")
                if np.abs(a - a.conj().T).max() > 1e-9 * max(1.0, np.abs(a).max(), 1e-30):
                    raise SdpError(f"constraint {i} block {b} is not Hermitian")

    @property
    def n_constraints(self) -> int:
        return len(self.constraints)


@dataclass
class SdpSolution:
    X: list[np.ndarray]
    y: np.ndarray
    S: list[np.ndarray]
    primal_obj: float
    dual_obj: float
    gap: float
    status: str  # optimal | infeasible | max_iter
    iterations: int
    tol: float
    feas_tol: float
    sense: str
    certificate: dict | None = None
    trace: list = field(default_factory=list)
    dropped_rows: list = field(default_factory=list)


@dataclass
class KktReport:
    passes: bool
    primal_residual: float
    dual_residual: float
    complementarity: float
    min_eig_X: float
    min_eig_S: float


def real_embedding(h: np.ndarray) -> np.ndarray:
    """Real symmetric embedding [[Re, -Im], [Im, Re]] of a Hermitian matrix.

    The embedding has the spectrum of h with doubled multiplicity.
    """
    h = np.asarray(h, dtype=complex)
    n = h.shape[0]
    out = np.empty((2 * n, 2 * n))
    out[:n, :n] = h.real
    out[n:, n:] = h.real
    out[:n, n:] = -h.imag
    out[n:, :n] = h.imag
    return out


def real_decode(m: np.ndarray) -> np.ndarray:
    """Inverse of real_embedding on its range (averages the two copies)."""
    n = m.shape[0] // 2
    re = 0.5 * (m[:n, :n] + m[n:, n:])
    im = 0.5 * (m[n:, :n] - m[:n, n:])
    return re + 1j * im


def _svec_cache(n: int):
    iu = np.triu_indices(n, 1)
    return iu


def svec(m: np.ndarray, iu) -> np.ndarray:
    n = m.shape[0]
    out = np.empty(n + iu[0].size)
    out[:n] = np.diagonal(m)
    out[n:] = m[iu] * np.sqrt(2.0)
    return out


def unsvec(v: np.ndarray, n: int, iu) -> np.ndarray:
    m = np.zeros((n, n))
    off = v[n:] / np.sqrt(2.0)
    m[iu] = off
    m += m.T
    m[np.diag_indices(n)] = v[:n]
    return m


class _RealForm:
    """Realified, preprocessed copy of an SdpProblem.

    Complex blocks are embedded as real symmetric blocks of doubled size
    with operators scaled by 1/2 so that inner products match the complex
    originals; real blocks are kept as-is (fast path).
    """

    def __init__(self, prob: SdpProblem, assume_independent: bool = False):
        self.sense_flip = prob.sense == "max"
        sign = -1.0 if self.sense_flip else 1.0
        self.block_kinds: list[str] = []
        self.dims: list[int] = []
        self.slices: list[slice] = []
        m = prob.n_constraints

        cs, a_rows = [], None
        for bdim, c in zip(prob.blocks, prob.objective):
            ops = [np.asarray(con[0][len(self.dims)]) for con in prob.constraints]
            is_real = (
                (not np.iscomplexobj(c) or np.abs(np.imag(c)).max() <= REAL_THRESHOLD)
                and all(
                    not np.iscomplexobj(a) or np.abs(np.imag(a)).max() <= REAL_THRESHOLD
                    for a in ops
                )
            )
            if is_real:
                self.block_kinds.append("real")
                self.dims.append(bdim)
                cs.append(sign * np.ascontiguousarray(np.real(c), dtype=float))
            else:
                self.block_kinds.append("embedded")
                self.dims.append(2 * bdim)
                cs.append(sign * 0.5 * real_embedding(c))
        self.C = cs

        self.iu = [_svec_cache(n) for n in self.dims]
        self.svec_dims = [n + iun[0].size for n, iun in zip(self.dims, self.iu)]
        off = np.cumsum([0] + self.svec_dims)
        self.svec_slices = [slice(off[i], off[i + 1]) for i in range(len(self.dims))]
        self.total_svec = int(off[-1])

        amat = np.empty((m, self.total_svec))
        for i, (ops, _) in enumerate(prob.constraints):
            for b, a in enumerate(ops):
                if self.block_kinds[b] == "real":
                    ar = np.real(np.asarray(a)).astype(float)
                else:
                    ar = 0.5 * real_embedding(np.asarray(a))
                amat[i, self.svec_slices[b]] = svec(ar, self.iu[b])
        self.Amat = amat
        self.b = np.array([float(np.real(rhs)) for _, rhs in prob.constraints])

        self.kept_rows = list(range(m))
        self.dropped = []
        self.inconsistent_ray = None
        if not assume_independent and m > 0:
            self._reduce_rows()

        self.c_svec = np.concatenate(
            [svec(cb, iun) for cb, iun in zip(self.C, self.iu)]
        ) if self.dims else np.zeros(0)

    def _reduce_rows(self) -> None:
        a = self.Amat
        m = a.shape[0]
        # cheap full-rank certificate through the Gram matrix
        g = a @ a.T
        scale = np.sqrt(np.maximum(np.diagonal(g), 1e-300))
        gn = g / scale[:, None] / scale[None, :]
        lam = np.linalg.eigvalsh(gn)
        if lam[0] > (RANK_THRESHOLD**2) * 10:
            return
        # dependent rows present: reduce with an SVD of the row space
        u, s, vt = np.linalg.svd(a, full_matrices=False)
        rank = int((s > RANK_THRESHOLD * max(1.0, s[0])).sum())
        if rank == m:
            return
        # pick a well-conditioned subset of rows by pivoted QR on the row space
        from scipy.linalg import qr

        _, _, piv = qr(a.T, mode="economic", pivoting=True)
        keep = sorted(piv[:rank])
        drop = sorted(set(range(m)) - set(keep))
        # consistency of dropped rows: residual of b against the kept span
        akeep = a[keep]
        coef, *_ = np.linalg.lstsq(akeep.T, a[drop].T, rcond=None)
        b_pred = coef.T @ self.b[keep]
        bad = np.where(np.abs(b_pred - self.b[drop]) > 1e-8 * (1.0 + np.abs(self.b).max()))[0]
        if bad.size:
            # Farkas certificate from the dependency: y with A*(y)=0, b.y != 0
            j = drop[int(bad[0])]
            y = np.zeros(m)
            y[j] = -1.0
            y[keep] += coef[:, int(bad[0])]
            if self.b @ y > 0:
                y = -y
            self.inconsistent_ray = y
            return
        warnings.warn(
            f"dropping {len(drop)} linearly dependent constraint row(s): {drop}",
            RuntimeWarning,
        )
        self.dropped = drop
        self.kept_rows = keep
        self.Amat = akeep
        self.b = self.b[keep]

    # block helpers -----------------------------------------------------
    def split(self, v: np.ndarray) -> list[np.ndarray]:
        return [unsvec(v[sl], n, iun) for sl, n, iun in zip(self.svec_slices, self.dims, self.iu)]

    def join(self, mats: Sequence[np.ndarray]) -> np.ndarray:
        return np.concatenate([svec(m, iun) for m, iun in zip(mats, self.iu)])

    def apply_A(self, mats: Sequence[np.ndarray]) -> np.ndarray:
        return self.Amat @ self.join(mats)

    def apply_At(self, y: np.ndarray) -> list[np.ndarray]:
        return self.split(y @ self.Amat)

    def inner_C(self, mats: Sequence[np.ndarray]) -> float:
        return float(sum(np.tensordot(cb, xb) for cb, xb in zip(self.C, mats)))


def _nt_scaling(x: np.ndarray, s: np.ndarray):
    """NT scaling factors: G with G G^T = W, W S W = X, plus the scaled spectrum."""
    lx = cholesky(x, lower=True)
    ls = cholesky(s, lower=True)
    u, sig, vt = np.linalg.svd(ls.T @ lx)
    g = lx @ vt.T / np.sqrt(sig)
    return g, lx, ls, sig


def _max_step(l_chol: np.ndarray, d: np.ndarray) -> float:
    """Largest alpha with M + alpha D >= 0, given chol(M) and symmetric D."""
    k = solve_triangular(l_chol, d, lower=True)
    k = solve_triangular(l_chol, k.T, lower=True)
    lam = np.linalg.eigvalsh(0.5 * (k + k.T))
    lam_min = lam[0]
    if lam_min >= -1e-14:
        return np.inf
    return -1.0 / lam_min


def _build_schur(form: _RealForm, gs: list[np.ndarray], chunk_elems: int = 2 * 10**7) -> np.ndarray:
    """M_ij = sum_b tr(A_ib W_b A_jb W_b) assembled as B B^T per block."""
    m = form.Amat.shape[0]
    mmat = np.zeros((m, m))
    for b, g in enumerate(gs):
        n = form.dims[b]
        iu = form.iu[b]
        sl = form.svec_slices[b]
        nsv = form.svec_dims[b]
        bmat = np.empty((m, nsv))
        chunk = max(1, min(m, chunk_elems // max(1, n * n)))
        gt = np.ascontiguousarray(g.T)
        diag_idx = np.arange(n)
        for lo in range(0, m, chunk):
            hi = min(m, lo + chunk)
            rows = form.Amat[lo:hi, sl]
            k = hi - lo
            amats = np.zeros((k, n, n))
            off = rows[:, n:] / np.sqrt(2.0)
            amats[:, iu[0], iu[1]] = off
            amats[:, iu[1], iu[0]] = off
            amats[:, diag_idx, diag_idx] = rows[:, :n]
            tmp = np.matmul(amats, g)
            tmp = np.matmul(gt, tmp)
            bmat[lo:hi, :n] = tmp[:, diag_idx, diag_idx]
            bmat[lo:hi, n:] = (tmp[:, iu[0], iu[1]] + tmp[:, iu[1], iu[0]]) * (np.sqrt(2.0) / 2.0)
        mmat = sla_blas.dsyrk(1.0, bmat, beta=1.0, c=mmat, trans=0, lower=1, overwrite_c=1)
    mmat += np.tril(mmat, -1).T
    return mmat


def solve(
    prob: SdpProblem,
    tol: float = DEFAULT_TOL,
    feas_tol: float = DEFAULT_FEAS_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    assume_independent: bool = False,
    callback: Callable | None = None,
) -> SdpSolution:
    """Solve the block SDP; see the module docstring for the algorithm.

    status="optimal" guarantees |primal-dual| <= tol and normalized
    feasibility residuals <= feas_tol.  status="infeasible" carries a
    Farkas-type certificate: {"kind": "primal", "ray": y} with
    A*(ray) >= 0 and <b, ray> < 0, or {"kind": "dual", "ray": X} with
    A(ray) = 0, ray >= 0, <C, ray> < 0 (the problem is then unbounded).
    """
    form = _RealForm(prob, assume_independent=assume_independent)
    if form.inconsistent_ray is not None:
        ray = _restore_ray(form.inconsistent_ray, prob.n_constraints, form.kept_rows)
        return _empty_solution(prob, form, tol, feas_tol, "infeasible",
                               {"kind": "primal", "ray": ray})

    m = form.Amat.shape[0]
    dims = form.dims
    ntot = sum(dims)
    norm_b = np.linalg.norm(form.b) if m else 0.0
    norm_c = np.sqrt(sum(np.linalg.norm(cb) ** 2 for cb in form.C)) if dims else 0.0
    a_row_norms = np.linalg.norm(form.Amat, axis=1) if m else np.zeros(0)

    # SDPT3-style initial scales, adjusted so the duality gap starts positive
    rho_p = max(10.0, np.sqrt(ntot), float(np.max((1.0 + np.abs(form.b)) / (1.0 + a_row_norms))) if m else 10.0)
    rho_d = max(10.0, np.sqrt(ntot), norm_c * 1.1, float(a_row_norms.max()) if m else 10.0)
    x = [rho_p * np.eye(n) for n in dims]
    s = [rho_d * np.eye(n) for n in dims]
    y = np.zeros(m)
    tr_c = sum(float(np.trace(cb)) for cb in form.C)
    if tr_c < 0 and m and norm_b > 1e-300:
        # start y along -b so the initial dual objective sits below the primal one
        t = 1.1 * rho_p * abs(tr_c) / norm_b
        y = -t * form.b / norm_b

    trace_log: list[dict] = []
    status = "max_iter"
    certificate = None
    it = 0
    mu_hist: list[float] = []

    for it in range(max_iter + 1):
        rp = form.b - form.apply_A(x) if m else np.zeros(0)
        aty = form.apply_At(y) if m else [np.zeros((n, n)) for n in dims]
        rd = [cb - at - sb for cb, at, sb in zip(form.C, aty, s)]
        pobj = form.inner_C(x)
        dobj = float(form.b @ y) if m else 0.0
        mu = sum(np.tensordot(xb, sb) for xb, sb in zip(x, s)) / ntot
        pinf = np.linalg.norm(rp) / (1.0 + norm_b)
        dinf = np.sqrt(sum(np.linalg.norm(r) ** 2 for r in rd)) / (1.0 + norm_c)
        gap = abs(pobj - dobj)
        trace_log.append(
            {"iter": it, "pobj": pobj, "dobj": dobj, "gap": gap,
             "pinf": pinf, "dinf": dinf, "mu": mu}
        )
        if callback is not None:
            callback(trace_log[-1])

        if gap <= tol and pinf <= feas_tol and dinf <= feas_tol:
            status = "optimal"
            break

        # divergence-based infeasibility certificates
        cert = _check_infeasibility(form, x, y, s, mu, mu_hist, norm_b, norm_c)
        if cert is not None:
            status = "infeasible"
            certificate = cert
            break
        mu_hist.append(mu)
        if it == max_iter:
            break

        # Nesterov-Todd scaling point and Schur complement
        try:
            factors = [_nt_scaling(xb, sb) for xb, sb in zip(x, s)]
        except np.linalg.LinAlgError:
            # iterate left the cone numerically; report best effort
            break
        gs = [f[0] for f in factors]
        schur = _build_schur(form, gs) if m else np.zeros((0, 0))
        try:
            schur_f = cho_factor(schur, lower=True) if m else None
        except np.linalg.LinAlgError:
            schur[np.diag_indices(m)] += 1e-12 * max(1.0, schur.diagonal().max())
            schur_f = cho_factor(schur, lower=True)

        def w_apply(z: list[np.ndarray]) -> list[np.ndarray]:
            return [g @ (g.T @ zb @ g) @ g.T for g, zb in zip(gs, z)]

        def newton(rc: list[np.ndarray]):
            # A(W A*(dy) W) = rp - A(rc) + A(W rd W)
            wrdw = w_apply(rd)
            rhs = rp - form.apply_A([rcb - wb for rcb, wb in zip(rc, wrdw)]) if m else np.zeros(0)
            dy = cho_solve(schur_f, rhs) if m else np.zeros(0)
            atdy = form.apply_At(dy) if m else [np.zeros((n, n)) for n in dims]
            ds = [r - a for r, a in zip(rd, atdy)]
            wdsw = w_apply(ds)
            dx = [rcb - wb for rcb, wb in zip(rc, wdsw)]
            dx = [0.5 * (d + d.T) for d in dx]
            ds = [0.5 * (d + d.T) for d in ds]
            return dy, dx, ds

        lxs = [f[1] for f in factors]
        lss = [f[2] for f in factors]

        # predictor (affine scaling)
        rc_aff = [-xb for xb in x]
        dy_a, dx_a, ds_a = newton(rc_aff)
        ap = min((_max_step(lx, d) for lx, d in zip(lxs, dx_a)), default=np.inf)
        ad = min((_max_step(ls, d) for ls, d in zip(lss, ds_a)), default=np.inf)
        ap = min(1.0, STEP_FRACTION * ap)
        ad = min(1.0, STEP_FRACTION * ad)
        mu_aff = sum(
            np.tensordot(xb + ap * dxb, sb + ad * dsb)
            for xb, dxb, sb, dsb in zip(x, dx_a, s, ds_a)
        ) / ntot
        sigma = float(np.clip((max(mu_aff, 0.0) / mu) ** 3, 0.0, 1.0))

        # corrector with Mehrotra second-order term
        s_inv = [cho_solve((ls, True), np.eye(n)) for ls, n in zip(lss, dims)]
        rc = []
        for xb, si, dxb, dsb in zip(x, s_inv, dx_a, ds_a):
            corr = dxb @ dsb @ si
            rc.append(sigma * mu * si - xb - 0.5 * (corr + corr.T))
        dy, dx, ds = newton(rc)
        ap = min((_max_step(lx, d) for lx, d in zip(lxs, dx)), default=np.inf)
        ad = min((_max_step(ls, d) for ls, d in zip(lss, ds)), default=np.inf)
        ap = min(1.0, STEP_FRACTION * ap)
        ad = min(1.0, STEP_FRACTION * ad)
        if min(ap, ad) < 1e-3:
            # guard: drop the second-order term, keep the centering target
            rc = [sigma * mu * si - xb for xb, si in zip(x, s_inv)]
            dy, dx, ds = newton(rc)
            ap = min((_max_step(lx, d) for lx, d in zip(lxs, dx)), default=np.inf)
            ad = min((_max_step(ls, d) for ls, d in zip(lss, ds)), default=np.inf)
            ap = min(1.0, STEP_FRACTION * ap)
            ad = min(1.0, STEP_FRACTION * ad)

        x = [xb + ap * dxb for xb, dxb in zip(x, dx)]
        s = [sb + ad * dsb for sb, dsb in zip(s, ds)]
        y = y + ad * dy
        x = [0.5 * (xb + xb.T) for xb in x]
        s = [0.5 * (sb + sb.T) for sb in s]

    return _finalize(prob, form, x, y, s, tol, feas_tol, status, certificate, trace_log, it)


def _check_infeasibility(form, x, y, s, mu, mu_hist, norm_b, norm_c) -> dict | None:
    m = form.Amat.shape[0]
    stalled = len(mu_hist) >= 8 and mu > 0.5 * mu_hist[-8]
    # dual infeasibility: a primal improving ray (problem unbounded below)
    xnorm = np.sqrt(sum(np.linalg.norm(xb) ** 2 for xb in x))
    if xnorm > 1e7 * max(1.0, norm_c) or (stalled and xnorm > 1e5):
        xhat = [xb / xnorm for xb in x]
        if (np.linalg.norm(form.apply_A(xhat)) if m else 0.0) <= 1e-7 and form.inner_C(xhat) < -1e-9:
            return {"kind": "dual", "ray": xhat}
    # primal infeasibility: a dual improving ray
    ynorm = np.linalg.norm(y) if m else 0.0
    if m and (ynorm > 1e7 or (stalled and ynorm > 1e5)):
        ray = -y / ynorm
        aty = form.apply_At(ray)
        lam_min = min(np.linalg.eigvalsh(a)[0] for a in aty)
        if form.b @ ray < -1e-9 and lam_min >= -1e-7:
            return {"kind": "primal", "ray": ray}
    return None


def _restore_ray(ray_reduced: np.ndarray, m_orig: int, kept: list[int]) -> np.ndarray:
    if ray_reduced.size == m_orig:
        return ray_reduced
    out = np.zeros(m_orig)
    for i, k in enumerate(kept):
        out[k] = ray_reduced[i]
    return out


def _decode_blocks(form: _RealForm, mats: list[np.ndarray], dual_slack: bool) -> list[np.ndarray]:
    out = []
    for kind, mb in zip(form.block_kinds, mats):
        if kind == "real":
            out.append(mb.copy())
        else:
            dec = real_decode(mb)
            out.append(2.0 * dec if dual_slack else dec)
    return out


def _empty_solution(prob, form, tol, feas_tol, status, certificate) -> SdpSolution:
    dims = form.dims
    x = [np.zeros((n, n)) for n in dims]
    s = [np.zeros((n, n)) for n in dims]
    if certificate is not None and certificate.get("kind") == "primal":
        ray = certificate["ray"]
        certificate = {"kind": "primal", "ray": ray}
    return SdpSolution(
        X=_decode_blocks(form, x, dual_slack=False),
        y=np.zeros(prob.n_constraints),
        S=_decode_blocks(form, s, dual_slack=True),
        primal_obj=np.nan, dual_obj=np.nan, gap=np.nan,
        status=status, iterations=0, tol=tol, feas_tol=feas_tol,
        sense=prob.sense, certificate=certificate,
    )


def _finalize(prob, form, x, y, s, tol, feas_tol, status, certificate, trace_log, it) -> SdpSolution:
    sign = -1.0 if form.sense_flip else 1.0
    pobj_int = form.inner_C(x)
    dobj_int = float(form.b @ y) if form.Amat.shape[0] else 0.0
    y_full = _restore_ray(y, prob.n_constraints, form.kept_rows)
    if certificate is not None and certificate.get("kind") == "primal":
        certificate = {
            "kind": "primal",
            "ray": _restore_ray(np.asarray(certificate["ray"]), prob.n_constraints, form.kept_rows),
        }
    elif certificate is not None and certificate.get("kind") == "dual":
        certificate = {
            "kind": "dual",
            "ray": _decode_blocks(form, certificate["ray"], dual_slack=False),
        }
    return SdpSolution(
        X=_decode_blocks(form, x, dual_slack=False),
        y=sign * y_full,
        S=_decode_blocks(form, [sign * sb for sb in s], dual_slack=True),
        primal_obj=sign * pobj_int,
        dual_obj=sign * dobj_int,
        gap=abs(pobj_int - dobj_int),
        status=status,
        iterations=it,
        tol=tol,
        feas_tol=feas_tol,
        sense=prob.sense,
        certificate=certificate,
        trace=trace_log,
        dropped_rows=form.dropped,
    )


def verify_kkt(prob: SdpProblem, sol: SdpSolution) -> KktReport:
    """Recompute feasibility and complementarity residuals from scratch.

    Normalizations: primal residual / (1 + |b|_2); dual residual (Frobenius
    of C - A*(y) - S over blocks) / (1 + |C|_F); complementarity
    <X, S> / (1 + |pobj| + |dobj|).  Passes iff all three are <= 10*tol
    and X, S have minimum eigenvalue >= -1e-9.
    """
    sign = -1.0 if sol.sense == "max" else 1.0
    b = np.array([float(np.real(rhs)) for _, rhs in prob.constraints])
    ax = np.array([
        float(np.real(sum(np.tensordot(np.asarray(a).conj(), xb) for a, xb in zip(ops, sol.X))))
        for ops, _ in prob.constraints
    ]) if prob.constraints else np.zeros(0)
    pres = np.linalg.norm(b - ax) / (1.0 + np.linalg.norm(b))
    dres_sq = 0.0
    min_s = np.inf
    min_x = np.inf
    for bi in range(len(prob.blocks)):
        cb = sign * np.asarray(prob.objective[bi])
        acc = np.zeros_like(cb, dtype=complex)
        for (ops, _), yi in zip(prob.constraints, sign * sol.y):
            acc = acc + yi * np.asarray(ops[bi])
        resid = cb - acc - sol.S[bi]
        dres_sq += float(np.linalg.norm(resid) ** 2)
        min_s = min(min_s, float(np.linalg.eigvalsh(0.5 * (sol.S[bi] + sol.S[bi].conj().T))[0]))
        min_x = min(min_x, float(np.linalg.eigvalsh(0.5 * (sol.X[bi] + sol.X[bi].conj().T))[0]))
    norm_c = np.sqrt(sum(np.linalg.norm(np.asarray(c)) ** 2 for c in prob.objective))
    dres = np.sqrt(dres_sq) / (1.0 + norm_c)
    comp = float(np.real(sum(np.tensordot(xb.conj(), sb) for xb, sb in zip(sol.X, sol.S))))
    comp_norm = abs(comp) / (1.0 + abs(sol.primal_obj) + abs(sol.dual_obj))
    thresh = 10.0 * sol.tol
    passes = (
        pres <= max(thresh, 10.0 * sol.feas_tol)
        and dres <= max(thresh, 10.0 * sol.feas_tol)
        and comp_norm <= thresh
        and min_x >= -1e-9
        and min_s >= -1e-9
    )
    return KktReport(passes, float(pres), float(dres), comp_norm, min_x, min_s)


def _mat_to_json(m: np.ndarray) -> dict:
    m = np.asarray(m)
    return {"re": np.real(m).tolist(), "im": np.imag(m).tolist()}


def _mat_from_json(d: dict) -> np.ndarray:
    re = np.asarray(d["re"], dtype=float)
    im = np.asarray(d.get("im"), dtype=float) if d.get("im") is not None else np.zeros_like(re)
    if np.abs(im).max() == 0.0:
        return re
    return re + 1j * im


def dump_problem(prob: SdpProblem, path: str) -> None:
    """Self-describing JSON dump for regression capture."""
    data = {
        "blocks": list(prob.blocks),
        "sense": prob.sense,
        "objective": [_mat_to_json(c) for c in prob.objective],
        "constraints": [
            {"ops": [_mat_to_json(a) for a in ops], "rhs": float(np.real(rhs))}
            for ops, rhs in prob.constraints
        ],
    }
    with open(path, "w") as fh:
        json.dump(data, fh)


def load_problem(path: str) -> SdpProblem:
    with open(path) as fh:
        data = json.load(fh)
    return SdpProblem(
        blocks=[int(b) for b in data["blocks"]],
        objective=[_mat_from_json(c) for c in data["objective"]],
        constraints=[
            ([_mat_from_json(a) for a in con["ops"]], float(con["rhs"]))
            for con in data["constraints"]
        ],
        sense=data.get("sense", "min"),
    )
