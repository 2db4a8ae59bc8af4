"""Bundled log-barrier interior-point solver for the binary PPT SDP.

Solves, for a Hermitian matrix X on C^{dA} (x) C^{dB},

    maximize    Re Tr[M X]
    subject to  0 <= M <= I,   0 <= M^{T_B} <= I,

where T_B transposes the B factor. The coordinate space is the real
vector space of Hermitian matrices (or real symmetric matrices when X
is real, which halves the work); the barrier is -log det over the four
affine slack blocks M, I-M, M^{T_B}, I-M^{T_B}, with total barrier
parameter nu = 4D. Path following uses damped Newton steps with exact
Hessians assembled through the identity

    Tr[G E G E'] = sum_{abcd} G[d,a] G[b,c] E[a,b] E'[c,d],

so each block contributes an order-D^4 tensor contracted against a
sparse basis map; partial transposition enters as an axis permutation
of that tensor. At an (approximately) centered point the slack inverses
scaled by 1/t form a feasible dual, certifying a duality gap of
(nu + sqrt(nu) l/(1-l))/t with l the Newton decrement, which is what
``SDPResult.gap`` reports.

No external solver is used; numpy/scipy provide dense linear algebra
only. Intended for total dimension D <= 64.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.sparse

from .errors import NumericError, SolverError
from .tolerances import TOL

MAX_TOTAL_DIM = 64


@dataclass(frozen=True)
class SDPResult:
    """Certified outcome of one solve.

    ``value`` = primal + gap is a guaranteed upper bound on the true
    optimum; ``primal`` is attained by the feasible ``optimizer``.
    """

    value: float
    primal: float
    gap: float
    newton_steps: int
    t_final: float
    optimizer: np.ndarray


class _Basis:
    """Orthonormal real coordinates for Hermitian (or real symmetric)
    matrices, with the sparse map L from coordinates to vec(M)."""

    def __init__(self, dim: int, complex_field: bool):
        self.dim = dim
        self.complex_field = complex_field
        iu, ju = np.triu_indices(dim, 1)
        rt = 1.0 / np.sqrt(2.0)
        rows = [np.arange(dim) * dim + np.arange(dim)]
        cols = [np.arange(dim)]
        vals = [np.ones(dim, dtype=np.complex128 if complex_field else np.float64)]
        npairs = iu.size
        k0 = dim
        # symmetric off-diagonal elements (E = (e_ij + e_ji)/sqrt(2))
        rows += [iu * dim + ju, ju * dim + iu]
        cols += [k0 + np.arange(npairs)] * 2
        vals += [np.full(npairs, rt), np.full(npairs, rt)]
        n = dim + npairs
        if complex_field:
            # antisymmetric elements (E = i(e_ij - e_ji)/sqrt(2))
            k1 = dim + npairs
            rows += [iu * dim + ju, ju * dim + iu]
            cols += [k1 + np.arange(npairs)] * 2
            vals += [np.full(npairs, 1j * rt), np.full(npairs, -1j * rt)]
            n += npairs
        self.n = n
        data = np.concatenate([np.asarray(v, dtype=np.complex128 if complex_field
                                          else np.float64) for v in vals])
        self.L = scipy.sparse.csr_matrix(
            (data, (np.concatenate(rows), np.concatenate(cols))),
            shape=(dim * dim, n))
        self.L_adj = self.L.conj().transpose().tocsr()
        self.L_t = self.L.transpose().tocsr()

    def mat(self, x: np.ndarray) -> np.ndarray:
        return (self.L @ x).reshape(self.dim, self.dim)

    def coords(self, g: np.ndarray) -> np.ndarray:
        """Real coordinates of a Hermitian matrix (also the adjoint map
        used for gradients)."""
        return np.real(self.L_adj @ g.reshape(-1))

    def hessian(self, t_mat: np.ndarray) -> np.ndarray:
        right = self.L_t @ t_mat.T  # (n, D^2)
        h = self.L_t @ right.T      # (n, n)
        return np.ascontiguousarray(h.real) if self.complex_field else h


def _pt_axes_tensor(t4: np.ndarray, da: int, db: int) -> np.ndarray:
    """Pull the order-4 Hessian tensor of a block back through the
    partial transpose: swap the B column indices pairwise."""
    d = da * db
    t8 = t4.reshape(da, db, da, db, da, db, da, db)
    return t8.transpose(0, 3, 2, 1, 4, 7, 6, 5).reshape(d, d, d, d)


def _pt_mat(m: np.ndarray, da: int, db: int) -> np.ndarray:
    d = da * db
    return (m.reshape(da, db, da, db)
            .transpose(0, 3, 2, 1)
            .reshape(d, d))


def _chol_blocks(m: np.ndarray, mt: np.ndarray, eye: np.ndarray):
    """Cholesky factors of the four slack blocks, or None if any is not
    positive definite."""
    out = []
    for s in (m, eye - m, mt, eye - mt):
        try:
            out.append(np.linalg.cholesky(s))
        except np.linalg.LinAlgError:
            return None
    return out


def _logdet_from_chol(chols) -> float:
    return 2.0 * sum(float(np.log(np.diag(c).real).sum()) for c in chols)


def solve_ppt_two_outcome(x_mat: np.ndarray, dim_a: int, dim_b: int,
                          gap_tol: float = TOL.sdp_gap,
                          mu: float = 20.0,
                          max_newton: int = 800) -> SDPResult:
    """Run the path-following solve. Raises SolverError on dimension
    overflow or non-convergence (carrying the best value and gap seen)."""
    d = dim_a * dim_b
    x_mat = np.asarray(x_mat, dtype=np.complex128)
    if x_mat.shape != (d, d):
        raise SolverError(f"objective shape {x_mat.shape} != ({d}, {d})")
    if d > MAX_TOTAL_DIM:
        raise SolverError(
            f"total dimension {d} exceeds the bundled solver limit {MAX_TOTAL_DIM}")
    if float(np.abs(x_mat - x_mat.conj().T).max()) > TOL.hermitian * max(
            1.0, float(np.abs(x_mat).max())):
        raise NumericError("SDP objective matrix must be Hermitian")

    complex_field = float(np.abs(x_mat.imag).max()) > 1e-13
    if not complex_field:
        x_work = np.ascontiguousarray(x_mat.real)
    else:
        x_work = x_mat
    basis = _Basis(d, complex_field)
    eye = np.eye(d, dtype=x_work.dtype)
    c_obj = basis.coords(x_work)

    nu = 4.0 * d
    # the certificate below needs only decrement <= lam_stop at t_final,
    # so t_final is sized for that lambda rather than perfect centering
    lam_stop = 0.1
    t_final = (nu + np.sqrt(nu) * lam_stop / (1.0 - lam_stop)) / gap_tol
    t = 1.0
    x = basis.coords(eye / 2.0)
    steps = 0
    decrement = np.inf

    def f_value(xv: np.ndarray, tv: float):
        m = basis.mat(xv)
        mt = _pt_mat(m, dim_a, dim_b)
        chols = _chol_blocks(m, mt, eye)
        if chols is None:
            return None
        return -tv * float(c_obj @ xv) - _logdet_from_chol(chols), m, mt, chols

    while True:
        # center at the current t
        for _ in range(100):
            cur = f_value(x, t)
            if cur is None:
                raise SolverError("iterate left the feasible cone",
                                  value=None, gap=None)
            f_cur, m, mt, chols = cur
            gs = []
            for c in chols:
                inv_c = scipy.linalg.solve_triangular(c, eye, lower=True,
                                                      check_finite=False)
                gs.append(inv_c.conj().T @ inv_c)
            g1, g2, g3, g4 = gs
            grad_mat = (-t) * x_work + (-g1 + g2
                                        - _pt_mat(g3, dim_a, dim_b)
                                        + _pt_mat(g4, dim_a, dim_b))
            grad = basis.coords(grad_mat)
            t4 = np.einsum("da,bc->abcd", g1, g1)
            t4 += np.einsum("da,bc->abcd", g2, g2)
            t34 = np.einsum("da,bc->abcd", g3, g3)
            t34 += np.einsum("da,bc->abcd", g4, g4)
            t4 += _pt_axes_tensor(t34, dim_a, dim_b)
            del t34
            hess = basis.hessian(t4.reshape(d * d, d * d))
            del t4
            step_dir = None
            ridge = 0.0
            for _ in range(4):
                try:
                    cf = scipy.linalg.cho_factor(
                        hess + ridge * np.eye(basis.n), lower=True,
                        overwrite_a=True, check_finite=False)
                    step_dir = scipy.linalg.cho_solve(cf, -grad,
                                                      check_finite=False)
                    break
                except np.linalg.LinAlgError:
                    ridge = max(ridge * 100.0, 1e-10 * float(np.trace(hess)) / basis.n)
            if step_dir is None:
                raise SolverError("Newton system factorization failed",
                                  value=float(c_obj @ x), gap=nu / t)
            lam2 = max(float(-grad @ step_dir), 0.0)
            decrement = np.sqrt(lam2)
            if decrement <= lam_stop:
                break
            scale = 1.0 if decrement <= 0.25 else 1.0 / (1.0 + decrement)
            accepted = False
            while scale > 1e-14:
                trial = x + scale * step_dir
                val = f_value(trial, t)
                if val is not None and val[0] <= f_cur - 0.25 * scale * lam2:
                    x = trial
                    accepted = True
                    break
                scale *= 0.5
            if not accepted:
                # at the numerical floor of centering accuracy; the
                # decrement-based certificate below stays valid
                break
            steps += 1
            if steps > max_newton:
                raise SolverError(
                    f"no convergence within {max_newton} Newton steps",
                    value=float(c_obj @ x), gap=nu / t)
        if t >= t_final:
            break
        t = min(t * mu, t_final)

    primal = float(c_obj @ x)
    lam = min(float(decrement), 0.9)
    gap = (nu + np.sqrt(nu) * lam / (1.0 - lam)) / t
    m_final = basis.mat(x)
    return SDPResult(value=primal + gap, primal=primal, gap=gap,
                     newton_steps=steps, t_final=t,
                     optimizer=np.asarray(m_final, dtype=np.complex128))
