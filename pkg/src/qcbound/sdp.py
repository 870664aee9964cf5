"""Dense semidefinite programming layer for the bound computations.

Problems are stated over Hermitian block variables in the standard form

    min  sum_k tr(C_k X_k)   s.t.   sum_k tr(A_ik X_k) = b_i,   X_k >= 0,

with every data matrix given as sparse Hermitian triplets.  Solving goes
through a real symmetric embedding and a dense primal-dual interior-point
cone solver; the embedded program is passed to the solver in inequality
form with the equality multipliers as its variables, so our primal matrix
is recovered from the solver's dual slack variable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from cvxopt import matrix as cvx_matrix
from cvxopt import solvers as cvx_solvers
from cvxopt import spmatrix as cvx_spmatrix

from . import linalg
from .channels import ChoiMatrix
from .linalg import LinalgError
from .reports import BoundReport
from .states import DensityMatrix

# Hermitian sparse triplets: (row, col, value), with both mirror entries
# present for off-diagonal terms.
Triplets = list[tuple[int, int, complex]]


class SdpError(RuntimeError):
    """Solver breakdown or an infeasible problem where one was not expected."""


@dataclass(frozen=True)
class SdpProblem:
    blocks: tuple[int, ...]
    objective: dict[int, Triplets]
    constraints: list[tuple[dict[int, Triplets], float]]
    sense: str = "min"

    def __post_init__(self):
        if self.sense != "min":
            raise LinalgError("only minimization problems are supported")
        object.__setattr__(self, "blocks", tuple(int(b) for b in self.blocks))


@dataclass(frozen=True)
class SdpSolution:
    primal_value: float
    dual_value: float
    primal_blocks: tuple[np.ndarray, ...]  # Hermitian, one per block
    dual_vector: np.ndarray
    gap: float
    iterations: int
    status: str  # optimal | infeasible | max_iter


def triplets_from_dense(a: np.ndarray, tol: float = 0.0) -> Triplets:
    a = linalg.as_matrix(a)
    out: Triplets = []
    for i in range(a.shape[0]):
        for j in range(a.shape[1]):
            v = complex(a[i, j])
            if abs(v) > tol:
                out.append((i, j, v))
    return out


def dense_from_triplets(tr: Triplets, n: int) -> np.ndarray:
    m = np.zeros((n, n), dtype=complex)
    for i, j, v in tr:
        m[i, j] += v
    return m


def identity_triplets(n: int, scale: complex = 1.0) -> Triplets:
    return [(i, i, scale) for i in range(n)]


def negate(tr: Triplets) -> Triplets:
    return [(i, j, -v) for i, j, v in tr]


def tensor_identity(tr: Triplets, d_right: int) -> Triplets:
    """F -> F (x) 1_{d_right} on triplets."""
    return [(i * d_right + k, j * d_right + k, v)
            for i, j, v in tr for k in range(d_right)]


def transpose_sub(tr: Triplets, dims, sys) -> Triplets:
    """Partial transpose of a triplet matrix over the given tensor factors."""
    dims = tuple(int(d) for d in dims)
    sys = set(int(s) for s in sys)
    strides = np.cumprod((dims + (1,))[::-1])[::-1][1:]

    def split(idx):
        return [(idx // strides[k]) % dims[k] for k in range(len(dims))]

    def join(parts):
        return int(sum(p * s for p, s in zip(parts, strides)))

    out: Triplets = []
    for i, j, v in tr:
        pi, pj = split(i), split(j)
        for s in sys:
            pi[s], pj[s] = pj[s], pi[s]
        out.append((join(pi), join(pj), v))
    return out


def trace_with(tr: Triplets, dense: np.ndarray) -> complex:
    """tr(E M) for E in triplets, M dense."""
    return sum(v * dense[j, i] for i, j, v in tr)


def herm_basis(n: int):
    """Orthogonal (unnormalized) Hermitian basis of n x n, n^2 elements."""
    basis: list[Triplets] = []
    for a in range(n):
        basis.append([(a, a, 1.0)])
    for a in range(n):
        for b in range(a + 1, n):
            basis.append([(a, b, 1.0), (b, a, 1.0)])
            basis.append([(a, b, 1.0j), (b, a, -1.0j)])
    return basis


def traceless_herm_basis(n: int):
    """Hermitian traceless basis, n^2 - 1 elements."""
    basis: list[Triplets] = []
    for a in range(n - 1):
        basis.append([(a, a, 1.0), (a + 1, a + 1, -1.0)])
    for a in range(n):
        for b in range(a + 1, n):
            basis.append([(a, b, 1.0), (b, a, 1.0)])
            basis.append([(a, b, 1.0j), (b, a, -1.0j)])
    return basis


def embed_hermitian(h: np.ndarray) -> np.ndarray:
    """Real symmetric embedding [[Re h, -Im h], [Im h, Re h]]."""
    h = linalg.hermitize(linalg.as_matrix(h))
    return np.block([[h.real, -h.imag], [h.imag, h.real]])


def _embedded_entries(tr: Triplets, m: int):
    """Entries of emb(A)/2 for a Hermitian triplet matrix of size m."""
    for i, j, v in tr:
        re, im = v.real / 2.0, v.imag / 2.0
        if re != 0.0:
            yield i, j, re
            yield i + m, j + m, re
        if im != 0.0:
            yield i, j + m, -im
            yield i + m, j, im


def _unembed(z: np.ndarray, m: int) -> np.ndarray:
    re = (z[:m, :m] + z[m:, m:]) / 2.0
    im = (z[m:, :m] - z[:m, m:]) / 2.0
    return linalg.hermitize(re + 1j * im, tol=np.inf)


def solve(problem: SdpProblem, max_iters: int = 200) -> SdpSolution:
    """Solve to relative gap 1e-7; deterministic for fixed problem."""
    p = len(problem.constraints)
    if p == 0:
        raise LinalgError("problem has no constraints")
    b = np.array([float(bi) for _, bi in problem.constraints])
    gs, hs = [], []
    for k, m in enumerate(problem.blocks):
        big = 2 * m
        vals, rows, cols = [], [], []
        for idx, (amats, _) in enumerate(problem.constraints):
            for r, c, v in _embedded_entries(amats.get(k, []), m):
                vals.append(v)
                rows.append(r + c * big)  # column-major vec of the block
                cols.append(idx)
        gs.append(cvx_spmatrix(vals, rows, cols, size=(big * big, p)))
        c_dense = np.zeros((big, big))
        for r, c, v in _embedded_entries(problem.objective.get(k, []), m):
            c_dense[r, c] += v
        hs.append(cvx_matrix(c_dense))

    saved = dict(cvx_solvers.options)
    cvx_solvers.options.update({
        "show_progress": False,
        "maxiters": int(max_iters),
        "abstol": 1e-8,
        "reltol": 1e-7,
        "feastol": 1e-8,
    })
    try:
        sol = cvx_solvers.sdp(cvx_matrix(-b), Gs=gs, hs=hs)
    except (ValueError, ArithmeticError) as exc:
        raise SdpError(f"solver breakdown: {exc}") from exc
    finally:
        cvx_solvers.options.clear()
        cvx_solvers.options.update(saved)

    status = {"optimal": "optimal",
              "primal infeasible": "infeasible",
              "dual infeasible": "infeasible"}.get(sol["status"], "max_iter")
    iterations = int(sol.get("iterations", 0) or 0)
    if status != "optimal":
        nan = float("nan")
        return SdpSolution(nan, nan, tuple(), np.zeros(p), nan, iterations, status)

    y = np.array(sol["x"]).reshape(-1)
    primal_blocks = []
    primal_value = 0.0
    for k, m in enumerate(problem.blocks):
        z = np.array(sol["zs"][k]).reshape(2 * m, 2 * m)
        x = _unembed(z, m)
        primal_blocks.append(x)
        primal_value += float(trace_with(problem.objective.get(k, []), x).real)
    dual_value = float(b @ y)
    gap = abs(primal_value - dual_value)
    return SdpSolution(primal_value, dual_value, tuple(primal_blocks), y,
                       gap, iterations, "optimal")


def _require_optimal(sol: SdpSolution, what: str) -> None:
    if sol.status != "optimal":
        raise SdpError(f"{what}: solver status {sol.status}")


def _diag(sol: SdpSolution) -> dict:
    return {"status": sol.status, "iterations": sol.iterations, "gap": sol.gap,
            "primal": sol.primal_value, "dual": sol.dual_value}


def trace_norm_sdp(h: np.ndarray) -> tuple[float, SdpSolution]:
    """||H||_1 of a Hermitian matrix as min tr(P+Q), P-Q = H, P,Q >= 0."""
    h = linalg.hermitize(linalg.as_matrix(h))
    n = h.shape[0]
    constraints = []
    for e in herm_basis(n):
        rhs = float(trace_with(e, h).real)
        constraints.append(({0: e, 1: negate(e)}, rhs))
    prob = SdpProblem((n, n), {0: identity_triplets(n), 1: identity_triplets(n)},
                      constraints)
    sol = solve(prob)
    _require_optimal(sol, "trace-norm SDP")
    return sol.primal_value, sol


def _ppt_min_trace(rho_mat: np.ndarray, dims, tsys, marginal_dims=None):
    """min tr(M): M >= rho, M^{T_sys} >= 0 [, traceless_A(tr_B M) = 0].

    Variables are S1 = M - rho and S2 = M^{T_sys}, linked by a full
    Hermitian basis of equality constraints.
    """
    n = rho_mat.shape[0]
    rho_pt = linalg.partial_transpose(rho_mat, dims, tsys)
    constraints = []
    for e in herm_basis(n):
        e_pt = transpose_sub(e, dims, tsys)
        rhs = float(trace_with(e, rho_pt).real)
        constraints.append(({0: negate(e_pt), 1: e}, rhs))
    if marginal_dims is not None:
        da, db = marginal_dims
        for f in traceless_herm_basis(da):
            constraints.append(({0: tensor_identity(f, db)}, 0.0))
    prob = SdpProblem((n, n), {0: identity_triplets(n)}, constraints)
    sol = solve(prob)
    return sol


def dmax_over_ppt(rho: DensityMatrix, transpose_sys) -> BoundReport:
    """Lower bound on E_max(rho) from the PPT relaxation of the separable set."""
    sol = _ppt_min_trace(rho.mat, rho.dims, list(transpose_sys))
    _require_optimal(sol, "dmax_over_ppt")
    total = sol.primal_value + 1.0
    if total <= 0.0:
        raise SdpError(f"dmax_over_ppt: nonsensical optimum {sol.primal_value}")
    bits = max(float(np.log2(total)), 0.0)
    cert = sol.primal_blocks[0] + rho.mat
    return BoundReport(bound="dmax-over-ppt", targets="E_max", direction="lower",
                       bits=bits, method="sdp", relaxation="ppt",
                       certificate=cert, diagnostics=_diag(sol))


def bmax_ppt(c: ChoiMatrix) -> BoundReport:
    """Lower bound on B_max(T): PPT relaxation with the channel marginal kept."""
    sol = _ppt_min_trace(c.mat, (c.d_in, c.d_out), [1],
                         marginal_dims=(c.d_in, c.d_out))
    _require_optimal(sol, "bmax_ppt")
    bits = max(float(np.log2(max(sol.primal_value + 1.0, 1e-12))), 0.0)
    cert = sol.primal_blocks[0] + c.mat
    return BoundReport(bound="bmax-ppt", targets="B_max", direction="lower",
                       bits=bits, method="sdp", relaxation="ppt",
                       certificate=cert, diagnostics=_diag(sol))


def diamond_norm_hermitian(j: np.ndarray, d_in: int, d_out: int) -> tuple[float, SdpSolution]:
    """Diamond norm of the Hermiticity-preserving map with unnormalized Choi J.

    min ||tr_out Y||_inf over Y >= J, Y >= -J; blocks (Qp, Qm, R, t) with
    Qp = Y - J, Qm = Y + J, R = t*1_A - tr_out(Y).
    """
    j = linalg.hermitize(linalg.as_matrix(j))
    n = d_in * d_out
    if j.shape != (n, n):
        raise LinalgError("Choi shape does not match declared dimensions")
    constraints = []
    for e in herm_basis(n):
        rhs = 2.0 * float(trace_with(e, j).real)
        constraints.append(({0: negate(e), 1: e}, rhs))
    for g in herm_basis(d_in):
        g_full = tensor_identity(g, d_out)
        tr_g = float(sum(v.real for i, jj, v in g if i == jj))
        amats = {0: g_full, 2: g}
        if tr_g != 0.0:
            amats[3] = [(0, 0, -tr_g)]
        rhs = -float(trace_with(g_full, j).real)
        constraints.append((amats, rhs))
    prob = SdpProblem((n, n, d_in, 1), {3: [(0, 0, 1.0)]}, constraints)
    sol = solve(prob)
    _require_optimal(sol, "diamond-norm SDP")
    return sol.primal_value, sol


def diamond_norm(c: ChoiMatrix) -> BoundReport:
    value, sol = diamond_norm_hermitian(c.unnormalized(), c.d_in, c.d_out)
    return BoundReport(bound="diamond-norm-log", targets="diamond_norm",
                       direction="exact", bits=max(float(np.log2(value)), 0.0),
                       method="sdp",
                       diagnostics={**_diag(sol), "diamond_norm": value})
