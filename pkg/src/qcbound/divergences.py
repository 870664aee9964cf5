"""Sandwiched Renyi divergence family with exact support handling.

All values are in bits (log base 2).  Infinite values (support violations)
are a tagged sentinel, never a float infinity inside arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .linalg import LinalgError, dagger
from .states import DensityMatrix

SUPPORT_VIOLATION_TOL = 1e-9
DMAX_XVAL_TOL = 1e-8


@dataclass(frozen=True)
class DivergenceValue:
    """Divergence in bits, or the +infinity sentinel (bits=None)."""

    alpha: float
    bits: float | None

    @property
    def finite(self) -> bool:
        return self.bits is not None

    def as_float(self) -> float:
        return math.inf if self.bits is None else self.bits

    def to_dict(self) -> dict:
        return {"alpha": None if math.isinf(self.alpha) else self.alpha,
                "bits": self.bits, "finite": self.finite}


def _check_pair(rho: DensityMatrix, sigma: DensityMatrix) -> None:
    if rho.dim != sigma.dim:
        raise LinalgError(f"dimension mismatch: {rho.dim} vs {sigma.dim}")


def support_violated(rho: DensityMatrix, sigma: DensityMatrix) -> bool:
    """True when supp(rho) is not contained in supp(sigma)."""
    p = linalg.support_projector(sigma.mat)
    q = np.eye(rho.dim) - p
    return linalg.op_norm(q @ rho.mat @ q) > SUPPORT_VIOLATION_TOL


def relative_entropy(rho: DensityMatrix, sigma: DensityMatrix) -> DivergenceValue:
    """D(rho||sigma) = tr[rho (log rho - log sigma)] in bits."""
    _check_pair(rho, sigma)
    if support_violated(rho, sigma):
        return DivergenceValue(1.0, None)
    vr, _ = linalg.herm_eig(rho.mat)
    vs, ws = linalg.herm_eig(sigma.mat)
    cut_r = linalg.SUPPORT_CUTOFF * max(vr[-1], 0.0)
    ent = float(sum(lam * np.log2(lam) for lam in vr if lam > cut_r))
    cut_s = linalg.SUPPORT_CUTOFF * max(vs[-1], 0.0)
    cross = 0.0
    for k in range(sigma.dim):
        if vs[k] > cut_s:
            w = ws[:, k]
            cross += float((dagger(w.reshape(-1, 1)) @ rho.mat @ w.reshape(-1, 1))[0, 0].real) \
                * np.log2(vs[k])
    return DivergenceValue(1.0, ent - cross)


def sandwiched_renyi(rho: DensityMatrix, sigma: DensityMatrix, alpha: float) -> DivergenceValue:
    """D_alpha via (1/(alpha-1)) log2 tr[(s^c rho s^c)^alpha], c = (1-alpha)/(2 alpha)."""
    _check_pair(rho, sigma)
    if not (1.0 < alpha < math.inf):
        raise LinalgError("alpha must lie in (1, inf); use relative_entropy or d_max")
    if support_violated(rho, sigma):
        return DivergenceValue(alpha, None)
    c = (1.0 - alpha) / (2.0 * alpha)
    s = linalg.mat_power(sigma.mat, c)
    m = s @ rho.mat @ s
    vals, _ = linalg.herm_eig(m)
    vals = np.clip(vals, 0.0, None)
    tr = float(np.sum(vals ** alpha))
    return DivergenceValue(alpha, float(np.log2(tr) / (alpha - 1.0)))


def _dmax_operator_characterization(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    s = linalg.mat_power(sigma.mat, -0.5)
    return float(np.log2(linalg.op_norm(s @ rho.mat @ s)))


def _dmax_dominating_factor(rho: DensityMatrix, sigma: DensityMatrix, guess: float) -> float:
    """inf{lam : rho <= 2^lam sigma}, by bisection on the support of sigma."""
    vals, vecs = linalg.herm_eig(sigma.mat)
    cut = linalg.SUPPORT_CUTOFF * max(vals[-1], 0.0)
    v = vecs[:, vals > cut]

    def min_eig(lam: float) -> float:
        gap = dagger(v) @ (2.0 ** lam * sigma.mat - rho.mat) @ v
        return float(np.linalg.eigvalsh(linalg.hermitize(gap, tol=1e-8))[0])

    lo, hi = guess - 1.0, guess + 1.0
    while min_eig(lo) > 0 and lo > guess - 64:
        lo -= 1.0
    while min_eig(hi) < 0 and hi < guess + 64:
        hi += 1.0
    for _ in range(64):
        mid = 0.5 * (lo + hi)
        if min_eig(mid) < 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def d_max(rho: DensityMatrix, sigma: DensityMatrix) -> DivergenceValue:
    """Max-relative entropy, cross-validated between its two characterizations."""
    _check_pair(rho, sigma)
    if support_violated(rho, sigma):
        return DivergenceValue(math.inf, None)
    lam1 = _dmax_operator_characterization(rho, sigma)
    lam2 = _dmax_dominating_factor(rho, sigma, lam1)
    if abs(lam1 - lam2) > DMAX_XVAL_TOL:
        raise LinalgError(
            f"d_max characterizations disagree: {lam1:.12f} vs {lam2:.12f}"
        )
    return DivergenceValue(math.inf, lam1)


def divergence(rho: DensityMatrix, sigma: DensityMatrix, alpha: float) -> DivergenceValue:
    """Dispatch on alpha: 1 -> relative entropy, inf -> d_max, else sandwiched."""
    if alpha == 1.0:
        return relative_entropy(rho, sigma)
    if math.isinf(alpha):
        return d_max(rho, sigma)
    return sandwiched_renyi(rho, sigma, alpha)


def gamma_map(sigma: DensityMatrix, x: np.ndarray, inverse: bool = False) -> np.ndarray:
    """Gamma_sigma(X) = sigma^(1/2) X sigma^(1/2); pseudo-inverse on the support."""
    p = -0.5 if inverse else 0.5
    s = linalg.mat_power(sigma.mat, p)
    return s @ linalg.as_matrix(x) @ s


def weighted_norm(x: np.ndarray, sigma: DensityMatrix, alpha: float) -> float:
    """||X||_{alpha, sigma} = tr[|sigma^(1/2a) X sigma^(1/2a)|^alpha]^(1/alpha)."""
    if alpha < 1:
        raise LinalgError("alpha must be >= 1")
    s = linalg.mat_power(sigma.mat, 1.0 / (2.0 * alpha))
    m = s @ linalg.as_matrix(x) @ s
    sv = np.linalg.svd(m, compute_uv=False)
    return float(np.sum(sv ** alpha) ** (1.0 / alpha))
