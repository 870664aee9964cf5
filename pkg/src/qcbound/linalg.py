"""Dense complex linear algebra primitives shared by all other modules.

All matrices are plain ``numpy.ndarray`` objects with dtype complex128 and
shape ``(rows, cols)``.  Multipartite operators carry an explicit list of
subsystem dimensions; subsystems are indexed 0-based.
"""

from __future__ import annotations

import numpy as np

# Eigenvalues below SUPPORT_CUTOFF * lambda_max count as zero for all
# pseudo-inverse / support operations.  This sits below typical dense
# eigensolver accuracy at the matrix sizes used here.
SUPPORT_CUTOFF = 1e-10

HERM_TOL = 1e-9


class LinalgError(ValueError):
    """Raised on shape mismatches and violated numerical preconditions."""


def as_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise LinalgError(f"expected a 2-d array, got shape {a.shape}")
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise LinalgError("matrix contains NaN or Inf entries")
    return a


def dagger(m: np.ndarray) -> np.ndarray:
    return m.conj().T


def frobenius(m: np.ndarray) -> float:
    return float(np.linalg.norm(m))


def is_hermitian(m: np.ndarray, tol: float = HERM_TOL) -> bool:
    return frobenius(m - dagger(m)) <= tol * max(1.0, frobenius(m))


def hermitize(m: np.ndarray, tol: float = HERM_TOL) -> np.ndarray:
    """Symmetrize (m + m†)/2 after checking m is Hermitian within tol."""
    if not is_hermitian(m, tol):
        raise LinalgError("matrix is not Hermitian within tolerance")
    return (m + dagger(m)) / 2


def kron(a, b) -> np.ndarray:
    return np.kron(as_matrix(a), as_matrix(b))


def _check_dims(m: np.ndarray, dims) -> tuple[int, ...]:
    dims = tuple(int(d) for d in dims)
    n = int(np.prod(dims))
    if m.shape != (n, n):
        raise LinalgError(f"dims {dims} incompatible with matrix shape {m.shape}")
    return dims


def partial_trace(m, dims, keep) -> np.ndarray:
    """Marginal of a multipartite operator on the subsystems in `keep`.

    Kept subsystems stay in their original relative order.
    """
    m = as_matrix(m)
    dims = _check_dims(m, dims)
    keep = sorted(set(int(k) for k in keep))
    if any(k < 0 or k >= len(dims) for k in keep):
        raise LinalgError(f"keep indices {keep} out of range for {len(dims)} subsystems")
    t = m.reshape(dims + dims)
    n_sys = len(dims)
    traced = [i for i in range(n_sys) if i not in keep]
    for offset, i in enumerate(traced):
        ax = i - offset  # earlier traces shrink the index space
        t = np.trace(t, axis1=ax, axis2=ax + n_sys - offset)
    d_keep = int(np.prod([dims[k] for k in keep])) if keep else 1
    return t.reshape(d_keep, d_keep)


def partial_transpose(m, dims, sys) -> np.ndarray:
    """Transpose the designated tensor factors in the computational basis."""
    m = as_matrix(m)
    dims = _check_dims(m, dims)
    sys = set(int(s) for s in sys)
    if any(s < 0 or s >= len(dims) for s in sys):
        raise LinalgError(f"sys indices {sys} out of range for {len(dims)} subsystems")
    n_sys = len(dims)
    t = m.reshape(dims + dims)
    perm = list(range(2 * n_sys))
    for s in sys:
        perm[s], perm[s + n_sys] = perm[s + n_sys], perm[s]
    n = m.shape[0]
    return t.transpose(perm).reshape(n, n)


def permute_subsystems(m, dims, perm) -> np.ndarray:
    """Reorder tensor factors so factor perm[i] of the input becomes factor i."""
    m = as_matrix(m)
    dims = _check_dims(m, dims)
    perm = [int(p) for p in perm]
    if sorted(perm) != list(range(len(dims))):
        raise LinalgError(f"{perm} is not a permutation of {len(dims)} subsystems")
    n_sys = len(dims)
    t = m.reshape(dims + dims)
    axes = perm + [p + n_sys for p in perm]
    n = m.shape[0]
    return t.transpose(axes).reshape(n, n)


def herm_eig(m) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix.

    Returns (eigenvalues ascending, eigenvector matrix with orthonormal
    columns).  Input is symmetrized before the solve to remove round-off
    drift from repeated products.
    """
    m = hermitize(as_matrix(m))
    vals, vecs = np.linalg.eigh(m)
    return vals, vecs


def _psd_eig(m, tol: float = HERM_TOL) -> tuple[np.ndarray, np.ndarray]:
    vals, vecs = herm_eig(m)
    lam_max = max(vals[-1], 0.0)
    if vals[0] < -tol * max(1.0, lam_max):
        raise LinalgError(f"matrix is not PSD: min eigenvalue {vals[0]:.3e}")
    return np.clip(vals, 0.0, None), vecs


def mat_power(m, p: float, support_cutoff: float = SUPPORT_CUTOFF) -> np.ndarray:
    """Fractional power of a PSD matrix.

    Eigenvalues at or below support_cutoff * lambda_max are treated as exact
    zeros; negative powers act as Moore-Penrose pseudo-inverse powers on the
    support.
    """
    vals, vecs = _psd_eig(m)
    lam_max = vals[-1] if len(vals) else 0.0
    cut = support_cutoff * lam_max
    on_support = vals > cut
    out = np.zeros_like(vals)
    out[on_support] = vals[on_support] ** p
    return (vecs * out) @ dagger(vecs)


def support_projector(m, cutoff: float = SUPPORT_CUTOFF) -> np.ndarray:
    """Projector onto eigenspaces with eigenvalue > cutoff * lambda_max."""
    vals, vecs = _psd_eig(m)
    lam_max = vals[-1] if len(vals) else 0.0
    sel = vals > cutoff * lam_max
    v = vecs[:, sel]
    return v @ dagger(v)


def trace_norm(m) -> float:
    """Sum of |eigenvalues| for Hermitian input, singular values otherwise."""
    m = as_matrix(m)
    if is_hermitian(m):
        return float(np.sum(np.abs(np.linalg.eigvalsh(hermitize(m)))))
    return float(np.sum(np.linalg.svd(m, compute_uv=False)))


def op_norm(m) -> float:
    m = as_matrix(m)
    if is_hermitian(m):
        return float(np.max(np.abs(np.linalg.eigvalsh(hermitize(m)))))
    return float(np.linalg.svd(m, compute_uv=False)[0])


def sqrtm_psd(m) -> np.ndarray:
    return mat_power(m, 0.5)


def fidelity(rho, sigma) -> float:
    """F(rho, sigma) = ||sqrt(rho) sqrt(sigma)||_1^2, clipped to [0, 1]."""
    a = sqrtm_psd(rho)
    b = sqrtm_psd(sigma)
    val = float(np.sum(np.linalg.svd(a @ b, compute_uv=False))) ** 2
    if val > 1.0 + 1e-9:
        raise LinalgError(f"fidelity {val} exceeds 1 beyond tolerance")
    return min(max(val, 0.0), 1.0)
