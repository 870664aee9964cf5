"""Constructors and validators for the quantum states used by the bounds.

Includes the flower states, the approximate private-bit states, private
states with explicit twisting unitaries, privacy tests, and seeded random
state generators for property sweeps.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .linalg import LinalgError, dagger, kron

STATE_TOL = 1e-9


@dataclass(frozen=True)
class DensityMatrix:
    """Trace-one PSD matrix with an ordered list of subsystem dimensions."""

    mat: np.ndarray
    dims: tuple[int, ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        m = linalg.as_matrix(self.mat)
        object.__setattr__(self, "mat", m)
        dims = tuple(int(d) for d in self.dims)
        object.__setattr__(self, "dims", dims)
        if self.labels is not None:
            labels = tuple(self.labels)
            if len(labels) != len(dims):
                raise LinalgError("labels and dims length mismatch")
            object.__setattr__(self, "labels", labels)
        n = int(np.prod(dims))
        if m.shape != (n, n):
            raise LinalgError(f"dims {dims} incompatible with shape {m.shape}")
        if not linalg.is_hermitian(m, STATE_TOL):
            raise LinalgError("density matrix is not Hermitian")
        if abs(np.trace(m).real - 1.0) > STATE_TOL or abs(np.trace(m).imag) > STATE_TOL:
            raise LinalgError(f"trace {np.trace(m)} != 1")
        min_eig = float(np.linalg.eigvalsh(linalg.hermitize(m, STATE_TOL))[0])
        if min_eig < -STATE_TOL:
            raise LinalgError(f"density matrix not PSD: min eigenvalue {min_eig:.3e}")

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    def marginal(self, keep) -> "DensityMatrix":
        keep = sorted(set(int(k) for k in keep))
        mat = linalg.partial_trace(self.mat, self.dims, keep)
        dims = tuple(self.dims[k] for k in keep)
        labels = tuple(self.labels[k] for k in keep) if self.labels else None
        return DensityMatrix(mat, dims, labels)

    def permuted(self, perm) -> "DensityMatrix":
        mat = linalg.permute_subsystems(self.mat, self.dims, perm)
        dims = tuple(self.dims[p] for p in perm)
        labels = tuple(self.labels[p] for p in perm) if self.labels else None
        return DensityMatrix(mat, dims, labels)


def _projector(vec: np.ndarray) -> np.ndarray:
    v = vec.reshape(-1, 1)
    return v @ dagger(v)


def max_entangled(d: int) -> DensityMatrix:
    """omega_d, the maximally entangled state (1/sqrt(d)) sum_i |ii>."""
    if d < 1:
        raise LinalgError("d must be >= 1")
    v = np.zeros(d * d, dtype=complex)
    for i in range(d):
        v[i * d + i] = 1.0 / np.sqrt(d)
    return DensityMatrix(_projector(v), (d, d), ("A", "B"))


def fourier_unitary(d: int) -> np.ndarray:
    """QFT with entries exp(+2*pi*i*j*k/d)/sqrt(d), basis labels 1..d mapped to 0..d-1."""
    j = np.arange(1, d + 1)
    return np.exp(2j * np.pi * np.outer(j, j) / d) / np.sqrt(d)


def flower_state(d: int) -> DensityMatrix:
    """Flower state on dims (d, 2, d, 2) with subsystem order (A, A', B, B')."""
    if d < 2:
        raise LinalgError("d must be >= 2")
    us = [np.eye(d, dtype=complex), fourier_unitary(d)]
    # overlap[l][j] = U_l^dagger U_j
    overlap = [[dagger(us[l]) @ us[j] for j in range(2)] for l in range(2)]
    n = 2 * d * 2 * d
    t = np.zeros((d, 2, d, 2, d, 2, d, 2), dtype=complex)
    for i in range(d):
        for k in range(d):
            for j in range(2):
                for l in range(2):
                    t[i, j, i, j, k, l, k, l] = overlap[l][j][k, i] / (2 * d)
    mat = t.reshape(n, n)
    return DensityMatrix(mat, (d, 2, d, 2), ("A", "A'", "B", "B'"))


def _pbit_x(d: int) -> np.ndarray:
    u = fourier_unitary(d)
    x = np.zeros((d * d, d * d), dtype=complex)
    for i in range(d):
        for j in range(d):
            x[i * d + j, j * d + i] = u[i, j]
    return x / (d * np.sqrt(d))


def _diag_ii(d: int) -> np.ndarray:
    """(1/d) sum_i |ii><ii|, the common value of sqrt(YY†) and sqrt(Y†Y)."""
    m = np.zeros((d * d, d * d), dtype=complex)
    for i in range(d):
        m[i * d + i, i * d + i] = 1.0 / d
    return m


def _four_block(blocks: dict[tuple[int, int], np.ndarray], d: int) -> np.ndarray:
    """Assemble sum |ab><cd|_{A'B'} (x) block[(ab),(cd)] on order (A', B', A, B)."""
    n = 4 * d * d
    mat = np.zeros((n, n), dtype=complex)
    for (r, c), blk in blocks.items():
        mat[r * d * d:(r + 1) * d * d, c * d * d:(c + 1) * d * d] = blk
    return mat


_PBIT_ORDER = ("A'", "B'", "A", "B")
# permutation taking (A', B', A, B) storage to the spec's (A', A, B', B)
_PBIT_PERM = (0, 2, 1, 3)


def p_of_d(d: int) -> float:
    return 1.0 / (np.sqrt(d) + 1.0)


def approx_pbit(d: int) -> DensityMatrix:
    """The PPT state close to a private bit, on dims (2, d, 2, d) = (A', A, B', B)."""
    if d < 2:
        raise LinalgError("d must be >= 2")
    p = p_of_d(d)
    eye_dd = np.eye(d * d, dtype=complex) / (d * d)
    x = _pbit_x(d)
    sq = _diag_ii(d)
    blocks = {
        (0, 0): (1 - p) / 2 * eye_dd,
        (0, 3): (1 - p) / 2 * x,
        (1, 1): p / 2 * sq,
        (2, 2): p / 2 * sq,
        (3, 0): (1 - p) / 2 * dagger(x),
        (3, 3): (1 - p) / 2 * eye_dd,
    }
    mat = _four_block(blocks, d)
    mat = linalg.permute_subsystems(mat, (2, 2, d, d), _PBIT_PERM)
    return DensityMatrix(mat, (2, d, 2, d), ("A'", "A", "B'", "B"))


def eb_choi_for_pbit(d: int) -> DensityMatrix:
    """The separable Choi C_S paired with approx_pbit, same (A', A, B', B) order."""
    p = p_of_d(d)
    eye_dd = np.eye(d * d, dtype=complex) / (d * d)
    sq = _diag_ii(d)
    z = 1.0 / (2 * (1 + p))
    blocks = {
        (0, 0): z * (1 - p) * eye_dd,
        (1, 1): z * 2 * p * sq,
        (2, 2): z * 2 * p * sq,
        (3, 3): z * (1 - p) * eye_dd,
    }
    mat = _four_block(blocks, d)
    mat = linalg.permute_subsystems(mat, (2, 2, d, d), _PBIT_PERM)
    return DensityMatrix(mat, (2, d, 2, d), ("A'", "A", "B'", "B"))


def eb_choi_product_decomposition(d: int) -> list[tuple[float, np.ndarray, np.ndarray]]:
    """Explicit product decomposition of eb_choi_for_pbit across A'A : B'B.

    Returns (weight, |phi>_{A'A}, |psi>_{B'B}) triples; every block of C_S is
    classical-diagonal, so pure computational-basis products suffice.
    """
    p = p_of_d(d)
    z = 1.0 / (2 * (1 + p))
    terms: list[tuple[float, np.ndarray, np.ndarray]] = []

    def basis(dim, idx):
        v = np.zeros(dim, dtype=complex)
        v[idx] = 1.0
        return v

    for aprime, bprime, w_key in ((0, 0, (1 - p) * z), (1, 1, (1 - p) * z)):
        for i in range(d):
            for j in range(d):
                terms.append((
                    w_key / (d * d),
                    np.kron(basis(2, aprime), basis(d, i)),
                    np.kron(basis(2, bprime), basis(d, j)),
                ))
    for aprime, bprime in ((0, 1), (1, 0)):
        for i in range(d):
            terms.append((
                2 * p * z / d,
                np.kron(basis(2, aprime), basis(d, i)),
                np.kron(basis(2, bprime), basis(d, i)),
            ))
    return terms


def antisymmetric_state(d: int) -> DensityMatrix:
    """alpha_d = (1 (x) 1 - F_d) / (d(d-1)) on the antisymmetric subspace."""
    if d < 2:
        raise LinalgError("d must be >= 2")
    swap = np.zeros((d * d, d * d), dtype=complex)
    for i in range(d):
        for j in range(d):
            swap[i * d + j, j * d + i] = 1.0
    mat = (np.eye(d * d, dtype=complex) - swap) / (d * (d - 1))
    return DensityMatrix(mat, (d, d), ("A", "B"))


@dataclass(frozen=True)
class PrivateState:
    """A twisted maximally-entangled key part with an arbitrary shield."""

    state: DensityMatrix  # order (A_k, B_k, A_s, B_s...)
    key_dim: int
    twisting: tuple[tuple[np.ndarray, ...], ...]  # K x K unitaries on the shield
    shield_state: DensityMatrix


def twisting_unitary(twisting, key_dim: int, shield_dim: int) -> np.ndarray:
    """U_tw = sum_{ij} |i><i| (x) |j><j| (x) U^{ij}."""
    k = key_dim
    n = k * k * shield_dim
    u = np.zeros((n, n), dtype=complex)
    for i in range(k):
        for j in range(k):
            uij = linalg.as_matrix(twisting[i][j])
            if uij.shape != (shield_dim, shield_dim):
                raise LinalgError("twisting unitary has wrong shield dimension")
            if linalg.frobenius(uij @ dagger(uij) - np.eye(shield_dim)) > 1e-9 * shield_dim:
                raise LinalgError(f"twisting entry ({i},{j}) is not unitary")
            blk = (i * k + j) * shield_dim
            u[blk:blk + shield_dim, blk:blk + shield_dim] = uij
    return u


def private_state(twisting, shield: DensityMatrix, key_dim: int) -> PrivateState:
    k = int(key_dim)
    ds = shield.dim
    u = twisting_unitary(twisting, k, ds)
    omega = max_entangled(k)
    base = kron(omega.mat, shield.mat)
    mat = u @ base @ dagger(u)
    dims = (k, k) + shield.dims
    labels = ("A_k", "B_k") + tuple(f"S{i}" for i in range(len(shield.dims)))
    state = DensityMatrix(mat, dims, labels)
    tw = tuple(tuple(linalg.as_matrix(twisting[i][j]) for j in range(k)) for i in range(k))
    return PrivateState(state, k, tw, shield)


def gamma2(d: int) -> PrivateState:
    """The private bit gamma_2 whose shield carries the X-block of approx_pbit."""
    if d < 2:
        raise LinalgError("d must be >= 2")
    x = _pbit_x(d)
    eye = np.eye(d * d, dtype=complex)
    u11 = d * d * dagger(x)  # d^2 X is unitary since XX† = 1/d^4
    shield = DensityMatrix(eye / (d * d), (d, d), ("A", "B"))
    return private_state([[eye, eye], [eye, u11]], shield, 2)


def gamma2_density(d: int) -> DensityMatrix:
    """gamma_2 permuted to the approx_pbit subsystem order (A', A, B', B)."""
    g = gamma2(d).state  # order (A_k, B_k, A_s, B_s) = (A', B', A, B)
    return g.permuted(_PBIT_PERM)


@dataclass(frozen=True)
class PrivacyTest:
    projector: np.ndarray
    key_dim: int


def privacy_test(gamma: PrivateState) -> PrivacyTest:
    """Projector U_tw (omega_K (x) 1_shield) U_tw†."""
    k = gamma.key_dim
    ds = gamma.shield_state.dim
    u = twisting_unitary(gamma.twisting, k, ds)
    base = kron(max_entangled(k).mat, np.eye(ds, dtype=complex))
    return PrivacyTest(u @ base @ dagger(u), k)


def test_probability(test: PrivacyTest, rho: DensityMatrix) -> float:
    if rho.dim != test.projector.shape[0]:
        raise LinalgError("state dimension does not match privacy test")
    val = float(np.trace(test.projector @ rho.mat).real)
    if val < -1e-10 or val > 1 + 1e-10:
        raise LinalgError(f"test probability {val} outside [0, 1]")
    return val


def random_state(dims, seed: int) -> DensityMatrix:
    """Full-rank random state (normalized G G†, G complex Gaussian)."""
    dims = tuple(int(d) for d in dims)
    n = int(np.prod(dims))
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    m = g @ dagger(g)
    return DensityMatrix(m / np.trace(m).real, dims)


def random_pure(dims, seed: int) -> DensityMatrix:
    dims = tuple(int(d) for d in dims)
    n = int(np.prod(dims))
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    v /= np.linalg.norm(v)
    return DensityMatrix(_projector(v), dims)


def random_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar unitary via QR of a complex Gaussian with phase fix."""
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    q, r = np.linalg.qr(g)
    ph = np.diagonal(r) / np.abs(np.diagonal(r))
    return q * ph


def random_product_mixture(dims, cut_a, seed: int, n_terms: int = 10) -> DensityMatrix:
    """Random separable state: mixture of <= n_terms pure product states.

    cut_a lists the subsystem indices of the A side; the B side is the rest.
    The result is returned in the original subsystem order.
    """
    dims = tuple(int(d) for d in dims)
    cut_a = sorted(set(int(i) for i in cut_a))
    cut_b = [i for i in range(len(dims)) if i not in cut_a]
    da = int(np.prod([dims[i] for i in cut_a]))
    db = int(np.prod([dims[i] for i in cut_b]))
    rng = np.random.default_rng(seed)
    k = int(rng.integers(1, n_terms + 1))
    w = rng.random(k)
    w /= w.sum()
    mat = np.zeros((da * db, da * db), dtype=complex)
    for t in range(k):
        va = rng.standard_normal(da) + 1j * rng.standard_normal(da)
        vb = rng.standard_normal(db) + 1j * rng.standard_normal(db)
        va /= np.linalg.norm(va)
        vb /= np.linalg.norm(vb)
        v = np.kron(va, vb)
        mat += w[t] * _projector(v)
    # built in (A-side, B-side) order; permute back to the original order
    order = cut_a + cut_b
    inv = [order.index(i) for i in range(len(dims))]
    built_dims = tuple(dims[i] for i in order)
    mat = linalg.permute_subsystems(mat, built_dims, inv)
    return DensityMatrix(mat, dims)


def random_private_state(key_dim: int, shield_dims, seed: int) -> PrivateState:
    """Private state with Haar-random twisting unitaries and a random shield."""
    shield_dims = tuple(int(d) for d in shield_dims)
    ds = int(np.prod(shield_dims))
    rng = np.random.default_rng(seed)
    tw = [[random_unitary(ds, rng) for _ in range(key_dim)] for _ in range(key_dim)]
    shield = random_state(shield_dims, seed=int(rng.integers(0, 2**31)))
    return private_state(tw, shield, key_dim)
