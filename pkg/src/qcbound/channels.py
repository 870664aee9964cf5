"""Choi-matrix representation of channels and the channel constructors.

Channels are carried exclusively as normalized Choi states (trace one) with
declared input/output dimensions; the unnormalized Choi (scaled by d_in) is
derived where an SDP needs it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .linalg import LinalgError, dagger
from .states import DensityMatrix, max_entangled, flower_state, approx_pbit, random_unitary

CHOI_MARGINAL_TOL = 1e-8


@dataclass(frozen=True)
class ChoiMatrix:
    """Normalized Choi state on dims (d_in, d_out), labels (A', B)."""

    state: DensityMatrix
    d_in: int
    d_out: int

    def __post_init__(self):
        if self.state.dims != (self.d_in, self.d_out):
            raise LinalgError(
                f"Choi state dims {self.state.dims} != ({self.d_in}, {self.d_out})"
            )
        marg = linalg.partial_trace(self.state.mat, self.state.dims, [0])
        if linalg.frobenius(marg - np.eye(self.d_in) / self.d_in) > CHOI_MARGINAL_TOL:
            raise LinalgError("not trace-preserving: input marginal differs from I/d_in")

    @property
    def mat(self) -> np.ndarray:
        return self.state.mat

    def unnormalized(self) -> np.ndarray:
        """d_in * C, the Choi convention the diamond-norm SDP uses."""
        return self.d_in * self.state.mat


def choi_from_state(rho: DensityMatrix, d_in: int, d_out: int) -> ChoiMatrix:
    """Lift a state with maximally mixed input marginal to a channel."""
    if rho.dim != d_in * d_out:
        raise LinalgError(f"state dim {rho.dim} != {d_in}*{d_out}")
    state = DensityMatrix(rho.mat, (d_in, d_out), ("A'", "B"))
    return ChoiMatrix(state, d_in, d_out)


def _choi_tensor(c: ChoiMatrix) -> np.ndarray:
    return c.mat.reshape(c.d_in, c.d_out, c.d_in, c.d_out)


def apply(c: ChoiMatrix, rho: DensityMatrix) -> DensityMatrix:
    """T(rho) = d_in * tr_in[(rho^T (x) 1) C]."""
    if rho.dim != c.d_in:
        raise LinalgError(f"input dim {rho.dim} != channel d_in {c.d_in}")
    out = c.d_in * np.einsum("ij,iajb->ab", rho.mat, _choi_tensor(c))
    return DensityMatrix(out, (c.d_out,))


def apply_partial(c: ChoiMatrix, rho: DensityMatrix, sys: int) -> DensityMatrix:
    """Apply the channel to one tensor factor, identity on the rest."""
    sys = int(sys)
    if sys < 0 or sys >= len(rho.dims):
        raise LinalgError(f"subsystem {sys} out of range")
    if rho.dims[sys] != c.d_in:
        raise LinalgError(f"subsystem dim {rho.dims[sys]} != channel d_in {c.d_in}")
    n_sys = len(rho.dims)
    perm = [sys] + [i for i in range(n_sys) if i != sys]
    front = linalg.permute_subsystems(rho.mat, rho.dims, perm)
    rest = rho.dim // c.d_in
    t = front.reshape(c.d_in, rest, c.d_in, rest)
    out = c.d_in * np.einsum("irjs,iajb->arbs", t, _choi_tensor(c))
    out = out.reshape(c.d_out * rest, c.d_out * rest)
    # restore the original subsystem order with the output in slot `sys`
    new_front_dims = (c.d_out,) + tuple(rho.dims[i] for i in range(n_sys) if i != sys)
    inv = [perm.index(i) for i in range(n_sys)]
    out = linalg.permute_subsystems(out, new_front_dims, inv)
    dims = tuple(c.d_out if i == sys else rho.dims[i] for i in range(n_sys))
    return DensityMatrix(out, dims, rho.labels)


def identity_channel(d: int) -> ChoiMatrix:
    return choi_from_state(max_entangled(d), d, d)


def flower_channel(d: int) -> ChoiMatrix:
    """Channel on 2d -> 2d whose Choi is the flower state, inputs (A, A')."""
    return choi_from_state(flower_state(d), 2 * d, 2 * d)


def pbit_channel(d: int) -> ChoiMatrix:
    """Channel on 2d -> 2d whose Choi is the near-private-bit PPT state."""
    return choi_from_state(approx_pbit(d), 2 * d, 2 * d)


def compose_transpose(c: ChoiMatrix, side: str) -> ChoiMatrix:
    """Choi of transpose-after (side='out') or transpose-before (side='in').

    Defined only when the composition stays completely positive, i.e. when
    the partially transposed Choi is PSD.
    """
    if side not in ("in", "out"):
        raise LinalgError("side must be 'in' or 'out'")
    sub = 0 if side == "in" else 1
    mat = linalg.partial_transpose(c.mat, (c.d_in, c.d_out), [sub])
    min_eig = float(np.linalg.eigvalsh(linalg.hermitize(mat))[0])
    if min_eig < -1e-9:
        raise LinalgError(
            f"composition not completely positive: min eigenvalue {min_eig:.3e}"
        )
    mat = linalg.hermitize(mat)
    vals, vecs = linalg.herm_eig(mat)
    mat = (vecs * np.clip(vals, 0.0, None)) @ dagger(vecs)
    return choi_from_state(DensityMatrix(mat / np.trace(mat).real, (c.d_in * c.d_out,)),
                           c.d_in, c.d_out)


def reduce_output(c: ChoiMatrix, out_dims, keep) -> ChoiMatrix:
    """Trace out part of the output: Choi of tr_dropped after the channel."""
    out_dims = tuple(int(d) for d in out_dims)
    if int(np.prod(out_dims)) != c.d_out:
        raise LinalgError(f"output dims {out_dims} do not factor d_out {c.d_out}")
    keep = sorted(set(int(k) for k in keep))
    if any(k < 0 or k >= len(out_dims) for k in keep):
        raise LinalgError("keep index out of range for the output factorization")
    full_dims = (c.d_in,) + out_dims
    mat = linalg.partial_trace(c.mat, full_dims, [0] + [k + 1 for k in keep])
    d_keep = int(np.prod([out_dims[k] for k in keep])) if keep else 1
    return choi_from_state(DensityMatrix(mat, (c.d_in * d_keep,)), c.d_in, d_keep)


def switch_channel(c0: ChoiMatrix, c1: ChoiMatrix) -> ChoiMatrix:
    """Choi of T0 (x) P0 + T1 (x) P1 with a dephasing qubit flag.

    P_i measures the flag in the computational basis and keeps branch i.
    """
    if (c0.d_in, c0.d_out) != (c1.d_in, c1.d_out):
        raise LinalgError("switch branches must share dimensions")
    da, db = c0.d_in, c0.d_out
    t = np.zeros((da, 2, db, 2, da, 2, db, 2), dtype=complex)
    for f, branch in enumerate((c0, c1)):
        cf = _choi_tensor(branch)  # (da, db, da, db)
        t[:, f, :, f, :, f, :, f] = cf / 2
    n = 2 * da * 2 * db
    mat = t.reshape(n, n)
    return choi_from_state(DensityMatrix(mat, (n,)), 2 * da, 2 * db)


def depolarizing(d: int, p: float) -> ChoiMatrix:
    if not 0 <= p <= 1:
        raise LinalgError("p must lie in [0, 1]")
    omega = max_entangled(d).mat
    mat = (1 - p) * omega + p * np.eye(d * d) / (d * d)
    return choi_from_state(DensityMatrix(mat, (d * d,)), d, d)


def erasure(d: int, p: float) -> ChoiMatrix:
    """Erasure channel d -> d+1; the flag is the last output basis vector."""
    if not 0 <= p <= 1:
        raise LinalgError("p must lie in [0, 1]")
    do = d + 1
    mat = np.zeros((d * do, d * do), dtype=complex)
    for i in range(d):
        for j in range(d):
            mat[i * do + i, j * do + j] += (1 - p) / d
        mat[i * do + d, i * do + d] += p / d
    return choi_from_state(DensityMatrix(mat, (d * do,)), d, do)


def amplitude_damping(gamma: float) -> ChoiMatrix:
    if not 0 <= gamma <= 1:
        raise LinalgError("gamma must lie in [0, 1]")
    k0 = np.array([[1, 0], [0, np.sqrt(1 - gamma)]], dtype=complex)
    k1 = np.array([[0, np.sqrt(gamma)], [0, 0]], dtype=complex)
    mat = np.zeros((4, 4), dtype=complex)
    for i in range(2):
        for j in range(2):
            eij = np.zeros((2, 2), dtype=complex)
            eij[i, j] = 0.5
            blk = k0 @ eij @ dagger(k0) + k1 @ eij @ dagger(k1)
            mat[i * 2:(i + 1) * 2, j * 2:(j + 1) * 2] = blk
    return choi_from_state(DensityMatrix(mat, (4,)), 2, 2)


def random_channel(d_in: int, d_out: int, d_env: int, seed: int) -> ChoiMatrix:
    """Channel from a Haar-random Stinespring isometry, deterministic per seed."""
    if d_env < 1:
        raise LinalgError("d_env must be >= 1")
    if d_out * d_env < d_in:
        raise LinalgError("d_out * d_env must be >= d_in for an isometry to exist")
    rng = np.random.default_rng(seed)
    u = random_unitary(d_out * d_env, rng)
    v = u[:, :d_in]  # isometry columns
    w = [v[:, i].reshape(d_out, d_env) for i in range(d_in)]
    mat = np.zeros((d_in * d_out, d_in * d_out), dtype=complex)
    for i in range(d_in):
        for j in range(d_in):
            blk = w[i] @ dagger(w[j]) / d_in
            mat[i * d_out:(i + 1) * d_out, j * d_out:(j + 1) * d_out] = blk
    return choi_from_state(DensityMatrix(mat, (d_in * d_out,)), d_in, d_out)


def is_ppt_choi(c: ChoiMatrix) -> tuple[bool, float]:
    """PPT test on the Choi: (passes, min eigenvalue of the partial transpose)."""
    pt = linalg.partial_transpose(c.mat, (c.d_in, c.d_out), [1])
    min_eig = float(np.linalg.eigvalsh(linalg.hermitize(pt))[0])
    return min_eig >= -1e-9, min_eig
