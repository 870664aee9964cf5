import math

import numpy as np
import pytest

from qcbound import divergences, linalg
from qcbound.channels import apply, random_channel
from qcbound.divergences import (d_max, divergence, gamma_map,
                                 relative_entropy, sandwiched_renyi,
                                 weighted_norm)
from qcbound.linalg import LinalgError
from qcbound.states import DensityMatrix, max_entangled, random_state


def diag_state(*probs):
    return DensityMatrix(np.diag(probs).astype(complex), (len(probs),))


def test_relative_entropy_classical():
    r = diag_state(0.5, 0.5)
    s = diag_state(0.25, 0.75)
    target = 0.5 * np.log2(2) + 0.5 * np.log2(2 / 3)
    assert abs(relative_entropy(r, s).bits - target) <= 1e-12
    assert abs(relative_entropy(diag_state(1.0, 0.0), diag_state(0.5, 0.5)).bits
               - 1.0) <= 1e-12
    assert abs(relative_entropy(r, r).bits) <= 1e-12


def test_sandwiched_classical():
    r = diag_state(0.5, 0.5)
    s = diag_state(0.25, 0.75)
    assert abs(sandwiched_renyi(r, s, 2.0).bits - np.log2(4 / 3)) <= 1e-12
    assert abs(sandwiched_renyi(r, r, 2.0).bits) <= 1e-12
    with pytest.raises(LinalgError):
        sandwiched_renyi(r, s, 0.9)


def test_alpha_one_limit():
    for seed in range(50):
        rho = random_state([3], seed)
        sigma = random_state([3], 1000 + seed)
        near = sandwiched_renyi(rho, sigma, 1 + 1e-5).bits
        exact = relative_entropy(rho, sigma).bits
        assert abs(near - exact) <= 1e-3


def test_dmax_values():
    rho = random_state([3], 1)
    assert abs(d_max(rho, rho).bits) <= 1e-9
    omega = max_entangled(2)
    uniform = DensityMatrix(np.eye(4) / 4, (4,))
    omega_flat = DensityMatrix(omega.mat, (4,))
    assert abs(d_max(omega_flat, uniform).bits - 2.0) <= 1e-9


def test_dmax_infinite_on_disjoint_support():
    zero = diag_state(1.0, 0.0)
    one = diag_state(0.0, 1.0)
    val = d_max(zero, one)
    assert not val.finite
    assert math.isinf(val.as_float())


def test_monotone_in_alpha():
    grid = [1.0, 1.5, 2.0, 5.0, 50.0, math.inf]
    for seed in range(20):
        rho = random_state([4], seed)
        sigma = random_state([4], 500 + seed)
        vals = [divergence(rho, sigma, a).bits for a in grid]
        for lo, hi in zip(vals, vals[1:]):
            assert hi >= lo - 1e-9


def test_data_processing():
    for seed in range(60):
        rho = random_state([3], seed)
        sigma = random_state([3], 700 + seed)
        chan = random_channel(3, 2, 2, 1400 + seed)
        for alpha in (1.0, 2.0, math.inf):
            lhs = divergence(apply(chan, rho), apply(chan, sigma), alpha).bits
            rhs = divergence(rho, sigma, alpha).bits
            assert lhs <= rhs + 1e-8


def test_dmax_tensor_additivity():
    for seed in range(20):
        r1, s1 = random_state([2], seed), random_state([2], 100 + seed)
        r2, s2 = random_state([3], 200 + seed), random_state([3], 300 + seed)
        joint = d_max(DensityMatrix(linalg.kron(r1.mat, r2.mat), (6,)),
                      DensityMatrix(linalg.kron(s1.mat, s2.mat), (6,))).bits
        assert abs(joint - d_max(r1, s1).bits - d_max(r2, s2).bits) <= 1e-8


def test_triangle_with_dmax():
    for seed in range(30):
        rho = random_state([3], seed)
        sig_mid = random_state([3], 111 + seed)
        sig = random_state([3], 222 + seed)
        for alpha in (1.0, 2.0, math.inf):
            lhs = divergence(rho, sig, alpha).bits
            rhs = divergence(rho, sig_mid, alpha).bits + d_max(sig_mid, sig).bits
            assert lhs <= rhs + 1e-8


def test_unitary_invariance():
    rng = np.random.default_rng(77)
    from qcbound.states import random_unitary
    for _ in range(10):
        rho = random_state([3], int(rng.integers(1 << 30)))
        sigma = random_state([3], int(rng.integers(1 << 30)))
        u = random_unitary(3, rng)
        rho_u = DensityMatrix(u @ rho.mat @ u.conj().T, (3,))
        sigma_u = DensityMatrix(u @ sigma.mat @ u.conj().T, (3,))
        for alpha in (1.0, 2.0, math.inf):
            assert abs(divergence(rho, sigma, alpha).bits
                       - divergence(rho_u, sigma_u, alpha).bits) <= 1e-9


def test_weighted_norm_basics():
    sigma = random_state([3], 5)
    assert abs(weighted_norm(np.eye(3), sigma, 3.0) - 1.0) <= 1e-10
    x = np.arange(9).reshape(3, 3).astype(complex)
    assert abs(weighted_norm(2 * x, sigma, 2.0)
               - 2 * weighted_norm(x, sigma, 2.0)) <= 1e-10


def test_norm_form_identity():
    for seed in range(20):
        rho = random_state([3], seed)
        sigma = random_state([3], 900 + seed)
        gi = gamma_map(sigma, rho.mat, inverse=True)
        lhs = 2.0 * np.log2(weighted_norm(gi, sigma, 2.0))
        assert abs(lhs - sandwiched_renyi(rho, sigma, 2.0).bits) <= 1e-8


def test_gamma_map_roundtrip():
    for seed in range(10):
        sigma = random_state([4], seed)
        x = random_state([4], 50 + seed).mat
        back = gamma_map(sigma, gamma_map(sigma, x, inverse=True))
        assert linalg.frobenius(back - x) <= 1e-9


def test_shape_mismatch():
    with pytest.raises(LinalgError):
        relative_entropy(random_state([2], 0), random_state([3], 0))
