import numpy as np
import pytest

from qcbound import linalg
from qcbound.linalg import LinalgError


def random_hermitian(n, rng):
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (g + g.conj().T) / 2


def random_psd(n, rng):
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return g @ g.conj().T


def test_kron_identities():
    assert np.allclose(linalg.kron(np.eye(2), np.eye(2)), np.eye(4))
    assert np.allclose(linalg.kron(np.diag([1, 2]), np.diag([3])), np.diag([3, 6]))


def test_kron_trace_multiplicative():
    rng = np.random.default_rng(11)
    for _ in range(20):
        a = random_hermitian(3, rng)
        b = random_hermitian(3, rng)
        assert np.isclose(np.trace(linalg.kron(a, b)), np.trace(a) * np.trace(b))


def test_partial_trace_product_state():
    rng = np.random.default_rng(3)
    a = random_psd(2, rng)
    b = random_psd(3, rng)
    out = linalg.partial_trace(linalg.kron(a, b), [2, 3], [0])
    assert np.allclose(out, a * np.trace(b).real)


def test_partial_trace_preserves_trace():
    rng = np.random.default_rng(4)
    for _ in range(10):
        m = random_hermitian(8, rng)
        assert np.isclose(np.trace(linalg.partial_trace(m, [2, 4], [1])),
                          np.trace(m))
    # tracing everything gives the scalar trace
    assert np.isclose(linalg.partial_trace(m, [2, 4], [])[0, 0], np.trace(m))


def test_partial_trace_dim_mismatch():
    with pytest.raises(LinalgError):
        linalg.partial_trace(np.eye(6), [2, 2], [0])


def test_partial_transpose_product_and_involution():
    rng = np.random.default_rng(5)
    a, b = random_hermitian(2, rng), random_hermitian(3, rng)
    m = linalg.kron(a, b)
    assert np.allclose(linalg.partial_transpose(m, [2, 3], [1]),
                       linalg.kron(a, b.T))
    twice = linalg.partial_transpose(linalg.partial_transpose(m, [2, 3], [1]),
                                     [2, 3], [1])
    assert np.allclose(twice, m)
    assert np.isclose(linalg.frobenius(linalg.partial_transpose(m, [2, 3], [0])),
                      linalg.frobenius(m))


def test_partial_transpose_maximally_entangled_negativity():
    v = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)
    omega = np.outer(v, v.conj())
    pt = linalg.partial_transpose(omega, [2, 2], [1])
    # spectrum {1/2, 1/2, 1/2, -1/2}
    assert np.allclose(sorted(np.linalg.eigvalsh(pt)), [-0.5, 0.5, 0.5, 0.5])
    assert np.isclose(linalg.trace_norm(pt), 2.0)


def test_permute_subsystems_roundtrip():
    rng = np.random.default_rng(6)
    m = random_hermitian(12, rng)
    p = linalg.permute_subsystems(m, [2, 3, 2], [2, 0, 1])
    back = linalg.permute_subsystems(p, [2, 2, 3], [1, 2, 0])
    assert np.allclose(back, m)


def test_herm_eig_residual():
    rng = np.random.default_rng(7)
    m = random_hermitian(16, rng)
    vals, vecs = linalg.herm_eig(m)
    recon = (vecs * vals) @ vecs.conj().T
    assert linalg.frobenius(m - recon) <= 1e-10 * max(1.0, linalg.frobenius(m))
    assert np.allclose(vecs.conj().T @ vecs, np.eye(16), atol=1e-10)
    assert np.all(np.diff(vals) >= 0)


def test_herm_eig_rejects_non_hermitian():
    with pytest.raises(LinalgError):
        linalg.herm_eig(np.array([[0, 1], [0, 0]], dtype=complex))


def test_mat_power_pseudo_inverse():
    assert np.allclose(linalg.mat_power(np.eye(3), 0.5), np.eye(3))
    assert np.allclose(linalg.mat_power(np.diag([4.0, 0.0]), -1),
                       np.diag([0.25, 0.0]))


def test_mat_power_square_and_composition():
    rng = np.random.default_rng(8)
    for _ in range(10):
        rho = random_psd(5, rng)
        root = linalg.mat_power(rho, 0.5)
        assert linalg.frobenius(root @ root - rho) <= 1e-9 * linalg.frobenius(rho)
        a = linalg.mat_power(linalg.mat_power(rho, 0.5), 0.6)
        b = linalg.mat_power(rho, 0.3)
        assert linalg.frobenius(a - b) <= 1e-8 * max(1.0, linalg.frobenius(b))


def test_mat_power_rejects_negative():
    with pytest.raises(LinalgError):
        linalg.mat_power(np.diag([1.0, -1.0]), 0.5)


def test_trace_norm_bounds_trace():
    rng = np.random.default_rng(9)
    for _ in range(20):
        h = random_hermitian(4, rng)
        assert linalg.trace_norm(h) >= abs(np.trace(h)) - 1e-12


def test_support_projector():
    assert np.allclose(linalg.support_projector(np.eye(3)), np.eye(3))
    assert np.allclose(linalg.support_projector(np.diag([1.0, 0.0])),
                       np.diag([1.0, 0.0]))
    rng = np.random.default_rng(10)
    g = rng.standard_normal((4, 2)) + 1j * rng.standard_normal((4, 2))
    m = g @ g.conj().T  # rank 2
    p = linalg.support_projector(m)
    assert linalg.frobenius(p @ p - p) <= 1e-10
    assert linalg.frobenius(p @ m @ p - m) <= 1e-9


def test_fidelity_endpoints():
    z = np.diag([1.0, 0.0]).astype(complex)
    o = np.diag([0.0, 1.0]).astype(complex)
    assert np.isclose(linalg.fidelity(z, z), 1.0)
    assert np.isclose(linalg.fidelity(z, o), 0.0)


def test_fuchs_van_de_graaf():
    rng = np.random.default_rng(12)
    for _ in range(30):
        a = random_psd(3, rng)
        b = random_psd(3, rng)
        a /= np.trace(a).real
        b /= np.trace(b).real
        f = linalg.fidelity(a, b)
        dist = 0.5 * linalg.trace_norm(a - b)
        assert 1 - np.sqrt(f) - 1e-9 <= dist <= np.sqrt(1 - f) + 1e-9
