import numpy as np
import pytest

from qcbound import channels, linalg
from qcbound.channels import (ChoiMatrix, amplitude_damping, apply,
                              apply_partial, choi_from_state,
                              compose_transpose, depolarizing, erasure,
                              flower_channel, identity_channel, is_ppt_choi,
                              pbit_channel, random_channel, reduce_output,
                              switch_channel)
from qcbound.linalg import LinalgError
from qcbound.states import (DensityMatrix, flower_state, max_entangled,
                            random_state)


def test_apply_identity_and_depolarizing():
    rho = random_state([3], 1)
    assert np.allclose(apply(identity_channel(3), rho).mat, rho.mat, atol=1e-12)
    out = apply(depolarizing(3, 1.0), rho)
    assert np.allclose(out.mat, np.eye(3) / 3, atol=1e-12)
    half = apply(depolarizing(2, 0.5), random_state([2], 2))
    assert np.isclose(np.trace(half.mat).real, 1.0)


def test_apply_dim_mismatch():
    with pytest.raises(LinalgError):
        apply(identity_channel(3), random_state([2], 0))


def test_choi_roundtrip_through_max_entangled():
    # applying the lifted channel to half of omega reproduces the Choi state
    for seed in range(5):
        c = random_channel(3, 2, 2, seed)
        omega = max_entangled(3)
        out = apply_partial(c, omega, 1)
        assert linalg.frobenius(out.mat - c.mat) <= 1e-10


def test_apply_partial_identity_elsewhere():
    c = random_channel(2, 2, 2, 9)
    rho = random_state([3, 2, 2], 4)
    out = apply_partial(c, rho, 1)
    assert out.dims == (3, 2, 2)
    assert np.isclose(np.trace(out.mat).real, 1.0)
    # marginal on untouched systems is unchanged
    assert np.allclose(out.marginal([0, 2]).mat, rho.marginal([0, 2]).mat,
                       atol=1e-10)


def test_choi_from_state_rejects_bad_marginal():
    rho = random_state([2, 2], 3)  # input marginal is not maximally mixed
    with pytest.raises(LinalgError):
        choi_from_state(rho, 2, 2)


def test_flower_and_pbit_choi_lift():
    for d in (2, 4):
        assert flower_channel(d).d_in == 2 * d
        assert pbit_channel(d).d_out == 2 * d


def test_compose_transpose():
    c = pbit_channel(4)
    ct = compose_transpose(c, "out")
    assert np.allclose(compose_transpose(ct, "out").mat, c.mat, atol=1e-9)
    with pytest.raises(LinalgError):
        compose_transpose(identity_channel(2), "out")  # omega_2 is NPT


def test_reduce_output_flower_is_classical():
    d = 3
    c = flower_channel(d)
    red = reduce_output(c, (d, 2, d, 2)[2:], [0])  # drop the B' qubit
    # Choi of the reduced channel is diagonal (classical), hence separable
    off_diag = red.mat - np.diag(np.diag(red.mat))
    assert linalg.frobenius(off_diag) <= 1e-12
    assert is_ppt_choi(red)[0]


def test_reduce_output_commutes_with_apply():
    c = random_channel(2, 4, 2, 17)
    red = reduce_output(c, [2, 2], [0])
    rho = random_state([2], 21)
    via_red = apply(red, rho).mat
    full = apply(c, rho)
    via_trace = linalg.partial_trace(full.mat, [2, 2], [0])
    assert linalg.frobenius(via_red - via_trace) <= 1e-9


def test_switch_channel():
    c0 = random_channel(2, 2, 2, 31)
    c1 = random_channel(2, 2, 2, 32)
    sw = switch_channel(c0, c1)
    assert (sw.d_in, sw.d_out) == (4, 4)
    for flag, branch in ((0, c0), (1, c1)):
        f = np.zeros((2, 2), dtype=complex)
        f[flag, flag] = 1.0
        rho = random_state([2], 40 + flag)
        joint = DensityMatrix(linalg.kron(rho.mat, f), (2, 2))
        out = apply(sw, joint)
        expected = linalg.kron(apply(branch, rho).mat, f)
        assert linalg.frobenius(out.mat - expected) <= 1e-9


def test_erasure_spectrum():
    c = erasure(2, 0.3)
    assert (c.d_in, c.d_out) == (2, 3)
    vals = np.sort(np.linalg.eigvalsh(linalg.hermitize(c.mat)))
    assert np.isclose(np.sum(vals), 1.0)
    assert np.isclose(vals[-1], 0.7)            # (1-p) on the entangled part
    assert np.isclose(vals[-2], 0.15)           # p/2 erasure flags
    with pytest.raises(LinalgError):
        erasure(2, 1.5)


def test_amplitude_damping_endpoints():
    full = amplitude_damping(1.0)
    for seed in range(3):
        out = apply(full, random_state([2], seed))
        assert np.allclose(out.mat, np.diag([1.0, 0.0]), atol=1e-12)
    assert np.allclose(amplitude_damping(0.0).mat, max_entangled(2).mat,
                       atol=1e-12)


def test_random_channel_sweep():
    for seed in range(100):
        c = random_channel(3, 3, 2, seed)
        marg = linalg.partial_trace(c.mat, (3, 3), [0])
        assert linalg.frobenius(marg - np.eye(3) / 3) <= 1e-9
    assert np.allclose(random_channel(2, 2, 2, 5).mat,
                       random_channel(2, 2, 2, 5).mat)
    unitary = random_channel(3, 3, 1, 0)
    purity = np.trace(unitary.mat @ unitary.mat).real
    assert np.isclose(purity, 1.0, atol=1e-10)


def test_is_ppt_choi():
    assert not is_ppt_choi(identity_channel(2))[0]
    assert is_ppt_choi(depolarizing(2, 1.0))[0]
    assert is_ppt_choi(pbit_channel(4))[0]
