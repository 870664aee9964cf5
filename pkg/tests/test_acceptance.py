"""End-to-end acceptance checks: each test prints one pass/fail line with the
observed value, and together they cover the full certified-number surface at
the stated tolerances and runtime budgets."""

import math
import time

import numpy as np

from qcbound import bounds, divergences, linalg, sdp, states, verify
from qcbound.channels import identity_channel
from qcbound.states import DensityMatrix


def _report(name: str, ok: bool, detail: str):
    print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
    assert ok, f"{name}: {detail}"


def test_criterion_01_flower_negativity():
    t0 = time.time()
    worst = 0.0
    for d in (2, 4, 9):
        rho = states.flower_state(d)
        neg = linalg.trace_norm(linalg.partial_transpose(rho.mat, rho.dims, [2, 3]))
        worst = max(worst, abs(neg - (np.sqrt(d) + 1)))
    elapsed = time.time() - t0
    _report("flower negativity", worst <= 1e-8 and elapsed < 5,
            f"max |dev| {worst:.2e}, {elapsed:.2f}s")


def test_criterion_02_flower_formulas():
    ok = True
    for d in (2, 4, 9, 16):
        reps = bounds.flower_reports(d)
        ok &= reps[0].bits == 1.0 + 0.5 * np.log2(d)
        ok &= reps[2].bits == 2.0
    _report("flower squashed/E_max formulas", ok,
            "exact closed forms at d in {2,4,9,16}")


def test_criterion_03_pbit_ppt():
    t0 = time.time()
    worst = 0.0
    for d in (4, 9):
        rho = states.approx_pbit(d)
        pt = linalg.partial_transpose(rho.mat, rho.dims, [2, 3])
        worst = min(worst, float(np.linalg.eigvalsh(linalg.hermitize(pt))[0]))
    elapsed = time.time() - t0
    _report("pbit PPT", worst >= -1e-10 and elapsed < 10,
            f"min PT eigenvalue {worst:.2e}, {elapsed:.2f}s")


def test_criterion_04_pbit_closeness():
    ok = True
    details = []
    for d in (4, 9):
        dist = 0.5 * linalg.trace_norm(states.approx_pbit(d).mat
                                       - states.gamma2_density(d).mat)
        limit = 1.0 / (np.sqrt(d) + 1)
        ok &= dist <= limit + 1e-9
        details.append(f"d={d}: {dist:.6f} <= {limit:.6f}")
    _report("pbit closeness to gamma2", ok, "; ".join(details))


def test_criterion_05_repeater_gap():
    t0 = time.time()
    ok = True
    details = []
    for d in (4, 9):
        rho = states.approx_pbit(d)
        pt = DensityMatrix(linalg.partial_transpose(rho.mat, rho.dims, [2, 3]),
                           rho.dims)
        cs = states.eb_choi_for_pbit(d)
        val = divergences.d_max(pt, cs).bits
        limit = np.log2(1 + 1 / (np.sqrt(d) + 1))
        ok &= val <= limit + 1e-8
        details.append(f"d={d}: {val:.6f} vs {limit:.6f}")
    elapsed = time.time() - t0
    _report("repeater gap upper bound", ok and elapsed < 30,
            "; ".join(details) + f", {elapsed:.1f}s")


def test_criterion_06_data_processed_triangle():
    t0 = time.time()
    rep = verify.run_suite("dpt", 42)
    elapsed = time.time() - t0
    n_pass = sum(1 for c in rep.cases if c["status"] == "pass")
    _report("data-processed triangle inequality",
            n_pass == 500 and elapsed < 120,
            f"{n_pass}/500 instances, {elapsed:.1f}s")


def test_criterion_07_nonlockability():
    rep = verify.run_suite("nonlock", 42)
    fails = [c for c in rep.cases if c["status"] == "fail"]
    _report("non-lockability", not fails,
            f"{len(rep.cases) - len(fails)}/{len(rep.cases)} states within "
            "2 log2(d_B') + 1e-8")


def test_criterion_08_privacy_tests():
    rep = verify.run_suite("privacy", 42)
    fails = [c for c in rep.cases if c["status"] == "fail"]
    _report("privacy tests", not fails,
            f"{len(rep.cases) - len(fails)}/{len(rep.cases)} cases "
            "(1/K ceiling and fidelity floor)")


def test_criterion_09_sdp_cross_validation():
    t0 = time.time()
    rep = verify.run_suite("sdp-xval", 42)
    elapsed = time.time() - t0
    fails = [c for c in rep.cases if c["status"] == "fail"]
    _report("SDP cross-validation", not fails and elapsed < 180,
            f"{len(rep.cases) - len(fails)}/{len(rep.cases)} oracles, "
            f"{elapsed:.1f}s")


def test_criterion_10_error_floor():
    grid_ok = True
    for k in range(0, 9):
        for m in (1, 2, 3):
            for e in (0.5, 1.0, 2.0):
                for a in (1.5, 2.0, 8.0, math.inf):
                    coef = 0.5 if math.isinf(a) else (a - 1) / (2 * a)
                    expected = max(1.0 - 2.0 ** (-coef * (k - m * e)), 0.0)
                    grid_ok &= bounds.error_floor(k, m, e, a) == expected
    mono_a = [bounds.error_floor(8, 2, 1.0, a) for a in (1.5, 2.0, 4.0, math.inf)]
    mono_k = [bounds.error_floor(k, 2, 1.0, 2.0) for k in range(3, 9)]
    mono_ok = (all(b >= a for a, b in zip(mono_a, mono_a[1:]))
               and all(b >= a for a, b in zip(mono_k, mono_k[1:])))
    _report("error-floor formula", grid_ok and mono_ok,
            "scalar grid exact; monotone in alpha and k")


def test_criterion_11_appendix_dichotomy():
    table = bounds.appendix_dichotomy(20, 16)
    values_ok = (table["esq_tau0_upper_bits"] == 20 * np.log2(17 / 16)
                 and table["esq_tau1_bits"] == 50.5
                 and table["er_tau1_upper_bits"] == 2.0
                 and table["er_tau0_lower_bits"] == 10.0
                 and table["esq_antisym_upper_bits"] == np.log2(34 / 32))
    flags_ok = table["er_dichotomy"] and table["esq_dichotomy"]
    _report("appendix dichotomy", values_ok and flags_ok,
            f"table exact at (n,l)=(20,16); flags {flags_ok}")


def test_criterion_12_full_verify_under_ten_minutes():
    t0 = time.time()
    rep = verify.reproduce_all(42)
    elapsed = time.time() - t0
    fails = [c for c in rep.cases if c["status"] == "fail"]
    _report("full verification run", not fails and elapsed < 600,
            f"{len(rep.cases) - len(fails)}/{len(rep.cases)} cases, "
            f"{elapsed:.0f}s")
