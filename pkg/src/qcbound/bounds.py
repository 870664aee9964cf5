"""Named capacity bounds assembled into BoundReports.

Squashed-entanglement values appear only through closed forms; minimizations
over separable sets are replaced by PPT relaxations (lower bounds, in the
sdp module) and fixed-sigma certificates (upper bounds, here).
"""

from __future__ import annotations

import math

import numpy as np

from . import linalg, sdp
from .channels import ChoiMatrix, choi_from_state
from .divergences import d_max
from .linalg import LinalgError
from .reports import BoundReport
from .states import (DensityMatrix, approx_pbit, eb_choi_for_pbit,
                     eb_choi_product_decomposition, p_of_d)

SEP_CERT_TOL = 1e-9


def h2(p: float) -> float:
    """Binary entropy in bits; h2(0) = h2(1) = 0 by continuity."""
    if not 0.0 <= p <= 1.0:
        raise LinalgError("h2 argument must lie in [0, 1]")
    if p in (0.0, 1.0):
        return 0.0
    return float(-p * np.log2(p) - (1 - p) * np.log2(1 - p))


def reconstruct_separable(dims, cut_a, terms) -> np.ndarray:
    """Sum of weighted pure product terms across the cut, in original order."""
    dims = tuple(int(d) for d in dims)
    cut_a = sorted(set(int(i) for i in cut_a))
    cut_b = [i for i in range(len(dims)) if i not in cut_a]
    da = int(np.prod([dims[i] for i in cut_a]))
    db = int(np.prod([dims[i] for i in cut_b]))
    mat = np.zeros((da * db, da * db), dtype=complex)
    for w, va, vb in terms:
        if w < -1e-12:
            raise LinalgError("separable certificate has a negative weight")
        va = np.asarray(va, dtype=complex).reshape(-1)
        vb = np.asarray(vb, dtype=complex).reshape(-1)
        if va.shape[0] != da or vb.shape[0] != db:
            raise LinalgError("certificate vector dimension mismatch")
        v = np.kron(va, vb).reshape(-1, 1)
        mat += float(w) * (v @ v.conj().T)
    order = cut_a + cut_b
    inv = [order.index(i) for i in range(len(dims))]
    built_dims = tuple(dims[i] for i in order)
    return linalg.permute_subsystems(mat, built_dims, inv)


def _check_certificate(sigma: DensityMatrix, cut_a, terms) -> None:
    built = reconstruct_separable(sigma.dims, cut_a, terms)
    if linalg.frobenius(built - sigma.mat) > SEP_CERT_TOL:
        raise LinalgError("sigma not certified separable: reconstruction mismatch")


def transposition_bound(c: ChoiMatrix) -> BoundReport:
    """Upper bound on the two-way quantum capacity: log2 of the diamond norm
    of transpose-composed-with-channel, with the log-negativity of the Choi
    as the matching SDP-free lower bound on the same norm."""
    pt = linalg.partial_transpose(c.mat, (c.d_in, c.d_out), [1])
    value, sol = sdp.diamond_norm_hermitian(c.d_in * pt, c.d_in, c.d_out)
    log_neg = float(np.log2(linalg.trace_norm(pt)))
    return BoundReport(
        bound="transposition", targets="Q_two_way", direction="upper",
        bits=max(float(np.log2(value)), 0.0), method="sdp",
        diagnostics={"status": sol.status, "iterations": sol.iterations,
                     "gap": sol.gap, "diamond_norm": value,
                     "log_negativity_lower_bits": log_neg})


def emax_fixed_sigma(rho: DensityMatrix, sigma: DensityMatrix,
                     sep_certificate, cut_a) -> BoundReport:
    """Upper bound on E_max(rho) from one certified-separable sigma."""
    _check_certificate(sigma, cut_a, sep_certificate)
    val = d_max(rho, sigma)
    return BoundReport(bound="emax-fixed-sigma", targets="E_max",
                       direction="upper", bits=val.as_float(),
                       method="fixed-sigma",
                       diagnostics={"sigma_terms": len(sep_certificate)})


def bmax_upper_fixed(c: ChoiMatrix, c_s: ChoiMatrix, sep_certificate) -> BoundReport:
    """Upper bound on E_max(T), hence on the two-way private capacity, from a
    certified entanglement-breaking channel's Choi."""
    _check_certificate(c_s.state, [0], sep_certificate)
    val = d_max(c.state, c_s.state)
    return BoundReport(bound="bmax-fixed-sigma", targets="P_two_way",
                       direction="upper", bits=val.as_float(),
                       method="fixed-sigma",
                       diagnostics={"sigma_terms": len(sep_certificate)})


def flower_squashed_bits(d: int) -> float:
    return 1.0 + 0.5 * float(np.log2(d))


def flower_reports(d: int) -> list[BoundReport]:
    """Closed-form flower-channel values: squashed entanglement, the
    transposition-bound negativity value, and the E_max upper bound of 2."""
    if d < 2:
        raise LinalgError("d must be >= 2")
    return [
        BoundReport(bound="flower-squashed", targets="E_sq", direction="exact",
                    bits=flower_squashed_bits(d), method="formula"),
        BoundReport(bound="flower-transposition-negativity",
                    targets="Q_two_way", direction="upper",
                    bits=float(np.log2(np.sqrt(d) + 1)), method="formula"),
        BoundReport(bound="flower-emax-upper", targets="E_max",
                    direction="upper", bits=2.0, method="formula",
                    diagnostics={"note": "2*log2(d_C) + E_max of the "
                                 "entanglement-breaking reduced channel"}),
    ]


def error_floor(k: int, m: int, emax_bits: float, alpha: float) -> float:
    """Lower bound on the error of any k-bit key protocol over m channel uses."""
    if not alpha > 1:
        raise LinalgError("alpha must exceed 1")
    coef = 0.5 if math.isinf(alpha) else (alpha - 1.0) / (2.0 * alpha)
    val = 1.0 - 2.0 ** (-coef * (k - m * emax_bits))
    return max(val, 0.0)


def pbit_capacity_gap(d: int) -> tuple[BoundReport, BoundReport]:
    """Key-rate lower bound for the near-private-bit channel against the
    repeated-capacity upper bound computed numerically from the printed
    entanglement-breaking Choi."""
    p = p_of_d(d)
    lower = BoundReport(bound="pbit-key-rate", targets="P_two_way",
                        direction="lower", bits=1.0 - h2(p), method="formula")
    rho = approx_pbit(d)
    pt = linalg.partial_transpose(rho.mat, rho.dims, [2, 3])
    c_t = choi_from_state(DensityMatrix(pt, rho.dims, rho.labels), 2 * d, 2 * d)
    c_s = choi_from_state(eb_choi_for_pbit(d), 2 * d, 2 * d)
    terms = eb_choi_product_decomposition(d)
    fixed = bmax_upper_fixed(c_t, c_s, terms)
    upper = BoundReport(bound="pbit-repeater-gap", targets="P_repeater",
                        direction="upper", bits=fixed.bits,
                        method="fixed-sigma",
                        diagnostics={**fixed.diagnostics,
                                     "closed_form_bits": float(np.log2(1 + p))})
    return lower, upper


def antisym_squashed_bits(d: int) -> float:
    return float(np.log2((d + 2) / d))


def appendix_dichotomy(n: int, l: int) -> dict:
    """Closed-form dichotomy between relative-entropy and squashed measures
    for n copies of the 2l-dim antisymmetric state vs one flower state.

    The bound values are in bits (logarithmic scale); "differs by a factor of
    at least 10" is therefore a gap of at least log2(10) bits.
    """
    if n < 1 or l < 1:
        raise LinalgError("n and l must be >= 1")
    er_tau0 = n / 2.0
    er_tau1 = 2.0
    esq_tau0 = n * float(np.log2(1 + 1 / l))
    esq_tau1 = 0.5 + n / 2.0 + (n / 2.0) * float(np.log2(l))
    gap = float(np.log2(10))
    return {
        "n": n, "l": l,
        "er_tau0_lower_bits": er_tau0,
        "er_tau1_upper_bits": er_tau1,
        "esq_tau0_upper_bits": esq_tau0,
        "esq_tau1_bits": esq_tau1,
        "esq_antisym_upper_bits": antisym_squashed_bits(2 * l),
        "er_dichotomy": bool(er_tau0 - er_tau1 >= gap),
        "esq_dichotomy": bool(esq_tau1 - esq_tau0 >= gap),
    }


def nonlockability_check(rho: DensityMatrix, bprime: int) -> float:
    """D_max(rho || rho_without_B' (x) I/d_B'), asserted <= 2 log2(d_B')."""
    bprime = int(bprime)
    if bprime < 0 or bprime >= len(rho.dims):
        raise LinalgError("subsystem index out of range")
    d = rho.dims[bprime]
    keep = [i for i in range(len(rho.dims)) if i != bprime]
    marg = rho.marginal(keep)
    grouped = linalg.kron(marg.mat, np.eye(d) / d)
    grouped_dims = tuple(rho.dims[i] for i in keep) + (d,)
    order = keep + [bprime]
    inv = [order.index(i) for i in range(len(rho.dims))]
    sigma = DensityMatrix(linalg.permute_subsystems(grouped, grouped_dims, inv),
                          rho.dims, rho.labels)
    val = d_max(rho, sigma).as_float()
    limit = 2.0 * float(np.log2(d))
    if val > limit + 1e-8:
        raise LinalgError(f"non-lockability violated: {val} > {limit}")
    return val
