"""Command-line front end: state/channel construction, divergences, bounds,
and the verification suites.

Exit codes: 0 success, 1 computation/solver failure, 2 usage or input errors.
"""

from __future__ import annotations

import json
import math
import sys

import click
import numpy as np

from . import bounds, channels, io, sdp, states, verify
from .linalg import LinalgError
from .sdp import SdpError

CSV_COLUMNS = ["bound", "targets", "direction", "bits", "method", "relaxation"]


def _fail(code: int, msg: str):
    click.echo(f"error: {msg}", err=True)
    sys.exit(code)


def _parse_alpha(text: str) -> float:
    text = text.strip().lower()
    if text == "inf":
        return math.inf
    try:
        alpha = float(text)
    except ValueError:
        _fail(2, f"bad --alpha value {text!r}")
    if alpha < 1:
        _fail(2, "alpha must be >= 1 ('1' and 'inf' route to the endpoints)")
    return alpha


def _load_density(path: str) -> states.DensityMatrix:
    try:
        return io.density_from_dict(io.read_json(path))
    except FileNotFoundError:
        _fail(2, f"no such file: {path}")
    except json.JSONDecodeError as exc:
        _fail(2, f"malformed JSON in {path}: {exc}")
    except LinalgError as exc:
        _fail(2, f"bad state in {path}: {exc}")


def _emit(payload: dict, out: str | None):
    text = json.dumps(payload, indent=2)
    if out:
        with open(out, "w") as f:
            f.write(text + "\n")
    click.echo(text)


def _reports_out(reports, out, fmt):
    if fmt == "csv":
        lines = [",".join(CSV_COLUMNS)]
        for r in reports:
            d = r.to_dict()
            lines.append(",".join("" if d[c] is None else str(d[c])
                                  for c in CSV_COLUMNS))
        text = "\n".join(lines)
        if out:
            with open(out, "w") as f:
                f.write(text + "\n")
        click.echo(text)
    else:
        payload = [r.to_dict() for r in reports]
        _emit(payload if len(payload) > 1 else payload[0], out)


@click.group()
def main():
    """Certified numerical bounds on two-way assisted channel capacities."""


@main.command()
@click.option("--family", required=True,
              type=click.Choice(["flower", "pbit", "gamma2", "max-entangled",
                                 "antisym", "random"]))
@click.option("--d", type=int, default=2, show_default=True)
@click.option("--seed", type=int, default=42, show_default=True)
@click.option("--out", type=click.Path(), default=None)
def state(family, d, seed, out):
    """Construct a named state and write it as JSON."""
    try:
        rho = {
            "flower": lambda: states.flower_state(d),
            "pbit": lambda: states.approx_pbit(d),
            "gamma2": lambda: states.gamma2_density(d),
            "max-entangled": lambda: states.max_entangled(d),
            "antisym": lambda: states.antisymmetric_state(d),
            "random": lambda: states.random_state([d], seed),
        }[family]()
    except LinalgError as exc:
        _fail(1, str(exc))
    click.echo(f"{family} state: dim {rho.dim}, dims {list(rho.dims)}")
    if out:
        io.write_json(out, io.density_to_dict(rho))


def _build_channel(family, d, p, gamma, path) -> channels.ChoiMatrix:
    if family == "file":
        if not path:
            _fail(2, "--choi FILE is required with --channel-family file")
        try:
            return io.choi_from_dict(io.read_json(path))
        except FileNotFoundError:
            _fail(2, f"no such file: {path}")
        except json.JSONDecodeError as exc:
            _fail(2, f"malformed JSON in {path}: {exc}")
    builders = {
        "flower": lambda: channels.flower_channel(d),
        "pbit": lambda: channels.pbit_channel(d),
        "identity": lambda: channels.identity_channel(d),
        "depolarizing": lambda: channels.depolarizing(d, p),
        "erasure": lambda: channels.erasure(d, p),
        "ad": lambda: channels.amplitude_damping(gamma),
    }
    if family not in builders:
        _fail(2, f"unknown channel family {family!r}")
    return builders[family]()


@main.command()
@click.option("--family", "--channel-family", required=True)
@click.option("--d", type=int, default=2, show_default=True)
@click.option("--p", type=float, default=0.0, show_default=True)
@click.option("--gamma", type=float, default=0.0, show_default=True)
@click.option("--choi", "path", type=click.Path(), default=None)
@click.option("--transpose", type=click.Choice(["none", "in", "out"]),
              default="none", show_default=True)
@click.option("--out", type=click.Path(), default=None)
def channel(family, d, p, gamma, path, transpose, out):
    """Construct a channel Choi matrix and write it as JSON."""
    try:
        c = _build_channel(family, d, p, gamma, path)
        if transpose != "none":
            c = channels.compose_transpose(c, transpose)
    except (LinalgError, SdpError) as exc:
        _fail(1, str(exc))
    ppt, min_eig = channels.is_ppt_choi(c)
    click.echo(f"{family} channel: {c.d_in} -> {c.d_out}, "
               f"PPT Choi: {ppt} (min PT eigenvalue {min_eig:.3e})")
    if out:
        io.write_json(out, io.choi_to_dict(c))


@main.command()
@click.option("--alpha", required=True,
              help="Renyi parameter: a float > 1, '1', or 'inf'.")
@click.option("--rho", "rho_path", required=True, type=click.Path())
@click.option("--sigma", "sigma_path", required=True, type=click.Path())
@click.option("--out", type=click.Path(), default=None)
def divergence(alpha, rho_path, sigma_path, out):
    """Sandwiched Renyi divergence between two states, in bits."""
    from . import divergences
    a = _parse_alpha(alpha)
    rho = _load_density(rho_path)
    sigma = _load_density(sigma_path)
    try:
        val = divergences.divergence(rho, sigma, a)
    except LinalgError as exc:
        _fail(1, str(exc))
    payload = val.to_dict()
    payload["alpha"] = "inf" if math.isinf(a) else a
    _emit(payload, out)


@main.command()
@click.option("--bound", "which", required=True,
              type=click.Choice(["transposition", "bmax-ppt", "bmax-fixed",
                                 "emax-ppt", "lognegativity",
                                 "flower-formulas", "pbit-gap", "appendix"]))
@click.option("--channel-family", "family", default=None)
@click.option("--d", type=int, default=2, show_default=True)
@click.option("--p", type=float, default=0.0, show_default=True)
@click.option("--gamma", type=float, default=0.0, show_default=True)
@click.option("--choi", "path", type=click.Path(), default=None)
@click.option("--n", type=int, default=20, show_default=True)
@click.option("--l", type=int, default=16, show_default=True)
@click.option("--out", type=click.Path(), default=None)
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]),
              default="json", show_default=True,
              help=f"CSV columns, in order: {', '.join(CSV_COLUMNS)}")
def bound(which, family, d, p, gamma, path, n, l, out, fmt):
    """Compute a named capacity bound as a BoundReport."""
    from .reports import BoundReport
    try:
        if which == "flower-formulas":
            reports = bounds.flower_reports(d)
        elif which == "pbit-gap":
            reports = list(bounds.pbit_capacity_gap(d))
        elif which == "appendix":
            table = bounds.appendix_dichotomy(n, l)
            _emit(table, out)
            return
        else:
            if family is None and path is None:
                _fail(2, "--channel-family or --choi is required for this bound")
            c = _build_channel(family or "file", d, p, gamma, path)
            if which == "transposition":
                reports = [bounds.transposition_bound(c)]
            elif which == "lognegativity":
                from . import linalg
                pt = linalg.partial_transpose(c.mat, (c.d_in, c.d_out), [1])
                reports = [BoundReport(
                    bound="log-negativity", targets="Q_two_way",
                    direction="lower",
                    bits=max(float(np.log2(linalg.trace_norm(pt))), 0.0),
                    method="formula")]
            elif which == "bmax-ppt":
                reports = [sdp.bmax_ppt(c)]
            elif which == "emax-ppt":
                reports = [sdp.dmax_over_ppt(c.state, [1])]
            elif which == "bmax-fixed":
                if (family or "file") != "pbit":
                    _fail(2, "bmax-fixed requires --channel-family pbit "
                             "(uses the printed entanglement-breaking Choi)")
                reports = [bounds.pbit_capacity_gap(d)[1]]
    except (LinalgError, SdpError) as exc:
        _fail(1, str(exc))
    _reports_out(reports, out, fmt)


@main.command(name="verify")
@click.option("--suite", default="all", show_default=True,
              type=click.Choice(("all",) + verify.SUITES))
@click.option("--seed", type=int, default=42, show_default=True)
@click.option("--out", type=click.Path(), default=None)
def verify_cmd(suite, seed, out):
    """Run the seeded verification suites; exit 0 iff everything passes."""
    try:
        if suite == "all":
            report = verify.reproduce_all(seed)
        else:
            report = verify.run_suite(suite, seed)
    except (LinalgError, SdpError) as exc:
        _fail(1, str(exc))
    n_pass = sum(1 for c in report.cases if c["status"] == "pass")
    click.echo(f"suite {report.suite}: {n_pass}/{len(report.cases)} cases pass")
    for case in report.cases:
        if case["status"] == "fail":
            click.echo(f"  FAIL {case['name']}: observed {case['observed']} "
                       f"vs target {case['target']} (tol {case['tolerance']})")
    if out:
        io.write_json(out, report.to_dict())
    sys.exit(0 if report.all_pass else 1)


if __name__ == "__main__":
    main()
