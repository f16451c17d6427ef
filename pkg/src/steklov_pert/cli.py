"""Command-line front end.

Four subcommands: ``expand`` (asymptotic corrections for one pair),
``constants`` (closed-form vs quadrature table of the integral constants),
``sweep`` (direct-solver eigenvalue curves over an eps grid, CSV) and
``verify`` (predicted vs fitted corrections with tolerances).

Exit codes: 0 success, 1 configuration error, 2 invalid request (second
order demanded on a pair that splits at first order), 3 verification
tolerance failure.  Set STEKLOV_LOG=info|debug for progress logging.
"""

import csv
import io
import json
import logging
import math
import os
import sys
from dataclasses import dataclass, field

import click
import numpy as np

from . import expansion, integrals, solver
from .errors import FirstOrderSplit, SteklovError
from .series import FourierSeries


class ConfigError(click.ClickException):
    """Configuration problem; message names the offending field.  Exit code 1."""

    exit_code = 1


@dataclass
class RunConfig:
    """Normalized run configuration shared by the subcommands."""

    rho: dict = field(default_factory=dict)
    n: int = None
    eps_grid: dict = field(default_factory=dict)
    solver: dict = field(default_factory=dict)
    output: dict = field(default_factory=dict)

    @classmethod
    def from_dict(cls, data):
        if not isinstance(data, dict):
            raise ConfigError("config: expected a JSON object")
        unknown = set(data) - {"rho", "n", "eps_grid", "solver", "output"}
        if unknown:
            raise ConfigError(f"config: unknown keys {sorted(unknown)}")
        return cls(
            rho=data.get("rho", {}),
            n=data.get("n"),
            eps_grid=data.get("eps_grid", {}),
            solver=data.get("solver", {}),
            output=data.get("output", {}),
        )

    def to_dict(self):
        return {
            "rho": self.rho,
            "n": self.n,
            "eps_grid": self.eps_grid,
            "solver": self.solver,
            "output": self.output,
        }


def _fmt(x):
    """Round-trip-safe decimal formatting (17 significant digits)."""
    return format(float(x) + 0.0, ".17g")


def _parse_rho(rho_text, rho_file):
    if rho_text is not None and rho_file is not None:
        raise ConfigError("rho: give either --rho or --rho-file, not both")
    if rho_text is None and rho_file is None:
        raise ConfigError("rho: missing (use --rho or --rho-file)")
    if rho_file is not None:
        try:
            with open(rho_file, "r", encoding="utf-8") as handle:
                rho_text = handle.read()
        except OSError as exc:
            raise ConfigError(f"rho-file: {exc}") from None
    try:
        return FourierSeries.from_json(rho_text)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _parse_n(n):
    if n is None:
        raise ConfigError("n: missing (use --n)")
    if n < 1:
        raise ConfigError(f"n: must be >= 1, got {n}")
    return n


def _parse_grid(eps_min, eps_max, eps_count, min_count=1):
    if eps_min is None or eps_max is None or eps_count is None:
        raise ConfigError("eps_grid: --eps-min, --eps-max and --eps-count are all required")
    if eps_count < min_count:
        raise ConfigError(f"eps_grid.count: must be >= {min_count}, got {eps_count}")
    if eps_count % 2 == 0:
        raise ConfigError(f"eps_grid.count: must be odd so the grid includes 0, got {eps_count}")
    if abs(eps_min + eps_max) > 1e-15:
        raise ConfigError("eps_grid: grid must be symmetric (eps-min = -eps-max)")
    if eps_count == 1:
        return np.array([0.0])
    return np.linspace(eps_min, eps_max, eps_count)


def _solver_config(basis_size, quad_points, n_branches):
    if basis_size is None:
        basis_size = max(16, 2 * n_branches + 4)
    try:
        return solver.SolverConfig(basis_size=basis_size, quad_points=quad_points)
    except ValueError as exc:
        raise ConfigError(f"solver: {exc}") from None


def _emit(text, out_path):
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    else:
        click.echo(text, nl=False)


def _json_text(payload):
    return json.dumps(payload, indent=2, sort_keys=False) + "\n"


rho_options = [
    click.option("--rho", "rho_text", default=None, help="Boundary profile as inline JSON."),
    click.option(
        "--rho-file",
        type=click.Path(),
        default=None,
        help="Path to a JSON file holding the boundary profile.",
    ),
]


def _apply(options):
    def wrap(f):
        for option in reversed(options):
            f = option(f)
        return f

    return wrap


@click.group()
def cli():
    """Steklov eigenvalue asymptotics for nearly circular unit-area domains."""
    level = os.environ.get("STEKLOV_LOG", "off").strip().lower()
    if level in ("info", "debug"):
        logging.basicConfig(
            level=logging.INFO if level == "info" else logging.DEBUG,
            format="%(name)s %(levelname)s %(message)s",
        )


@cli.command()
@_apply(rho_options)
@click.option("--n", type=int, default=None, help="Eigenvalue pair index (>= 1).")
@click.option(
    "--require-lambda2",
    is_flag=True,
    help="Fail (exit 2) if the second-order pair is unavailable because the pair splits.",
)
@click.option("--out", type=click.Path(), default=None, help="Output path (default stdout).")
def expand(rho_text, rho_file, n, require_lambda2, out):
    """Asymptotic corrections of one eigenvalue pair, as JSON."""
    rho = _parse_rho(rho_text, rho_file)
    n = _parse_n(n)
    report = expansion.expand(rho, n)
    if require_lambda2 and report.lambda2 is None:
        click.echo(
            f"error: pair n={n} splits at first order; no second-order pair exists", err=True
        )
        sys.exit(2)
    _emit(_json_text(report.to_dict()), out)


@cli.command()
@_apply(rho_options)
@click.option("--n", type=int, default=None, help="Eigenvalue pair index (>= 1).")
@click.option(
    "--k",
    "k_list",
    default=None,
    help="Comma-separated coupled indices (default 0..n+max_mode without n).",
)
@click.option("--quad-points", type=int, default=None, help="Quadrature grid size for the oracle.")
@click.option("--out", type=click.Path(), default=None, help="Output path (default stdout).")
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["csv", "json"]),
    default="csv",
    help="Output format.",
)
def constants(rho_text, rho_file, n, k_list, quad_points, out, fmt):
    """Integral-constant table: closed form vs quadrature oracle."""
    rho = _parse_rho(rho_text, rho_file)
    n = _parse_n(n)
    if k_list is not None:
        try:
            ks = sorted({int(part) for part in k_list.split(",") if part.strip() != ""})
        except ValueError:
            raise ConfigError(f"k: expected comma-separated integers, got {k_list!r}") from None
        if any(k < 0 for k in ks):
            raise ConfigError("k: indices must be >= 0")
        if n in ks:
            raise ConfigError(f"k: coupled index k = n = {n} is undefined")
    else:
        ks = [k for k in range(n + rho.max_mode + 1) if k != n]

    single = integrals.single_constants(rho, n)
    single_quad = integrals.quadrature_single_table(rho, n, quad_points)
    rows = [
        (kind, n, None, single[kind], single_quad[kind], abs(single[kind] - single_quad[kind]))
        for kind in integrals.SINGLE_KINDS
    ]
    for k in ks:
        closed = integrals.coupled_constants(rho, n, k)
        quad = integrals.quadrature_coupled_table(rho, n, k, quad_points)
        rows.extend(
            (kind, n, k, closed[kind], quad[kind], abs(closed[kind] - quad[kind]))
            for kind in integrals.COUPLED_KINDS
        )

    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["name", "n", "k", "closed_form", "quadrature", "abs_diff"])
        for kind, nn, k, closed, quad, diff in rows:
            writer.writerow([kind, nn, "" if k is None else k, _fmt(closed), _fmt(quad), _fmt(diff)])
        _emit(buf.getvalue(), out)
    else:
        payload = {
            "n": n,
            "single": {kind: single[kind] for kind in integrals.SINGLE_KINDS},
            "single_quadrature": {kind: single_quad[kind] for kind in integrals.SINGLE_KINDS},
            "coupled": {
                str(k): integrals.coupled_constants(rho, n, k) for k in ks
            },
            "coupled_quadrature": {
                str(k): integrals.quadrature_coupled_table(rho, n, k, quad_points) for k in ks
            },
            "max_abs_diff": max(row[5] for row in rows),
        }
        _emit(_json_text(payload), out)


@cli.command()
@_apply(rho_options)
@click.option("--eps-min", type=float, default=None, help="Left end of the eps grid.")
@click.option("--eps-max", type=float, default=None, help="Right end of the eps grid.")
@click.option("--eps-count", type=int, default=None, help="Number of grid points (odd).")
@click.option("--branches", "n_branches", type=int, default=4, help="Nonzero branches to track.")
@click.option("--basis-size", type=int, default=None, help="Harmonic mode pairs K.")
@click.option("--quad-points", type=int, default=None, help="Boundary quadrature points.")
@click.option("--out", type=click.Path(), default=None, help="CSV output path (default stdout).")
@click.option("--fit-out", type=click.Path(), default=None, help="Also write a fit summary JSON.")
def sweep(rho_text, rho_file, eps_min, eps_max, eps_count, n_branches, basis_size, quad_points, out, fit_out):
    """Eigenvalue branches over an eps grid, as plot-ready CSV."""
    rho = _parse_rho(rho_text, rho_file)
    grid = _parse_grid(eps_min, eps_max, eps_count)
    cfg = _solver_config(basis_size, quad_points, n_branches)
    try:
        curves = solver.sweep(rho, grid, cfg, n_branches=n_branches)
    except (SteklovError, ValueError) as exc:
        raise ConfigError(str(exc)) from None
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["eps", "branch_index", "eigenvalue"])
    for j, eps in enumerate(curves.eps_grid):
        for i in range(curves.branches.shape[0]):
            writer.writerow([_fmt(eps), i, _fmt(curves.branches[i, j])])
    _emit(buf.getvalue(), out)
    if fit_out:
        fits = solver.fit_derivatives(curves)
        with open(fit_out, "w", encoding="utf-8") as handle:
            handle.write(_json_text([f.to_dict() for f in fits]))


def _pair_rows(n, predicted1, predicted2, fits):
    """Set-wise pairing of predicted and fitted corrections for one pair."""
    fitted1 = sorted(f.lambda1 for f in fits)
    fitted2 = sorted(f.lambda2 for f in fits)
    scale = n * math.sqrt(math.pi)
    rows = []
    for i in range(2):
        p1 = predicted1[i]
        f1 = fitted1[i]
        err1 = abs(f1 - p1) / max(abs(p1), scale)
        row = {
            "branch": i,
            "lambda1_predicted": p1,
            "lambda1_fitted": f1,
            "lambda1_rel_error": err1,
            "lambda2_predicted": None,
            "lambda2_fitted": fitted2[i],
            "lambda2_rel_error": None,
            "fit_residual": fits[i].residual,
        }
        if predicted2 is not None:
            p2 = predicted2[i]
            row["lambda2_predicted"] = p2
            row["lambda2_rel_error"] = abs(fitted2[i] - p2) / max(abs(p2), scale)
        rows.append(row)
    return rows


@cli.command()
@_apply(rho_options)
@click.option("--n", type=int, default=None, help="Eigenvalue pair index (>= 1).")
@click.option("--eps-min", type=float, default=-0.008, help="Left end of the fit window.")
@click.option("--eps-max", type=float, default=0.008, help="Right end of the fit window.")
@click.option("--eps-count", type=int, default=9, help="Number of grid points (odd, >= 5).")
@click.option("--basis-size", type=int, default=None, help="Harmonic mode pairs K.")
@click.option("--quad-points", type=int, default=None, help="Boundary quadrature points.")
@click.option("--tol-lambda1", type=float, default=1e-3, help="Relative tolerance on lambda1.")
@click.option("--tol-lambda2", type=float, default=2e-2, help="Relative tolerance on lambda2.")
@click.option("--out", type=click.Path(), default=None, help="JSON report path (default stdout).")
def verify(rho_text, rho_file, n, eps_min, eps_max, eps_count, basis_size, quad_points, tol_lambda1, tol_lambda2, out):
    """Cross-check predicted corrections against direct-solver fits.

    Exits 3 when a relative error exceeds its tolerance (the report is still
    written).  Fitted and predicted pair values are compared set-wise.
    """
    rho = _parse_rho(rho_text, rho_file)
    n = _parse_n(n)
    grid = _parse_grid(eps_min, eps_max, eps_count, min_count=5)
    n_branches = 2 * n
    cfg = _solver_config(basis_size, quad_points, max(n_branches, n + rho.max_mode))
    report = expansion.expand(rho, n)
    try:
        curves = solver.sweep(rho, grid, cfg, n_branches=n_branches)
    except (SteklovError, ValueError) as exc:
        raise ConfigError(str(exc)) from None
    fits = solver.fit_derivatives(curves)
    pair_fits = fits[2 * n - 2 : 2 * n]
    rows = _pair_rows(n, report.lambda1, report.lambda2, pair_fits)
    failures = [r for r in rows if r["lambda1_rel_error"] > tol_lambda1]
    failures += [
        r
        for r in rows
        if r["lambda2_rel_error"] is not None and r["lambda2_rel_error"] > tol_lambda2
    ]
    payload = {
        "n": n,
        "rho": rho.to_dict(),
        "lambda0": report.lambda0,
        "branches": rows,
        "tolerances": {"lambda1": tol_lambda1, "lambda2": tol_lambda2},
        "passed": not failures,
    }
    _emit(_json_text(payload), out)
    if failures:
        click.echo(f"error: {len(failures)} correction(s) outside tolerance", err=True)
        sys.exit(3)


def main():
    try:
        cli(standalone_mode=False)
    except click.ClickException as exc:
        exc.show()
        sys.exit(exc.exit_code)
    except click.Abort:
        sys.exit(1)


if __name__ == "__main__":
    main()
