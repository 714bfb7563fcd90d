"""
calabi/cli/main.py

`calabi` command line: JSON reports on stdout, diagnostics and tables on stderr.
Exit codes: 0 success, 1 a verification failed, 2 bad input.
"""

from __future__ import annotations

import functools
import json
import logging
import os
import sys
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Type

import click
import numpy as np
from dotenv import load_dotenv
from pydantic import BaseModel, ValidationError
from rich.console import Console
from rich.table import Table

from calabi.catalog import parse_catalog_id, parse_surface, sample_points
from calabi.catalog.defaults import CatalogConfig
from calabi.cli.defaults import VerifierConfig
from calabi.cli.evaluate import classify_at, draw_points, invariants_at, load_points, run_points
from calabi.cli.reports import (ClassifyReport, DiagReport, ReconstructReport, Rejection, Report,
                                Summary)
from calabi.cli.verify import verify_catalog
from calabi.config_loader import DEFAULT_CONFIG_PATH, load_calabi_config, module_settings
from calabi.consts import ENV_PATH, TOLERANCE_ENV_VAR, TOOL_VERSION
from calabi.diag import SymFamily, simultaneous_diagonalize
from calabi.diag.defaults import CommuteDiagConfig
from calabi.errors import CalabiError, InvalidParametersError
from calabi.jets import eval_jet
from calabi.normal_form.defaults import NormalFormConfig
from calabi.normal_form.maximize import frame_cubic, orthonormal_frame
from calabi.reconstruct import (FlatParallelData, closed_form, diagonal_form, graph_equivalence_defect,
                                graph_height, integrate_frames, recovered_function, recovered_surface)
from calabi.reconstruct.defaults import ReconstructConfig
from calabi.tensors import bundle_at

logger = logging.getLogger(__name__)
stderr = Console(stderr=True)


# ─────────────────────────────────────────────────────────────────────────────
# Shared state, tolerance, errors
# ─────────────────────────────────────────────────────────────────────────────


@dataclass
class CliState:
    full_config: Optional[Dict[str, Any]] = None

    def settings(self, schema: Type[BaseModel], module_path: str) -> Any:
        return module_settings(schema, module_path, self.full_config)

    @property
    def verifier(self) -> VerifierConfig:
        return self.settings(VerifierConfig, "calabi.cli")


def configure_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(asctime)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
        force=True,
    )


def resolve_tolerance(flag: Optional[float], config: VerifierConfig) -> float:
    """--tol, then CALABI_TOL (a repo-root .env is read first), then the config file, then 1e-8."""
    if flag is not None:
        tol = flag
    else:
        load_dotenv(ENV_PATH)
        raw = os.getenv(TOLERANCE_ENV_VAR)
        if raw:
            try:
                tol = float(raw)
            except ValueError as exc:
                raise InvalidParametersError(f"{TOLERANCE_ENV_VAR}={raw!r} is not a number") from exc
        else:
            tol = config.tolerance
    if not np.isfinite(tol) or tol <= 0:
        raise InvalidParametersError(f"tolerance must be positive, got {tol}")
    return tol


def handle_errors(command: Callable) -> Callable:
    """Bad input becomes a one-line diagnostic and exit code 2."""

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except (CalabiError, ValidationError, ValueError, FileNotFoundError) as exc:
            message = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
            click.echo(f"error: {type(exc).__name__}: {message}", err=True)
            sys.exit(2)

    return wrapper


def _floats(text: Optional[str]) -> List[float]:
    if not text:
        return []
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise InvalidParametersError(f"expected comma-separated numbers, got {text!r}") from exc


def point_options(command: Callable) -> Callable:
    options = [
        click.argument("spec"),
        click.option("--dim", type=int, default=None, help="Dimension of a DSL function (default: inferred)."),
        click.option("--random", "random_count", type=int, default=None, help="Number of seeded random points."),
        click.option("--seed", type=int, default=None, help="Seed for --random."),
        click.option("--points", "points_file", type=click.Path(dir_okay=False), default=None,
                     help="JSON file with a list of points."),
        click.option("--tol", type=float, default=None, help="Verdict tolerance."),
        click.option("--workers", type=int, default=None, help="Threads for per-point work."),
    ]
    for option in reversed(options):
        command = option(command)
    return command


def _points_for(state: CliState, f, random_count, seed, points_file):
    config = state.verifier
    if points_file is not None:
        return load_points(points_file, f.dim), None
    seed = config.seed if seed is None else seed
    count = config.sample_count if random_count is None else random_count
    if count < 1:
        raise InvalidParametersError(f"--random needs a positive count, got {count}")
    return draw_points(f, count, seed, config.box, state.settings(CatalogConfig, "calabi.catalog")), seed


# ─────────────────────────────────────────────────────────────────────────────
# Commands
# ─────────────────────────────────────────────────────────────────────────────


@click.group()
@click.version_option(TOOL_VERSION, prog_name="calabi")
@click.option("--config", "config_path", type=click.Path(dir_okay=False), default=None,
              help="Runtime configuration JSON (default: app/config.json when present).")
@click.option("--verbose", is_flag=True, help="Debug logging on stderr.")
@click.pass_context
def cli(ctx: click.Context, config_path: Optional[str], verbose: bool) -> None:
    """Calabi-geometric invariants of convex graph hypersurfaces."""
    configure_logging(verbose)
    full_config = None
    try:
        if config_path is not None:
            full_config = load_calabi_config(config_path)
        elif DEFAULT_CONFIG_PATH.exists():
            full_config = load_calabi_config(DEFAULT_CONFIG_PATH)
    except (FileNotFoundError, json.JSONDecodeError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    ctx.obj = CliState(full_config=full_config)


@cli.command()
@point_options
@click.pass_obj
@handle_errors
def invariants(state: CliState, spec, dim, random_count, seed, points_file, tol, workers) -> None:
    """Pointwise invariants (J, R, |T|^2, |grad A|, |Riem|, case, spectrum) of SPEC."""
    config = state.verifier
    tol = resolve_tolerance(tol, config)
    nf_config = state.settings(NormalFormConfig, "calabi.normal_form")
    f = parse_surface(spec, dim=dim)
    points, seed = _points_for(state, f, random_count, seed, points_file)

    outcomes = run_points(lambda x: invariants_at(f, x, nf_config), points, workers or config.workers)
    records = [record for record, _ in outcomes if not isinstance(record, Rejection)]
    rejected = [record for record, _ in outcomes if isinstance(record, Rejection)]
    discrepancies = [gap for record, gap in outcomes if not isinstance(record, Rejection)]

    report = Report(
        surface=f.label,
        dim=f.dim,
        seed=seed,
        tolerance=tol,
        records=records,
        rejected=rejected,
        summary=Summary.from_records(records, discrepancies, tol),
    )
    click.echo(report.to_json())


@cli.command()
@point_options
@click.pass_obj
@handle_errors
def classify(state: CliState, spec, dim, random_count, seed, points_file, tol, workers) -> None:
    """Case label and Ejiri spectrum of SPEC at each point."""
    config = state.verifier
    tol = resolve_tolerance(tol, config)
    nf_config = state.settings(NormalFormConfig, "calabi.normal_form")
    f = parse_surface(spec, dim=dim)
    points, seed = _points_for(state, f, random_count, seed, points_file)

    outcomes = run_points(lambda x: classify_at(f, x, nf_config), points, workers or config.workers)
    report = ClassifyReport(
        surface=f.label,
        dim=f.dim,
        seed=seed,
        tolerance=tol,
        records=[o for o in outcomes if not isinstance(o, Rejection)],
        rejected=[o for o in outcomes if isinstance(o, Rejection)],
    )
    click.echo(report.to_json())


def _print_checks(report) -> None:
    table = Table(title="catalog verification")
    for column in ("surface", "check", "value", "limit", "status"):
        table.add_column(column)
    for check in report.checks:
        status = "[green]pass[/green]" if check.passed else "[red]FAIL[/red]"
        table.add_row(check.surface, check.name, f"{check.value:.3e}", f"{check.limit:.1e}", status)
    stderr.print(table)


@cli.command("verify-catalog")
@click.argument("ids", nargs=-1)
@click.option("--all", "run_all", is_flag=True, help="Every surface listed in the catalog config.")
@click.option("--seed", type=int, default=None)
@click.option("--samples", type=int, default=None, help="Sample points per surface.")
@click.option("--tol", type=float, default=None)
@click.option("--workers", type=int, default=None)
@click.pass_obj
@handle_errors
def verify_catalog_command(state: CliState, ids, run_all, seed, samples, tol, workers) -> None:
    """Run the property suite on catalog surfaces; exit 1 if any check fails."""
    config = state.verifier
    tol = resolve_tolerance(tol, config)
    catalog_config = state.settings(CatalogConfig, "calabi.catalog")
    if not ids and not run_all:
        raise click.UsageError("give catalog ids or --all")
    surfaces = [parse_catalog_id(text) for text in (catalog_config.surfaces if run_all else ids)]

    updates = {k: v for k, v in (("sample_count", samples), ("workers", workers)) if v is not None}
    config = config.model_copy(update=updates)
    seed = config.seed if seed is None else seed
    report = verify_catalog(
        surfaces,
        tol,
        seed,
        config=config,
        nf_config=state.settings(NormalFormConfig, "calabi.normal_form"),
        catalog_config=catalog_config,
    )

    _print_checks(report)
    click.echo(report.to_json())
    worst = report.worst()
    if worst is not None:
        click.echo(
            f"FAILED: {worst.surface} {worst.name} = {worst.value:.3e} (limit {worst.limit:.1e})", err=True
        )
        sys.exit(1)


@cli.command()
@click.option("--a", "a_text", default="", help="Diagonal cubic values a_1 >= ... >= a_r > 0.")
@click.option("--n", "n", type=int, required=True, help="Dimension.")
@click.option("--v", "v_text", default=None, help="Ray v_1,...,v_n (default all ones).")
@click.option("--steps", type=int, default=None)
@click.option("--tol", type=float, default=None)
@click.pass_obj
@handle_errors
def reconstruct(state: CliState, a_text, n, v_text, steps, tol) -> None:
    """Rebuild the flat hypersurface with diagonal cubic values A and compare with the closed form."""
    config = state.verifier
    tol = resolve_tolerance(tol, config)
    rc_config = state.settings(ReconstructConfig, "calabi.reconstruct")
    data = FlatParallelData.build(n=n, diag=_floats(a_text), v=_floats(v_text) or None)

    path = integrate_frames(data, steps, rc_config)
    closed = closed_form(data)
    graph_gap = max(
        abs(graph_height(data, path.x[:-1]) - path.x[-1]),
        graph_equivalence_defect(data, path.x),
    )

    surface = recovered_surface(data)
    f = recovered_function(data)
    round_trip = 0.0
    for x in sample_points(surface, 5, np.random.default_rng(config.seed)):
        bundle = bundle_at(eval_jet(f, x))
        values = diagonal_form(frame_cubic(bundle.cubic.A, orthonormal_frame(bundle.metric)), rc_config).values
        round_trip = max(round_trip, float(np.abs(values - data.cubic_diagonal).max()))

    report = ReconstructReport(
        n=n,
        a=list(data.diag),
        c=list(data.weights),
        surface=f.label,
        rays=list(data.v),
        steps=path.steps,
        x_integrated=path.x.tolist(),
        x_closed=closed.tolist(),
        integration_residual=float(np.abs(path.x - closed).max()),
        error_estimate=path.error_estimate,
        graph_residual=graph_gap,
        round_trip_residual=round_trip,
        tolerance=tol,
    )
    click.echo(report.to_json())
    if not report.passed:
        sys.exit(1)


@cli.command()
@click.argument("matrices_file", type=click.Path(dir_okay=False))
@click.option("--tol", type=float, default=None, help="Commutator tolerance (relative).")
@click.pass_obj
@handle_errors
def diag(state: CliState, matrices_file, tol) -> None:
    """Simultaneously diagonalize the commuting symmetric matrices in MATRICES_FILE."""
    with open(matrices_file, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if isinstance(data, dict):
        tol = data.get("tol", tol) if tol is None else tol
        data = data.get("matrices", [])
    try:
        family = SymFamily.from_matrices(data, commutator_tol=tol)
    except (TypeError, ValueError) as exc:
        raise InvalidParametersError(f"{matrices_file}: matrices must be square number arrays") from exc

    result = simultaneous_diagonalize(family, state.settings(CommuteDiagConfig, "calabi.diag"))
    report = DiagReport(
        P=result.P.tolist(),
        eigenvalues=result.eigenvalues.tolist(),
        residuals=result.residuals,
        max_off_diagonal=result.max_off_diagonal,
        orthogonality_defect=result.orthogonality_defect,
        recursion_depth=result.recursion_depth,
    )
    click.echo(report.to_json())


if __name__ == "__main__":
    cli()
