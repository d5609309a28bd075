# -*- coding: utf-8 -*-
"""Run manifests and write their artifacts.

Every output file carries the digest of the manifest it was computed from. Exit status is
0 on success, 2 when the manifest, its parameters or the output directory are invalid and
3 on a numerical failure, which also leaves a ``diagnostic.json`` in the output directory.
"""

import csv
import json
from pathlib import Path
from typing import Optional

import click
from aiida.cmdline.utils import echo
from aiida.engine import ExitCode
from pydantic import ValidationError

from loglip_sde.cli import cmd_root
from loglip_sde.cli.experiments import EXPERIMENTS, ExperimentOutput
from loglip_sde.cli.manifest import Manifest, load_manifest, manifest_digest, manifest_schema, output_directory
from loglip_sde.coeffs.registry import build_field
from loglip_sde.exceptions import NumericalFailure
from loglip_sde.paths.io import format_float

__all__ = ["EXIT_CODES", "execute", "write_outputs"]

EXIT_CODES = {
    "success": ExitCode(0),
    "invalid": ExitCode(2, "invalid manifest, parameters or output directory"),
    "numerical": ExitCode(3, "numerical failure, see diagnostic.json"),
}


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return format_float(value)
    return str(value)


def _dump_json(data: dict) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def write_outputs(output: ExperimentOutput, manifest: Manifest, digest: str, out_dir: Path) -> list[Path]:
    """``<kind>.csv``, ``<kind>.json`` and a copy of the manifest; identical inputs give identical bytes."""
    csv_path = out_dir / f"{manifest.kind}.csv"
    with csv_path.open("w", newline="") as handle:
        handle.write(f"# manifest_digest: {digest}\n")
        handle.write(f"# kind: {manifest.kind}\n")
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(output.header)
        for row in output.rows:
            writer.writerow([_cell(value) for value in row])

    json_path = out_dir / f"{manifest.kind}.json"
    json_path.write_text(
        _dump_json({"manifest_digest": digest, "kind": manifest.kind, "summary": output.summary})
    )
    manifest_path = out_dir / "manifest.json"
    manifest_path.write_text(manifest.to_json())
    return [csv_path, json_path, manifest_path]


def _fail(ctx: click.Context, reason: str, message: str):
    echo.echo_error(message)
    ctx.exit(EXIT_CODES[reason].status)


def execute(
    ctx: click.Context,
    manifest_path: Path,
    out: Optional[str],
    threads: int,
    dry_run: bool,
    expected_kind: Optional[str] = None,
):
    """Validate the manifest, run its experiment and write the artifacts."""
    try:
        manifest = load_manifest(manifest_path)
        if expected_kind is not None and manifest.kind != expected_kind:
            raise ValueError(f"manifest kind `{manifest.kind}` does not match the command `{expected_kind}`")
        experiment = EXPERIMENTS[manifest.kind]
        parameters = manifest.resolved_parameters()
        field = None
        if experiment.needs_field:
            if manifest.field is None:
                raise ValueError(f"`{manifest.kind}` requires a field")
            field = build_field(manifest.field.key, manifest.field.params)
        elif manifest.field is not None:
            echo.echo_warning(f"`{manifest.kind}` does not use a field, `{manifest.field.key}` is ignored")
        out_dir = output_directory(manifest, out)
    except (ValidationError, ValueError, OSError) as exc:
        _fail(ctx, "invalid", f"invalid manifest `{manifest_path}`: {exc}")

    digest = manifest_digest(manifest)
    if dry_run:
        echo.echo_success(f"manifest `{manifest_path}` is valid ({manifest.kind}, digest {digest})")
        return

    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        marker = out_dir / ".write_check"
        marker.touch()
        marker.unlink()
    except OSError as exc:
        _fail(ctx, "invalid", f"output directory `{out_dir}` is not writable: {exc}")

    echo.echo_info(f"running `{manifest.kind}` (protocol {manifest.protocol}, seed {manifest.seed})")
    try:
        output = experiment.run(field, parameters, manifest.seed, threads)
    except (NumericalFailure, ArithmeticError) as exc:
        diagnostic = {
            "manifest_digest": digest,
            "kind": manifest.kind,
            "message": str(exc),
            "diagnostic": getattr(exc, "diagnostic", {}),
        }
        (out_dir / "diagnostic.json").write_text(_dump_json(diagnostic))
        _fail(ctx, "numerical", f"numerical failure: {exc}")
    except ValueError as exc:
        _fail(ctx, "invalid", f"invalid parameters: {exc}")

    for path in write_outputs(output, manifest, digest, out_dir):
        echo.echo_info(f"wrote {path}")
    echo.echo_success(f"`{manifest.kind}` finished")


def manifest_options(func):
    """Options shared by `run` and every experiment command."""
    options = [
        click.option(
            "manifest_path",
            "--manifest",
            required=True,
            type=click.Path(exists=True, dir_okay=False, path_type=Path),
            help="JSON run manifest.",
        ),
        click.option("out", "--out", default=None, help="Output directory, overrides the manifest."),
        click.option(
            "threads", "--threads", default=1, type=click.IntRange(min=1), help="Worker cap for trial farming."
        ),
        click.option("dry_run", "--dry-run", is_flag=True, help="Validate the manifest without computing."),
    ]
    for option in reversed(options):
        func = option(func)
    return func


@cmd_root.command("run")
@manifest_options
@click.pass_context
def cmd_run(ctx, manifest_path, out, threads, dry_run):
    """Run the experiment named by the manifest kind."""
    execute(ctx, manifest_path, out, threads, dry_run)


def _experiment_command(kind: str, description: str):
    @cmd_root.command(kind, help=f"Run a `{kind}` manifest: {description}.")
    @manifest_options
    @click.pass_context
    def _command(ctx, manifest_path, out, threads, dry_run):
        execute(ctx, manifest_path, out, threads, dry_run, expected_kind=kind)

    return _command


for _kind, _experiment in EXPERIMENTS.items():
    _experiment_command(_kind, _experiment.description)


@cmd_root.command("schema")
def cmd_schema():
    """Print the JSON schema of run manifests."""
    echo.echo(json.dumps(manifest_schema(), indent=2, sort_keys=True))
