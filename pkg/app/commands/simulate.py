"""
Simulation Commands Blueprint
Command-line entry points for sweeps, spectra, the bandwidth table and preset scenarios
"""

from dataclasses import replace
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional

import click
import yaml
from flask import Blueprint, current_app

from app import __version__
from app.commands.examples import get_examples
from app.errors import DomainError
from app.models.experiment import RunManifest
from app.models.pulse import bandwidth_table_rows
from app.utils.export import (write_manifest, write_rmse_csv, write_runs_csv,
                              write_spectrum_csv, write_bandwidth_table_csv)
from app.utils.simulator import DoaSimulator
from app.utils.subspace import estimate_doa
from app.utils.validators import ValidationError, load_config_file, validate_config

simulate_bp = Blueprint('simulate', __name__, cli_group=None)


def _fail(error: Exception):
    current_app.logger.warning(f"{type(error).__name__}: {error}")
    raise click.ClickException(str(error))


def _load(config_path: str, seed: Optional[int] = None, workers: Optional[int] = None):
    config = validate_config(load_config_file(config_path))
    if seed is not None:
        config = replace(config, seed=seed)
    if workers is not None:
        if workers == 0 or workers < -1:
            raise ValidationError("sweep.workers", "must be a positive count or -1 for all cores")
        config = replace(config, workers=workers)
    return config


@simulate_bp.cli.command('simulate')
@click.argument('config_path', type=click.Path(dir_okay=False))
@click.option('--out', 'out_dir', type=click.Path(file_okay=False), default=None,
              help='Output directory (default: OUTPUT_DIR)')
@click.option('--seed', type=click.IntRange(min=0), default=None, help='Override sweep.seed')
@click.option('--workers', type=int, default=None, help='Override sweep.workers (-1 = all cores)')
@click.option('--spectra/--no-spectra', default=True, help='Export one spectrum per sweep point')
def simulate(config_path, out_dir, seed, workers, spectra):
    """
    Run a Monte Carlo sweep

    Writes rmse.csv, runs.csv, spectra/ and manifest.yaml into the output
    directory. A manifest.yaml is itself a valid CONFIG_PATH.
    """
    try:
        config = _load(config_path, seed, workers)
        out = Path(out_dir or current_app.config['OUTPUT_DIR'])
        current_app.logger.info(
            f"Running {config.sweep_axis} sweep from {config_path}: {len(config.points())} point(s), "
            f"{config.runs} run(s) each")

        simulator = DoaSimulator(config)
        reports = simulator.run()

        write_rmse_csv(reports, out / 'rmse.csv')
        write_runs_csv(reports, out / 'runs.csv')
        if spectra:
            for index, (_, _, point) in enumerate(config.points()):
                spectrum, _ = simulator.spectrum(simulator.prepare(point), index, 0)
                write_spectrum_csv(spectrum, out / 'spectra' / f'point_{index:03d}.csv')

        manifest = RunManifest(
            config_path=str(config_path),
            config=config.to_dict(),
            output_dir=str(out),
            version=__version__,
            timestamp=datetime.now(timezone.utc).isoformat(timespec='seconds'),
        )
        write_manifest(manifest, out / 'manifest.yaml')
    except (ValidationError, DomainError, OSError) as e:
        _fail(e)

    for report in reports:
        label = f"{report.sweep_value:g}"
        if report.secondary_value is not None:
            label += f" / {report.secondary_value:g}"
        click.echo(f"{config.sweep_axis}={label}: RMSE {report.rmse_deg:.6f} deg "
                   f"(±{report.stderr_deg:.6f}, {report.n_run} runs)")
    click.echo(f"Results written to {out}")


@simulate_bp.cli.command('spectrum')
@click.argument('config_path', type=click.Path(dir_okay=False))
@click.option('--out', 'out_file', type=click.Path(dir_okay=False), default=None,
              help='Spectrum CSV (default: OUTPUT_DIR/spectrum.csv)')
@click.option('--tensor', 'tensor_file', type=click.Path(dir_okay=False), default=None,
              help='Also dump the snapshot tensor as text')
@click.option('--point', type=click.IntRange(min=0), default=0, help='Sweep point index')
@click.option('--trial', type=click.IntRange(min=0), default=0, help='Trial index')
@click.option('--seed', type=click.IntRange(min=0), default=None, help='Override sweep.seed')
def spectrum(config_path, out_file, tensor_file, point, trial, seed):
    """Export the IMUSIC spectrum of one trial as theta_deg,value rows"""
    try:
        config = _load(config_path, seed)
        points = config.points()
        if point >= len(points):
            raise ValidationError("point", f"sweep has {len(points)} point(s), got index {point}")
        _, _, scenario = points[point]

        simulator = DoaSimulator(config)
        music, tensor = simulator.spectrum(simulator.prepare(scenario), point, trial)
        out = Path(out_file) if out_file else Path(current_app.config['OUTPUT_DIR']) / 'spectrum.csv'
        write_spectrum_csv(music, out)
        if tensor_file:
            Path(tensor_file).parent.mkdir(parents=True, exist_ok=True)
            tensor.dump(tensor_file)
            current_app.logger.info(f"Wrote {tensor_file}")
    except (ValidationError, DomainError, OSError) as e:
        _fail(e)

    click.echo(f"Peak at {estimate_doa(music, scenario.refine):.6f} deg "
               f"(true {scenario.doa_deg:g} deg), {len(music)} grid points written to {out}")


@simulate_bp.cli.command('table1')
@click.option('--out', 'out_file', type=click.Path(dir_okay=False), default=None,
              help='Table CSV (default: OUTPUT_DIR/bandwidth_table.csv)')
def bandwidth_table(out_file):
    """Regenerate the half-power bandwidth table"""
    rows = bandwidth_table_rows()
    out = Path(out_file) if out_file else Path(current_app.config['OUTPUT_DIR']) / 'bandwidth_table.csv'
    try:
        write_bandwidth_table_csv(rows, out)
    except OSError as e:
        _fail(e)

    for row in rows:
        if row["flag"]:
            click.echo(f"n={row['n']}, fc={row['fc_thz']:g} THz differs from the published cell: {row['flag']}")
    click.echo(f"{len(rows)} rows written to {out}")


simulate_bp.cli.add_command(bandwidth_table, 'bandwidth-table')


@simulate_bp.cli.command('examples')
@click.argument('name', required=False)
@click.option('--out', 'out_file', type=click.Path(dir_okay=False), default=None,
              help='Write the scenario file here instead of stdout')
def examples(name, out_file):
    """List preset scenarios, or print one as a scenario file"""
    presets = get_examples()
    if name is None:
        for key, preset in presets.items():
            click.echo(f"{key:30s} {preset['name']}: {preset['description']}")
        return

    if name not in presets:
        raise click.ClickException(f"Unknown example {name!r} (choose from: {', '.join(presets)})")
    text = yaml.safe_dump(presets[name]['config'], sort_keys=False, default_flow_style=False)
    if out_file is None:
        click.echo(text, nl=False)
        return
    try:
        Path(out_file).write_text(text, encoding='utf-8')
    except OSError as e:
        _fail(e)
    click.echo(f"Wrote {out_file}")
