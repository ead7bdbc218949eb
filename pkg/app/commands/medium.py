"""
Medium Commands Blueprint
Absorption profile utilities: inspect, synthesize and mix
"""

from pathlib import Path

import click
from flask import Blueprint, current_app

from app.errors import DomainError
from app.models.medium import (LorentzLine, load_profile, mix_profiles, profile_stats,
                               save_profile, summer_air_profile, synthetic_profile)

medium_bp = Blueprint('medium', __name__, cli_group='medium')

PRESETS = {
    "summer_air": summer_air_profile,
    "vacuum": lambda: synthetic_profile("vacuum"),
}


def _fail(error: Exception):
    current_app.logger.warning(f"{type(error).__name__}: {error}")
    raise click.ClickException(str(error))


@medium_bp.cli.command('inspect')
@click.argument('path', required=False, type=click.Path(dir_okay=False))
@click.option('--preset', type=click.Choice(sorted(PRESETS)), default=None,
              help='Inspect a bundled profile instead of a file')
def inspect(path, preset):
    """Print the frequency range and absorption statistics of a profile"""
    if (path is None) == (preset is None):
        raise click.UsageError("give either PATH or --preset")
    try:
        profile = PRESETS[preset]() if preset else load_profile(path)
    except (DomainError, OSError) as e:
        _fail(e)

    stats = profile_stats(profile)
    click.echo(f"name:      {stats['name']}")
    click.echo(f"samples:   {stats['samples']}")
    click.echo(f"f_min:     {stats['f_min_hz'] / 1e12:.6g} THz")
    click.echo(f"f_max:     {stats['f_max_hz'] / 1e12:.6g} THz")
    click.echo(f"k_min:     {stats['k_min_per_m']:.6g} 1/m")
    click.echo(f"k_max:     {stats['k_max_per_m']:.6g} 1/m")
    click.echo(f"k_mean:    {stats['k_mean_per_m']:.6g} 1/m")


@medium_bp.cli.command('synth')
@click.argument('kind', type=click.Choice(['vacuum', 'constant', 'lorentzian_lines', 'summer_air']))
@click.option('--out', 'out_file', type=click.Path(dir_okay=False), required=True, help='Profile file to write')
@click.option('--k0', type=float, default=0.0, help='Absorption for the constant kind, 1/m')
@click.option('--line', 'lines', type=(float, float, float), multiple=True,
              help='Lorentzian line: CENTER_THZ HWHM_THZ PEAK_PER_M (repeatable)')
@click.option('--continuum', type=float, default=0.0, help='Continuum k per THz squared')
@click.option('--name', default=None, help='Profile label')
def synth(kind, out_file, k0, lines, continuum, name):
    """Write a synthetic absorption profile"""
    try:
        if kind == 'summer_air':
            profile = summer_air_profile()
        else:
            parsed = [LorentzLine(c * 1e12, w * 1e12, p) for c, w, p in lines]
            profile = synthetic_profile(kind, k0=k0, lines=parsed, continuum=continuum, name=name)
        Path(out_file).parent.mkdir(parents=True, exist_ok=True)
        save_profile(profile, out_file)
    except (DomainError, OSError) as e:
        _fail(e)

    current_app.logger.info(f"Wrote {out_file}")
    click.echo(f"Wrote {profile!r} to {out_file}")


@medium_bp.cli.command('mix')
@click.option('--part', 'parts', type=(click.Path(dir_okay=False), float), multiple=True, required=True,
              help='PATH FRACTION of one component (repeatable)')
@click.option('--out', 'out_file', type=click.Path(dir_okay=False), required=True, help='Mixture file to write')
@click.option('--name', default=None, help='Mixture label')
def mix(parts, out_file, name):
    """Mole-fraction weighted mixture k(f) = Σ x_q K_q(f)"""
    try:
        loaded = [(load_profile(path), fraction) for path, fraction in parts]
        profile = mix_profiles(loaded, name=name)
        Path(out_file).parent.mkdir(parents=True, exist_ok=True)
        save_profile(profile, out_file)
    except (DomainError, OSError) as e:
        _fail(e)

    current_app.logger.info(f"Wrote {out_file}")
    click.echo(f"Wrote {profile!r} to {out_file}")
