"""The ``chiralsieve`` command line.

Every subcommand reads a JSON run configuration (``--config``) and writes its
files under ``--out`` (or the config's ``outputs`` directory). Errors are
reported on stderr as ``error_code=<name>`` and ``message=<text>`` lines and
map onto exit codes 2 (config), 3 (construction), 4 (physics precondition)
and 5 (self-check).
"""

import json
import logging
import math
import pathlib
import sys
from dataclasses import dataclass
from typing import Optional

import click
import pandas as pd

from . import __version__
from .config import RunConfig
from .diffraction import astigmatic_propagate
from .diffraction import astigmatic_transform
from .diffraction import count_dark_stripes
from .diffraction import propagate_sieve
from .diffraction import stripe_normal
from .diffraction import write_z_stack
from .diffraction import z_stack
from .diffraction.astigmatism import matched_waist
from .errors import ChiralSieveError
from .errors import ConfigError
from .errors import SelfCheckError
from .fields import GridSpec
from .fields import measure_winding
from .fields.io import write_cvf1
from .fields.io import write_intensity_pgm
from .fields.io import write_phase_pgm
from .masks import rasterize
from .masks import write_mask_csv
from .modes import decompose
from .modes import dominant_fraction
from .modes import lg_field
from .modes import oam_spectrum
from .modes import selection_factor
from .modes import selection_sum
from .modes import write_coeffs_csv
from .modes import write_spectrum_csv
from .presets import preset
from .presets import preset_names


logger = logging.getLogger(__name__)

LOG_LEVELS = (logging.WARNING, logging.INFO, logging.DEBUG)

# Largest deviation tolerated between the closed-form and summed selection factors
SELECTION_TOLERANCE = 1e-12

# Raster samples per smallest pinhole radius
RASTER_SAMPLES_PER_RADIUS = 4


@dataclass
class State:
    """Options of the command group, shared with every subcommand."""

    config_path: Optional[str]
    out: Optional[str]
    threads: Optional[int]
    seed: Optional[int]

    def config(self) -> RunConfig:

        if self.config_path is None:
            raise ConfigError("this command needs --config <path>")

        return RunConfig.from_json(self.config_path)

    def workers(self, config: RunConfig) -> int:
        return self.threads if self.threads is not None else config.threads

    def output_dir(self, config: RunConfig = None) -> pathlib.Path:

        path = pathlib.Path(self.out if self.out is not None else (config.outputs if config else "out"))
        path.mkdir(parents=True, exist_ok=True)

        return path


class ChiralSieveGroup(click.Group):
    """Command group that turns library errors into exit codes."""

    def invoke(self, ctx):

        try:
            return super(ChiralSieveGroup, self).invoke(ctx)

        except ChiralSieveError as error:
            click.echo(f"error_code={error.error_code}", err=True)
            click.echo(f"message={error}", err=True)
            ctx.exit(error.exit_code)


@click.group(cls=ChiralSieveGroup)
@click.option("--config", "config_path", type=click.Path(dir_okay=False), help="JSON run configuration.")
@click.option("--out", type=click.Path(file_okay=False), help="Output directory (overrides config outputs).")
@click.option("--threads", type=click.IntRange(min=1), help="Worker threads (overrides config threads).")
@click.option("--seed", type=int, help="Reserved; every computation is deterministic.")
@click.option("-v", "--verbose", count=True, help="More log output on stderr (-v info, -vv debug).")
@click.version_option(version=__version__)
@click.pass_context
def cli(ctx, config_path, out, threads, seed, verbose):
    """Chiral pinhole sieves: mask synthesis, diffraction and OAM analysis."""

    logging.basicConfig(
        level=LOG_LEVELS[min(verbose, len(LOG_LEVELS) - 1)],
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )

    ctx.obj = State(config_path=config_path, out=out, threads=threads, seed=seed)


def mask_grid(mask) -> GridSpec:
    """Square mask-plane grid resolving the smallest pinhole and holding the whole mask."""

    pitch = float(mask.radii.min()) / RASTER_SAMPLES_PER_RADIUS
    half = int(math.ceil(mask.max_radius / pitch)) + 2

    return GridSpec(nx=2 * half, ny=2 * half, pitch_x=pitch, pitch_y=pitch)


@cli.command()
@click.pass_obj
def mask(state: State):
    """Build the mask: pinhole CSV, raster PGM and raster CVF1."""

    config = state.config()
    out = state.output_dir(config)
    sieve = config.build_mask()

    write_mask_csv(out / "mask.csv", sieve)

    raster = rasterize(sieve, mask_grid(sieve))
    write_intensity_pgm(out / "mask.pgm", raster)
    write_cvf1(out / "mask.cvf1", raster)

    click.echo(f"pinholes={len(sieve)}")
    click.echo(f"symmetry_m={sieve.symmetry_m}")


def _simulate(state: State, config: RunConfig):

    sieve = config.build_mask()
    logger.info("mask with %d pinholes, symmetry %d", len(sieve), sieve.symmetry_m)

    return propagate_sieve(sieve, config.setup, config.obs.grid, threads=state.workers(config))


@cli.command()
@click.pass_obj
def simulate(state: State):
    """Propagate the mask: intensity and phase PGM plus field CVF1."""

    config = state.config()
    out = state.output_dir(config)
    field = _simulate(state, config)

    write_intensity_pgm(out / "intensity.pgm", field)
    write_phase_pgm(out / "phase.pgm", field)
    write_cvf1(out / "field.cvf1", field)

    click.echo(f"field={out / 'field.cvf1'}")


@cli.command()
@click.pass_obj
def spectrum(state: State):
    """OAM spectrum CSV, coefficient CSV and winding numbers at the configured radii."""

    config = state.config()
    out = state.output_dir(config)
    basis = config.basis_spec()

    field = _simulate(state, config)
    coeffs = decompose(field, basis, threads=state.workers(config))
    power = oam_spectrum(coeffs)

    write_spectrum_csv(out / "spectrum.csv", power)
    write_coeffs_csv(out / "coeffs.csv", coeffs)

    click.echo(f"ell_range={basis.ell_min},{basis.ell_max}")
    click.echo(f"dominant_ell={power.dominant_ell}")
    click.echo(f"dominant_fraction={dominant_fraction(power):.6g}")

    rows = []

    for radius in config.analysis.ring_radii_m:
        winding = measure_winding(field, radius, config.analysis.n_samples)
        rows.append((radius, int(winding), winding.residual))
        click.echo(f"winding radius_m={radius:.6g} ell={int(winding)}")

    report = pd.DataFrame(rows, columns=["radius_m", "winding", "residual"])
    report.to_csv(out / "winding.csv", index=False, float_format="%.17g")


@cli.command()
@click.option("--lg-ell", type=int, help="Transform a synthesized LG(0, ell) mode instead of the mask field.")
@click.pass_obj
def astig(state: State, lg_ell):
    """Astigmatic transformation: intensity PGM and dark-stripe count."""

    config = state.config()
    out = state.output_dir(config)
    grid = config.obs.grid

    if lg_ell is not None:
        orientation = config.setup.astig.orientation if config.setup.astig else 0.0
        field = astigmatic_transform(lg_field(0, lg_ell, matched_waist(grid), grid), orientation)

    else:
        field = astigmatic_propagate(config.build_mask(), config.setup, grid, threads=state.workers(config))

    normal = config.analysis.stripe_normal_rad

    if normal is None:
        normal = stripe_normal(field)

    stripes = count_dark_stripes(field, normal, half_length=config.analysis.stripe_extent_m)

    write_intensity_pgm(out / "astig_intensity.pgm", field)
    write_cvf1(out / "astig.cvf1", field)

    click.echo(f"stripe_normal_rad={normal:.6g}")
    click.echo(f"dark_stripes={stripes}")


@cli.command()
@click.pass_obj
def zstack(state: State):
    """Defocus series: one CVF1 per slice, y-z slice PGM and manifest CSV."""

    config = state.config()

    if config.zstack is None:
        raise ConfigError("zstack needs a zstack section in the config")

    out = state.output_dir(config) / "zstack"

    stack = z_stack(
        config.build_mask(),
        config.setup,
        config.zstack.delta_fs,
        config.obs.grid,
        ring_cut=config.zstack.ring_cut_m,
        threads=state.workers(config),
    )
    write_z_stack(out, stack)

    click.echo(f"slices={len(stack)}")
    click.echo(f"waist_delta_f_m={stack.waist_delta_f:.6g}")


@cli.command("verify-selection")
@click.option("-m", "orders", type=click.IntRange(min=1), multiple=True, default=(2, 3, 5, 7, 11), show_default=True)
@click.option("--ell-max", type=click.IntRange(min=0), default=30, show_default=True)
def verify_selection(orders, ell_max):
    """Compare the closed-form selection factor with the summed geometric series."""

    rows = []

    for m in orders:
        for ell in range(-ell_max, ell_max + 1):
            factor = selection_factor(ell, m)
            summed = selection_sum(ell, m)
            rows.append((ell, m, factor, summed.real, summed.imag, abs(summed - factor) < SELECTION_TOLERANCE))

    report = pd.DataFrame(rows, columns=["ell", "m", "factor", "sum_re", "sum_im", "agree"])
    click.echo(report.to_csv(index=False, float_format="%.3e"), nl=False)

    failures = int((~report["agree"]).sum())

    if failures:
        raise SelfCheckError(f"{failures} selection factor(s) disagree with the summed series")


@cli.command("preset")
@click.argument("name", required=False)
@click.option("--list", "list_names", is_flag=True, help="List the preset names.")
def show_preset(name, list_names):
    """Print a named run configuration as JSON."""

    if list_names or name is None:
        click.echo("\n".join(preset_names()))
        return

    click.echo(json.dumps(preset(name), indent=2))


def run():
    """Entry point for console_scripts."""
    cli(prog_name="chiralsieve")


if __name__ == "__main__":
    run()
