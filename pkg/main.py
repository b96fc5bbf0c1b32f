"""
    Figure commands

    Command line front end writing the data and images of each experiment:

        fig1      theoretical and generated |c3> amplitude/phase per sigma'
        fig2      P(sigma') of every basis state (analytic m = -1 order)
        fig3      far fields and isolated orders per tilt, plus the fig4 CSV
        fig4      P(N_t) with and without preconditioning (CSV only)
        fig6      irradiance, interferograms and the demonstration hologram
        selftest  quick numerical consistency checks
"""

# ==============================================================================
# Imports
# ==============================================================================

import argparse
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Sequence

import numpy as np

from diffraction import (
    HORIZONTAL,
    VERTICAL,
    azimuthal_order_weights,
    back_propagate,
    far_field,
    jacobi_anger_check,
    modulo2pi_order_weights,
    synth_interferogram,
)
from errors import OamCghError
from field import ComplexField, GridGeometry
from hologram import I_MAX_MODES, SIGMA_PRIME, TILT_WAVES, smooth_wavefront_error
from imaging import farfield_gray, hologram_gray, to_gray, write_field_pair, write_pgm
from pipeline import PipelineResult, synthesize_hologram
from records import read_wfe_map, write_complex_grid, write_hologram, write_real_grid
from records import write_states, write_sweep
from scenario import ExperimentConfig, parse_grid
from sensitivity import analytic_generated, sweep_sigma, sweep_tilt
from states import build_mub_tables, gram_classes, sample_state_on_grid
from support import J1_PEAK, J1_PEAK_ARG, bessel_j

# ==============================================================================
# Constants
# ==============================================================================

COMMANDS = ("fig1", "fig2", "fig3", "fig4", "fig6", "selftest")

EXIT_OK = 0
EXIT_POINT_FAILURE = 1
EXIT_ERROR = 2

SELFTEST_GRID = GridGeometry(128, 128, 100)
SELFTEST_TOL = 1e-10
SELFTEST_TILT = 10
SINC_TOL = 1e-3
JACOBI_ANGER_M = 10
JACOBI_ANGER_TOL = 1e-6

logger = logging.getLogger(__name__)

# ==============================================================================
# Classes
# ==============================================================================


@dataclass
class Outcome:
    """Files written by a command and the number of failed points"""

    paths: List[Path] = field(default_factory=list)
    failures: int = 0

    @property
    def status(self) -> int:
        return EXIT_POINT_FAILURE if self.failures else EXIT_OK


# ==============================================================================
# Commands
# ==============================================================================


def _wfe_map(config: ExperimentConfig):
    if config.wfe_map is None:
        return None
    return read_wfe_map(config.wfe_map, config.grid)


def _first_state(config: ExperimentConfig):
    states = config.states()
    if len(states) > 1:
        logger.info("Using %s out of %d selected states", states[0].label, len(states))
    return states[0]


def cmd_fig1(config: ExperimentConfig) -> Outcome:
    """Theory pair and one generated pair per sigma' for each selected state"""
    grid = config.grid
    out = config.out_dir / "fig1"
    outcome = Outcome()
    for state in config.states():
        theory = sample_state_on_grid(state, grid)
        outcome.paths.extend(write_field_pair(theory, out / f"theory_{state.label}"))
        mask = grid.mask
        for sigma_prime in config.fig1_sigma_primes:
            values = np.zeros(grid.shape, dtype=complex)
            values[mask] = analytic_generated(
                theory.amplitude[mask], theory.phase[mask], sigma_prime
            )
            generated = ComplexField(values, grid, label=f"generated {state.label}")
            stem = out / f"generated_{state.label}_s{sigma_prime:.3f}"
            outcome.paths.extend(write_field_pair(generated, stem))
    return outcome


def cmd_fig2(config: ExperimentConfig) -> Outcome:
    """sigma' sweep of all twelve states to one CSV"""
    table = build_mub_tables()
    records = sweep_sigma(list(table), config.sweep_sigma_primes)
    out = config.out_dir
    return Outcome([write_states(table, out / "states.csv"), write_sweep(records, out / "fig2.csv")])


def cmd_fig3_fig4(config: ExperimentConfig, images: bool = True) -> Outcome:
    """Tilt sweep through the numerical pipeline, images and CSV"""
    state = _first_state(config)
    out = config.out_dir / "fig3"
    outcome = Outcome()

    def save(result: PipelineResult) -> None:
        tag = "pre" if result.report.precondition else "raw"
        stem = out / f"{state.label}_N{result.report.tilt_waves:g}_{tag}"
        outcome.paths.append(
            write_pgm(farfield_gray(result.farfield, config.gamma), f"{stem}_farfield")
        )
        outcome.paths.extend(write_field_pair(result.generated, f"{stem}_order"))

    records = sweep_tilt(
        state,
        config.tilts,
        config.grid,
        config.sigma_prime,
        config.precondition_flags,
        config.i_max_mode,
        config.workers,
        save if images else None,
        _wfe_map(config),
    )
    outcome.failures = len(config.tilts) * len(config.precondition_flags) - len(records)
    outcome.paths.append(write_sweep(records, config.out_dir / "fig4.csv"))
    return outcome


def cmd_fig6(config: ExperimentConfig) -> Outcome:
    """Irradiance, vertical and horizontal interferograms, demonstration hologram"""
    state = _first_state(config)
    grid = config.grid
    out = config.out_dir / "fig6"
    theory, hologram = synthesize_hologram(
        state,
        config.sigma_prime,
        TILT_WAVES,
        True in config.precondition_flags,
        grid,
        config.i_max_mode,
        _wfe_map(config),
    )
    outcome = Outcome()
    outcome.paths.append(write_pgm(to_gray(theory.intensity, 0.0), out / f"{state.label}_irradiance"))
    outcome.paths.append(write_complex_grid(theory, out / f"{state.label}_field.csv"))
    for axis in (VERTICAL, HORIZONTAL):
        pattern = synth_interferogram(theory, config.interferogram_tilt, axis)
        outcome.paths.append(write_pgm(to_gray(pattern, 0.0, 1.0), out / f"{state.label}_{axis}"))
    stem = out / f"{state.label}_hologram_s{hologram.sigma:.2f}"
    outcome.paths.append(write_pgm(hologram_gray(hologram), stem))
    outcome.paths.append(write_hologram(hologram, stem.with_name(stem.name + ".csv")))
    efficiency = hologram.efficiency
    outcome.paths.append(write_pgm(to_gray(efficiency, 0.0), out / f"{state.label}_efficiency"))
    logger.info(
        "Hologram sigma=%.2f rad, peak efficiency %.3f, max phase aberration %.3f rad",
        hologram.sigma,
        float(np.max(efficiency)),
        hologram.max_phase_aberration,
    )
    return outcome


def cmd_selftest(config: ExperimentConfig) -> Outcome:
    """Basis overlaps, J1 peak, transform unitarity, order series"""
    checks = {}
    checks["gram"] = not gram_classes(build_mub_tables())
    checks["j1 peak"] = abs(bessel_j(1, J1_PEAK_ARG) - J1_PEAK) < SELFTEST_TOL

    rng = np.random.default_rng(0)
    grid = SELFTEST_GRID
    values = np.where(grid.mask, rng.normal(size=grid.shape) + 1j * rng.normal(size=grid.shape), 0)
    pupil = ComplexField(values, grid)
    farfield = far_field(pupil)
    restored = back_propagate(farfield)
    checks["unitary"] = (
        abs(farfield.power - pupil.power) <= SELFTEST_TOL * pupil.power
        and np.allclose(restored.values, values, atol=SELFTEST_TOL)
    )

    orders = range(-3, 4)
    weights = np.array(modulo2pi_order_weights(orders))
    numeric = np.array(azimuthal_order_weights(1, orders))
    checks["sinc series"] = bool(np.max(np.abs(weights - numeric)) < SINC_TOL)

    state = build_mub_tables()["c3"]
    _, hologram = synthesize_hologram(state, SIGMA_PRIME, SELFTEST_TILT, False, grid)
    checks["jacobi-anger"] = jacobi_anger_check(hologram, JACOBI_ANGER_M) < JACOBI_ANGER_TOL

    for name, passed in checks.items():
        logger.log(logging.INFO if passed else logging.ERROR, "%-13s %s", name, "ok" if passed else "FAILED")
    return Outcome(failures=sum(not passed for passed in checks.values()))


def cmd_wfe(config: ExperimentConfig, pv_waves: float, seed: int = 0) -> Outcome:
    """Smooth SLM surface error map written as CSV and image"""
    grid = config.grid
    wfe = smooth_wavefront_error(grid, pv_waves, seed)
    out = config.out_dir / "wfe"
    return Outcome([write_real_grid(wfe, out / "wfe.csv"), write_pgm(to_gray(wfe, 0.0), out / "wfe")])


# ==============================================================================
# Command line
# ==============================================================================


def build_parser() -> argparse.ArgumentParser:
    """Sub-commands sharing the configuration flags"""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="flat YAML file of ExperimentConfig keys")
    common.add_argument("--grid", type=parse_grid, help="ROWSxCOLS, e.g. 768x1024")
    common.add_argument("--sigma-prime", type=float, help="phase scaling parameter sigma'")
    common.add_argument("--tilt", type=float, nargs="+", help="reference tilts [waves]")
    common.add_argument(
        "--precondition",
        choices=("on", "off", "both"),
        help="precondition flags for the tilt sweep and fig6",
    )
    common.add_argument("--out", help="output directory (also OAM_CGH_OUT)")
    common.add_argument("--gamma", type=float, help="far-field display exponent")
    common.add_argument("--imax-mode", choices=I_MAX_MODES, help="I_max convention")
    common.add_argument("--state", help="state label (c3), basis (mub2) or all")
    common.add_argument("--workers", type=int, help="threads for sweep points")
    common.add_argument("--wfe-map", help="CSV of SLM surface error [waves]")
    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true")
    verbosity.add_argument("-q", "--quiet", action="store_true")

    parser = argparse.ArgumentParser(description=__doc__.split("\n\n")[0].strip())
    commands = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        commands.add_parser(name, parents=[common])
    wfe = commands.add_parser("wfe", parents=[common], help="write a smooth SLM surface error map")
    wfe.add_argument("--pv", type=float, default=2.15, help="peak-to-valley [waves]")
    wfe.add_argument("--seed", type=int, default=0)
    return parser


def config_from_args(args: argparse.Namespace) -> ExperimentConfig:
    """Defaults < --config < OAM_CGH_OUT < flags"""
    rows, cols = args.grid if args.grid else (None, None)
    flags = {"on": (True,), "off": (False,), "both": (True, False)}.get(args.precondition)
    return ExperimentConfig.load(
        args.config,
        rows=rows,
        cols=cols,
        sigma_prime=args.sigma_prime,
        tilts=args.tilt,
        precondition_flags=flags,
        out=args.out,
        gamma=args.gamma,
        i_max_mode=args.imax_mode,
        state=args.state,
        workers=args.workers,
        wfe_map=args.wfe_map,
    ).validate()


def run(args: argparse.Namespace, config: ExperimentConfig) -> Outcome:
    if args.command == "fig1":
        return cmd_fig1(config)
    if args.command == "fig2":
        return cmd_fig2(config)
    if args.command in ("fig3", "fig4"):
        return cmd_fig3_fig4(config, images=args.command == "fig3")
    if args.command == "fig6":
        return cmd_fig6(config)
    if args.command == "wfe":
        return cmd_wfe(config, args.pv, args.seed)
    return cmd_selftest(config)


def main(argv: Sequence[str] = None) -> int:
    args = build_parser().parse_args(argv)
    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    try:
        config = config_from_args(args)
        outcome = run(args, config)
    except OamCghError as error:
        logger.error("%s: %s", type(error).__name__, error)
        return EXIT_ERROR
    except OSError as error:
        logger.error("Cannot write results: %s", error)
        return EXIT_ERROR
    logger.info("%s: %d files written, %d failures", args.command, len(outcome.paths), outcome.failures)
    return outcome.status


if __name__ == "__main__":
    sys.exit(main())
