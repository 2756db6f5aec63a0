#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# @Author: José Sánchez-Gallego (gallegoj@uw.edu)
# @Date: 2026-10-18
# @Filename: cli.py
# @License: BSD 3-clause (http://www.opensource.org/licenses/BSD-3-Clause)

from __future__ import annotations

import json
import logging
import pathlib

import click
import polars

from sdsstools.configuration import read_yaml_file

from qperceptron import config, log
from qperceptron.activation import qae_gamma, taylor_coefficients
from qperceptron.core import compute_angles


__all__ = ["qperceptron"]


ACTIVATIONS = ["tanh", "sigmoid", "sin", "swish", "custom"]


def _parse_coefficients(value: str | None) -> list[float] | None:
    if value is None:
        return None

    try:
        coefficients = json.loads(value)
    except json.JSONDecodeError as err:
        raise click.BadParameter(f"Invalid JSON array: {err}") from err

    if not isinstance(coefficients, list) or len(coefficients) == 0:
        raise click.BadParameter("Coefficients must be a non-empty JSON array.")

    return [float(coeff) for coeff in coefficients]


@click.group()
@click.option("-v", "--verbose", is_flag=True, help="Output debug messages.")
@click.option(
    "--log-file",
    type=click.Path(dir_okay=False, path_type=pathlib.Path),
    help="Also write the log to this file.",
)
def qperceptron(verbose: bool = False, log_file: pathlib.Path | None = None):
    """Quantum perceptron circuits with Taylor-series activations."""

    log.set_level(logging.DEBUG if verbose else logging.INFO)

    if log_file:
        log.start_file_logging(str(log_file))


@qperceptron.command()
@click.option(
    "-a",
    "--activation",
    type=click.Choice(ACTIVATIONS),
    multiple=True,
    help="Activations to sweep. Defaults to experiments.activations.",
)
@click.option(
    "--config",
    "config_file",
    type=click.Path(exists=True, dir_okay=False),
    help="YAML or JSON sweep configuration. Overrides the other options.",
)
@click.option("-k", "--scale", type=float, help="Input scale of the activation.")
@click.option("-d", "--degree", "degrees", type=int, multiple=True)
@click.option("-S", "--shots", type=int, multiple=True)
@click.option("--points", type=int, help="Number of grid points in [-1, 1].")
@click.option("--seed", type=int, help="Base seed of the sweep.")
@click.option(
    "--mode",
    type=click.Choice(["exact-amplitude", "shots", "qae"]),
    default="shots",
    show_default=True,
)
@click.option("--qae-qubits", type=int, help="Evaluation qubits in QAE mode.")
@click.option("--coefficients", help="JSON array of custom Maclaurin coefficients.")
@click.option("--random-weights", is_flag=True, help="Draw weights and bias.")
@click.option("--workers", type=int, help="Number of worker threads.")
@click.option(
    "-o",
    "--out",
    type=click.Path(file_okay=False, path_type=pathlib.Path),
    help="Output directory.",
)
def sweep(
    activation: tuple[str, ...],
    config_file: str | None,
    scale: float | None,
    degrees: tuple[int, ...],
    shots: tuple[int, ...],
    points: int | None,
    seed: int | None,
    mode: str,
    qae_qubits: int | None,
    coefficients: str | None,
    random_weights: bool,
    workers: int | None,
    out: pathlib.Path | None,
):
    """Sweeps the activation value over the input grid and writes CSV files."""

    from qperceptron.experiments import (
        GridSpec,
        SweepConfig,
        default_sweep_config,
        run_sweep,
        write_sweep,
    )

    out = out or pathlib.Path(config["experiments.output_dir"])

    if config_file:
        try:
            configs = [SweepConfig(**read_yaml_file(config_file))]
        except ValueError as err:
            raise click.UsageError(f"Invalid sweep configuration: {err}") from err
    else:
        activations = activation or config["experiments.activations"]
        overrides = dict(
            scale=scale,
            coefficients=_parse_coefficients(coefficients),
            degrees=list(degrees) or None,
            shots=list(shots) or None,
            grid=GridSpec(points=points) if points else None,
            seed=seed,
            mode=mode,
            qae_qubits=qae_qubits,
            random_weights=random_weights,
            workers=workers,
        )

        if len(degrees) > 0 and len(shots) == 0:
            overrides["shots"] = [config["experiments.matrix"][0][1]] * len(degrees)

        try:
            configs = [default_sweep_config(act, **overrides) for act in activations]
        except ValueError as err:
            raise click.UsageError(str(err)) from err

    for sweep_config in configs:
        results = run_sweep(sweep_config)
        write_sweep(results, sweep_config, out)


@qperceptron.command()
@click.option("-a", "--activation", type=click.Choice(ACTIVATIONS), default="tanh")
@click.option("-k", "--scale", type=float)
@click.option("-d", "--degree", type=int, default=3, show_default=True)
@click.option("--coefficients", help="JSON array of custom Maclaurin coefficients.")
@click.option("--qae", is_flag=True, help="Apply the amplitude-estimation shift.")
def angles(
    activation: str,
    scale: float | None,
    degree: int,
    coefficients: str | None,
    qae: bool,
):
    """Prints the Taylor coefficients, rotation angles and C_d."""

    try:
        series = taylor_coefficients(
            activation,  # type: ignore[arg-type]
            degree,
            scale=scale,
            coefficients=_parse_coefficients(coefficients),
        )
        if qae:
            series = taylor_coefficients(
                activation,  # type: ignore[arg-type]
                degree,
                scale=scale,
                coefficients=_parse_coefficients(coefficients),
                gamma=qae_gamma(series),
            )
        schedule = compute_angles(series)
    except ValueError as err:
        raise click.UsageError(str(err)) from err

    thetas = list(schedule.thetas) + [None]
    table = polars.DataFrame(
        {
            "i": list(range(degree + 1)),
            "a_i": list(series.coeffs),
            "theta_i": thetas,
        }
    )

    click.echo(table)
    click.echo(f"k = {series.k}, gamma = {series.gamma}, C_d = {schedule.c_d:.10g}")


@qperceptron.command()
@click.option("-a", "--activation", type=click.Choice(ACTIVATIONS), default="tanh")
@click.option("-k", "--scale", type=float)
@click.option("--d-min", type=int, default=1, show_default=True)
@click.option("--d-max", type=int, default=9, show_default=True)
@click.option("--zbar", type=float, help="Input scale z̄ of the counted circuit.")
@click.option("--coefficients", help="JSON array of custom Maclaurin coefficients.")
@click.option("--full-control", is_flag=True, help="Control the whole core on l.")
def gates(
    activation: str,
    scale: float | None,
    d_min: int,
    d_max: int,
    zbar: float | None,
    coefficients: str | None,
    full_control: bool,
):
    """Counts the lowered gates of the readout circuit versus d."""

    from qperceptron.experiments import gate_count_report

    if d_min < 1 or d_max < d_min:
        raise click.UsageError("Invalid degree range.")

    report = gate_count_report(
        activation,  # type: ignore[arg-type]
        degrees=range(d_min, d_max + 1),
        zbar=zbar,
        scale=scale,
        coefficients=_parse_coefficients(coefficients),
        optimized=not full_control,
    )

    click.echo(report.to_dataframe())
    click.echo(
        f"count = {report.slope:.2f} d + {report.intercept:.2f} "
        f"(R^2 = {report.r_squared:.5f})"
    )


@qperceptron.command()
@click.option("-c", "--check", "checks", multiple=True, help="Checks to run.")
def verify(checks: tuple[str, ...]):
    """Runs the circuit invariant checks. Exits with an error if any fails."""

    from qperceptron.verify import CHECKS, run_checks

    unknown = [name for name in checks if name not in CHECKS]
    if unknown:
        raise click.UsageError(f"Unknown checks: {', '.join(unknown)}.")

    results = run_checks(list(checks) or None)

    for result in results:
        status = "PASS" if result.passed else "FAIL"
        click.echo(f"{status:5s}{result.name:22s}{result.detail}")

    if not all(result.passed for result in results):
        raise click.exceptions.Exit(1)


if __name__ == "__main__":
    qperceptron()
