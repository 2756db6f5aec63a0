#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# @Author: José Sánchez-Gallego (gallegoj@uw.edu)
# @Date: 2026-10-18
# @Filename: experiments.py
# @License: BSD 3-clause (http://www.opensource.org/licenses/BSD-3-Clause)

from __future__ import annotations

import json
import math
import pathlib
from concurrent.futures import ThreadPoolExecutor
from functools import partial

from typing import Annotated, Sequence

import numpy
import polars
from numpy.polynomial import Polynomial
from pydantic import BaseModel, Field, model_validator

from qperceptron import __version__, config, log
from qperceptron.activation import (
    TaylorSeries,
    activation_value,
    qae_gamma,
    series_eval,
    taylor_coefficients,
)
from qperceptron.core import assemble_core
from qperceptron.lowering import count_gates
from qperceptron.qae import qae_estimate
from qperceptron.readout import (
    build_readout_circuit,
    measure_output,
    output_from_probability,
    readout_probability,
    readout_state,
)
from qperceptron.simulator import make_rng, point_seed, sample_counts
from qperceptron.state_prep import PerceptronInputs
from qperceptron.types import Activation, SweepMode


__all__ = [
    "GridSpec",
    "SweepConfig",
    "SweepRecord",
    "SweepResult",
    "GateCountReport",
    "ErrorScalingReport",
    "perceptron_inputs",
    "evaluate_point",
    "sweep_series",
    "run_sweep",
    "mse_report",
    "mse_over_seeds",
    "write_sweep",
    "gate_count_report",
    "error_scaling_report",
    "default_sweep_config",
]


CSV_COLUMNS = {
    "zbar": "zbar",
    "z": "z",
    "y": "y",
    "t_d": "T_d",
    "y_q": "y_q",
    "r_c": "R_c",
    "r_q": "R_q",
    "p": "P",
    "sigma_pred": "sigma_pred",
}


class GridSpec(BaseModel):
    """Equally spaced values of the input scale ``z̄``."""

    min: float = Field(default=-1.0, ge=-1.0, le=1.0)
    max: float = Field(default=1.0, ge=-1.0, le=1.0)
    points: int = Field(default=101, ge=2)

    def values(self) -> numpy.ndarray:
        return numpy.linspace(self.min, self.max, self.points)


class SweepConfig(BaseModel):
    """Configuration of an activation sweep."""

    activation: Annotated[Activation, Field(description="Activation function")]
    scale: Annotated[float | None, Field(description="Input scale k")] = None
    coefficients: Annotated[
        list[float] | None,
        Field(description="Maclaurin coefficients of a custom activation"),
    ] = None
    degrees: Annotated[list[int], Field(min_length=1, description="Series degrees")]
    shots: Annotated[list[int], Field(min_length=1, description="Shots per degree")]
    grid: GridSpec = Field(default_factory=GridSpec)
    weights: Annotated[list[float], Field(min_length=1)] = [1.0, 1.0, 1.0, 1.0]
    bias: float = 0.0
    random_weights: Annotated[
        bool,
        Field(description="Draw weights and bias uniformly in [-1, 1] from the seed"),
    ] = False
    seed: Annotated[int, Field(ge=0, description="Base seed of the sweep")] = 0
    mode: SweepMode = "shots"
    qae_qubits: Annotated[int, Field(ge=1)] = 6
    qae_shots: int | None = None
    n: Annotated[int | None, Field(description="Input qubits")] = None
    workers: Annotated[int, Field(ge=1)] = 1

    @model_validator(mode="after")
    def check_sweep(self):
        if len(self.degrees) != len(self.shots):
            raise ValueError("degrees and shots must have the same length.")
        if any(dd < 1 for dd in self.degrees):
            raise ValueError("Degrees must be at least one.")
        if any(ss < 1 for ss in self.shots):
            raise ValueError("Shots must be positive.")
        if self.activation == "custom" and not self.coefficients:
            raise ValueError("A custom activation requires coefficients.")
        if any(abs(ww) > 1 for ww in self.weights) or abs(self.bias) > 1:
            raise ValueError("Weights and bias must be in [-1, 1].")
        return self


class SweepRecord(BaseModel):
    """Result of a sweep at one value of ``z̄``."""

    zbar: float
    z: float
    y: float = Field(description="Exact activation f(k z)")
    t_d: float = Field(description="Truncated Taylor series T_d(z)")
    y_q: float = Field(description="Quantum estimate of the activation")
    r_c: float = Field(description="Classical residual y - T_d")
    r_q: float | None = Field(default=None, description="Residual y - ỹ_q of the fit")
    p: float = Field(description="Readout probability, or ã in QAE mode")
    sigma_pred: float = Field(description="Predicted standard deviation of y_q")
    degenerate: bool = False


class SweepResult(BaseModel):
    """All the records of a sweep for one degree."""

    activation: Activation
    scale: float
    d: int
    shots: int
    mode: SweepMode
    records: list[SweepRecord]

    def to_dataframe(self) -> polars.DataFrame:
        """Returns the records as a data frame with the CSV column names."""

        data = {
            column: [getattr(record, field) for record in self.records]
            for field, column in CSV_COLUMNS.items()
        }

        return polars.DataFrame(data, schema={col: polars.Float64 for col in data})

    @property
    def filename(self) -> str:
        suffix = f"S{self.shots}" if self.mode != "exact-amplitude" else "exact"
        return f"{self.activation}_d{self.d}_{suffix}.csv"


class GateCountReport(BaseModel):
    """Lowered gate counts of the readout circuit as a function of ``d``."""

    activation: Activation
    degrees: list[int]
    counts: list[dict[str, int]]
    slope: float
    intercept: float
    r_squared: float

    def to_dataframe(self) -> polars.DataFrame:
        rows = [{"d": dd, **counts} for dd, counts in zip(self.degrees, self.counts)]
        return polars.DataFrame(rows)


class ErrorScalingReport(BaseModel):
    """Empirical and predicted spread of ``y_q`` for several ``(d, S)`` pairs."""

    activation: Activation
    zbar: float
    repeats: int
    degrees: list[int]
    shots: list[int]
    empirical: list[float]
    predicted: list[float]

    def ratios(self) -> tuple[float, float]:
        """Ratios of the last to the first empirical and predicted deviations."""

        return (
            self.empirical[-1] / self.empirical[0],
            self.predicted[-1] / self.predicted[0],
        )


def default_sweep_config(activation: Activation, **kwargs) -> SweepConfig:
    """Returns the sweep defined in the ``experiments`` configuration section."""

    matrix = config["experiments.matrix"]
    extra = config["experiments.swish_extra_order"] if activation == "swish" else 0

    defaults = dict(
        activation=activation,
        degrees=[int(dd) + extra for dd, _ in matrix],
        shots=[int(ss) for _, ss in matrix],
        grid=GridSpec(**config["experiments.grid"]),
        weights=config["experiments.weights"],
        bias=config["experiments.bias"],
        seed=config["experiments.seed"],
        qae_qubits=config["qae.qubits"],
        workers=config["experiments.workers"],
    )
    defaults.update({key: value for key, value in kwargs.items() if value is not None})

    return SweepConfig(**defaults)


def perceptron_inputs(
    zbar: float,
    weights: Sequence[float],
    bias: float = 0.0,
) -> PerceptronInputs:
    """Inputs ``x = z̄ (1, ..., 1)`` with the given weights and bias."""

    return PerceptronInputs(x=(zbar,) * len(weights), w=tuple(weights), b=bias)


def _sweep_weights(sweep: SweepConfig) -> tuple[list[float], float]:
    if not sweep.random_weights:
        return sweep.weights, sweep.bias

    rng = make_rng(sweep.seed)
    values = rng.uniform(-1.0, 1.0, size=len(sweep.weights) + 1)

    return [float(ww) for ww in values[:-1]], float(values[-1])


def sweep_series(sweep: SweepConfig, d: int) -> TaylorSeries:
    """The series used for degree ``d``, shifted by ``γ`` in QAE mode."""

    series = taylor_coefficients(
        sweep.activation,
        d,
        scale=sweep.scale,
        coefficients=sweep.coefficients,
    )

    if sweep.mode != "qae":
        return series

    gamma = qae_gamma(series)
    log.info(f"Shifting the {sweep.activation} d={d} series by gamma={gamma:.6f}.")

    return taylor_coefficients(
        sweep.activation,
        d,
        scale=sweep.scale,
        coefficients=sweep.coefficients,
        gamma=gamma,
    )


def evaluate_point(
    sweep: SweepConfig,
    series: TaylorSeries,
    shots: int,
    weights: list[float],
    bias: float,
    point_index: int,
    zbar: float,
) -> SweepRecord:
    inputs = perceptron_inputs(float(zbar), weights, bias)
    bundle = assemble_core(inputs, series, n=sweep.n)

    d = series.degree
    c_d = bundle.schedule.c_d
    seed = point_seed(sweep.seed, point_index)
    degenerate = False

    if sweep.mode == "exact-amplitude":
        p = readout_probability(bundle)
        y_q = output_from_probability(p, d, c_d)
        sigma_pred = 0.0
    elif sweep.mode == "shots":
        estimate = measure_output(bundle, shots, seed)
        p, y_q = estimate.p, estimate.y_q
        sigma_pred = estimate.sigma_pred
        degenerate = estimate.degenerate
    else:
        qae = qae_estimate(bundle, sweep.qae_qubits, seed=seed, shots=sweep.qae_shots)
        p, y_q, sigma_pred = qae.a_tilde, qae.y_q, qae.sigma_pred

    y = activation_value(
        sweep.activation,
        bundle.z,
        scale=series.scale,
        coefficients=sweep.coefficients,
    )
    t_d = float(series_eval(series, bundle.z)) - series.gamma

    return SweepRecord(
        zbar=float(zbar),
        z=bundle.z,
        y=y,
        t_d=t_d,
        y_q=y_q,
        r_c=y - t_d,
        p=p,
        sigma_pred=sigma_pred,
        degenerate=degenerate,
    )


def run_sweep(sweep: SweepConfig) -> list[SweepResult]:
    """Runs a sweep over ``z̄`` for each ``(d, S)`` pair.

    Each point uses its own generator seeded with ``seed ^ point_index``, so the
    results do not depend on the number of workers. After all points of a degree
    are evaluated, a degree ``d`` polynomial ``ỹ_q`` is fitted to ``y_q(z̄)`` and
    the quantum residual ``R_q = y - ỹ_q`` is stored.

    """

    grid = sweep.grid.values()
    weights, bias = _sweep_weights(sweep)

    results: list[SweepResult] = []

    for d_index, (d, shots) in enumerate(zip(sweep.degrees, sweep.shots)):
        series = sweep_series(sweep, d)
        log.info(
            f"Sweeping {sweep.activation} d={d} S={shots} mode={sweep.mode} "
            f"over {grid.size} points."
        )

        evaluate = partial(evaluate_point, sweep, series, shots, weights, bias)
        indices = range(d_index * grid.size, (d_index + 1) * grid.size)

        with ThreadPoolExecutor(max_workers=sweep.workers) as executor:
            records = list(executor.map(evaluate, indices, grid))

        fit = Polynomial.fit(grid, [record.y_q for record in records], deg=d)
        fitted = fit(grid)
        records = [
            record.model_copy(update={"r_q": record.y - float(value)})
            for record, value in zip(records, fitted)
        ]

        n_degenerate = sum(record.degenerate for record in records)
        if n_degenerate > 0:
            log.warning(f"{n_degenerate} points had no all-zeros outcome (d={d}).")

        results.append(
            SweepResult(
                activation=sweep.activation,
                scale=series.scale,
                d=d,
                shots=shots,
                mode=sweep.mode,
                records=records,
            )
        )

    return results


def mse_report(
    records: Sequence[SweepRecord],
    scale: float,
    gray_lambda: float | None = None,
) -> float:
    """Mean of ``(R_q - R_c)^2`` over the grey region ``|z̄| <= λ / k``."""

    if gray_lambda is None:
        gray_lambda = config["experiments.gray_lambda"]
    limit = gray_lambda / scale

    values = [
        (record.r_q - record.r_c) ** 2
        for record in records
        if abs(record.zbar) <= limit + 1e-12 and record.r_q is not None
    ]

    if len(values) == 0:
        raise ValueError(f"No sweep points with |zbar| <= {limit}.")

    return float(numpy.mean(values))


def mse_over_seeds(
    sweep: SweepConfig,
    seeds: Sequence[int] | None = None,
    gray_lambda: float | None = None,
) -> dict[int, float]:
    """Average of `.mse_report` over sweeps with different seeds, per degree."""

    seeds = config["experiments.mse_seeds"] if seeds is None else seeds

    totals: dict[int, list[float]] = {}
    for seed in seeds:
        results = run_sweep(sweep.model_copy(update={"seed": seed}))
        for result in results:
            mse = mse_report(result.records, result.scale, gray_lambda=gray_lambda)
            totals.setdefault(result.d, []).append(mse)

    return {dd: float(numpy.mean(values)) for dd, values in totals.items()}


def write_sweep(
    results: Sequence[SweepResult],
    sweep: SweepConfig,
    output_dir: str | pathlib.Path,
) -> list[pathlib.Path]:
    """Writes one CSV per degree and a JSON manifest.

    The manifest is named ``{activation}_manifest.json`` and contains the sweep
    configuration and package versions, with sorted keys. Identical sweeps
    produce byte-identical files.

    """

    output_dir = pathlib.Path(output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)

    paths: list[pathlib.Path] = []
    for result in results:
        path = output_dir / result.filename
        result.to_dataframe().write_csv(path)
        paths.append(path)

    manifest = {
        "activation": sweep.activation,
        "config": sweep.model_dump(mode="json"),
        "files": [path.name for path in paths],
        "scale": results[0].scale if len(results) > 0 else sweep.scale,
        "versions": {
            "numpy": numpy.__version__,
            "polars": polars.__version__,
            "qperceptron": __version__,
        },
    }

    manifest_path = output_dir / f"{sweep.activation}_manifest.json"
    manifest_path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    paths.append(manifest_path)

    log.info(f"Wrote {len(paths)} files to {output_dir!s}.")

    return paths


def gate_count_report(
    activation: Activation,
    degrees: Sequence[int] | None = None,
    inputs: PerceptronInputs | None = None,
    zbar: float | None = None,
    scale: float | None = None,
    coefficients: Sequence[float] | None = None,
    weights: Sequence[float] | None = None,
    bias: float | None = None,
    optimized: bool | None = None,
) -> GateCountReport:
    """Counts the lowered gates of the readout circuit for several degrees.

    A straight line ``count = slope·d + intercept`` is fitted to the totals. If
    ``inputs`` is not passed, the inputs are built from ``zbar``, ``weights`` and
    ``bias``.

    """

    degrees = list(config["gate_counts.degrees"] if degrees is None else degrees)
    zbar = config["gate_counts.zbar"] if zbar is None else zbar
    weights = config["experiments.weights"] if weights is None else weights
    bias = config["experiments.bias"] if bias is None else bias

    if inputs is None:
        inputs = perceptron_inputs(zbar, weights, bias)

    counts: list[dict[str, int]] = []
    for dd in degrees:
        series = taylor_coefficients(
            activation,
            dd,
            scale=scale,
            coefficients=coefficients,
        )
        bundle = assemble_core(inputs, series)
        circuit = build_readout_circuit(bundle, optimized=optimized)
        counts.append(count_gates(circuit))
        log.debug(f"Gate count {activation} d={dd}: {counts[-1]['total']}.")

    totals = numpy.array([count["total"] for count in counts], dtype=float)

    if len(degrees) > 1:
        slope, intercept = numpy.polyfit(degrees, totals, 1)
        predicted = slope * numpy.array(degrees) + intercept
        residual = float(numpy.sum((totals - predicted) ** 2))
        spread = float(numpy.sum((totals - totals.mean()) ** 2))
        r_squared = 1.0 - residual / spread if spread > 0 else 1.0
    else:
        slope, intercept, r_squared = 0.0, float(totals[0]), 1.0

    return GateCountReport(
        activation=activation,
        degrees=degrees,
        counts=counts,
        slope=float(slope),
        intercept=float(intercept),
        r_squared=r_squared,
    )


def error_scaling_report(
    activation: Activation = "tanh",
    zbar: float = 0.25,
    pairs: Sequence[tuple[int, int]] = ((3, 2**16), (5, 2**18)),
    repeats: int = 100,
    seed: int = 0,
    scale: float | None = None,
) -> ErrorScalingReport:
    """Compares the spread of ``y_q`` over repeated runs with its prediction.

    For each ``(d, S)`` pair the readout state is sampled ``repeats`` times and the
    standard deviation of ``y_q`` is compared with
    ``2^(d/2) |C_d| sqrt((1 - P) / S)`` evaluated at the exact ``P``.

    """

    inputs = perceptron_inputs(zbar, config["experiments.weights"])

    empirical: list[float] = []
    predicted: list[float] = []

    for d, shots in pairs:
        series = taylor_coefficients(activation, d, scale=scale)
        bundle = assemble_core(inputs, series)
        c_d = bundle.schedule.c_d

        state = readout_state(bundle)
        p_exact = float(abs(state.amplitudes[0]) ** 2)

        estimates = []
        for repeat in range(repeats):
            histogram = sample_counts(state, shots, point_seed(seed, repeat))
            p = histogram.frequency(0)
            estimates.append(output_from_probability(p, d, c_d))

        empirical.append(float(numpy.std(estimates, ddof=1)))
        predicted.append(2 ** (d / 2) * abs(c_d) * math.sqrt((1 - p_exact) / shots))

    return ErrorScalingReport(
        activation=activation,
        zbar=zbar,
        repeats=repeats,
        degrees=[dd for dd, _ in pairs],
        shots=[ss for _, ss in pairs],
        empirical=empirical,
        predicted=predicted,
    )
