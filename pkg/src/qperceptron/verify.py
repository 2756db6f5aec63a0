#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# @Author: José Sánchez-Gallego (gallegoj@uw.edu)
# @Date: 2026-10-18
# @Filename: verify.py
# @License: BSD 3-clause (http://www.opensource.org/licenses/BSD-3-Clause)

from __future__ import annotations

import math

from typing import Callable, Sequence

import numpy
from pydantic import BaseModel

from qperceptron import config, log
from qperceptron.activation import qae_gamma, series_eval, taylor_coefficients
from qperceptron.circuit import x_layer
from qperceptron.core import assemble_core, build_sv
from qperceptron.experiments import (
    GridSpec,
    SweepConfig,
    default_sweep_config,
    gate_count_report,
    mse_over_seeds,
    perceptron_inputs,
    run_sweep,
)
from qperceptron.qae import qae_estimate
from qperceptron.readout import readout_probability
from qperceptron.simulator import StateVector, apply_circuit, make_rng
from qperceptron.state_prep import PerceptronInputs, build_uz


__all__ = ["CheckResult", "CHECKS", "run_checks"]


class CheckResult(BaseModel):
    """Outcome of an invariant check."""

    name: str
    passed: bool
    detail: str


def check_overlap(samples: int = 1000, seed: int = 0) -> CheckResult:
    """``<1...1|U_z|0...0> = z`` for random inputs, weights and biases."""

    rng = make_rng(seed)
    worst = 0.0

    for _ in range(samples):
        n_in = int(rng.integers(1, 6))
        values = rng.uniform(-1.0, 1.0, size=2 * n_in + 1)
        inputs = PerceptronInputs(
            x=tuple(values[:n_in]),
            w=tuple(values[n_in:-1]),
            b=float(values[-1]),
        )

        uz = build_uz(inputs)
        state = apply_circuit(StateVector(uz.layout), uz)
        amplitude = state.amplitudes[-1]

        worst = max(worst, abs(amplitude - inputs.z))

    return CheckResult(
        name="overlap",
        passed=worst <= 1e-10,
        detail=f"max |<1|U_z|0> - z| = {worst:.2e} over {samples} samples",
    )


def check_power_encoding(degrees=(3, 5, 7, 9), points: int = 21) -> CheckResult:
    """The ancillas hold ``2^(-d/2) z^|s|`` after ``X^n S_V X^n``."""

    worst = 0.0
    grid = numpy.linspace(-1.0, 1.0, points)

    for d in degrees:
        for zbar in grid:
            inputs = perceptron_inputs(float(zbar), (1.0, 1.0, 1.0, 1.0))
            uz = build_uz(inputs)
            n = uz.layout.n

            sv = build_sv(uz, n, d)
            flips = x_layer(n).on(sv.layout)
            circuit = flips + sv + flips

            state = apply_circuit(StateVector(circuit.layout), circuit)
            for ancilla in range(2**d):
                expected = 2 ** (-d / 2) * inputs.z ** ancilla.bit_count()
                worst = max(worst, abs(state.amplitude(a=ancilla) - expected))

    return CheckResult(
        name="power_encoding",
        passed=worst <= 1e-10,
        detail=f"max amplitude error {worst:.2e}",
    )


def check_polynomial_identity(
    degrees=(3, 5, 7, 9),
    points: int = 41,
) -> CheckResult:
    """``<0|core|0> = 2^(-d/2) T_d(z) / C_d`` for the built-in activations."""

    worst = 0.0
    grid = numpy.linspace(-1.0, 1.0, points)

    for activation in ("tanh", "sigmoid", "sin", "swish"):
        for d in degrees:
            order = d + 1 if activation == "swish" else d
            series = taylor_coefficients(activation, order)

            for zbar in grid:
                inputs = perceptron_inputs(float(zbar), (1.0, 1.0, 1.0, 1.0))
                bundle = assemble_core(inputs, series)

                state = apply_circuit(StateVector(bundle.core.layout), bundle.core)
                c_d = bundle.schedule.c_d
                value = 2 ** (order / 2) * c_d * state.amplitudes[0]
                expected = series_eval(series, inputs.z)

                worst = max(worst, abs(value - expected))

    return CheckResult(
        name="polynomial_identity",
        passed=worst <= 1e-9,
        detail=f"max |2^(d/2) C_d A - T_d| = {worst:.2e}",
    )


def check_readout_identity(degrees=(1, 3, 5), points: int = 21) -> CheckResult:
    """``P(|0>) = |1 + A|^2 / 4`` for the optimized and full readout circuits."""

    worst = 0.0
    grid = numpy.linspace(-1.0, 1.0, points)

    for d in degrees:
        series = taylor_coefficients("tanh", d)
        for zbar in grid:
            inputs = perceptron_inputs(float(zbar), (1.0, 1.0, 1.0, 1.0))
            bundle = assemble_core(inputs, series)

            state = apply_circuit(StateVector(bundle.core.layout), bundle.core)
            expected = abs(1 + state.amplitudes[0]) ** 2 / 4

            for optimized in (True, False):
                p = readout_probability(bundle, optimized=optimized)
                worst = max(worst, abs(p - expected))

    return CheckResult(
        name="readout_identity",
        passed=worst <= 1e-12,
        detail=f"max |P - |1 + A|^2 / 4| = {worst:.2e}",
    )


def check_qae_bound(m_values=(4, 6, 8), points: int = 11) -> CheckResult:
    """``|ã - a| <= π/M + π^2/M^2`` for the most probable bin."""

    base = taylor_coefficients("sigmoid", 3)
    series = taylor_coefficients("sigmoid", 3, gamma=qae_gamma(base))

    failures = 0
    for m_qubits in m_values:
        M = 2**m_qubits
        bound = math.pi / M + math.pi**2 / M**2
        for zbar in numpy.linspace(-1.0, 1.0, points):
            bundle = assemble_core(perceptron_inputs(float(zbar), (1.0,) * 4), series)
            estimate = qae_estimate(bundle, m_qubits)
            if abs(estimate.a_tilde - estimate.a) > bound:
                failures += 1

    return CheckResult(
        name="qae_bound",
        passed=failures == 0,
        detail=f"{failures} points outside the bound",
    )


def check_gate_linearity() -> CheckResult:
    """Lowered gate counts grow linearly with ``d`` by a few hundred per degree.

    The reference circuit has about 330 gates at ``d=1`` and 400 more per degree.
    Only the linearity and the slope decide the outcome.

    """

    report = gate_count_report("tanh")
    slope_ok = 400 / 3 <= report.slope <= 400 * 3

    first = report.counts[0]["total"]

    return CheckResult(
        name="gate_linearity",
        passed=report.r_squared >= 0.99 and slope_ok,
        detail=(
            f"slope={report.slope:.1f} (reference 400) "
            f"intercept={report.intercept:.1f} "
            f"d={report.degrees[0]} count={first} (reference 330, "
            f"ratio {first / 330:.2f}) R^2={report.r_squared:.5f}"
        ),
    )


def check_determinism(seed: int = 7) -> CheckResult:
    """Two sweeps with the same seed and different workers are identical."""

    sweep = SweepConfig(
        activation="tanh",
        degrees=[3],
        shots=[4096],
        grid=GridSpec(points=21),
        seed=seed,
    )

    first = run_sweep(sweep)
    second = run_sweep(sweep.model_copy(update={"workers": 4}))

    same = all(
        aa.to_dataframe().equals(bb.to_dataframe()) for aa, bb in zip(first, second)
    )

    return CheckResult(
        name="determinism",
        passed=same,
        detail="identical records" if same else "records differ between runs",
    )


def check_mse_bands(
    activations: Sequence[str] | None = None,
    seeds: Sequence[int] | None = None,
) -> CheckResult:
    """Shot-noise MSE of the default sweeps lies in the expected band per degree.

    The bands are read from ``experiments.mse_bands``, one per row of
    ``experiments.matrix``.

    """

    if activations is None:
        activations = config["experiments.activations"]
    bands = config["experiments.mse_bands"]

    outside: list[str] = []
    for activation in activations:
        sweep = default_sweep_config(activation)  # type: ignore[arg-type]
        mse = mse_over_seeds(sweep, seeds=seeds)

        for (low, high), d in zip(bands, sweep.degrees):
            log.info(f"MSE {activation} d={d}: {mse[d]:.3e}.")
            if not low <= mse[d] <= high:
                outside.append(f"{activation} d={d} ({mse[d]:.2e})")

    return CheckResult(
        name="mse_bands",
        passed=len(outside) == 0,
        detail="all sweeps in band" if not outside else ", ".join(outside),
    )


CHECKS: dict[str, Callable[[], CheckResult]] = {
    "overlap": check_overlap,
    "power_encoding": check_power_encoding,
    "polynomial_identity": check_polynomial_identity,
    "readout_identity": check_readout_identity,
    "qae_bound": check_qae_bound,
    "gate_linearity": check_gate_linearity,
    "determinism": check_determinism,
    "mse_bands": check_mse_bands,
}


def run_checks(names: list[str] | None = None) -> list[CheckResult]:
    """Runs the invariant checks and logs their outcome."""

    names = list(CHECKS) if names is None else names

    results: list[CheckResult] = []
    for name in names:
        if name not in CHECKS:
            raise ValueError(f"Unknown check {name!r}.")

        result = CHECKS[name]()
        results.append(result)

        if result.passed:
            log.info(f"Check {name} passed: {result.detail}.")
        else:
            log.error(f"Check {name} FAILED: {result.detail}.")

    return results
