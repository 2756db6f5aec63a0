#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# @Author: José Sánchez-Gallego (gallegoj@uw.edu)
# @Date: 2026-10-18
# @Filename: readout.py
# @License: BSD 3-clause (http://www.opensource.org/licenses/BSD-3-Clause)

from __future__ import annotations

import math
import warnings

from pydantic import BaseModel, Field

from qperceptron import config, log
from qperceptron.circuit import (
    Circuit,
    Gate,
    RegisterLayout,
    add_control,
    qubit,
    x_layer,
)
from qperceptron.core import CoreCircuitBundle
from qperceptron.simulator import (
    ShotHistogram,
    StateVector,
    apply_circuit,
    sample_counts,
)


__all__ = [
    "DegenerateEstimateWarning",
    "ShotEstimate",
    "build_readout_circuit",
    "readout_state",
    "readout_probability",
    "estimate_output",
    "output_from_probability",
    "measure_output",
]


class DegenerateEstimateWarning(UserWarning):
    """No shot landed on the all-zeros outcome."""

    pass


class ShotEstimate(BaseModel):
    """Output of the perceptron estimated from a shot histogram."""

    shots: int = Field(description="Number of shots")
    m: int = Field(description="Shots with outcome |0>_l|0>_a|0>_q")
    p: float = Field(description="Estimated probability of the all-zeros outcome")
    y_q: float = Field(description="Estimated activation value")
    sigma_pred: float = Field(description="Predicted standard deviation of y_q")
    degenerate: bool = Field(default=False, description="True if m is zero")


def build_readout_circuit(
    bundle: CoreCircuitBundle,
    optimized: bool | None = None,
) -> Circuit:
    """Builds the Hadamard-test circuit around the core.

    The probability of measuring all qubits in ``|0>`` is ``|1 + A|^2 / 4``, where
    ``A = 2^(-d/2) f_d(z)`` is the core amplitude.

    Parameters
    ----------
    bundle
        The core circuit bundle.
    optimized
        If `True`, ``S_V`` is left uncontrolled since it acts trivially on
        ``|0>_a|0>_q``. Otherwise the whole core is controlled by ``l``.

    """

    optimized = config["readout.optimized"] if optimized is None else optimized

    layout = RegisterLayout(n=bundle.n, d=bundle.d, has_l=True)
    readout = qubit("l", 0)
    hadamard = Circuit(layout=layout, gates=(Gate(kind="H", target=readout),))

    if not optimized:
        controlled_core = add_control(bundle.core, readout)
        return hadamard + controlled_core + hadamard

    flips = x_layer(bundle.n).on(bundle.layout)

    return (
        hadamard
        + add_control(flips, readout)
        + bundle.sv.on(layout)
        + add_control(bundle.su + flips, readout)
        + hadamard
    )


def readout_state(
    bundle: CoreCircuitBundle,
    optimized: bool | None = None,
) -> StateVector:
    """Returns the state after the readout circuit, starting from ``|0>``."""

    circuit = build_readout_circuit(bundle, optimized=optimized)
    return apply_circuit(StateVector(circuit.layout), circuit)


def readout_probability(
    bundle: CoreCircuitBundle,
    optimized: bool | None = None,
) -> float:
    """Exact probability of measuring ``|0>_l|0>_a|0>_q``."""

    state = readout_state(bundle, optimized=optimized)
    return float(abs(state.amplitudes[0]) ** 2)


def output_from_probability(p: float, d: int, c_d: float) -> float:
    """Inverts ``P = |1 + 2^(-d/2) f_d|^2 / 4`` into ``C_d f_d``."""

    return 2 ** (d / 2) * (2 * math.sqrt(p) - 1) * c_d


def estimate_output(histogram: ShotHistogram, d: int, c_d: float) -> ShotEstimate:
    """Estimates the activation value from a readout histogram.

    Parameters
    ----------
    histogram
        Histogram of readout outcomes.
    d
        Degree of the series, i.e. the number of ancillas.
    c_d
        The normalisation constant of the angle schedule.

    Returns
    -------
    estimate
        The estimate ``y_q = 2^(d/2) (2 sqrt(P) - 1) C_d`` with the predicted
        standard deviation ``2^(d/2) |C_d| sqrt((1 - P) / S)``. If no shot
        landed on the all-zeros outcome the estimate is flagged as degenerate
        and a `.DegenerateEstimateWarning` is issued.

    """

    shots = histogram.shots
    hits = histogram.count(0)
    p = hits / shots

    sigma_pred = 2 ** (d / 2) * abs(c_d) * math.sqrt((1 - p) / shots)
    degenerate = hits == 0

    if degenerate:
        warnings.warn(
            f"None of the {shots} shots measured the all-zeros outcome.",
            DegenerateEstimateWarning,
        )

    return ShotEstimate(
        shots=shots,
        m=hits,
        p=p,
        y_q=output_from_probability(p, d, c_d),
        sigma_pred=sigma_pred,
        degenerate=degenerate,
    )


def measure_output(
    bundle: CoreCircuitBundle,
    shots: int,
    seed: int,
    optimized: bool | None = None,
) -> ShotEstimate:
    """Samples ``shots`` outcomes of the readout circuit and estimates ``y_q``."""

    state = readout_state(bundle, optimized=optimized)
    histogram = sample_counts(state, shots, seed)

    estimate = estimate_output(histogram, bundle.d, bundle.schedule.c_d)
    log.debug(f"z={bundle.z:.6f} d={bundle.d} S={shots}: y_q={estimate.y_q:.6f}")

    return estimate
