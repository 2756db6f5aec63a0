#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# @Author: José Sánchez-Gallego (gallegoj@uw.edu)
# @Date: 2026-10-18
# @Filename: core.py
# @License: BSD 3-clause (http://www.opensource.org/licenses/BSD-3-Clause)

from __future__ import annotations

import math

import numpy
from pydantic import BaseModel, ConfigDict, Field, model_validator

from qperceptron.activation import TaylorSeries
from qperceptron.circuit import (
    Circuit,
    Control,
    Gate,
    RegisterLayout,
    add_control,
    qubit,
    x_layer,
)
from qperceptron.state_prep import PerceptronInputs, build_uz, minimum_qubits
from qperceptron.types import EncodingLayout, SignStrategy


__all__ = [
    "AngleSchedule",
    "CoreCircuitBundle",
    "compute_angles",
    "eval_fd",
    "build_sv",
    "build_su",
    "assemble_core",
]


class AngleSchedule(BaseModel):
    """Rotation angles of the polynomial circuit and its normalisation constant."""

    model_config = ConfigDict(frozen=True)

    thetas: tuple[float, ...] = Field(description="Angles θ_0 to θ_{d-1}")
    c_d: float = Field(description="Normalisation constant C_d")
    k: int = Field(ge=0, description="Index of the first non-zero coefficient")

    @model_validator(mode="after")
    def check_angles(self):
        for ii, theta in enumerate(self.thetas[: self.k]):
            if not math.isclose(theta, -math.pi / 2):
                raise ValueError(f"θ_{ii} must be -π/2 below the first non-zero term.")
        return self

    @property
    def d(self) -> int:
        return len(self.thetas)


class CoreCircuitBundle(BaseModel):
    """The core perceptron circuit and the pieces it is built from."""

    model_config = ConfigDict(frozen=True)

    core: Circuit
    sv: Circuit
    su: Circuit
    n: int
    d: int
    schedule: AngleSchedule
    series: TaylorSeries
    z: float

    @property
    def layout(self) -> RegisterLayout:
        return RegisterLayout(n=self.n, d=self.d)


def compute_angles(series: TaylorSeries, d: int | None = None) -> AngleSchedule:
    """Computes the angles ``θ_i`` and ``C_d`` for a Taylor series.

    With ``f_0 = 1`` and ``f_i = f_{i-1} cos θ_{i-1} - z^i sin θ_{i-1}``, the
    angles are chosen so that ``C_d f_d(z) = a_0 + a_1 z + ... + a_d z^d``. Angles
    below the first non-zero coefficient ``a_k`` are ``-π/2``, which turns
    ``f_k`` into ``z^k``.

    """

    if d is not None and d != series.degree:
        raise ValueError(f"Expected a series of degree {d}, got {series.degree}.")

    coeffs = series.coeffs
    k = series.k
    d = series.degree

    thetas: list[float] = []
    cos_product = 1.0

    for ii in range(d):
        if ii < k:
            thetas.append(-math.pi / 2)
            continue

        theta = math.atan(-(coeffs[ii + 1] / coeffs[k]) * cos_product)
        thetas.append(theta)
        cos_product *= math.cos(theta)

    return AngleSchedule(thetas=tuple(thetas), c_d=coeffs[k] / cos_product, k=k)


def eval_fd(z, schedule: AngleSchedule):
    """Evaluates ``f_d(z)`` with the recursion. ``z`` can be an array."""

    value = numpy.ones_like(z, dtype=float) if numpy.ndim(z) > 0 else 1.0
    power = value

    for theta in schedule.thetas:
        power = power * z
        value = value * math.cos(theta) - power * math.sin(theta)

    return value


def build_sv(uz: Circuit, n: int, d: int) -> Circuit:
    """Builds ``S_V``, which maps ``|0>_a|0>_q`` to a state holding ``z^i``.

    For each ancilla ``a_m`` it applies ``H`` on ``a_m`` controlled by all the
    input qubits, then ``X`` on every input qubit and ``U_z``, both controlled
    by ``a_m``.

    """

    if uz.layout.n != n or uz.layout.num_qubits != n:
        raise ValueError(f"U_z must act only on {n} input qubits.")

    layout = RegisterLayout(n=n, d=d)
    flips = x_layer(n).on(layout)
    uz_wide = uz.on(layout)
    all_inputs = tuple(Control(qubit=qubit("q", ii)) for ii in range(n))

    gates: list[Gate] = []
    for mm in range(d):
        ancilla = qubit("a", mm)
        gates.append(Gate(kind="H", target=ancilla, controls=all_inputs))
        gates.extend(add_control(flips, ancilla).gates)
        gates.extend(add_control(uz_wide, ancilla).gates)

    return Circuit.from_gates(gates, layout=layout)


def build_su(schedule: AngleSchedule, d: int | None = None) -> Circuit:
    """Builds ``S_U``, which maps the ancilla state ``|z>^⊗d`` to ``f_d(z)|0>_a + ...``.

    Step ``k`` rotates ``a_0`` by ``2θ_{k-1}`` when ``a_k`` is ``|0>`` and then
    moves the leftover ``z^{k+1}`` term back into ``|0...01>`` with a CX from
    ``a_0`` to ``a_k``. There is no ``a_d``, so the last rotation is uncontrolled.

    """

    if d is not None and d != schedule.d:
        raise ValueError(f"Expected {d} angles, got {schedule.d}.")

    d = schedule.d
    if d < 1:
        raise ValueError("S_U needs at least one ancilla.")

    layout = RegisterLayout(d=d)
    first = qubit("a", 0)

    gates: list[Gate] = []
    for kk in range(1, d + 1):
        angle = 2 * schedule.thetas[kk - 1]
        if kk == d:
            gates.append(Gate(kind="Ry", target=first, angle=angle))
            continue

        ancilla = qubit("a", kk)
        gates.append(
            Gate(
                kind="Ry",
                target=first,
                controls=(Control(qubit=ancilla, polarity="zero"),),
                angle=angle,
            )
        )
        gates.append(Gate(kind="X", target=ancilla, controls=(Control(qubit=first),)))

    return Circuit.from_gates(gates, layout=layout)


def assemble_core(
    inputs: PerceptronInputs,
    series: TaylorSeries,
    n: int | None = None,
    layout: EncodingLayout | None = None,
    signs: SignStrategy | None = None,
    d: int | None = None,
) -> CoreCircuitBundle:
    """Assembles ``X^⊗n S_U S_V X^⊗n``.

    The amplitude of ``|0>_a|0>_q`` after the core is ``2^(-d/2) f_d(z)``.

    Parameters
    ----------
    inputs
        The perceptron inputs, weights and bias.
    series
        The Taylor series of the activation. Its degree sets the number of ancillas.
    n
        Number of input qubits. Defaults to the minimum for the number of inputs.
    layout
        The encoding layout passed to `.build_encoding_vectors`.
    signs
        The sign strategy passed to `.synthesize_state_prep`.
    d
        Expected degree. Raises if it does not match the series.

    """

    n = minimum_qubits(inputs.n_in) if n is None else n

    schedule = compute_angles(series, d=d)
    d = series.degree
    core_layout = RegisterLayout(n=n, d=d)

    uz = build_uz(inputs, n=n, layout=layout, signs=signs)
    sv = build_sv(uz, n, d)
    if d > 0:
        su = build_su(schedule).on(core_layout)
    else:
        su = Circuit(layout=core_layout)

    flips = x_layer(n).on(core_layout)
    core = flips + sv + su + flips

    return CoreCircuitBundle(
        core=core,
        sv=sv,
        su=su,
        n=n,
        d=d,
        schedule=schedule,
        series=series,
        z=inputs.z,
    )
