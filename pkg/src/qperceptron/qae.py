#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# @Author: José Sánchez-Gallego (gallegoj@uw.edu)
# @Date: 2026-10-18
# @Filename: qae.py
# @License: BSD 3-clause (http://www.opensource.org/licenses/BSD-3-Clause)

from __future__ import annotations

import math

import numpy
from pydantic import BaseModel, Field

from qperceptron import config, log
from qperceptron.circuit import Circuit, Control, Gate, RegisterLayout, qubit
from qperceptron.core import CoreCircuitBundle, eval_fd
from qperceptron.simulator import (
    StateVector,
    apply_circuit,
    apply_controlled_matrix,
    circuit_unitary,
    make_rng,
)


__all__ = [
    "QaeEstimate",
    "AmplitudeEstimate",
    "zero_reflection",
    "grover_operator",
    "inverse_qft",
    "estimate_amplitude",
    "qae_estimate",
]


class AmplitudeEstimate(BaseModel):
    """Result of phase estimation on the amplitude of the all-zeros state."""

    m_qubits: int = Field(description="Evaluation qubits")
    M: int = Field(description="Number of phase bins, 2^m_qubits")
    y: int = Field(description="Most probable phase bin")
    a_tilde: float = Field(description="Estimated probability sin^2(π y / M)")
    a: float = Field(description="Exact probability of the all-zeros state")
    shots: int | None = Field(default=None, description="Shots averaged, if any")


class QaeEstimate(AmplitudeEstimate):
    """Amplitude estimate of the core circuit converted to the activation value."""

    y_q: float = Field(description="Estimated activation value")
    gamma: float = Field(description="Shift removed from the estimate")
    sigma_pred: float = Field(description="Bound on the error of y_q")


def zero_reflection(layout: RegisterLayout) -> Circuit:
    """Returns ``S_0 = I - 2|0><0|`` on all the qubits of a layout.

    It is built as ``X`` on every qubit, a multi-controlled ``Z`` and ``X`` again.

    """

    qubits = [
        qubit(register, index)
        for register in ("q", "a", "l", "e")
        for index in range(layout.size(register))
    ]

    if len(qubits) == 0:
        raise ValueError("Cannot reflect an empty layout.")

    flips = [Gate(kind="X", target=qq) for qq in qubits]
    controls = tuple(Control(qubit=qq) for qq in qubits[:-1])
    reflection = Gate(kind="Z", target=qubits[-1], controls=controls)

    return Circuit(layout=layout, gates=(*flips, reflection, *flips))


def _minus_identity(layout: RegisterLayout) -> Circuit:
    target = qubit("q", 0) if layout.n > 0 else qubit("a", 0)
    gates = tuple(Gate(kind=kind, target=target) for kind in ("Z", "X", "Z", "X"))
    return Circuit(layout=layout, gates=gates)


def grover_operator(prep: Circuit) -> Circuit:
    """Returns ``Q = -A S_0 A^† S_χ`` where the good state is ``|0...0>``.

    ``A`` is ``prep``. Both reflections are about the all-zeros state, so ``Q``
    rotates by ``2θ`` in the plane spanned by ``|0>`` and ``A|0>``, with
    ``sin^2 θ = |<0|A|0>|^2``.

    """

    layout = prep.layout
    reflection = zero_reflection(layout)

    return reflection + prep.inverse() + reflection + prep + _minus_identity(layout)


def inverse_qft(layout: RegisterLayout) -> Circuit:
    """Inverse Fourier transform on the ``e`` register, without the final swaps.

    After this circuit the evaluation qubit ``e_j`` holds bit ``m - 1 - j`` of the
    phase bin, so bins must be read in bit-reversed order.

    """

    m_qubits = layout.m
    gates: list[Gate] = []

    for jj in reversed(range(m_qubits)):
        target = qubit("e", jj)
        for ll in range(m_qubits - 1, jj, -1):
            angle = -2 * math.pi / 2 ** (ll - jj + 1)
            gates.append(
                Gate(
                    kind="P",
                    target=target,
                    controls=(Control(qubit=qubit("e", ll)),),
                    angle=angle,
                )
            )
        gates.append(Gate(kind="H", target=target))

    return Circuit(layout=layout, gates=tuple(gates))


def _bit_reverse(value: int, width: int) -> int:
    return int(format(value, f"0{width}b")[::-1], 2) if width > 0 else 0


def estimate_amplitude(
    prep: Circuit,
    m_qubits: int,
    shots: int | None = None,
    seed: int = 0,
) -> AmplitudeEstimate:
    """Estimates ``a = |<0|A|0>|^2`` with canonical amplitude estimation.

    Parameters
    ----------
    prep
        The circuit ``A``. Its layout must not include an ``e`` register and must
        be small enough to build its dense unitary.
    m_qubits
        Number of evaluation qubits. The estimate lies on a grid of
        ``M = 2^m_qubits`` bins.
    shots
        If passed, the evaluation register is sampled ``shots`` times with the
        generator for ``seed`` and the estimates are averaged. Otherwise the most
        probable bin is used.
    seed
        Seed used when sampling.

    """

    if m_qubits < 1:
        raise ValueError("At least one evaluation qubit is required.")
    if prep.layout.m != 0:
        raise ValueError("The preparation circuit already uses the e register.")

    n_system = prep.layout.num_qubits
    M = 2**m_qubits

    grover = circuit_unitary(grover_operator(prep))

    layout = prep.layout.model_copy(update={"m": m_qubits})
    state = apply_circuit(StateVector(layout), prep.on(layout))

    exact = float(abs(state.amplitudes[0]) ** 2)

    hadamards = Circuit(
        layout=layout,
        gates=tuple(Gate(kind="H", target=qubit("e", jj)) for jj in range(m_qubits)),
    )
    state = apply_circuit(state, hadamards)

    power = grover
    for jj in range(m_qubits):
        state = apply_controlled_matrix(state, power, control=n_system + jj)
        power = power @ power

    state = apply_circuit(state, inverse_qft(layout))

    probabilities = state.probabilities().reshape(M, -1).sum(axis=1)
    bins = numpy.array([_bit_reverse(yy, m_qubits) for yy in range(M)])
    estimates = numpy.sin(numpy.pi * bins / M) ** 2

    best = int(numpy.argmax(probabilities))

    if shots is None:
        a_tilde = float(estimates[best])
    else:
        rng = make_rng(seed)
        counts = rng.multinomial(shots, probabilities / probabilities.sum())
        a_tilde = float(counts @ estimates / shots)

    return AmplitudeEstimate(
        m_qubits=m_qubits,
        M=M,
        y=int(bins[best]),
        a_tilde=a_tilde,
        a=exact,
        shots=shots,
    )


def qae_estimate(
    bundle: CoreCircuitBundle,
    m_qubits: int | None = None,
    seed: int = 0,
    shots: int | None = None,
) -> QaeEstimate:
    """Estimates the activation value with amplitude estimation on the core.

    The series in ``bundle`` must be shifted (see `.qae_gamma`) so that
    ``C_d f_d`` is non-negative on ``[-1, 1]``; the estimate is then
    ``y_q = 2^(d/2) sqrt(ã) |C_d| - γ``.

    Parameters
    ----------
    bundle
        The core circuit bundle.
    m_qubits
        Number of evaluation qubits. Defaults to ``qae.qubits``.
    seed
        Seed used when ``shots`` is passed.
    shots
        Number of samples of the evaluation register to average.

    """

    m_qubits = config["qae.qubits"] if m_qubits is None else m_qubits

    grid = numpy.linspace(-1.0, 1.0, config["qae.gamma_points"])
    schedule = bundle.schedule
    if numpy.min(schedule.c_d * eval_fd(grid, schedule)) < 0:
        raise ValueError(
            "The shifted series takes negative values on [-1, 1]. Set a gamma "
            "shift with qperceptron.activation.qae_gamma before using amplitude "
            "estimation."
        )

    estimate = estimate_amplitude(bundle.core, m_qubits, shots=shots, seed=seed)

    d = bundle.d
    c_d = bundle.schedule.c_d
    gamma = bundle.series.gamma

    y_q = 2 ** (d / 2) * math.sqrt(estimate.a_tilde) * abs(c_d) - gamma

    # |sqrt(ã) - sqrt(a)| <= π/M for the most probable bin.
    sigma_pred = 2 ** (d / 2) * abs(c_d) * math.pi / estimate.M
    if shots:
        sigma_pred /= math.sqrt(shots)

    log.debug(f"QAE z={bundle.z:.6f} d={d} M={estimate.M}: a~={estimate.a_tilde:.6f}")

    return QaeEstimate(
        **estimate.model_dump(),
        y_q=y_q,
        gamma=gamma,
        sigma_pred=sigma_pred,
    )
