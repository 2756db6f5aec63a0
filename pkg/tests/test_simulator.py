#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# @Author: José Sánchez-Gallego (gallegoj@uw.edu)
# @Date: 2026-10-18
# @Filename: test_simulator.py
# @License: BSD 3-clause (http://www.opensource.org/licenses/BSD-3-Clause)

from __future__ import annotations

import math

import numpy
import pytest
from pydantic import ValidationError

from qperceptron.circuit import Circuit, Control, Gate, RegisterLayout, qubit
from qperceptron.simulator import (
    ShotHistogram,
    StateVector,
    amplitude,
    apply_circuit,
    apply_controlled_matrix,
    circuit_unitary,
    point_seed,
    sample_counts,
)


def test_initial_state():
    state = StateVector(RegisterLayout(n=2, d=1))

    assert state.amplitudes.shape == (8,)
    assert state.amplitude() == 1
    assert state.norm() == pytest.approx(1.0)


def test_wrong_number_of_amplitudes():
    with pytest.raises(ValueError):
        StateVector(RegisterLayout(n=2), numpy.ones(3))


def test_ry_convention():
    layout = RegisterLayout(n=1)
    rotation = Gate(kind="Ry", target=qubit("q"), angle=0.6)
    circuit = Circuit(layout=layout, gates=(rotation,))

    state = apply_circuit(StateVector(layout), circuit)

    assert state.amplitudes[0] == pytest.approx(math.cos(0.3))
    assert state.amplitudes[1] == pytest.approx(math.sin(0.3))


def test_register_addressing():
    layout = RegisterLayout(n=2, d=2, has_l=True)
    circuit = Circuit(
        layout=layout,
        gates=(
            Gate(kind="X", target=qubit("q", 1)),
            Gate(kind="X", target=qubit("a", 0)),
            Gate(kind="X", target=qubit("l")),
        ),
    )

    state = apply_circuit(StateVector(layout), circuit)

    assert amplitude(state, l=1, a=1, q=2) == pytest.approx(1.0)
    assert state.amplitudes[16 + 4 + 2] == pytest.approx(1.0)


def test_anti_control():
    layout = RegisterLayout(n=2)
    gate = Gate(
        kind="X",
        target=qubit("q", 0),
        controls=(Control(qubit=qubit("q", 1), polarity="zero"),),
    )

    state = apply_circuit(StateVector(layout), Circuit(layout=layout, gates=(gate,)))
    assert state.amplitudes[1] == pytest.approx(1.0)

    excited = StateVector.basis(layout, 2)
    state = apply_circuit(excited, Circuit(layout=layout, gates=(gate,)))
    assert state.amplitudes[2] == pytest.approx(1.0)


def test_multi_controlled_z_phase():
    layout = RegisterLayout(n=3)
    hadamards = tuple(Gate(kind="H", target=qubit("q", ii)) for ii in range(3))
    ccz = Gate(
        kind="Z",
        target=qubit("q", 2),
        controls=(Control(qubit=qubit("q", 0)), Control(qubit=qubit("q", 1))),
    )

    circuit = Circuit(layout=layout, gates=(*hadamards, ccz))
    state = apply_circuit(StateVector(layout), circuit)

    expected = numpy.full(8, 1 / math.sqrt(8))
    expected[7] *= -1

    assert numpy.allclose(state.amplitudes, expected)


def test_apply_circuit_layout_mismatch():
    circuit = Circuit(layout=RegisterLayout(n=2), gates=())

    with pytest.raises(ValueError):
        apply_circuit(StateVector(RegisterLayout(n=1)), circuit)


def test_apply_circuit_does_not_modify_input():
    layout = RegisterLayout(n=1)
    state = StateVector(layout)

    flip = Gate(kind="X", target=qubit("q"))
    apply_circuit(state, Circuit(layout=layout, gates=(flip,)))

    assert state.amplitudes[0] == 1


def test_unnormalised_state_keeps_norm():
    layout = RegisterLayout(n=1)
    state = StateVector(layout, numpy.array([2.0, 0.0]))

    result = apply_circuit(state, Circuit(layout=layout, gates=()))
    assert result.norm() == pytest.approx(2.0)


def test_circuit_unitary_columns():
    layout = RegisterLayout(n=2)
    circuit = Circuit(
        layout=layout,
        gates=(
            Gate(kind="H", target=qubit("q", 0)),
            Gate(
                kind="X",
                target=qubit("q", 1),
                controls=(Control(qubit=qubit("q", 0)),),
            ),
        ),
    )

    unitary = circuit_unitary(circuit)

    for column in range(4):
        state = apply_circuit(StateVector.basis(layout, column), circuit)
        assert numpy.allclose(unitary[:, column], state.amplitudes)


def test_circuit_unitary_guard():
    circuit = Circuit(layout=RegisterLayout(n=13), gates=())

    with pytest.raises(ValueError):
        circuit_unitary(circuit)


def test_apply_controlled_matrix():
    layout = RegisterLayout(n=1, d=1)
    flip = numpy.array([[0, 1], [1, 0]], dtype=complex)

    state = apply_controlled_matrix(StateVector(layout), flip, control=1)
    assert state.amplitudes[0] == pytest.approx(1.0)

    state = apply_controlled_matrix(StateVector.basis(layout, 2), flip, control=1)
    assert state.amplitudes[3] == pytest.approx(1.0)

    state = apply_controlled_matrix(StateVector(layout), flip)
    assert state.amplitudes[1] == pytest.approx(1.0)


def test_apply_controlled_matrix_bad_control():
    flip = numpy.array([[0, 1], [1, 0]], dtype=complex)

    with pytest.raises(ValueError):
        apply_controlled_matrix(StateVector(RegisterLayout(n=2)), flip, control=0)


def test_sample_counts_deterministic():
    layout = RegisterLayout(n=2)
    hadamards = tuple(Gate(kind="H", target=qubit("q", ii)) for ii in range(2))
    state = apply_circuit(StateVector(layout), Circuit(layout=layout, gates=hadamards))

    first = sample_counts(state, 10000, seed=5)
    second = sample_counts(state, 10000, seed=5)

    assert first == second
    assert sum(first.counts.values()) == 10000
    assert all(abs(first.frequency(ii) - 0.25) < 0.03 for ii in range(4))


@pytest.mark.parametrize("shots", [2**16, 2**20])
@pytest.mark.parametrize("seed", [1, 2, 3])
def test_sample_counts_hadamard_frequency(shots: int, seed: int):
    layout = RegisterLayout(n=1)
    hadamard = Gate(kind="H", target=qubit("q"))
    circuit = Circuit(layout=layout, gates=(hadamard,))
    state = apply_circuit(StateVector(layout), circuit)

    histogram = sample_counts(state, shots, seed=seed)

    assert abs(histogram.frequency(0) - 0.5) <= 5 * math.sqrt(0.25 / shots)


def test_sample_counts_basis_state():
    state = StateVector.basis(RegisterLayout(n=2), 3)
    histogram = sample_counts(state, 100, seed=0)

    assert histogram.counts == {3: 100}
    assert histogram.count(0) == 0


def test_sample_counts_invalid():
    with pytest.raises(ValueError):
        sample_counts(StateVector(RegisterLayout(n=1)), 0, seed=0)

    with pytest.raises(ValueError):
        sample_counts(StateVector(RegisterLayout(n=1)), 10, seed=-1)


def test_histogram_total():
    with pytest.raises(ValidationError):
        ShotHistogram(shots=10, seed=0, counts={0: 3})


def test_point_seed():
    assert point_seed(0, 17) == 17
    assert point_seed(5, 3) == 6
