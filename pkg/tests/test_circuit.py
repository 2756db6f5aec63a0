#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# @Author: José Sánchez-Gallego (gallegoj@uw.edu)
# @Date: 2026-10-18
# @Filename: test_circuit.py
# @License: BSD 3-clause (http://www.opensource.org/licenses/BSD-3-Clause)

from __future__ import annotations

import math

import numpy
import pytest
from pydantic import BaseModel, ValidationError

from qperceptron.circuit import (
    Circuit,
    Control,
    Gate,
    QubitId,
    RegisterLayout,
    add_control,
    qubit,
    x_layer,
)
from qperceptron.simulator import circuit_unitary


@pytest.mark.parametrize("model", [QubitId, Control, RegisterLayout, Gate, Circuit])
def test_fields_do_not_shadow_base_model(model: type[BaseModel]):
    assert not any(hasattr(BaseModel, name) for name in model.model_fields)


def test_qubit_register():
    assert qubit("a", 1).reg == "a"
    assert qubit("a", 1).index == 1


def test_layout_index():
    layout = RegisterLayout(n=3, d=2, has_l=True, m=2)

    assert layout.num_qubits == 8
    assert layout.offset("a") == 3
    assert layout.offset("l") == 5
    assert layout.offset("e") == 6

    assert layout.index(q=5, a=2, l=1, e=3) == 3 * 2**6 + 1 * 2**5 + 2 * 2**3 + 5


def test_layout_index_out_of_range():
    layout = RegisterLayout(n=2, d=1)

    with pytest.raises(ValueError):
        layout.index(q=4)

    with pytest.raises(ValueError):
        layout.index(l=1)


def test_layout_position_outside():
    layout = RegisterLayout(n=2)

    assert layout.position(qubit("q", 1)) == 1

    with pytest.raises(ValueError):
        layout.position(qubit("a", 0))


def test_layout_including_and_union():
    layout = RegisterLayout(n=2).including(qubit("l"))
    assert layout.has_l

    with pytest.raises(ValueError):
        RegisterLayout().including(qubit("l", 1))

    union = RegisterLayout(n=3).union(RegisterLayout(d=2, m=1))
    assert union == RegisterLayout(n=3, d=2, m=1)


def test_gate_requires_angle():
    with pytest.raises(ValidationError):
        Gate(kind="Ry", target=qubit("q"))

    with pytest.raises(ValidationError):
        Gate(kind="Ry", target=qubit("q"), angle=math.inf)

    with pytest.raises(ValidationError):
        Gate(kind="X", target=qubit("q"), angle=0.5)


def test_gate_target_is_control():
    with pytest.raises(ValidationError):
        Gate(kind="X", target=qubit("q"), controls=(Control(qubit=qubit("q")),))


def test_gate_duplicate_controls():
    control = Control(qubit=qubit("a"))

    with pytest.raises(ValidationError):
        Gate(kind="X", target=qubit("q"), controls=(control, control))


def test_gate_label_and_str():
    gate = Gate(
        kind="Ry",
        target=qubit("a", 0),
        controls=(
            Control(qubit=qubit("a", 1), polarity="zero"),
            Control(qubit=qubit("l")),
        ),
        angle=0.25,
    )

    assert gate.label == "ccry"
    assert str(gate) == "Ry(0.250000) a0 <- !a1, l0"


def test_circuit_rejects_qubits_outside_layout():
    gate = Gate(kind="H", target=qubit("a", 1))

    with pytest.raises(ValidationError):
        Circuit(layout=RegisterLayout(d=1), gates=(gate,))


def test_from_gates_minimal_layout():
    circuit = Circuit.from_gates(
        [
            Gate(kind="H", target=qubit("q", 2)),
            Gate(kind="X", target=qubit("a", 0), controls=(Control(qubit=qubit("l")),)),
        ]
    )

    assert circuit.layout == RegisterLayout(n=3, d=1, has_l=True)
    assert len(circuit) == 2


def test_compose_widens_layout():
    first = x_layer(2)
    second = x_layer(1, register="a")

    combined = first + second

    assert combined.layout == RegisterLayout(n=2, d=1)
    assert len(combined) == 3


def test_inverse_is_unitary_inverse():
    circuit = Circuit.from_gates(
        [
            Gate(kind="H", target=qubit("q", 0)),
            Gate(kind="Ry", target=qubit("q", 1), angle=0.7),
            Gate(
                kind="P",
                target=qubit("q", 0),
                controls=(Control(qubit=qubit("q", 1)),),
                angle=1.1,
            ),
            Gate(kind="Rz", target=qubit("q", 1), angle=-0.3),
        ]
    )

    unitary = circuit_unitary(circuit)
    inverse = circuit_unitary(circuit.inverse())

    assert numpy.allclose(inverse @ unitary, numpy.eye(4))


def test_add_control_acts_only_when_control_fires():
    circuit = Circuit.from_gates(
        [
            Gate(kind="H", target=qubit("q", 0)),
            Gate(kind="Ry", target=qubit("q", 1), angle=0.4),
        ]
    )

    base = circuit_unitary(circuit)

    for polarity, active in (("one", 1), ("zero", 0)):
        controlled = add_control(circuit, qubit("l"), polarity=polarity)
        assert controlled.layout == RegisterLayout(n=2, has_l=True)

        unitary = circuit_unitary(controlled)
        on = slice(4 * active, 4 * active + 4)
        off = slice(4 * (1 - active), 4 * (1 - active) + 4)

        assert numpy.allclose(unitary[on, on], base)
        assert numpy.allclose(unitary[off, off], numpy.eye(4))
        assert numpy.allclose(unitary[on, off], 0)


def test_add_control_collision():
    circuit = x_layer(2)

    with pytest.raises(ValueError):
        add_control(circuit, qubit("q", 1))


def test_dump():
    dump = x_layer(2).dump()

    assert dump.splitlines() == ["# n=2 d=0 l=0 e=0 gates=2", "X q0", "X q1"]
