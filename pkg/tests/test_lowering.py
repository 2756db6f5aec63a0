#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# @Author: José Sánchez-Gallego (gallegoj@uw.edu)
# @Date: 2026-10-18
# @Filename: test_lowering.py
# @License: BSD 3-clause (http://www.opensource.org/licenses/BSD-3-Clause)

from __future__ import annotations

import numpy
import pytest

from qperceptron.circuit import Circuit, Control, Gate, RegisterLayout, qubit
from qperceptron.lowering import BASIS_LABELS, count_gates, lower_circuit, lower_gate
from qperceptron.simulator import circuit_unitary


LAYOUT = RegisterLayout(n=2, d=2, has_l=True)


def _gate(kind, target: str, *controls: str, angle: float | None = None) -> Gate:
    """Builds a gate from labels such as ``a0`` or ``!q1`` for an anti-control."""

    def _qubit(label: str):
        return qubit(label[0], int(label[1:]))  # type: ignore[arg-type]

    return Gate(
        kind=kind,
        target=_qubit(target),
        controls=tuple(
            Control(
                qubit=_qubit(label.lstrip("!")),
                polarity="zero" if label.startswith("!") else "one",
            )
            for label in controls
        ),
        angle=angle,
    )


GATES = [
    _gate("H", "q0", "a0"),
    _gate("Ry", "q0", "!a0", angle=0.8),
    _gate("Rz", "q1", "l0", angle=-1.3),
    _gate("P", "a1", "q0", angle=2.1),
    _gate("X", "l0", "q0", "!q1", "a0"),
    _gate("Z", "a1", "q0", "q1", "a0", "l0"),
    _gate("H", "a0", "q0", "q1"),
    _gate("Ry", "a0", "!a1", "l0", angle=0.45),
    _gate("P", "l0", "q0", "q1", "!a1", angle=-0.7),
]


@pytest.mark.parametrize("gate", GATES, ids=lambda gate: gate.label)
def test_lowering_is_exact(gate: Gate):
    original = Circuit(layout=LAYOUT, gates=(gate,))
    lowered = lower_circuit(original)

    assert numpy.allclose(circuit_unitary(lowered), circuit_unitary(original))


@pytest.mark.parametrize("gate", GATES, ids=lambda gate: gate.label)
def test_lowering_basis(gate: Gate):
    for lowered in lower_gate(gate):
        assert lowered.label in BASIS_LABELS
        assert all(control.polarity == "one" for control in lowered.controls)


def test_uncontrolled_gate_unchanged():
    gate = Gate(kind="Ry", target=qubit("q", 0), angle=0.3)
    assert lower_gate(gate) == [gate]


def test_prunes_zero_rotations():
    circuit = Circuit(
        layout=LAYOUT,
        gates=(
            Gate(kind="Ry", target=qubit("q", 0), angle=0.0),
            Gate(kind="H", target=qubit("q", 1)),
        ),
    )

    assert len(lower_circuit(circuit)) == 1


def test_count_gates():
    circuit = Circuit(layout=LAYOUT, gates=tuple(GATES))
    counts = count_gates(circuit)

    assert set(counts) == {*BASIS_LABELS, "total"}
    assert counts["total"] == sum(counts[label] for label in BASIS_LABELS)
    assert counts["total"] == len(lower_circuit(circuit))
    assert counts["cx"] > 0
