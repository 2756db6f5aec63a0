#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# @Author: José Sánchez-Gallego (gallegoj@uw.edu)
# @Date: 2026-10-18
# @Filename: lowering.py
# @License: BSD 3-clause (http://www.opensource.org/licenses/BSD-3-Clause)

from __future__ import annotations

import math

from qperceptron import config
from qperceptron.circuit import Circuit, Control, Gate, QubitId


__all__ = ["lower_gate", "lower_circuit", "count_gates", "BASIS_LABELS"]


#: Labels of the gates left after lowering.
BASIS_LABELS = ("x", "h", "z", "p", "ry", "rz", "cx", "cz")


def _gate(kind, target: QubitId, angle: float | None = None, controls=()) -> Gate:
    return Gate(kind=kind, target=target, angle=angle, controls=controls)


def _half(gate: Gate, sign: int = 1) -> Gate:
    """Returns ``V`` (or ``V^†`` if ``sign`` is -1) with ``V^2`` equal to the gate."""

    if gate.kind == "Z":
        return _gate("P", gate.target, sign * math.pi / 2)
    elif gate.kind in ("P", "Ry", "Rz"):
        assert gate.angle is not None
        return _gate(gate.kind, gate.target, sign * gate.angle / 2)

    raise ValueError(f"No square root defined for {gate.kind}.")


def _single_control(gate: Gate) -> list[Gate]:
    control = gate.controls[0]
    target = gate.target
    cx = _gate("X", target, controls=(control,))

    if gate.kind in ("X", "Z"):
        return [gate]
    elif gate.kind in ("Ry", "Rz"):
        assert gate.angle is not None
        return [
            _gate(gate.kind, target, gate.angle / 2),
            cx,
            _gate(gate.kind, target, -gate.angle / 2),
            cx,
        ]
    elif gate.kind == "P":
        assert gate.angle is not None
        phase = _gate("P", control.qubit, gate.angle / 2)
        return [phase, *_single_control(_gate("Rz", target, gate.angle, (control,)))]
    else:
        # H = Ry(π/4) Z Ry(-π/4)
        return [
            _gate("Ry", target, -math.pi / 4),
            _gate("Z", target, controls=(control,)),
            _gate("Ry", target, math.pi / 4),
        ]


def _multi_control(gate: Gate) -> list[Gate]:
    target = gate.target
    controls = gate.controls

    if gate.kind == "X":
        inner = lower_gate(_gate("Z", target, controls=controls))
        return [_gate("H", target), *inner, _gate("H", target)]
    elif gate.kind == "H":
        inner = lower_gate(_gate("Z", target, controls=controls))
        return [
            _gate("Ry", target, -math.pi / 4),
            *inner,
            _gate("Ry", target, math.pi / 4),
        ]

    # C^k U = C_ck V, C^(k-1) X(ck), C_ck V^†, C^(k-1) X(ck), C^(k-1) V
    last = controls[-1]
    rest = controls[:-1]

    root = _half(gate)
    root_dagger = _half(gate, sign=-1)
    toggle = _gate("X", last.qubit, controls=rest)

    sequence = [
        root.model_copy(update={"controls": (last,)}),
        toggle,
        root_dagger.model_copy(update={"controls": (last,)}),
        toggle,
        root.model_copy(update={"controls": rest}),
    ]

    return [lowered for step in sequence for lowered in lower_gate(step)]


def lower_gate(gate: Gate) -> list[Gate]:
    """Decomposes a gate into single-qubit gates, ``CX`` and ``CZ``.

    Anti-controls are conjugated with ``X``. Gates with two or more controls are
    split recursively into gates with one control less using a square root of the
    target operation. The decomposition is exact, including the global phase.

    """

    anti = [control.qubit for control in gate.controls if control.polarity == "zero"]
    if len(anti) > 0:
        positive = tuple(Control(qubit=control.qubit) for control in gate.controls)
        flips = [_gate("X", qq) for qq in anti]
        inner = lower_gate(gate.model_copy(update={"controls": positive}))
        return [*flips, *inner, *flips]

    n_controls = len(gate.controls)

    if n_controls == 0:
        return [gate]
    elif n_controls == 1:
        return _single_control(gate)
    else:
        return _multi_control(gate)


def lower_circuit(circuit: Circuit) -> Circuit:
    """Lowers every gate in a circuit and drops negligible rotations."""

    prune = config["state_prep.prune_threshold"]

    gates = [
        lowered
        for gate in circuit.gates
        for lowered in lower_gate(gate)
        if lowered.angle is None or abs(lowered.angle) > prune
    ]

    return Circuit(layout=circuit.layout, gates=tuple(gates))


def count_gates(circuit: Circuit) -> dict[str, int]:
    """Returns the number of lowered gates of each kind and the ``total``."""

    counts = {label: 0 for label in BASIS_LABELS}
    counts.update(lower_circuit(circuit).count_kinds())
    counts["total"] = sum(counts.values())

    return counts
