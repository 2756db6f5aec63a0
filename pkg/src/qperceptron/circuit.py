#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# @Author: José Sánchez-Gallego (gallegoj@uw.edu)
# @Date: 2026-10-18
# @Filename: circuit.py
# @License: BSD 3-clause (http://www.opensource.org/licenses/BSD-3-Clause)

from __future__ import annotations

import math
from collections import Counter
from functools import reduce

from typing import Iterable

import numpy
from pydantic import BaseModel, ConfigDict, Field, model_validator

from qperceptron.types import GateKind, Polarity, Register


__all__ = [
    "QubitId",
    "Control",
    "Gate",
    "RegisterLayout",
    "Circuit",
    "qubit",
    "add_control",
    "x_layer",
]


ROTATION_KINDS: tuple[GateKind, ...] = ("P", "Ry", "Rz")


class QubitId(BaseModel):
    """A qubit addressed by its register and its index within the register."""

    model_config = ConfigDict(frozen=True)

    reg: Register = Field(description="Register name")
    index: int = Field(default=0, ge=0)

    def __str__(self) -> str:
        return f"{self.reg}{self.index}"


def qubit(register: Register, index: int = 0) -> QubitId:
    """Shortcut to create a `.QubitId`."""

    return QubitId(reg=register, index=index)


class Control(BaseModel):
    """A control qubit and the value on which the gate fires."""

    model_config = ConfigDict(frozen=True)

    qubit: QubitId
    polarity: Polarity = "one"

    def __str__(self) -> str:
        prefix = "" if self.polarity == "one" else "!"
        return f"{prefix}{self.qubit}"


class RegisterLayout(BaseModel):
    """Sizes of the registers in a circuit.

    Qubits are mapped to global bit positions with the input register ``q``
    in the least significant bits, followed by the ancilla register ``a``,
    the readout qubit ``l`` and the phase-estimation register ``e``. The basis
    index of a state is ``e·2^(n+d+l) + l·2^(n+d) + a·2^n + q``.

    """

    model_config = ConfigDict(frozen=True)

    n: int = Field(default=0, ge=0, description="Qubits in the input register q")
    d: int = Field(default=0, ge=0, description="Qubits in the ancilla register a")
    has_l: bool = Field(default=False, description="Whether the readout qubit exists")
    m: int = Field(default=0, ge=0, description="Qubits in the evaluation register e")

    @property
    def num_qubits(self) -> int:
        """Total number of qubits."""

        return self.n + self.d + int(self.has_l) + self.m

    def size(self, register: Register) -> int:
        """Returns the number of qubits in a register."""

        sizes = {"q": self.n, "a": self.d, "l": int(self.has_l), "e": self.m}
        return sizes[register]

    def offset(self, register: Register) -> int:
        """Returns the global position of the first qubit of a register."""

        offsets = {
            "q": 0,
            "a": self.n,
            "l": self.n + self.d,
            "e": self.n + self.d + int(self.has_l),
        }
        return offsets[register]

    def contains(self, qubit: QubitId) -> bool:
        return qubit.index < self.size(qubit.reg)

    def position(self, qubit: QubitId) -> int:
        """Returns the global bit position of a qubit."""

        if not self.contains(qubit):
            raise ValueError(f"Qubit {qubit} is not part of the layout {self!r}.")

        return self.offset(qubit.reg) + qubit.index

    def index(
        self,
        q: int = 0,
        a: int = 0,
        l: int = 0,  # noqa: E741
        e: int = 0,
    ) -> int:
        """Returns the global basis index for per-register basis values."""

        for name, value in (("q", q), ("a", a), ("l", l), ("e", e)):
            if value < 0 or value >= 2 ** self.size(name):  # type: ignore[arg-type]
                raise ValueError(
                    f"Basis value {value} out of range for register {name}."
                )

        return (
            (e << self.offset("e"))
            | (l << self.offset("l"))
            | (a << self.offset("a"))
            | (q << self.offset("q"))
        )

    def including(self, qubit: QubitId) -> RegisterLayout:
        """Returns a layout widened so that it contains ``qubit``."""

        if self.contains(qubit):
            return self

        if qubit.reg == "l":
            if qubit.index != 0:
                raise ValueError("The readout register only has qubit l0.")
            return self.model_copy(update={"has_l": True})

        field = {"q": "n", "a": "d", "e": "m"}[qubit.reg]
        return self.model_copy(update={field: qubit.index + 1})

    def union(self, other: RegisterLayout) -> RegisterLayout:
        """Returns the smallest layout containing both layouts."""

        return RegisterLayout(
            n=max(self.n, other.n),
            d=max(self.d, other.d),
            has_l=self.has_l or other.has_l,
            m=max(self.m, other.m),
        )


class Gate(BaseModel):
    """A single gate with an arbitrary number of (anti-)controls."""

    model_config = ConfigDict(frozen=True)

    kind: GateKind
    target: QubitId
    controls: tuple[Control, ...] = ()
    angle: float | None = None

    @model_validator(mode="after")
    def check_gate(self):
        if self.kind in ROTATION_KINDS:
            if self.angle is None or not math.isfinite(self.angle):
                raise ValueError(f"Gate {self.kind} requires a finite angle.")
        elif self.angle is not None:
            raise ValueError(f"Gate {self.kind} does not take an angle.")

        control_qubits = [control.qubit for control in self.controls]
        if len(set(control_qubits)) != len(control_qubits):
            raise ValueError("A qubit cannot appear twice as a control.")
        if self.target in control_qubits:
            raise ValueError(f"Target {self.target} cannot also be a control.")

        return self

    @property
    def qubits(self) -> tuple[QubitId, ...]:
        """The target followed by the control qubits."""

        return (self.target, *(control.qubit for control in self.controls))

    @property
    def label(self) -> str:
        """Kind prefixed by one ``c`` per control, e.g. ``cx`` or ``ccry``."""

        return "c" * len(self.controls) + self.kind.lower()

    def controlled(self, control: QubitId, polarity: Polarity = "one") -> Gate:
        """Returns a copy of the gate with an extra control."""

        return Gate(
            kind=self.kind,
            target=self.target,
            controls=(*self.controls, Control(qubit=control, polarity=polarity)),
            angle=self.angle,
        )

    def inverse(self) -> Gate:
        """Returns the inverse gate. ``X``, ``H`` and ``Z`` are self-inverse."""

        if self.angle is None:
            return self

        return self.model_copy(update={"angle": -self.angle})

    def matrix(self) -> numpy.ndarray:
        """Returns the 2x2 matrix applied to the target when the controls fire."""

        if self.kind == "X":
            return numpy.array([[0, 1], [1, 0]], dtype=complex)
        elif self.kind == "H":
            return numpy.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
        elif self.kind == "Z":
            return numpy.diag([1, -1]).astype(complex)

        assert self.angle is not None

        if self.kind == "P":
            return numpy.diag([1, numpy.exp(1j * self.angle)])
        elif self.kind == "Ry":
            cos = math.cos(self.angle / 2)
            sin = math.sin(self.angle / 2)
            return numpy.array([[cos, -sin], [sin, cos]], dtype=complex)
        else:
            phase = numpy.exp(0.5j * self.angle)
            return numpy.diag([phase.conjugate(), phase])

    def __str__(self) -> str:
        name = self.kind if self.angle is None else f"{self.kind}({self.angle:.6f})"
        if len(self.controls) == 0:
            return f"{name} {self.target}"

        controls = ", ".join(str(control) for control in self.controls)
        return f"{name} {self.target} <- {controls}"


class Circuit(BaseModel):
    """An immutable, ordered list of gates acting on a register layout."""

    model_config = ConfigDict(frozen=True)

    layout: RegisterLayout = Field(default_factory=RegisterLayout)
    gates: tuple[Gate, ...] = ()

    @model_validator(mode="after")
    def check_qubits(self):
        for gate in self.gates:
            for gate_qubit in gate.qubits:
                if not self.layout.contains(gate_qubit):
                    raise ValueError(f"Gate {gate} uses a qubit outside the layout.")

        return self

    @classmethod
    def from_gates(
        cls,
        gates: Iterable[Gate],
        layout: RegisterLayout | None = None,
    ) -> Circuit:
        """Creates a circuit. If ``layout`` is not passed the smallest one is used."""

        gates = tuple(gates)

        if layout is None:
            layout = reduce(
                lambda lay, gate_qubit: lay.including(gate_qubit),
                (gate_qubit for gate in gates for gate_qubit in gate.qubits),
                RegisterLayout(),
            )

        return cls(layout=layout, gates=gates)

    def __len__(self) -> int:
        return len(self.gates)

    def __add__(self, other: Circuit) -> Circuit:
        return self.compose(other)

    def on(self, layout: RegisterLayout) -> Circuit:
        """Returns the same gates on a (usually wider) layout."""

        if layout == self.layout:
            return self

        return Circuit(layout=layout, gates=self.gates)

    def compose(self, *others: Circuit) -> Circuit:
        """Appends other circuits after this one, widening the layout as needed."""

        layout = reduce(lambda lay, other: lay.union(other.layout), others, self.layout)
        gates = self.gates + tuple(gate for other in others for gate in other.gates)

        return Circuit(layout=layout, gates=gates)

    def inverse(self) -> Circuit:
        """Returns the inverse circuit."""

        gates = tuple(gate.inverse() for gate in reversed(self.gates))
        return Circuit(layout=self.layout, gates=gates)

    def controlled(self, control: QubitId, polarity: Polarity = "one") -> Circuit:
        """Same as `.add_control`."""

        return add_control(self, control, polarity=polarity)

    def count_kinds(self) -> dict[str, int]:
        """Returns the number of gates for each gate label."""

        return dict(Counter(gate.label for gate in self.gates))

    def dump(self) -> str:
        """Returns a human-readable listing of the circuit."""

        lay = self.layout
        header = f"# n={lay.n} d={lay.d} l={int(lay.has_l)} e={lay.m} gates={len(self)}"

        return "\n".join([header, *(str(gate) for gate in self.gates)])


def add_control(
    circuit: Circuit,
    control: QubitId,
    polarity: Polarity = "one",
) -> Circuit:
    """Adds a control to every gate in a circuit.

    Parameters
    ----------
    circuit
        The circuit to control.
    control
        The control qubit. The layout is widened if the qubit is not part of it.
    polarity
        ``one`` if the gates fire when the control is in ``|1>``, ``zero`` for
        an anti-control.

    Returns
    -------
    controlled
        A new circuit in which each gate has ``control`` appended to its controls.

    Raises
    ------
    ValueError
        If ``control`` is already a target or control of any gate.

    """

    for gate in circuit.gates:
        if control in gate.qubits:
            raise ValueError(f"Control qubit {control} is already used by {gate}.")

    new_control = Control(qubit=control, polarity=polarity)
    gates = tuple(
        gate.model_copy(update={"controls": (*gate.controls, new_control)})
        for gate in circuit.gates
    )

    return Circuit(layout=circuit.layout.including(control), gates=gates)


def x_layer(n: int, register: Register = "q") -> Circuit:
    """Returns a circuit with an ``X`` on the first ``n`` qubits of a register."""

    gates = [Gate(kind="X", target=qubit(register, ii)) for ii in range(n)]
    layout = RegisterLayout().including(qubit(register, n - 1)) if n > 0 else None

    return Circuit.from_gates(gates, layout=layout)
