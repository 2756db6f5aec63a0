#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# @Author: José Sánchez-Gallego (gallegoj@uw.edu)
# @Date: 2026-10-18
# @Filename: simulator.py
# @License: BSD 3-clause (http://www.opensource.org/licenses/BSD-3-Clause)

from __future__ import annotations

import numpy
from pydantic import BaseModel, Field, model_validator

from qperceptron import config
from qperceptron.circuit import Circuit, Gate, RegisterLayout


__all__ = [
    "StateVector",
    "ShotHistogram",
    "apply_circuit",
    "apply_controlled_matrix",
    "amplitude",
    "sample_counts",
    "circuit_unitary",
    "make_rng",
    "point_seed",
]


class StateVector:
    """A dense complex statevector over a `.RegisterLayout`.

    Parameters
    ----------
    layout
        The register layout.
    amplitudes
        The amplitudes, indexed by global basis index. If not passed the state
        is initialised to ``|0...0>``.

    """

    def __init__(
        self,
        layout: RegisterLayout,
        amplitudes: numpy.ndarray | None = None,
    ):
        self.layout = layout
        size = 2**layout.num_qubits

        if amplitudes is None:
            self.amplitudes = numpy.zeros(size, dtype=complex)
            self.amplitudes[0] = 1.0
        else:
            amplitudes = numpy.asarray(amplitudes, dtype=complex).ravel()
            if amplitudes.size != size:
                raise ValueError(
                    f"Expected {size} amplitudes for {layout.num_qubits} qubits, "
                    f"got {amplitudes.size}."
                )
            self.amplitudes = amplitudes.copy()

    def __repr__(self):
        qubits = self.layout.num_qubits
        return f"<StateVector (qubits={qubits}, norm={self.norm():.6f})>"

    @classmethod
    def basis(cls, layout: RegisterLayout, index: int) -> StateVector:
        """Returns the computational basis state ``|index>``."""

        state = cls(layout)
        state.amplitudes[0] = 0.0
        state.amplitudes[index] = 1.0

        return state

    def copy(self) -> StateVector:
        return StateVector(self.layout, self.amplitudes)

    def norm(self) -> float:
        return float(numpy.linalg.norm(self.amplitudes))

    def probabilities(self) -> numpy.ndarray:
        return numpy.abs(self.amplitudes) ** 2

    def amplitude(
        self,
        l: int = 0,  # noqa: E741
        a: int = 0,
        q: int = 0,
        e: int = 0,
    ) -> complex:
        """Returns the amplitude for per-register basis values."""

        return complex(self.amplitudes[self.layout.index(q=q, a=a, l=l, e=e)])


class ShotHistogram(BaseModel):
    """Measurement outcomes of sampling a state."""

    shots: int = Field(gt=0, description="Number of samples drawn")
    seed: int = Field(ge=0, description="Seed of the sampling stream")
    counts: dict[int, int] = Field(description="Basis index to number of hits")

    @model_validator(mode="after")
    def check_total(self):
        if sum(self.counts.values()) != self.shots:
            raise ValueError("Histogram counts do not add up to the number of shots.")
        return self

    def count(self, index: int) -> int:
        return self.counts.get(index, 0)

    def frequency(self, index: int) -> float:
        return self.count(index) / self.shots


def make_rng(seed: int) -> numpy.random.Generator:
    """Returns a counter-based generator for a seed."""

    if seed < 0:
        raise ValueError("Seeds must be non-negative.")

    return numpy.random.Generator(numpy.random.Philox(seed))


def point_seed(seed_base: int, point_index: int) -> int:
    """Returns the seed of an individual sweep point."""

    return seed_base ^ point_index


def _apply_gate(tensor: numpy.ndarray, gate: Gate, layout: RegisterLayout):
    """Applies a gate in place to a ``(2,) * t`` tensor with optional batch axes."""

    n_qubits = layout.num_qubits
    index: list[int | slice] = [slice(None)] * n_qubits

    for control in gate.controls:
        axis = n_qubits - 1 - layout.position(control.qubit)
        index[axis] = 1 if control.polarity == "one" else 0

    axis = n_qubits - 1 - layout.position(gate.target)

    index[axis] = 0
    view0 = tensor[(*index, Ellipsis)]
    index[axis] = 1
    view1 = tensor[(*index, Ellipsis)]

    if gate.kind == "X":
        swap = view0.copy()
        view0[...] = view1
        view1[...] = swap
    elif gate.kind == "Z":
        view1 *= -1
    elif gate.kind == "P":
        view1 *= numpy.exp(1j * gate.angle)
    elif gate.kind == "Rz":
        phase = numpy.exp(0.5j * gate.angle)
        view0 *= phase.conjugate()
        view1 *= phase
    else:
        matrix = gate.matrix()
        new0 = matrix[0, 0] * view0 + matrix[0, 1] * view1
        new1 = matrix[1, 0] * view0 + matrix[1, 1] * view1
        view0[...] = new0
        view1[...] = new1


def apply_circuit(state: StateVector, circuit: Circuit) -> StateVector:
    """Applies a circuit to a state and returns the new state.

    The input state is not modified. A `RuntimeError` is raised if the norm drifts
    from one by more than ``simulation.norm_tolerance``.

    """

    if circuit.layout != state.layout:
        raise ValueError(
            f"Circuit layout {circuit.layout!r} does not match "
            f"the state layout {state.layout!r}."
        )

    new_state = state.copy()
    tensor = new_state.amplitudes.reshape((2,) * state.layout.num_qubits)

    for gate in circuit.gates:
        _apply_gate(tensor, gate, state.layout)

    initial_norm = state.norm()
    if abs(new_state.norm() - initial_norm) > config["simulation.norm_tolerance"]:
        raise RuntimeError("The state norm was not preserved by the circuit.")

    return new_state


def apply_controlled_matrix(
    state: StateVector,
    matrix: numpy.ndarray,
    control: int | None = None,
) -> StateVector:
    """Applies a dense matrix to the lowest qubits of a state.

    Parameters
    ----------
    state
        The input state. It is not modified.
    matrix
        A ``2^k x 2^k`` matrix acting on the ``k`` least significant qubits.
    control
        Global bit position of an optional control qubit. It must be above the
        qubits the matrix acts on.

    """

    dim = matrix.shape[0]
    n_low = dim.bit_length() - 1
    if matrix.shape != (dim, dim) or 2**n_low != dim:
        raise ValueError("The matrix must be square with a power of two dimension.")
    if n_low > state.layout.num_qubits:
        raise ValueError("The matrix acts on more qubits than the state has.")

    new_state = state.copy()
    blocks = new_state.amplitudes.reshape(-1, dim)

    if control is None:
        blocks[:] = blocks @ matrix.T
    else:
        if control < n_low or control >= state.layout.num_qubits:
            raise ValueError("The control must be above the target block.")
        rows = ((numpy.arange(blocks.shape[0]) >> (control - n_low)) & 1) == 1
        blocks[rows] = blocks[rows] @ matrix.T

    return new_state


def amplitude(
    state: StateVector,
    l: int = 0,  # noqa: E741
    a: int = 0,
    q: int = 0,
) -> complex:
    """Returns the amplitude of ``|l>|a>|q>``."""

    return state.amplitude(l=l, a=a, q=q)


def sample_counts(state: StateVector, shots: int, seed: int) -> ShotHistogram:
    """Samples ``shots`` measurements of all qubits in the computational basis."""

    if shots <= 0:
        raise ValueError("The number of shots must be positive.")

    probabilities = state.probabilities()
    probabilities = probabilities / probabilities.sum()

    rng = make_rng(seed)
    counts = rng.multinomial(shots, probabilities)

    histogram = {int(index): int(counts[index]) for index in numpy.flatnonzero(counts)}

    return ShotHistogram(shots=shots, seed=seed, counts=histogram)


def circuit_unitary(circuit: Circuit) -> numpy.ndarray:
    """Returns the dense unitary of a circuit.

    Column ``j`` is the circuit applied to ``|j>``. Only available for circuits
    with at most ``simulation.max_unitary_qubits`` qubits.

    """

    n_qubits = circuit.layout.num_qubits
    max_qubits = config["simulation.max_unitary_qubits"]

    if n_qubits > max_qubits:
        raise ValueError(
            f"Cannot build the unitary of a {n_qubits}-qubit circuit "
            f"(maximum is {max_qubits})."
        )

    dim = 2**n_qubits
    unitary = numpy.eye(dim, dtype=complex)
    tensor = unitary.reshape((2,) * n_qubits + (dim,))

    for gate in circuit.gates:
        _apply_gate(tensor, gate, circuit.layout)

    return unitary
