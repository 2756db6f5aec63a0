#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# @Author: José Sánchez-Gallego (gallegoj@uw.edu)
# @Date: 2026-10-18
# @Filename: state_prep.py
# @License: BSD 3-clause (http://www.opensource.org/licenses/BSD-3-Clause)

from __future__ import annotations

import math

from typing import Annotated

import numpy
from pydantic import BaseModel, ConfigDict, Field, model_validator

from qperceptron import config
from qperceptron.circuit import (
    Circuit,
    Control,
    Gate,
    RegisterLayout,
    qubit,
    x_layer,
)
from qperceptron.types import EncodingLayout, SignStrategy


__all__ = [
    "PerceptronInputs",
    "EncodingVectors",
    "build_encoding_vectors",
    "synthesize_state_prep",
    "build_uz",
    "minimum_qubits",
]


UnitFloat = Annotated[float, Field(ge=-1.0, le=1.0)]


class PerceptronInputs(BaseModel):
    """Input vector, weights and bias of a perceptron."""

    model_config = ConfigDict(frozen=True)

    x: Annotated[tuple[UnitFloat, ...], Field(min_length=1, description="Inputs")]
    w: Annotated[tuple[UnitFloat, ...], Field(min_length=1, description="Weights")]
    b: Annotated[UnitFloat, Field(description="Bias")] = 0.0

    @model_validator(mode="after")
    def check_lengths(self):
        if len(self.x) != len(self.w):
            raise ValueError("Inputs and weights must have the same length.")
        return self

    @property
    def n_in(self) -> int:
        return len(self.x)

    @property
    def z(self) -> float:
        """The normalised weighted sum ``(w·x + b) / (N_in + 1)``."""

        return (float(numpy.dot(self.w, self.x)) + self.b) / (self.n_in + 1)


class EncodingVectors(BaseModel):
    """Real vectors whose normalised overlap is the perceptron argument ``z``."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    v_x: numpy.ndarray
    v_wb: numpy.ndarray
    a_x: float = Field(ge=0, description="Padding entry of v_x")
    a_wb: float = Field(ge=0, description="Padding entry of v_wb")
    n: int
    layout: EncodingLayout

    @property
    def z(self) -> float:
        overlap = float(numpy.dot(self.v_x, self.v_wb))
        return overlap / float(numpy.dot(self.v_x, self.v_x))


def minimum_qubits(n_in: int) -> int:
    """Smallest ``n`` such that ``2^n >= N_in + 3``."""

    return max(1, math.ceil(math.log2(n_in + 3)))


def build_encoding_vectors(
    inputs: PerceptronInputs,
    n: int | None = None,
    layout: EncodingLayout | None = None,
) -> EncodingVectors:
    """Builds the two ``2^n`` vectors encoding inputs and weights.

    Both vectors have squared norm ``N_in + 1`` and their inner product is
    ``w·x + b``. The padding entries ``A_x`` and ``A_wb`` complete the norms.

    Parameters
    ----------
    inputs
        The perceptron inputs.
    n
        Number of qubits in the input register. Defaults to the minimum required.
    layout
        ``phase_friendly`` puts ``A_x`` first, which keeps most amplitudes
        non-negative. ``lemma`` uses ``v_x = (x, 1, A_x, 0, ...)`` and
        ``v_wb = (w, b, 0, A_wb, 0, ...)``.

    """

    layout = layout or config["state_prep.layout"]
    n_in = inputs.n_in
    n = minimum_qubits(n_in) if n is None else n
    size = 2**n

    if size < n_in + 3:
        raise ValueError(
            f"{n} qubits cannot encode {n_in} inputs (need 2^n >= N_in+3)."
        )

    x = numpy.array(inputs.x, dtype=float)
    w = numpy.array(inputs.w, dtype=float)

    a_x = math.sqrt(max(n_in - float(x @ x), 0.0))
    a_wb = math.sqrt(max(n_in + 1 - float(w @ w) - inputs.b**2, 0.0))

    v_x = numpy.zeros(size)
    v_wb = numpy.zeros(size)

    if layout == "phase_friendly":
        v_x[0] = a_x
        v_x[1 : n_in + 1] = x
        v_x[n_in + 1] = 1.0
        v_wb[1 : n_in + 1] = w
        v_wb[n_in + 1] = inputs.b
        v_wb[size - 1] = a_wb
    elif layout == "lemma":
        v_x[:n_in] = x
        v_x[n_in] = 1.0
        v_x[n_in + 1] = a_x
        v_wb[:n_in] = w
        v_wb[n_in] = inputs.b
        v_wb[n_in + 2] = a_wb
    else:
        raise ValueError(f"Unknown encoding layout {layout!r}.")

    return EncodingVectors(
        v_x=v_x,
        v_wb=v_wb,
        a_x=a_x,
        a_wb=a_wb,
        n=n,
        layout=layout,
    )


def _level_angles(
    values: numpy.ndarray,
    target: int,
    signed_leaves: bool,
) -> list[float | None]:
    """Ry angles for each setting of the qubits above ``target``.

    Branches with zero norm do not affect the state and are returned as `None`.

    """

    block = 2 ** (target + 1)
    half = 2**target

    angles: list[float | None] = []
    for start in range(0, values.size, block):
        segment = values[start : start + block]
        if signed_leaves and target == 0:
            low, high = float(segment[0]), float(segment[1])
        else:
            low = float(numpy.linalg.norm(segment[:half]))
            high = float(numpy.linalg.norm(segment[half:]))

        if low == 0.0 and high == 0.0:
            angles.append(None)
        else:
            angles.append(2 * math.atan2(high, low))

    return angles


def _rotation_tree(values: numpy.ndarray, n: int, signed_leaves: bool) -> list[Gate]:
    """Uniformly controlled Ry tree from the most significant qubit down."""

    prune = config["state_prep.prune_threshold"]
    gates: list[Gate] = []

    for target in reversed(range(n)):
        angles = _level_angles(values, target, signed_leaves)
        defined = [angle for angle in angles if angle is not None]

        if len(defined) == 0:
            continue

        # All live branches rotate by the same angle.
        if max(defined) - min(defined) <= prune:
            if abs(defined[0]) > prune:
                rotation = Gate(kind="Ry", target=qubit("q", target), angle=defined[0])
                gates.append(rotation)
            continue

        for prefix, angle in enumerate(angles):
            if angle is None or abs(angle) <= prune:
                continue
            controls: list[Control] = []
            for shift, control in enumerate(range(target + 1, n)):
                polarity = "one" if (prefix >> shift) & 1 else "zero"
                controls.append(Control(qubit=qubit("q", control), polarity=polarity))

            gates.append(
                Gate(
                    kind="Ry",
                    target=qubit("q", target),
                    controls=tuple(controls),
                    angle=angle,
                )
            )

    return gates


def _phase_layer(signs: numpy.ndarray, n: int) -> list[Gate]:
    """Multi-controlled Z gates that apply a ±1 pattern to a non-negative state.

    Entries of ``signs`` equal to zero are amplitudes that do not need fixing.
    Subsets are fixed greedily in order of increasing Hamming weight, which leaves
    lower-weight entries untouched.

    """

    current = numpy.ones(signs.size)
    indices = numpy.arange(signs.size)
    gates: list[Gate] = []

    if signs[0] < 0:
        # Z X Z X on a single qubit is -I.
        for kind in ("Z", "X", "Z", "X"):
            gates.append(Gate(kind=kind, target=qubit("q", 0)))
        current *= -1

    subsets = sorted(range(1, signs.size), key=lambda idx: (idx.bit_count(), idx))
    diagonal: list[Gate] = []

    for subset in subsets:
        if signs[subset] == 0 or current[subset] == signs[subset]:
            continue

        current[(indices & subset) == subset] *= -1

        members = [bit for bit in range(n) if (subset >> bit) & 1]
        controls = tuple(Control(qubit=qubit("q", bit)) for bit in members[:-1])
        target = qubit("q", members[-1])
        diagonal.append(Gate(kind="Z", target=target, controls=controls))

    # The diagonal gates commute; emit the widest first.
    diagonal.sort(key=lambda gate: len(gate.controls), reverse=True)

    return gates + diagonal


def synthesize_state_prep(
    vector: numpy.ndarray,
    signs: SignStrategy | None = None,
) -> Circuit:
    """Builds a circuit ``U`` such that ``U|0> = vector / |vector|``.

    Parameters
    ----------
    vector
        A real vector of length ``2^n``.
    signs
        ``hypergraph`` prepares the magnitudes with a rotation tree and then applies
        the signs with a layer of multi-controlled ``Z`` gates. ``rotation`` encodes
        the signs in the last level of rotations instead.

    Returns
    -------
    circuit
        A circuit on the ``q`` register with ``n`` qubits.

    """

    signs = signs or config["state_prep.signs"]

    vector = numpy.asarray(vector, dtype=float)
    size = vector.size
    n = size.bit_length() - 1

    if size < 2 or 2**n != size:
        raise ValueError("The vector length must be a power of two larger than one.")

    norm = float(numpy.linalg.norm(vector))
    if norm == 0.0:
        raise ValueError("Cannot prepare the zero vector.")

    values = vector / norm
    layout = RegisterLayout(n=n)

    if signs == "rotation":
        return Circuit.from_gates(_rotation_tree(values, n, True), layout=layout)
    elif signs != "hypergraph":
        raise ValueError(f"Unknown sign strategy {signs!r}.")

    gates = _rotation_tree(numpy.abs(values), n, False)
    gates += _phase_layer(numpy.sign(values), n)

    return Circuit.from_gates(gates, layout=layout)


def build_uz(
    inputs: PerceptronInputs,
    n: int | None = None,
    layout: EncodingLayout | None = None,
    signs: SignStrategy | None = None,
) -> Circuit:
    """Returns ``U_z`` with ``<1...1| U_z |0...0> = z``.

    ``U_z`` prepares the input state, un-prepares the weight state and flips every
    qubit, so that the overlap of both states ends up in the all-ones amplitude.

    """

    vectors = build_encoding_vectors(inputs, n=n, layout=layout)

    prep_x = synthesize_state_prep(vectors.v_x, signs=signs)
    prep_wb = synthesize_state_prep(vectors.v_wb, signs=signs)

    return prep_x + prep_wb.inverse() + x_layer(vectors.n)
