#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# @Author: José Sánchez-Gallego (gallegoj@uw.edu)
# @Date: 2026-10-18
# @Filename: types.py
# @License: BSD 3-clause (http://www.opensource.org/licenses/BSD-3-Clause)

from __future__ import annotations

from typing import Literal


Register = Literal["q", "a", "l", "e"]
Polarity = Literal["one", "zero"]
GateKind = Literal["X", "H", "Z", "P", "Ry", "Rz"]

Activation = Literal["tanh", "sigmoid", "sin", "swish", "custom"]
SweepMode = Literal["exact-amplitude", "shots", "qae"]

EncodingLayout = Literal["phase_friendly", "lemma"]
SignStrategy = Literal["hypergraph", "rotation"]
