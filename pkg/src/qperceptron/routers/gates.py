#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# @Author: José Sánchez-Gallego (gallegoj@uw.edu)
# @Date: 2026-10-18
# @Filename: gates.py
# @License: BSD 3-clause (http://www.opensource.org/licenses/BSD-3-Clause)

from __future__ import annotations

from typing import Annotated

from fastapi import APIRouter, HTTPException, Path, Query

from sdsstools.utils import run_in_executor

from qperceptron.experiments import GateCountReport, gate_count_report
from qperceptron.types import Activation


router = APIRouter(prefix="/gates", tags=["gates"])


@router.get("/{activation}", summary="Lowered gate counts versus d")
async def route_get_gate_counts(
    activation: Annotated[Activation, Path(description="The activation function")],
    d_min: Annotated[int, Query(description="Smallest degree", ge=1)] = 1,
    d_max: Annotated[int, Query(description="Largest degree", le=9)] = 5,
    zbar: Annotated[float, Query(description="Input scale z̄", ge=-1, le=1)] = 0.5,
) -> GateCountReport:
    """Counts the readout circuit gates after lowering to CX, CZ and 1-qubit gates."""

    if d_max < d_min:
        raise HTTPException(400, detail="d_max must be at least d_min.")
    if activation == "custom":
        raise HTTPException(400, detail="Custom activations are not supported here.")

    try:
        return await run_in_executor(
            gate_count_report,
            activation,
            degrees=list(range(d_min, d_max + 1)),
            zbar=zbar,
        )
    except ValueError as err:
        raise HTTPException(400, detail=str(err))
