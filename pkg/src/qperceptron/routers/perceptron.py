#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# @Author: José Sánchez-Gallego (gallegoj@uw.edu)
# @Date: 2026-10-18
# @Filename: perceptron.py
# @License: BSD 3-clause (http://www.opensource.org/licenses/BSD-3-Clause)

from __future__ import annotations

from typing import Annotated

from fastapi import APIRouter, HTTPException, Query
from pydantic import Field

from sdsstools.utils import run_in_executor

from qperceptron.experiments import (
    SweepConfig,
    SweepRecord,
    evaluate_point,
    sweep_series,
)
from qperceptron.types import Activation, SweepMode


router = APIRouter(prefix="/perceptron", tags=["perceptron"])


class PerceptronOutput(SweepRecord):
    """Simulated perceptron output at a single input."""

    activation: Annotated[Activation, Field(description="Activation function")]
    d: Annotated[int, Field(description="Degree of the series")]
    mode: Annotated[SweepMode, Field(description="How y_q was estimated")]


@router.get("/output", summary="Simulate the perceptron at one input")
async def route_get_output(
    zbar: Annotated[float, Query(description="Input scale z̄", ge=-1, le=1)],
    activation: Annotated[Activation, Query(description="Activation")] = "tanh",
    d: Annotated[int, Query(description="Degree of the series", ge=1, le=9)] = 3,
    scale: Annotated[float | None, Query(description="Input scale k")] = None,
    mode: Annotated[SweepMode, Query(description="Estimation mode")] = "shots",
    shots: Annotated[int, Query(description="Number of shots", ge=1)] = 65536,
    seed: Annotated[int, Query(description="Seed of the shots", ge=0)] = 0,
) -> PerceptronOutput:
    """Builds and simulates the perceptron with inputs ``z̄ (1, 1, 1, 1)``.

    The weights are all one and the bias is zero, so ``z = 0.8 z̄``.

    """

    try:
        sweep = SweepConfig(
            activation=activation,
            scale=scale,
            degrees=[d],
            shots=[shots],
            seed=seed,
            mode=mode,
        )
        series = sweep_series(sweep, d)
        record = await run_in_executor(
            evaluate_point,
            sweep,
            series,
            shots,
            sweep.weights,
            sweep.bias,
            0,
            zbar,
        )
    except ValueError as err:
        raise HTTPException(400, detail=str(err))

    return PerceptronOutput(
        **record.model_dump(),
        activation=activation,
        d=d,
        mode=mode,
    )
