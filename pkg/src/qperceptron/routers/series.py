#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# @Author: José Sánchez-Gallego (gallegoj@uw.edu)
# @Date: 2026-10-18
# @Filename: series.py
# @License: BSD 3-clause (http://www.opensource.org/licenses/BSD-3-Clause)

from __future__ import annotations

from typing import Annotated

from fastapi import APIRouter, HTTPException, Path, Query
from pydantic import BaseModel, Field

from qperceptron.activation import qae_gamma, taylor_coefficients
from qperceptron.core import compute_angles
from qperceptron.types import Activation


router = APIRouter(prefix="/series", tags=["series"])


class SeriesResponse(BaseModel):
    """Taylor series of an activation and its rotation angles."""

    activation: Annotated[Activation, Field(description="Activation function")]
    scale: Annotated[float, Field(description="Input scale k")]
    coeffs: Annotated[list[float], Field(description="Coefficients a_0 to a_d")]
    k: Annotated[int, Field(description="Index of the first non-zero coefficient")]
    gamma: Annotated[float, Field(description="Shift added to a_0")]
    thetas: Annotated[list[float], Field(description="Rotation angles θ_0 to θ_{d-1}")]
    c_d: Annotated[float, Field(description="Normalisation constant C_d")]


@router.get("/{activation}", summary="Series coefficients and angles")
async def route_get_series(
    activation: Annotated[
        Activation,
        Path(description="The activation function"),
    ],
    d: Annotated[int, Query(description="Degree of the series", ge=1)] = 3,
    scale: Annotated[float | None, Query(description="Input scale")] = None,
    qae: Annotated[bool, Query(description="Shift the series for QAE")] = False,
) -> SeriesResponse:
    """Returns the Taylor coefficients, the angles θ_i and C_d."""

    if activation == "custom":
        raise HTTPException(400, detail="Custom activations are not supported here.")

    try:
        series = taylor_coefficients(activation, d, scale=scale)
        if qae:
            gamma = qae_gamma(series)
            series = taylor_coefficients(activation, d, scale=scale, gamma=gamma)
        schedule = compute_angles(series)
    except ValueError as err:
        raise HTTPException(400, detail=str(err))

    return SeriesResponse(
        activation=activation,
        scale=series.scale,
        coeffs=list(series.coeffs),
        k=series.k,
        gamma=series.gamma,
        thetas=list(schedule.thetas),
        c_d=schedule.c_d,
    )
