#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# @Author: José Sánchez-Gallego (gallegoj@uw.edu)
# @Date: 2026-10-18
# @Filename: app.py
# @License: BSD 3-clause (http://www.opensource.org/licenses/BSD-3-Clause)

from __future__ import annotations

import logging

from fastapi import FastAPI

from qperceptron import __version__, config
from qperceptron.routers import gates, perceptron, series


logger = logging.getLogger("uvicorn.error")

if config._CONFIG_FILE is not None:
    logger.info(f"Using configuration from {config._CONFIG_FILE}.")


app = FastAPI(swagger_ui_parameters={"tagsSorter": "alpha"})

app.include_router(series.router)
app.include_router(perceptron.router)
app.include_router(gates.router)


@app.get("/")
def root():
    return {"version": __version__}
