#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# @Author: José Sánchez-Gallego (gallegoj@uw.edu)
# @Date: 2026-10-18
# @Filename: test_cli.py
# @License: BSD 3-clause (http://www.opensource.org/licenses/BSD-3-Clause)

from __future__ import annotations

import json

import polars
import pytest
from click.testing import CliRunner

from qperceptron.cli import qperceptron


@pytest.fixture
def runner():
    return CliRunner()


def test_angles(runner: CliRunner):
    result = runner.invoke(qperceptron, ["angles", "-a", "tanh", "-d", "3"])

    assert result.exit_code == 0
    assert "C_d = 3.333333333" in result.output
    assert "k = 1" in result.output


def test_angles_qae_shift(runner: CliRunner):
    result = runner.invoke(qperceptron, ["angles", "-a", "sigmoid", "--qae"])

    assert result.exit_code == 0
    assert "gamma = 0.05" in result.output


def test_angles_custom(runner: CliRunner):
    args = ["angles", "-a", "custom", "-d", "2", "--coefficients", "[1, 0.5]"]
    result = runner.invoke(qperceptron, args)

    assert result.exit_code == 0
    assert "k = 0" in result.output


@pytest.mark.parametrize(
    "args",
    [
        ["angles", "-a", "custom"],
        ["angles", "-a", "custom", "--coefficients", "not-json"],
        ["angles", "-d", "0"],
        ["gates", "--d-min", "4", "--d-max", "2"],
        ["verify", "-c", "not_a_check"],
    ],
)
def test_usage_errors(runner: CliRunner, args: list[str]):
    result = runner.invoke(qperceptron, args)
    assert result.exit_code == 2


def test_gates(runner: CliRunner):
    result = runner.invoke(qperceptron, ["gates", "--d-min", "1", "--d-max", "3"])

    assert result.exit_code == 0
    assert "count = " in result.output
    assert "R^2" in result.output


def test_verify(runner: CliRunner):
    result = runner.invoke(qperceptron, ["verify", "-c", "readout_identity"])

    assert result.exit_code == 0
    assert "PASS" in result.output
    assert "readout_identity" in result.output


def test_sweep(runner: CliRunner, tmp_path):
    args = [
        "sweep",
        "-a",
        "tanh",
        "-d",
        "3",
        "--points",
        "5",
        "--mode",
        "exact-amplitude",
        "--workers",
        "1",
        "-o",
        str(tmp_path),
    ]
    result = runner.invoke(qperceptron, args)

    assert result.exit_code == 0, result.output

    data = polars.read_csv(tmp_path / "tanh_d3_exact.csv")
    assert data.height == 5
    assert (tmp_path / "tanh_manifest.json").exists()


def test_sweep_config_file(runner: CliRunner, tmp_path):
    sweep_file = tmp_path / "sweep.json"
    sweep_file.write_text(
        json.dumps(
            {
                "activation": "sin",
                "degrees": [3],
                "shots": [1024],
                "grid": {"points": 4},
                "seed": 2,
            }
        )
    )

    args = ["sweep", "--config", str(sweep_file), "-o", str(tmp_path / "out")]
    result = runner.invoke(qperceptron, args)

    assert result.exit_code == 0, result.output
    assert (tmp_path / "out" / "sin_d3_S1024.csv").exists()


def test_sweep_invalid_config_file(runner: CliRunner, tmp_path):
    sweep_file = tmp_path / "sweep.json"
    sweep_file.write_text(json.dumps({"activation": "tanh", "degrees": [3]}))

    args = ["sweep", "--config", str(sweep_file), "-o", str(tmp_path)]
    result = runner.invoke(qperceptron, args)

    assert result.exit_code == 2
    assert "Invalid sweep configuration" in result.output
