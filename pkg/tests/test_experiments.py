#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# @Author: José Sánchez-Gallego (gallegoj@uw.edu)
# @Date: 2026-10-18
# @Filename: test_experiments.py
# @License: BSD 3-clause (http://www.opensource.org/licenses/BSD-3-Clause)

from __future__ import annotations

import json

import numpy
import polars
import pytest
from pydantic import ValidationError

from qperceptron import config
from qperceptron.experiments import (
    GridSpec,
    SweepConfig,
    SweepRecord,
    default_sweep_config,
    error_scaling_report,
    gate_count_report,
    mse_over_seeds,
    mse_report,
    perceptron_inputs,
    run_sweep,
    sweep_series,
    write_sweep,
)


def _sweep(**kwargs) -> SweepConfig:
    defaults = dict(
        activation="tanh",
        degrees=[3],
        shots=[4096],
        grid=GridSpec(points=11),
        seed=1,
    )
    defaults.update(kwargs)

    return SweepConfig(**defaults)


def test_grid_spec():
    grid = GridSpec(min=-0.5, max=0.5, points=5)
    assert grid.values() == pytest.approx([-0.5, -0.25, 0.0, 0.25, 0.5])

    with pytest.raises(ValidationError):
        GridSpec(min=-2.0)

    with pytest.raises(ValidationError):
        GridSpec(points=1)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"degrees": [3, 5], "shots": [1024]},
        {"degrees": [0], "shots": [1024]},
        {"shots": [0]},
        {"activation": "custom"},
        {"weights": [1.5, 0.0]},
        {"bias": -1.2},
    ],
)
def test_sweep_config_validation(kwargs):
    with pytest.raises(ValidationError):
        _sweep(**kwargs)


def test_default_sweep_config():
    sweep = default_sweep_config("tanh")

    assert sweep.degrees == [3, 5, 7, 9]
    assert sweep.shots == [2**16, 2**18, 2**20, 2**22]
    assert sweep.grid.points == 101
    assert sweep.seed == 1

    swish = default_sweep_config("swish", seed=4)
    assert swish.degrees == [4, 6, 8, 10]
    assert swish.seed == 4


def test_perceptron_inputs():
    inputs = perceptron_inputs(0.5, (1.0, 1.0, 1.0, 1.0))

    assert inputs.x == (0.5, 0.5, 0.5, 0.5)
    assert inputs.z == pytest.approx(0.4)


def test_sweep_series_shift():
    exact = sweep_series(_sweep(mode="exact-amplitude"), 3)
    assert exact.gamma == 0.0

    shifted = sweep_series(_sweep(mode="qae"), 3)
    assert shifted.gamma == pytest.approx(2 / 3 + 0.05)
    assert shifted.coeffs[0] == pytest.approx(shifted.gamma)


def test_run_sweep_exact_amplitude():
    sweep = _sweep(degrees=[3, 5], shots=[1, 1], mode="exact-amplitude")
    results = run_sweep(sweep)

    assert [result.d for result in results] == [3, 5]

    for result in results:
        assert result.mode == "exact-amplitude"
        assert len(result.records) == 11

        for record in result.records:
            assert record.z == pytest.approx(0.8 * record.zbar)
            assert record.y_q == pytest.approx(record.t_d, abs=1e-9)
            assert record.r_q == pytest.approx(record.r_c, abs=1e-8)
            assert record.sigma_pred == 0.0


def test_run_sweep_tanh_origin():
    sweep = _sweep(grid=GridSpec(min=-1.0, max=1.0, points=5), mode="exact-amplitude")
    record = run_sweep(sweep)[0].records[2]

    assert record.zbar == 0.0
    assert record.t_d == pytest.approx(0.0, abs=1e-12)
    assert record.p == pytest.approx(0.25, abs=1e-12)


def test_run_sweep_shots():
    sweep = _sweep(shots=[2**14])
    records = run_sweep(sweep)[0].records

    for record in records:
        assert 0.0 <= record.p <= 1.0
        assert abs(record.y_q - record.t_d) <= 6 * record.sigma_pred + 1e-12
        assert record.r_q is not None


def test_run_sweep_workers_deterministic():
    sweep = _sweep(grid=GridSpec(points=9))

    first = run_sweep(sweep)
    second = run_sweep(sweep.model_copy(update={"workers": 3}))

    assert first[0].records == second[0].records


def test_run_sweep_seed_changes_results():
    first = run_sweep(_sweep(seed=1))
    second = run_sweep(_sweep(seed=2))

    assert first[0].records != second[0].records


def test_run_sweep_random_weights():
    sweep = _sweep(mode="exact-amplitude", random_weights=True)
    records = run_sweep(sweep)[0].records

    assert any(
        record.z != pytest.approx(0.8 * record.zbar) for record in records[1:]
    )
    for record in records:
        assert record.y_q == pytest.approx(record.t_d, abs=1e-9)


def test_run_sweep_qae():
    sweep = _sweep(
        activation="sigmoid",
        mode="qae",
        qae_qubits=5,
        grid=GridSpec(points=5),
    )
    records = run_sweep(sweep)[0].records

    for record in records:
        assert 0.0 <= record.p <= 1.0
        assert abs(record.y_q - record.t_d) <= record.sigma_pred


def test_write_sweep(tmp_path):
    sweep = _sweep(mode="exact-amplitude")
    results = run_sweep(sweep)

    paths = write_sweep(results, sweep, tmp_path / "first")
    assert [path.name for path in paths] == ["tanh_d3_exact.csv", "tanh_manifest.json"]

    data = polars.read_csv(paths[0])
    assert data.columns == [
        "zbar",
        "z",
        "y",
        "T_d",
        "y_q",
        "R_c",
        "R_q",
        "P",
        "sigma_pred",
    ]
    assert data.height == 11

    manifest = json.loads(paths[1].read_text())
    assert manifest["activation"] == "tanh"
    assert manifest["files"] == ["tanh_d3_exact.csv"]
    assert manifest["config"]["degrees"] == [3]
    assert "qperceptron" in manifest["versions"]

    again = write_sweep(run_sweep(sweep), sweep, tmp_path / "second")
    for path, other in zip(paths, again):
        assert path.read_bytes() == other.read_bytes()


def test_write_sweep_shots_filename(tmp_path):
    sweep = _sweep(grid=GridSpec(points=3))
    paths = write_sweep(run_sweep(sweep), sweep, tmp_path)

    assert paths[0].name == "tanh_d3_S4096.csv"


def test_mse_report():
    records = [
        SweepRecord(
            zbar=zbar,
            z=0.8 * zbar,
            y=0.0,
            t_d=0.0,
            y_q=0.0,
            r_c=0.1,
            r_q=0.1 + error,
            p=0.25,
            sigma_pred=0.0,
        )
        for zbar, error in [(-0.9, 1.0), (-0.2, 0.01), (0.4, 0.03), (0.8, 1.0)]
    ]

    assert mse_report(records, 2.0) == pytest.approx((0.01**2 + 0.03**2) / 2)
    assert mse_report(records, 1.0) == pytest.approx((2 + 0.01**2 + 0.03**2) / 4)

    with pytest.raises(ValueError):
        mse_report(records[-1:], 2.0)


def test_mse_report_zero_lambda():
    records = [
        SweepRecord(
            zbar=zbar,
            z=0.8 * zbar,
            y=0.0,
            t_d=0.0,
            y_q=0.0,
            r_c=0.0,
            r_q=error,
            p=0.25,
            sigma_pred=0.0,
        )
        for zbar, error in [(-0.1, 1.0), (0.0, 0.02), (0.1, 1.0)]
    ]

    assert mse_report(records, 2.0, gray_lambda=0.0) == pytest.approx(0.02**2)


def test_mse_over_seeds():
    sweep = _sweep(grid=GridSpec(points=7))
    mse = mse_over_seeds(sweep, seeds=[1, 2])

    assert list(mse) == [3]
    assert mse[3] >= 0.0


def test_gate_count_report():
    report = gate_count_report("tanh", degrees=[1, 2, 3, 4, 5, 6])

    totals = [counts["total"] for counts in report.counts]
    assert totals == sorted(totals)
    assert report.r_squared >= 0.99
    assert 400 / 3 <= report.slope <= 1200

    frame = report.to_dataframe()
    assert frame["d"].to_list() == [1, 2, 3, 4, 5, 6]
    assert "cx" in frame.columns


def test_gate_count_report_single_degree():
    report = gate_count_report("sigmoid", degrees=[3])

    assert report.slope == 0.0
    assert report.r_squared == 1.0
    assert report.intercept == report.counts[0]["total"]


def test_gate_count_unoptimized_is_larger():
    optimized = gate_count_report("sin", degrees=[3], optimized=True)
    full = gate_count_report("sin", degrees=[3], optimized=False)

    assert full.counts[0]["total"] > optimized.counts[0]["total"]


@pytest.mark.slow
@pytest.mark.parametrize("activation", ["tanh", "sigmoid", "sin", "swish"])
def test_mse_default_matrix(activation: str):
    sweep = default_sweep_config(activation, workers=4)  # type: ignore[arg-type]
    mse = mse_over_seeds(sweep, seeds=[1, 2, 3, 4, 5])

    bands = config["experiments.mse_bands"]
    assert list(mse) == sweep.degrees

    for degree, (low, high) in zip(sweep.degrees, bands):
        assert low <= mse[degree] <= high, (degree, mse[degree])


@pytest.mark.slow
def test_error_scaling():
    report = error_scaling_report("tanh", repeats=100, seed=3)

    for empirical, predicted in zip(report.empirical, report.predicted):
        assert empirical / predicted == pytest.approx(1.0, rel=0.3)

    empirical_ratio, predicted_ratio = report.ratios()
    assert numpy.isfinite(empirical_ratio)
    assert empirical_ratio == pytest.approx(predicted_ratio, rel=0.3)
