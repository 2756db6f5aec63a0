#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# @Author: José Sánchez-Gallego (gallegoj@uw.edu)
# @Date: 2026-10-18
# @Filename: activation.py
# @License: BSD 3-clause (http://www.opensource.org/licenses/BSD-3-Clause)

from __future__ import annotations

import math
from fractions import Fraction

from typing import Sequence

import numpy
from pydantic import BaseModel, ConfigDict, Field, model_validator

from qperceptron import config
from qperceptron.types import Activation


__all__ = [
    "TaylorSeries",
    "maclaurin_coefficients",
    "taylor_coefficients",
    "first_nonzero",
    "series_eval",
    "activation_value",
    "default_scale",
    "qae_gamma",
]


class TaylorSeries(BaseModel):
    """Coefficients ``a_0 ... a_d`` of a scaled, truncated Taylor series."""

    model_config = ConfigDict(frozen=True)

    coeffs: tuple[float, ...] = Field(min_length=1, description="a_0 to a_d")
    k: int = Field(ge=0, description="Index of the first non-negligible coefficient")
    activation: Activation = "custom"
    scale: float = 1.0
    gamma: float = Field(default=0.0, description="Shift added to a_0")

    @model_validator(mode="after")
    def check_first_nonzero(self):
        threshold = config["activation.threshold"]

        if self.k >= len(self.coeffs):
            raise ValueError("k must be an index of the coefficients.")
        if any(abs(coeff) > threshold for coeff in self.coeffs[: self.k]):
            raise ValueError(f"Coefficients below index {self.k} must vanish.")
        if abs(self.coeffs[self.k]) <= threshold:
            raise ValueError(f"Coefficient a_{self.k} must not vanish.")

        return self

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, z):
        return series_eval(self, z)


def _tanh_series(order: int) -> list[Fraction]:
    """Maclaurin coefficients of tanh from ``t' = 1 - t^2``."""

    coeffs = [Fraction(0)] * (order + 1)

    for ii in range(order):
        products = (coeffs[jj] * coeffs[ii - jj] for jj in range(ii + 1))
        square = sum(products, Fraction(0))
        coeffs[ii + 1] = ((1 if ii == 0 else 0) - square) / (ii + 1)

    return coeffs


def maclaurin_coefficients(activation: Activation, order: int) -> list[Fraction]:
    """Returns the exact Maclaurin coefficients ``c_0 ... c_order`` of an activation.

    Parameters
    ----------
    activation
        One of ``tanh``, ``sigmoid``, ``sin`` or ``swish``.
    order
        The truncation order.

    """

    if order < 0:
        raise ValueError("The order must be non-negative.")

    if activation == "sin":
        coeffs = [Fraction(0)] * (order + 1)
        for ii in range(1, order + 1, 2):
            coeffs[ii] = Fraction((-1) ** ((ii - 1) // 2), math.factorial(ii))
        return coeffs
    elif activation == "tanh":
        return _tanh_series(order)
    elif activation == "sigmoid":
        # sigmoid(z) = (1 + tanh(z / 2)) / 2
        tanh = _tanh_series(order)
        coeffs = [tanh[ii] / 2 ** (ii + 1) for ii in range(order + 1)]
        coeffs[0] += Fraction(1, 2)
        return coeffs
    elif activation == "swish":
        # swish(z) = z * sigmoid(z)
        sigmoid = maclaurin_coefficients("sigmoid", max(order - 1, 0))
        return [Fraction(0)] + sigmoid[:order]

    raise ValueError(f"No closed-form series for activation {activation!r}.")


def first_nonzero(coeffs: Sequence[float], threshold: float | None = None) -> int:
    """Index of the first coefficient whose magnitude exceeds ``threshold``."""

    threshold = config["activation.threshold"] if threshold is None else threshold

    for ii, coeff in enumerate(coeffs):
        if abs(coeff) > threshold:
            return ii

    raise ValueError("All the coefficients are zero.")


def default_scale(activation: Activation) -> float:
    """The default input scale for an activation."""

    return float(config[f"activation.scales.{activation}"])


def taylor_coefficients(
    activation: Activation,
    d: int,
    scale: float | None = None,
    gamma: float = 0.0,
    coefficients: Sequence[float] | None = None,
) -> TaylorSeries:
    """Returns the degree ``d`` series of ``f(scale·z) + gamma``.

    Parameters
    ----------
    activation
        The activation. For ``custom`` the unscaled Maclaurin ``coefficients``
        must be passed; they are truncated or zero-padded to ``d + 1`` terms.
    d
        The degree of the truncated series.
    scale
        The input scale ``k``. Defaults to ``activation.scales`` in the configuration.
    gamma
        A constant added to ``a_0``.

    """

    if d < 1:
        raise ValueError("The degree must be at least one.")

    scale = default_scale(activation) if scale is None else float(scale)

    if activation == "custom":
        if coefficients is None or len(coefficients) == 0:
            raise ValueError("A custom activation requires its coefficients.")
        base = [Fraction(coeff) for coeff in coefficients[: d + 1]]
        base += [Fraction(0)] * (d + 1 - len(base))
    else:
        if coefficients is not None:
            raise ValueError("Coefficients can only be passed for custom activations.")
        base = maclaurin_coefficients(activation, d)

    exact_scale = Fraction(scale)
    coeffs = [float(coeff * exact_scale**ii) for ii, coeff in enumerate(base)]
    coeffs[0] += gamma

    return TaylorSeries(
        coeffs=tuple(coeffs),
        k=first_nonzero(coeffs),
        activation=activation,
        scale=scale,
        gamma=gamma,
    )


def series_eval(series: TaylorSeries | Sequence[float], z):
    """Evaluates a polynomial with Horner's rule. ``z`` can be an array."""

    coeffs = series.coeffs if isinstance(series, TaylorSeries) else series

    result = numpy.zeros_like(z, dtype=float) if numpy.ndim(z) > 0 else 0.0
    for coeff in reversed(coeffs):
        result = result * z + coeff

    return result


def activation_value(
    activation: Activation,
    z,
    scale: float | None = None,
    coefficients: Sequence[float] | None = None,
):
    """Evaluates the exact activation ``f(scale·z)``.

    Custom activations have no closed form, so their full series is used.

    """

    scale = default_scale(activation) if scale is None else float(scale)
    arg = scale * numpy.asarray(z, dtype=float)

    if activation == "tanh":
        value = numpy.tanh(arg)
    elif activation == "sigmoid":
        value = 1.0 / (1.0 + numpy.exp(-arg))
    elif activation == "sin":
        value = numpy.sin(arg)
    elif activation == "swish":
        value = arg / (1.0 + numpy.exp(-arg))
    elif activation == "custom":
        if coefficients is None:
            raise ValueError("A custom activation requires its coefficients.")
        value = series_eval(list(coefficients), arg)
    else:
        raise ValueError(f"Unknown activation {activation!r}.")

    return float(value) if numpy.ndim(value) == 0 else value


def qae_gamma(
    series: TaylorSeries,
    points: int | None = None,
    margin: float | None = None,
) -> float:
    """The shift that makes a series strictly positive on ``[-1, 1]``.

    The result is ``max(0, -min T_d) + margin`` with the minimum taken over
    ``points`` equally spaced inputs.

    """

    points = config["qae.gamma_points"] if points is None else points
    margin = config["qae.gamma_margin"] if margin is None else margin

    grid = numpy.linspace(-1.0, 1.0, points)
    minimum = float(numpy.min(series_eval(series, grid)))

    return max(0.0, -minimum) + margin
