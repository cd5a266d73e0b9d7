"""Least-squares line fits used for the scaling studies."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["FitResult", "fit_line", "fit_power_law"]


@dataclass(frozen=True)
class FitResult:
    """``y = prefactor * x**exponent`` for power laws; ``y = prefactor + exponent*x`` for lines.

    ``residual`` is the root-mean-square residual in the fitted (transformed) space.
    """

    exponent: float
    prefactor: float
    residual: float


def _ols(x: np.ndarray, y: np.ndarray) -> tuple[float, float, float]:
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("x and y must be 1-d arrays of equal length")
    if np.ptp(x) == 0:
        raise ValueError("degenerate fit: all abscissae are equal")
    design = np.column_stack([np.ones_like(x), x])
    (intercept, slope), *_ = np.linalg.lstsq(design, y, rcond=None)
    rms = float(np.sqrt(np.mean((y - intercept - slope * x) ** 2)))
    return float(slope), float(intercept), rms


def fit_line(x, y) -> FitResult:
    """Ordinary least squares ``y ~ a + b*x``; returns ``exponent=b, prefactor=a``."""
    slope, intercept, rms = _ols(np.asarray(x, float), np.asarray(y, float))
    return FitResult(slope, intercept, rms)


def fit_power_law(x, y, min_points: int = 3) -> FitResult:
    """Fit ``log y = log c + e*log x``."""
    x = np.asarray(x, float)
    y = np.asarray(y, float)
    if len(x) < min_points:
        raise ValueError(f"need at least {min_points} points, got {len(x)}")
    if np.any(x <= 0) or np.any(y <= 0):
        raise ValueError("power-law fit needs strictly positive data")
    slope, intercept, rms = _ols(np.log(x), np.log(y))
    return FitResult(slope, float(np.exp(intercept)), rms)
