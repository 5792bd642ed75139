"""Log-linear fits of decay and growth models to census data.

Two models, both fitted by unweighted least squares:

* ``EXPONENTIAL_FRACTION``: fraction ~ scale * ratio**n, fitted on ln(fraction).
* ``POWER_CUBE_COUNT``: count ~ scale * ratio**n / n**3, fitted on
  ln(count) + 3 ln(n).
"""

from __future__ import annotations

import enum
import json
import math
import warnings
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np


class Model(enum.Enum):
    EXPONENTIAL_FRACTION = "EXPONENTIAL_FRACTION"
    POWER_CUBE_COUNT = "POWER_CUBE_COUNT"


@dataclass(frozen=True)
class FractionPoint:
    size: int
    fraction: Optional[float] = None
    count: Optional[int] = None


@dataclass(frozen=True)
class FitResult:
    model: Model
    scale: float
    ratio: float
    residual_sum_squares: float
    points_used: int

    def to_json(self) -> str:
        return json.dumps({
            "model": self.model.value,
            "scale": self.scale,
            "ratio": self.ratio,
            "rss": self.residual_sum_squares,
            "points": self.points_used,
        })


def _usable(points: Sequence[FractionPoint], attr: str) -> list[FractionPoint]:
    keep = []
    for p in points:
        v = getattr(p, attr)
        if v is None:
            raise ValueError(f"point at size {p.size} has no {attr}")
        if v > 0:
            keep.append(p)
        else:
            warnings.warn(f"size {p.size}: {attr} {v} has no logarithm, point excluded",
                          stacklevel=3)
    if len(keep) < 2:
        raise ValueError(f"need at least 2 points with positive {attr}, got {len(keep)}")
    return keep


def _line(x: np.ndarray, y: np.ndarray) -> tuple[float, float, float]:
    design = np.column_stack([x, np.ones_like(x)])
    coef, *_ = np.linalg.lstsq(design, y, rcond=None)
    resid = y - design @ coef
    return float(coef[0]), float(coef[1]), float(resid @ resid)


def fit_exponential(points: Sequence[FractionPoint]) -> FitResult:
    pts = _usable(points, "fraction")
    x = np.array([p.size for p in pts], dtype=float)
    y = np.log([p.fraction for p in pts])
    slope, intercept, rss = _line(x, y)
    return FitResult(Model.EXPONENTIAL_FRACTION, math.exp(intercept), math.exp(slope), rss, len(pts))


def fit_power_cube(points: Sequence[FractionPoint]) -> FitResult:
    pts = _usable(points, "count")
    x = np.array([p.size for p in pts], dtype=float)
    y = np.array([math.log(p.count) + 3 * math.log(p.size) for p in pts])
    slope, intercept, rss = _line(x, y)
    return FitResult(Model.POWER_CUBE_COUNT, math.exp(intercept), math.exp(slope), rss, len(pts))


def predict(fit: FitResult, n: float) -> float:
    if fit.model is Model.EXPONENTIAL_FRACTION:
        return fit.scale * fit.ratio ** n
    return fit.scale * fit.ratio ** n / n ** 3
