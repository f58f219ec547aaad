"""Weighted suprema over the unit disk.

``sup (1 - |z|^2)^p |F(z)|`` is estimated by a polar grid followed by an
optional coordinate pattern search in ``(r, theta)``.  Every estimate is the
maximum over finitely many evaluated points and therefore a lower bound of
the true supremum.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, replace
from typing import Any

import numpy as np

from .derivatives import DerivativeField, Source, derivative_field
from .errors import BadParameter, EmptyGrid, NumericalFailure
from .factory import FunctionHandle

MAX_REFINE_ITERATIONS = 20_000
BECKER_THRESHOLD = 1.0


@dataclass(frozen=True)
class GridSpec:
    """Polar sampling grid.

    Radii are ``r_max * sin(pi j / (2 radii_count))`` for ``j = 1..radii_count``
    (clustered toward ``r_max``), angles ``2 pi k / angle_count``; the origin
    is always sampled.  Doubling either count yields a superset of points.
    """

    radii_count: int = 96
    angle_count: int = 128
    r_max: float = 0.9995
    refine: bool = True
    refine_tol: float = 1e-6

    def __post_init__(self):
        if self.radii_count < 2 or self.angle_count < 4:
            raise EmptyGrid("need radii_count >= 2 and angle_count >= 4")
        if not 0.0 < self.r_max < 1.0:
            raise EmptyGrid("r_max must lie in (0, 1)")
        if self.refine and not self.refine_tol > 0:
            raise BadParameter("refine_tol must be positive")

    def radii(self) -> np.ndarray:
        j = np.arange(1, self.radii_count + 1)
        return self.r_max * np.sin(0.5 * np.pi * j / self.radii_count)

    def angles(self) -> np.ndarray:
        return 2.0 * np.pi * np.arange(self.angle_count) / self.angle_count

    def points(self) -> np.ndarray:
        pts = self.radii()[:, None] * np.exp(1j * self.angles())[None, :]
        return np.concatenate([[0j], pts.ravel()])


@dataclass(frozen=True)
class NormEstimate:
    value: float
    argmax: complex
    grid: GridSpec
    refined: bool
    weight_power: int
    kind: str = ""
    r_clamped: bool = False
    lower_bound_only: bool = True

    def to_json(self) -> dict[str, Any]:
        return {
            "value": self.value,
            "argmax": [self.argmax.real, self.argmax.imag],
            "weight_power": self.weight_power,
            "kind": self.kind,
            "refined": self.refined,
            "r_clamped": self.r_clamped,
            "lower_bound_only": self.lower_bound_only,
            "grid": asdict(self.grid),
        }


def _weighted(field: DerivativeField, p: int, z: np.ndarray) -> np.ndarray:
    vals = np.abs(np.asarray(field(z), dtype=complex))
    if not np.all(np.isfinite(vals)):
        raise NumericalFailure(f"non-finite {field.kind} values on the grid")
    return (1.0 - np.abs(z) ** 2) ** p * vals


def weighted_sup(field: DerivativeField, weight_power: int, grid: GridSpec | None = None) -> NormEstimate:
    """Estimate ``sup_D (1-|z|^2)^p |field(z)|`` from below.

    The grid radius is clamped to the field's trusted domain (series-backed
    fields stop at 0.95).  Deterministic for a fixed grid.
    """
    if weight_power not in (1, 2):
        raise BadParameter("weight_power must be 1 or 2")
    grid = GridSpec() if grid is None else grid
    clamped = field.domain_radius < grid.r_max
    if clamped:
        grid = replace(grid, r_max=field.domain_radius)
    p = weight_power

    pts = grid.points()
    w = _weighted(field, p, pts)
    i = int(np.argmax(w))
    best_z = complex(pts[i])
    best = float(w[i])

    if grid.refine:
        best_z, best = _pattern_search(field, p, grid, best_z, best)

    # value is recomputed at the reported argmax so the two always agree
    value = float(_weighted(field, p, np.array([best_z]))[0])
    return NormEstimate(value, best_z, grid, grid.refine, p, field.kind, clamped)


def _pattern_search(field, p, grid: GridSpec, z0: complex, best: float):
    r_max = grid.r_max
    r, th = abs(z0), math.atan2(z0.imag, z0.real)
    dr = r_max * 0.5 * math.pi / grid.radii_count
    dth = 2.0 * math.pi / grid.angle_count
    for _ in range(MAX_REFINE_ITERATIONS):
        if max(dr, dth) < grid.refine_tol:
            break
        cand = np.array(
            [
                (min(r + dr, r_max), th),
                (max(r - dr, 0.0), th),
                (r, th + dth),
                (r, th - dth),
            ]
        )
        zc = cand[:, 0] * np.exp(1j * cand[:, 1])
        wc = _weighted(field, p, zc)
        j = int(np.argmax(wc))
        if wc[j] > best:
            best = float(wc[j])
            r, th = float(cand[j, 0]), float(cand[j, 1])
        else:
            dr *= 0.5
            dth *= 0.5
    return complex(r * math.cos(th), r * math.sin(th)), best


_WEIGHTS = {
    "pre_schwarzian": 1,
    "schwarzian": 2,
    "harmonic_pre": 1,
    "harmonic_schwarzian": 2,
}


def norm_of(source: Source, kind: str, grid: GridSpec | None = None, literal: bool = False) -> NormEstimate:
    """Hyperbolic sup-norm of a derivative of ``source``.

    ``kind`` is ``pre_schwarzian``/``harmonic_pre`` (weight power 1) or
    ``schwarzian``/``harmonic_schwarzian`` (weight power 2).
    """
    if kind not in _WEIGHTS:
        raise BadParameter(f"unknown norm kind {kind!r}")
    return weighted_sup(derivative_field(source, kind, literal), _WEIGHTS[kind], grid)


@dataclass(frozen=True)
class BeckerReport:
    estimate: NormEstimate
    univalent: bool

    @property
    def verdict(self) -> str:
        if self.univalent:
            return "univalent (criterion is sufficient only)"
        return "inconclusive (criterion is sufficient only)"

    def to_json(self) -> dict[str, Any]:
        return {**self.estimate.to_json(), "verdict": self.verdict, "univalent": self.univalent}


def becker_functional(f: FunctionHandle, grid: GridSpec | None = None) -> BeckerReport:
    """``sup |z P_f(z)| (1 - |z|^2)``; at most 1 certifies univalence."""
    est = weighted_sup(derivative_field(f, "becker_integrand"), 1, grid)
    return BeckerReport(est, est.value <= BECKER_THRESHOLD)
