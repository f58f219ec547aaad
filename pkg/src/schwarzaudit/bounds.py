"""Theorem constants, membership residuals, distortion/growth envelopes and
the harmonic sharpness audit.

Residual functions return ``bound - quantity``: a nonnegative residual means
the inequality holds at that point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Callable

import numpy as np

from .derivatives import DEGENERACY_FLOOR
from .errors import BadParameter, DegenerateDilatation, VanishingDerivative
from .factory import (
    DERIVATIVE_FLOOR,
    BlaschkeDescriptor,
    FunctionHandle,
    _as_complex,
    _unwrap,
    gbeta_member,
    make_harmonic,
)
from .norms import GridSpec, norm_of
from .quadrature import DEFAULT_TOL, radial_integrate

__all__ = [
    "OzakiParams",
    "GBetaParams",
    "GammaParam",
    "EnvelopeRow",
    "MtAudit",
    "TheoremConstants",
    "f0_residuals",
    "g_residual",
    "lemma_a_residual",
    "theorem_constants",
    "distortion_envelope",
    "growth_envelope",
    "radial_integrate",
    "mt_phi",
    "mt_maximize",
    "mt_audit",
]


@dataclass(frozen=True)
class OzakiParams:
    lam: float

    def __post_init__(self):
        if not 0.5 <= self.lam <= 1.0:
            raise BadParameter(f"lambda={self.lam} outside [1/2, 1]")

    @property
    def c(self) -> float:
        """``1 + 2 lambda``."""
        return 1.0 + 2.0 * self.lam

    @property
    def exponent(self) -> float:
        """``(1 + 2 lambda)/2``, the distortion exponent."""
        return 0.5 + self.lam


@dataclass(frozen=True)
class GBetaParams:
    beta: float

    def __post_init__(self):
        if not (self.beta > 0 and math.isfinite(self.beta)):
            raise BadParameter(f"beta={self.beta} must be positive")


@dataclass(frozen=True)
class GammaParam:
    gamma: float

    def __post_init__(self):
        if not 0.0 <= self.gamma < 1.0:
            raise BadParameter(f"gamma={self.gamma} outside [0, 1)")


def _ozaki(lam) -> OzakiParams:
    return lam if isinstance(lam, OzakiParams) else OzakiParams(float(lam))


def _gbeta(beta) -> GBetaParams:
    return beta if isinstance(beta, GBetaParams) else GBetaParams(float(beta))


def _checked_pre(f: FunctionHandle, z: np.ndarray) -> np.ndarray:
    if not f.closed_form:
        d1 = _as_complex(f.d1(z))
        if np.any(np.abs(d1) < DERIVATIVE_FLOOR):
            raise VanishingDerivative("f' vanishes at a residual point")
    return _as_complex(f.pre(z))


# ---------------------------------------------------------------------------
# membership residuals
# ---------------------------------------------------------------------------


def f0_residuals(f: FunctionHandle, lam, z):
    """Residuals of the two analytic characterizations of F0(lambda).

    ``res_iii = c - |(1-|z|^2) P - c conj(z)|`` and
    ``res_ii = Re(1 + z P) - (1-2 lambda)/2 - (1-|z|^2)|P|^2 / (2c)``
    with ``c = 1 + 2 lambda``.
    """
    lam = _ozaki(lam)
    c = lam.c
    z = _as_complex(z)
    p = _checked_pre(f, z)
    gap = 1.0 - np.abs(z) ** 2
    res_iii = c - np.abs(gap * p - c * np.conj(z))
    res_ii = np.real(1.0 + z * p) - (1.0 - 2.0 * lam.lam) / 2.0 - 0.5 * gap / c * np.abs(p) ** 2
    return _unwrap(res_ii), _unwrap(res_iii)


def g_residual(f: FunctionHandle, beta, z):
    """``(1 + beta/2) - Re(1 + z P)``."""
    beta = _gbeta(beta).beta
    z = _as_complex(z)
    p = _checked_pre(f, z)
    return _unwrap((1.0 + beta / 2.0) - np.real(1.0 + z * p))


def lemma_a_residual(phi: BlaschkeDescriptor, z, gamma=None):
    """``(gamma+|z|)^2 / ((1-gamma^2)(1-|z|^2)) - |phi|^2/(1-|phi|^2)``.

    ``gamma`` defaults to ``|phi(0)|``.
    """
    if gamma is None:
        gamma = abs(phi.value_at_origin())
    g = gamma.gamma if isinstance(gamma, GammaParam) else GammaParam(float(gamma)).gamma
    z = _as_complex(z)
    a2 = np.abs(_as_complex(phi(z))) ** 2
    if np.any(a2 >= (1.0 - DEGENERACY_FLOOR) ** 2):
        raise DegenerateDilatation("|phi(z)| too close to 1")
    r = np.abs(z)
    rhs = (g + r) ** 2 / ((1.0 - g * g) * (1.0 - r * r))
    return _unwrap(rhs - a2 / (1.0 - a2))


# ---------------------------------------------------------------------------
# constants
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TheoremConstants:
    lam: float
    preS: float
    S_paper: float
    S_gamma: float | None = None
    harmonic_preS: float | None = None

    def S_pointwise(self, z):
        """``(1+2 lambda)(1 + (1-2 lambda)/2 |z|^2)``."""
        r2 = np.abs(_as_complex(z)) ** 2
        return _unwrap((1.0 + 2.0 * self.lam) * (1.0 + (1.0 - 2.0 * self.lam) / 2.0 * r2))

    def to_json(self) -> dict[str, Any]:
        return {
            "lambda": self.lam,
            "preS": self.preS,
            "S_paper": self.S_paper,
            "S_pointwise_at_0": float(self.S_pointwise(0.0)),
            "S_gamma": self.S_gamma,
            "harmonic_preS": self.harmonic_preS,
        }


def theorem_constants(lam, gamma=None, beta=None) -> TheoremConstants:
    p = _ozaki(lam)
    c = p.c
    s_gamma = None
    if gamma is not None:
        g = gamma.gamma if isinstance(gamma, GammaParam) else GammaParam(float(gamma)).gamma
        s_gamma = c * (1.0 + (1.0 - 2.0 * p.lam) / 2.0 * (1.0 + g) / (1.0 - g))
    h = None if beta is None else 2.0 * _gbeta(beta).beta + 1.0
    return TheoremConstants(p.lam, c, c * (3.0 - 2.0 * p.lam) / 2.0, s_gamma, h)


# ---------------------------------------------------------------------------
# distortion and growth
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EnvelopeRow:
    r: float
    lower: float
    upper: float


def _check_r(r: float) -> float:
    r = float(r)
    if not 0.0 <= r < 1.0:
        raise BadParameter(f"r={r} outside [0, 1)")
    return r


def distortion_envelope(lam, r: float) -> EnvelopeRow:
    """``(1+r^2)^{-(1+2 lambda)/2} <= |f'| <= (1-r^2)^{-(1+2 lambda)/2}``."""
    e = _ozaki(lam).exponent
    r = _check_r(r)
    return EnvelopeRow(r, (1.0 + r * r) ** -e, (1.0 - r * r) ** -e)


def growth_envelope(lam, r: float, tol: float = DEFAULT_TOL) -> EnvelopeRow:
    """Radial integrals of the distortion envelope over ``[0, r]``."""
    e = _ozaki(lam).exponent
    r = _check_r(r)
    if not tol > 0:
        raise BadParameter("tol must be positive")
    lower = radial_integrate(lambda s: (1.0 + s * s) ** -e, r, tol)
    upper = radial_integrate(lambda s: (1.0 - s * s) ** -e, r, tol)
    return EnvelopeRow(r, float(lower), float(upper))


# ---------------------------------------------------------------------------
# harmonic sharpness audit
# ---------------------------------------------------------------------------


def mt_phi(beta: float, t: float, r):
    """``beta (1 + r) - (r - t)/(1 - t r)`` on the real segment."""
    r = np.asarray(r, dtype=float)
    return beta * (1.0 + r) - (r - t) / (1.0 - t * r)


def _golden_max(g: Callable[[float], float], a: float, b: float, tol: float = 1e-13) -> tuple[float, float]:
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = b - invphi * (b - a)
    x2 = a + invphi * (b - a)
    g1, g2 = g(x1), g(x2)
    while b - a > tol:
        if g1 < g2:
            a, x1, g1 = x1, x2, g2
            x2 = a + invphi * (b - a)
            g2 = g(x2)
        else:
            b, x2, g2 = x2, x1, g1
            x1 = b - invphi * (b - a)
            g1 = g(x1)
    x = 0.5 * (a + b)
    return x, g(x)


def mt_maximize(beta: float, t: float, samples: int = 4001) -> tuple[float, float]:
    """``max_{r in [0,1]} |mt_phi(r)|`` by dense scan plus golden section.

    The endpoint ``r = 1`` stands for the limit ``r -> 1-`` (the function is
    continuous there since ``t < 1``).  Returns ``(value, argmax)``.
    """
    r = np.linspace(0.0, 1.0, samples)
    vals = np.abs(mt_phi(beta, t, r))
    i = int(np.argmax(vals))
    best_r, best = float(r[i]), float(vals[i])
    lo, hi = float(r[max(i - 1, 0)]), float(r[min(i + 1, samples - 1)])
    x, v = _golden_max(lambda s: float(abs(mt_phi(beta, t, s))), lo, hi)
    if v > best:
        best_r, best = x, v
    return best, best_r


@dataclass(frozen=True)
class MtAudit:
    beta: float
    t: float
    r0: float | None
    r0_in_range: bool
    r0_clamped: float | None
    m_direct: float
    m_direct_argmax: float
    m_paper: float | None
    disk_sup: float
    disk_argmax: complex

    @property
    def bound(self) -> float:
        return 2.0 * self.beta + 1.0

    @property
    def paper_discrepancy(self) -> float | None:
        """``m_paper - m_direct`` (None where the printed formula is undefined)."""
        return None if self.m_paper is None else self.m_paper - self.m_direct

    def to_json(self) -> dict[str, Any]:
        return {
            "beta": self.beta,
            "t": self.t,
            "r0": self.r0,
            "r0_in_range": self.r0_in_range,
            "m_direct": self.m_direct,
            "m_direct_argmax": self.m_direct_argmax,
            "m_paper": self.m_paper,
            "paper_discrepancy": self.paper_discrepancy,
            "disk_sup": self.disk_sup,
            "disk_argmax": [self.disk_argmax.real, self.disk_argmax.imag],
            "bound": self.bound,
        }


def mt_harmonic(beta: float, t: float):
    """``h`` with ``1 + z h''/h' = (1 - (1+beta) z)/(1 - z)`` and ``omega_t = (z-t)/(1-tz)``."""
    unit = BlaschkeDescriptor()  # the constant 1, i.e. omega(z) = z in the subordination
    return make_harmonic(gbeta_member(unit, beta), BlaschkeDescriptor.disk_automorphism(t))


def mt_audit(beta, t: float, grid: GridSpec | None = None) -> MtAudit:
    """Three readings of the harmonic sharpness constant at ``(beta, t)``.

    ``m_direct`` maximizes ``|beta(1+r) - (r-t)/(1-tr)|`` on ``[0, 1)``,
    ``m_paper`` evaluates the printed closed form
    ``(1 + 2 beta - 2 beta sqrt((1-t^2)/beta))/t`` and ``disk_sup`` is the
    grid estimate of the harmonic pre-Schwarzian norm of the test mapping.
    """
    beta = _gbeta(beta).beta
    t = float(t)
    if not 0.0 <= t < 1.0:
        raise BadParameter(f"t={t} outside [0, 1)")
    root = math.sqrt((1.0 - t * t) / beta)
    if t > 0:
        r0 = (1.0 - root) / t
        m_paper = (1.0 + 2.0 * beta - 2.0 * beta * root) / t
    else:
        r0 = m_paper = None
    in_range = r0 is not None and 0.0 <= r0 < 1.0
    r0_clamped = None if r0 is None else min(max(r0, 0.0), 1.0)
    m_direct, m_arg = mt_maximize(beta, t)
    est = norm_of(mt_harmonic(beta, t), "harmonic_pre", grid)
    return MtAudit(beta, t, r0, in_range, r0_clamped, m_direct, m_arg, m_paper, est.value, est.argmax)
