"""Pre-Schwarzian and Schwarzian derivatives of analytic and harmonic handles.

All evaluators accept a scalar or an array of points and return the same
shape.  Closed-form handles use their exact fields; series-backed handles
differentiate the truncated Taylor series.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from . import series as ps
from .errors import BadParameter, DegenerateDenominator, DegenerateDilatation
from .factory import FunctionHandle, HarmonicHandle, _as_complex, _unwrap
from .series import PowerSeries

DEGENERACY_FLOOR = 1e-12

Source = Union[FunctionHandle, HarmonicHandle]

FIELD_KINDS = (
    "pre_schwarzian",
    "schwarzian",
    "harmonic_pre",
    "harmonic_schwarzian",
    "becker_integrand",
)


def pre_schwarzian(f: FunctionHandle, z):
    """``f''(z)/f'(z)``."""
    return f.pre(z)


def schwarzian(f: FunctionHandle, z, form: str = "auto"):
    """``S_f = P' - P^2/2``.

    ``form="auto"`` uses the simplest closed form the handle offers (for
    members generated from a Schwarz function ``phi`` this is
    ``kappa (phi' + (1 - kappa/2) phi^2)/(1 - z phi)^2``); ``form="pp"``
    always assembles ``P' - P^2/2`` from the handle's ``P`` and ``P'``.
    """
    if form not in ("auto", "pp"):
        raise BadParameter(f"unknown Schwarzian form {form!r}")
    z = _as_complex(z)
    k = f.kind
    if form == "pp" or k == "series":
        p = _as_complex(f.pre(z))
        out = _as_complex(f.pre_prime(z)) - 0.5 * p * p
    elif k == "identity":
        out = np.zeros_like(z)
    elif k == "koebe":
        out = -6.0 / (1.0 - z * z) ** 2
    elif k == "half_log":
        out = 2.0 / (1.0 - z * z) ** 2
    elif k == "extremal_ozaki":
        c = 1.0 + 2.0 * f.lam
        out = c * (1.0 + (1.0 - 2.0 * f.lam) / 2.0 * z * z) / (1.0 - z * z) ** 2
    else:
        kappa = f.kappa
        phi, dphi, _ = f.phi.jet(z)
        out = kappa * (dphi + (1.0 - kappa / 2.0) * phi * phi) / (1.0 - z * phi) ** 2
    return _unwrap(out)


def schwarzian_series(f: FunctionHandle) -> PowerSeries:
    """Series of ``S_f`` built purely by series arithmetic from ``f``'s series."""
    pre = ps.ps_div(f.d2_series, f.d1_series)
    return ps.ps_linear(ps.ps_derive(pre), ps.ps_mul(pre, pre), 1.0, -0.5)


def numeric_derivative(g: Callable, z, step: float) -> complex:
    """Central differences with two Richardson levels (error O(step^6))."""
    table = []
    for j in range(3):
        h = step / 2**j
        table.append((g(z + h) - g(z - h)) / (2.0 * h))
    d1 = [(4.0 * table[1] - table[0]) / 3.0, (4.0 * table[2] - table[1]) / 3.0]
    return (16.0 * d1[1] - d1[0]) / 15.0


def numeric_pre_prime(f: FunctionHandle, z: complex) -> complex:
    """``P'`` by differentiating ``f.pre`` numerically; step ``1e-4 (1-|z|)``."""
    z = complex(z)
    return complex(numeric_derivative(lambda w: complex(f.pre(w)), z, 1e-4 * (1.0 - abs(z))))


# ---------------------------------------------------------------------------
# harmonic mappings
# ---------------------------------------------------------------------------


def _dilatation_terms(F: HarmonicHandle, z):
    w, dw, ddw = F.omega.jet(z)
    gap = 1.0 - np.abs(w) ** 2
    if np.any(gap < DEGENERACY_FLOOR):
        raise DegenerateDilatation(f"1 - |omega|^2 < {DEGENERACY_FLOOR:g}")
    return w, dw, ddw, gap


def harmonic_pre_schwarzian(F: HarmonicHandle, z):
    """``(log J_f)_z = h''/h' - omega' conj(omega)/(1 - |omega|^2)``."""
    z = _as_complex(z)
    w, dw, _, gap = _dilatation_terms(F, z)
    return _unwrap(_as_complex(F.h.pre(z)) - dw * np.conj(w) / gap)


def harmonic_schwarzian(F: HarmonicHandle, z, literal: bool = False):
    """Harmonic Schwarzian

        S h + conj(w)/(1-|w|^2) (h''/h' w' - w'') - 3/2 (w' conj(w)/(1-|w|^2))^2.

    ``literal=True`` multiplies ``h''/h'`` by ``w`` instead of ``w'``, for
    comparison with that printed variant.
    """
    z = _as_complex(z)
    w, dw, ddw, gap = _dilatation_terms(F, z)
    p = _as_complex(F.h.pre(z))
    s = _as_complex(schwarzian(F.h, z))
    mixed = p * (w if literal else dw) - ddw
    q = dw * np.conj(w) / gap
    return _unwrap(s + np.conj(w) / gap * mixed - 1.5 * q * q)


def jacobian(F: HarmonicHandle, z):
    """``|h'|^2 (1 - |omega|^2)``."""
    z = _as_complex(z)
    w = _as_complex(F.omega(z))
    return _unwrap(np.abs(_as_complex(F.h.d1(z))) ** 2 * (1.0 - np.abs(w) ** 2))


# ---------------------------------------------------------------------------
# auxiliary transforms
# ---------------------------------------------------------------------------


def phi_from_f(f: FunctionHandle, lam: float, z):
    """Recover the Schwarz function: ``P / ((1 + 2 lambda) + z P)``."""
    z = _as_complex(z)
    p = _as_complex(f.pre(z))
    den = (1.0 + 2.0 * lam) + z * p
    if np.any(np.abs(den) < DEGENERACY_FLOOR):
        raise DegenerateDenominator("(1 + 2 lambda) + z P vanishes")
    return _unwrap(p / den)


def big_phi(phi_value, z):
    """``(conj(z) - phi)/(1 - z phi)``; a point of the disk when ``|phi|, |z| < 1``."""
    z = _as_complex(z)
    phi_value = _as_complex(phi_value)
    den = 1.0 - z * phi_value
    if np.any(np.abs(den) < DEGENERACY_FLOOR):
        raise DegenerateDenominator("1 - z phi vanishes")
    return _unwrap((np.conj(z) - phi_value) / den)


# ---------------------------------------------------------------------------
# fields
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class DerivativeField:
    source: Source
    kind: str
    eval: Callable
    domain_radius: float

    def __call__(self, z):
        return self.eval(z)


def derivative_field(source: Source, kind: str, literal: bool = False) -> DerivativeField:
    """Bundle a source and a derivative kind into an evaluable field."""
    if kind not in FIELD_KINDS:
        raise BadParameter(f"unknown field kind {kind!r}")
    harmonic = isinstance(source, HarmonicHandle)
    if kind.startswith("harmonic") != harmonic:
        raise BadParameter(f"field kind {kind!r} does not match source {source.describe()}")
    if kind == "pre_schwarzian":
        fn = source.pre
    elif kind == "schwarzian":
        def fn(z):
            return schwarzian(source, z)
    elif kind == "becker_integrand":
        def fn(z):
            return _as_complex(z) * _as_complex(source.pre(z))
    elif kind == "harmonic_pre":
        def fn(z):
            return harmonic_pre_schwarzian(source, z)
    else:
        def fn(z):
            return harmonic_schwarzian(source, z, literal=literal)
    return DerivativeField(source, kind, fn, source.domain_radius)
