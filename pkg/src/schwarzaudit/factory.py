"""Analytic and harmonic test functions on the unit disk.

Schwarz functions are finite Blaschke products
``phi(z) = e^{i theta} z^m prod_k (z - a_k)/(1 - conj(a_k) z)`` (or the zero
function), so ``|phi| <= 1`` on the closed disk holds by construction.

Members of the Ozaki class F0(lambda) and of G(beta) are generated from a
Schwarz function ``phi`` through their pre-Schwarzian field

    F0(lambda):  f''/f' = (1 + 2 lambda) phi / (1 - z phi)
    G(beta):     f''/f' = -beta phi / (1 - z phi)

which is known in closed form; ``f'`` and ``f`` are rebuilt as truncated
power series, ``f' = exp(int f''/f')`` and ``f = int f'``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any

import numpy as np

from . import series as ps
from .errors import BadParameter, DegenerateMobius, PoleInDomain, VanishingDerivative
from .quadrature import adaptive_simpson
from .series import DEFAULT_ORDER, R_SERIES, PowerSeries

DERIVATIVE_FLOOR = 1e-12
MOBIUS_POLE_FLOOR = 1e-6
QUAD_TOL = 1e-12

CLOSED_KINDS = ("identity", "koebe", "half_log", "extremal_ozaki")
SCHWARZ_KINDS = ("ozaki", "gbeta")
KINDS = CLOSED_KINDS + SCHWARZ_KINDS + ("series",)


def _as_complex(z) -> np.ndarray:
    return np.asarray(z, dtype=complex)


def _unwrap(x: np.ndarray):
    return x[()] if np.ndim(x) == 0 else x


def _jet_mul(u, v):
    """Product rule on 2-jets ``(f, f', f'')``."""
    return (
        u[0] * v[0],
        u[1] * v[0] + u[0] * v[1],
        u[2] * v[0] + 2.0 * u[1] * v[1] + u[0] * v[2],
    )


# ---------------------------------------------------------------------------
# Schwarz functions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BlaschkeDescriptor:
    """Finite Blaschke product ``e^{i rotation} z^m prod (z-a)/(1-conj(a) z)``.

    ``vanishing=True`` encodes the zero function instead.
    """

    zeros: tuple[complex, ...] = ()
    rotation: float = 0.0
    origin_multiplicity: int = 0
    vanishing: bool = False

    def __post_init__(self):
        zeros = tuple(complex(a) for a in self.zeros)
        for a in zeros:
            if not (math.isfinite(a.real) and math.isfinite(a.imag)) or abs(a) >= 1.0:
                raise BadParameter(f"Blaschke zero {a} is not strictly inside the disk")
        if not math.isfinite(self.rotation):
            raise BadParameter("rotation must be finite")
        if int(self.origin_multiplicity) != self.origin_multiplicity or self.origin_multiplicity < 0:
            raise BadParameter("origin multiplicity must be a nonnegative integer")
        object.__setattr__(self, "zeros", zeros)
        object.__setattr__(self, "rotation", float(self.rotation))
        object.__setattr__(self, "origin_multiplicity", int(self.origin_multiplicity))

    @classmethod
    def zero(cls) -> "BlaschkeDescriptor":
        return cls(vanishing=True)

    @classmethod
    def identity(cls) -> "BlaschkeDescriptor":
        return cls(origin_multiplicity=1)

    @classmethod
    def disk_automorphism(cls, t: complex) -> "BlaschkeDescriptor":
        """``(z - t)/(1 - conj(t) z)``."""
        return cls(zeros=(t,))

    @property
    def degree(self) -> int:
        return 0 if self.vanishing else self.origin_multiplicity + len(self.zeros)

    def jet(self, z):
        """Value, first and second derivative at ``z`` (scalar or array)."""
        z = _as_complex(z)
        if self.vanishing:
            zero = np.zeros_like(z)
            return zero, zero.copy(), zero.copy()
        one = np.ones_like(z)
        zero = np.zeros_like(z)
        acc = (np.exp(1j * self.rotation) * one, zero, zero)
        m = self.origin_multiplicity
        if m:
            zm = (
                z**m,
                m * z ** (m - 1),
                m * (m - 1) * z ** (m - 2) if m >= 2 else zero,
            )
            acc = _jet_mul(acc, zm)
        for a in self.zeros:
            ac = a.conjugate()
            den = 1.0 - ac * z
            s = 1.0 - abs(a) ** 2
            acc = _jet_mul(acc, ((z - a) / den, s / den**2, 2.0 * ac * s / den**3))
        return acc

    def __call__(self, z):
        return _unwrap(self.jet(z)[0])

    def value_at_origin(self) -> complex:
        return complex(self(0.0))

    def series(self, order: int = DEFAULT_ORDER) -> PowerSeries:
        if self.vanishing:
            return PowerSeries.constant(0.0, order)
        out = PowerSeries.monomial(self.origin_multiplicity, order, np.exp(1j * self.rotation))
        n = np.arange(order + 1)
        for a in self.zeros:
            c = np.empty(order + 1, dtype=complex)
            c[0] = -a
            # (z-a)/(1-conj(a) z) = -a + sum_{n>=1} (1-|a|^2) conj(a)^{n-1} z^n
            c[1:] = (1.0 - abs(a) ** 2) * a.conjugate() ** (n[1:] - 1)
            out = ps.ps_mul(out, PowerSeries(c))
        return out

    def to_json(self) -> dict[str, Any]:
        if self.vanishing:
            return {"zero": True}
        return {
            "zeros": [[a.real, a.imag] for a in self.zeros],
            "rotation": self.rotation,
            "m": self.origin_multiplicity,
        }

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "BlaschkeDescriptor":
        try:
            if data.get("zero"):
                return cls.zero()
            return cls(
                zeros=tuple(complex(re, im) for re, im in data.get("zeros", [])),
                rotation=float(data.get("rotation", 0.0)),
                origin_multiplicity=int(data.get("m", 0)),
            )
        except (TypeError, ValueError, AttributeError) as exc:
            raise BadParameter(f"malformed Blaschke JSON: {exc}") from exc


def blaschke_eval(phi: BlaschkeDescriptor, z):
    """Return ``(phi(z), phi'(z))``."""
    v, d1, _ = phi.jet(z)
    return _unwrap(v), _unwrap(d1)


def random_blaschke(rng: np.random.Generator, max_zeros: int = 3, radius: float = 0.8) -> BlaschkeDescriptor:
    """Draw ``k in {0..max_zeros}`` zeros area-uniform in ``|a| <= radius``,
    a uniform rotation, and origin multiplicity ``m in {0, 1}``."""
    k = int(rng.integers(0, max_zeros + 1))
    zeros = []
    for _ in range(k):
        rho = radius * math.sqrt(rng.random())
        zeros.append(cmath.rect(rho, 2 * math.pi * rng.random()))
    rotation = 2 * math.pi * rng.random()
    m = int(rng.integers(0, 2))
    return BlaschkeDescriptor(tuple(zeros), rotation, m)


# ---------------------------------------------------------------------------
# Analytic function handles
# ---------------------------------------------------------------------------


def _check_lambda(lam: float) -> float:
    lam = float(lam)
    if not 0.5 <= lam <= 1.0:
        raise BadParameter(f"lambda={lam} outside [1/2, 1]")
    return lam


def _check_beta(beta: float) -> float:
    beta = float(beta)
    if not (beta > 0 and math.isfinite(beta)):
        raise BadParameter(f"beta={beta} must be positive")
    return beta


@dataclass(frozen=True, eq=False)
class FunctionHandle:
    """Evaluable analytic function with access to ``f, f', f''`` and, for
    closed forms, to ``P = f''/f'`` and ``P'``.

    Use the constructors (:func:`named_function`, :func:`extremal_ozaki`,
    :func:`ozaki_member`, :func:`gbeta_member`, :func:`series_function`)
    rather than instantiating directly.
    """

    kind: str
    lam: float | None = None
    beta: float | None = None
    phi: BlaschkeDescriptor | None = None
    order: int = DEFAULT_ORDER
    source: PowerSeries | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise BadParameter(f"unknown function kind {self.kind!r}")
        if self.kind in ("extremal_ozaki", "ozaki"):
            object.__setattr__(self, "lam", _check_lambda(self.lam))
        if self.kind == "gbeta":
            object.__setattr__(self, "beta", _check_beta(self.beta))
        if self.kind in SCHWARZ_KINDS and self.phi is None:
            raise BadParameter(f"{self.kind} handle needs a Schwarz function")
        if self.kind == "series":
            if self.source is None:
                raise BadParameter("series handle needs a series")
            object.__setattr__(self, "order", self.source.order)
        if self.order < 2:
            raise BadParameter("order must be >= 2")

    # -- metadata ---------------------------------------------------------

    @property
    def closed_form(self) -> bool:
        """True when ``P`` and ``P'`` are available in closed form."""
        return self.kind != "series"

    @property
    def domain_radius(self) -> float:
        """Radius up to which ``P``/``S`` evaluation is trusted."""
        return 1.0 if self.closed_form else R_SERIES

    @property
    def kappa(self) -> float:
        """Coefficient of ``phi/(1 - z phi)`` in ``f''/f'`` for generated members."""
        if self.kind == "ozaki" or self.kind == "extremal_ozaki":
            return 1.0 + 2.0 * self.lam
        if self.kind == "gbeta":
            return -self.beta
        raise AttributeError(f"{self.kind} handle has no generator coefficient")

    def describe(self) -> str:
        if self.kind in ("ozaki", "extremal_ozaki"):
            return f"{self.kind}(lambda={self.lam:g})"
        if self.kind == "gbeta":
            return f"gbeta(beta={self.beta:g})"
        return self.kind

    # -- series reconstruction (lazy, recompute-equal) ------------------------

    @cached_property
    def _series_pair(self) -> tuple[PowerSeries, PowerSeries]:
        n = self.order
        k = self.kind
        if k == "identity":
            f = PowerSeries.monomial(1, n)
        elif k == "koebe":
            f = PowerSeries(np.arange(n + 1, dtype=complex))
        elif k == "half_log":
            c = np.zeros(n + 1, dtype=complex)
            c[1::2] = 1.0 / np.arange(1, n + 1, 2)
            f = PowerSeries(c)
        elif k == "extremal_ozaki":
            d1 = ps.substitute_square(ps.binomial_series((1.0 + 2.0 * self.lam) / 2.0, n))
            return ps.truncate(ps.ps_integrate(d1), n), d1
        elif k in SCHWARZ_KINDS:
            phi_s = self.phi.series(n)
            z_phi = ps.ps_mul(PowerSeries.monomial(1, n), phi_s)
            pre = ps.ps_div(self.kappa * phi_s, ps.ps_linear(PowerSeries.constant(1.0, n), z_phi, 1.0, -1.0))
            d1 = ps.truncate(ps.ps_exp(ps.ps_integrate(pre)), n)
            return ps.truncate(ps.ps_integrate(d1), n), d1
        else:
            f = self.source
        return f, ps.ps_derive(f)

    @property
    def series(self) -> PowerSeries:
        """Truncated Taylor series of ``f``."""
        return self._series_pair[0]

    @property
    def d1_series(self) -> PowerSeries:
        return self._series_pair[1]

    @cached_property
    def d2_series(self) -> PowerSeries:
        return ps.ps_derive(self.d1_series)

    @cached_property
    def d3_series(self) -> PowerSeries:
        return ps.ps_derive(self.d2_series)

    # -- pointwise evaluation -----------------------------------------------

    def value(self, z):
        """``f(z)``; closed forms where available, else the series."""
        z = _as_complex(z)
        k = self.kind
        if k == "identity":
            out = z.copy()
        elif k == "koebe":
            out = z / (1.0 - z) ** 2
        elif k == "half_log":
            out = np.arctanh(z)
        elif k == "extremal_ozaki":
            out = np.vectorize(self._radial_value, otypes=[complex])(z)
        else:
            out = ps.ps_eval(self.series, z)
        return _unwrap(out)

    def _radial_value(self, z: complex) -> complex:
        # f(z) = z int_0^1 f'(s z) ds along the radius
        if z == 0:
            return 0j
        return z * adaptive_simpson(lambda s: complex(self.d1(s * z)), 0.0, 1.0, QUAD_TOL)

    def d1(self, z):
        """``f'(z)``."""
        z = _as_complex(z)
        k = self.kind
        if k == "identity":
            out = np.ones_like(z)
        elif k == "koebe":
            out = (1.0 + z) / (1.0 - z) ** 3
        elif k == "half_log":
            out = 1.0 / (1.0 - z * z)
        elif k == "extremal_ozaki":
            # principal branch: 1 - z^2 omits (-inf, 0] on the open disk
            out = np.exp(-(1.0 + 2.0 * self.lam) / 2.0 * np.log(1.0 - z * z))
        else:
            out = ps.ps_eval(self.d1_series, z)
        return _unwrap(out)

    def d2(self, z):
        """``f''(z)``."""
        if self.closed_form:
            return _unwrap(_as_complex(self.pre(z)) * _as_complex(self.d1(z)))
        return ps.ps_eval(self.d2_series, z)

    def d3(self, z):
        return ps.ps_eval(self.d3_series, z)

    def _checked_d1(self, z) -> np.ndarray:
        d1 = _as_complex(self.d1(z))
        if np.any(np.abs(d1) < DERIVATIVE_FLOOR):
            raise VanishingDerivative(f"|f'| < {DERIVATIVE_FLOOR:g} for {self.describe()}")
        return d1

    def pre(self, z):
        """Pre-Schwarzian ``f''/f'``."""
        z = _as_complex(z)
        k = self.kind
        if k == "identity":
            out = np.zeros_like(z)
        elif k == "koebe":
            out = (4.0 + 2.0 * z) / (1.0 - z * z)
        elif k == "half_log":
            out = 2.0 * z / (1.0 - z * z)
        elif k == "extremal_ozaki":
            out = (1.0 + 2.0 * self.lam) * z / (1.0 - z * z)
        elif k in SCHWARZ_KINDS:
            phi = _as_complex(self.phi(z))
            out = self.kappa * phi / (1.0 - z * phi)
        else:
            d1 = self._checked_d1(z)
            out = ps.ps_eval(self.d2_series, z) / d1
        return _unwrap(out)

    def pre_prime(self, z):
        """Derivative of the pre-Schwarzian."""
        z = _as_complex(z)
        k = self.kind
        if k == "identity":
            out = np.zeros_like(z)
        elif k == "koebe":
            out = (2.0 + 8.0 * z + 2.0 * z * z) / (1.0 - z * z) ** 2
        elif k in ("half_log", "extremal_ozaki"):
            c = 2.0 if k == "half_log" else 1.0 + 2.0 * self.lam
            out = c * (1.0 + z * z) / (1.0 - z * z) ** 2
        elif k in SCHWARZ_KINDS:
            phi, dphi, _ = self.phi.jet(z)
            out = self.kappa * (dphi + phi * phi) / (1.0 - z * phi) ** 2
        else:
            d1 = self._checked_d1(z)
            d2 = ps.ps_eval(self.d2_series, z)
            d3 = ps.ps_eval(self.d3_series, z)
            out = (d3 * d1 - d2 * d2) / (d1 * d1)
        return _unwrap(out)

    # -- serialization --------------------------------------------------------

    def to_json(self, include_series: bool = False) -> dict[str, Any]:
        data: dict[str, Any] = {"kind": self.kind}
        if self.lam is not None:
            data["lambda"] = self.lam
        if self.beta is not None:
            data["beta"] = self.beta
        if self.phi is not None:
            data["phi"] = self.phi.to_json()
        if self.kind in SCHWARZ_KINDS:
            data["order"] = self.order
        if self.kind == "series" or include_series:
            data["series"] = self.series.to_json()
        return data


def function_from_json(data: dict[str, Any]) -> FunctionHandle:
    """Rebuild a handle from its JSON form (named, generated or series)."""
    if not isinstance(data, dict) or "kind" not in data:
        raise BadParameter("function JSON needs a 'kind'")
    try:
        return _function_from_json(data)
    except (KeyError, TypeError) as exc:
        raise BadParameter(f"malformed function JSON: {exc!r}") from exc


def _function_from_json(data: dict[str, Any]) -> FunctionHandle:
    kind = data["kind"]
    if kind == "series":
        return series_function(PowerSeries.from_json(data["series"]))
    if kind in ("identity", "koebe", "half_log"):
        return named_function(kind)
    if kind == "extremal_ozaki":
        return extremal_ozaki(data["lambda"])
    order = int(data.get("order", DEFAULT_ORDER))
    phi = BlaschkeDescriptor.from_json(data.get("phi", {}))
    if kind == "ozaki":
        return ozaki_member(phi, data["lambda"], order)
    if kind == "gbeta":
        return gbeta_member(phi, data["beta"], order)
    raise BadParameter(f"unknown function kind {kind!r}")


def named_function(name: str) -> FunctionHandle:
    """``identity`` (z), ``koebe`` (z/(1-z)^2) or ``half_log`` (artanh z)."""
    if name not in ("identity", "koebe", "half_log"):
        raise BadParameter(f"unknown named function {name!r}")
    return FunctionHandle(name)


def extremal_ozaki(lam: float) -> FunctionHandle:
    """``f_lambda`` with ``f' = (1 - z^2)^{-(1+2 lambda)/2}``."""
    return FunctionHandle("extremal_ozaki", lam=_check_lambda(lam))


def ozaki_member(phi: BlaschkeDescriptor, lam: float, order: int = DEFAULT_ORDER) -> FunctionHandle:
    return FunctionHandle("ozaki", lam=_check_lambda(lam), phi=phi, order=order)


def gbeta_member(phi: BlaschkeDescriptor, beta: float, order: int = DEFAULT_ORDER) -> FunctionHandle:
    return FunctionHandle("gbeta", beta=_check_beta(beta), phi=phi, order=order)


def series_function(s: PowerSeries) -> FunctionHandle:
    return FunctionHandle("series", source=s)


def random_ozaki_member(rng: np.random.Generator, order: int = DEFAULT_ORDER) -> FunctionHandle:
    """A Schwarz function from :func:`random_blaschke`, then lambda ~ U[1/2, 1]."""
    phi = random_blaschke(rng)
    lam = 0.5 + 0.5 * rng.random()
    return ozaki_member(phi, lam, order)


def audit_points(radius: float = R_SERIES, radii: int = 24, angles: int = 64) -> np.ndarray:
    """Polar sample grid (origin included) used for domain sanity checks."""
    r = radius * np.arange(1, radii + 1) / radii
    theta = 2 * np.pi * np.arange(angles) / angles
    pts = (r[:, None] * np.exp(1j * theta)[None, :]).ravel()
    return np.concatenate([[0j], pts])


def mobius_compose(f: FunctionHandle, a: complex, b: complex, c: complex, d: complex, order: int | None = None) -> FunctionHandle:
    """Series-backed handle for ``(a f + b)/(c f + d)``; not renormalized."""
    a, b, c, d = (complex(x) for x in (a, b, c, d))
    if a * d - b * c == 0:
        raise DegenerateMobius("ad - bc = 0")
    order = f.order if order is None else order
    s = ps.truncate(f.series, order)
    if c != 0:
        den_vals = c * ps.ps_eval(s, audit_points()) + d
        if np.min(np.abs(den_vals)) < MOBIUS_POLE_FLOOR:
            raise PoleInDomain("c f + d vanishes on the audit disk")
    elif d == 0:
        raise DegenerateMobius("c = d = 0")
    one = PowerSeries.constant(1.0, order)
    num = ps.ps_linear(s, one, a, b)
    den = ps.ps_linear(s, one, c, d)
    return series_function(ps.ps_div(num, den))


# ---------------------------------------------------------------------------
# Harmonic mappings
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class HarmonicHandle:
    """``f = h + conj(g)`` with dilatation ``omega = g'/h'``."""

    h: FunctionHandle
    omega: BlaschkeDescriptor

    @property
    def domain_radius(self) -> float:
        return self.h.domain_radius

    def describe(self) -> str:
        return f"harmonic({self.h.describe()}, omega degree {self.omega.degree})"

    def to_json(self) -> dict[str, Any]:
        return {"h": self.h.to_json(), "omega": self.omega.to_json()}


def make_harmonic(h: FunctionHandle, omega: BlaschkeDescriptor) -> HarmonicHandle:
    return HarmonicHandle(h, omega)


def harmonic_from_json(data: dict[str, Any]) -> HarmonicHandle:
    try:
        return HarmonicHandle(function_from_json(data["h"]), BlaschkeDescriptor.from_json(data["omega"]))
    except KeyError as exc:
        raise BadParameter(f"harmonic JSON missing {exc}") from exc
