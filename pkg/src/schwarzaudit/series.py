"""Truncated complex power series.

A :class:`PowerSeries` of order ``N`` stores the Taylor coefficients of
degrees ``0..N`` (little-endian).  All arithmetic is plain binary64; series
evaluation is only trusted for ``|z| <= R_SERIES``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np

from .errors import BadParameter, DivisionByNonUnit

DEFAULT_ORDER = 256
R_SERIES = 0.95


@dataclass(frozen=True, eq=False)
class PowerSeries:
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex).ravel()
        if c.size < 2:
            raise BadParameter("a power series needs order >= 1")
        if not np.all(np.isfinite(c)):
            raise BadParameter("power series coefficients must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[complex], order: int | None = None) -> "PowerSeries":
        """Build a series, zero-padding or truncating to ``order`` if given."""
        c = np.asarray(coeffs, dtype=complex).ravel()
        if order is not None:
            c = _resize(c, order)
        return cls(c)

    @classmethod
    def constant(cls, value: complex, order: int = DEFAULT_ORDER) -> "PowerSeries":
        return cls.from_coeffs([value], order)

    @classmethod
    def monomial(cls, degree: int, order: int = DEFAULT_ORDER, coeff: complex = 1.0) -> "PowerSeries":
        c = np.zeros(order + 1, dtype=complex)
        if degree <= order:
            c[degree] = coeff
        return cls(c)

    def to_json(self) -> dict[str, Any]:
        return {
            "order": self.order,
            "coeffs": [[float(v.real), float(v.imag)] for v in self.coeffs],
        }

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "PowerSeries":
        try:
            order = int(data["order"])
            coeffs = [complex(re, im) for re, im in data["coeffs"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise BadParameter(f"malformed series JSON: {exc}") from exc
        if len(coeffs) != order + 1:
            raise BadParameter("series JSON: coefficient count does not match order")
        return cls(np.array(coeffs, dtype=complex))

    def __call__(self, z):
        return ps_eval(self, z)

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        return ps_linear(self, other, 1.0, 1.0)

    def __sub__(self, other: "PowerSeries") -> "PowerSeries":
        return ps_linear(self, other, 1.0, -1.0)

    def __mul__(self, other):
        if isinstance(other, PowerSeries):
            return ps_mul(self, other)
        return PowerSeries(self.coeffs * complex(other))

    __rmul__ = __mul__

    def __truediv__(self, other: "PowerSeries") -> "PowerSeries":
        return ps_div(self, other)

    def __neg__(self) -> "PowerSeries":
        return PowerSeries(-self.coeffs)

    def __repr__(self) -> str:
        head = ", ".join(f"{c:.6g}" for c in self.coeffs[:4])
        return f"PowerSeries(order={self.order}, [{head}, ...])"


def _resize(c: np.ndarray, order: int) -> np.ndarray:
    out = np.zeros(order + 1, dtype=complex)
    n = min(c.size, order + 1)
    out[:n] = c[:n]
    return out


def _pad_pair(a: PowerSeries, b: PowerSeries) -> tuple[np.ndarray, np.ndarray, int]:
    order = max(a.order, b.order)
    return _resize(a.coeffs, order), _resize(b.coeffs, order), order


def truncate(a: PowerSeries, order: int) -> PowerSeries:
    """Zero-pad or cut ``a`` to the given order."""
    return PowerSeries(_resize(a.coeffs, order))


def ps_linear(a: PowerSeries, b: PowerSeries, alpha: complex, beta: complex) -> PowerSeries:
    ca, cb, _ = _pad_pair(a, b)
    return PowerSeries(alpha * ca + beta * cb)


def ps_mul(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    """Cauchy product, truncated to the longer operand's order."""
    ca, cb, order = _pad_pair(a, b)
    return PowerSeries(np.convolve(ca, cb)[: order + 1])


def ps_div(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    """Series quotient ``q`` with ``q * b == a`` through the common order."""
    ca, cb, order = _pad_pair(a, b)
    b0 = cb[0]
    if abs(b0) == 0.0:
        raise DivisionByNonUnit("divisor has zero constant term")
    q = np.zeros(order + 1, dtype=complex)
    for n in range(order + 1):
        # q_n = (a_n - sum_{k=1..n} b_k q_{n-k}) / b_0
        acc = ca[n] - np.dot(cb[1 : n + 1], q[n - 1 :: -1][:n]) if n else ca[0]
        q[n] = acc / b0
    return PowerSeries(q)


def ps_derive(a: PowerSeries) -> PowerSeries:
    """Termwise derivative.  The result has order ``N-1`` (never below 1)."""
    c = a.coeffs[1:] * np.arange(1, a.order + 1)
    return PowerSeries(_resize(c, max(a.order - 1, 1)))


def ps_integrate(a: PowerSeries) -> PowerSeries:
    """Termwise antiderivative vanishing at 0; order ``N+1``."""
    c = np.zeros(a.order + 2, dtype=complex)
    c[1:] = a.coeffs / np.arange(1, a.order + 2)
    return PowerSeries(c)


def ps_exp(a: PowerSeries) -> PowerSeries:
    """``exp(a)`` via the recurrence ``n e_n = sum_k k a_k e_{n-k}`` from e' = a'e."""
    ca = a.coeffs
    order = a.order
    e = np.zeros(order + 1, dtype=complex)
    e[0] = np.exp(ca[0])
    ka = ca * np.arange(order + 1)
    for n in range(1, order + 1):
        e[n] = np.dot(ka[1 : n + 1], e[n - 1 :: -1][:n]) / n
    return PowerSeries(e)


def ps_eval(a: PowerSeries, z):
    """Horner evaluation of the truncated polynomial; scalar or array ``z``."""
    z = np.asarray(z, dtype=complex)
    acc = np.zeros_like(z)
    for c in a.coeffs[::-1]:
        acc = acc * z + c
    return acc[()] if acc.ndim == 0 else acc


def geometric(order: int = DEFAULT_ORDER) -> PowerSeries:
    """``1/(1-z)`` truncated."""
    return PowerSeries(np.ones(order + 1, dtype=complex))


def binomial_series(exponent: float, order: int = DEFAULT_ORDER) -> PowerSeries:
    """``(1-z)**(-exponent)``: coefficients are rising factorials over n!."""
    c = np.empty(order + 1, dtype=complex)
    c[0] = 1.0
    for n in range(1, order + 1):
        c[n] = c[n - 1] * (exponent + n - 1) / n
    return PowerSeries(c)


def substitute_square(a: PowerSeries) -> PowerSeries:
    """``a(z**2)`` truncated to the same order."""
    c = np.zeros(a.order + 1, dtype=complex)
    c[0 :: 2] = a.coeffs[: math.ceil((a.order + 1) / 2)]
    return PowerSeries(c)
