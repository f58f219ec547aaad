"""Adaptive Simpson quadrature on a segment, for real or complex integrands."""

from __future__ import annotations

from typing import Callable

from .errors import QuadratureFailure

DEFAULT_TOL = 1e-10
MAX_SUBDIVISIONS = 2**16


def adaptive_simpson(
    g: Callable[[float], complex],
    a: float,
    b: float,
    tol: float = DEFAULT_TOL,
    max_subdivisions: int = MAX_SUBDIVISIONS,
):
    """Integrate ``g`` over ``[a, b]`` with absolute error at most ``tol``.

    Iterative (explicit stack) variant of the classical recursive scheme:
    each panel is accepted once ``|S_left + S_right - S_whole| <= 15 tol_panel``,
    and the accepted sum carries the Richardson correction ``(S2 - S1)/15``.
    The panel tolerance halves on every split, so the accepted errors add up
    to at most ``tol``.

    Raises:
        QuadratureFailure: if ``tol <= 0`` or the subdivision budget runs out.
    """
    if not tol > 0:
        raise QuadratureFailure("tolerance must be positive")
    if a == b:
        return 0.0 * g(a)
    fa, fm, fb = g(a), g(0.5 * (a + b)), g(b)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    stack = [(a, b, fa, fm, fb, whole, tol)]
    total = 0.0
    splits = 0
    while stack:
        lo, hi, flo, fmid, fhi, s, eps = stack.pop()
        mid = 0.5 * (lo + hi)
        fl = g(0.5 * (lo + mid))
        fr = g(0.5 * (mid + hi))
        h = hi - lo
        left = h / 12.0 * (flo + 4.0 * fl + fmid)
        right = h / 12.0 * (fmid + 4.0 * fr + fhi)
        delta = left + right - s
        if abs(delta) <= 15.0 * eps or mid in (lo, hi):
            total = total + left + right + delta / 15.0
            continue
        splits += 1
        if splits > max_subdivisions:
            raise QuadratureFailure(
                f"tolerance {tol:g} not reached within {max_subdivisions} subdivisions"
            )
        stack.append((mid, hi, fmid, fr, fhi, right, 0.5 * eps))
        stack.append((lo, mid, flo, fl, fmid, left, 0.5 * eps))
    return total


def radial_integrate(g: Callable[[float], complex], r: float, tol: float = DEFAULT_TOL):
    """``int_0^r g(s) ds`` by :func:`adaptive_simpson`."""
    return adaptive_simpson(g, 0.0, r, tol)
