"""Tabular audit reports and their CSV/JSON rendering."""

from __future__ import annotations

import csv
import io
import json
from typing import Any, Iterable, Sequence

import numpy as np

from .bounds import distortion_envelope, growth_envelope, mt_audit, theorem_constants
from .factory import extremal_ozaki
from .norms import GridSpec, norm_of
from .quadrature import DEFAULT_TOL

DISCREPANCY_TOL = 1e-3
DEFAULT_LAMBDAS = (0.5, 0.6, 0.7, 0.8, 0.9, 1.0)


def format_number(x: Any) -> str:
    if x is None:
        return ""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return f"{float(x):.9g}"
    return str(x)


def to_csv(header: Sequence[str], rows: Iterable[dict[str, Any]], comments: Sequence[str] = ()) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([format_number(row.get(h)) for h in header])
    for line in comments:
        buf.write(f"# {line}\n")
    return buf.getvalue()


def to_json(data: Any) -> str:
    return json.dumps(data, indent=2, default=_jsonable) + "\n"


def _jsonable(x):
    if isinstance(x, complex):
        return [x.real, x.imag]
    if isinstance(x, np.generic):
        return x.item()
    raise TypeError(f"not JSON serializable: {type(x)!r}")


# ---------------------------------------------------------------------------

ENVELOPE_HEADER = ("r", "dist_lower", "dist_upper", "growth_lower", "growth_upper")


def envelope_rows(lam: float, radii: Sequence[float], tol: float = DEFAULT_TOL) -> list[dict[str, float]]:
    rows = []
    for r in radii:
        d = distortion_envelope(lam, r)
        g = growth_envelope(lam, r, tol)
        rows.append(
            {"r": d.r, "dist_lower": d.lower, "dist_upper": d.upper, "growth_lower": g.lower, "growth_upper": g.upper}
        )
    return rows


SHARPNESS_HEADER = (
    "lambda",
    "preS_numeric",
    "preS_bound",
    "S_numeric",
    "S_real_axis",
    "S_paper",
    "S_pointwise",
    "DISCREPANCY",
)


def real_axis_schwarzian_sup(lam: float, r_max: float, samples: int = 20001) -> float:
    """``max_{|r| <= r_max} (1-r^2)^2 |S_{f_lambda}(r)|`` from the real-axis formula."""
    r = np.linspace(-r_max, r_max, samples)
    c = 1.0 + 2.0 * lam
    s = c * (1.0 + (1.0 - 2.0 * lam) / 2.0 * r * r) / (1.0 - r * r) ** 2
    return float(np.max((1.0 - r * r) ** 2 * np.abs(s)))


def sharpness_rows(
    lams: Sequence[float] = DEFAULT_LAMBDAS, grid: GridSpec | None = None, gamma: float | None = None
) -> list[dict[str, Any]]:
    """Numeric norms of the extremal ``f_lambda`` next to the stated constants.

    ``DISCREPANCY`` is set when the numeric Schwarzian norm exceeds
    ``(1+2 lambda)(3-2 lambda)/2`` by more than ``DISCREPANCY_TOL``.
    """
    grid = GridSpec() if grid is None else grid
    rows = []
    for lam in lams:
        f = extremal_ozaki(lam)
        k = theorem_constants(lam, gamma)
        p = norm_of(f, "pre_schwarzian", grid)
        s = norm_of(f, "schwarzian", grid)
        rows.append(
            {
                "lambda": k.lam,
                "preS_numeric": p.value,
                "preS_bound": k.preS,
                "S_numeric": s.value,
                "S_real_axis": real_axis_schwarzian_sup(k.lam, grid.r_max),
                "S_paper": k.S_paper,
                "S_pointwise": float(k.S_pointwise(0.0)),
                "DISCREPANCY": s.value > k.S_paper + DISCREPANCY_TOL,
            }
        )
        if gamma is not None:
            rows[-1]["S_gamma"] = k.S_gamma
    return rows


HARMONIC_HEADER = (
    "beta",
    "t",
    "r0",
    "r0_in_range",
    "m_direct",
    "m_paper",
    "paper_discrepancy",
    "disk_sup",
    "bound",
)


def default_t_grid(n: int = 50, t_max: float = 0.999) -> np.ndarray:
    return np.linspace(0.0, t_max, n)


def harmonic_rows(beta: float, ts: Sequence[float], grid: GridSpec | None = None):
    """Per-``t`` audits plus a summary dict."""
    audits = [mt_audit(beta, float(t), grid) for t in ts]
    rows = [a.to_json() for a in audits]
    m = np.array([a.m_direct for a in audits])
    last = audits[-1]
    summary = {
        "beta": float(beta),
        "bound": 2.0 * beta + 1.0,
        "max_disk_sup": max(a.disk_sup for a in audits),
        "disk_sup_within_bound": all(a.disk_sup <= a.bound + 1e-6 for a in audits),
        "m_direct_nondecreasing": bool(np.all(np.diff(m) >= -1e-12)),
        "t_last": last.t,
        "m_direct_last": last.m_direct,
        "gap_to_limit": last.bound - last.m_direct,
        "paper_formula_disagreements": sum(
            1 for a in audits if a.paper_discrepancy is not None and abs(a.paper_discrepancy) > 1e-9
        ),
    }
    return rows, summary
