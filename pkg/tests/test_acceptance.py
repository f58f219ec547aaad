"""Acceptance gate: one test (and one PASS/FAIL summary line) per criterion part.

Every check runs at the tolerance stated in the acceptance list.  Checks that
fail are left failing; their analysis lives in the decisions ledger.
"""

import math

import numpy as np
import pytest

from conftest import disk_samples, record
from schwarzaudit import series as ps
from schwarzaudit.bounds import (
    distortion_envelope,
    f0_residuals,
    growth_envelope,
    lemma_a_residual,
    theorem_constants,
)
from schwarzaudit.derivatives import (
    big_phi,
    harmonic_pre_schwarzian,
    harmonic_schwarzian,
    numeric_pre_prime,
    pre_schwarzian,
    schwarzian,
    schwarzian_series,
)
from schwarzaudit.errors import PoleInDomain
from schwarzaudit.factory import (
    BlaschkeDescriptor,
    extremal_ozaki,
    make_harmonic,
    mobius_compose,
    named_function,
    random_blaschke,
    random_ozaki_member,
    series_function,
)
from schwarzaudit.norms import GridSpec, becker_functional, norm_of
from schwarzaudit.reports import HARMONIC_HEADER, default_t_grid, harmonic_rows, sharpness_rows, to_csv
from schwarzaudit.series import PowerSeries

LAMBDAS = (0.5, 0.6, 0.7, 0.8, 0.9, 1.0)
AUDIT_GRID = GridSpec(64, 64, r_max=0.9995, refine=False)


def check(criterion, ok, detail):
    record(criterion, bool(ok), detail)
    assert ok, f"{criterion}: {detail}"


# -- 1, 2, 3: sharp witnesses ----------------------------------------------------------


@pytest.mark.parametrize("kind", ["pre_schwarzian", "schwarzian"])
def test_c01_koebe(kind):
    v = norm_of(named_function("koebe"), kind, GridSpec(r_max=0.9995)).value
    check(f"1 koebe {kind} norm in [5.99, 6.0001]", 5.99 <= v <= 6.0001, f"value {v:.9g}")


@pytest.mark.parametrize("kind", ["pre_schwarzian", "schwarzian"])
def test_c02_half_log(kind):
    v = norm_of(named_function("half_log"), kind).value
    check(f"2 half_log {kind} norm = 2 +- 2e-3", abs(v - 2) <= 2e-3, f"value {v:.9g}")


def test_c03_extremal_pre_sweep():
    vals = {lam: norm_of(extremal_ozaki(lam), "pre_schwarzian").value for lam in LAMBDAS}
    err = max(abs(v - (1 + 2 * lam)) for lam, v in vals.items())
    check("3 extremal pre-Schwarzian norm = 1+2 lambda +- 2e-3", err <= 2e-3, f"max error {err:.3g}")


# -- 4, 5, 6: population audits ------------------------------------------------------


def test_c04_membership(population):
    pts = AUDIT_GRID.points()
    lo_ii = lo_iii = math.inf
    for f in population:
        res_ii, res_iii = f0_residuals(f, f.lam, pts)
        lo_ii, lo_iii = min(lo_ii, res_ii.min()), min(lo_iii, res_iii.min())
    ok = lo_ii >= -1e-9 and lo_iii >= -1e-9
    check("4 membership residuals >= -1e-9 (100 members)", ok, f"min res_ii {lo_ii:.3g}, min res_iii {lo_iii:.3g}")


def _pre_norm_excess(members):
    return [norm_of(f, "pre_schwarzian").value - (1 + 2 * f.lam) for f in members]


def test_c05_pre_norm_bound(population):
    excess = _pre_norm_excess(population)
    bad = sum(e > 1e-6 for e in excess)
    check("5 pre-Schwarzian norm <= 1+2 lambda + 1e-6 (100 members)", bad == 0, f"{bad} violators, max excess {max(excess):.4g}")


def test_c05_restricted_to_flat_members(origin_population):
    # informational: the members with phi(0) = 0
    excess = _pre_norm_excess(origin_population)
    bad = sum(e > 1e-6 for e in excess)
    check(
        f"5' same bound, phi(0)=0 members only ({len(origin_population)})",
        bad == 0,
        f"{bad} violators, max excess {max(excess):.3g}",
    )


def test_c06_pointwise_schwarzian(origin_population):
    pts = AUDIT_GRID.points()
    worst, bad, worst_ratio = -math.inf, 0, 0.0
    for f in origin_population:
        lhs = (1 - np.abs(pts) ** 2) ** 2 * np.abs(schwarzian(f, pts))
        rhs = theorem_constants(f.lam).S_pointwise(pts)
        gap = lhs - rhs
        worst = max(worst, gap.max())
        worst_ratio = max(worst_ratio, (lhs / rhs).max())
        bad += gap.max() > 1e-9
    check(
        f"6 (1-|z|^2)^2|S| <= S_pointwise + 1e-9 (phi(0)=0, {len(origin_population)} members)",
        bad == 0,
        f"{bad} violators, max excess {worst:.4g}, max ratio {worst_ratio:.4g}",
    )


def test_c06_big_phi(rng):
    phi = disk_samples(rng, 10_000, 1.0)
    z = disk_samples(rng, 10_000, 1.0)
    m = np.abs(big_phi(phi, z)).max()
    check("6 |Phi| < 1 on 1e4 samples", m < 1, f"max |Phi| {m:.12f}")


# -- 7: Schwarzian discrepancy audit -------------------------------------------------------


def test_c07_schwarzian_audit():
    grid = GridSpec()
    rows = sharpness_rows(LAMBDAS, grid)
    r = np.linspace(-grid.r_max, grid.r_max, 200_001)
    err = 0.0
    for row in rows:
        lam = row["lambda"]
        c = 1 + 2 * lam
        # independent oracle: (1-r^2)^2 |S(r)| = c |1 + (1-2 lambda) r^2 / 2| on the real axis
        oracle = np.max(c * np.abs(1 + (1 - 2 * lam) / 2 * r * r))
        err = max(err, abs(row["S_numeric"] - oracle))
    half = rows[0]["S_numeric"]
    flags_ok = all(row["DISCREPANCY"] == (row["S_numeric"] > row["S_paper"] + 1e-3) for row in rows)
    flagged = [row["lambda"] for row in rows if row["DISCREPANCY"]]
    check("7 numeric S norm vs real-axis oracle within 1e-3", err <= 1e-3, f"max deviation {err:.3g}")
    check("7 S norm at lambda=1/2 = 2 +- 1e-3", abs(half - 2) <= 1e-3, f"value {half:.9g}")
    check("7 report flags every lambda exceeding the stated constant", flags_ok, f"flagged {flagged}")


# -- 8: envelopes ------------------------------------------------------------------------


def _envelope_violations(members, z):
    r = np.abs(z)
    dist_bad = growth_bad = 0
    for f in members:
        d1 = np.abs(f.d1(z))
        val = np.abs(f.value(z))
        dl = np.array([distortion_envelope(f.lam, x).lower for x in r])
        du = np.array([distortion_envelope(f.lam, x).upper for x in r])
        g = [growth_envelope(f.lam, x) for x in r]
        gl = np.array([e.lower for e in g])
        gu = np.array([e.upper for e in g])
        slack = 1e-7
        dist_bad += bool(np.any(d1 < dl * (1 - slack)) or np.any(d1 > du * (1 + slack)))
        growth_bad += bool(np.any(val < gl * (1 - slack)) or np.any(val > gu * (1 + slack)))
    return dist_bad, growth_bad


@pytest.fixture(scope="module")
def envelope_points():
    return disk_samples(np.random.default_rng(8), 200, 0.9)


def test_c08_distortion(population, envelope_points):
    bad, _ = _envelope_violations(population, envelope_points)
    check("8 distortion envelope brackets |f'| (100 members, 200 points)", bad == 0, f"{bad} members violate")


def test_c08_growth(population, envelope_points):
    _, bad = _envelope_violations(population, envelope_points)
    check("8 growth envelope brackets |f| (100 members, 200 points)", bad == 0, f"{bad} members violate")


def test_c08_restricted_to_flat_members(origin_population, envelope_points):
    dist_bad, growth_bad = _envelope_violations(origin_population, envelope_points)
    check(
        f"8' both envelopes, phi(0)=0 members only ({len(origin_population)})",
        dist_bad == 0 and growth_bad == 0,
        f"{dist_bad} distortion / {growth_bad} growth violators",
    )


def test_c08_quadrature():
    row = growth_envelope(0.5, 0.5)
    err = max(abs(row.lower - math.atan(0.5)), abs(row.upper - math.atanh(0.5)))
    check("8 quadrature at lambda=1/2, r=0.5 vs arctan/artanh within 1e-9", err <= 1e-9, f"error {err:.3g}")


# -- 9: lemma_a_residual -----------------------------------------------------------------------------


def test_c09_lemma_a():
    rng = np.random.default_rng(9)
    worst, n = math.inf, 0
    while n < 10_000:
        phi = random_blaschke(rng)
        if phi.degree == 0:
            continue  # unimodular constant, outside |phi| < 1
        z = disk_samples(rng, 1, 1.0)[0]
        worst = min(worst, float(lemma_a_residual(phi, z)))
        n += 1
    check("9 lemma_a_residual >= -1e-10 on 1e4 pairs", worst >= -1e-10, f"min residual {worst:.3g}")


# -- 10: harmonic sharpness ------------------------------------------------------------------


@pytest.fixture(scope="module")
def harmonic_audits():
    return {beta: harmonic_rows(beta, default_t_grid()) for beta in (0.5, 1.0, 2.0)}


def test_c10_disk_sup_bound(harmonic_audits):
    worst = max(row["disk_sup"] - row["bound"] for rows, _ in harmonic_audits.values() for row in rows)
    check("10 disk_sup <= 2 beta + 1 + 1e-6", worst <= 1e-6, f"max excess {worst:.3g}")


def test_c10_monotone(harmonic_audits):
    ok = all(s["m_direct_nondecreasing"] for _, s in harmonic_audits.values())
    check("10 m_direct nondecreasing in t", ok, "beta in {0.5, 1, 2}")


def test_c10_limit(harmonic_audits):
    gaps = {beta: s["gap_to_limit"] for beta, (_, s) in harmonic_audits.items()}
    detail = ", ".join(f"beta={b:g}: gap {g:.4f}" for b, g in gaps.items())
    check("10 m_direct(t=0.999) within 0.05 of 1+2 beta", all(abs(g) <= 0.05 for g in gaps.values()), detail)


def test_c10_discrepancy_reported(harmonic_audits):
    rows, summary = harmonic_audits[1.0]
    text = to_csv(HARMONIC_HEADER, rows)
    ok = "m_paper" in text and "paper_discrepancy" in text and summary["paper_formula_disagreements"] > 0
    check("10 printed-formula vs direct-maximization discrepancy emitted", ok, f"{summary['paper_formula_disagreements']} t values disagree at beta=1")


# -- 11: invariance suite --------------------------------------------------------------------


def test_c11_affine_invariance():
    rng = np.random.default_rng(11)
    worst = 0.0
    for _ in range(10):
        f = random_ozaki_member(rng)
        a, b = complex(*rng.normal(size=2)), complex(*rng.normal(size=2))
        g = mobius_compose(f, a, b, 0, 1)
        z = disk_samples(rng, 10, 0.5)
        worst = max(worst, np.abs(pre_schwarzian(g, z) - pre_schwarzian(f, z)).max())
    check("11 affine invariance of P within 1e-8 (100 points)", worst <= 1e-8, f"max deviation {worst:.3g}")


def test_c11_mobius_invariance():
    rng = np.random.default_rng(12)
    worst, done = 0.0, 0
    while done < 10:
        f = random_ozaki_member(rng)
        a, b, c, d = (complex(*rng.normal(size=2)) for _ in range(4))
        try:
            g = mobius_compose(f, a, b, 0.1 * c, d)
        except PoleInDomain:
            continue
        z = disk_samples(rng, 10, 0.5)
        worst = max(worst, np.abs(schwarzian(g, z) - schwarzian(f, z)).max())
        done += 1
    check("11 Mobius invariance of S within 1e-8 (100 points)", worst <= 1e-8, f"max deviation {worst:.3g}")


def test_c11_cross_pipeline():
    rng = np.random.default_rng(13)
    worst = 0.0
    for _ in range(10):
        f = series_function(random_ozaki_member(rng).series)
        z = disk_samples(rng, 10, 0.5)
        direct = ps.ps_eval(schwarzian_series(f), z)
        numeric = np.array([numeric_pre_prime(f, w) for w in z]) - 0.5 * f.pre(z) ** 2
        worst = max(worst, np.abs(direct - numeric).max())
    check("11 S = P' - P^2/2 across two pipelines within 1e-6", worst <= 1e-6, f"max deviation {worst:.3g}")


def test_c11_harmonic_reduction():
    rng = np.random.default_rng(14)
    z = disk_samples(rng, 100, 0.95)
    ok = True
    for h in (named_function("koebe"), extremal_ozaki(0.8), random_ozaki_member(rng)):
        F = make_harmonic(h, BlaschkeDescriptor.zero())
        ok &= np.array_equal(harmonic_pre_schwarzian(F, z), pre_schwarzian(h, z))
        ok &= np.array_equal(harmonic_schwarzian(F, z), schwarzian(h, z))
    check("11 harmonic operators reduce exactly at omega = 0", ok, "bitwise equality")


# -- 12: Becker functional ------------------------------------------------------------------


def test_c12_becker():
    ident = becker_functional(named_function("identity"))
    small = becker_functional(series_function(PowerSeries.from_coeffs([0, 1, 0.05])))
    half = becker_functional(named_function("half_log"), GridSpec(r_max=0.9999))
    check("12 Becker identity -> 0, univalent", ident.estimate.value == 0 and ident.univalent, ident.verdict)
    check(
        "12 Becker z+0.05z^2 <= 0.05, univalent",
        small.estimate.value <= 0.05 and small.univalent,
        f"value {small.estimate.value:.6g}",
    )
    check(
        "12 Becker half_log = 2 +- 1e-3, inconclusive",
        abs(half.estimate.value - 2) <= 1e-3 and not half.univalent,
        f"value {half.estimate.value:.6g}, {half.verdict}",
    )


# -- 13: series engine ------------------------------------------------------------------------


def test_c13_series_identities():
    rng = np.random.default_rng(15)
    n = 256
    div_err = der_err = exp_err = 0.0
    for _ in range(20):
        a = PowerSeries(rng.normal(size=n + 1) + 1j * rng.normal(size=n + 1))
        b0 = (0.1 + 0.9 * rng.random()) * np.exp(2j * np.pi * rng.random())
        tail = rng.normal(size=n) + 1j * rng.normal(size=n)
        b = PowerSeries(np.concatenate([[b0], 0.5 * abs(b0) * tail / np.abs(tail).sum()]))
        q = ps.ps_div(ps.ps_mul(a, b), b)
        div_err = max(div_err, (np.abs(q.coeffs - a.coeffs) / np.abs(a.coeffs)).max())
        back = ps.ps_derive(ps.ps_integrate(a))
        der_err = max(der_err, (np.abs(back.coeffs - a.coeffs) / np.abs(a.coeffs)).max())
        u = rng.normal(size=(2, n + 1)) + 1j * rng.normal(size=(2, n + 1))
        u = u * rng.random((2, 1)) / np.abs(u).sum(axis=1, keepdims=True)
        x, y = PowerSeries(u[0]), PowerSeries(u[1])
        lhs = ps.ps_exp(x + y)
        exp_err = max(exp_err, np.abs(lhs.coeffs - ps.ps_mul(ps.ps_exp(x), ps.ps_exp(y)).coeffs).max())
        zs = disk_samples(rng, 20, 0.95)
        alpha, beta = complex(*rng.normal(size=2)), complex(*rng.normal(size=2))
        lin = np.abs(ps.ps_eval(ps.ps_linear(a, b, alpha, beta), zs) - (alpha * ps.ps_eval(a, zs) + beta * ps.ps_eval(b, zs)))
    detail = f"div {div_err:.2g}, derive/integrate {der_err:.2g}, exp {exp_err:.2g}"
    ok = div_err <= 1e-10 and der_err <= 1e-14 and exp_err <= 1e-9
    check("13 series ring/inverse identities at N=256", ok, detail)
