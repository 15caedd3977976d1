"""Invariant suite behind ``diskgrowth verify``.

Each check returns a :class:`Check`; none raises on a failed property, so
one run reports everything. Random sampling is driven by a single seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import bessel, gallery, growth, zeros
from .modes import DiskMode
from .output import csv_text, parse_csv
from .zeros import BoundaryCondition, ModeIndex


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str


def check_recurrence(rng=None) -> Check:
    worst = 0.0
    xs = np.geomspace(0.5, 1e4, 400)
    for n in range(1, 101):
        lo = bessel.bessel_j(n - 1, xs)
        mid = bessel.bessel_j(n, xs)
        hi = bessel.bessel_j(n + 1, xs)
        scale = np.maximum(np.abs(lo), np.abs(hi))
        err = np.abs(lo + hi - 2 * n / xs * mid) / scale
        worst = max(worst, float(np.max(err)))
    return Check("recurrence", worst <= 1e-9, f"max relative residual {worst:.3g}")


def check_bounds(rng=None) -> Check:
    bad = 0
    total = 0
    for n in range(1, 101):
        t = bessel.krasikov_threshold(n)
        xs = np.linspace(t, 1e4, 1001)[1:]
        j = bessel.bessel_j(n, xs)
        bad += int(np.sum(j * j > bessel.krasikov_bound(n, xs)))
        bad += int(np.sum(np.abs(j) > bessel.landau_bound(n)))
        total += 2 * xs.size
    return Check("landau_krasikov", bad == 0, f"{bad} violations in {total} comparisons")


def check_meissel(rng=None) -> Check:
    worst_one = worst_two = 0.0
    for n in (50, 100, 200, 400):
        for z in np.linspace(0.1, 0.9, 17):
            ref = bessel.bessel_j(n, n * z)
            approx = bessel.meissel_one(n, z)
            if ref == 0.0:  # below the double range: both must underflow
                worst_one = max(worst_one, 0.0 if approx < 1e-300 else 1.0)
                continue
            worst_one = max(worst_one, abs(approx - ref) / abs(ref))
        for z in np.linspace(1.2, 3.0, 19):
            ref = bessel.bessel_j(n, n * z)
            worst_two = max(worst_two, abs(bessel.meissel_two(n, z) - ref))
    ok = worst_one <= 1e-2 and worst_two <= 1e-2
    return Check("meissel", ok, f"I: max rel {worst_one:.3g}; II: max abs {worst_two:.3g}")


def check_jacobi(rng=None) -> Check:
    bad = 0
    for n in (0, 1, 2, 5, 10, 30):
        for x in np.geomspace(bessel.jacobi_threshold(n) * 1.001, 1e8, 40):
            approx = bessel.jacobi_asym(n, float(x))
            if abs(approx.value - bessel.bessel_j(n, float(x))) > approx.error_term:
                bad += 1
    return Check("jacobi_error_term", bad == 0, f"{bad} points outside the reported error")


def check_derivative(rng=None) -> Check:
    worst = 0.0
    for n in (0, 1, 2, 7, 20, 60):
        for x in (0.3, 1.7, 5.5, 13.0, 40.0, 250.0):
            h = 1e-5 * max(1.0, x)
            f = lambda t: bessel.bessel_j(n, t)
            fd = (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h)
            d = bessel.bessel_j_prime(n, x)
            worst = max(worst, abs(fd - d) / max(abs(d), 1e-6 * abs(f(x))))
    return Check("derivative_fd", worst <= 1e-6, f"max relative gap {worst:.3g}")


def check_interlacing(rng=None, n_max=50, m_max=100) -> Check:
    bad = []
    shared = 0
    for n in range(0, n_max + 1):
        bad += [(n, m) for m in zeros.interlacing_violations(n, m_max)]
        ks = np.array([e.k for e in zeros.zero_table(n, m_max)])
        shared += int(np.sum(np.abs(bessel.bessel_j(n + 1, ks)) == 0.0))
    return Check("interlacing", not bad and not shared,
                 f"{len(bad)} interlacing failures, {shared} shared zeros")


def check_residuals(rng=None) -> Check:
    worst = 0.0
    for n in (0, 1, 5, 20, 50):
        for bc in BoundaryCondition:
            for e in zeros.zero_table(n, 100, bc):
                r = abs(zeros.target(n, bc, e.k)) / zeros.residual_scale(n)
                worst = max(worst, r)
    return Check("zero_residual", worst < 1e-9, f"max scaled residual {worst:.3g}")


def check_brackets(rng, count=1000) -> Check:
    bad = 0
    for _ in range(count):
        n = int(rng.integers(0, 200))
        m = int(rng.integers(1, 300))
        bc = BoundaryCondition.DIRICHLET if rng.random() < 0.5 else BoundaryCondition.NEUMANN
        br = zeros.estimate_bracket(n, m, bc)
        if zeros.target(n, bc, br.lower) * zeros.target(n, bc, br.upper) > 0:
            bad += 1
    return Check("bracket_certification", bad == 0, f"{bad} of {count} brackets lack a sign change")


def _random_modes(rng, count, n_max=50, m_max=50):
    out = []
    for _ in range(count):
        bc = BoundaryCondition.DIRICHLET if rng.random() < 0.5 else BoundaryCondition.NEUMANN
        out.append(ModeIndex(int(rng.integers(0, n_max + 1)), int(rng.integers(1, m_max + 1)), bc))
    return out


def check_normalisation(rng, count=40) -> Check:
    worst = max(abs(DiskMode(mi).mass() - 1.0) for mi in _random_modes(rng, count))
    return Check("l2_normalisation", worst < 1e-6, f"max |norm - 1| {worst:.3g}")


def check_orthogonality(rng, count=20) -> Check:
    worst = 0.0
    for _ in range(count):
        n = int(rng.integers(0, 51))
        m1, m2 = rng.choice(np.arange(1, 51), size=2, replace=False)
        bc = BoundaryCondition.DIRICHLET if rng.random() < 0.5 else BoundaryCondition.NEUMANN
        a, b = DiskMode(ModeIndex(n, int(m1), bc)), DiskMode(ModeIndex(n, int(m2), bc))
        worst = max(worst, abs(a.inner(b)))
    return Check("orthogonality", worst < 1e-6, f"max |<F, G>| {worst:.3g}")


def check_boundary(rng, count=20) -> Check:
    worst_d = worst_n = 0.0
    for mi in _random_modes(rng, count):
        dm = DiskMode(mi)
        if mi.bc is BoundaryCondition.DIRICHLET:
            worst_d = max(worst_d, abs(dm.radial(1.0)) / dm.norm_const)
        else:
            h = 1e-6
            fd = (dm.radial(1.0 - 2 * h) - 4 * dm.radial(1.0 - h) + 3 * dm.radial(1.0)) / (2 * h)
            worst_n = max(worst_n, abs(fd) / (dm.norm_const * dm.k))
    ok = worst_d < 1e-9 and worst_n < 1e-6
    return Check("boundary_condition", ok, f"dirichlet {worst_d:.3g}, neumann slope {worst_n:.3g}")


def check_sup_grid(rng, count=50) -> Check:
    worst = 0.0
    grid = np.linspace(0.0, 1.0, 100_001)
    for mi in _random_modes(rng, count):
        dm = DiskMode(mi)
        value, _ = dm.sup()
        dense = float(np.max(np.abs(dm.radial(grid))))
        worst = max(worst, abs(value - dense) / value)
    return Check("sup_vs_grid", worst <= 1e-6, f"max relative gap {worst:.3g}")


def check_extremum_dominance(rng=None) -> Check:
    bad = []
    for n in range(0, 101):
        ks = np.array([e.k for e in zeros.zero_table(n, 50, BoundaryCondition.NEUMANN)])
        vals = np.abs(bessel.bessel_j(n, ks))
        if not np.all(np.diff(vals) < 0):
            bad.append(n)
    return Check("extremum_dominance", not bad, f"fails for n in {bad}" if bad else "holds for n <= 100")


def check_estimator(rng=None) -> Check:
    lam = np.exp(np.array([10.0, 20.0, 40.0, 80.0]))
    samples = [growth.ExponentSample(0, 0, 0.0, float(l), 0.0, 0.2 + 1.0 / math.log(l)) for l in lam]
    err = abs(growth.estimate_phi(samples) - 0.2)
    return Check("estimator_synthetic", err <= 1e-9, f"intercept error {err:.3g}")


def check_growth_bounds(rng=None, n_max=2000) -> Check:
    notes = []
    for bc in BoundaryCondition:
        for row in growth.reproduce_table(bc, n_max):
            if row.status != "ok":
                notes.append(f"{bc.value} gamma={row.gamma} skipped")
                continue
            rep = row.report
            if not rep.lower_ok():
                notes.append(f"{bc.value} gamma={row.gamma} phi {rep.phi_estimate:.4f} < lower - 0.02")
            if rep.ceiling_violations():
                notes.append(f"{bc.value} gamma={row.gamma} ratio above 0.27")
    return Check("bound_dominance", not notes, "; ".join(notes) or "all table paths within bounds")


def check_gamma0_convergence(rng=None) -> Check:
    path = growth.build_path(0, 2000, "dirichlet", n_min=64)
    gaps = [abs(s.ratio - 1 / 6) for s in growth.exponent_samples(path)]
    ok = all(b < a for a, b in zip(gaps, gaps[1:]))
    return Check("gamma0_monotone", ok, "gaps " + ", ".join(f"{g:.4f}" for g in gaps))


def check_table_roundtrip(rng=None) -> Check:
    rows = [{"gamma": "1/2", "phi_estimate": v} for v in (1 / 3, 0.1 + 0.2, math.pi / 17, 5e-324)]
    back = parse_csv(csv_text(["gamma", "phi_estimate"], rows))
    ok = all(a["phi_estimate"] == b["phi_estimate"] for a, b in zip(rows, back))
    return Check("table_roundtrip", ok, "17-digit values reparse bit-for-bit" if ok else "mismatch")


def check_gallery(rng=None) -> list[Check]:
    sweep = gallery.decay_sweep(0, "dirichlet", (25, 50, 100, 200, 400))
    defect = max(gallery.mass_defect(p) for p in sweep.profiles)
    fit = gallery.fit_exponential_decay(sweep.profiles)
    return [
        Check("gallery_mass_conservation", defect <= 1e-6, f"max defect {defect:.3g}"),
        Check("gallery_monotone", sweep.ok, "; ".join(sweep.violations) or "monotone"),
        Check("gallery_exponential_fit", fit.rate > 0 and fit.r_squared > 0.99,
              f"c = {fit.rate:.4g}, R^2 = {fit.r_squared:.4f}"),
    ]


CHECKS = (
    check_recurrence, check_bounds, check_meissel, check_jacobi, check_derivative,
    check_residuals, check_interlacing, check_brackets, check_normalisation, check_orthogonality,
    check_boundary, check_sup_grid, check_extremum_dominance, check_estimator,
    check_growth_bounds, check_gamma0_convergence, check_table_roundtrip, check_gallery,
)


def run_all(seed: int = 0) -> list[Check]:
    rng = np.random.default_rng(seed)
    out: list[Check] = []
    for fn in CHECKS:
        res = fn(rng)
        out.extend(res if isinstance(res, list) else [res])
    return out

