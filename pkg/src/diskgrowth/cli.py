"""Command-line interface.

Usage:
    diskgrowth zeros --n 0 --m-max 3 --bc dirichlet
    diskgrowth supnorm --n 20 --m 5 --bc neumann
    diskgrowth exponents --gamma 0 --bc dirichlet --n-max 2000
    diskgrowth table --bc dirichlet
    diskgrowth gallery --gamma 0 --n 25 --n 50 --n 100
    diskgrowth verify --seed 0

Exit codes: 0 success, 1 numerical failure, 2 usage error.
"""

from __future__ import annotations

import functools
import math
import sys
from dataclasses import dataclass, replace
from fractions import Fraction
from pathlib import Path

import click

from . import gallery as gallery_mod
from . import growth, verify as verify_mod
from .bessel import EvalRegime, Limits, bessel_j
from .cache import ZeroCache, default_cache_dir
from .errors import DiskGrowthError
from .modes import DiskMode
from .output import csv_text, json_text, reciprocal_label
from .zeros import MIN_TOL, BoundaryCondition, ModeIndex, zero_table


@dataclass(frozen=True)
class RunConfig:
    tol: float = 1e-12
    n_cap: int = 10_000
    x_cap: float = 1e9
    cache_dir: Path | None = None
    workers: int = 1
    output_format: str = "csv"
    output: str = "-"
    seed: int = 0

    @property
    def limits(self) -> Limits:
        return Limits(self.n_cap, self.x_cap)

    def cache(self):
        return None if self.cache_dir is None else ZeroCache(self.cache_dir, self.tol)


class GammaType(click.ParamType):
    name = "gamma"

    def convert(self, value, param, ctx):
        if isinstance(value, Fraction):
            return value
        try:
            g = Fraction(str(value).strip())
        except (ValueError, ZeroDivisionError):
            self.fail(f"{value!r} is not a rational number such as 3/4 or 0.75", param, ctx)
        if g < 0:
            self.fail("gamma must be >= 0", param, ctx)
        return g


GAMMA = GammaType()
BC = click.Choice([bc.value for bc in BoundaryCondition])


def _emit(cfg: RunConfig, text: str):
    if cfg.output == "-":
        click.echo(text, nl=False)
    else:
        with open(cfg.output, "w", encoding="ascii", newline="") as fh:
            fh.write(text)


def _render(cfg: RunConfig, header, rows, extra=None):
    if cfg.output_format == "json":
        body = {"rows": [{h: r[h] for h in header} for r in rows]}
        if extra is not None:
            body["summary"] = extra
        return json_text(body)
    return csv_text(header, rows)


def _numerical(fn):
    """Map library failures to exit code 1 with a one-line message.

    Also adds a per-command ``-o/--output`` that overrides the global one.
    """

    @click.option("-o", "--output", "command_output", default=None, help="Output file ('-' for stdout).")
    @functools.wraps(fn)
    def wrapper(cfg, *args, command_output=None, **kwargs):
        if command_output is not None:
            cfg = replace(cfg, output=command_output)
        try:
            return fn(cfg, *args, **kwargs)
        except DiskGrowthError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(1)

    return wrapper


@click.group()
@click.option("--tol", type=float, default=1e-12, show_default=True, help="Zero tolerance (>= 1e-13).")
@click.option("--n-cap", type=click.IntRange(min=0), default=10_000, show_default=True)
@click.option("--x-cap", type=float, default=1e9, show_default=True)
@click.option("--cache-dir", type=click.Path(file_okay=False, path_type=Path), default=None,
              help="Zero cache directory (default: $DISKGROWTH_CACHE_DIR or ~/.cache/diskgrowth).")
@click.option("--no-cache", is_flag=True, help="Do not read or write the zero cache.")
@click.option("--workers", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--format", "output_format", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
@click.option("-o", "--output", default="-", help="Output file ('-' for stdout).")
@click.option("--seed", type=int, default=0, show_default=True, help="Seed for randomised checks.")
@click.pass_context
def cli(ctx, tol, n_cap, x_cap, cache_dir, no_cache, workers, output_format, output, seed):
    """Laplace eigenfunctions of the unit disk and the growth of their sup norms."""
    if tol < MIN_TOL:
        raise click.BadParameter(f"must be >= {MIN_TOL:g}", param_hint="--tol")
    if no_cache:
        cache_dir = None
    elif cache_dir is None:
        cache_dir = default_cache_dir()
    ctx.obj = RunConfig(tol, n_cap, x_cap, cache_dir, workers, output_format, output, seed)


@cli.command()
@click.option("--n", "n", type=click.IntRange(min=0), required=True)
@click.option("--m-max", type=click.IntRange(min=1), required=True)
@click.option("--bc", type=BC, default="dirichlet", show_default=True)
@click.pass_obj
@_numerical
def zeros(cfg: RunConfig, n, m_max, bc):
    """First M_MAX zeros k and eigenvalues k^2."""
    table = zero_table(n, m_max, bc, cfg.tol, cache=cfg.cache(), limits=cfg.limits)
    rows = [{"m": e.mode.m, "k": e.k, "lambda": e.eigenvalue} for e in table]
    _emit(cfg, _render(cfg, ["m", "k", "lambda"], rows))


@cli.command(name="eval")
@click.option("--n", "n", type=click.IntRange(min=0), required=True)
@click.option("--x", "xs", type=float, multiple=True, required=True)
@click.option("--regime", type=click.Choice([r.value for r in EvalRegime]), default="auto", show_default=True)
@click.pass_obj
@_numerical
def eval_cmd(cfg: RunConfig, n, xs, regime):
    """J_n at the given arguments."""
    rows = [{"n": n, "x": float(x), "regime": regime,
             "value": float(bessel_j(n, x, regime, limits=cfg.limits))} for x in xs]
    _emit(cfg, _render(cfg, ["n", "x", "regime", "value"], rows))


@cli.command()
@click.option("--n", "n", type=click.IntRange(min=0), required=True)
@click.option("--m", "m", type=click.IntRange(min=1), required=True)
@click.option("--bc", type=BC, default="dirichlet", show_default=True)
@click.pass_obj
@_numerical
def supnorm(cfg: RunConfig, n, m, bc):
    """Sup norm of one eigenfunction and its growth ratio."""
    dm = DiskMode(ModeIndex(n, m, bc), tol=cfg.tol, cache=cfg.cache(), limits=cfg.limits)
    value, _ = dm.sup()
    lam = dm.pair.eigenvalue
    row = {"n": n, "m": m, "k": dm.k, "lambda": lam, "supnorm": value,
           "ratio": math.log(value) / math.log(lam)}
    _emit(cfg, _render(cfg, ["n", "m", "k", "lambda", "supnorm", "ratio"], [row]))


SAMPLE_HEADER = ["n", "m", "k", "lambda", "supnorm", "ratio"]


def _sample_rows(samples):
    return [{"n": s.n, "m": s.m, "k": s.k, "lambda": s.eigenvalue, "supnorm": s.sup_norm,
             "ratio": s.ratio} for s in samples]


@cli.command()
@click.option("--gamma", type=GAMMA, required=True)
@click.option("--bc", type=BC, default="dirichlet", show_default=True)
@click.option("--n-max", type=click.IntRange(min=4), default=2000, show_default=True)
@click.option("--n-min", type=click.IntRange(min=2), default=None,
              help="Lower end of the n-grid (default max(8, n_max/32)).")
@click.option("--budget", type=click.IntRange(min=8), default=growth.DEFAULT_BUDGET, show_default=True)
@click.option("--summary", "summary_path", type=click.Path(dir_okay=False), default=None,
              help="Where to write the JSON summary in csv mode (default: stderr).")
@click.pass_obj
@_numerical
def exponents(cfg: RunConfig, gamma, bc, n_max, n_min, budget, summary_path):
    """Growth ratios along m = floor(n^gamma) and the extrapolated exponent."""
    top = growth.row_n_max(gamma, n_max)
    report = growth.gamma_report(gamma, bc, top, budget=budget, n_min=n_min, tol=cfg.tol,
                                 cache=cfg.cache(), limits=cfg.limits, workers=cfg.workers)
    summary = report.summary()
    _emit(cfg, _render(cfg, SAMPLE_HEADER, _sample_rows(report.samples), summary))
    if cfg.output_format == "csv":
        if summary_path:
            Path(summary_path).write_text(json_text(summary), encoding="ascii")
        else:
            click.echo(json_text(summary), err=True, nl=False)


TABLE_HEADER = [
    "gamma", "status", "n_max", "phi_estimate", "computed", "raw_last",
    "theoretical", "conjectured", "exact", "reference", "lower_ok", "ceiling_ok",
]


def table_rows(rows):
    out = []
    for row in rows:
        rep = row.report
        b = row.bounds
        theo = b.exact if b.exact is not None else b.lower
        out.append({
            "gamma": str(row.gamma),
            "status": row.status,
            "n_max": row.n_max,
            "phi_estimate": rep.phi_estimate if rep else None,
            "computed": reciprocal_label(rep.phi_estimate) if rep else "",
            "raw_last": rep.raw_last if rep else None,
            "theoretical": theo,
            "conjectured": b.conjectured,
            "exact": b.exact,
            "reference": f"1/{row.reference_reciprocal:.2f}" if row.reference_reciprocal else "",
            "lower_ok": rep.lower_ok() if rep else None,
            "ceiling_ok": (not rep.ceiling_violations()) if rep else None,
        })
    return out


@cli.command()
@click.option("--bc", type=BC, default="dirichlet", show_default=True)
@click.option("--n-max", type=click.IntRange(min=4), default=2000, show_default=True)
@click.option("--budget", type=click.IntRange(min=8), default=growth.DEFAULT_BUDGET, show_default=True)
@click.pass_obj
@_numerical
def table(cfg: RunConfig, bc, n_max, budget):
    """Exponent table over the standard gamma values."""
    rows = growth.reproduce_table(bc, n_max, budget=budget, tol=cfg.tol, cache=cfg.cache(),
                                  limits=cfg.limits, workers=cfg.workers)
    _emit(cfg, _render(cfg, TABLE_HEADER, table_rows(rows)))


GALLERY_HEADER = ["n", "m", "k", "alpha", "rho", "interior_sup", "annulus_mass", "annulus_width"]


@cli.command()
@click.option("--gamma", type=GAMMA, required=True)
@click.option("--bc", type=BC, default="dirichlet", show_default=True)
@click.option("--n", "n_list", type=click.IntRange(min=2), multiple=True,
              default=(25, 50, 100, 200, 400), show_default=True)
@click.option("--margin", type=click.FloatRange(0.0, 0.1), default=gallery_mod.DEFAULT_MARGIN, show_default=True)
@click.pass_obj
@_numerical
def gallery(cfg: RunConfig, gamma, bc, n_list, margin):
    """Interior smallness and annulus mass for modes with m = floor(n^gamma) < n."""
    if gamma >= 1:
        raise click.BadParameter("gallery needs gamma < 1", param_hint="--gamma")
    sweep = gallery_mod.decay_sweep(gamma, bc, n_list, margin, tol=cfg.tol, cache=cfg.cache(),
                                    limits=cfg.limits)
    rows = [{"n": p.n, "m": p.mode.m, "k": p.k, "alpha": p.alpha, "rho": p.rho,
             "interior_sup": p.interior_sup, "annulus_mass": p.annulus_mass,
             "annulus_width": p.annulus_width} for p in sweep.profiles]
    _emit(cfg, _render(cfg, GALLERY_HEADER, rows, {"violations": list(sweep.violations)}))
    for note in sweep.violations:
        click.echo(f"warning: {note}", err=True)


@cli.command()
@click.pass_obj
@_numerical
def verify(cfg: RunConfig):
    """Run the invariant suite; exit 1 if any check fails."""
    checks = verify_mod.run_all(cfg.seed)
    rows = [{"check": c.name, "status": "pass" if c.ok else "fail", "detail": c.detail} for c in checks]
    _emit(cfg, _render(cfg, ["check", "status", "detail"], rows))
    if not all(c.ok for c in checks):
        sys.exit(1)


def main():
    cli(prog_name="diskgrowth")


if __name__ == "__main__":
    main()
