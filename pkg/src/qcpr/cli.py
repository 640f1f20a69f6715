"""Command-line front end.

    qcpr verify  --rank 1 --t 7/10 --suite all --format json
    qcpr compute scal --rank 2 --t 1
    qcpr report  --ranks 1,2 --t-grid 1,7/10,3/5

Exit codes: 0 when every asserted item is ZERO/PASS, 1 on any FAIL or
INCONCLUSIVE, 2 on a configuration error.  The environment variable
QCPR_MAX_COLUMNS caps the number of word columns the zero-testing engine may
allocate; past it a check degrades to INCONCLUSIVE instead of exhausting memory.
"""

from __future__ import annotations

import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import click

from .certificates import Certificate, dump, exit_code
from .qscalar import QContext, make_context, qnum, to_fraction, to_mpq

SUITE_CHOICES = ("matrix", "calculus", "curvature", "classical", "experiments", "all")
ENV_COLUMNS = "QCPR_MAX_COLUMNS"


class ConfigError(click.UsageError):
    exit_code = 2


@dataclass(frozen=True)
class RunConfig:
    rank: int
    t: Fraction
    suite: str = "all"
    max_degree: int | None = None
    fmt: str = "text"
    jobs: int = 1
    max_columns: int | None = None

    def context(self) -> QContext:
        return make_context(self.rank, self.t)

    def suites(self) -> list[str]:
        if self.suite != "all":
            return [self.suite]
        names = ["matrix", "calculus", "curvature"]
        if self.t == 1:
            names.append("classical")
        names.append("experiments")
        return names


def parse_t(text: str) -> Fraction:
    try:
        t = Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"--t expects an exact fraction such as 7/10, got {text!r}") from exc
    if t == 0:
        raise ConfigError("--t must be nonzero")
    return t


def _env_columns() -> int | None:
    raw = os.environ.get(ENV_COLUMNS)
    if not raw:
        return None
    try:
        v = int(raw)
    except ValueError as exc:
        raise ConfigError(f"{ENV_COLUMNS} must be an integer, got {raw!r}") from exc
    if v <= 0:
        raise ConfigError(f"{ENV_COLUMNS} must be positive")
    return v


def make_config(rank, t, suite="all", max_degree=None, fmt="text", jobs=1) -> RunConfig:
    if rank is None or rank < 1:
        raise ConfigError("--rank must be a positive integer")
    tt = parse_t(t) if isinstance(t, str) else Fraction(t)
    if tt == 0:
        raise ConfigError("--t must be nonzero")
    if suite not in SUITE_CHOICES:
        raise ConfigError(f"unknown suite {suite!r}")
    if suite == "classical" and tt != 1:
        raise ConfigError("the classical suite runs at t = 1 only")
    if max_degree is not None and max_degree < 1:
        raise ConfigError("--max-degree must be positive")
    if jobs < 1:
        raise ConfigError("--jobs must be at least 1")
    return RunConfig(rank, tt, suite, max_degree, fmt, jobs, _env_columns())


# ---------------------------------------------------------------------------
# running suites


def _geometry(cfg: RunConfig):
    from .geometry import Geometry
    return Geometry(cfg.context(), max_columns=cfg.max_columns, max_degree=cfg.max_degree)


def _guarded(name, fn):
    from .relations import SpanBudgetExceeded
    try:
        return fn()
    except SpanBudgetExceeded as exc:
        return [Certificate(f"{name}.budget", "suite ran within the column budget", "INCONCLUSIVE",
                            payload={"error": str(exc), "hint": f"raise {ENV_COLUMNS}"})]


def _run_one(cfg: RunConfig, name: str) -> list[Certificate]:
    if name == "matrix":
        # no quotient needed, so skip building the relation engine
        from .braiding import build_S_operators, build_mixed_braidings, verify_matrix_identities
        ctx = cfg.context()
        bs = build_mixed_braidings(ctx)
        return verify_matrix_identities(ctx, bs, build_S_operators(ctx, bs))
    from .geometry import run_suite
    return _guarded(name, lambda: run_suite(name, _geometry(cfg)))


def run_verify(cfg: RunConfig) -> list[Certificate]:
    names = cfg.suites()
    if cfg.jobs > 1 and len(names) > 1:
        with ProcessPoolExecutor(max_workers=min(cfg.jobs, len(names))) as pool:
            parts = list(pool.map(_run_one, [cfg] * len(names), names))
    else:
        # one geometry shared by the engine-backed tiers
        from .geometry import run_suite
        parts = []
        geo = None
        for name in names:
            if name == "matrix":
                parts.append(_run_one(cfg, name))
                continue
            geo = geo or _geometry(cfg)
            parts.append(_guarded(name, lambda: run_suite(name, geo)))
    certs = [c for part in parts for c in part]
    return sorted(certs, key=lambda c: c.item)


# ---------------------------------------------------------------------------
# scalar values


def scalar_table(ctx: QContext) -> dict:
    """Scalars computed from the definitions next to the stated closed forms.

    The computed side uses only weight data and the two Ricci component
    constants at the symmetric splitter; the stated side is the closed form.
    """
    from .geometry import closed_form_scalars, einstein_c
    tp = ctx.tp
    aa, o2r = ctx.w.alpha_sq, ctx.w.omega_2rho
    qd = ctx.qdim()
    tr = qd * (ctx.q_o2r() + 1 / ctx.q_o2r()) - 2
    c = einstein_c(ctx)
    k = -c * tp(aa) * qd
    # the +- component constant agrees with the -+ one exactly at this c
    assert k == -(1 - c) * tp(-2 * o2r) * qd
    cf = closed_form_scalars(ctx)
    return {
        "qdim": (to_fraction(qd), cf["qdim"]),
        "trace_g": (to_fraction(tr), cf["trace_g"]),
        "k": (to_fraction(k), cf["k"]),
        "scal": (to_fraction(k * tr), cf["scal"]),
    }


def classical_values(r: int) -> dict:
    """Stated values at t = 1."""
    return {"qdim": Fraction(r + 1), "trace_g": Fraction(2 * r), "k": Fraction(-(r + 1)),
            "scal": Fraction(-2 * r * (r + 1))}


def report_rows(ranks, grid) -> list[dict]:
    rows = []
    for r in ranks:
        cl = classical_values(r)
        for t in grid:
            ctx = make_context(r, t)
            tab = scalar_table(ctx)
            row = {"r": r, "t": str(t), "q": str(to_fraction(ctx.q))}
            for name, (got, stated) in tab.items():
                row[f"{name}_computed"] = str(got)
                row[f"{name}_closed_form"] = str(stated)
                row[f"{name}_classical"] = str(cl[name])
                row[f"{name}_match"] = got == stated
            row["match"] = all(row[f"{k}_match"] for k in tab)
            rows.append(row)
    return rows


def _format_rows(rows, fmt):
    if fmt == "json":
        return json.dumps(rows, indent=2, sort_keys=True) + "\n"
    import csv
    import io
    if not rows:
        return ""
    cols = list(rows[0])
    buf = io.StringIO()
    if fmt == "csv":
        w = csv.DictWriter(buf, cols)
        w.writeheader()
        w.writerows(rows)
        return buf.getvalue()
    width = {c: max(len(c), *(len(str(r[c])) for r in rows)) for c in cols}
    buf.write("  ".join(c.ljust(width[c]) for c in cols) + "\n")
    for r in rows:
        buf.write("  ".join(str(r[c]).ljust(width[c]) for c in cols) + "\n")
    return buf.getvalue()


# ---------------------------------------------------------------------------
# click commands

_rank = click.option("--rank", type=int, required=True, help="r, the complex dimension")
_t = click.option("--t", "t", default="1", show_default=True, help="base parameter t as NUM/DEN; q = t^(r+1)")
_fmt = click.option("--format", "fmt", type=click.Choice(["json", "csv", "text"]), default="text",
                    show_default=True)
_maxdeg = click.option("--max-degree", type=int, default=None, help="upper bound on the total degree D")


@click.group()
@click.version_option(package_name="artifact")
def main():
    """Exact verification of the quantum Riemannian geometry of CP_q^r."""


@main.command()
@_rank
@_t
@click.option("--suite", type=click.Choice(SUITE_CHOICES), default="all", show_default=True)
@_maxdeg
@_fmt
@click.option("--jobs", type=int, default=1, show_default=True, help="worker processes, one suite each")
def verify(rank, t, suite, max_degree, fmt, jobs):
    """Run the identity suites and emit one certificate per item."""
    cfg = make_config(rank, t, suite, max_degree, fmt, jobs)
    certs = run_verify(cfg)
    click.echo(dump(certs, fmt))
    code = exit_code(certs)
    if any(c.status == "INCONCLUSIVE" and c.asserted for c in certs):
        click.echo("some items are INCONCLUSIVE: raise --max-degree or "
                   f"{ENV_COLUMNS} and rerun", err=True)
    sys.exit(code)


@main.command()
@click.argument("obj", metavar="OBJECT", type=click.Choice(["metric", "ricci", "scal", "qdim", "k"]))
@_rank
@_t
@_maxdeg
@click.option("--certify/--no-certify", default=False,
              help="for k and scal, also prove the values in the quotient")
def compute(obj, rank, t, max_degree, certify):
    """Print exact values or element dumps.

    For k and scal both numbers are printed: the one that follows from the
    Ricci definition and the stated closed form.  They differ by a factor 2.
    """
    cfg = make_config(rank, t, max_degree=max_degree)
    ctx = cfg.context()
    if obj == "qdim":
        click.echo(str(to_fraction(qnum(ctx, ctx.n))))
        sys.exit(0)
    if obj in ("k", "scal"):
        got, stated = scalar_table(ctx)[obj]
        click.echo(f"from_definition {got}")
        click.echo(f"closed_form     {stated}")
        code = 0
        if certify:
            from .geometry import stated_vs_derived
            geo = _geometry(cfg)
            ric = geo.ricci()
            derived, stated_m = to_mpq(got), to_mpq(stated)
            if obj == "k":
                elem, unit = ric, geo.g
            else:
                elem, unit = geo.pairing(ric), geo.scalar_elem(1)
            certs = [geo.check(f"{obj}.from_definition", f"{obj} element - {got} = 0",
                               elem - unit.scale(derived)),
                     stated_vs_derived(geo, f"{obj}.closed_form", f"{obj} element - {stated} = 0",
                                       elem, unit, stated_m, derived)]
            click.echo(dump(certs, "text"))
            code = exit_code(certs)
        sys.exit(code)
    geo = _geometry(cfg)
    if obj == "metric":
        click.echo("g = g+- + g-+")
        click.echo(geo.g.dump())
        sys.exit(0)
    ric = geo.ricci()
    click.echo(ric.dump())
    got = to_mpq(scalar_table(ctx)["k"][0])
    cert = geo.check("ricci.einstein", "Ricci - k' g = 0", ric - geo.g.scale(got),
                     k_derived=to_fraction(got))
    click.echo(dump([cert], "text"))
    sys.exit(exit_code([cert]))


@main.command()
@click.option("--ranks", default="1,2", show_default=True, help="comma-separated ranks")
@click.option("--t-grid", default="1,7/10,3/5", show_default=True, help="comma-separated t values")
@_fmt
def report(ranks, t_grid, fmt):
    """Computed scalars against closed forms and classical values on a t grid."""
    try:
        rs = [int(x) for x in ranks.split(",") if x.strip()]
    except ValueError as exc:
        raise ConfigError(f"bad --ranks {ranks!r}") from exc
    if any(r < 1 for r in rs):
        raise ConfigError("ranks must be positive")
    grid = [parse_t(x) for x in t_grid.split(",") if x.strip()]
    click.echo(_format_rows(report_rows(rs, grid), fmt), nl=False)
    sys.exit(0)


if __name__ == "__main__":  # pragma: no cover
    main()
