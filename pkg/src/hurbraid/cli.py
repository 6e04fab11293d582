"""Command line interface (``hb``)."""
from __future__ import annotations

import json
import logging
import sys
from pathlib import Path

import click

from .affine import format_group_text
from .catalog import CATALOG, catalog_names
from .classes import class_table

CONTEXT = {"help_option_names": ["-h", "--help"]}


def _group(ref):
    from .pipeline import resolve_group

    try:
        return resolve_group(ref)
    except KeyError as exc:
        raise click.BadParameter(str(exc)) from None


def _parse_type(text, table):
    from .ramification import RamificationType

    try:
        return RamificationType.parse(text, table)
    except KeyError as exc:
        raise click.BadParameter(str(exc)) from None


def _images(T):
    return [[int(v) + 1 for v in x] for x in T]


@click.group(context_settings=CONTEXT)
@click.option("-v", "--verbose", count=True, help="More logging (repeatable).")
@click.version_option(package_name="artifact")
def main(verbose):
    """Braid orbits on Nielsen classes of affine primitive groups."""
    level = logging.WARNING - 10 * min(verbose, 2)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")


@main.command("list-catalog")
@click.option("--degree", type=int, default=None)
def list_catalog(degree):
    """List built-in groups."""
    for name in catalog_names(degree):
        e = CATALOG[name]
        flag = "" if e.matched else "  (unmatched)"
        click.echo(f"{e.degree:>4}  {name:<22} order {e.order}{flag}")


@main.command("show-group")
@click.argument("name")
def show_group(name):
    """Print a group in group-file format plus basic data."""
    label, AG = _group(name)
    click.echo(format_group_text(AG.spec), nl=False)
    click.echo(f"# degree {AG.degree}, order {AG.order()}")
    if label in CATALOG and CATALOG[label].note:
        click.echo(f"# {CATALOG[label].note}")


@main.command()
@click.argument("group")
@click.option("--powers", is_flag=True, help="Also print the power maps.")
def classes(group, powers):
    """Label table: label, order, centralizer, index, fix count."""
    _, AG = _group(group)
    T = class_table(AG)
    cols = ["label", "order", "centralizer", "index", "fix", "size"]
    click.echo("\t".join(cols + (["powers"] if powers else [])))
    for c in T.classes:
        row = [c.label, c.order, c.centralizer_order, c.index, c.fix_count, c.class_size]
        if powers:
            row.append(" ".join(f"^{k}={v}" for k, v in sorted(c.power_map.items())))
        click.echo("\t".join(str(v) for v in row))
    amb = T.label_ambiguous()
    if amb:
        click.echo(f"# labels fixed only up to symmetry: {' '.join(sorted(amb, key=T.position))}")


@main.command()
@click.argument("group")
@click.option("--genus", type=int, default=1, show_default=True)
@click.option("--r-max", type=int, default=None)
@click.option("--sc/--no-sc", default=True, help="Compute structure constants for kept types.")
def types(group, genus, r_max, sc):
    """Riemann-Hurwitz types with filter verdicts (CSV)."""
    import csv

    from .ramification import (enumerate_types, minus_identity_filter, scott_data,
                               scott_filter, structure_constant)

    _, AG = _group(group)
    T = class_table(AG)
    data = scott_data(AG, T)
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["type", "rh_sum", "scott_sum", "status", "structure_constant"])
    for ty in enumerate_types(T, AG.degree, genus, r_max=r_max):
        ok, why = scott_filter(ty, data, AG.e)
        if ok:
            ok, why = minus_identity_filter(ty, data, AG.p, AG.e)
        const = structure_constant(ty, T) if (ok and sc) else ""
        status = "kept" if ok else f"dropped: {why}"
        w.writerow([str(ty), ty.rh_sum, sum(data[l].d for l in ty.entries), status, const])


@main.command("check-type")
@click.argument("group")
@click.argument("rtype")
@click.option("--max-seeds", type=int, default=20, show_default=True)
def check_type(group, rtype, max_seeds):
    """Generation test for one type (JSON)."""
    from .tuples import ClassCache, ResourceCap, find_triples, generates, product_one_classes

    _, AG = _group(group)
    T = class_table(AG)
    ty = _parse_type(rtype, T)
    cache = ClassCache(T)
    seeds, status = [], "no"
    try:
        if ty.r == 3:
            seeds = [t.elements for t in find_triples(ty.entries, T, cache)]
        else:
            pos = T.type_positions(ty.entries)
            seeds = [X for X in product_one_classes(T, pos, cache, max_nodes=2_000_000)
                     if generates(T.group, X)]
        status = "yes" if seeds else "no"
    except (ResourceCap, MemoryError):
        status = "unknown"
    out = {"group": AG.name, "type": str(ty), "generating": status, "triples": len(seeds),
           "seeds": [_images(X) for X in seeds[:max_seeds]]}
    click.echo(json.dumps(out))


@main.command()
@click.argument("group")
@click.argument("rtype")
@click.option("--engine", type=click.Choice(["direct", "projection-fiber"]), default="direct",
              show_default=True)
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json",
              show_default=True)
@click.option("--max-forms", type=int, default=5_000_000, show_default=True)
@click.option("--budget", type=int, default=1_000_000, show_default=True,
              help="Braid move budget for resolving q > 1 (projection-fiber).")
def orbits(group, rtype, engine, fmt, max_forms, budget):
    """Braid orbits of one type."""
    from .braid import braid_orbits, triple_orbits

    _, AG = _group(group)
    T = class_table(AG)
    ty = _parse_type(rtype, T)
    from .tuples import ResourceCap

    reports = None
    try:
        if engine == "direct":
            c = triple_orbits(ty.entries, T) if ty.r == 3 else braid_orbits(ty.entries, T,
                                                                            max_forms=max_forms)
        else:
            from .fiber import ProjectionFiber, projection_fiber_census

            pf = ProjectionFiber(AG, T)
            c, reps, m_type = projection_fiber_census(AG, ty.entries, pf, budget=budget,
                                                      max_forms=max_forms)
            reports = {"quotient_type": "(" + ",".join(m_type) + ")",
                       "lifts": [r.summary() for r in reps]}
    except ResourceCap as exc:
        raise click.ClickException(f"resource cap hit: {exc} (raise --max-forms)") from None
    if fmt == "json":
        out = dict(c.summary(), group=AG.name, engine=engine)
        if reports:
            out.update(reports)
        click.echo(json.dumps(out, indent=1, default=int))
    else:
        click.echo("group,type,engine,orbits,lengths,wall_time,forms_stored,certified")
        lengths = " ".join(str(x) for x in c.lengths)
        click.echo(f'"{AG.name}","{ty}",{engine},{c.count},{lengths},{c.wall_time:.3f},'
                   f"{c.forms_stored},{c.certified}")


def _run_options(f):
    opts = [
        click.option("--degree", type=int, required=True),
        click.option("--genus", type=int, default=1, show_default=True),
        click.option("--group", "groups", multiple=True,
                     help="Catalog name or group file; repeatable. Default: all shipped groups "
                          "of the degree with nontrivial second derived subgroup."),
        click.option("--engine", type=click.Choice(["auto", "direct", "projection-fiber"]),
                     default="auto", show_default=True),
        click.option("--r-max", type=int, default=None),
        click.option("--workers", type=int, default=1, show_default=True),
        click.option("--cache-dir", default=None,
                     help="Cache root (default: $HURBRAID_CACHE; no caching if unset)."),
        click.option("--stretch", is_flag=True, help="Lift the default resource caps."),
        click.option("--max-forms", type=int, default=2_000_000, show_default=True),
        click.option("--quotient-forms", type=int, default=500_000, show_default=True,
                     help="Projection-fiber: cap on tuple classes in the quotient G/V."),
    ]
    for o in reversed(opts):
        f = o(f)
    return f


def _config(degree, genus, groups, engine, r_max, workers, cache_dir, stretch, max_forms,
            quotient_forms):
    from .pipeline import RunConfig

    return RunConfig(degree=degree, genus=genus, groups=list(groups) or None, engine=engine,
                     r_max=r_max, workers=workers, cache_dir=cache_dir, stretch=stretch,
                     max_forms=max_forms, quotient_forms=quotient_forms)


@main.command()
@_run_options
@click.option("--out", "out", type=click.Path(file_okay=False), default=None,
              help="Directory for census.<ext>; stdout if omitted.")
@click.option("--format", "fmt", type=click.Choice(["csv", "json", "md"]), default="csv",
              show_default=True)
@click.option("--quiet", "-q", is_flag=True)
def run(out, fmt, quiet, **kw):
    """Full census for one degree and genus."""
    from .pipeline import emit_table, run_pipeline

    cfg = _config(**kw)
    census = run_pipeline(cfg, progress=None if quiet else (lambda m: click.echo(m, err=True)))
    if out:
        Path(out).mkdir(parents=True, exist_ok=True)
        path = Path(out) / f"census.{fmt}"
        emit_table(census, fmt, path)
        click.echo(f"wrote {path}", err=True)
    else:
        click.echo(emit_table(census, fmt), nl=False)
    totals = " ".join(f"r={r}:{v}" for r, v in census.totals_by_r().items())
    click.echo(f"total {census.total} components ({totals}); unknown rows "
               f"{len(census.unknown_rows)}", err=True)


def _fixture_path(ref):
    from .pipeline import builtin_fixture

    p = Path(ref)
    if p.exists():
        return p
    digits = "".join(ch for ch in ref if ch.isdigit())
    if digits and builtin_fixture(int(digits)).exists():
        return builtin_fixture(int(digits))
    raise click.BadParameter(f"no fixture {ref!r} (give a path or e.g. 'degree9')")


@main.command()
@click.option("--fixture", "fixture", required=True,
              help="Fixture CSV path, or a built-in name such as degree9.")
@click.option("--census", "census_path", required=True, type=click.Path(exists=True))
@click.option("--no-relabel", is_flag=True, help="Compare labels literally.")
def diff(fixture, census_path, no_relabel):
    """Compare an emitted census with a fixture; exit code 1 on any difference."""
    from .pipeline import diff_against_fixture, load_fixture, read_census

    try:
        rows = load_fixture(_fixture_path(fixture))
    except ValueError as exc:
        raise click.ClickException(str(exc)) from None
    census = read_census(census_path)
    rep = diff_against_fixture(census, rows, relabel=not no_relabel)
    click.echo(rep.format_text())
    sys.exit(0 if rep.ok else 1)


@main.command()
@_run_options
@click.option("--out", "out", type=click.Path(file_okay=False), required=True)
@click.option("--fixture", default=None, help="Fixture to diff against (default: built-in, if any).")
def report(out, fixture, **kw):
    """Census CSV, figures and a markdown summary in one directory."""
    from .pipeline import (builtin_fixture, diff_against_fixture, emit_table, load_fixture,
                           run_pipeline)
    from .plotting import write_figures

    cfg = _config(**kw)
    census = run_pipeline(cfg, progress=lambda m: click.echo(m, err=True))
    outdir = Path(out)
    outdir.mkdir(parents=True, exist_ok=True)
    emit_table(census, "csv", outdir / "census.csv")
    emit_table(census, "json", outdir / "census.json")
    figs = write_figures(census, outdir)
    lines = [f"# Census: degree {census.degree}, genus {census.genus}", ""]
    lines.append(f"Groups: {', '.join(census.groups)}")
    lines.append("")
    lines.append("| r | components |")
    lines.append("|---|---|")
    for r, v in census.totals_by_r().items():
        lines.append(f"| {r} | {v} |")
    lines.append(f"| total | {census.total} |")
    lines.append("")
    if census.unknown_rows:
        lines.append(f"Unknown rows: {len(census.unknown_rows)}")
        lines.append("")
    odd = census.connectivity_exceptions()
    lines.append(f"Rows with r >= 5 and more than one orbit: {len(odd)}")
    lines += [f"- {w.group} {w.type}: {w.n_orbits} orbits" for w in odd]
    lines.append("")
    fx = Path(fixture) if fixture else builtin_fixture(census.degree)
    if fx.exists():
        rep = diff_against_fixture(census, load_fixture(fx))
        lines += ["## Fixture comparison", "", "```", rep.format_text(), "```", ""]
    lines += ["## Table", "", emit_table(census, "md")]
    lines += [f"![{p.stem}]({p.name})" for p in figs]
    (outdir / "report.md").write_text("\n".join(lines) + "\n", encoding="utf-8")
    click.echo(f"wrote {outdir / 'census.csv'}, {len(figs)} figures, report.md", err=True)


if __name__ == "__main__":
    main()
