"""Command-line front door: build families, evaluate F, run verification
suites, and export covers and arcs as CSV/JSON/SVG artifacts."""

from __future__ import annotations

import json
import sys
from fractions import Fraction
from pathlib import Path

import click

from . import bonding, cache, dynamics, invlimit
from .cantor import build_family, point_membership
from .errors import CacheError, GillabError
from .exact import rat

EXIT_VERIFY_FAILED = 1
EXIT_CACHE = 3

DEFAULT_LEVEL = 2
DEFAULT_BUDGET = 56
DEFAULT_STAGE = 8
DEFAULT_CEILING = 15


def _config_options(fn):
    fn = click.option("--level", type=int, default=DEFAULT_LEVEL,
                      show_default=True, help="Dyadic grid level.")(fn)
    fn = click.option("--budget", type=int, default=DEFAULT_BUDGET,
                      show_default=True,
                      help="Endpoints scheduled per intermediate set.")(fn)
    fn = click.option("--stage", type=int, default=DEFAULT_STAGE,
                      show_default=True, help="Cover refinement depth.")(fn)
    fn = click.option("--mode", type=click.Choice(["zero", "tent"]),
                      default="zero", show_default=True,
                      help="Base map mode.")(fn)
    fn = click.option("--seed", type=int, default=0, show_default=True,
                      help="Seed for sampled checks.")(fn)
    fn = click.option("--cache-dir", type=click.Path(path_type=Path),
                      envvar="GILLAB_CACHE", default=None,
                      help="Family cache directory (env GILLAB_CACHE).")(fn)
    return fn


def _build(level: int, budget: int):
    return build_family(level, budget, DEFAULT_CEILING)


def _map(mode: str, fam) -> bonding.SetValuedMap:
    return bonding.make_map(mode, fam)


def _emit(obj) -> None:
    click.echo(json.dumps(obj, sort_keys=True, indent=2))


def _config_obj(**kw) -> dict:
    return {k: (str(v) if isinstance(v, Path) else v)
            for k, v in sorted(kw.items()) if v is not None}


@click.group()
def main():
    """Exact-arithmetic lab for a nested Cantor family, its set-valued
    bonding map, and the resulting generalized inverse limit."""


# ---------------------------------------------------------------------------
# family


@main.group()
def family():
    """Build or inspect the cached dyadic family."""


@family.command("build")
@_config_options
def family_build(level, budget, stage, mode, seed, cache_dir):
    """Build the family and write its cover cache."""
    if cache_dir is None:
        raise click.UsageError("family build needs --cache-dir or GILLAB_CACHE")
    fam = _build(level, budget)
    path = cache.save_family(fam, stage, cache_dir)
    _emit({"built": True, "cacheFile": str(path),
           "members": [str(r) for r in fam.grid()], "stages": stage})


@family.command("inspect")
@_config_options
def family_inspect(level, budget, stage, mode, seed, cache_dir):
    """Print per-member stage covers and a nesting audit from the cache."""
    if cache_dir is None:
        raise click.UsageError("family inspect needs --cache-dir or GILLAB_CACHE")
    try:
        fam = cache.load_family(level, budget, cache_dir, DEFAULT_CEILING)
    except CacheError as ex:
        click.echo(f"cache error: {ex}", err=True)
        sys.exit(EXIT_CACHE)
    report = {
        "members": {str(r): {
            "describe": fam.member(r).describe(),
            "covers": [fam.member(r).stage(d).to_text()
                       for d in range(stage + 1)]}
            for r in fam.grid()},
        "nesting": fam.check_nesting(range(stage + 1)),
    }
    _emit(report)
    if not report["nesting"]["ok"]:
        sys.exit(EXIT_VERIFY_FAILED)


# ---------------------------------------------------------------------------
# eval


@main.command("eval")
@click.argument("t")
@_config_options
def cmd_eval(t, level, budget, stage, mode, seed, cache_dir):
    """Certified bracket for F(T) at an exact rational T."""
    try:
        point = rat(t)
    except (ValueError, ZeroDivisionError):
        raise click.UsageError(f"not a rational: {t!r}")
    if point < 0 or point > 1:
        raise click.UsageError("T must lie in [0, 1]")
    fam = _build(level, budget)
    fb = bonding.eval_F(_map(mode, fam), point, level, stage)
    _emit({"t": str(point), "singleton": fb.is_singleton,
           "pointValue": str(fb.point_value) if fb.is_singleton else None,
           "lowerMax": str(fb.lower_max), "upperMax": str(fb.upper_max)})


# ---------------------------------------------------------------------------
# verify


def _canned_threads(m: bonding.SetValuedMap) -> list[invlimit.Thread]:
    mk, cyc = invlimit.make_thread, dynamics.make_cycle
    return [
        mk(m, None, cyc(m, 2), 0),
        mk(m, Fraction(0), cyc(m, 1), 2),
        mk(m, Fraction(1, 16), cyc(m, 2), 1),
        mk(m, Fraction(1, 16), cyc(m, 3), 3),
        mk(m, Fraction(1, 2), cyc(m, 4), 1),
    ]


def _load_threads(m, threads_file) -> list[invlimit.Thread]:
    if threads_file is None:
        return _canned_threads(m)
    data = json.loads(Path(threads_file).read_text())
    return [invlimit.Thread.from_json_obj(obj) for obj in data]


def _suite_nesting(fam, m, stage, seed, threads):
    return fam.check_nesting(range(stage + 1))


def _suite_endpoints(fam, m, stage, seed, threads):
    failures = []
    checked = 0
    for src in (Fraction(0), Fraction(1, 2)):
        if src not in fam.members:
            continue
        for e in fam.member(src).endpoints(50):
            for r in fam.grid():
                if r <= src:
                    continue
                checked += 1
                verdict = point_membership(fam.member(r), e.point, 12)
                if not verdict.is_out:
                    failures.append({"source": str(src), "target": str(r),
                                     "verdict": verdict.verdict})
    return {"checked": checked, "failures": failures, "ok": not failures}


def _suite_usc(fam, m, stage, seed, threads):
    usc = bonding.check_usc(m, 200, stage, seed=seed)
    pts = [e.point for e in fam.c1.endpoints(50)]
    weak = bonding.check_weak_continuity(m, pts, 12)
    return {"usc": usc, "weak_continuity": weak,
            "ok": usc["ok"] and weak["ok"]}


def _suite_ivp(fam, m, stage, seed, threads):
    return bonding.check_ivp_consistency(m, 64, seed=seed)


def _suite_light(fam, m, stage, seed, threads):
    zero = bonding.check_light(bonding.make_map("zero", fam), 16, stage)
    tent = bonding.check_light(bonding.make_map("tent", fam), 16, stage)
    ok = zero["ok"] and tent["ok"] and not zero["light"] and tent["light"]
    return {"zero": zero, "tent": tent, "ok": ok}


def _suite_cycles(fam, m, stage, seed, threads, max_period=12):
    reports = []
    ok = True
    for n in range(1, max_period + 1):
        rep = dynamics.verify_cycle(m, dynamics.make_cycle(m, n))
        reports.append({"period": n, "ok": rep["ok"],
                        "least_rotation_period": rep["least_rotation_period"]})
        ok = ok and rep["ok"]
    return {"cycles": reports, "ok": ok}


def _suite_arcs(fam, m, stage, seed, threads):
    reports = []
    ok = True
    for i, th in enumerate(threads):
        valid = invlimit.verify_thread(m, th)
        entry = {"thread": th.to_json_obj(), "valid": valid["ok"]}
        if th.is_zero:
            entry["arc_chain"] = "rejected (zero thread)"
        else:
            n_tail = invlimit.tail_index(th)
            entry["tail_index"] = n_tail
            sysm = invlimit.make_arc_system(m, th, max(6, n_tail))
            chain = invlimit.verify_arc_chain(sysm, max(6, n_tail))
            entry["arc_chain_ok"] = chain["ok"]
            ok = ok and chain["ok"]
        ok = ok and valid["ok"]
        reports.append(entry)
    return {"threads": reports, "ok": ok}


def _suite_treelike(fam, m, stage, seed, threads):
    return invlimit.check_treelike_hypotheses(m, stage)


def _suite_interior(fam, m, stage, seed, threads):
    return bonding.check_empty_interior(m, list(range(stage + 1)))


SUITES = {
    "nesting": _suite_nesting,
    "endpoints": _suite_endpoints,
    "usc": _suite_usc,
    "ivp": _suite_ivp,
    "light": _suite_light,
    "cycles": _suite_cycles,
    "arcs": _suite_arcs,
    "treelike": _suite_treelike,
    "interior": _suite_interior,
}


@main.command("verify")
@click.argument("suite", type=click.Choice(sorted(SUITES) + ["all"]))
@_config_options
@click.option("--max-period", type=int, default=12, show_default=True,
              help="Largest cycle period for the cycles suite.")
@click.option("--threads-file", type=click.Path(exists=True, path_type=Path),
              default=None, help="JSON list of threads for the arcs suite.")
def cmd_verify(suite, level, budget, stage, mode, seed, cache_dir,
               max_period, threads_file):
    """Run a verification suite; exit 0 iff every check passes."""
    fam = _build(level, budget)
    m = _map(mode, fam)
    threads = _load_threads(m, threads_file)
    names = sorted(SUITES) if suite == "all" else [suite]
    results = {}
    ok = True
    for name in names:
        if name == "cycles":
            rep = _suite_cycles(fam, m, stage, seed, threads, max_period)
        else:
            rep = SUITES[name](fam, m, stage, seed, threads)
        results[name] = rep
        ok = ok and rep["ok"]
    _emit({"config": _config_obj(level=level, budget=budget, stage=stage,
                                 mode=mode, seed=seed, suite=suite,
                                 maxPeriod=max_period),
           "suites": results, "ok": ok})
    if not ok:
        sys.exit(EXIT_VERIFY_FAILED)


# ---------------------------------------------------------------------------
# export


def _svg_boxes(boxes, size=1000):
    lines = [f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {size} {size}">',
             f'<rect width="{size}" height="{size}" fill="white"/>']
    for xb, yb in boxes:
        # rationals are rounded only here, at the final pixel mapping
        x = round(float(xb.lo) * size, 2)
        w = round(float(xb.width) * size, 2)
        y = round((1 - float(yb.hi)) * size, 2)
        h = round(float(yb.width) * size, 2)
        lines.append(f'<rect x="{x}" y="{y}" width="{w}" height="{h}" '
                     f'fill="steelblue" fill-opacity="0.5" stroke="navy" '
                     f'stroke-width="0.3"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


@main.command("export")
@click.argument("kind", type=click.Choice(["graph", "mahavier", "arc", "cantor"]))
@_config_options
@click.option("--format", "fmt", type=click.Choice(["csv", "json", "svg"]),
              default="csv", show_default=True)
@click.option("--out", type=click.Path(path_type=Path), default=None,
              help="Output path (default: stdout).")
@click.option("--member", default="1/2", show_default=True,
              help="Family index for cantor export.")
@click.option("--n", "n_coords", type=int, default=2, show_default=True,
              help="Last coordinate index for mahavier export.")
@click.option("--arc-n", type=int, default=1, show_default=True,
              help="Arc index for arc export.")
@click.option("--coords", default="0,1", show_default=True,
              help="Comma-separated coordinate pair for arc export.")
@click.option("--threads-file", type=click.Path(exists=True, path_type=Path),
              default=None, help="JSON list of threads; first is exported.")
def cmd_export(kind, level, budget, stage, mode, seed, cache_dir, fmt, out,
               member, n_coords, arc_n, coords, threads_file):
    """Emit a cover, arc projection, or member set as a file artifact."""
    fam = _build(level, budget)
    m = _map(mode, fam)
    if kind == "graph":
        cover = m.graph_cover(stage, level)
        if fmt == "svg":
            text = _svg_boxes(cover.boxes)
        elif fmt == "json":
            text = json.dumps({"stage": stage, "level": level, "boxes": [
                [str(xb.lo), str(xb.hi), str(yb.lo), str(yb.hi)]
                for xb, yb in cover.boxes]}, sort_keys=True, indent=2) + "\n"
        else:
            text = "\n".join(cover.csv_rows()) + "\n"
    elif kind == "mahavier":
        cover = invlimit.mahavier_cover(m, n_coords, stage, level)
        if fmt != "csv":
            raise click.UsageError("mahavier export supports only csv")
        text = "\n".join(cover.csv_rows()) + "\n"
    elif kind == "arc":
        threads = _load_threads(m, threads_file)
        th = next(t for t in threads if not t.is_zero)
        sysm = invlimit.make_arc_system(m, th, max(6, invlimit.tail_index(th)))
        try:
            i, j = (int(c) for c in coords.split(","))
        except ValueError:
            raise click.UsageError("--coords must look like 0,1")
        params = invlimit.arc_params(sysm, arc_n)
        pts = invlimit.arc_points(sysm, arc_n, params, (i, j))
        rows = [f"param,coord_{i},coord_{j}"]
        rows += [f"{t},{a},{b}" for t, a, b in pts]
        text = "\n".join(rows) + "\n"
    else:
        try:
            r = rat(member)
            gen = fam.member(r)
        except (ValueError, KeyError):
            raise click.UsageError(f"unknown family index {member!r}")
        text = gen.stage(stage).to_text() + "\n"
    if out is None:
        click.echo(text, nl=False)
    else:
        Path(out).write_text(text)
        click.echo(f"wrote {out}")


def run() -> None:
    try:
        main(standalone_mode=True)
    except CacheError as ex:
        click.echo(f"cache error: {ex}", err=True)
        sys.exit(EXIT_CACHE)
    except GillabError as ex:
        click.echo(f"error: {ex}", err=True)
        sys.exit(EXIT_VERIFY_FAILED)


if __name__ == "__main__":
    run()
