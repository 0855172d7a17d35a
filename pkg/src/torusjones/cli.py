"""Command-line front end.

Exit codes: 0 success, 2 invalid input, 3 a resource cap was hit.
"""

from __future__ import annotations

import csv
import io
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor

import click

from . import catalog
from .diagram import DiagramError, TorusDiagram, load_json
from .qalgebra import RootOfUnity
from .skein import jT_su2
from .statesum import DEFAULT_MAX_ENTRIES, InvariantResult, ResourceLimitError, jhat_framed, jT, jT_multi
from .weave import convergence_csv, gl_upper_bound, weave_fast

INPUT_ERROR = 2
RESOURCE_ERROR = 3
FLAVORS = ("sl2", "sl2-framed", "sl2-multi", "su2")


class _Fail(click.ClickException):
    def __init__(self, message: str, code: int) -> None:
        super().__init__(message)
        self.exit_code = code


def _int_list(text: str) -> list[int]:
    try:
        values = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise _Fail(f"expected a comma-separated list of integers, got {text!r}", INPUT_ERROR) from None
    if not values:
        raise _Fail("empty integer list", INPUT_ERROR)
    return values


def _load(link: str | None, path: str | None) -> TorusDiagram:
    if (link is None) == (path is None):
        raise _Fail("give exactly one of --link and --diagram", INPUT_ERROR)
    try:
        return catalog.get(link).diagram if link else load_json(path)
    except KeyError as exc:
        raise _Fail(str(exc.args[0]), INPUT_ERROR) from None
    except (DiagramError, ValueError, OSError) as exc:
        raise _Fail(str(exc), INPUT_ERROR) from None


def _evaluate(
    d: TorusDiagram, n: int, r: int, flavor: str, colors: list[int] | None, precision: str, cap: int
) -> InvariantResult:
    q = RootOfUnity(r, precision)
    if flavor == "sl2":
        return jT(d, n, q, max_entries=cap)
    if flavor == "sl2-framed":
        return jhat_framed(d, _color_map(d, n, colors), q, max_entries=cap)
    if flavor == "sl2-multi":
        return jT_multi(d, _color_map(d, n, colors), q, max_entries=cap)
    return jT_su2(d, n, q)


def _color_map(d: TorusDiagram, n: int, colors: list[int] | None) -> dict[int, int] | int:
    if colors is None:
        return n
    comps = d.component_ids()
    if len(colors) != len(comps):
        raise ValueError(f"{len(colors)} colors given for {len(comps)} components")
    return dict(zip(comps, colors))


def _guarded(fn, *args):
    try:
        return fn(*args)
    except ResourceLimitError as exc:
        raise _Fail(str(exc), RESOURCE_ERROR) from None
    except (ValueError, DiagramError) as exc:
        raise _Fail(str(exc), INPUT_ERROR) from None


@click.group()
@click.version_option(package_name="torusjones")
def main() -> None:
    """Colored Jones invariants of links in the thickened torus."""


@main.command()
@click.option("--link", help="Catalog entry name.")
@click.option("--diagram", "path", type=click.Path(dir_okay=False), help="Diagram JSON file.")
@click.option("--n", "n", type=int, default=2, show_default=True, help="Color (dimension of the representation).")
@click.option("--r", "r", type=int, default=None, help="Root order; q = exp(2 pi i / r). Defaults to n.")
@click.option("--flavor", type=click.Choice(FLAVORS), default="sl2", show_default=True)
@click.option("--colors", default=None, help="Per-component colors a,b,c for sl2-multi / sl2-framed.")
@click.option("--format", "fmt", type=click.Choice(["text", "json", "csv"]), default="text", show_default=True)
@click.option("--precision", type=click.Choice(["double", "extended"]), default="double", show_default=True)
@click.option("--max-tensor-entries", "cap", type=int, default=DEFAULT_MAX_ENTRIES, show_default=True)
def invariant(link, path, n, r, flavor, colors, fmt, precision, cap) -> None:
    """Evaluate one invariant; prints value, |value| and (2 pi / r) ln |value|."""
    d = _load(link, path)
    cols = _int_list(colors) if colors else None
    r = r if r is not None else n
    top = max(cols) if cols else n
    if n < 1 or r < 1 or r < top or cap < 1:
        raise _Fail(f"need n >= 1, r >= max color and a positive cap (n={n}, r={r})", INPUT_ERROR)
    res = _guarded(_evaluate, d, n, r, flavor, cols, precision, cap)
    value = complex(res.value)
    record = {
        "flavor": res.flavor,
        "n": res.n,
        "r": res.r,
        "real": value.real,
        "imag": value.imag,
        "abs": abs(value),
        "normalized_log": res.normalized_log,
        "writhe": res.writhe_total,
    }
    if fmt == "json":
        click.echo(json.dumps(record, sort_keys=True))
    elif fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(record), lineterminator="\n")
        writer.writeheader()
        writer.writerow(record)
        click.echo(buf.getvalue(), nl=False)
    else:
        click.echo(f"value          {value.real:.12g} {value.imag:+.12g}i")
        click.echo(f"abs            {abs(value):.12g}")
        click.echo(f"normalized_log {res.normalized_log:.10f}")


@main.command()
@click.option("--links", default="B,ell,green_2_1", show_default=True, help="Comma-separated catalog names.")
@click.option("--n", "ns", default="10,20", show_default=True, help="Comma-separated colors; r = n.")
@click.option("--threads", type=int, default=1, show_default=True)
@click.option("--precision", type=click.Choice(["double", "extended"]), default="double", show_default=True)
@click.option("--max-tensor-entries", "cap", type=int, default=DEFAULT_MAX_ENTRIES, show_default=True)
def table(links, ns, threads, precision, cap) -> None:
    """Normalized logs at q = exp(2 pi i / n) next to reference volumes.

    CSV columns: link, n, normalized_log, volume, target (blank when none).
    """
    names = [x.strip() for x in links.split(",") if x.strip()]
    colors = _int_list(ns)
    entries = []
    for name in names:
        try:
            entries.append(catalog.get(name))
        except KeyError as exc:
            raise _Fail(str(exc.args[0]), INPUT_ERROR) from None
    if threads < 1:
        raise _Fail("--threads must be positive", INPUT_ERROR)
    jobs = [(e, n) for e in entries for n in colors]

    def work(job):
        e, n = job
        return _guarded(_evaluate, e.diagram, n, n, "sl2", None, precision, cap).normalized_log

    # rows come back in submission order whatever the thread count
    with ThreadPoolExecutor(max_workers=threads) as pool:
        logs = list(pool.map(work, jobs))
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["link", "n", "normalized_log", "volume", "target"])
    for (e, n), value in zip(jobs, logs):
        vol = catalog.VOLUME_REFERENCE.get(e.name)
        target = next((t.normalized_log for t in e.targets if t.n == n), None)
        writer.writerow([
            e.name,
            n,
            f"{value:.10f}",
            "" if vol is None else f"{vol:.6f}",
            "" if target is None else f"{target:.4f}",
        ])
    click.echo(buf.getvalue(), nl=False)


@main.command()
@click.option("--link", default="W", show_default=True)
@click.option("--n", "ns", default="50,100,200,400", show_default=True, help="Comma-separated colors; r = n.")
@click.option("--precision", type=click.Choice(["double", "extended"]), default="double", show_default=True)
@click.option("--max-tensor-entries", "cap", type=int, default=DEFAULT_MAX_ENTRIES, show_default=True)
def converge(link, ns, precision, cap) -> None:
    """Normalized logs along a sequence of n at r = n.

    W uses the closed-form weave sum, other links the state sum.  CSV
    columns: n, value_log, normalized_log, target, gap = target - normalized_log.
    """
    colors = _int_list(ns)
    if link == "W":
        click.echo(convergence_csv(weave_fast(n) for n in colors), nl=False)
        return
    try:
        entry = catalog.get(link)
    except KeyError as exc:
        raise _Fail(str(exc.args[0]), INPUT_ERROR) from None
    target = catalog.VOLUME_REFERENCE.get(link, gl_upper_bound(len(entry.diagram.crossings)))
    rows = []
    for k, n in enumerate(colors):
        try:
            res = _evaluate(entry.diagram, n, n, "sl2", None, precision, cap)
        except ResourceLimitError as exc:
            rest = ",".join(map(str, colors[k:]))
            click.echo(f"warning: stopped before n={rest}: {exc}", err=True)
            break
        mag = abs(res.value)
        rows.append((n, math.log(mag) if mag > 0 else -math.inf))
    click.echo(convergence_csv(rows, target), nl=False)


@main.command()
@click.option("--only", default=None, help="Comma-separated check families.")
@click.option("--n", "ns", default="2,3,4", show_default=True, help="Colors used by the cabling checks.")
def verify(only, ns) -> None:
    """Cross-check the independent evaluation routes; exit 0 iff every check passes."""
    from .checks import FAMILIES, run_checks

    families = [x.strip() for x in only.split(",")] if only else None
    if families and any(f not in FAMILIES for f in families):
        raise _Fail(f"unknown family in {only!r}; choose from {', '.join(FAMILIES)}", INPUT_ERROR)
    failures = total = 0
    for result in run_checks(families, _int_list(ns)):
        total += 1
        failures += not result.ok
        click.echo(result.line())
    click.echo(f"{total - failures}/{total} checks passed")
    sys.exit(1 if failures else 0)


if __name__ == "__main__":
    main()
