"""Command-line front end.

Exit codes: 0 clean, 1 theorem violation found, 2 input error, 3 budget
exceeded.  All output is deterministic: identical inputs give identical
reports.  The TORSOR_BUDGET_SECONDS environment variable caps sweep time.
"""

from __future__ import annotations

import functools
import json
import os
import sys

import click

from .bby import BBYInstance, verify_action_structure, verify_consistency, verify_duality
from .chains import format_orientation, format_signed_chain
from .errors import BudgetExceeded, InputFormatError, TorsorError
from .matroid import RegularMatroid, parse_graph_file, parse_matrix_file
from .planar import parse_plane_graph, planar_signature
from .sandpile import group as sandpile_group
from .signatures import (
    enumerate_signatures,
    format_signature_file,
    is_acyclic,
    is_triangulating,
    parse_signature_file,
    parse_signature_pair,
)
from .sweep import run_sweep


def _time_budget():
    raw = os.environ.get("TORSOR_BUDGET_SECONDS")
    return float(raw) if raw else None


def _handle_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except BudgetExceeded as exc:
            click.echo("budget exceeded: %s" % exc, err=True)
            sys.exit(3)
        except (TorsorError, OSError, ValueError, KeyError) as exc:
            click.echo("error: %s" % exc, err=True)
            sys.exit(2)

    return wrapper


def _load_matroid(path: str, input_format: str) -> RegularMatroid:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    if input_format == "auto":
        input_format = _sniff_format(text)
    if input_format == "matrix":
        return parse_matrix_file(text)
    if input_format == "graph":
        return parse_graph_file(text)
    raise InputFormatError("unknown input format %r" % input_format)


def _sniff_format(text: str) -> str:
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) == 2:
            try:
                int(parts[0])
                int(parts[1])
                return "matrix"
            except ValueError:
                return "graph"
        return "graph"
    raise InputFormatError("empty input file")


def _load_pair(m: RegularMatroid, path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_signature_pair(m, fh.read())


def _parse_arc(m: RegularMatroid, text: str):
    text = text.strip()
    if not text or text[0] not in "+-":
        raise InputFormatError("arc must look like +name or -name")
    name = text[1:]
    if name not in m.ground:
        raise InputFormatError("unknown element %r" % name)
    return (name, 1 if text[0] == "+" else -1)


def _parse_basis(m: RegularMatroid, text: str) -> frozenset:
    names = [part.strip() for part in text.split(",") if part.strip()]
    for name in names:
        if name not in m.ground:
            raise InputFormatError("unknown element %r" % name)
    b = frozenset(names)
    if not m.is_basis(b):
        from .errors import NotABasis

        raise NotABasis(sorted(b))
    return b


def _emit(ctx, table_lines, payload) -> None:
    if ctx.obj["format"] == "json":
        click.echo(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in table_lines:
            click.echo(line)


fmt_option = click.option(
    "--format", "output_format", type=click.Choice(["table", "json"]), default="table",
    help="Output style.",
)
input_format_option = click.option(
    "--input-format", type=click.Choice(["auto", "matrix", "graph"]), default="auto",
    help="How to read the input file (default: sniff).",
)


@click.group()
@fmt_option
@click.pass_context
def cli(ctx, output_format):
    """Sandpile torsor toolkit for regular matroids."""
    ctx.ensure_object(dict)
    ctx.obj["format"] = output_format


@cli.command()
@input_format_option
@click.argument("input_path", type=click.Path(exists=True))
@click.pass_context
@_handle_errors
def bases(ctx, input_format, input_path):
    """List all bases."""
    m = _load_matroid(input_path, input_format)
    rows = [",".join(sorted(b, key=m.ground.index)) for b in m.bases()]
    _emit(ctx, rows, {"bases": rows})


@cli.command()
@input_format_option
@click.option("--signed", is_flag=True, help="Print signed chains instead of supports.")
@click.option("--cocircuits", "use_cocircuits", is_flag=True, help="List cocircuits instead.")
@click.argument("input_path", type=click.Path(exists=True))
@click.pass_context
@_handle_errors
def circuits(ctx, input_format, signed, use_cocircuits, input_path):
    """List circuits (or cocircuits) as supports or signed chains."""
    m = _load_matroid(input_path, input_format)
    chains = m.signed_cocircuits() if use_cocircuits else m.signed_circuits()
    if signed:
        rows = [format_signed_chain(c) for c in chains]
    else:
        rows = [
            ",".join(sorted(c.support(), key=m.ground.index)) for c in chains[::2]
        ]
    _emit(ctx, rows, {"cocircuits" if use_cocircuits else "circuits": rows})


@cli.command("group")
@input_format_option
@click.argument("input_path", type=click.Path(exists=True))
@click.pass_context
@_handle_errors
def group_cmd(ctx, input_format, input_path):
    """Sandpile group invariant factors and order."""
    m = _load_matroid(input_path, input_format)
    g = sandpile_group(m)
    lines = [
        "invariant_factors: %s" % list(g.invariant_factors),
        "order: %d" % g.order,
    ]
    _emit(ctx, lines, {"invariant_factors": list(g.invariant_factors), "order": g.order})


@cli.group()
def signature():
    """Signature tooling: check, enumerate, derive from a plane graph."""


@signature.command("check")
@input_format_option
@click.option("--kind", type=click.Choice(["triangulating", "acyclic"]), required=True)
@click.argument("input_path", type=click.Path(exists=True))
@click.argument("signature_path", type=click.Path(exists=True))
@click.pass_context
@_handle_errors
def signature_check(ctx, input_format, kind, input_path, signature_path):
    """Check a signature file; prints verdicts with certificates."""
    m = _load_matroid(input_path, input_format)
    with open(signature_path, "r", encoding="utf-8") as fh:
        circ, cocirc = parse_signature_file(m, fh.read())
    lines = []
    payload = {}
    for sig in (circ, cocirc):
        if sig is None:
            continue
        if kind == "triangulating":
            ok, witness = is_triangulating(m, sig)
            lines.append("%s: %s" % (sig.kind, str(ok).lower()))
            detail = None
            if witness is not None:
                b1, b2, chain = witness
                detail = {
                    "bases": [sorted(b1), sorted(b2)],
                    "chain": format_signed_chain(chain),
                }
                lines.append("  witness: %s against %s,%s" % (
                    format_signed_chain(chain), ",".join(sorted(b1)), ",".join(sorted(b2))))
            payload[sig.kind] = {"triangulating": ok, "witness": detail}
        else:
            ok, cert = is_acyclic(m, sig)
            lines.append("%s: %s" % (sig.kind, str(ok).lower()))
            lines.append("  %s: %s" % (cert[0], cert[1]))
            payload[sig.kind] = {"acyclic": ok, cert[0]: list(cert[1])}
    _emit(ctx, lines, payload)
    if any(
        not entry.get("triangulating", entry.get("acyclic", True))
        for entry in payload.values()
    ):
        sys.exit(1)


@signature.command("enumerate")
@input_format_option
@click.option("--kind", type=click.Choice(["circuit", "cocircuit"]), default="circuit")
@click.option(
    "--filter", "filter_name", type=click.Choice(["all", "triangulating", "acyclic"]),
    default="all",
)
@click.option("--budget", type=int, default=1 << 20, help="Cap on 2^supports.")
@click.argument("input_path", type=click.Path(exists=True))
@click.pass_context
@_handle_errors
def signature_enumerate(ctx, input_format, kind, filter_name, budget, input_path):
    """Enumerate signatures of one kind, lexicographically."""
    m = _load_matroid(input_path, input_format)
    rows = []
    payload = []
    for i, sig in enumerate(enumerate_signatures(m, kind, filter_name, budget)):
        chains = [format_signed_chain(c) for c in sig.chains()]
        rows.append("%d: %s" % (i, "; ".join(chains)))
        payload.append(chains)
    _emit(ctx, rows, {"kind": kind, "filter": filter_name, "signatures": payload})


@signature.command("from-planar")
@click.argument("embedding_path", type=click.Path(exists=True))
@click.pass_context
@_handle_errors
def signature_from_planar(ctx, embedding_path):
    """Derive the signature pair of a plane graph (counterclockwise cycles,
    cuts oriented away from the root)."""
    with open(embedding_path, "r", encoding="utf-8") as fh:
        pg = parse_plane_graph(fh.read())
    m, pair = planar_signature(pg)
    text = format_signature_file(pair.circuit, pair.cocircuit)
    if ctx.obj["format"] == "json":
        payload = {
            "circuit": [format_signed_chain(c) for c in pair.circuit.chains()],
            "cocircuit": [format_signed_chain(c) for c in pair.cocircuit.chains()],
        }
        click.echo(json.dumps(payload, indent=2, sort_keys=True))
    else:
        click.echo(text, nl=False)


@cli.group()
def bby():
    """Basis-orientation bijection queries."""


@bby.command("map")
@input_format_option
@click.argument("input_path", type=click.Path(exists=True))
@click.argument("signature_path", type=click.Path(exists=True))
@click.pass_context
@_handle_errors
def bby_map(ctx, input_format, input_path, signature_path):
    """Print the basis -> orientation table."""
    m = _load_matroid(input_path, input_format)
    pair = _load_pair(m, signature_path)
    inst = BBYInstance(m, pair)
    rows = []
    payload = {}
    for b in m.bases():
        key = ",".join(sorted(b, key=m.ground.index))
        val = format_orientation(inst.map(b))
        rows.append("%s -> %s" % (key, val))
        payload[key] = val
    _emit(ctx, rows, payload)


@cli.command()
@input_format_option
@click.option("--arc", "arc_text", required=True, help="Signed arc, e.g. +f1.")
@click.option("--basis", "basis_text", required=True, help="Comma-separated basis.")
@click.argument("input_path", type=click.Path(exists=True))
@click.argument("signature_path", type=click.Path(exists=True))
@click.pass_context
@_handle_errors
def act(ctx, input_format, arc_text, basis_text, input_path, signature_path):
    """Act by an arc on a basis; prints the image and the action trace."""
    m = _load_matroid(input_path, input_format)
    pair = _load_pair(m, signature_path)
    inst = BBYInstance(m, pair)
    e, sign = _parse_arc(m, arc_text)
    b = _parse_basis(m, basis_text)
    image = inst.act_arc(e, sign, b)
    trace = inst.action.trace_arc(e, sign, inst.map(b))
    lines = [
        ",".join(sorted(image, key=m.ground.index)),
        "trace: %s" % json.dumps(trace.to_json_dict(), sort_keys=True),
    ]
    _emit(
        ctx,
        lines,
        {
            "image": ",".join(sorted(image, key=m.ground.index)),
            "trace": trace.to_json_dict(),
        },
    )


@cli.command()
@input_format_option
@click.argument(
    "what", type=click.Choice(["consistency", "duality", "structure", "all"])
)
@click.argument("input_path", type=click.Path(exists=True))
@click.argument("signature_path", type=click.Path(exists=True))
@click.option("--arc", "arc_text", default=None, help="Restrict to one arc.")
@click.option("--basis", "basis_text", default=None, help="Restrict to one basis.")
@click.option("--element", "element_text", default=None, help="Restrict to one element.")
@click.option(
    "--report-dir", type=click.Path(), default=None,
    help="Write report.json, summary.csv and figures here.",
)
@click.pass_context
@_handle_errors
def verify(ctx, input_format, what, input_path, signature_path, arc_text, basis_text,
           element_text, report_dir):
    """Verify consistency, duality and action structure; exit 1 on violation."""
    m = _load_matroid(input_path, input_format)
    pair = _load_pair(m, signature_path)
    inst = BBYInstance(m, pair)
    payload = {"matroid_hash": inst.matroid_hash(), "signature_hash": inst.signature_hash()}
    lines = []
    bad = False
    if what in ("consistency", "all"):
        arcs = [_parse_arc(m, arc_text)] if arc_text else None
        bases_ = [_parse_basis(m, basis_text)] if basis_text else None
        elements = [element_text] if element_text else None
        rep = verify_consistency(inst, arcs=arcs, bases=bases_, elements=elements)
        payload.update(rep.to_json_dict())
        lines.append("consistency: %s (%d triples)" % (rep.status, rep.triples_checked))
        bad = bad or rep.status != "ok"
        if report_dir:
            from .report import write_consistency_report

            write_consistency_report(rep, report_dir)
    if what in ("duality", "all"):
        ok, witnesses = verify_duality(inst)
        payload["duality"] = {"ok": ok, "witnesses": [repr(w) for w in witnesses]}
        lines.append("duality: %s" % ("ok" if ok else "violation"))
        bad = bad or not ok
    if what in ("structure", "all"):
        ok, witnesses, traces = verify_action_structure(inst)
        payload["structure"] = {
            "ok": ok,
            "traces": len(traces),
            "witnesses": [repr(w) for w in witnesses],
        }
        lines.append("structure: %s (%d traces)" % ("ok" if ok else "violation", len(traces)))
        bad = bad or not ok
    payload["status"] = "violation" if bad else "ok"
    lines.append("status: %s" % payload["status"])
    _emit(ctx, lines, payload)
    if bad:
        sys.exit(1)


@cli.command()
@click.option("--max-edges", type=int, default=5, show_default=True)
@click.option("--include-r10/--no-include-r10", default=True, show_default=True)
@click.option("--r10-pairs", is_flag=True, help="Also run torsor checks on the r10 generic pair.")
@click.option("--pair-budget", type=int, default=4096, show_default=True,
              help="Enumerate acyclic pairs only above this pair count.")
@click.option(
    "--report-dir", type=click.Path(), default=None,
    help="Write report.json, summary.csv and figures here.",
)
@click.pass_context
@_handle_errors
def sweep(ctx, max_edges, include_r10, r10_pairs, pair_budget, report_dir):
    """Exhaustive verification over all small connected multigraphs."""
    report = run_sweep(
        max_edges=max_edges,
        include_r10=include_r10,
        pair_budget=pair_budget,
        time_budget=_time_budget(),
        r10_pair_checks=r10_pairs,
    )
    if report_dir:
        from .report import write_sweep_report

        write_sweep_report(report, report_dir)
    lines = [
        "instances: %d" % len(report.instances),
        "pairs checked: %d" % report.pairs_checked(),
        "violations: %d" % len(report.violations()),
        "status: %s" % report.status,
    ]
    _emit(ctx, lines, report.to_json_dict())
    if report.status != "ok":
        sys.exit(1)


def main():
    cli(prog_name="torsor")


if __name__ == "__main__":
    main()
