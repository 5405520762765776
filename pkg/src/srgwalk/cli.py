"""Command-line interface.

Graph arguments are graph6 files (one graph per line) or built-in
pseudo-paths such as ``builtin:shrikhande`` or ``builtin:paley:13``.

Exit codes: 0 success, 1 a compared pair was distinguished, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .certificate import DEFAULT_T, MULTI_TIMES, batch_min_delta, compare, default_workers
from .evolution import spectrum
from .expansion import DEFAULT_T as EXPAND_T
from .expansion import DEFAULT_U as EXPAND_U
from .expansion import MAX_ORDER, OP4_WORDS, exact_delta, per_order_delta, series_csv
from .graph import Graph, ParameterError, SrgParams, build_named, detect_srg
from .graph6 import Graph6Error, encode_graph6, iter_graph6_lines
from .hamiltonians import WALK_KINDS, walk_hamiltonian
from .tables import boson_table, fermion_table, verify_tables

EXIT_OK, EXIT_DISTINGUISHED, EXIT_INPUT = 0, 1, 2
BUILTIN = "builtin:"


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    inputs: list[str]
    kind: str = "hardcore"
    t: tuple[float, ...] = (DEFAULT_T,)
    u: float = 0.0
    threshold: float | None = None
    workers: int = 1
    out: str | None = None
    format: str = "json"
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "kind": self.kind,
            "t": list(self.t),
            "u": self.u,
            "threshold": self.threshold,
            "workers": self.workers,
            "format": self.format,
            **self.extra,
        }


@dataclass
class NamedGraph:
    id: str
    graph: Graph

    def header(self) -> dict:
        return {"id": self.id, "n": self.graph.n, "sha256": self.graph.content_hash()}


def load_graphs(source: str) -> list[NamedGraph]:
    if source.startswith(BUILTIN):
        name, _, param = source[len(BUILTIN):].partition(":")
        try:
            g = build_named(name, int(param) if param else None)
        except ValueError as e:
            raise InputError(str(e)) from None
        return [NamedGraph(source, g)]
    try:
        data = Path(source).read_bytes()
    except OSError as e:
        raise InputError(f"cannot read {source}: {e.strerror or e}") from None
    try:
        graphs = [NamedGraph(f"{source}:{lineno}", g) for lineno, g in iter_graph6_lines(data)]
    except Graph6Error as e:
        raise InputError(f"{source}: {e}") from None
    if not graphs:
        raise InputError(f"{source}: no graphs")
    return graphs


def load_one(source: str) -> NamedGraph:
    graphs = load_graphs(source)
    if len(graphs) != 1:
        raise InputError(f"{source}: expected exactly one graph, found {len(graphs)}")
    return graphs[0]


def _envelope(cfg: RunConfig, graphs: list[NamedGraph], result) -> dict:
    return {
        "tool": {"name": "srgwalk", "version": __version__},
        "config": cfg.to_dict(),
        "graphs": [g.header() for g in graphs],
        "result": result,
    }


def _csv_header(cfg: RunConfig, graphs: list[NamedGraph]) -> str:
    lines = [f"# srgwalk {__version__}", "# config: " + json.dumps(cfg.to_dict(), sort_keys=True)]
    lines += [f"# graph {g.id} n={g.graph.n} sha256={g.graph.content_hash()}" for g in graphs]
    return "\n".join(lines) + "\n"


def _emit(cfg: RunConfig, text: str):
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)


def _emit_json(cfg: RunConfig, graphs, result):
    _emit(cfg, json.dumps(_envelope(cfg, graphs, result), indent=2) + "\n")


def _params_dict(p: SrgParams | None):
    return None if p is None else dict(zip(("n", "k", "lambda", "mu"), p.astuple()))


# --- commands ----------------------------------------------------------------


def cmd_parse(cfg: RunConfig) -> int:
    graphs = [g for source in cfg.inputs for g in load_graphs(source)]
    result = []
    for ng in graphs:
        g = ng.graph
        deg = g.degrees()
        result.append(
            {
                "id": ng.id,
                "n": g.n,
                "edges": len(g.edges()),
                "degree_min": int(deg.min()),
                "degree_max": int(deg.max()),
                "graph6": encode_graph6(g).decode("ascii"),
                "adjacency": [list(map(int, row.nonzero()[0])) for row in g.adjacency],
            }
        )
    _emit_json(cfg, graphs, result)
    return EXIT_OK


def cmd_check_srg(cfg: RunConfig) -> int:
    graphs = [g for source in cfg.inputs for g in load_graphs(source)]
    result = [{"id": ng.id, "srg": _params_dict(detect_srg(ng.graph))} for ng in graphs]
    if cfg.format == "csv":
        rows = ["id,n,k,lambda,mu"]
        for r in result:
            p = r["srg"]
            rows.append(f"{r['id']}," + (",".join(str(p[x]) for x in ("n", "k", "lambda", "mu")) if p else "not-srg,,,"))
        _emit(cfg, _csv_header(cfg, graphs) + "\n".join(rows) + "\n")
    else:
        _emit_json(cfg, graphs, result)
    return EXIT_OK


def cmd_spectrum(cfg: RunConfig) -> int:
    graphs = [g for source in cfg.inputs for g in load_graphs(source)]
    tol = cfg.extra["tol"]
    result = []
    for ng in graphs:
        rep = spectrum(walk_hamiltonian(ng.graph, cfg.kind, cfg.u), tol)
        result.append({"id": ng.id, "distinct_levels": rep.distinct, **rep.to_dict()})
    if cfg.format == "csv":
        rows = ["id,energy,degeneracy"]
        for r in result:
            rows += [f"{r['id']},{lv['energy']!r},{lv['degeneracy']}" for lv in r["levels"]]
        _emit(cfg, _csv_header(cfg, graphs) + "\n".join(rows) + "\n")
    else:
        _emit_json(cfg, graphs, result)
    return EXIT_OK


def cmd_compare(cfg: RunConfig) -> int:
    a, b = (load_one(x) for x in cfg.inputs)
    res = compare(a.graph, b.graph, cfg.kind, cfg.t, cfg.u, cfg.threshold, pair=(a.id, b.id))
    if cfg.format == "csv":
        d = "inf" if math.isinf(res.delta) else repr(res.delta)
        body = f"id_a,id_b,delta,threshold,verdict\n{a.id},{b.id},{d},{res.threshold!r},{res.verdict}\n"
        _emit(cfg, _csv_header(cfg, [a, b]) + body)
    else:
        _emit_json(cfg, [a, b], res.to_dict())
    return EXIT_DISTINGUISHED if res.distinguished else EXIT_OK


def cmd_batch(cfg: RunConfig) -> int:
    graphs = [g for source in cfg.inputs for g in load_graphs(source)]
    if len(graphs) < 2:
        raise InputError("batch needs at least two graphs")
    start = time.perf_counter()
    rep = batch_min_delta(
        [g.graph for g in graphs], cfg.kind, cfg.t, cfg.u, cfg.threshold, cfg.workers, ids=[g.id for g in graphs]
    )
    summary = rep.summary()
    summary["elapsed_seconds"] = round(time.perf_counter() - start, 3)
    if cfg.format == "csv":
        _emit(cfg, _csv_header(cfg, graphs) + rep.to_csv())
        side = json.dumps(_envelope(cfg, graphs, summary), indent=2) + "\n"
        if cfg.out:
            Path(cfg.out + ".summary.json").write_text(side)
        else:
            sys.stderr.write(side)
    else:
        pairs = [
            {
                "i": p.i,
                "j": p.j,
                "delta": None if math.isinf(p.delta) else p.delta,
                "verdict": p.verdict,
                "reason": p.reason,
            }
            for p in rep.pairs
        ]
        _emit_json(cfg, graphs, {"summary": summary, "pairs": pairs})
    return EXIT_OK


def _parse_params(text: str) -> SrgParams:
    try:
        vals = [int(x) for x in text.replace(" ", "").strip("()").split(",")]
        return SrgParams(*vals)
    except (TypeError, ValueError) as e:
        raise InputError(f"bad --params {text!r}: {e}") from None


def _table_dict(table) -> dict:
    return {
        "statistics": table.statistics,
        "family": list(table.params.astuple()),
        "rows": [{"class": list(r.cls), "value": r.label, "count": r.count} for r in table.rows],
        "subtotals": {f"{c[0]},{c[1]}": v for c, v in table.subtotals.items()},
        "total": table.total,
    }


def cmd_tables(cfg: RunConfig) -> int:
    stats = ["boson", "fermion"] if cfg.extra["statistics"] == "both" else [cfg.extra["statistics"]]
    if cfg.extra.get("params"):
        p = _parse_params(cfg.extra["params"])
        tables = [boson_table(p) if s == "boson" else fermion_table(p) for s in stats]
        _emit_json(cfg, [], [_table_dict(t) for t in tables])
        return EXIT_OK
    graphs = [g for source in cfg.inputs for g in load_graphs(source)]
    if not graphs:
        raise InputError("tables needs a graph input or --params")
    result, ok = [], True
    for ng in graphs:
        if detect_srg(ng.graph) is None:
            raise InputError(f"{ng.id} is not strongly regular")
        for s in stats:
            rep = verify_tables(ng.graph, cfg.t[0], s)
            ok &= rep.ok
            result.append({"id": ng.id, **rep.to_dict()})
    _emit_json(cfg, graphs, result)
    return EXIT_OK if ok else EXIT_DISTINGUISHED


def cmd_expand(cfg: RunConfig) -> int:
    a, b = (load_one(x) for x in cfg.inputs)
    drop = OP4_WORDS if cfg.extra["drop_op4"] else ()
    series = per_order_delta(a.graph, b.graph, cfg.u, cfg.t[0], cfg.extra["max_order"], drop)
    if cfg.format == "json":
        result = {
            "series": [{"order": d.order, "delta": d.delta, "scale": d.scale} for d in series],
            "exact_delta": exact_delta(a.graph, b.graph, cfg.u, cfg.t[0]),
        }
        _emit_json(cfg, [a, b], result)
    else:
        _emit(cfg, _csv_header(cfg, [a, b]) + series_csv(series))
    return EXIT_OK


COMMANDS = {
    "parse": cmd_parse,
    "check-srg": cmd_check_srg,
    "spectrum": cmd_spectrum,
    "compare": cmd_compare,
    "batch": cmd_batch,
    "tables": cmd_tables,
    "expand": cmd_expand,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="srgwalk", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"srgwalk {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, kind=True, fmt="json"):
        p.add_argument("--out", help="output file (default stdout)")
        p.add_argument("--format", choices=("json", "csv"), default=fmt)
        if kind:
            p.add_argument("--kind", choices=WALK_KINDS, default="hardcore")
            p.add_argument("--interaction", type=float, default=None, help="on-site U for --kind boson")
        return p

    def timing(p):
        p.add_argument("--time", type=float, default=None, help=f"evolution time (default {DEFAULT_T})")
        p.add_argument("--multi-time", action="store_true", help=f"concatenate certificates at t={MULTI_TIMES}")
        p.add_argument("--threshold", type=float, default=None, help="Delta threshold (default 1e-8 x length)")

    common(sub.add_parser("parse", help="summarise graph6 input"), kind=False).add_argument("inputs", nargs="+")
    common(sub.add_parser("check-srg", help="detect SRG parameters"), kind=False).add_argument("inputs", nargs="+")

    p = common(sub.add_parser("spectrum", help="walk Hamiltonian spectrum with degeneracies"))
    p.add_argument("inputs", nargs="+")
    p.add_argument("--tol", type=float, default=1e-9, help="relative degeneracy grouping tolerance")

    p = common(sub.add_parser("compare", help="Delta between two graphs"))
    p.add_argument("inputs", nargs=2, metavar="GRAPH")
    timing(p)

    p = common(sub.add_parser("batch", help="all-pairs minimum Delta over graph6 files"))
    p.add_argument("inputs", nargs="+")
    timing(p)
    p.add_argument("--workers", type=int, default=default_workers())

    p = common(sub.add_parser("tables", help="closed-form noninteracting tables, reconciled against numerics"), kind=False)
    p.add_argument("inputs", nargs="*")
    p.add_argument("--params", help="family (n,k,lambda,mu): print the tables without a graph")
    p.add_argument("--statistics", choices=("boson", "fermion", "both"), default="both")
    p.add_argument("--time", type=float, default=DEFAULT_T)

    p = common(sub.add_parser("expand", help="per-order Delta of the short-time series"), kind=False, fmt="csv")
    p.add_argument("inputs", nargs=2, metavar="GRAPH")
    p.add_argument("--time", type=float, default=EXPAND_T)
    p.add_argument("--interaction", type=float, default=EXPAND_U)
    p.add_argument("--max-order", type=int, default=MAX_ORDER, choices=range(MAX_ORDER + 1))
    p.add_argument("--drop-op4", action="store_true", help="remove u(B R B^2 + B^2 R B) from the fourth-order term")
    return ap


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(ns.command, list(ns.inputs), out=ns.out, format=ns.format)
    cfg.kind = getattr(ns, "kind", cfg.kind)
    if getattr(ns, "multi_time", False):
        cfg.t = MULTI_TIMES
    elif getattr(ns, "time", None) is not None:
        cfg.t = (ns.time,)
    u = getattr(ns, "interaction", None)
    cfg.u = 0.0 if u is None else u
    cfg.threshold = getattr(ns, "threshold", None)
    cfg.workers = getattr(ns, "workers", 1)
    if ns.command == "spectrum":
        cfg.extra["tol"] = ns.tol
    elif ns.command == "tables":
        cfg.extra.update(statistics=ns.statistics, params=ns.params)
    elif ns.command == "expand":
        cfg.extra.update(max_order=ns.max_order, drop_op4=ns.drop_op4)
    if cfg.kind != "boson" and ns.command not in ("expand",) and u is not None:
        cfg.extra["note"] = f"--interaction ignored for kind {cfg.kind}"
    return cfg


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    cfg = config_from_args(ns)
    try:
        return COMMANDS[ns.command](cfg)
    except (InputError, ParameterError, Graph6Error, OSError) as e:
        print(f"srgwalk: error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
