"""Command-line frontend.

Exit codes: 0 success, 1 some input was invalid, 2 some computation failed
(timeout or overflow).
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys
import time
from collections import deque
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from contextlib import contextmanager
from pathlib import Path
from typing import Callable, Iterable, Iterator, Optional

from . import __version__
from .codecs import (RecordWriter, iter_graph6, parse_edge_list, read_graph_file, result_fields,
                     write_edge_list, write_graph6)
from .constructions import (FIXTURE_EDGES, caterpillar, caterpillar_bound, fan, fan_bound, fixture_graph,
                            fixtures, generalized_fan, generalized_fan_bound, growth_rate)
from .engine import STRATEGIES, ComputationStats, default_memo, laman_number
from .errors import ComputationError, ComputationTimeout, CountOverflowError, LamanError, ParseError
from .geometry import export_system, labeling_from_realization, transformed_coordinates
from .graph import SimpleGraph
from .pebble import LAMAN, laman_defect

log = logging.getLogger("lamancount")

EXIT_OK, EXIT_INVALID, EXIT_COMPUTE = 0, 1, 2


class _Status:
    def __init__(self):
        self.invalid = False
        self.failed = False

    def code(self) -> int:
        if self.failed:
            return EXIT_COMPUTE
        return EXIT_INVALID if self.invalid else EXIT_OK


@contextmanager
def _output(path: Optional[str]):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w") as fh:
            yield fh


def _read_stream(path: str, fmt: str) -> Iterator[tuple[int, str, object]]:
    """Yield ``(index, label, graph_or_error)`` for every input graph."""
    if fmt == "edges":
        try:
            text = sys.stdin.read() if path == "-" else Path(path).read_text()
            g = parse_edge_list(text)
            label = write_graph6(g) if g.is_dense() else path
            yield 0, label, g
        except ParseError as exc:
            yield 0, path, exc
        return
    fh = sys.stdin if path == "-" else open(path)
    try:
        for i, (_, text, item) in enumerate(iter_graph6(fh)):
            yield i, text, item
    finally:
        if fh is not sys.stdin:
            fh.close()


def _load_graph(ref: str, fmt: Optional[str] = None) -> SimpleGraph:
    """A graph file path, or the name of a bundled fixture."""
    if not Path(ref).exists() and ref in FIXTURE_EDGES:
        return fixture_graph(ref)
    return read_graph_file(ref, fmt)


# -- count / max workers -------------------------------------------------------------

_worker_opts: dict = {}


def _init_worker(opts: dict) -> None:
    _worker_opts.clear()
    _worker_opts.update(opts)
    if opts.get("cache"):
        default_memo().load(opts["cache"])
    default_memo().drain()


def _count_one(job: tuple[int, str, object]) -> tuple[dict, dict]:
    idx, label, item = job
    opts = _worker_opts
    rec: dict = {"index": idx, "graph": label}
    if isinstance(item, ParseError):
        rec.update(error=f"parse: {item}", kind="invalid")
        return rec, {}
    g: SimpleGraph = item
    rec.update(n=g.n, m=g.m)
    defect = laman_defect(g) if g.n >= 2 else "too-small"
    if defect != LAMAN:
        rec.update(error=f"not-laman: {defect}", kind="invalid")
        return rec, {}
    stats = ComputationStats()
    try:
        rec["laman_number"] = laman_number(
            g, stats=stats, strategy=opts.get("strategy", "auto"), exact=opts.get("exact", False),
            timeout=opts.get("timeout"), use_memo=not opts.get("no_memo", False))
    except ComputationTimeout:
        rec.update(error="timeout", kind="failed")
    except CountOverflowError:
        rec.update(error="overflow", kind="failed")
    if opts.get("stats"):
        rec.update(nodes_visited=stats.nodes_visited, memo_hits=stats.memo_hits,
                   seconds=round(stats.seconds, 6))
    fresh = default_memo().drain() if opts.get("cache") else {}
    return rec, fresh


def _run(jobs: Iterable, fn: Callable, n_workers: int, ordered: bool, opts: dict) -> Iterator:
    """Map ``fn`` over ``jobs`` with a bounded window of pending work."""
    if n_workers <= 1:
        _init_worker(opts)
        for job in jobs:
            yield fn(job)
        return
    window = 4 * n_workers
    with ProcessPoolExecutor(n_workers, initializer=_init_worker, initargs=(opts,)) as pool:
        pending: deque = deque()
        it = iter(jobs)
        exhausted = False
        while True:
            while not exhausted and len(pending) < window:
                try:
                    pending.append(pool.submit(fn, next(it)))
                except StopIteration:
                    exhausted = True
            if not pending:
                return
            if ordered:
                yield pending.popleft().result()
            else:
                done, _ = wait(pending, return_when=FIRST_COMPLETED)
                for fut in [f for f in pending if f in done]:
                    pending.remove(fut)
                    yield fut.result()


def _count_records(args, status: _Status) -> Iterator[dict]:
    cache = args.cache or os.environ.get("LAMAN_CACHE")
    opts = {"strategy": args.strategy, "exact": args.exact, "timeout": args.timeout,
            "stats": args.stats, "cache": cache, "no_memo": args.no_memo}
    memo = default_memo()
    ordered = args.sorted or args.jobs <= 1
    try:
        for rec, fresh in _run(_read_stream(args.input, args.input_format), _count_one, args.jobs, ordered, opts):
            memo.update(fresh)
            kind = rec.pop("kind", None)
            if kind == "invalid":
                status.invalid = True
            elif kind == "failed":
                status.failed = True
            yield rec
    finally:
        if cache:
            memo.save(cache)


def cmd_count(args) -> int:
    status = _Status()
    points = []
    with _output(args.output) as out:
        w = RecordWriter(out, args.format, result_fields(args.stats))
        for rec in _count_records(args, status):
            if rec.get("error"):
                log.warning("%s: %s", rec["graph"], rec["error"])
            if rec.get("laman_number") is not None:
                points.append((rec["n"], rec["laman_number"]))
            rec.pop("index", None)
            w.write(rec)
    if args.plot:
        from .plotting import plot_counts
        plot_counts(points, args.plot, title="Laman numbers")
    return status.code()


def cmd_max(args) -> int:
    status = _Status()
    best: dict[int, tuple[int, int, str]] = {}   # n -> (count, -index, graph6)
    seen: dict[int, int] = {}
    points = []
    for rec in _count_records(args, status):
        val = rec.get("laman_number")
        if val is None:
            if rec.get("error"):
                log.warning("%s: %s", rec["graph"], rec["error"])
            continue
        n = rec["n"]
        seen[n] = seen.get(n, 0) + 1
        points.append((n, val))
        cand = (val, -rec["index"], rec["graph"])
        if n not in best or cand > best[n]:
            best[n] = cand
    fields = ("n", "max_laman_number", "argmax", "graphs")
    with _output(args.output) as out:
        w = RecordWriter(out, args.format, fields)
        for n in sorted(best):
            w.write({"n": n, "max_laman_number": best[n][0], "argmax": best[n][2], "graphs": seen[n]})
    if args.plot:
        from .plotting import plot_counts
        plot_counts(points, args.plot, maxima={n: b[0] for n, b in best.items()}, title="Maximal Laman numbers")
    return status.code()


def cmd_check(args) -> int:
    status = _Status()
    with _output(args.output) as out:
        w = RecordWriter(out, args.format, ("graph", "n", "m", "classification", "error"))
        for _, label, item in _read_stream(args.input, args.input_format):
            if isinstance(item, ParseError):
                status.invalid = True
                w.write({"graph": label, "error": f"parse: {item}"})
                continue
            if item.n < 2:
                status.invalid = True
                w.write({"graph": label, "n": item.n, "m": item.m, "error": "fewer than 2 vertices"})
                continue
            w.write({"graph": label, "n": item.n, "m": item.m, "classification": laman_defect(item)})
    return status.code()


def _emit_graph(g: SimpleGraph, fmt: str, out) -> None:
    if fmt == "edges":
        out.write(write_edge_list(g))
    else:
        out.write(write_graph6(g) + "\n")


def cmd_construct(args) -> int:
    g = _load_graph(args.graph, args.input_format)
    if args.kind == "caterpillar":
        res = caterpillar(g, args.k, args.edge, args.exit_edge)
    elif args.kind == "fan":
        res = fan(g, args.k, args.triangle)
    else:
        if not args.subgraph:
            raise LamanError("gfan needs --subgraph")
        res = generalized_fan(g, args.subgraph, args.k)
    with _output(args.output) as out:
        _emit_graph(res, args.format, out)
    return EXIT_OK


def cmd_bound(args) -> int:
    g = _load_graph(args.graph, args.input_format)
    if args.kind == "caterpillar":
        value = caterpillar_bound(g, args.n)
    elif args.kind == "fan":
        value = fan_bound(g, args.n)
    else:
        if not args.subgraph:
            raise LamanError("gfan needs --subgraph")
        value = generalized_fan_bound(g, args.subgraph, args.n)
    print(value)
    return EXIT_OK


def cmd_rate(args) -> int:
    g = _load_graph(args.graph, args.input_format)
    print(f"{growth_rate(args.kind, g, args.subgraph):.6g}")
    return EXIT_OK


def _parse_labels(path: str) -> dict[tuple[int, int], complex]:
    """JSON object ``{"u-v": value}``; a value is a number or ``[re, im]``."""
    raw = json.loads(Path(path).read_text())
    out = {}
    for k, v in raw.items():
        u, w = (int(x) for x in k.split("-"))
        out[(min(u, w), max(u, w))] = complex(v[0], v[1]) if isinstance(v, list) else complex(v)
    return out


def _cx(z: complex) -> list[float]:
    return [z.real, z.imag]


def cmd_export_system(args) -> int:
    g = _load_graph(args.graph, args.input_format)
    payload: dict
    if args.labels:
        system = export_system(g, _parse_labels(args.labels), args.pin)
        payload = system.to_dict()
    else:
        rng = random.Random(args.seed)
        rho = {v: (complex(rng.uniform(-1, 1)), complex(rng.uniform(-1, 1))) for v in g.vertices}
        system = export_system(g, labeling_from_realization(g, rho), args.pin)
        payload = system.to_dict()
        payload["realization"] = {str(v): [_cx(p[0]), _cx(p[1])] for v, p in rho.items()}
        payload["solution"] = {k: _cx(z) for k, z in transformed_coordinates(rho, system.pinned).items()}
        payload["seed"] = args.seed
    with _output(args.output) as out:
        out.write(json.dumps(payload, indent=2) + "\n")
    return EXIT_OK


def cmd_dataset(args) -> int:
    fx = fixtures()
    if args.write_dir:
        d = Path(args.write_dir)
        d.mkdir(parents=True, exist_ok=True)
        for name, f in fx.items():
            (d / f"{name}.edges").write_text(write_edge_list(f.graph))
    with _output(args.output) as out:
        if args.format == "graph6":
            for f in fx.values():
                if args.records_only and f.name not in ("f6", "f7", "f8", "f9", "f10", "f11", "f12"):
                    continue
                out.write(write_graph6(f.graph) + "\n")
            return EXIT_OK
        w = RecordWriter(out, args.format, ("name", "graph", "n", "m", "expected"))
        for f in fx.values():
            if args.records_only and not f.name.startswith("f"):
                continue
            w.write({"name": f.name, "graph": write_graph6(f.graph), "n": f.graph.n, "m": f.graph.m,
                     "expected": f.expected})
    return EXIT_OK


# -- parser ------------------------------------------------------------------------

def _stream_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("input", nargs="?", default="-", help="graph6 stream or edge-list file ('-' = stdin)")
    p.add_argument("--input-format", choices=("graph6", "edges"), default="graph6")
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--output", "-o", default=None)


def _count_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--jobs", "-j", type=int, default=1)
    p.add_argument("--cache", default=None, help="memo cache file (default: $LAMAN_CACHE)")
    p.add_argument("--timeout", type=float, default=None, help="seconds per graph")
    p.add_argument("--stats", action="store_true")
    p.add_argument("--sorted", action="store_true", help="keep input order in parallel mode")
    p.add_argument("--strategy", choices=STRATEGIES, default="auto")
    p.add_argument("--exact", action="store_true", help="unbounded integers instead of checked 64-bit")
    p.add_argument("--no-memo", action="store_true")
    p.add_argument("--plot", default=None, metavar="PATH", help="also render a figure to PATH")


def _graph_arg(p: argparse.ArgumentParser) -> None:
    p.add_argument("graph", help="graph file (edge list, or graph6 with .g6) or fixture name")
    p.add_argument("--input-format", choices=("graph6", "edges"), default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lamancount", description="Laman numbers of minimally rigid graphs.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="classify graphs by the Laman condition")
    _stream_flags(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("count", help="compute Laman numbers")
    _stream_flags(p)
    _count_flags(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("max", help="per-n maximum Laman number of a stream")
    _stream_flags(p)
    _count_flags(p)
    p.set_defaults(func=cmd_max)

    p = sub.add_parser("construct", help="glue copies of a base graph")
    p.add_argument("kind", choices=("caterpillar", "fan", "gfan"))
    _graph_arg(p)
    p.add_argument("-k", type=int, required=True, help="number of copies")
    p.add_argument("--edge", type=int, nargs=2, metavar=("U", "V"), help="caterpillar entry edge")
    p.add_argument("--exit-edge", type=int, nargs=2, metavar=("U", "V"), help="caterpillar exit edge")
    p.add_argument("--triangle", type=int, nargs=3, metavar=("A", "B", "C"))
    p.add_argument("--subgraph", type=int, nargs="+", metavar="V", help="vertices of the glued subgraph")
    p.add_argument("--format", choices=("graph6", "edges"), default="graph6")
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("bound", help="exact lower bound on the maximal Laman number")
    p.add_argument("kind", choices=("caterpillar", "fan", "gfan"))
    _graph_arg(p)
    p.add_argument("n", type=int)
    p.add_argument("--subgraph", type=int, nargs="+", metavar="V")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("rate", help="growth rate of a construction")
    p.add_argument("kind", choices=("caterpillar", "fan", "gfan"))
    _graph_arg(p)
    p.add_argument("--subgraph", type=int, nargs="+", metavar="V")
    p.set_defaults(func=cmd_rate)

    p = sub.add_parser("export-system", help="export the bilinear edge equations as JSON")
    _graph_arg(p)
    p.add_argument("--labels", default=None, help='JSON file {"u-v": value | [re, im]}')
    p.add_argument("--pin", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=cmd_export_system)

    p = sub.add_parser("dataset", help="print the bundled fixtures")
    p.add_argument("--format", choices=("text", "json", "csv", "graph6"), default="text")
    p.add_argument("--records-only", action="store_true", help="only the record graphs f6..f12")
    p.add_argument("--write-dir", default=None, help="also write <name>.edges files here")
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=cmd_dataset)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if getattr(args, "jobs", 1) < 1:
        log.error("--jobs must be at least 1")
        return EXIT_INVALID
    if getattr(args, "timeout", None) is not None and args.timeout <= 0:
        log.error("--timeout must be positive")
        return EXIT_INVALID
    t0 = time.perf_counter()
    try:
        code = args.func(args)
    except BrokenPipeError:
        # downstream closed early (e.g. piped into head); not an error of ours
        devnull = os.open(os.devnull, os.O_WRONLY)
        os.dup2(devnull, sys.stdout.fileno())
        return EXIT_OK
    except ComputationError as exc:
        log.error("%s", exc)
        return EXIT_COMPUTE
    except (LamanError, OSError) as exc:
        log.error("%s", exc)
        return EXIT_INVALID
    log.info("%s finished in %.3fs", args.command, time.perf_counter() - t0)
    return code


if __name__ == "__main__":
    sys.exit(main())
