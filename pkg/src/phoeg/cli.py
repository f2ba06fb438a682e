"""``phoeg`` command line entry point.

Data goes to standard output (or ``--output``), diagnostics to standard
error.  Exit status: 0 on success, 1 on domain errors, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import io
import json
import sys
import tempfile
from pathlib import Path

from . import __version__, invariants
from . import transform as tr
from .canon import signature
from .enumerate import MAX_ENUM_ORDER, default_workers, enumerate_signatures
from .errors import PhoegError
from .graph6 import decode, encode


def _order(lo: int, hi: int):
    def parse(text: str) -> int:
        try:
            n = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"invalid order {text!r}") from None
        if not lo <= n <= hi:
            raise argparse.ArgumentTypeError(f"order must be in {lo}..{hi}, got {n}")
        return n

    return parse


def _order_range(text: str) -> list[int]:
    parts = text.replace("..", "-").split("-")
    try:
        if len(parts) == 1:
            lo = hi = int(parts[0])
        elif len(parts) == 2:
            lo, hi = int(parts[0]), int(parts[1])
        else:
            raise ValueError
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or LO..HI, got {text!r}") from None
    if not 1 <= lo <= hi <= MAX_ENUM_ORDER:
        raise argparse.ArgumentTypeError(f"orders must satisfy 1 <= LO <= HI <= {MAX_ENUM_ORDER}")
    return list(range(lo, hi + 1))


def _csv_list(text: str) -> list[str]:
    return [s.strip() for s in text.split(",") if s.strip()]


def _params(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(s) for s in text.replace(" ", "").split(",") if s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"parameters must be comma-separated integers, got {text!r}") from None


def _workers(text: str) -> int:
    k = int(text)
    if k < 1:
        raise argparse.ArgumentTypeError("--workers must be >= 1")
    return k


def _read_graph_args(values: list[str]) -> list[str]:
    out = []
    for v in values:
        if v == "-":
            out.extend(line.strip() for line in sys.stdin if line.strip())
        else:
            out.append(v)
    return out


def _writer(out) -> csv.writer:
    return csv.writer(out, quoting=csv.QUOTE_NONNUMERIC, lineterminator="\n")


def _class_filter(name: str):
    from .obstruction import get_class

    if name == "all":
        return None
    return get_class(name)


@contextlib.contextmanager
def _store_for(args, names: list[str], cls: str, max_n: int):
    """The ``--store`` directory, or a temporary one with the needed columns."""
    from .store import Store

    if args.store:
        yield Store(args.store)
        return
    with tempfile.TemporaryDirectory(prefix="phoeg-store-") as tmp:
        st = Store(tmp)
        st.build(max_n, cls, names, workers=args.workers)
        yield st


# subcommands


def cmd_enumerate(args, out) -> None:
    pred = _class_filter(args.graph_class)
    if args.count:
        out.write(f"{sum(1 for _ in enumerate_signatures(args.n, pred, args.workers))}\n")
        return
    for sig in enumerate_signatures(args.n, pred, args.workers):
        out.write(sig + "\n")


def cmd_invariant(args, out) -> None:
    if args.list:
        for name, inv in invariants.REGISTRY.items():
            out.write(f"{name}\t{inv.description}\n")
        return
    if not args.name:
        raise UsageError("an invariant name is required (or --list)")
    inv = invariants.get(args.name)
    graphs = _read_graph_args(args.g6 or ["-"])
    rows = [(text, inv(decode(text))) for text in graphs]
    if args.format == "json":
        json.dump([{"graph6": t, args.name: v} for t, v in rows], out, indent=2)
        out.write("\n")
    elif args.format == "csv":
        w = _writer(out)
        w.writerow(["graph6", args.name])
        w.writerows(rows)
    else:
        for t, v in rows:
            out.write(f"{v}\n" if len(rows) == 1 and not args.with_input else f"{t}\t{v}\n")


def cmd_store_build(args, out) -> None:
    from .store import Store

    st = Store(args.store or "phoeg-store")
    paths = st.build(args.max_n, args.graph_class, args.invariants, workers=args.workers)
    for p in paths:
        print(f"wrote {p}", file=sys.stderr)


def cmd_query_extremal(args, out) -> None:
    with _store_for(args, [args.invariant], args.graph_class, args.max_n) as st:
        results = st.query_extremal(args.invariant, args.dir, args.max_n, args.graph_class)
    if args.format == "json":
        json.dump(
            [
                {"n": r.n, "m": r.m, args.invariant: r.optimum, "direction": r.direction, "signatures": list(r.witnesses)}
                for r in results
            ],
            out,
            indent=2,
        )
        out.write("\n")
        return
    w = _writer(out)
    w.writerow(["signature", "n", "m", args.invariant])
    for r in results:
        for sig in r.witnesses:
            w.writerow([sig, r.n, r.m, r.optimum])


def cmd_query_points(args, out) -> None:
    names = [args.x, args.y] + ([args.annotate] if args.annotate else [])
    with _store_for(args, names, args.graph_class, args.n) as st:
        cloud = st.query_points(args.x, args.y, args.graph_class, args.n, samples=args.samples)
        if args.annotate:
            cloud = st.annotate_points(cloud, args.annotate, args.agg)
    if args.format == "json":
        pts = []
        for p in cloud.points:
            d = {args.x: p.x, args.y: p.y, "mult": p.multiplicity, "samples": list(p.samples)}
            if args.annotate:
                d[args.annotate] = p.annotation
            pts.append(d)
        json.dump(pts, out, indent=2)
        out.write("\n")
        return
    w = _writer(out)
    w.writerow([args.x, args.y, "mult"] + ([args.annotate] if args.annotate else []) + ["samples"])
    for p in cloud.points:
        w.writerow([p.x, p.y, p.multiplicity] + ([p.annotation] if args.annotate else []) + [" ".join(p.samples)])


def cmd_hull(args, out) -> None:
    from . import hull

    orders = args.n_range or [args.n]
    names = [args.x, args.y] + ([args.annotate] if args.annotate else [])
    with _store_for(args, names, args.graph_class, max(orders)) as st:
        report = hull.conjecture_report(st, args.x, args.y, args.graph_class, orders)
        if args.annotate:
            for rep in report.orders:
                rep.cloud = st.annotate_points(rep.cloud, args.annotate, args.agg)
    fmt = args.format
    if fmt == "json":
        out.write(hull.dumps_json(report))
    elif fmt == "tikz":
        for rep in report.orders:
            out.write(hull.to_tikz(rep, args.x, args.y))
    elif fmt == "csv":
        w = _writer(out)
        w.writerow(["n", args.x, args.y, "mult", "hull_vertex", "samples"])
        for rep in report.orders:
            w.writerows(hull.to_csv_rows(rep))
    else:
        out.write(report.text())


def cmd_obstruct(args, out) -> None:
    from .obstruction import minimal_obstructions

    res = minimal_obstructions(args.graph_class, args.relation, args.max_n)
    if args.format == "csv":
        w = _writer(out)
        w.writerow(["signature", "n", "m"])
        for g6, g in zip(res.obstructions, res.graphs()):
            w.writerow([g6, g.n, g.num_edges])
    else:
        for g6 in res.obstructions:
            out.write(g6 + "\n")


def _metagraph(args):
    from .metagraph import Metagraph

    if args.meta:
        return Metagraph.load(args.meta)
    if args.n is None:
        raise UsageError("give --meta DIR or --n N to build the metagraph in memory")
    return Metagraph.build(args.n, args.graph_class, args.transformations, workers=args.workers)


def cmd_meta_build(args, out) -> None:
    from .metagraph import build_and_save

    mg = build_and_save(args.n, args.graph_class, args.transformations, args.out, workers=args.workers)
    print(f"wrote {len(mg)} arcs over {len(mg.signatures)} graphs to {args.out}", file=sys.stderr)


def cmd_meta_count(args, out) -> None:
    mg = _metagraph(args)
    modes = ["raw", "per-triple", "per-pair"] if args.mode == "all" else [args.mode]
    for mode in modes:
        c = mg.count(mode, self_arcs=not args.no_self_arcs)
        out.write(f"{c}\n" if len(modes) == 1 else f"{mode}\t{c}\n")


def cmd_meta_neighbors(args, out) -> None:
    mg = _metagraph(args)
    arcs = mg.neighbors(args.g6, args.direction, _csv_list(args.tid) if args.tid else None)
    w = _writer(out)
    w.writerow(["src", "transformation", "params", "dst"])
    for a in arcs:
        w.writerow([a.src, a.tid, " ".join(map(str, a.params)), a.dst])


def cmd_meta_export(args, out) -> None:
    mg = _metagraph(args)
    if args.format == "dot":
        if mg.n > 4:
            raise UsageError("dot export is limited to orders <= 4")
        out.write(mg.to_dot())
    else:
        w = _writer(out)
        w.writerow(["src", "transformation", "params", "dst"])
        w.writerows(mg.csv_rows())


def cmd_meta_proof(args, out) -> None:
    from .proof import filtered_metagraph, proof_report
    from .store import Store

    mg = _metagraph(args)
    direction = {"max": "increase", "min": "decrease"}[args.dir]
    store = Store(args.store) if args.store else None
    if args.extremal_from == "store":
        with _store_for(args, [args.invariant], mg.cls, mg.n) as st:
            cells = st.query_extremal(args.invariant, args.dir, mg.n, mg.cls)
            view = filtered_metagraph(mg, args.invariant, direction, args.preserve, store=st)
        if args.preserve and args.preserve != ["num_edges"]:
            print("note: extremal set is per (n, m) cell; --preserve other than num_edges changes its meaning",
                  file=sys.stderr)
        extremal = [s for r in cells if r.n == mg.n for s in r.witnesses]
    else:
        extremal = [line.strip() for line in Path(args.extremal_from).read_text().splitlines() if line.strip()]
        view = filtered_metagraph(mg, args.invariant, direction, args.preserve, store=store)
    rep = proof_report(view, extremal)
    if args.format == "json":
        payload = {"order": mg.n, "class": mg.cls, "invariant": args.invariant, "direction": direction,
                   "preserve": args.preserve, "arcs_kept": view.kept()} | rep.to_json()
        json.dump(payload, out, indent=2)
        out.write("\n")
    else:
        out.write(rep.text())


def cmd_meta_calibrate(args, out) -> None:
    from .calibration import calibration_table, format_table

    rows = calibration_table(range(2, args.max_n + 1), workers=args.workers)
    if args.format == "json":
        json.dump(rows, out, indent=2)
        out.write("\n")
    else:
        out.write(format_table(rows))


def cmd_transform(args, out) -> None:
    g = decode(args.g6)
    if args.all:
        w = _writer(out)
        w.writerow(["params", "result", "canonical"])
        for params, h in tr.enumerate_applications(g, args.name):
            w.writerow([" ".join(map(str, params)), encode(h), signature(h)])
        return
    if args.params is None:
        raise UsageError("give --params a,b,... or --all")
    h = tr.apply(g, args.name, args.params)
    out.write((signature(h) if args.canonical else encode(h)) + "\n")


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", help="write data here instead of standard output")
    common.add_argument("--workers", type=_workers, default=default_workers(),
                        help="worker processes (output does not depend on this)")

    p = argparse.ArgumentParser(prog="phoeg", description="Extremal graph theory workbench.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("enumerate", parents=[common], help="all graphs of an order, one graph6 per line")
    e.add_argument("--n", type=_order(1, MAX_ENUM_ORDER), required=True)
    e.add_argument("--class", dest="graph_class", default="all", help="all or a built-in class name")
    e.add_argument("--count", action="store_true", help="print only the number of graphs")
    e.set_defaults(func=cmd_enumerate)

    i = sub.add_parser("invariant", parents=[common], help="evaluate an invariant on graph6 inputs")
    i.add_argument("name", nargs="?")
    i.add_argument("--g6", action="append", help="graph6 text, or - to read lines from standard input")
    i.add_argument("--list", action="store_true", help="list invariant names")
    i.add_argument("--with-input", action="store_true", help="prefix each value with its graph6")
    i.add_argument("--format", choices=("text", "csv", "json"), default="text")
    i.set_defaults(func=cmd_invariant)

    s = sub.add_parser("store", help="invariant store management")
    ssub = s.add_subparsers(dest="store_command", required=True)
    sb = ssub.add_parser("build", parents=[common], help="compute invariant columns")
    sb.add_argument("--max-n", type=_order(1, MAX_ENUM_ORDER), required=True)
    sb.add_argument("--class", dest="graph_class", choices=("all", "connected"), default="all")
    sb.add_argument("--invariants", type=_csv_list, required=True)
    sb.add_argument("--store", help="store directory (default ./phoeg-store)")
    sb.set_defaults(func=cmd_store_build)

    q = sub.add_parser("query", help="queries over an invariant store")
    qsub = q.add_subparsers(dest="query_command", required=True)
    qe = qsub.add_parser("extremal", parents=[common], help="per (n, m) cell optimum and all graphs attaining it")
    qe.add_argument("--invariant", required=True)
    qe.add_argument("--dir", choices=("max", "min"), default="max")
    qe.add_argument("--max-n", type=_order(1, MAX_ENUM_ORDER), required=True)
    qe.add_argument("--class", dest="graph_class", choices=("all", "connected"), default="all")
    qe.add_argument("--format", choices=("csv", "json"), default="csv")
    qe.add_argument("--store", help="store directory; without it the columns are computed on the fly")
    qe.set_defaults(func=cmd_query_extremal)
    qp = qsub.add_parser("points", parents=[common], help="graph coordinates with multiplicities")
    qp.add_argument("--x", required=True)
    qp.add_argument("--y", required=True)
    qp.add_argument("--n", type=_order(1, MAX_ENUM_ORDER), required=True)
    qp.add_argument("--class", dest="graph_class", choices=("all", "connected"), default="all")
    qp.add_argument("--samples", type=int, default=4)
    qp.add_argument("--annotate", help="invariant aggregated over each coordinate")
    qp.add_argument("--agg", choices=("max", "min"), default="max")
    qp.add_argument("--format", choices=("csv", "json"), default="csv")
    qp.add_argument("--store")
    qp.set_defaults(func=cmd_query_points)

    h = sub.add_parser("hull", parents=[common], help="convex hull, facets and conjecture report")
    h.add_argument("--x", required=True)
    h.add_argument("--y", required=True)
    grp = h.add_mutually_exclusive_group(required=True)
    grp.add_argument("--n", type=_order(1, MAX_ENUM_ORDER))
    grp.add_argument("--n-range", type=_order_range, help="LO..HI")
    h.add_argument("--class", dest="graph_class", choices=("all", "connected"), default="connected")
    h.add_argument("--annotate", help="invariant aggregated per coordinate (tikz/json/csv point data)")
    h.add_argument("--agg", choices=("max", "min"), default="max")
    h.add_argument("--format", choices=("text", "csv", "tikz", "json"), default="text")
    h.add_argument("--store")
    h.set_defaults(func=cmd_hull)

    o = sub.add_parser("obstruct", parents=[common], help="minimal obstruction set of a built-in class")
    o.add_argument("--class", dest="graph_class", required=True)
    o.add_argument("--relation", choices=("induced", "subgraph", "induced-subgraph"), default="induced")
    o.add_argument("--max-n", type=_order(1, MAX_ENUM_ORDER), required=True)
    o.add_argument("--format", choices=("g6", "csv"), default="g6")
    o.set_defaults(func=cmd_obstruct)

    m = sub.add_parser("meta", help="metagraph of transformations")
    msub = m.add_subparsers(dest="meta_command", required=True)

    def meta_source(sp, need_n=False):
        sp.add_argument("--meta", help="metagraph directory written by 'meta build'")
        sp.add_argument("--n", type=_order(1, 9), required=need_n)
        sp.add_argument("--class", dest="graph_class", choices=("all", "connected"), default="all")
        sp.add_argument("--transformations", default="all", help="all or comma-separated names")

    mb = msub.add_parser("build", parents=[common])
    meta_source(mb, need_n=True)
    mb.add_argument("--out", required=True)
    mb.set_defaults(func=cmd_meta_build)

    mc = msub.add_parser("count", parents=[common])
    meta_source(mc)
    mc.add_argument("--mode", choices=("raw", "per-triple", "per-pair", "all"), default="raw")
    mc.add_argument("--no-self-arcs", action="store_true")
    mc.set_defaults(func=cmd_meta_count)

    mn = msub.add_parser("neighbors", parents=[common])
    meta_source(mn)
    mn.add_argument("--g6", required=True)
    mn.add_argument("--direction", choices=("out", "in"), default="out")
    mn.add_argument("--tid", help="comma-separated transformation names")
    mn.set_defaults(func=cmd_meta_neighbors)

    mx = msub.add_parser("export", parents=[common])
    meta_source(mx)
    mx.add_argument("--format", choices=("csv", "dot"), default="csv")
    mx.set_defaults(func=cmd_meta_export)

    mp = msub.add_parser("proof", parents=[common])
    meta_source(mp)
    mp.add_argument("--invariant", required=True)
    mp.add_argument("--dir", choices=("max", "min"), default="max")
    mp.add_argument("--preserve", type=_csv_list, default=[])
    mp.add_argument("--extremal-from", default="store", help="'store' or a file of graph6 lines")
    mp.add_argument("--store")
    mp.add_argument("--format", choices=("text", "json"), default="text")
    mp.set_defaults(func=cmd_meta_proof)

    mcal = msub.add_parser("calibrate", parents=[common], help="arc counts under each counting convention")
    mcal.add_argument("--max-n", type=_order(2, 9), default=6)
    mcal.add_argument("--format", choices=("text", "json"), default="text")
    mcal.set_defaults(func=cmd_meta_calibrate)

    t = sub.add_parser("transform", parents=[common], help="apply a transformation to a graph")
    t.add_argument("name", choices=tr.NAMES)
    t.add_argument("--g6", required=True)
    t.add_argument("--params", type=_params)
    t.add_argument("--all", action="store_true", help="list every application")
    t.add_argument("--canonical", action="store_true", help="print the canonical signature of the result")
    t.set_defaults(func=cmd_transform)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    buf = io.StringIO()
    try:
        args.func(args, buf)
    except UsageError as exc:
        print(f"phoeg: usage error: {exc}", file=sys.stderr)
        return 2
    except PhoegError as exc:
        print(f"phoeg: error: {exc}", file=sys.stderr)
        return 1
    except (FileNotFoundError, NotADirectoryError) as exc:
        print(f"phoeg: error: {exc}", file=sys.stderr)
        return 1
    data = buf.getvalue()
    if getattr(args, "output", None):
        Path(args.output).write_text(data)
    else:
        sys.stdout.write(data)
        sys.stdout.flush()
    return 0


if __name__ == "__main__":
    sys.exit(main())
