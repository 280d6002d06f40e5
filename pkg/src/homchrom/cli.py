"""Command-line front end.

Every subcommand prints one report, as ``key=value`` text or as a single
JSON object.  Exit status: 0 on success, 1 on a usage or input error,
2 when a budget ran out (a partial report is still printed).
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import math
import os
import sys

from .bounds import (DEFAULT_M_CAP, HeightCache, chrom_lower_bound, complete_graph_bound,
                     f_oracle, test_graph_spec)
from .complexes import DEFAULT_BUDGET, barycentric, build_hom, build_hom_plus, build_independence, \
    build_neighborhood
from .errors import BudgetError, FreenessError, GraphFormatError, HomchromError, ParameterError, ShapeError
from .graphs import complete, cycle, make_named_graph, parse_graph_text
from .homology import betti_gf2, integer_homology
from .homs import GraphHom, chromatic_number_exact, fold_reduce, winding_number
from .spectral import spectral_report
from .swclasses import height, induced_action

CACHE_ENV = "HOMCHROM_CACHE"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def load_graph(source):
    """A graph file path if one exists, otherwise a named ``name:params`` spec."""
    if os.path.isfile(source):
        with open(source) as fh:
            G = parse_graph_text(fh.read())
        return G
    if ":" not in source and (os.sep in source or source.endswith(".txt")):
        raise ParameterError(f"graph file {source!r} not found")
    G = make_named_graph(source)
    return G


def _with_name(G, name):
    return G if G.name else dataclasses.replace(G, name=name)


def _graph(source):
    return _with_name(load_graph(source), source)


# -- text rendering -----------------------------------------------------------------


def _fmt_value(v):
    if isinstance(v, (list, tuple)):
        sep = ";" if any(isinstance(x, (list, tuple, dict)) for x in v) else ","
        return sep.join(_fmt_value(x) for x in v)
    if isinstance(v, dict):
        return " ".join(f"{k}={_fmt_value(x)}" for k, x in v.items())
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def _render_text(obj):
    if "text" in obj:
        return obj["text"]
    return "\n".join(f"{k}={_fmt_value(v)}" for k, v in obj.items())


def _betti_text(betti):
    return " ".join(f"b{d}={b}" for d, b in enumerate(betti)) or "empty"


# -- subcommands ------------------------------------------------------------------------


def _complex_from(args, plus=None):
    T, G = _graph(args.hom[0]), _graph(args.hom[1])
    plus = args.plus if plus is None else plus
    return (build_hom_plus if plus else build_hom)(T, G, args.budget)


def cmd_hom(args, plus=False):
    X = _complex_from(args, plus)
    out = {"kind": X.kind, "dim": X.dim, "counts": X.counts(), "euler": X.euler_characteristic()}
    if args.dump:
        out["cells"] = X.dump_lines()
    if args.format == "text":
        lines = [f"kind={X.kind} dim={X.dim} counts={_fmt_value(X.counts())} euler={out['euler']}"]
        if args.dump:
            lines += X.dump_lines()
        return {"text": "\n".join(lines), **out}
    return out


def cmd_dump(args):
    X = _complex_from(args)
    lines = X.dump_lines()
    return {"text": "\n".join(lines), "kind": X.kind, "cells": lines}


def _betti_source(args):
    if args.hom:
        return _complex_from(args, plus=False)
    if args.homplus:
        T, G = _graph(args.homplus[0]), _graph(args.homplus[1])
        return build_hom_plus(T, G, args.budget)
    if args.ind:
        return build_independence(_graph(args.ind))
    if args.nbhd:
        return build_neighborhood(_graph(args.nbhd), args.budget)
    raise UsageError("betti: give one of --hom, --homplus, --ind, --nbhd")


def cmd_betti(args):
    b = list(betti_gf2(_betti_source(args)))
    return {"betti_gf2": b, "text": _betti_text(b)}


def cmd_homology_int(args):
    X = _betti_source(args)
    Y = X if hasattr(X, "simplices") else barycentric(X, args.budget)
    groups = integer_homology(Y)
    b = list(betti_gf2(X))
    text = _betti_text(b) + "\n" + " ".join(f"H{d}={g}" for d, g in enumerate(groups))
    return {"betti_gf2": b, "integer": [{"rank": g.rank, "torsion": list(g.torsion)} for g in groups],
            "text": text}


def cmd_height(args):
    spec = test_graph_spec(args.test)
    G = _graph(args.graph)
    X = build_hom(spec.T, G, args.budget)
    if X.is_empty:
        res = height(X, None, args.k_max)
        return {"height": res.h, "k_max": res.k_max, "free": True, "certificates": []}
    action = induced_action(spec.T, G, spec.involution, range(G.n), X)
    res = height(X, action, args.k_max, args.budget)
    return res.to_json()


def _cache(args):
    directory = args.cache_dir or os.environ.get(CACHE_ENV)
    return HeightCache(directory) if directory else HeightCache()


def cmd_bound(args):
    G = _graph(args.graph)
    if args.complete_n:
        report = complete_graph_bound(args.complete_n, G, args.budget, args.chi_cap)
    else:
        spec = test_graph_spec(args.test)
        report = chrom_lower_bound(spec, G, args.m_cap, args.budget, _cache(args), args.chi_cap)
    out = report.to_json()
    if report.partial:
        out["_status"] = 2
    return out


def cmd_fold(args):
    trace = fold_reduce(_graph(args.graph))
    R = trace.result
    out = {"removed": [list(s) for s in trace.removed], "steps": len(trace.removed),
           "result_n": R.n, "result_edges": [list(e) for e in R.edges()],
           "survivors": sorted(trace.survivor_map)}
    return out


def cmd_chromatic(args):
    chi = chromatic_number_exact(_graph(args.graph), args.cap)
    if chi is math.inf:
        value = "infinite"
    elif chi is None:
        value = f"exceeds {args.cap}"
    else:
        value = chi
    return {"chi": value, "cap": args.cap, "text": f"chi={value}"}


def cmd_winding(args):
    try:
        f = [int(x) for x in args.map.split(",")]
    except ValueError:
        raise UsageError("winding: --map must be comma-separated integers") from None
    h = GraphHom(cycle(len(f)) if len(f) >= 3 else complete(len(f)), complete(3), f)
    w = winding_number(h)
    return {"winding": w, "text": str(w)}


def cmd_spectral(args):
    T, G = _graph(args.hom[0]), _graph(args.hom[1])
    out = spectral_report(T, G, args.budget, compare=not args.no_compare).to_json()
    if args.format == "text":
        rows = ["E1 (rows q, columns p):"] + ["  " + " ".join(f"{r:3d}" for r in row) for row in out["E1"]]
        rows += ["E2:"] + ["  " + " ".join(f"{r:3d}" for r in row) for row in out["E2"]]
        rows += [f"{k}={_fmt_value(v)}" for k, v in out.items() if k not in ("E1", "E2")]
        out["text"] = "\n".join(rows)
    return out


def cmd_oracle_f(args):
    if args.m < 1 or args.n < 1:
        raise UsageError("oracle-f: m and n must be >= 1")
    v = f_oracle(args.m, args.n)
    return {"m": args.m, "n": args.n, "f": v, "text": str(v)}


# -- parser --------------------------------------------------------------------------------


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="cell/simplex budget per complex")
    common.add_argument("-v", "--verbose", action="store_true")

    p = _Parser(prog="homchrom", description="Hom complexes and topological bounds on chromatic numbers.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name, plus in (("hom", False), ("homplus", True)):
        sp = sub.add_parser(name, parents=[common], help=f"cell counts of {'Hom+' if plus else 'Hom'}(T, G)")
        sp.add_argument("T")
        sp.add_argument("G")
        sp.add_argument("--dump", action="store_true", help="also list every cell")
        sp.set_defaults(func=lambda a, plus=plus: cmd_hom(a, plus), plus=plus)

    sp = sub.add_parser("dump", parents=[common], help="one cell per line: 'dim | S0;S1;...'")
    sp.add_argument("T")
    sp.add_argument("G")
    sp.add_argument("--plus", action="store_true")
    sp.set_defaults(func=cmd_dump)

    for name, func in (("betti", cmd_betti), ("homology-int", cmd_homology_int)):
        sp = sub.add_parser(name, parents=[common])
        group = sp.add_mutually_exclusive_group(required=True)
        group.add_argument("--hom", nargs=2, metavar=("T", "G"))
        group.add_argument("--homplus", nargs=2, metavar=("T", "G"))
        group.add_argument("--ind", metavar="G")
        group.add_argument("--nbhd", metavar="G")
        sp.set_defaults(func=func, plus=False)

    sp = sub.add_parser("height", parents=[common], help="height of the Stiefel-Whitney class on Hom(T, G)")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--test", required=True, help="complete:n or cycle:m (odd m, reflection)")
    sp.add_argument("--k-max", type=int, default=None)
    sp.set_defaults(func=cmd_height)

    sp = sub.add_parser("bound", parents=[common], help="chromatic lower bound with its evidence")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--test", default="complete:2")
    sp.add_argument("--complete-n", type=int, default=None,
                    help="use chi >= n + h(Hom(K_n, G)) instead of reference heights")
    sp.add_argument("--m-cap", type=int, default=DEFAULT_M_CAP)
    sp.add_argument("--chi-cap", type=int, default=None, help="also compute the exact chromatic number up to this")
    sp.add_argument("--cache-dir", default=None, help=f"reference-height cache (default: ${CACHE_ENV})")
    sp.set_defaults(func=cmd_bound)

    sp = sub.add_parser("fold", parents=[common])
    sp.add_argument("graph")
    sp.set_defaults(func=cmd_fold)

    sp = sub.add_parser("chromatic", parents=[common])
    sp.add_argument("graph")
    sp.add_argument("--cap", type=int, default=12)
    sp.set_defaults(func=cmd_chromatic)

    sp = sub.add_parser("winding", parents=[common], help="winding number of a coloring C_m -> K_3")
    sp.add_argument("--map", required=True, help="colors 0,1,2 around the cycle, e.g. 0,1,2,0,1")
    sp.set_defaults(func=cmd_winding)

    sp = sub.add_parser("spectral", parents=[common], help="E1/E2 pages for Hom+(T, G)")
    sp.add_argument("T")
    sp.add_argument("G")
    sp.add_argument("--no-compare", action="store_true", help="skip building Hom+(T, G) directly")
    sp.set_defaults(func=lambda a: cmd_spectral(_as_pair(a)))

    sp = sub.add_parser("oracle-f", parents=[common], help="number of spheres in Hom(K_m, K_n)")
    sp.add_argument("m", type=int)
    sp.add_argument("n", type=int)
    sp.set_defaults(func=cmd_oracle_f)
    return p


def _as_pair(args):
    args.hom = (args.T, args.G)
    return args


def _fix_positional(args):
    if args.command in ("hom", "homplus", "dump"):
        _as_pair(args)
    return args


def emit(obj, fmt, stream=None):
    stream = stream or sys.stdout
    body = {k: v for k, v in obj.items() if not k.startswith("_")}
    if fmt == "json":
        body.pop("text", None)
        stream.write(json.dumps(body, sort_keys=False) + "\n")
    else:
        stream.write(_render_text(body) + "\n")


def run(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        stderr.write(f"{exc}\n")
        return 1
    except SystemExit as exc:  # --help
        return 0 if not exc.code else 1
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, stream=stderr)
    if args.budget < 1:
        stderr.write("budget must be >= 1\n")
        return 1
    try:
        out = args.func(_fix_positional(args))
    except BudgetError as exc:
        emit({"error": "budget exhausted", "message": str(exc), "count": exc.count, "stage": exc.stage},
             args.format, stdout)
        return 2
    except (UsageError, ParameterError, GraphFormatError, ShapeError, FreenessError, LookupError) as exc:
        stderr.write(f"error: {exc}\n")
        return 1
    except HomchromError as exc:
        stderr.write(f"internal error: {exc}\n")
        return 3
    emit(out, args.format, stdout)
    return out.get("_status", 0)


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
