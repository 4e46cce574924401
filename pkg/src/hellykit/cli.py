"""Command-line front end.

Exit codes: 0 for clean runs and estimate-only reports, 1 when a checked
theorem-grade property is violated (that is a bug, not a measurement), 2 for
usage errors.  Reports are deterministic given configuration and seed.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import corpus as corpus_mod
from .derived import verify_derivation_theorems
from .gamma import (GammaConfig, GammaWindow, certified_clauses, min_n_loops,
                    min_n_quotient, recommended_n)
from .graph_io import graph_to_json, load_graph, to_dot
from .graphs import QGParams
from .groups import GroupSpec
from .helly import analyze, hellyfication
from .quasiconvex import OrbitSpec, verify_section5
from .relwords import measure_bcp, measure_delta, measure_triangles, measure_zeta
from .reports import build_report, render

VIOLATION_EXIT = 1


def _emit(report: dict, out: str | None) -> None:
    text = render(report)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_analyze(args) -> int:
    g = load_graph(args.graph)
    rep = analyze(g, max_vertices=args.max_vertices)
    result = {
        "is_helly": rep.is_helly,
        "xi": rep.coarse_constant_xi,
        "pseudo_modular": rep.is_pseudo_modular,
        "beta": rep.stable_interval_beta,
    }
    if rep.witness is not None:
        result["witness"] = [[c, r] for c, r in rep.witness.radii]
    config = {"graph": args.graph, "max_vertices": args.max_vertices}
    _emit(build_report("analyze", config, result), args.out)
    return 0


def _cmd_hellyfy(args) -> int:
    g = load_graph(args.graph)
    out_graph, embedding = hellyfication(g, max_vertices=args.max_vertices)
    record = graph_to_json(out_graph, meta={"source": args.graph})
    result = {"graph": record, "embedding": embedding, "helly": True,
              "isometric": True}
    config = {"graph": args.graph, "max_vertices": args.max_vertices}
    _emit(build_report("hellyfy", config, result), args.out)
    print("helly: true")
    return 0


def _cmd_group(args) -> int:
    spec = GroupSpec.load(args.spec)
    if args.action != "ball":
        raise SystemExit(2)
    dist = spec.enumerate_ball(args.radius, metric=args.metric,
                               parabolic_cap=args.parabolic_cap,
                               max_elements=args.guard)
    from .gamma import element_to_obj
    by_radius = [0] * (args.radius + 1)
    for r in dist.values():
        by_radius[r] += 1
    result = {"count": len(dist), "by_radius": by_radius}
    if args.list_elements:
        result["elements"] = [element_to_obj(g) for g in sorted(dist)]
    config = {"spec": spec.to_json(), "radius": args.radius,
              "metric": args.metric, "parabolic_cap": args.parabolic_cap}
    _emit(build_report("group-ball", config, result), args.out)
    return 0


def _window_sanity(window: GammaWindow) -> list[str]:
    """Degree and partition checks on every fully materialized vertex."""
    problems = []
    spec = window.config.spec
    expected_free = len(spec.x_letters()) + len(spec.factors)
    for v in window.vertices():
        if not window.has_full_neighborhood(v):
            continue
        if v[0] == "free" and window.degree(v) != expected_free:
            problems.append(f"free vertex degree {window.degree(v)} != {expected_free}")
        if v[0] == "med" and window.degree(v) != 2:
            problems.append(f"medial vertex degree {window.degree(v)} != 2")
        if v[0] == "free":
            if any(w[0] == "free" for w in window.adj[v]):
                problems.append("two adjacent free vertices")
    return problems


def _cmd_gamma(args) -> int:
    spec = GroupSpec.load(args.group)
    config = GammaConfig(spec, args.n_thick, allow_small_n=args.allow_small_n)
    window = GammaWindow(config, args.radius, max_vertices=args.guard)
    problems = _window_sanity(window)
    result = window.to_json()
    result["kind_counts"] = window.kind_counts()
    result["min_n_quotient"] = min_n_quotient(spec)
    result["min_n_short_cycles"] = min_n_loops(spec)
    result["recommended_n"] = recommended_n(spec)
    result["assumption_clauses"] = certified_clauses(spec, args.n_thick)
    result["sanity_problems"] = problems
    cfg = {"group": spec.to_json(), "N": args.n_thick, "radius": args.radius,
           "allow_small_n": args.allow_small_n}
    _emit(build_report("gamma-build", cfg, result), args.out)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(window.to_dot())
    if args.graph_out:
        g, _ = window.to_graph()
        with open(args.graph_out, "w", encoding="utf-8") as fh:
            json.dump(graph_to_json(g, meta={"projected_from": "gamma-window"}),
                      fh, sort_keys=True, indent=2)
            fh.write("\n")
    return VIOLATION_EXIT if problems else 0


def _cmd_derive(args) -> int:
    spec = GroupSpec.load(args.group)
    config = GammaConfig(spec, args.n_thick, allow_small_n=args.allow_small_n)
    window = GammaWindow(config, args.radius, max_vertices=args.guard)
    report = verify_derivation_theorems(window, args.samples, args.seed)
    cfg = {"group": spec.to_json(), "N": args.n_thick, "radius": args.radius,
           "samples": args.samples, "seed": args.seed}
    _emit(build_report("derive", cfg, report.to_json()), args.out)
    return VIOLATION_EXIT if report.violations_two_local else 0


def _cmd_measure(args) -> int:
    spec = GroupSpec.load(args.group)
    lam, c = Fraction(args.lam), Fraction(args.c)
    common = dict(samples=args.samples, seed=args.seed, radius=args.radius,
                  parabolic_cap=args.parabolic_cap)
    if args.what == "bcp":
        rep = measure_bcp(spec, lam, c, args.k, **common)
    elif args.what in ("nu", "mu"):
        rep = measure_triangles(spec, lam, c, **common)
    elif args.what == "delta":
        rep = measure_delta(spec, **common)
    elif args.what == "zeta":
        rep = measure_zeta(spec, lam, c, **common)
    else:
        raise SystemExit(2)
    cfg = {"group": spec.to_json(), "what": args.what, "samples": args.samples,
           "seed": args.seed, "radius": args.radius,
           "parabolic_cap": args.parabolic_cap, "lambda": str(lam), "c": str(c),
           "k": args.k}
    _emit(build_report("measure", cfg, rep.to_json()), args.out)
    return 0


def _read_orbit(path: str) -> list[int]:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    stripped = text.lstrip()
    if stripped.startswith("["):
        return [int(v) for v in json.loads(text)]
    return [int(tok) for tok in text.split()]


def _cmd_quasiconvex(args) -> int:
    ambient = load_graph(args.ambient)
    orbit = _read_orbit(args.orbit)
    spec = OrbitSpec(ambient, tuple(sorted(set(orbit))), args.k)
    report = verify_section5(spec, xi_ambient=args.xi, cap=args.cap,
                             instance=args.ambient)
    cfg = {"ambient": args.ambient, "orbit": sorted(set(orbit)), "k": args.k,
           "lambda": str(Fraction(args.lam)), "c": str(Fraction(args.c)),
           "cap": args.cap}
    result = report.to_json()
    # the explicitly requested (lambda, c) is swept in addition to the lemma grid
    from .quasiconvex import quasiconvexity_k
    qc = quasiconvexity_k(ambient, spec.orbit, QGParams(Fraction(args.lam),
                                                        Fraction(args.c)),
                          cap=args.cap, allow_cap=True)
    result["requested_qc"] = {"lambda": str(Fraction(args.lam)),
                              "c": str(Fraction(args.c)), "k": qc.k,
                              "capped": qc.capped, "enumerated": qc.enumerated}
    result["swept_grid"] = result["swept_grid"] + [
        f"({Fraction(args.lam)},{Fraction(args.c)})"]
    _emit(build_report("quasiconvex", cfg, result), args.out)
    return VIOLATION_EXIT if report.violations() else 0


def _cmd_corpus(args) -> int:
    params: dict = {}
    for item in args.param or []:
        key, _, value = item.partition("=")
        params[key] = value
    if args.kind == "group-freeproduct":
        params["factors"] = (params.get("factors") or "").split(",")
    record, name = corpus_mod.generate(args.kind, params)
    out = args.out or name
    with open(out, "w", encoding="utf-8") as fh:
        json.dump(record, fh, sort_keys=True, indent=2)
        fh.write("\n")
    print(out)
    return 0


def _cmd_export_dot(args) -> int:
    g = load_graph(args.graph)
    text = to_dot(g)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hellykit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="Helly-type report for a graph file")
    p.add_argument("graph")
    p.add_argument("--max-vertices", type=int, default=14)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("hellyfy", help="minimal Helly graph containing the input")
    p.add_argument("graph")
    p.add_argument("--max-vertices", type=int, default=14)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_hellyfy)

    p = sub.add_parser("group", help="group-model queries")
    p.add_argument("action", choices=["ball"])
    p.add_argument("--spec", required=True)
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--metric", choices=["rel", "abs"], default="rel")
    p.add_argument("--parabolic-cap", type=int, default=2)
    p.add_argument("--guard", type=int, default=1_000_000)
    p.add_argument("--list-elements", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_group)

    p = sub.add_parser("gamma", help="build a finite window of the glued graph")
    p.add_argument("action", choices=["build"])
    p.add_argument("--group", required=True)
    p.add_argument("--N", dest="n_thick", type=int, required=True)
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--allow-small-N", dest="allow_small_n", action="store_true")
    p.add_argument("--guard", type=int, default=200_000)
    p.add_argument("--dot")
    p.add_argument("--graph-out", dest="graph_out",
                   help="also write the window projected to a plain graph")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_gamma)

    p = sub.add_parser("derive", help="derived-word checks over window geodesics")
    p.add_argument("--group", required=True)
    p.add_argument("--N", dest="n_thick", type=int, required=True)
    p.add_argument("--radius", type=int, default=8)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--allow-small-N", dest="allow_small_n", action="store_true")
    p.add_argument("--guard", type=int, default=200_000)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_derive)

    p = sub.add_parser("measure", help="empirical relative-hyperbolicity constants")
    p.add_argument("--what", choices=["bcp", "nu", "mu", "delta", "zeta"],
                   required=True)
    p.add_argument("--group", required=True)
    p.add_argument("--radius", type=int, default=6)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--lambda", dest="lam", default="2")
    p.add_argument("--c", default="1")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--parabolic-cap", type=int, default=2)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_measure)

    p = sub.add_parser("quasiconvex", help="orbit-subgraph lemma checks")
    p.add_argument("--ambient", required=True)
    p.add_argument("--orbit", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--lambda", dest="lam", default="1")
    p.add_argument("--c", default="0")
    p.add_argument("--xi", type=int, default=None)
    p.add_argument("--cap", type=int, default=200_000)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_quasiconvex)

    p = sub.add_parser("corpus", help="generate corpus graph/group files")
    p.add_argument("kind", choices=["cycle", "path", "tree-random", "king-grid",
                                    "complete", "group-freeproduct"])
    p.add_argument("--param", action="append",
                   help="key=value, e.g. n=6 or factors=cyclic:2,cyclic:3")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_corpus)

    p = sub.add_parser("dot", help="DOT export of a graph file")
    p.add_argument("graph")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_export_dot)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
