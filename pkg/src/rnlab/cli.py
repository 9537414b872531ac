"""Command-line front end.

Subcommands: gen, sample, stats, distance, partition, estimate, test,
observe, scenario.  Every command that involves randomness takes --seed and
is reproducible bit for bit.
"""
from __future__ import annotations

import argparse
import json
import math
import sys

from . import generators
from .distances import PropertySpec, absolute_distance, distance_to_property
from .graphs import graph_to_json, load_graph, save_graph
from .local import estimate_matching, local_independent_set
from .oracles import OracleConfig, RadonNikodymOracle, observe, uniform_query
from .partitions import (
    PartitionInfeasible,
    UnsupportedFamily,
    build_uniform_cover,
    find_weighted_partition,
)
from .scenarios import ExperimentConfig, report_to_csv, run_scenario
from .statistics import empirical_stats, exact_stats
from .testers import observable_test, test_property

EXIT_REJECT = 3


def _parse_params(pairs: list[str]) -> dict:
    out = {}
    for pair in pairs or []:
        key, _, raw = pair.partition("=")
        if not _:
            raise SystemExit(f"bad --param {pair!r}, expected key=value")
        try:
            out[key] = json.loads(raw)
        except json.JSONDecodeError:
            out[key] = raw
    return out


def _emit(obj, path: str | None) -> None:
    text = json.dumps(obj, indent=1, sort_keys=True)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _property_from_name(name: str, forbidden: str | None, colors: int | None) -> PropertySpec:
    if name == "forest":
        return PropertySpec.forest()
    if name == "bipartite":
        return PropertySpec.bipartite()
    if name == "h_free":
        if not forbidden:
            raise SystemExit("h_free needs --forbidden n:u-v,u-v,...")
        head, _, rest = forbidden.partition(":")
        edges = []
        if rest:
            for part in rest.split(","):
                a, _, b = part.partition("-")
                edges.append((int(a), int(b)))
        return PropertySpec.h_free(int(head), edges)
    if name == "k_colorable":
        if not colors:
            raise SystemExit("k_colorable needs --colors")
        return PropertySpec.k_colorable(colors)
    raise SystemExit(f"unknown property {name!r}")


def cmd_gen(args) -> int:
    spec = generators.GeneratorSpec(
        family=args.family, params=_parse_params(args.param), seed=args.seed
    )
    G = generators.build_from_spec(spec)
    if hasattr(G, "materialize"):
        G = G.materialize()
    if args.out:
        save_graph(G, args.out)
    else:
        print(graph_to_json(G))
    return 0


def cmd_sample(args) -> int:
    G = load_graph(args.graph)
    counts: dict[str, int] = {}
    if args.oracle == "rn":
        oracle = RadonNikodymOracle(G, args.r, args.t, seed=args.seed)
        roots = oracle.sample_roots(args.queries)
        from .balls import canonicalize

        for root in roots.tolist():
            key = canonicalize(oracle.ball_at(root)).hex()
            counts[key] = counts.get(key, 0) + 1
    else:
        import numpy as np

        from .balls import canonicalize

        rng = np.random.Generator(np.random.Philox(key=args.seed))
        for _ in range(args.queries):
            ball = uniform_query(G, args.r, rng, t=args.t)
            key = canonicalize(ball).hex()
            counts[key] = counts.get(key, 0) + 1
    lines = [
        json.dumps({"key": k, "count": c}, sort_keys=True)
        for k, c in sorted(counts.items())
    ]
    if args.out:
        with open(args.out, "w") as fh:
            fh.write("\n".join(lines) + "\n")
    else:
        print("\n".join(lines))
    return 0


def cmd_stats(args) -> int:
    G = load_graph(args.graph)
    per_radius = {}
    for r in range(1, args.rmax + 1):
        if args.mode == "exact":
            st = exact_stats(G, r, args.t)
        else:
            st = empirical_stats(
                G,
                OracleConfig(
                    radius=r, depth=args.t, query_budget=args.queries, seed=args.seed
                ),
            )
        per_radius[str(r)] = st.to_json_dict()
    _emit({"r_max": args.rmax, "mode": args.mode, "per_radius": per_radius}, args.out)
    return 0


def cmd_distance(args) -> int:
    if args.stats_a and args.stats_b:
        from .statistics import BallStatistics, statistical_distance

        def load_profile(path):
            with open(path) as fh:
                obj = json.load(fh)
            return {
                int(r): BallStatistics.from_json_dict(st)
                for r, st in obj["per_radius"].items()
            }

        a = load_profile(args.stats_a)
        b = load_profile(args.stats_b)
        _emit({"statistical_distance": statistical_distance(a, b, args.rmax)}, args.out)
        return 0
    if not args.graph or not args.property:
        raise SystemExit("need either --stats-a/--stats-b or --graph/--property")
    G = load_graph(args.graph)
    P = _property_from_name(args.property, args.forbidden, args.colors)
    if args.absolute:
        value = absolute_distance(G, P, K=args.K)
        _emit({"absolute_distance": value, "K": args.K}, args.out)
    else:
        value, witness = distance_to_property(G, P, return_witness=True)
        _emit(
            {"distance": value, "witness_deletion_set": [list(e) for e in witness]},
            args.out,
        )
    return 0


def cmd_partition(args) -> int:
    G = load_graph(args.graph)
    try:
        if args.cover:
            dims = None
            if args.grid_dims:
                a, _, b = args.grid_dims.partition(",")
                dims = (int(a), int(b))
            cert = build_uniform_cover(G, args.epsilon, grid_dims=dims)
        else:
            cert = find_weighted_partition(G, args.epsilon, K_target=args.k_target)
    except (PartitionInfeasible, UnsupportedFamily) as e:
        _emit({"error": type(e).__name__, "message": str(e)}, args.out)
        return 1
    _emit(cert.to_json_dict(), args.out)
    return 0


def cmd_estimate(args) -> int:
    G = load_graph(args.graph)
    if args.what == "independence":
        J, value = local_independent_set(G, args.epsilon, seed=args.seed)
        _emit({"value": value, "witness_size": len(J)}, args.out)
    else:
        try:
            value = estimate_matching(G, args.epsilon, seed=args.seed)
        except PartitionInfeasible as e:
            _emit({"error": "PartitionInfeasible", "message": str(e)}, args.out)
            return 1
        _emit({"value": value}, args.out)
    return 0


def cmd_test(args) -> int:
    G = load_graph(args.graph)
    P = _property_from_name(args.property, args.forbidden, args.colors)
    if args.observable:
        verdict = observable_test(G, P, args.epsilon)
    else:
        verdict = test_property(G, P, args.epsilon, K=args.K, seed=args.seed)
    _emit(
        {
            "verdict": verdict.verdict,
            "violating_fraction": verdict.violating_fraction,
            "params": verdict.params,
            "evidence": {str(k): v for k, v in verdict.evidence.items()},
        },
        args.out,
    )
    return EXIT_REJECT if verdict.verdict == "REJECT" else 0


def cmd_observe(args) -> int:
    G = load_graph(args.graph)
    table = observe(G, args.s)
    _emit(
        {
            "depth": table.depth,
            "degree_bound": table.degree_bound,
            "entries": dict(sorted(table.entries.items())),
        },
        args.out,
    )
    return 0


def cmd_scenario(args) -> int:
    if args.config:
        with open(args.config) as fh:
            raw = json.load(fh)
        cfg = ExperimentConfig(
            scenario=raw["scenario"],
            params=raw.get("params", {}),
            seed=int(raw.get("seed", args.seed)),
            output_path=raw.get("output_path", args.out or "report.jsonl"),
            threads=int(raw.get("threads", args.threads)),
        )
    else:
        if not args.name:
            raise SystemExit("need --name or --config")
        cfg = ExperimentConfig(
            scenario=args.name,
            params=_parse_params(args.param),
            seed=args.seed,
            output_path=args.out or "report.jsonl",
            threads=args.threads,
        )
    path = run_scenario(cfg)
    if args.csv:
        report_to_csv(path, args.csv)
    print(path)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rnlab",
        description="Sampling, statistics, and testing on weighted bounded-degree graphs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--out", type=str, default=None)

    p = sub.add_parser("gen", help="generate a graph file")
    p.add_argument("--family", required=True)
    p.add_argument("--param", action="append", metavar="KEY=VALUE")
    common(p)
    p.set_defaults(fn=cmd_gen)

    p = sub.add_parser("sample", help="draw oracle queries, count ball keys")
    p.add_argument("--graph", required=True)
    p.add_argument("--oracle", choices=["rn", "uniform"], default="rn")
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--t", type=int, default=2)
    p.add_argument("--queries", type=int, default=1000)
    common(p)
    p.set_defaults(fn=cmd_sample)

    p = sub.add_parser("stats", help="ball statistics profile")
    p.add_argument("--graph", required=True)
    p.add_argument("--mode", choices=["exact", "empirical"], default="exact")
    p.add_argument("--rmax", type=int, default=3)
    p.add_argument("--t", type=int, default=2)
    p.add_argument("--queries", type=int, default=10_000)
    common(p)
    p.set_defaults(fn=cmd_stats)

    for alias in ("distance", "dist"):
        p = sub.add_parser(alias, help="statistical or property distance")
        p.add_argument("--stats-a", dest="stats_a")
        p.add_argument("--stats-b", dest="stats_b")
        p.add_argument("--rmax", type=int, default=3)
        p.add_argument("--graph")
        p.add_argument("--property")
        p.add_argument("--forbidden")
        p.add_argument("--colors", type=int)
        p.add_argument("--absolute", action="store_true")
        p.add_argument("--K", type=float, default=2.0)
        common(p)
        p.set_defaults(fn=cmd_distance)

    p = sub.add_parser("partition", help="hyperfinite removal certificates")
    p.add_argument("--graph", required=True)
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--k-target", dest="k_target", type=int, default=None)
    p.add_argument("--cover", action="store_true")
    p.add_argument("--grid-dims", dest="grid_dims")
    common(p)
    p.set_defaults(fn=cmd_partition)

    p = sub.add_parser("estimate", help="independence or matching estimators")
    p.add_argument("--what", choices=["independence", "matching"], required=True)
    p.add_argument("--graph", required=True)
    p.add_argument("--epsilon", type=float, required=True)
    common(p)
    p.set_defaults(fn=cmd_estimate)

    p = sub.add_parser("test", help="property tester (exit 3 on REJECT)")
    p.add_argument("--graph", required=True)
    p.add_argument("--property", required=True)
    p.add_argument("--forbidden")
    p.add_argument("--colors", type=int)
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--K", type=float, default=None)
    p.add_argument("--observable", action="store_true")
    common(p)
    p.set_defaults(fn=cmd_test)

    p = sub.add_parser("observe", help="induced-subgraph observation table")
    p.add_argument("--graph", required=True)
    p.add_argument("--s", type=int, required=True)
    common(p)
    p.set_defaults(fn=cmd_observe)

    p = sub.add_parser("scenario", help="run a canned experiment")
    p.add_argument("--name")
    p.add_argument("--config")
    p.add_argument("--param", action="append", metavar="KEY=VALUE")
    p.add_argument("--csv")
    common(p)
    p.set_defaults(fn=cmd_scenario)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
