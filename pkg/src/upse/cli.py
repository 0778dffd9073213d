"""Command-line front end.

Commands: decide, embed, gen, oracle, bench.  Exit codes: 0 = YES,
1 = NO, 2 = error.  All file I/O lives here; the library modules stay
pure.
"""

from __future__ import annotations

import argparse
import csv
import math
import random
import statistics
import sys
import time
from typing import Optional

from .blocks import structural_check
from .digraph import Digraph
from .embedding import Embedding, validate_upse
from .errors import InputError, StructureError, UpseError
from .io import (load_graph, load_points, save_embedding, save_graph,
                 save_points)
from .oracle import (InstanceSpec, all_tag_strings, brute_force_restricted,
                     brute_force_upse, enumerate_directed_trees, generate,
                     random_tags)
from .outerplanar import outerplanar_upse_all, outerplanar_upse_fixed
from .points import ConvexPointSet
from .tree import (RestrictedSolver, Window, tree_upse_all, tree_upse_all_pairs,
                   tree_upse_fixed)
from .digraph import RootedTree

YES, NO, ERROR = 0, 1, 2


def _decide_instance(graph: Digraph, points: ConvexPointSet,
                     source: Optional[int], sink: Optional[int],
                     naive: bool, no_reuse: bool):
    """Return (embedding or None, reason or None)."""
    if graph.n != points.n:
        raise InputError(f"{graph.n} vertices vs {points.n} points")
    if graph.n and graph.is_tree():
        if source is not None and sink is not None:
            return tree_upse_fixed(graph, points, source, sink, naive=naive), None
        return tree_upse_all(graph, points, reuse=not no_reuse, naive=naive), None
    check = structural_check(graph)
    if not check.accepted:
        return None, check.reason
    if source is not None and sink is not None:
        return outerplanar_upse_fixed(graph, points, source, sink), None
    return outerplanar_upse_all(graph, points), None


def _witness(emb: Embedding) -> str:
    if len(emb) == 0:
        return "empty instance"
    s = emb.assignment.index(1)
    t = emb.assignment.index(len(emb))
    return f"source {s} on the bottom point, sink {t} on the top point"


def cmd_decide(args) -> int:
    graph = load_graph(args.graph)
    points = load_points(args.points)
    t0 = time.perf_counter()
    emb, reason = _decide_instance(graph, points, args.source, args.sink,
                                   args.naive_dp, args.no_path_reuse)
    ms = (time.perf_counter() - t0) * 1000
    if emb is None:
        suffix = f" ({reason})" if reason else ""
        print(f"NO{suffix}  [{ms:.1f} ms]")
        return NO
    print(f"YES  {_witness(emb)}  [{ms:.1f} ms]")
    return YES


def cmd_embed(args) -> int:
    graph = load_graph(args.graph)
    points = load_points(args.points)
    t0 = time.perf_counter()
    emb, reason = _decide_instance(graph, points, args.source, args.sink,
                                   args.naive_dp, args.no_path_reuse)
    ms = (time.perf_counter() - t0) * 1000
    if emb is None:
        suffix = f" ({reason})" if reason else ""
        print(f"NO{suffix}  [{ms:.1f} ms]")
        return NO
    report = validate_upse(graph, points, emb)
    if not report.ok:
        print("internal error: produced embedding failed validation", file=sys.stderr)
        return ERROR
    save_embedding(emb, args.out)
    print(f"YES  {_witness(emb)}  [{ms:.1f} ms]")
    print(f"embedding written to {args.out}")
    if args.svg:
        from .render import draw_embedding
        draw_embedding(graph, points, emb, args.svg)
        print(f"drawing written to {args.svg}")
    return YES


def cmd_gen(args) -> int:
    spec = InstanceSpec(kind=args.kind, n=args.n, seed=args.seed,
                        left_fraction=args.left_fraction,
                        orient_bias=args.orient_bias)
    graph, points = generate(spec)
    if args.one_sided:
        points = ConvexPointSet("L" * graph.n)
    save_graph(graph, args.out_graph)
    save_points(points, args.out_points)
    print(f"{args.kind} instance n={args.n} seed={args.seed} -> "
          f"{args.out_graph}, {args.out_points}")
    return YES


def _oracle_tree_suite(max_n: int) -> list[str]:
    failures = []
    for n in range(1, max_n + 1):
        checked = 0
        for g in enumerate_directed_trees(n):
            for tags in all_tag_strings(n):
                points = ConvexPointSet(tags)
                dp = tree_upse_all(g, points) is not None
                oc = brute_force_upse(g, points) is not None
                checked += 1
                if dp != oc:
                    failures.append(f"tree n={n} arcs={list(g.arcs)} tags={tags} "
                                    f"dp={dp} oracle={oc}")
                    if len(failures) >= 3:
                        return failures
        print(f"  trees n={n}: {checked} instances, ok")
    return failures


def _oracle_restricted_suite(max_n: int) -> list[str]:
    failures = []
    for n in range(1, max_n + 1):
        checked = 0
        for g in enumerate_directed_trees(n):
            for tags in all_tag_strings(n):
                points = ConvexPointSet(tags)
                window = Window.full(points)
                for root in range(n):
                    solver = RestrictedSolver(RootedTree(g, root))
                    for p_r in range(1, n + 1):
                        dp = solver.feasible(window, p_r)
                        oc = brute_force_restricted(g, root, points, p_r)
                        checked += 1
                        if dp != oc:
                            failures.append(
                                f"restricted n={n} arcs={list(g.arcs)} tags={tags} "
                                f"root={root} p={p_r} dp={dp} oracle={oc}")
                            if len(failures) >= 3:
                                return failures
        print(f"  restricted n={n}: {checked} cases, ok")
    return failures


def _oracle_outerplanar_suite(count: int, seed: int) -> list[str]:
    failures = []
    rng = random.Random(seed)
    done = 0
    trial = 0
    while done < count:
        trial += 1
        n = rng.randint(2, 8)
        graph, _ = generate(InstanceSpec("outerplanar-dag", n, seed * 100003 + trial))
        if not structural_check(graph).accepted:
            continue
        done += 1
        points = ConvexPointSet(random_tags(n, rng))
        for s in graph.sources():
            for t in graph.sinks():
                if s == t and n > 1:
                    continue
                dp = outerplanar_upse_fixed(graph, points, s, t) is not None
                oc = brute_force_upse(graph, points, pins={s: 1, t: n}) is not None
                if dp != oc:
                    failures.append(f"outerplanar arcs={list(graph.arcs)} "
                                    f"tags={points.tags} pair=({s},{t}) "
                                    f"dp={dp} oracle={oc}")
                    if len(failures) >= 3:
                        return failures
    print(f"  outerplanar: {done} instances, ok")
    return failures


def cmd_oracle(args) -> int:
    failures: list[str] = []
    print(f"differential suites (max-n={args.max_n}, count={args.count}, "
          f"seed={args.seed})")
    failures += _oracle_tree_suite(args.max_n)
    if not failures:
        failures += _oracle_restricted_suite(min(args.max_n, 6))
    if not failures:
        failures += _oracle_outerplanar_suite(args.count, args.seed)
    if failures:
        print("DISAGREEMENTS FOUND:")
        for f in failures:
            print(" ", f)
        return NO
    print("all suites agree")
    return YES


def _fit_slope(sizes: list[int], times: list[float]) -> float:
    xs = [math.log(s) for s in sizes]
    ys = [math.log(max(t, 1e-9)) for t in times]
    mx, my = statistics.fmean(xs), statistics.fmean(ys)
    num = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    den = sum((x - mx) ** 2 for x in xs)
    return num / den if den else 0.0


def run_bench(sizes: list[int], reps: int, seed: int) -> list[dict]:
    rows = []
    for n in sizes:
        by_variant: dict[str, list[float]] = {}
        for rep in range(reps):
            graph, points = generate(InstanceSpec("tree", n, seed + 7919 * rep))
            t0 = time.perf_counter()
            tree_upse_all(graph, points)
            by_variant.setdefault("decide-first", []).append(
                (time.perf_counter() - t0) * 1000)
            for variant, reuse in (("all-pairs/reuse", True),
                                   ("all-pairs/no-reuse", False)):
                t0 = time.perf_counter()
                tree_upse_all_pairs(graph, points, reuse=reuse)
                by_variant.setdefault(variant, []).append(
                    (time.perf_counter() - t0) * 1000)
            s = graph.sources()[0]
            t = graph.sinks()[0]
            for variant, naive in (("fixed/opt", False), ("fixed/naive", True)):
                t0 = time.perf_counter()
                tree_upse_fixed(graph, points, s, t, naive=naive)
                by_variant.setdefault(variant, []).append(
                    (time.perf_counter() - t0) * 1000)
        for variant, ts in by_variant.items():
            rows.append({"size": n, "variant": variant,
                         "median_ms": statistics.median(ts)})
    return rows


def cmd_bench(args) -> int:
    sizes = [int(s) for s in args.sizes.split(",")]
    rows = run_bench(sizes, args.reps, args.seed)
    with open(args.csv, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=["size", "variant", "median_ms"])
        writer.writeheader()
        writer.writerows(rows)
    print(f"benchmark written to {args.csv}")
    for variant in sorted({r["variant"] for r in rows}):
        pts = sorted((r["size"], r["median_ms"]) for r in rows
                     if r["variant"] == variant)
        slope = _fit_slope([p[0] for p in pts], [p[1] for p in pts])
        line = "  ".join(f"n={s}:{t:8.2f}ms" for s, t in pts)
        print(f"{variant:>18}  {line}  log-log slope {slope:.2f}")
    if args.fig:
        from .render import draw_bench
        draw_bench(rows, args.fig)
        print(f"figure written to {args.fig}")
    return YES


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="upse",
        description="Upward straight-line embeddings of directed trees and "
                    "outerplanar DAGs into convex point sets.")
    sub = parser.add_subparsers(dest="command", required=True)

    def io_args(p, with_out=False):
        p.add_argument("--graph", required=True, help="graph JSON file")
        p.add_argument("--points", required=True, help="point-set JSON file")
        p.add_argument("--source", type=int, default=None,
                       help="pin this source to the bottom point")
        p.add_argument("--sink", type=int, default=None,
                       help="pin this sink to the top point")
        p.add_argument("--naive-dp", action="store_true",
                       help="use the plain two-parameter DP (diff testing)")
        p.add_argument("--no-path-reuse", action="store_true",
                       help="recompute path prefixes for every sink")

    p = sub.add_parser("decide", help="decide embeddability")
    io_args(p)
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("embed", help="decide, construct and render")
    io_args(p)
    p.add_argument("--out", required=True, help="embedding JSON output")
    p.add_argument("--svg", default=None, help="drawing output (svg)")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("gen", help="generate an instance")
    p.add_argument("--kind", required=True,
                   choices=["tree", "caterpillar", "path", "outerplanar-dag"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--left-fraction", type=float, default=0.5)
    p.add_argument("--orient-bias", type=float, default=0.5)
    p.add_argument("--one-sided", action="store_true",
                   help="tag every point left")
    p.add_argument("--out-graph", required=True)
    p.add_argument("--out-points", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("oracle", help="run differential suites")
    p.add_argument("--max-n", type=int, default=5)
    p.add_argument("--count", type=int, default=100,
                   help="random outerplanar instances")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("bench", help="benchmark the tree decision")
    p.add_argument("--sizes", default="16,24,32,48")
    p.add_argument("--reps", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv", default="bench.csv")
    p.add_argument("--fig", default=None)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, StructureError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR
    except UpseError as exc:  # pragma: no cover
        print(f"error: {exc}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
