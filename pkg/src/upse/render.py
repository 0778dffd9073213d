"""Figure rendering.

Drawings realize the abstract point set as exact rational coordinates,
rescale them to a fixed canvas and draw arcs as straight arrows with
vertex/rank labels.  Benchmark reports get a log-log runtime figure.
Matplotlib is imported lazily so the decision paths stay import-light.
"""

from __future__ import annotations

from pathlib import Path
from typing import Union

from .digraph import Digraph
from .embedding import Embedding
from .points import ConvexPointSet, realize_coordinates

PathLike = Union[str, Path]

_CANVAS = 1000.0


def draw_embedding(graph: Digraph, points: ConvexPointSet, emb: Embedding,
                   path: PathLike) -> None:
    """Render an embedding to an image file (format from the suffix,
    typically .svg)."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    from matplotlib.patches import FancyArrowPatch

    coords = realize_coordinates(points)
    xs = [float(x) for x, _ in coords]
    ys = [float(y) for _, y in coords]
    span_x = (max(xs) - min(xs)) or 1.0
    span_y = (max(ys) - min(ys)) or 1.0
    scale = 0.9 * _CANVAS / max(span_x, span_y)

    def canvas(rank: int) -> tuple[float, float]:
        x, y = xs[rank - 1], ys[rank - 1]
        return ((x - min(xs)) * scale + 0.05 * _CANVAS,
                (y - min(ys)) * scale + 0.05 * _CANVAS)

    fig, ax = plt.subplots(figsize=(6, 6))
    for u, v in graph.arcs:
        pu, pv = canvas(emb.rank_of(u)), canvas(emb.rank_of(v))
        ax.add_patch(FancyArrowPatch(pu, pv, arrowstyle="-|>",
                                     mutation_scale=14, color="#20507a",
                                     lw=1.4, shrinkA=9, shrinkB=9, zorder=1))
    for v in range(graph.n):
        rank = emb.rank_of(v)
        cx, cy = canvas(rank)
        side = points.side_of(rank)
        ax.plot([cx], [cy], "o", ms=14,
                color="#d97730" if side == "L" else "#4a9648", zorder=2)
        ax.annotate(f"v{v}", (cx, cy), ha="center", va="center",
                    fontsize=8, color="white", zorder=3)
        ax.annotate(f"r{rank}", (cx + 18, cy), ha="left", va="center",
                    fontsize=7, color="#555555", zorder=3)
    ax.set_xlim(0, _CANVAS)
    ax.set_ylim(0, _CANVAS)
    ax.set_aspect("equal")
    ax.axis("off")
    fig.savefig(path, bbox_inches="tight")
    plt.close(fig)


def draw_bench(rows: list[dict], path: PathLike) -> None:
    """Log-log runtime figure from benchmark rows
    (size / variant / median_ms)."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6, 4))
    variants = sorted({r["variant"] for r in rows})
    for variant in variants:
        pts = sorted((r["size"], r["median_ms"]) for r in rows
                     if r["variant"] == variant)
        ax.plot([p[0] for p in pts], [max(p[1], 1e-3) for p in pts],
                marker="o", label=variant)
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("instance size n")
    ax.set_ylabel("median wall time [ms]")
    ax.legend(fontsize=8)
    ax.grid(True, which="both", alpha=0.3)
    fig.savefig(path, bbox_inches="tight")
    plt.close(fig)
