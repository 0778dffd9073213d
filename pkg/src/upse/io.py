"""Instance file formats.

Graph file:      {"n": int, "arcs": [[tail, head], ...]}
Point-set file:  abstract {"tags": "LRLRL"} with tags in ascending
                 y-rank, or concrete {"points": [["x", "y"], ...]} with
                 decimal-string coordinates parsed exactly; concrete
                 input must be in convex and general position with
                 distinct y and is converted to the abstract form.
Embedding file:  {"map": [rank per vertex]} with ranks 1..n.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Union

from .digraph import Digraph
from .embedding import Embedding
from .errors import InputError
from .points import ConvexPointSet

PathLike = Union[str, Path]


def _load(path: PathLike) -> dict:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise InputError(f"{path}: expected a JSON object")
    return data


def load_graph(path: PathLike) -> Digraph:
    data = _load(path)
    try:
        n = int(data["n"])
        arcs = [(int(u), int(v)) for u, v in data["arcs"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: bad graph file: {exc}") from exc
    return Digraph(n, arcs)


def save_graph(graph: Digraph, path: PathLike) -> None:
    with open(path, "w") as fh:
        json.dump({"n": graph.n, "arcs": [list(a) for a in graph.arcs]}, fh)
        fh.write("\n")


def _parse_exact(text: str) -> Fraction:
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad exact number {text!r}") from exc


def _orient(p, q, r) -> int:
    v = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    return (v > 0) - (v < 0)


def points_from_coordinates(coords: list[tuple[Fraction, Fraction]]) -> ConvexPointSet:
    """Convert exact coordinates to the abstract side-tagged form.

    Rejects duplicate y values, collinear triples and points inside the
    hull of the others.  Points strictly left of the bottom-to-top chord
    become the left side; the bottom and top points join the left side
    (two-point sets are tagged LL).
    """
    n = len(coords)
    if n == 0:
        return ConvexPointSet("")
    order = sorted(range(n), key=lambda i: coords[i][1])
    ys = [coords[i][1] for i in order]
    if any(a == b for a, b in zip(ys, ys[1:])):
        raise InputError("two points share a y-coordinate")
    if n >= 3:
        from itertools import combinations
        for i, j, k in combinations(range(n), 3):
            if _orient(coords[i], coords[j], coords[k]) == 0:
                raise InputError("three points are collinear")
        # convex position: no point inside a triangle of three others
        for i in range(n):
            others = [coords[j] for j in range(n) if j != i]
            for a, b, c in combinations(others, 3):
                if _orient(a, b, coords[i]) == _orient(b, c, coords[i]) \
                        == _orient(c, a, coords[i]):
                    raise InputError("point set is not in convex position")
    bottom, top = coords[order[0]], coords[order[-1]]
    tags = []
    for idx in order:
        p = coords[idx]
        if p == bottom or p == top:
            tags.append("L")
        else:
            tags.append("L" if _orient(bottom, top, p) > 0 else "R")
    return ConvexPointSet("".join(tags))


def load_points(path: PathLike) -> ConvexPointSet:
    data = _load(path)
    if "tags" in data:
        if not isinstance(data["tags"], str):
            raise InputError(f"{path}: tags must be a string")
        return ConvexPointSet(data["tags"])
    if "points" in data:
        try:
            coords = [(_parse_exact(x), _parse_exact(y)) for x, y in data["points"]]
        except (TypeError, ValueError) as exc:
            raise InputError(f"{path}: bad points entry: {exc}") from exc
        return points_from_coordinates(coords)
    raise InputError(f"{path}: point-set file needs 'tags' or 'points'")


def save_points(points: ConvexPointSet, path: PathLike) -> None:
    with open(path, "w") as fh:
        json.dump({"tags": points.tags}, fh)
        fh.write("\n")


def load_embedding(path: PathLike, n: int) -> Embedding:
    data = _load(path)
    try:
        ranks = [int(r) for r in data["map"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: bad embedding file: {exc}") from exc
    if len(ranks) != n:
        raise InputError(f"{path}: embedding has {len(ranks)} entries for n={n}")
    return Embedding(tuple(ranks))


def save_embedding(emb: Embedding, path: PathLike) -> None:
    with open(path, "w") as fh:
        json.dump({"map": list(emb.assignment)}, fh)
        fh.write("\n")
