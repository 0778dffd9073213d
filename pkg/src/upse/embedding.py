"""Embeddings and validation.

An embedding maps every vertex to a point rank.  ``validate_upse``
checks the combinatorial model; ``validate_exact`` re-checks crossings
and upwardness on exact realized coordinates, so the two give
independent verdicts.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .digraph import Digraph
from .errors import InputError
from .points import ConvexPointSet, chords_cross, realize_coordinates

Arc = tuple[int, int]


@dataclass(frozen=True)
class Embedding:
    """Vertex -> point-rank assignment (ranks are 1-based)."""

    assignment: tuple[int, ...]

    @staticmethod
    def from_dict(mapping: dict[int, int], n: int) -> "Embedding":
        if sorted(mapping) != list(range(n)):
            raise InputError("embedding must assign every vertex exactly once")
        return Embedding(tuple(mapping[v] for v in range(n)))

    def rank_of(self, v: int) -> int:
        return self.assignment[v]

    def __len__(self) -> int:
        return len(self.assignment)


@dataclass
class ValidationReport:
    upward_violations: list[Arc] = field(default_factory=list)
    crossing_pairs: list[tuple[Arc, Arc]] = field(default_factory=list)
    bijection_errors: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.upward_violations or self.crossing_pairs
                    or self.bijection_errors)


def validate_upse(graph: Digraph, points: ConvexPointSet,
                  emb: Embedding) -> ValidationReport:
    """Check that an embedding is an upward planar straight-line
    embedding: every arc strictly increases in y-rank and no two arc
    chords cross.  A non-bijective map is reported and skips the rest."""
    report = ValidationReport()
    if len(emb) != graph.n:
        report.bijection_errors.append(
            f"embedding has {len(emb)} entries for {graph.n} vertices")
        return report
    if graph.n != points.n:
        report.bijection_errors.append(
            f"{graph.n} vertices vs {points.n} points")
        return report
    seen: dict[int, int] = {}
    for v, rank in enumerate(emb.assignment):
        if not 1 <= rank <= points.n:
            report.bijection_errors.append(f"vertex {v} mapped to bad rank {rank}")
        elif rank in seen:
            report.bijection_errors.append(
                f"vertices {seen[rank]} and {v} share rank {rank}")
        else:
            seen[rank] = v
    if report.bijection_errors:
        return report

    for u, v in graph.arcs:
        if emb.rank_of(u) > emb.rank_of(v):
            report.upward_violations.append((u, v))
    for a1, a2 in combinations(graph.arcs, 2):
        c1 = (emb.rank_of(a1[0]), emb.rank_of(a1[1]))
        c2 = (emb.rank_of(a2[0]), emb.rank_of(a2[1]))
        if chords_cross(points, c1, c2):
            report.crossing_pairs.append((a1, a2))
    return report


def _orient(p: tuple[Fraction, Fraction], q: tuple[Fraction, Fraction],
            r: tuple[Fraction, Fraction]) -> int:
    v = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    return (v > 0) - (v < 0)


def segments_cross(p1, p2, p3, p4) -> bool:
    """Exact open-segment crossing test; shared endpoints do not cross.

    Assumes general position (no three collinear points), which holds
    for all realized coordinates.
    """
    if len({p1, p2, p3, p4}) < 4:
        return False
    return (_orient(p1, p2, p3) != _orient(p1, p2, p4)
            and _orient(p3, p4, p1) != _orient(p3, p4, p2))


def validate_exact(graph: Digraph, points: ConvexPointSet,
                   emb: Embedding) -> ValidationReport:
    """Re-validate on exact rational coordinates instead of the
    combinatorial predicates."""
    report = ValidationReport()
    if len(emb) != graph.n or graph.n != points.n:
        report.bijection_errors.append("size mismatch")
        return report
    coords = realize_coordinates(points)
    at = [coords[rank - 1] for rank in emb.assignment]
    for u, v in graph.arcs:
        if not at[u][1] < at[v][1]:
            report.upward_violations.append((u, v))
    for a1, a2 in combinations(graph.arcs, 2):
        if segments_cross(at[a1[0]], at[a1[1]], at[a2[0]], at[a2[1]]):
            report.crossing_pairs.append((a1, a2))
    return report
