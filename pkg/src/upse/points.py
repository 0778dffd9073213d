"""Combinatorial convex point sets.

A convex point set is modelled purely combinatorially: a string of side
tags ('L' or 'R'), one per y-rank in ascending order.  Points are named
by their y-rank 1..n.  Upwardness depends only on the y-order and
crossing of convex-polygon chords only on the cyclic hull order, so this
model is exact and free of numeric concerns.  ``realize_coordinates``
produces exact rational coordinates on the unit circle for rendering and
cross-validation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import InputError


@dataclass(frozen=True)
class PointRange:
    """Index ranges into the left/right sides of a point set.

    Each range is an inclusive 1-based (lo, hi) pair of side positions,
    or None for an empty side.
    """

    left: Optional[tuple[int, int]] = None
    right: Optional[tuple[int, int]] = None

    @staticmethod
    def full(points: "ConvexPointSet") -> "PointRange":
        left = (1, points.left_count) if points.left_count else None
        right = (1, points.right_count) if points.right_count else None
        return PointRange(left, right)


class ConvexPointSet:
    """Side-tagged y-ranks of a convex point set.

    ``source_ranks`` maps each local rank to the rank in the set this
    view was extracted from (identity for a base set).
    """

    __slots__ = ("tags", "n", "left_ranks", "right_ranks", "_side", "_pos",
                 "source_ranks", "_cycle_pos")

    def __init__(self, tags: str, source_ranks: Optional[Sequence[int]] = None):
        tags = str(tags)
        if any(t not in "LR" for t in tags):
            raise InputError(f"tags must be over {{L,R}}, got {tags!r}")
        self.tags = tags
        self.n = len(tags)
        if source_ranks is None:
            source_ranks = range(1, self.n + 1)
        self.source_ranks = tuple(source_ranks)
        if len(self.source_ranks) != self.n:
            raise InputError("source_ranks length mismatch")
        left, right = [], []
        side: list[str] = []
        pos: list[int] = []
        for rank, t in enumerate(tags, start=1):
            if t == "L":
                left.append(rank)
                pos.append(len(left))
            else:
                right.append(rank)
                pos.append(len(right))
            side.append(t)
        self.left_ranks = tuple(left)
        self.right_ranks = tuple(right)
        self._side = tuple(side)
        self._pos = tuple(pos)
        cycle_pos = [0] * (self.n + 1)
        for i, rank in enumerate(left + right[::-1]):
            cycle_pos[rank] = i
        self._cycle_pos = tuple(cycle_pos)

    # -- basic accessors -------------------------------------------------

    @property
    def left_count(self) -> int:
        return len(self.left_ranks)

    @property
    def right_count(self) -> int:
        return len(self.right_ranks)

    def side_of(self, rank: int) -> str:
        self._check_rank(rank)
        return self._side[rank - 1]

    def side_pos(self, rank: int) -> tuple[str, int]:
        """Return (side, 1-based position within that side) of a rank."""
        self._check_rank(rank)
        return self._side[rank - 1], self._pos[rank - 1]

    def left_rank(self, i: int) -> int:
        """Rank of the i-th lowest left point (1-based)."""
        if not 1 <= i <= self.left_count:
            raise InputError(f"left index {i} out of range")
        return self.left_ranks[i - 1]

    def right_rank(self, i: int) -> int:
        if not 1 <= i <= self.right_count:
            raise InputError(f"right index {i} out of range")
        return self.right_ranks[i - 1]

    def bottom(self) -> int:
        if self.n == 0:
            raise InputError("empty point set has no bottom point")
        return 1

    def top(self) -> int:
        if self.n == 0:
            raise InputError("empty point set has no top point")
        return self.n

    def is_one_sided(self) -> bool:
        return self.left_count == 0 or self.right_count == 0 or self.n <= 2

    def mirror(self) -> "ConvexPointSet":
        flipped = "".join("R" if t == "L" else "L" for t in self.tags)
        return ConvexPointSet(flipped, self.source_ranks)

    def _check_rank(self, rank: int) -> None:
        if not 1 <= rank <= self.n:
            raise InputError(f"rank {rank} not in 1..{self.n}")

    def __repr__(self) -> str:  # pragma: no cover
        return f"ConvexPointSet({self.tags!r})"


def hull_cyclic_order(points: ConvexPointSet) -> tuple[int, ...]:
    """Clockwise hull order of the ranks, starting at the lowest left
    point (lowest right point when the left side is empty)."""
    seq = list(points.left_ranks) + list(reversed(points.right_ranks))
    if not points.left_ranks and seq:
        # rotate so the lowest right point comes first
        k = seq.index(points.right_ranks[0])
        seq = seq[k:] + seq[:k]
    return tuple(seq)


def chords_cross(points: ConvexPointSet, chord1: tuple[int, int],
                 chord2: tuple[int, int]) -> bool:
    """Whether two chords of the convex hull cross as open segments.

    Chords sharing an endpoint never cross.  Two hull chords cross iff
    their endpoint pairs interleave in the cyclic hull order.
    """
    a, b = chord1
    c, d = chord2
    for r in (a, b, c, d):
        points._check_rank(r)
    if a == b or c == d:
        raise InputError("chord endpoints must be distinct")
    if len({a, b, c, d}) < 4:
        return False
    pos = points._cycle_pos
    n = points.n
    fwd = (pos[b] - pos[a]) % n
    c_in = (pos[c] - pos[a]) % n < fwd
    d_in = (pos[d] - pos[a]) % n < fwd
    return c_in != d_in


def point_subrange(points: ConvexPointSet, rng: PointRange) -> ConvexPointSet:
    """View of the points selected by a range, preserving relative
    y-order and side tags.  ``source_ranks`` maps back to ``points``."""
    selected: list[int] = []
    if rng.left is not None:
        lo, hi = rng.left
        if not (1 <= lo <= hi <= points.left_count):
            raise InputError(f"left range {rng.left} out of bounds")
        selected.extend(points.left_ranks[lo - 1:hi])
    if rng.right is not None:
        lo, hi = rng.right
        if not (1 <= lo <= hi <= points.right_count):
            raise InputError(f"right range {rng.right} out of bounds")
        selected.extend(points.right_ranks[lo - 1:hi])
    selected.sort()
    tags = "".join(points.tags[r - 1] for r in selected)
    return ConvexPointSet(tags, selected)


def realize_coordinates(points: ConvexPointSet) -> list[tuple[Fraction, Fraction]]:
    """Exact rational coordinates realizing the tag sequence.

    Points are placed on the unit circle via the rational parametrization
    t -> ((1-t^2)/(1+t^2), 2t/(1+t^2)) with strictly increasing t per
    rank; left-tagged points get the negated x.  Points on a circle are
    automatically in convex and general position, and the hull order of
    the output equals ``hull_cyclic_order``.
    """
    n = points.n
    coords: list[tuple[Fraction, Fraction]] = []
    for rank in range(1, n + 1):
        t = Fraction(2 * rank - n - 1, n + 1)
        den = 1 + t * t
        x = (1 - t * t) / den
        y = 2 * t / den
        if points.tags[rank - 1] == "L":
            x = -x
        coords.append((x, y))
    return coords
