"""Exact combinatorial primitives.

Binomial coefficients, lexicographic enumeration/ranking of fixed-size
subsets of {1..n}, and lower convex envelopes of rational point sets.
Subsets are plain sorted tuples of ints. Envelope arithmetic uses
fractions.Fraction throughout, so every evaluation is exact (Python ints
are arbitrary precision, so binomials never wrap around).
"""

from __future__ import annotations

import math
from bisect import bisect_right
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

Subset = tuple[int, ...]


def binomial(n: int, k: int) -> int:
    """C(n, k) for n >= 0; returns 0 when k < 0 or k > n."""
    if n < 0:
        raise ValueError(f"binomial requires n >= 0, got n={n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def enumerate_subsets(n: int, g: int) -> list[Subset]:
    """All size-g subsets of {1..n} in lexicographic order."""
    if n < 1 or g < 1:
        raise ValueError(f"enumerate_subsets requires n >= 1 and g >= 1, got n={n}, g={g}")
    return list(combinations(range(1, n + 1), g))


def subsets_containing(n: int, g: int, member: int) -> list[Subset]:
    """The C(n-1, g-1) size-g subsets of {1..n} containing `member`.

    Returned in lexicographic order of the full subsets (inserting a fixed
    element into lexicographically ordered (g-1)-subsets of the remaining
    elements preserves lexicographic order).
    """
    if not 1 <= member <= n:
        raise ValueError(f"member {member} outside 1..{n}")
    if not 1 <= g <= n:
        raise ValueError(f"subset size {g} outside 1..{n}")
    others = [x for x in range(1, n + 1) if x != member]
    return [tuple(sorted(rest + (member,))) for rest in combinations(others, g - 1)]


def subset_rank(n: int, subset: Sequence[int]) -> int:
    """Lexicographic rank of a sorted size-g subset of {1..n} among all
    size-g subsets, counting from 0."""
    g = len(subset)
    prev = 0
    rank = 0
    for pos, a in enumerate(subset, start=1):
        if not prev < a <= n:
            raise ValueError(f"subset {tuple(subset)} is not sorted within 1..{n}")
        for v in range(prev + 1, a):
            rank += binomial(n - v, g - pos)
        prev = a
    return rank


def subset_unrank(n: int, g: int, rank: int) -> Subset:
    """Inverse of subset_rank: the size-g subset of {1..n} with the given
    lexicographic rank."""
    if not 0 <= rank < binomial(n, g):
        raise ValueError(f"rank {rank} outside 0..{binomial(n, g) - 1} for C({n},{g})")
    members = []
    v = 1
    for pos in range(1, g + 1):
        while True:
            block = binomial(n - v, g - pos)
            if rank < block:
                break
            rank -= block
            v += 1
        members.append(v)
        v += 1
    return tuple(members)


class LowerEnvelope:
    """Piecewise-linear lower convex envelope of a finite 2-D point set.

    Vertices are (x, y) Fraction pairs sorted by x with non-decreasing
    slopes. Calling the envelope at x interpolates linearly and exactly;
    a query outside [x_min, x_max] raises ValueError.
    """

    def __init__(self, vertices: Iterable[tuple[Fraction, Fraction]]):
        self._vertices = tuple(vertices)
        if not self._vertices:
            raise ValueError("envelope needs at least one vertex")
        self._xs = [v[0] for v in self._vertices]

    @property
    def vertices(self) -> tuple[tuple[Fraction, Fraction], ...]:
        return self._vertices

    @property
    def domain(self) -> tuple[Fraction, Fraction]:
        return self._xs[0], self._xs[-1]

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        lo, hi = self.domain
        if x < lo or x > hi:
            raise ValueError(f"query {x} outside envelope domain [{lo}, {hi}]")
        idx = bisect_right(self._xs, x)
        if idx > 0 and self._xs[idx - 1] == x:
            return self._vertices[idx - 1][1]
        xl, yl = self._vertices[idx - 1]
        xr, yr = self._vertices[idx]
        return yl + (yr - yl) * (x - xl) / (xr - xl)

    def __repr__(self) -> str:
        pts = ", ".join(f"({v[0]}, {v[1]})" for v in self._vertices)
        return f"LowerEnvelope([{pts}])"


def lower_convex_envelope(points: Iterable[tuple]) -> LowerEnvelope:
    """Lower convex envelope of (x, y) points with exact rational vertices.

    Requires at least one point and x, y >= 0. Duplicate x keeps the
    lowest y; collinear interior points are dropped.
    """
    pts = [(Fraction(x), Fraction(y)) for x, y in points]
    if not pts:
        raise ValueError("at least one point is required")
    for x, y in pts:
        if x < 0 or y < 0:
            raise ValueError(f"point ({x}, {y}) has a negative coordinate")
    lowest: dict[Fraction, Fraction] = {}
    for x, y in pts:
        if x not in lowest or y < lowest[x]:
            lowest[x] = y
    ordered = sorted(lowest.items())
    hull: list[tuple[Fraction, Fraction]] = []
    for p in ordered:
        while len(hull) >= 2:
            ox, oy = hull[-2]
            ax, ay = hull[-1]
            # cross <= 0 means the middle vertex lies on or above chord o-p
            cross = (ax - ox) * (p[1] - oy) - (p[0] - ox) * (ay - oy)
            if cross <= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    return LowerEnvelope(hull)
