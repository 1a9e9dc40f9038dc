"""Comparison curves: published baselines and information-theoretic lower
bounds, all in exact rational arithmetic.

Baselines (the state of the art, "SOTA", is their lower convex envelope
together with the trivial point (M, R) = (0, N)):

  CFL   coded-prefetching point (1/K, N - N/K)
  GBC   uncoded-prefetching point (N/K, N - N(N+1)/(2K))
  MDS   the family (t[(N-1)t + K - N]/(K(K-1)), N(K-t)/K) for t = 0..K

Lower bounds:

  cutset_bound  max over s in 1..min(N,K) of s - s*M/floor(N/s)
  stc_bound     max over s in 1..K and l in 1..ceil(N/s) of
                (N - s*M - mu*(N-l*s)+/(s+mu) - (N-K*l)+)/l,
                with mu = min((N-l*s)/l, K-s) kept as an exact rational

Negative bound values clamp to zero. mds_memory_lower_bound inverts the
MDS family into a convex memory floor at a given rate, which yields the
per-g dominance condition K <= (N^2*g + 1)/(g + 1) checked by
mds_dominance_check; the binding case is g = 1, i.e. K <= (N^2 + 1)/2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .combin import binomial, lower_convex_envelope
from .model import RateMemoryPoint
from .rates import RateCurve, scheme_point

CFL_LABEL = "CFL"
GBC_LABEL = "GBC"
MDS_LABEL = "MDS"
TRIVIAL_LABEL = "trivial"


def cfl_point(n: int, k: int) -> RateMemoryPoint:
    _check_nk(n, k)
    return RateMemoryPoint(
        memory=Fraction(1, k), rate=Fraction(n) - Fraction(n, k), label=CFL_LABEL
    )


def gbc_point(n: int, k: int) -> RateMemoryPoint:
    _check_nk(n, k)
    return RateMemoryPoint(
        memory=Fraction(n, k),
        rate=Fraction(n) - Fraction(n * (n + 1), 2 * k),
        label=GBC_LABEL,
    )


def mds_points(n: int, k: int) -> list[RateMemoryPoint]:
    """MDS-coded placement pairs for t = 0..K; t=0 is (0, N), t=K is (N, 0)."""
    _check_nk(n, k)
    points = []
    for t in range(0, k + 1):
        memory = Fraction(t * ((n - 1) * t + k - n), k * (k - 1)) if k > 1 else Fraction(t)
        rate = Fraction(n * (k - t), k)
        points.append(RateMemoryPoint(memory=memory, rate=rate, label=MDS_LABEL, parameter=t))
    return points


def baseline_points(n: int, k: int) -> list[RateMemoryPoint]:
    """Everything the state of the art can memory-share between."""
    trivial = RateMemoryPoint(memory=Fraction(0), rate=Fraction(n), label=TRIVIAL_LABEL)
    return [trivial, cfl_point(n, k), gbc_point(n, k)] + mds_points(n, k)


def sota_envelope(n: int, k: int) -> RateCurve:
    """Lower convex envelope of all published baseline points."""
    points = baseline_points(n, k)
    env = lower_convex_envelope([(p.memory, p.rate) for p in points])
    return RateCurve(points=tuple(points), envelope=env)


def mds_memory_lower_bound(n: int, k: int, rate: Fraction) -> Fraction:
    """Convex memory floor of the MDS family at a given rate:
    (N-R)((N-R)(NK-K) + N(K-N)) / (N^2 (K-1)). Exact at every MDS vertex."""
    _check_nk(n, k)
    if k == 1:
        raise ValueError("memory floor undefined for a single user")
    r = Fraction(rate)
    gap = Fraction(n) - r
    return gap * (gap * (n * k - k) + n * (k - n)) / (n * n * (k - 1))


@dataclass(frozen=True)
class DominanceEntry:
    """One group size compared against the MDS memory floor."""

    group_size: int
    scheme_memory: Fraction
    mds_floor: Fraction
    dominates: bool          # scheme uses no more memory at its own rate
    threshold: Fraction      # (N^2 g + 1) / (g + 1)
    threshold_holds: bool    # K <= threshold

    @property
    def consistent(self) -> bool:
        # The threshold derivation divides by N - g, so it is exact only
        # while the scheme point differs from the MDS family; at g = N the
        # two coincide (memory equals the floor) and dominance holds for
        # every K, whatever the threshold says.
        if self.scheme_memory == self.mds_floor:
            return self.dominates
        return self.dominates == self.threshold_holds


@dataclass(frozen=True)
class DominanceReport:
    num_files: int
    num_users: int
    entries: tuple[DominanceEntry, ...]

    @property
    def all_consistent(self) -> bool:
        return all(e.consistent for e in self.entries)

    @property
    def dominates_everywhere(self) -> bool:
        return all(e.dominates for e in self.entries)

    @property
    def global_threshold(self) -> Fraction:
        """The binding g=1 condition K <= (N^2 + 1)/2."""
        return Fraction(self.num_files**2 + 1, 2)

    @property
    def global_threshold_holds(self) -> bool:
        return self.num_users <= self.global_threshold


def mds_dominance_check(n: int, k: int) -> DominanceReport:
    """For each g, test whether the scheme's point needs no more memory
    than any MDS-envelope point of equal rate, and that this agrees with
    the closed-form condition K <= (N^2 g + 1)/(g + 1)."""
    _check_nk(n, k)
    entries = []
    for g in range(1, n + 1):
        point = scheme_point(n, k, g)
        floor = mds_memory_lower_bound(n, k, point.rate)
        threshold = Fraction(n * n * g + 1, g + 1)
        entries.append(
            DominanceEntry(
                group_size=g,
                scheme_memory=point.memory,
                mds_floor=floor,
                dominates=point.memory <= floor,
                threshold=threshold,
                threshold_holds=k <= threshold,
            )
        )
    return DominanceReport(num_files=n, num_users=k, entries=tuple(entries))


def cutset_bound(n: int, k: int, memory) -> Fraction:
    """Cut-set lower bound on the delivery rate at cache size `memory`."""
    _check_nk(n, k)
    m = _check_memory(n, memory)
    best = Fraction(0)
    for s in range(1, min(n, k) + 1):
        value = Fraction(s) - Fraction(s, n // s) * m
        if value > best:
            best = value
    return best


def cutset_gap(n: int, k: int, g: int) -> Fraction:
    """Distance from the scheme's point at group size g to the s=N cut
    value N - N*M: equal closed forms (N/K)(N/g - (N+1)/(g+1)) and
    C(N, g+1) / (K C(N-1, g-1)); zero at g=N, where the cut-set bound is
    met with equality."""
    _check_nk(n, k)
    if not 1 <= g <= n:
        raise ValueError(f"group size {g} outside 1..{n}")
    direct = Fraction(n, k) * (Fraction(n, g) - Fraction(n + 1, g + 1))
    counted = Fraction(binomial(n, g + 1), k * binomial(n - 1, g - 1))
    assert direct == counted, f"gap forms disagree: {direct} != {counted}"
    return counted


def stc_bound(n: int, k: int, memory) -> Fraction:
    """Shared-link lower bound with parameters (s, l); tighter than the
    cut-set bound. Exact maximization over the full parameter range."""
    _check_nk(n, k)
    m = _check_memory(n, memory)
    best = Fraction(0)
    for s in range(1, k + 1):
        l_max = -(-n // s)
        for l in range(1, l_max + 1):
            value = Fraction(n) - s * m
            leftover = n - l * s
            if leftover > 0:
                mu = min(Fraction(leftover, l), Fraction(k - s))
                value -= mu * leftover / (s + mu)
            uncovered = n - k * l
            if uncovered > 0:
                value -= uncovered
            value /= l
            if value > best:
                best = value
    return best


def _check_nk(n: int, k: int) -> None:
    if n < 1:
        raise ValueError(f"need at least one file, got {n}")
    if k < n:
        raise ValueError(f"need at least as many users as files, got K={k} < N={n}")


def _check_memory(n: int, memory) -> Fraction:
    m = Fraction(memory)
    if not 0 <= m <= n:
        raise ValueError(f"memory {m} outside [0, {n}]")
    return m
