"""Closed-form delivery rates of the coded-prefetching scheme.

For a demand with ne distinct requests, the scheme transmits exactly
K*ne*C(N-1, g-1) - g*C(ne+1, g+1) subfile lengths; dividing by the
K*C(N-1, g-1) subfiles per file gives the rate. The transmission count
grows monotonically in ne, so the worst case is ne = N, which yields the
achievable point (M, R) = (N/(gK), N - (N/K)(N+1)/(g+1)) for each integer
group size g; memory sharing between integer-g points achieves their
lower convex envelope on [1/K, N/K].
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .combin import LowerEnvelope, binomial, lower_convex_envelope
from .model import RateMemoryPoint, SystemParams

SCHEME_LABEL = "scheme"


def transmission_total(params: SystemParams, distinct: int) -> int:
    """Total subfile-length transmissions for a demand with the given
    number of distinct requests."""
    n, k, g = params.num_files, params.num_users, params.group_size
    if not 1 <= distinct <= n:
        raise ValueError(f"distinct request count {distinct} outside 1..{n}")
    return k * distinct * binomial(n - 1, g - 1) - g * binomial(distinct + 1, g + 1)


def demand_rate(params: SystemParams, distinct: int) -> Fraction:
    """Delivery rate (in file lengths) for a demand with `distinct`
    distinct requests."""
    return Fraction(transmission_total(params, distinct), params.subfiles_per_file)


def worst_demand_rate(params: SystemParams) -> Fraction:
    """Rate of the worst demand: transmission counts increase with the
    number of distinct requests, so all N files requested is worst."""
    return demand_rate(params, params.num_files)


def transmission_increment(params: SystemParams, distinct: int) -> int:
    """Closed form for total(distinct+1) - total(distinct):
    K*C(N-1, g-1) - (distinct+1)*C(distinct, g-1), nonnegative for
    distinct <= N-1."""
    n, k, g = params.num_files, params.num_users, params.group_size
    return k * binomial(n - 1, g - 1) - (distinct + 1) * binomial(distinct, g - 1)


def scheme_point(n: int, k: int, g: int) -> RateMemoryPoint:
    """The scheme's worst-demand rate-memory pair at group size g:
    (M, R) = (N/(gK), N - (N/K)(N+1)/(g+1))."""
    params = SystemParams(num_files=n, num_users=k, group_size=g, subfile_bytes=1)
    rate = Fraction(n) - Fraction(n, k) * Fraction(n + 1, g + 1)
    assert rate == worst_demand_rate(params)
    return RateMemoryPoint(memory=params.memory, rate=rate, label=SCHEME_LABEL, parameter=g)


def scheme_points(n: int, k: int) -> list[RateMemoryPoint]:
    """Worst-demand pairs for every integer group size g in 1..N."""
    return [scheme_point(n, k, g) for g in range(1, n + 1)]


@dataclass(frozen=True)
class RateCurve:
    """A family of rate-memory points plus their lower convex envelope."""

    points: tuple[RateMemoryPoint, ...]
    envelope: LowerEnvelope

    def __call__(self, memory) -> Fraction:
        return self.envelope(memory)

    @property
    def domain(self) -> tuple[Fraction, Fraction]:
        return self.envelope.domain


def scheme_envelope(n: int, k: int) -> RateCurve:
    """Memory-sharing envelope of the integer-g points on [1/K, N/K].

    Queries outside that range raise: the scheme is only defined there."""
    points = scheme_points(n, k)
    env = lower_convex_envelope([(p.memory, p.rate) for p in points])
    return RateCurve(points=tuple(points), envelope=env)
