"""Exhaustive verification over small parameter grids.

For every (N, K, g) in range and every one of the N^K demands, run the
full pipeline and check: per-phase and total transmission counts against
their closed forms, bit-exact constructive decoding for every user, span
oracle agreement, and worst-demand attainment. Payloads default to one
byte per subfile; payload size is irrelevant to correctness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Callable

from .decoder import DecodeError, constructive_decode, make_view, oracle_all_users
from .delivery import deliver, type1_count, type2_count, type3_count
from .model import Demand, SystemParams, TransmissionLog, make_library
from .placement import Placement, build_placement
from .rates import transmission_total


def check_instance(placement: Placement, demand: Demand, *, drop_last: bool = False) -> list[str]:
    """Run one demand through delivery, decoding, and the oracle; return a
    list of failure descriptions (empty on success). drop_last removes the
    final broadcast message first, as a negative control."""
    params = placement.params
    failures: list[str] = []
    tag = f"N={params.num_files} K={params.num_users} g={params.group_size} d={demand.requests}"

    log = deliver(placement, demand)
    if drop_last and log.messages:
        log = TransmissionLog(log.messages[:-1])

    ne = demand.distinct_count
    expected = {
        "type I": (log.type1_count, type1_count(params, ne)),
        "type II": (log.type2_count, type2_count(params, ne)),
        "type III": (log.type3_count, type3_count(params, ne)),
        "total": (log.total, transmission_total(params, ne)),
    }
    for name, (got, want) in expected.items():
        if got != want:
            failures.append(f"[counts] {tag}: {name} count {got} != closed form {want}")

    oracle = oracle_all_users(placement, log, demand)
    for user in range(1, params.num_users + 1):
        view = make_view(placement, log, demand, user)
        decoded_ok = False
        try:
            payload = constructive_decode(view)
            decoded_ok = payload == placement.library[demand.request_of(user) - 1]
            if not decoded_ok:
                failures.append(f"[decode] {tag}: user {user} decoded wrong payload")
        except DecodeError as err:
            failures.append(f"[decode] {tag}: user {user} decode failed ({err})")
        if oracle[user].decodable != decoded_ok:
            failures.append(
                f"[oracle] {tag}: user {user} oracle says {oracle[user].decodable}, "
                f"constructive says {decoded_ok}"
            )
    return failures


@dataclass
class GridReport:
    num_files: int
    num_users: int
    group_size: int
    demands_checked: int = 0
    failures: list[str] = field(default_factory=list)


@dataclass
class VerifySummary:
    grids: list[GridReport] = field(default_factory=list)
    skipped: list[tuple[int, int, str]] = field(default_factory=list)

    @property
    def instances_checked(self) -> int:
        return sum(g.demands_checked for g in self.grids)

    @property
    def failures(self) -> list[str]:
        return [f for g in self.grids for f in g.failures]

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_grid(
    n_max: int = 4,
    k_max: int = 6,
    cap: int = 4096,
    *,
    n_min: int = 2,
    seed: int = 0,
    subfile_bytes: int = 1,
    inject_fault: bool = False,
    progress: Callable[[GridReport], None] | None = None,
) -> VerifySummary:
    """Exhaustively verify all (N, K, g) with n_min <= N <= n_max,
    N <= K <= k_max, 1 <= g <= N, over every demand, skipping (N, K)
    pairs whose N^K demand count exceeds `cap`."""
    summary = VerifySummary()
    for n in range(n_min, n_max + 1):
        for k in range(n, k_max + 1):
            if n**k > cap:
                summary.skipped.append((n, k, f"{n}^{k} demands exceed cap {cap}"))
                continue
            for g in range(1, n + 1):
                params = SystemParams(
                    num_files=n, num_users=k, group_size=g, subfile_bytes=subfile_bytes
                )
                placement = build_placement(params, make_library(params, seed))
                report = GridReport(num_files=n, num_users=k, group_size=g)
                for entries in product(range(1, n + 1), repeat=k):
                    demand = Demand(entries)
                    report.failures.extend(
                        check_instance(placement, demand, drop_last=inject_fault)
                    )
                    report.demands_checked += 1
                summary.grids.append(report)
                if progress is not None:
                    progress(report)
    return summary
