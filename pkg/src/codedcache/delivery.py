"""Broadcast delivery for an arbitrary demand.

Cache symbols are split into three delivery types by the demand d (with
D the set of requested files and d(i) the request of the symbol's owner):

  Type I      group mixes requested and unrequested files (A ∩ D != {} and
              A ⊄ D), regardless of the owner's own request
  Type II     the owner's request is in the group and all files in the
              group are requested (d(i) ∈ A ⊆ D)
  Type III    all files in the group are requested, none by the owner
              (A ⊆ D, d(i) ∉ A)
  unrequested A ∩ D = {}; nothing in the symbol is needed

Delivery emits, in order: Type I direct subfile broadcasts, Type II
phase 1 (the g-1 companions of every owner-requested subfile), Type II
phase 2 (leader exchange within each demand group), Type III phase 1
(pairings against one selected subfile per file of each (g+1)-leader
block), and Type III phase 2 (one XOR of all selected subfiles per
block). Every message costs exactly one subfile length.

Message orderings are fixed for reproducibility: users ascending, groups
lexicographic, files ascending inside a group, and leader blocks V in
lexicographic order with leader pairings before follower pairings.
"""

from __future__ import annotations

from enum import Enum
from itertools import combinations
from typing import Sequence

from .combin import Subset, binomial, enumerate_subsets, subsets_containing
from .model import (
    BroadcastMessage,
    Demand,
    PHASE_TYPE1,
    PHASE_TYPE2_P1,
    PHASE_TYPE2_P2,
    PHASE_TYPE3_P1,
    PHASE_TYPE3_P2,
    SubfileId,
    SystemParams,
    TransmissionLog,
    check_demand,
    footprint_of,
    subfile_payload,
    xor_bytes,
)
from .placement import Placement


class SymbolType(Enum):
    TYPE1 = "I"
    TYPE2 = "II"
    TYPE3 = "III"
    UNREQUESTED = "unrequested"


LeaderSet = dict[int, int]  # requested file -> leader user
RvMap = dict[int, int]      # leader user -> assigned file


def classify_symbols(placement: Placement, demand: Demand) -> dict[tuple[int, Subset], SymbolType]:
    """Classify every (user, group) cache symbol for the given demand."""
    params = placement.params
    check_demand(params, demand)
    requested = set(demand.requested_files)
    classes: dict[tuple[int, Subset], SymbolType] = {}
    for user in range(1, params.num_users + 1):
        own = demand.request_of(user)
        for group in enumerate_subsets(params.num_files, params.group_size):
            members = set(group)
            if not members & requested:
                cls = SymbolType.UNREQUESTED
            elif not members <= requested:
                cls = SymbolType.TYPE1
            elif own in members:
                cls = SymbolType.TYPE2
            else:
                cls = SymbolType.TYPE3
            classes[(user, group)] = cls
    return classes


def select_leaders(demand: Demand) -> LeaderSet:
    """One leader per distinct requested file: the lowest-index requester."""
    return {f: min(demand.users_for(f)) for f in demand.requested_files}


def check_leaders(demand: Demand, leaders: LeaderSet) -> None:
    expected_files = set(demand.requested_files)
    if set(leaders) != expected_files:
        raise ValueError(
            f"leader set covers files {sorted(leaders)}, demand requests {sorted(expected_files)}"
        )
    for f, u in leaders.items():
        if demand.request_of(u) != f:
            raise ValueError(f"leader {u} of file {f} actually requests {demand.request_of(u)}")


def assign_rv(block: Sequence[int], demand: Demand) -> RvMap:
    """Fixed-point-free file assignment for a block of g+1 leaders with
    distinct demands: sort the block by demanded file and give each leader
    the demand of the next one cyclically. Always a valid derangement of
    the block's files."""
    ordered = sorted(block, key=demand.request_of)
    files = [demand.request_of(u) for u in ordered]
    if len(set(files)) != len(files):
        raise ValueError(f"leader block {tuple(block)} has repeated demands {files}")
    size = len(ordered)
    return {ordered[i]: files[(i + 1) % size] for i in range(size)}


def _message(placement: Placement, phase: str, sids: list[SubfileId], meta: tuple) -> BroadcastMessage:
    params = placement.params
    payload = xor_bytes(*[subfile_payload(params, placement.library, s) for s in sids])
    return BroadcastMessage(
        phase=phase,
        payload=payload,
        footprint=footprint_of(params, sids),
        meta=meta,
    )


def emit_type1(placement: Placement, demand: Demand,
               classification: dict[tuple[int, Subset], SymbolType]) -> list[BroadcastMessage]:
    """Broadcast, one by one, every requested subfile coded inside a
    Type I symbol. Unrequested symbols contribute nothing."""
    params = placement.params
    requested = set(demand.requested_files)
    out = []
    for user in range(1, params.num_users + 1):
        for group in enumerate_subsets(params.num_files, params.group_size):
            if classification[(user, group)] is not SymbolType.TYPE1:
                continue
            for f in group:
                if f in requested:
                    sid = SubfileId(f, user, group)
                    out.append(_message(placement, PHASE_TYPE1, [sid], ("direct", sid)))
    return out


def emit_type2_phase1(placement: Placement, demand: Demand,
                      classification: dict[tuple[int, Subset], SymbolType]) -> list[BroadcastMessage]:
    """For every Type II symbol, broadcast its g-1 subfiles other than the
    owner's request. Owners cancel their own symbol with these; users
    requesting one of the companion files pick it up directly."""
    params = placement.params
    out = []
    for user in range(1, params.num_users + 1):
        own = demand.request_of(user)
        for group in enumerate_subsets(params.num_files, params.group_size):
            if classification[(user, group)] is not SymbolType.TYPE2:
                continue
            for f in group:
                if f != own:
                    sid = SubfileId(f, user, group)
                    out.append(
                        _message(placement, PHASE_TYPE2_P1, [sid], ("companion", user, group, f))
                    )
    return out


def emit_type2_phase2(placement: Placement, demand: Demand, leaders: LeaderSet) -> list[BroadcastMessage]:
    """Pair every non-leader with its demand-group leader: for each group
    of g requested files containing their common file f, broadcast the XOR
    of the two users' subfiles of f."""
    params = placement.params
    requested = demand.requested_files
    leader_users = set(leaders.values())
    out = []
    for user in range(1, params.num_users + 1):
        if user in leader_users:
            continue
        f = demand.request_of(user)
        u = leaders[f]
        others = [x for x in requested if x != f]
        for rest in combinations(others, params.group_size - 1):
            group = tuple(sorted(rest + (f,)))
            sids = [SubfileId(f, user, group), SubfileId(f, u, group)]
            out.append(
                _message(placement, PHASE_TYPE2_P2, sids, ("pair", f, group, user, u))
            )
    return out


def emit_type3(placement: Placement, demand: Demand, leaders: LeaderSet) -> list[BroadcastMessage]:
    """Two-phase delivery of symbols coding only other users' requests.

    Nothing is emitted unless at least g+1 distinct files are requested.
    For every block V of g+1 leaders (one selected subfile per file of the
    block, chosen through assign_rv):

      phase 1  for each pair of distinct leaders (i, j) with the file
               assigned to j different from i's demand, XOR i's subfile of
               that file with j's selected subfile ((g-1)(g+1) messages
               per block); then the same pairing for every non-leader i
               whose demand lies in the block (g messages each)
      phase 2  one XOR of all g+1 selected subfiles of the block
    """
    params = placement.params
    ne = demand.distinct_count
    g = params.group_size
    if ne < g + 1:
        return []
    leader_users = sorted(leaders.values())
    followers = [
        u for u in range(1, params.num_users + 1) if u not in set(leader_users)
    ]

    def block_sid(file: int, user: int, files: tuple[int, ...]) -> SubfileId:
        group = tuple(x for x in files if x != demand.request_of(user))
        return SubfileId(file, user, group)

    phase1 = []
    phase2 = []
    for block in combinations(leader_users, g + 1):
        files = tuple(sorted(demand.request_of(u) for u in block))
        rv = assign_rv(block, demand)
        emitted = 0
        for i in block:
            own = demand.request_of(i)
            for j in block:
                if j == i or rv[j] == own:
                    continue
                sids = [block_sid(rv[j], i, files), block_sid(rv[j], j, files)]
                phase1.append(
                    _message(placement, PHASE_TYPE3_P1, sids, ("leader-pair", block, i, j))
                )
                emitted += 1
        assert emitted == (g - 1) * (g + 1), (
            f"block {block}: {emitted} leader pairings, expected {(g - 1) * (g + 1)}"
        )
        for i in followers:
            own = demand.request_of(i)
            if own not in files:
                continue
            for j in block:
                if rv[j] == own:
                    continue
                sids = [block_sid(rv[j], i, files), block_sid(rv[j], j, files)]
                phase1.append(
                    _message(placement, PHASE_TYPE3_P1, sids, ("follower-pair", block, i, j))
                )
        selected = [block_sid(rv[j], j, files) for j in block]
        phase2.append(_message(placement, PHASE_TYPE3_P2, selected, ("group-sum", block)))
    return phase1 + phase2


def deliver(placement: Placement, demand: Demand, leaders: LeaderSet | None = None) -> TransmissionLog:
    """Run the full delivery for a demand and return the ordered log.

    Emits Type I, then Type II phase 1/2, then Type III phase 1/2, and
    audits every per-phase message count against its closed form.
    """
    params = placement.params
    check_demand(params, demand)
    if leaders is None:
        leaders = select_leaders(demand)
    else:
        check_leaders(demand, leaders)

    classification = classify_symbols(placement, demand)
    messages = (
        emit_type1(placement, demand, classification)
        + emit_type2_phase1(placement, demand, classification)
        + emit_type2_phase2(placement, demand, leaders)
        + emit_type3(placement, demand, leaders)
    )
    log = TransmissionLog(tuple(messages))

    ne = demand.distinct_count
    audits = {
        PHASE_TYPE1: type1_count(params, ne),
        PHASE_TYPE2_P1: type2_phase1_count(params, ne),
        PHASE_TYPE2_P2: type2_phase2_count(params, ne),
        PHASE_TYPE3_P1: type3_phase1_leader_count(params, ne)
        + type3_phase1_follower_count(params, ne),
        PHASE_TYPE3_P2: type3_phase2_count(params, ne),
    }
    for phase, expected in audits.items():
        got = log.phase_count(phase)
        assert got == expected, f"phase {phase}: emitted {got}, closed form {expected}"
    return log


# Closed-form transmission counts per phase, as functions of the number of
# distinct requested files.

def type1_count(params: SystemParams, distinct: int) -> int:
    n, k, g = params.num_files, params.num_users, params.group_size
    return k * distinct * (binomial(n - 1, g - 1) - binomial(distinct - 1, g - 1))


def type2_phase1_count(params: SystemParams, distinct: int) -> int:
    k, g = params.num_users, params.group_size
    return k * (g - 1) * binomial(distinct - 1, g - 1)


def type2_phase2_count(params: SystemParams, distinct: int) -> int:
    k, g = params.num_users, params.group_size
    return (k - distinct) * binomial(distinct - 1, g - 1)


def type2_count(params: SystemParams, distinct: int) -> int:
    k, g = params.num_users, params.group_size
    return (k * g - distinct) * binomial(distinct - 1, g - 1)


def type3_phase1_leader_count(params: SystemParams, distinct: int) -> int:
    g = params.group_size
    return binomial(distinct, g + 1) * (g - 1) * (g + 1)


def type3_phase1_follower_count(params: SystemParams, distinct: int) -> int:
    k, g = params.num_users, params.group_size
    return g * (k - distinct) * binomial(distinct - 1, g)


def type3_phase2_count(params: SystemParams, distinct: int) -> int:
    return binomial(distinct, params.group_size + 1)


def type3_count(params: SystemParams, distinct: int) -> int:
    return (
        type3_phase1_leader_count(params, distinct)
        + type3_phase1_follower_count(params, distinct)
        + type3_phase2_count(params, distinct)
    )
