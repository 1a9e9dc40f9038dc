"""Two independent reconstruction paths for a user's requested file.

constructive_decode replays, phase by phase, exactly the XOR steps the
delivery scheme prescribes: direct pickups, cancellation of own cache
symbols against their broadcast companions, leader exchange within a
demand group, block combination for symbols coding only other users'
requests. It sees nothing but the user's own view (cache, broadcast log,
demand); any subfile it cannot reach is reported as a scheme bug naming
the subfile and phase.

span_oracle certifies the same thing knowing nothing about the scheme: it
checks by GF(2) Gaussian elimination that every unit footprint of the
requested file lies in the span of the cached and broadcast footprints.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .combin import subsets_containing
from .delivery import assign_rv
from .model import (
    CacheSymbol,
    Demand,
    PHASE_TYPE1,
    PHASE_TYPE2_P1,
    PHASE_TYPE2_P2,
    PHASE_TYPE3_P1,
    PHASE_TYPE3_P2,
    SubfileId,
    SystemParams,
    TransmissionLog,
    subfile_index,
    unit_footprint,
    xor_bytes,
)
from .placement import Placement


class DecodeError(Exception):
    """A requested subfile could not be recovered; names subfile and phase."""

    def __init__(self, user: int, subfile: SubfileId, phase: str, reason: str = ""):
        self.user = user
        self.subfile = subfile
        self.phase = phase
        detail = f": {reason}" if reason else ""
        super().__init__(
            f"user {user} cannot recover subfile {subfile} in phase {phase}{detail}"
        )


@dataclass(frozen=True)
class UserView:
    """Everything one user sees: its cache, the broadcast log, the demand."""

    params: SystemParams
    user: int
    cache: tuple[CacheSymbol, ...]
    log: TransmissionLog
    demand: Demand


def make_view(placement: Placement, log: TransmissionLog, demand: Demand, user: int) -> UserView:
    return UserView(
        params=placement.params,
        user=user,
        cache=placement.user_cache(user),
        log=log,
        demand=demand,
    )


@dataclass(frozen=True)
class DecodeStep:
    """One replayed compute: which phase, how many symbols were XORed, and
    the subfile it produced (None for intermediate block combinations)."""

    phase: str
    operands: int
    target: SubfileId | None


@dataclass
class DecodeResult:
    payload: bytes
    steps: list[DecodeStep] = field(default_factory=list)
    subfiles: dict[SubfileId, bytes] = field(default_factory=dict)


def replay_decode(view: UserView) -> DecodeResult:
    """Replay the scheme's compute rules for one user and assemble the
    requested file."""
    params = view.params
    user = view.user
    demand = view.demand
    wanted = demand.request_of(user)
    requested = set(demand.requested_files)
    cache = {sym.group: sym for sym in view.cache}

    steps: list[DecodeStep] = []
    known: dict[SubfileId, bytes] = {}

    def learn(sid: SubfileId, payload: bytes, phase: str, operands: int) -> None:
        known[sid] = payload
        steps.append(DecodeStep(phase=phase, operands=operands, target=sid))

    # Index the log once by rule.
    own_companions: dict[tuple, bytes] = {}
    pair_msgs: list[tuple] = []
    own_block_msgs: dict[tuple, list[bytes]] = {}
    partner_block_msgs: dict[tuple, list[tuple[int, bytes]]] = {}
    block_sums: dict[tuple, bytes] = {}

    for msg in view.log.messages:
        kind = msg.meta[0]
        if msg.phase == PHASE_TYPE1 and kind == "direct":
            sid = msg.meta[1]
            if sid.file == wanted:
                learn(sid, msg.payload, PHASE_TYPE1, 1)
        elif msg.phase == PHASE_TYPE2_P1 and kind == "companion":
            _, owner, group, f = msg.meta
            if f == wanted:
                learn(SubfileId(f, owner, group), msg.payload, PHASE_TYPE2_P1, 1)
            if owner == user:
                own_companions[(group, f)] = msg.payload
        elif msg.phase == PHASE_TYPE2_P2 and kind == "pair":
            _, f, group, other, leader = msg.meta
            if f == wanted:
                pair_msgs.append((group, other, leader, msg.payload))
        elif msg.phase == PHASE_TYPE3_P1 and kind in ("leader-pair", "follower-pair"):
            _, block, receiver, partner = msg.meta
            if receiver == user:
                own_block_msgs.setdefault(block, []).append(msg.payload)
            partner_block_msgs.setdefault((block, partner), []).append((receiver, msg.payload))
        elif msg.phase == PHASE_TYPE3_P2 and kind == "group-sum":
            block_sums[msg.meta[1]] = msg.payload
        else:
            raise ValueError(f"unrecognized message rule {msg.meta!r} in phase {msg.phase}")

    # Cancel own Type II symbols against their broadcast companions.
    for group in subsets_containing(params.num_files, params.group_size, wanted):
        if not set(group) <= requested:
            continue
        target = SubfileId(wanted, user, group)
        parts = [cache[group].payload]
        for f in group:
            if f == wanted:
                continue
            companion = own_companions.get((group, f))
            if companion is None:
                raise DecodeError(user, target, PHASE_TYPE2_P1, f"companion of file {f} missing")
            parts.append(companion)
        learn(target, xor_bytes(*parts), PHASE_TYPE2_P1, len(parts))

    # Leader exchange within the user's demand group.
    if pair_msgs:
        leader = pair_msgs[0][2]
        if user == leader:
            for group, other, _, payload in pair_msgs:
                mine = known.get(SubfileId(wanted, user, group))
                if mine is None:
                    raise DecodeError(user, SubfileId(wanted, user, group), PHASE_TYPE2_P2)
                learn(SubfileId(wanted, other, group), xor_bytes(payload, mine), PHASE_TYPE2_P2, 2)
        else:
            for group, other, lead, payload in pair_msgs:
                if other != user:
                    continue
                mine = known.get(SubfileId(wanted, user, group))
                if mine is None:
                    raise DecodeError(user, SubfileId(wanted, user, group), PHASE_TYPE2_P2)
                learn(SubfileId(wanted, lead, group), xor_bytes(payload, mine), PHASE_TYPE2_P2, 2)
            for group, other, lead, payload in pair_msgs:
                if other == user:
                    continue
                leaders_sub = known.get(SubfileId(wanted, lead, group))
                if leaders_sub is None:
                    raise DecodeError(user, SubfileId(wanted, lead, group), PHASE_TYPE2_P2)
                learn(SubfileId(wanted, other, group), xor_bytes(payload, leaders_sub), PHASE_TYPE2_P2, 2)

    # Block combination for symbols coding only other users' requests.
    for block in sorted(block_sums):
        files = tuple(sorted(demand.request_of(u) for u in block))
        if wanted not in files:
            continue
        rv = assign_rv(block, demand)
        own_group = tuple(f for f in files if f != wanted)
        partial = cache[own_group].payload
        operands = 1
        for payload in own_block_msgs.get(block, []):
            partial = xor_bytes(partial, payload)
            operands += 1
        steps.append(DecodeStep(phase=PHASE_TYPE3_P1, operands=operands, target=None))

        anchor = next(j for j in block if rv[j] == wanted)
        anchor_sid = SubfileId(
            wanted, anchor, tuple(f for f in files if f != demand.request_of(anchor))
        )
        learn(anchor_sid, xor_bytes(partial, block_sums[block]), PHASE_TYPE3_P2, 2)

        for receiver, payload in partner_block_msgs.get((block, anchor), []):
            sid = SubfileId(
                wanted, receiver, tuple(f for f in files if f != demand.request_of(receiver))
            )
            learn(sid, xor_bytes(payload, known[anchor_sid]), PHASE_TYPE3_P2, 2)

    # Assemble the file in subfile-rank order; report the first hole.
    chunks = []
    for owner in range(1, params.num_users + 1):
        for group in subsets_containing(params.num_files, params.group_size, wanted):
            sid = SubfileId(wanted, owner, group)
            payload = known.get(sid)
            if payload is None:
                raise DecodeError(user, sid, _expected_phase(demand, owner, group, requested))
            chunks.append((subfile_index(params, sid), payload))
    chunks.sort()
    return DecodeResult(payload=b"".join(p for _, p in chunks), steps=steps, subfiles=known)


def _expected_phase(demand: Demand, owner: int, group, requested: set[int]) -> str:
    """Name the phase that should have delivered a subfile of (owner, group)."""
    if not set(group) <= requested:
        return PHASE_TYPE1
    if demand.request_of(owner) in group:
        return PHASE_TYPE2_P2
    return PHASE_TYPE3_P2


def constructive_decode(view: UserView) -> bytes:
    """The requested file, reconstructed exactly as the scheme prescribes."""
    return replay_decode(view).payload


# GF(2) span oracle. Footprint vectors are ints; elimination keeps one
# pivot row per leading bit.

def _insert(pivots: dict[int, int], vec: int) -> None:
    while vec:
        top = vec.bit_length() - 1
        if top in pivots:
            vec ^= pivots[top]
        else:
            pivots[top] = vec
            return


def _in_span(pivots: dict[int, int], vec: int) -> bool:
    while vec:
        top = vec.bit_length() - 1
        row = pivots.get(top)
        if row is None:
            return False
        vec ^= row
    return True


@dataclass(frozen=True)
class OracleResult:
    """Span certificate: overall verdict, the rank of the user's view, and
    any requested subfiles outside the span."""

    decodable: bool
    rank: int
    missing: tuple[SubfileId, ...]


def _file_targets(params: SystemParams, file: int) -> list[SubfileId]:
    return [
        SubfileId(file, owner, group)
        for owner in range(1, params.num_users + 1)
        for group in subsets_containing(params.num_files, params.group_size, file)
    ]


def _check_targets(params: SystemParams, pivots: dict[int, int], file: int) -> OracleResult:
    missing = tuple(
        sid
        for sid in _file_targets(params, file)
        if not _in_span(pivots, unit_footprint(params, sid))
    )
    return OracleResult(decodable=not missing, rank=len(pivots), missing=missing)


def span_oracle(view: UserView) -> OracleResult:
    """True iff every subfile of the user's requested file lies in the
    GF(2) span of its cache and broadcast footprints."""
    pivots: dict[int, int] = {}
    for sym in view.cache:
        _insert(pivots, sym.footprint)
    for msg in view.log.messages:
        _insert(pivots, msg.footprint)
    return _check_targets(view.params, pivots, view.demand.request_of(view.user))


def oracle_all_users(placement: Placement, log: TransmissionLog, demand: Demand) -> dict[int, OracleResult]:
    """span_oracle for every user, sharing one elimination of the log."""
    params = placement.params
    base: dict[int, int] = {}
    for msg in log.messages:
        _insert(base, msg.footprint)
    results = {}
    for user in range(1, params.num_users + 1):
        pivots = dict(base)
        for sym in placement.user_cache(user):
            _insert(pivots, sym.footprint)
        results[user] = _check_targets(params, pivots, demand.request_of(user))
    return results
