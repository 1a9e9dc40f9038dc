"""Domain types shared by placement, delivery, and verification.

A system serves N files to K users (N <= K) over one broadcast link.
Every file is split into K*C(N-1, g-1) equal subfiles, where g is the
prefetch group size: the subfile of file f held for user i under group A
(a g-subset of file indices with f in A) is addressed by
SubfileId(f, i, A). Ranking all (file, user, group) triples gives each
subfile one coordinate of a GF(2) footprint vector, carried as a Python
int bit mask. Every cached or broadcast symbol travels with its
footprint, so decodability can be certified by plain linear algebra with
no knowledge of how the symbols were produced.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .combin import (
    Subset,
    binomial,
    subset_rank,
    subset_unrank,
    subsets_containing,
)

# Broadcast phase tags, in transmission order.
PHASE_TYPE1 = "I"
PHASE_TYPE2_P1 = "II-P1"
PHASE_TYPE2_P2 = "II-P2"
PHASE_TYPE3_P1 = "III-P1"
PHASE_TYPE3_P2 = "III-P2"

TYPE2_PHASES = (PHASE_TYPE2_P1, PHASE_TYPE2_P2)
TYPE3_PHASES = (PHASE_TYPE3_P1, PHASE_TYPE3_P2)


@dataclass(frozen=True)
class SystemParams:
    """Static system description: N files, K users, group size g, and the
    payload size of one subfile in bytes."""

    num_files: int
    num_users: int
    group_size: int
    subfile_bytes: int = 64

    def __post_init__(self):
        if self.num_files < 1:
            raise ValueError(f"need at least one file, got {self.num_files}")
        if self.num_users < self.num_files:
            raise ValueError(
                f"scheme requires at least as many users as files, "
                f"got {self.num_users} users for {self.num_files} files"
            )
        if not 1 <= self.group_size <= self.num_files:
            raise ValueError(
                f"group size must lie in 1..{self.num_files}, got {self.group_size}"
            )
        if self.subfile_bytes < 1:
            raise ValueError(f"subfile_bytes must be positive, got {self.subfile_bytes}")

    @property
    def memory(self) -> Fraction:
        """Per-user cache size in units of one file: N / (g*K)."""
        return Fraction(self.num_files, self.group_size * self.num_users)

    @property
    def groups_per_file(self) -> int:
        """Number of groups containing a given file: C(N-1, g-1)."""
        return binomial(self.num_files - 1, self.group_size - 1)

    @property
    def subfiles_per_file(self) -> int:
        return self.num_users * self.groups_per_file

    @property
    def total_subfiles(self) -> int:
        """Footprint dimension: N * K * C(N-1, g-1)."""
        return self.num_files * self.subfiles_per_file

    @property
    def cache_symbols_per_user(self) -> int:
        return binomial(self.num_files, self.group_size)

    @property
    def file_bytes(self) -> int:
        return self.subfiles_per_file * self.subfile_bytes


@dataclass(frozen=True)
class Demand:
    """The K requested file indices, one per user (1-based)."""

    requests: tuple[int, ...]

    def __post_init__(self):
        if not self.requests:
            raise ValueError("demand vector is empty")
        if any(not isinstance(r, int) or r < 1 for r in self.requests):
            raise ValueError(f"file indices must be positive ints, got {self.requests}")

    def request_of(self, user: int) -> int:
        return self.requests[user - 1]

    @property
    def requested_files(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.requests)))

    @property
    def distinct_count(self) -> int:
        return len(set(self.requests))

    def users_for(self, file: int) -> tuple[int, ...]:
        return tuple(u for u, r in enumerate(self.requests, start=1) if r == file)


def check_demand(params: SystemParams, demand: Demand) -> None:
    if len(demand.requests) != params.num_users:
        raise ValueError(
            f"demand has {len(demand.requests)} entries for {params.num_users} users"
        )
    bad = [r for r in demand.requests if not 1 <= r <= params.num_files]
    if bad:
        raise ValueError(f"demand entries {bad} outside 1..{params.num_files}")


@dataclass(frozen=True)
class SubfileId:
    """One subfile: file index, owning user, and the group it is coded in."""

    file: int
    user: int
    group: Subset

    def __str__(self) -> str:
        grp = "{" + ",".join(str(f) for f in self.group) + "}"
        return f"(file={self.file}, user={self.user}, group={grp})"


def _check_subfile(params: SystemParams, sid: SubfileId) -> None:
    if not 1 <= sid.file <= params.num_files:
        raise ValueError(f"file index {sid.file} outside 1..{params.num_files}")
    if not 1 <= sid.user <= params.num_users:
        raise ValueError(f"user index {sid.user} outside 1..{params.num_users}")
    if len(sid.group) != params.group_size:
        raise ValueError(f"group {sid.group} does not have size {params.group_size}")
    if sid.file not in sid.group:
        raise ValueError(f"file {sid.file} is not a member of its group {sid.group}")
    if list(sid.group) != sorted(set(sid.group)) or sid.group[0] < 1 or sid.group[-1] > params.num_files:
        raise ValueError(f"group {sid.group} is not a sorted subset of 1..{params.num_files}")


def _relabel_without(members: Subset, removed: int) -> Subset:
    """Map {1..n} minus `removed` onto {1..n-1}, preserving order."""
    return tuple(x - 1 if x > removed else x for x in members if x != removed)


def _restore_with(members: Subset, inserted: int) -> Subset:
    shifted = tuple(x + 1 if x >= inserted else x for x in members)
    return tuple(sorted(shifted + (inserted,)))


def group_rank_within_file(params: SystemParams, file: int, group: Subset) -> int:
    """Rank of `group` among subsets_containing(N, g, file), lexicographic."""
    return subset_rank(params.num_files - 1, _relabel_without(group, file))


def group_for_file_from_rank(params: SystemParams, file: int, rank: int) -> Subset:
    rest = subset_unrank(params.num_files - 1, params.group_size - 1, rank)
    return _restore_with(rest, file)


def subfile_index(params: SystemParams, sid: SubfileId) -> int:
    """Bijective rank of a SubfileId onto [0, N*K*C(N-1, g-1))."""
    _check_subfile(params, sid)
    per_file = params.groups_per_file
    return (
        (sid.file - 1) * params.subfiles_per_file
        + (sid.user - 1) * per_file
        + group_rank_within_file(params, sid.file, sid.group)
    )


def subfile_from_index(params: SystemParams, index: int) -> SubfileId:
    """Inverse of subfile_index."""
    if not 0 <= index < params.total_subfiles:
        raise ValueError(f"index {index} outside 0..{params.total_subfiles - 1}")
    per_file = params.groups_per_file
    file, rem = divmod(index, params.subfiles_per_file)
    user, rank = divmod(rem, per_file)
    return SubfileId(file + 1, user + 1, group_for_file_from_rank(params, file + 1, rank))


# Footprints are Python ints read as GF(2) vectors: bit k corresponds to the
# subfile with rank k, and XOR of footprints is coordinate-wise addition.

def unit_footprint(params: SystemParams, sid: SubfileId) -> int:
    return 1 << subfile_index(params, sid)


def footprint_of(params: SystemParams, sids) -> int:
    fp = 0
    for sid in sids:
        fp ^= unit_footprint(params, sid)
    return fp


def footprint_weight(footprint: int) -> int:
    return footprint.bit_count()


def footprint_subfiles(params: SystemParams, footprint: int) -> list[SubfileId]:
    """The SubfileIds named by the set bits of a footprint."""
    out = []
    idx = 0
    while footprint:
        if footprint & 1:
            out.append(subfile_from_index(params, idx))
        footprint >>= 1
        idx += 1
    return out


def xor_bytes(*chunks: bytes) -> bytes:
    """XOR equal-length byte strings."""
    size = len(chunks[0])
    acc = 0
    for chunk in chunks:
        if len(chunk) != size:
            raise ValueError(f"length mismatch: {len(chunk)} != {size}")
        acc ^= int.from_bytes(chunk, "big")
    return acc.to_bytes(size, "big")


def make_library(params: SystemParams, seed: int = 0) -> tuple[bytes, ...]:
    """Deterministic pseudo-random file payloads; file f has
    subfiles_per_file * subfile_bytes bytes."""
    rng = random.Random(seed)
    return tuple(rng.randbytes(params.file_bytes) for _ in range(params.num_files))


def subfile_payload(params: SystemParams, library, sid: SubfileId) -> bytes:
    """Slice one subfile payload out of the raw file library."""
    _check_subfile(params, sid)
    chunk = (sid.user - 1) * params.groups_per_file + group_rank_within_file(
        params, sid.file, sid.group
    )
    start = chunk * params.subfile_bytes
    return library[sid.file - 1][start : start + params.subfile_bytes]


@dataclass(frozen=True)
class CacheSymbol:
    """One coded cached subfile: the XOR of the g subfiles assigned to
    (owner, group), with its GF(2) footprint."""

    owner: int
    group: Subset
    payload: bytes
    footprint: int


@dataclass(frozen=True)
class BroadcastMessage:
    """One broadcast of exactly one subfile length.

    `meta` is structured provenance naming the rule that emitted the
    message and the indices it applies to; the decoder keys its replay on
    it. `footprint` is the XOR of the constituent subfiles' unit vectors.
    """

    phase: str
    payload: bytes
    footprint: int
    meta: tuple


@dataclass(frozen=True)
class TransmissionLog:
    """Ordered broadcast messages with per-type counters."""

    messages: tuple[BroadcastMessage, ...]

    @property
    def type1_count(self) -> int:
        return sum(1 for m in self.messages if m.phase == PHASE_TYPE1)

    @property
    def type2_count(self) -> int:
        return sum(1 for m in self.messages if m.phase in TYPE2_PHASES)

    @property
    def type3_count(self) -> int:
        return sum(1 for m in self.messages if m.phase in TYPE3_PHASES)

    def phase_count(self, phase: str) -> int:
        return sum(1 for m in self.messages if m.phase == phase)

    @property
    def total(self) -> int:
        return len(self.messages)


@dataclass(frozen=True)
class RateMemoryPoint:
    """Exact (memory, rate) pair with a provenance label and optional
    scheme parameter (group size g or code parameter t)."""

    memory: Fraction
    rate: Fraction
    label: str
    parameter: int | None = None

    def __post_init__(self):
        if self.memory < 0 or self.rate < 0:
            raise ValueError(f"negative rate-memory point ({self.memory}, {self.rate})")
