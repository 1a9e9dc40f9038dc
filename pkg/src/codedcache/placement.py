"""Cache construction (prefetching).

Every user i stores one coded symbol per g-subset A of files: the XOR of
the g subfiles assigned to (A, i), one from each file of A. The j-th
subfile of file f at user i is tied to the j-th entry of
subsets_containing(N, g, f) in lexicographic order; any bijection would
work, this one is deterministic. Each cache holds C(N, g) symbols of one
subfile length, i.e. exactly N/(g*K) of a file, and across all users every
subfile appears in exactly one symbol.
"""

from __future__ import annotations

from dataclasses import dataclass

from .combin import Subset, enumerate_subsets, subsets_containing
from .model import (
    CacheSymbol,
    SubfileId,
    SystemParams,
    footprint_of,
    subfile_payload,
    xor_bytes,
)


@dataclass(frozen=True)
class Placement:
    """Server-side prefetch state: the library it was built from, all user
    cache symbols keyed by (user, group), and the per (file, user) group
    assignment."""

    params: SystemParams
    library: tuple[bytes, ...]
    symbols: dict[tuple[int, Subset], CacheSymbol]
    assignment: dict[tuple[int, int], tuple[Subset, ...]]

    def symbol(self, user: int, group: Subset) -> CacheSymbol:
        return self.symbols[(user, group)]

    def user_cache(self, user: int) -> tuple[CacheSymbol, ...]:
        groups = enumerate_subsets(self.params.num_files, self.params.group_size)
        return tuple(self.symbols[(user, g)] for g in groups)

    def cache_bits(self, user: int) -> int:
        return sum(len(s.payload) * 8 for s in self.user_cache(user))


def build_placement(params: SystemParams, library) -> Placement:
    """Build every user's cache from the file library."""
    library = tuple(library)
    if len(library) != params.num_files:
        raise ValueError(
            f"library holds {len(library)} files, expected {params.num_files}"
        )
    for f, payload in enumerate(library, start=1):
        if len(payload) != params.file_bytes:
            raise ValueError(
                f"file {f} has {len(payload)} bytes, expected {params.file_bytes}"
            )

    groups = enumerate_subsets(params.num_files, params.group_size)
    symbols: dict[tuple[int, Subset], CacheSymbol] = {}
    for user in range(1, params.num_users + 1):
        for group in groups:
            sids = [SubfileId(f, user, group) for f in group]
            payload = xor_bytes(*[subfile_payload(params, library, s) for s in sids])
            symbols[(user, group)] = CacheSymbol(
                owner=user,
                group=group,
                payload=payload,
                footprint=footprint_of(params, sids),
            )

    assignment = {
        (f, user): tuple(subsets_containing(params.num_files, params.group_size, f))
        for f in range(1, params.num_files + 1)
        for user in range(1, params.num_users + 1)
    }
    return Placement(params=params, library=library, symbols=symbols, assignment=assignment)
