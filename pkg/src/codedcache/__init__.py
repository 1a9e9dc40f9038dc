"""Bit-exact simulator and analysis toolkit for a coded-prefetching
broadcast caching scheme: cache construction, three-type two-phase
delivery, constructive decoding with an independent GF(2) span oracle,
and exact rate/bound curves."""

from .combin import (
    LowerEnvelope,
    binomial,
    enumerate_subsets,
    lower_convex_envelope,
    subsets_containing,
)
from .decoder import (
    DecodeError,
    OracleResult,
    UserView,
    constructive_decode,
    make_view,
    oracle_all_users,
    replay_decode,
    span_oracle,
)
from .delivery import (
    SymbolType,
    assign_rv,
    classify_symbols,
    deliver,
    select_leaders,
)
from .model import (
    BroadcastMessage,
    CacheSymbol,
    Demand,
    RateMemoryPoint,
    SubfileId,
    SystemParams,
    TransmissionLog,
    make_library,
    subfile_from_index,
    subfile_index,
)
from .placement import Placement, build_placement
from .rates import (
    RateCurve,
    demand_rate,
    scheme_envelope,
    scheme_point,
    scheme_points,
    transmission_total,
    worst_demand_rate,
)
from .bounds import (
    cfl_point,
    cutset_bound,
    cutset_gap,
    gbc_point,
    mds_dominance_check,
    mds_memory_lower_bound,
    mds_points,
    sota_envelope,
    stc_bound,
)
from .verify import VerifySummary, check_instance, verify_grid

__version__ = "0.1.0"
