"""Rate-memory curve sweeps exported as CSV.

A sweep evaluates the scheme envelope, the state-of-the-art envelope, and
the cut-set and shared-link lower bounds on a uniform memory grid over
[0, N/K], plus one labeled vertex row for every baseline and scheme
point. Cells are decimal with 15 significant digits; --exact adds one
"p/q" column per curve. A curve left empty at some memory is outside its
domain (the scheme envelope only covers [1/K, N/K]).
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from pathlib import Path

from . import bounds, rates

CURVE_NAMES = ("new", "sota", "cutset", "stc")
CURVE_COLUMNS = {
    "new": "R_new_envelope",
    "sota": "R_sota",
    "cutset": "R_cutset",
    "stc": "R_stc",
}


@dataclass(frozen=True)
class SweepConfig:
    num_files: int
    num_users: int
    points: int = 100
    curves: tuple[str, ...] = CURVE_NAMES
    output: Path = Path("sweep.csv")
    seed: int = 0
    subfile_bytes: int = 64
    exact: bool = False
    plot: bool = True

    def __post_init__(self):
        if self.num_files < 1 or self.num_users < self.num_files:
            raise ValueError(
                f"need 1 <= N <= K, got N={self.num_files}, K={self.num_users}"
            )
        if self.points < 2:
            raise ValueError(f"grid needs at least 2 points, got {self.points}")
        if not self.curves:
            raise ValueError("no curves selected")
        unknown = [c for c in self.curves if c not in CURVE_NAMES]
        if unknown:
            raise ValueError(f"unknown curves {unknown}; choose from {CURVE_NAMES}")


@dataclass(frozen=True)
class SweepRow:
    memory: Fraction
    label: str
    values: dict[str, Fraction | None] = field(default_factory=dict)


def format_decimal(value: Fraction, digits: int = 15) -> str:
    """Deterministic decimal rendering with `digits` significant digits."""
    with localcontext() as ctx:
        ctx.prec = digits
        return str(Decimal(value.numerator) / Decimal(value.denominator))


def format_exact(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def build_sweep(config: SweepConfig) -> list[SweepRow]:
    """All sweep rows (grid plus labeled vertices), sorted by memory."""
    n, k = config.num_files, config.num_users
    scheme = rates.scheme_envelope(n, k)
    sota = bounds.sota_envelope(n, k)

    def evaluate(memory: Fraction) -> dict[str, Fraction | None]:
        values: dict[str, Fraction | None] = {}
        for curve in config.curves:
            if curve == "new":
                lo, hi = scheme.domain
                values[curve] = scheme(memory) if lo <= memory <= hi else None
            elif curve == "sota":
                lo, hi = sota.domain
                values[curve] = sota(memory) if lo <= memory <= hi else None
            elif curve == "cutset":
                values[curve] = bounds.cutset_bound(n, k, memory)
            elif curve == "stc":
                values[curve] = bounds.stc_bound(n, k, memory)
        return values

    rows = []
    hi = Fraction(n, k)
    for j in range(config.points):
        memory = hi * Fraction(j, config.points - 1)
        rows.append(SweepRow(memory=memory, label="", values=evaluate(memory)))

    vertices = bounds.baseline_points(n, k) + list(scheme.points)
    for point in vertices:
        label = point.label
        if point.parameter is not None:
            suffix = "g" if label == rates.SCHEME_LABEL else "t"
            label = f"{label} {suffix}={point.parameter}"
        rows.append(SweepRow(memory=point.memory, label=label, values=evaluate(point.memory)))

    rows.sort(key=lambda r: (r.memory, r.label))
    return rows


def write_csv(rows: list[SweepRow], config: SweepConfig) -> Path:
    """Write the sweep as UTF-8 CSV; returns the output path."""
    columns = ["M"] + [CURVE_COLUMNS[c] for c in config.curves] + ["label"]
    if config.exact:
        columns += ["M_exact"] + [CURVE_COLUMNS[c] + "_exact" for c in config.curves]
    path = Path(config.output)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(columns)
        for row in rows:
            cells = [format_decimal(row.memory)]
            for curve in config.curves:
                value = row.values[curve]
                cells.append("" if value is None else format_decimal(value))
            cells.append(row.label)
            if config.exact:
                cells.append(format_exact(row.memory))
                for curve in config.curves:
                    value = row.values[curve]
                    cells.append("" if value is None else format_exact(value))
            writer.writerow(cells)
    return path
