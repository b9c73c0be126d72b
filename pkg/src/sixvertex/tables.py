"""Correlator tables and the JSON/CSV/text report layer."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from mpmath import mpf

from .scalar import fmt

SCHEMA_VERSION = 1


def _scalar(x) -> Any:
    if isinstance(x, bool):
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, mpf):
        return fmt(x)
    if isinstance(x, (list, tuple)):
        return [_scalar(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _scalar(v) for k, v in x.items()}
    return x


@dataclass
class CorrelatorTable:
    """Values of one quantity on a size-n lattice.

    ``values`` is a scalar (partition function), a list over r, or an
    n x n nested list over (r1, r2). Positions count from the right.
    """

    kind: str
    n: int
    values: Any
    route: str
    params: dict
    inhomogeneous: bool = False

    @property
    def rank(self) -> int:
        if isinstance(self.values, (list, tuple)):
            return 2 if self.values and isinstance(self.values[0], (list, tuple)) else 1
        return 0

    def relabel(self, left_origin: bool) -> Any:
        if not left_origin or self.rank == 0:
            return self.values
        if self.rank == 1:
            return list(self.values)[::-1]
        return [list(row)[::-1] for row in list(self.values)[::-1]]

    def rows(self, left_origin: bool = False) -> list[tuple]:
        """Long-format rows: (value,), (r, value) or (r1, r2, value)."""
        vals = self.relabel(left_origin)
        if self.rank == 0:
            return [(vals,)]
        if self.rank == 1:
            return [(r + 1, v) for r, v in enumerate(vals)]
        return [(i + 1, j + 1, v) for i, row in enumerate(vals) for j, v in enumerate(row)]


def max_deviation(a, b) -> mpf:
    """Largest entrywise |a - b| over matching nested structures."""
    if isinstance(a, (list, tuple)):
        return max((max_deviation(x, y) for x, y in zip(a, b)), default=mpf(0))
    return abs(mpf(a) - mpf(b)) if not isinstance(a, Fraction) else abs(a - b)


@dataclass
class Report:
    """One CLI result: schema fields plus command-specific extras."""

    command: str
    inputs: dict
    route: str
    values: Any
    deviation: Any = None
    tolerance: Any = None
    elapsed_ms: float | None = None
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "inputs": _scalar(self.inputs),
            "route": self.route,
            "values": _scalar(self.values),
            "deviation": _scalar(self.deviation),
            "tolerance": _scalar(self.tolerance),
            "elapsed_ms": None if self.elapsed_ms is None else round(self.elapsed_ms, 3),
        }
        for k, v in self.extra.items():
            out[k] = _scalar(v)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False) + "\n"


def table_to_csv(tables: dict[str, CorrelatorTable], left_origin: bool = False) -> str:
    """Long format with one row per entry; a route column when several routes ran."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    first = next(iter(tables.values()))
    head = {0: [], 1: ["r"], 2: ["r1", "r2"]}[first.rank]
    w.writerow(["route"] + head + ["value"])
    for route, t in tables.items():
        for row in t.rows(left_origin):
            w.writerow([route] + [fmt(x) if isinstance(x, mpf) else x for x in row])
    return buf.getvalue()


def table_to_text(tables: dict[str, CorrelatorTable], left_origin: bool = False, digits: int = 20) -> str:
    lines = []
    for route, t in tables.items():
        lines.append(f"[{t.kind}] n={t.n} route={route}")
        vals = t.relabel(left_origin)
        if t.rank == 0:
            lines.append("  " + fmt(vals, digits))
        elif t.rank == 1:
            for r, v in enumerate(vals, 1):
                lines.append(f"  r={r:<3d} {fmt(v, digits)}")
        else:
            for row in vals:
                lines.append("  " + "  ".join(fmt(v, digits) for v in row))
    return "\n".join(lines) + "\n"
