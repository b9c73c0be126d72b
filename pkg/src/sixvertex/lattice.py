"""Exhaustive enumeration of six-vertex configurations with domain wall boundaries.

Configurations are generated as alternating sign matrices (ASMs) row by row.
The state between rows is the vector of vertical arrows, encoded per column
as 0 (arrow down) or 1 (arrow up); inside a row the horizontal arrow is 0
(pointing left) or 1 (pointing right). A cell with vertical state ``s``
above it and horizontal state ``t`` on its left is

    entry +1 -> type 5 (needs s = t = 0),  entry -1 -> type 6 (needs s = t = 1),
    entry  0 -> type 2 (s=t=0), 1 (s=t=1), 3 (s=0, t=1), 4 (s=1, t=0).

Types 1, 2 carry weight a; 3, 4 carry b; 5, 6 carry c.

Matrices and grids are stored in display order (left to right). Boundary
positions ``r`` are counted from the right, so the entry in display column
``j`` sits at position ``r = n - j``.
"""

from __future__ import annotations

import csv
import io
from collections import Counter
from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

from .errors import SizeCapExceeded
from .params import InhomParams, WeightParams, weights_abc
from .polys import DensePoly

DEFAULT_CAP = 8

ASM_COUNTS = (1, 2, 7, 42, 429, 7436, 218348, 10850216)


class VertexType(IntEnum):
    A1 = 1
    A2 = 2
    B3 = 3
    B4 = 4
    C5 = 5
    C6 = 6

    @property
    def weight_class(self) -> str:
        return "abc"[(self.value - 1) // 2]

    @property
    def arrows(self) -> tuple[str, str, str, str]:
        """Arrow directions on the (top, bottom, left, right) edges."""
        return _ARROWS[self]


# u/d for vertical edges, l/r for horizontal edges
_ARROWS = {
    VertexType.A1: ("u", "u", "r", "r"),
    VertexType.A2: ("d", "d", "l", "l"),
    VertexType.B3: ("d", "d", "r", "r"),
    VertexType.B4: ("u", "u", "l", "l"),
    VertexType.C5: ("d", "u", "l", "r"),
    VertexType.C6: ("u", "d", "r", "l"),
}

AsmMatrix = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class Grid:
    """An N x N vertex configuration; ``cells[k][j]`` is row k (top first), display column j."""

    cells: tuple[tuple[VertexType, ...], ...]

    @property
    def n(self) -> int:
        return len(self.cells)

    def cell(self, k: int, alpha: int) -> VertexType:
        """Vertex on row ``k`` (1 = top) and column ``alpha`` (1 = rightmost)."""
        return self.cells[k - 1][self.n - alpha]

    def counts(self) -> Counter:
        return Counter(t for row in self.cells for t in row)

    def position(self, k: int) -> int:
        """Position (from the right) of the first type-5 vertex in row ``k``."""
        row = self.cells[k - 1]
        for j, t in enumerate(row):
            if t == VertexType.C5:
                return self.n - j
        raise ValueError(f"row {k} has no type-5 vertex")


def check_cap(n: int, cap: int) -> None:
    if n < 1:
        raise ValueError("lattice size must be at least 1")
    if n > cap:
        raise SizeCapExceeded(f"n = {n} exceeds the enumeration cap {cap}")


@lru_cache(maxsize=None)
def _row_options(state: tuple[int, ...]) -> tuple:
    """All admissible rows below a vertical-arrow state.

    Returns tuples ``(new_state, entries, n_a, n_minus)``.
    Cell-by-cell backtracking; each cell has at most two choices.
    """
    n = len(state)
    out = []

    def walk(j, t, new_state, entries, n_a, n_minus):
        if j == n:
            if t == 1:
                out.append((tuple(new_state), tuple(entries), n_a, n_minus))
            return
        s = state[j]
        if s == 0 and t == 0:
            walk(j + 1, 0, new_state + [0], entries + [0], n_a + 1, n_minus)
            walk(j + 1, 1, new_state + [1], entries + [1], n_a, n_minus)
        elif s == 1 and t == 1:
            walk(j + 1, 1, new_state + [1], entries + [0], n_a + 1, n_minus)
            walk(j + 1, 0, new_state + [0], entries + [-1], n_a, n_minus + 1)
        else:
            walk(j + 1, t, new_state + [s], entries + [0], n_a, n_minus)

    walk(0, 0, [], [], 0, 0)
    return tuple(out)


def enumerate_asms(n: int, cap: int = DEFAULT_CAP, first_position: int | None = None) -> Iterator[AsmMatrix]:
    """Every n x n ASM exactly once, in deterministic depth-first order.

    ``first_position`` restricts to matrices whose first-row 1 sits at that
    position (from the right); the n restricted runs partition the full set.
    """
    check_cap(n, cap)
    rows: list[tuple[int, ...]] = []

    def dfs(state):
        if len(rows) == n:
            yield tuple(rows)
            return
        for new_state, entries, _, _ in _row_options(state):
            if first_position is not None and not rows and entries.index(1) != n - first_position:
                continue
            rows.append(entries)
            yield from dfs(new_state)
            rows.pop()

    yield from dfs((0,) * n)


def asm_to_grid(m: AsmMatrix) -> Grid:
    n = len(m)
    s = [0] * n
    cells = []
    for row in m:
        t = 0
        out = []
        for j, e in enumerate(row):
            if e == 1:
                out.append(VertexType.C5)
            elif e == -1:
                out.append(VertexType.C6)
            elif s[j] == t:
                out.append(VertexType.A1 if t else VertexType.A2)
            else:
                out.append(VertexType.B3 if t else VertexType.B4)
            s[j] += e
            t += e
        cells.append(tuple(out))
    return Grid(tuple(cells))


def grid_to_asm(g: Grid) -> AsmMatrix:
    """Type 5 -> +1, type 6 -> -1, everything else -> 0."""
    conv = {VertexType.C5: 1, VertexType.C6: -1}
    return tuple(tuple(conv.get(t, 0) for t in row) for row in g.cells)


def enumerate_dwbc(n: int, cap: int = DEFAULT_CAP) -> Iterator[Grid]:
    """All domain-wall configurations of the n x n lattice."""
    for m in enumerate_asms(n, cap):
        yield asm_to_grid(m)


def is_asm(m: Sequence[Sequence[int]]) -> bool:
    n = len(m)
    for line in list(m) + [[m[i][j] for i in range(n)] for j in range(n)]:
        if len(line) != n or any(x not in (-1, 0, 1) for x in line):
            return False
        nz = [x for x in line if x]
        if sum(nz) != 1 or any(a == b for a, b in zip(nz, nz[1:])) or (nz and nz[0] != 1):
            return False
    return True


def check_grid(g: Grid) -> list[str]:
    """Problems with edge consistency or the boundary conditions; empty if valid."""
    n = g.n
    problems = []
    for k in range(n):
        for j in range(n):
            top, bottom, left, right = g.cells[k][j].arrows
            if k == 0 and top != "d":
                problems.append(f"top boundary at column {j} not incoming")
            if k == n - 1 and bottom != "u":
                problems.append(f"bottom boundary at column {j} not incoming")
            if j == 0 and left != "l":
                problems.append(f"left boundary at row {k} not outgoing")
            if j == n - 1 and right != "r":
                problems.append(f"right boundary at row {k} not outgoing")
            if k + 1 < n and g.cells[k + 1][j].arrows[0] != bottom:
                problems.append(f"vertical edge below ({k},{j}) inconsistent")
            if j + 1 < n and g.cells[k][j + 1].arrows[2] != right:
                problems.append(f"horizontal edge right of ({k},{j}) inconsistent")
    return problems


def weight_hom(g: Grid, a, b, c):
    """a^(n1+n2) b^(n3+n4) c^(n5+n6) for one configuration."""
    cnt = g.counts()
    return (
        a ** (cnt[VertexType.A1] + cnt[VertexType.A2])
        * b ** (cnt[VertexType.B3] + cnt[VertexType.B4])
        * c ** (cnt[VertexType.C5] + cnt[VertexType.C6])
    )


def _inhom_tables(p: InhomParams):
    from mpmath import mp

    lams, nus, eta = p.lams, p.nu_values, p.eta_value
    n = p.n
    # indexed [k-1][alpha-1]
    a = [[mp.sin(lams[al] - nus[k] + eta) for al in range(n)] for k in range(n)]
    b = [[mp.sin(lams[al] - nus[k] - eta) for al in range(n)] for k in range(n)]
    return a, b, mp.sin(2 * eta)


def weight_inhom(g: Grid, lambdas, nus, eta):
    """Product of a(lam_alpha, nu_k), b(lam_alpha, nu_k), c over the cells."""
    p = InhomParams(tuple(lambdas), tuple(nus), eta)
    a, b, c = _inhom_tables(p)
    return _grid_weight(g, a, b, c)


def _grid_weight(g: Grid, a, b, c):
    n = g.n
    w = 1
    for k in range(n):
        for j in range(n):
            cls = g.cells[k][j].weight_class
            alpha = n - j
            if cls == "a":
                w = w * a[k][alpha - 1]
            elif cls == "b":
                w = w * b[k][alpha - 1]
            else:
                w = w * c
    return w


@lru_cache(maxsize=None)
def statistics(n: int, cap: int = DEFAULT_CAP) -> Counter:
    """Histogram keyed by ``(r1, r2, n_a, n_minus)`` over all configurations.

    ``r1``/``r2`` are the positions (from the right) of the type-5 vertex in
    the first/last row, ``n_a`` the number of a-vertices and ``n_minus`` the
    number of type-6 vertices. Every homogeneous oracle quantity is a
    polynomial in the weights with these counts.
    """
    check_cap(n, cap)
    hist: Counter = Counter()

    def dfs(state, depth, r1, n_a, n_minus, last_entries):
        if depth == n:
            r2 = n - last_entries.index(1)
            hist[(r1, r2, n_a, n_minus)] += 1
            return
        for new_state, entries, da, dm in _row_options(state):
            nr1 = n - entries.index(1) if depth == 0 else r1
            dfs(new_state, depth + 1, nr1, n_a + da, n_minus + dm, entries)

    dfs((0,) * n, 0, 0, 0, 0, None)
    return hist


def _hom_weights(weights):
    if isinstance(weights, WeightParams):
        return weights_abc(weights)
    a, b, c = weights
    return a, b, c


class _Sums:
    """Weighted sums Z, by first-row position, and by (first, last) positions."""

    def __init__(self, n: int, weights, cap: int = DEFAULT_CAP):
        self.n = n
        zero = 0
        self.by_r1 = {r: zero for r in range(1, n + 1)}
        self.by_pair = {(r1, r2): zero for r1 in range(1, n + 1) for r2 in range(1, n + 1)}
        self.z = zero
        if isinstance(weights, InhomParams):
            if weights.n != n:
                raise ValueError("parameter arrays do not match n")
            a, b, c = _inhom_tables(weights)
            for g in enumerate_dwbc(n, cap):
                w = _grid_weight(g, a, b, c)
                r1, r2 = g.position(1), g.position(n)
                self._add(r1, r2, w)
        else:
            a, b, c = _hom_weights(weights)
            cache: dict = {}
            for (r1, r2, n_a, n_minus), count in statistics(n, cap).items():
                n_c = n + 2 * n_minus
                n_b = n * n - n_a - n_c
                key = (n_a, n_b, n_c)
                if key not in cache:
                    cache[key] = a**n_a * b**n_b * c**n_c
                self._add(r1, r2, count * cache[key])

    def _add(self, r1, r2, w):
        self.z = self.z + w
        self.by_r1[r1] = self.by_r1[r1] + w
        self.by_pair[(r1, r2)] = self.by_pair[(r1, r2)] + w


def _check_position(n: int, *rs: int) -> None:
    for r in rs:
        if not 1 <= r <= n:
            raise ValueError(f"position {r} outside 1..{n}")


def oracle_partition(n: int, weights, cap: int = DEFAULT_CAP):
    """Z_N by brute force; ``weights`` is (a, b, c), WeightParams or InhomParams."""
    return _Sums(n, weights, cap).z


def oracle_H1(n: int, r: int, weights, cap: int = DEFAULT_CAP):
    _check_position(n, r)
    s = _Sums(n, weights, cap)
    return s.by_r1[r] / s.z


def oracle_G1(n: int, r: int, weights, cap: int = DEFAULT_CAP):
    """Probability that the first-row edge between columns r and r+1 points left.

    That arrow points left exactly when the row's type-5 vertex sits at a
    position <= r.
    """
    _check_position(n, r)
    s = _Sums(n, weights, cap)
    return sum((s.by_r1[q] for q in range(1, r + 1)), 0) / s.z


def oracle_H2(n: int, r1: int, r2: int, weights, cap: int = DEFAULT_CAP):
    _check_position(n, r1, r2)
    s = _Sums(n, weights, cap)
    return s.by_pair[(r1, r2)] / s.z


def oracle_G2(n: int, r1: int, r2: int, weights, cap: int = DEFAULT_CAP):
    _check_position(n, r1, r2)
    s = _Sums(n, weights, cap)
    acc = sum((s.by_pair[(p, q)] for p in range(1, r1 + 1) for q in range(1, r2 + 1)), 0)
    return acc / s.z


def oracle_tables(n: int, weights, cap: int = DEFAULT_CAP) -> dict:
    """All oracle quantities from a single pass: Z, H1, G1, H2, G2 tables (1-based lists)."""
    s = _Sums(n, weights, cap)
    h1 = [s.by_r1[r] / s.z for r in range(1, n + 1)]
    h2 = [[s.by_pair[(p, q)] / s.z for q in range(1, n + 1)] for p in range(1, n + 1)]
    g1, acc = [], 0
    for v in h1:
        acc = acc + v
        g1.append(acc)
    g2 = [[sum((h2[p][q] for p in range(i + 1) for q in range(j + 1)), 0) for j in range(n)] for i in range(n)]
    return {"Z": s.z, "H1": h1, "G1": g1, "H2": h2, "G2": g2}


@dataclass(frozen=True)
class RefinedCensus:
    """x-enumerations of n x n ASMs, weight x^(number of -1 entries).

    ``singly[r-1]`` refines by the first-row position r; ``doubly[r1-1][r2-1]``
    by the first- and last-row positions. Positions count from the right.
    """

    n: int
    total: DensePoly
    singly: tuple[DensePoly, ...]
    doubly: tuple[tuple[DensePoly, ...], ...]

    def at(self, x) -> dict:
        """Integer (or rational) values of every polynomial at ``x``."""
        return {
            "total": self.total(x),
            "singly": [p(x) for p in self.singly],
            "doubly": [[p(x) for p in row] for row in self.doubly],
        }

    def to_json(self, left_origin: bool = False) -> dict:
        singly = list(self.singly)
        doubly = [list(row) for row in self.doubly]
        if left_origin:
            singly = singly[::-1]
            doubly = [row[::-1] for row in doubly[::-1]]
        return {
            "n": self.n,
            "position_origin": "left" if left_origin else "right",
            "total": _int_coeffs(self.total),
            "singly": [_int_coeffs(p) for p in singly],
            "doubly": [[_int_coeffs(p) for p in row] for row in doubly],
        }

    def to_csv(self, left_origin: bool = False) -> str:
        """Long format: r1, r2, power of x, coefficient."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["r1", "r2", "power", "count"])
        for i, row in enumerate(self.doubly):
            for j, p in enumerate(row):
                r1, r2 = i + 1, j + 1
                if left_origin:
                    r1, r2 = self.n - r1 + 1, self.n - r2 + 1
                for k, c in enumerate(_int_coeffs(p)):
                    w.writerow([r1, r2, k, c])
        return buf.getvalue()


def _int_coeffs(p: DensePoly) -> list[int]:
    return [int(c) for c in p.dense()] or [0]


def refined_census(n: int, cap: int = DEFAULT_CAP) -> RefinedCensus:
    hist = statistics(n, cap)
    total: Counter = Counter()
    singly = [Counter() for _ in range(n)]
    doubly = [[Counter() for _ in range(n)] for _ in range(n)]
    for (r1, r2, _, n_minus), count in hist.items():
        total[n_minus] += count
        singly[r1 - 1][n_minus] += count
        doubly[r1 - 1][r2 - 1][n_minus] += count

    def poly(c: Counter) -> DensePoly:
        return DensePoly({(k,): v for k, v in c.items()}, 1, ("x",))

    return RefinedCensus(
        n,
        poly(total),
        tuple(poly(c) for c in singly),
        tuple(tuple(poly(c) for c in row) for row in doubly),
    )


def census_json(census: RefinedCensus, xs: Sequence[int] = (1, 2, 3), left_origin: bool = False) -> dict:
    """JSON-ready census with integer coefficient arrays and evaluations at ``xs``."""
    data = census.to_json(left_origin)
    evals = {}
    for x in xs:
        vals = census.at(x)
        singly = [int(v) for v in vals["singly"]]
        evals[str(x)] = {"total": int(vals["total"]), "singly": singly[::-1] if left_origin else singly}
    data["evaluations"] = evals
    return data


def x_weighted_tables(n: int, x, cap: int = DEFAULT_CAP) -> dict:
    """Exact H1 and H2 tables at the combinatorial point a = b, c^2/(ab) = x.

    Uses rational arithmetic; configuration weight is x^(number of -1 entries).
    """
    census = refined_census(n, cap)
    total = census.total(Fraction(x))
    h1 = [Fraction(p(Fraction(x))) / total for p in census.singly]
    h2 = [[Fraction(p(Fraction(x))) / total for p in row] for row in census.doubly]
    return {"total": total, "H1": h1, "H2": h2}
