"""Cross-route consistency suite.

Every check compares two independently computed quantities and records the
largest deviation against a tolerance. Random parameters come from a seeded
generator and are rounded to 12 decimals so they can be echoed and replayed.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from mpmath import mp, mpf

from . import homogeneous as hom
from . import inhomogeneous as inh
from . import lattice
from . import ortho
from .params import InhomParams, WeightParams
from .scalar import Angle, precision, tolerance

GUARD_BITS = 64

ASM_COUNTS = (1, 2, 7, 42, 429, 7436, 218348, 10850216)

# lambda = pi/2 gives a = b; c^2/(ab) = 4 sin^2 eta is the x of the x-enumeration
SPECIAL_POINTS = {1: "pi/6", 2: "pi/4", 3: "pi/3"}


@dataclass
class Check:
    name: str
    deviation: object
    tolerance: object
    detail: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        if self.deviation is None:
            return False
        return self.deviation <= self.tolerance

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "deviation": self.deviation,
            "tolerance": self.tolerance,
            **self.detail,
        }


def special_params(x: int) -> WeightParams:
    return WeightParams.of("pi/2", SPECIAL_POINTS[x])


def random_params(rng: random.Random) -> WeightParams:
    """eta ~ U(0.15, pi/2 - 0.15), lambda ~ U(eta + 0.1, pi - eta - 0.1)."""
    eta = rng.uniform(0.15, math.pi / 2 - 0.15)
    lam = rng.uniform(eta + 0.1, math.pi - eta - 0.1)
    return WeightParams(Angle.parse(f"{lam:.12f}"), Angle.parse(f"{eta:.12f}"))


def random_inhom(rng: random.Random, n: int) -> InhomParams:
    """Column parameters spread over the disordered window, rows within +-0.05."""
    eta = rng.uniform(0.15, math.pi / 2 - 0.15)
    lams = [f"{rng.uniform(eta + 0.1, math.pi - eta - 0.1):.12f}" for _ in range(n)]
    nus = [f"{rng.uniform(-0.05, 0.05):.12f}" for _ in range(n)]
    p = InhomParams(tuple(lams), tuple(nus), f"{eta:.12f}")
    p.validate()
    return p


def _dev(a, b) -> mpf:
    if isinstance(a, (list, tuple)):
        return max((_dev(x, y) for x, y in zip(a, b, strict=True)), default=mpf(0))
    return abs(a - b)


def _flat(t) -> list:
    return [x for row in t for x in row]


def _rel(a, b) -> mpf:
    return abs(a - b) / abs(b)


# --- individual checks ---------------------------------------------------


def check_census(n_max: int, cap: int) -> list[Check]:
    out = []
    for n in range(1, n_max + 1):
        census = lattice.refined_census(n, cap)
        count = census.total(1)
        out.append(Check(f"census count n={n}", abs(count - ASM_COUNTS[n - 1]), 0, {"count": count}))
        two = census.total(2)
        out.append(Check(f"2-enumeration n={n}", abs(two - 2 ** (n * (n - 1) // 2)), 0, {"total": two}))
        singly_sum = sum((p for p in census.singly), census.total * 0)
        doubly_sum = sum((p for row in census.doubly for p in row), census.total * 0)
        col_sums = [sum((census.doubly[i][j] for i in range(n)), census.total * 0) for j in range(n)]
        row_sums = [sum(census.doubly[i], census.total * 0) for i in range(n)]
        marg = (singly_sum - census.total).max_abs_coeff() + (doubly_sum - census.total).max_abs_coeff()
        marg += sum((rs - s).max_abs_coeff() for rs, s in zip(row_sums, census.singly))
        # the bottom row refines like the top row under the half-turn symmetry
        marg += sum((cs - s).max_abs_coeff() for cs, s in zip(col_sums, census.singly[::-1]))
        out.append(Check(f"census marginals n={n}", marg, 0))
        ice = WeightParams.of("pi/2", "pi/6")
        z = hom.Z_hom(n, ice) / (mp.sqrt(3) / 2) ** (n * n)
        out.append(Check(f"Z_hom ice integer n={n}", abs(z - count), max(mpf(10) ** -35, tolerance(n))))
    return out


def check_partition(n_max: int, params: Iterable[WeightParams], cap: int) -> list[Check]:
    out = []
    for p in params:
        worst = max(_rel(hom.Z_hom(n, p), lattice.oracle_partition(n, p, cap)) for n in range(1, n_max + 1))
        out.append(Check(f"Z_hom vs oracle {p.describe()}", worst, tolerance(n_max)))
    return out


def check_onepoint(n_max: int, params: Iterable[WeightParams], cap: int) -> list[Check]:
    out = []
    for p in params:
        worst_h = worst_g = worst_norm = mpf(0)
        for n in range(1, n_max + 1):
            det = hom.H_hom_table(n, p)
            routes = [
                det,
                ortho.H_via_ortho_table(n, p),
                ortho.H_via_ortho_table(n, p, crossed=True),
                [ortho.H_via_omega(n, r, p) for r in range(1, n + 1)],
            ]
            o = lattice.oracle_tables(n, p, cap)
            routes.append(o["H1"])
            worst_h = max([worst_h] + [_dev(x, y) for i, x in enumerate(routes) for y in routes[i + 1 :]])
            g = hom.G_hom_table(n, p)
            cum = [sum(det[:r], mpf(0)) for r in range(1, n + 1)]
            worst_g = max(worst_g, _dev(g, cum), _dev(g, o["G1"]), _dev(cum, o["G1"]))
            worst_norm = max(worst_norm, abs(sum(det) - 1), abs(g[-1] - 1))
        tol = tolerance(n_max)
        d = p.describe()
        out += [
            Check(f"H one-point routes {d}", worst_h, tol),
            Check(f"G one-point routes {d}", worst_g, tol),
            Check(f"one-point normalization {d}", worst_norm, tol),
        ]
    return out


def check_twopoint(n_max: int, n_oracle: int, params: Iterable[WeightParams], cap: int, omega: bool = True) -> list[Check]:
    out = []
    for p in params:
        worst = worst_o = worst_omega = worst_trunc = worst_norm = worst_g2 = mpf(0)
        for n in range(2, n_max + 1):
            det = hom.H2_hom_table(n, p)
            ident = ortho.H2_identity_table(n, p)
            worst = max(worst, _dev(det, ident))
            longer = ortho.H2_identity_table(n, p, j_max=2 * n + 2)
            worst_trunc = max(worst_trunc, _dev(ident, longer))
            worst_norm = max(worst_norm, abs(sum(_flat(det)) - 1))
            if omega:
                alt = [[ortho.H2_via_omega(n, r1, r2, p) for r2 in range(1, n + 1)] for r1 in range(1, n + 1)]
                worst_omega = max(worst_omega, _dev(det, alt))
            if n <= n_oracle:
                o = lattice.oracle_tables(n, p, cap)
                worst_o = max(worst_o, _dev(det, o["H2"]), _dev(ident, o["H2"]))
                worst_g2 = max(worst_g2, _dev(hom.cumulative_2d(det), o["G2"]))
        tol = tolerance(n_max)
        d = p.describe()
        out += [
            Check(f"H2 determinant vs identity {d}", worst, tol),
            Check(f"H2 vs oracle {d}", worst_o, tol),
            Check(f"H2 identity truncation {d}", worst_trunc, tol),
            Check(f"H2 normalization {d}", worst_norm, tol),
            Check(f"G2 vs oracle {d}", worst_g2, tol),
        ]
        if omega:
            out.append(Check(f"H2 omega-rho route {d}", worst_omega, tol))
    return out


def check_crossing(n_max: int, params: Iterable[WeightParams]) -> list[Check]:
    out = []
    for p in params:
        worst = mpf(0)
        for n in range(1, n_max + 1):
            rep = hom.crossing_check(n, p)
            worst = max(worst, rep["onepoint_max_dev"], rep.get("twopoint_max_dev") or mpf(0))
        out.append(Check(f"crossing symmetry {p.describe()}", worst, tolerance(n_max)))
    return out


def check_genfun(n_max: int, params: Iterable[WeightParams]) -> list[Check]:
    out = []
    for p in params:
        rem = dev = mpf(0)
        for n in range(2, n_max + 1):
            rep = ortho.verify_genfun_identity(n, p)
            rem = max(rem, rep["remainder_max"])
            dev = max(dev, rep["deviation"])
        tol = tolerance(n_max)
        out += [
            Check(f"generating function remainder {p.describe()}", rem, tol),
            Check(f"generating function quotient {p.describe()}", dev, tol),
        ]
    return out


def check_ortho(m: int, params: Iterable[WeightParams]) -> list[Check]:
    out = []
    for p in params:
        mom = ortho.moments(2 * m + 1, p)
        basis = ortho.build_basis(m, mom)
        tol = tolerance(m + 1)
        d = p.describe()
        # the reflected basis is rebuilt from scratch; its moment Hankel loses digits with degree
        with precision(mp.prec + GUARD_BITS):
            par = ortho.parity_check(m, p)
        d1 = max(ortho.d1_defect(n, mom, basis) for n in range(1, m + 1))
        d2 = max(ortho.d2_defect(n, mom, basis) for n in range(1, m + 1))
        anti = mpf(0)
        for n in range(1, m + 1):
            poly = ortho.delta_2(n, mom)
            anti = max(anti, max((abs(c + poly.coeff(e[1], e[0])) for e, c in poly.terms.items()), default=mpf(0)))
        hank_phi = max(_dev(hom.phi_matrix(n + 1, p), mom.hankel(n)) for n in range(m))
        out += [
            Check(f"orthogonality {d}", ortho.orthogonality_defect(basis, mom), tol),
            Check(f"Hankel product {d}", ortho.hankel_product_defect(basis, mom), tol),
            Check(f"Hankel equals Phi {d}", hank_phi, tol),
            Check(f"bordered Hankel, one border {d}", d1, tol),
            Check(f"bordered Hankel, two borders {d}", d2, tol),
            Check(f"two-border antisymmetry {d}", anti, tol),
            Check(f"parity {d}", max(par["coeff_dev"], par["norm_rel_dev"], par["leading_dev"]), tol),
            Check(f"omega-rho jet relations {d}", ortho.omega_rho_defect(p, 2 * m), tol),
        ]
    return out


def check_inhomogeneous(n_max: int, rng: random.Random, sets: int, cap: int) -> list[Check]:
    out = []
    for k in range(sets):
        worst_z = worst_1 = worst_2 = worst_ext = worst_norm = mpf(0)
        for n in range(1, n_max + 1):
            p = random_inhom(rng, n)
            o = lattice.oracle_tables(n, p, cap)
            worst_z = max(worst_z, _rel(inh.Z_inhom(p), o["Z"]))
            routes = [
                inh.H_inhom_table(p, "det"),
                inh.H_inhom_table(p, "sum"),
                o["H1"],
            ]
            g_routes = [inh.G_inhom_table(p, "det"), inh.G_inhom_table(p, "sum"), o["G1"]]
            for rs in (routes, g_routes):
                worst_1 = max([worst_1] + [_dev(x, y) for i, x in enumerate(rs) for y in rs[i + 1 :]])
            worst_norm = max(worst_norm, abs(sum(routes[0]) - 1))
            if n >= 2:
                tp = inh.TwoPoint(p)
                table = tp.table()
                worst_2 = max(worst_2, _dev(table, o["H2"]))
                ext = [[tp.value(r1, r2, upper=(n, n)) for r2 in range(1, n + 1)] for r1 in range(1, n + 1)]
                worst_ext = max(worst_ext, _dev(table, ext))
                worst_norm = max(worst_norm, abs(sum(_flat(table)) - 1))
        tol = tolerance(n_max)
        out += [
            Check(f"Z_inhom vs oracle set {k}", worst_z, tol),
            Check(f"inhomogeneous one-point routes set {k}", worst_1, tol),
            Check(f"inhomogeneous two-point vs oracle set {k}", worst_2, tol),
            Check(f"two-point sum extension set {k}", worst_ext, tol),
            Check(f"inhomogeneous normalization set {k}", worst_norm, tol),
        ]
    return out


def exact_identity_deviation(n: int, x: int, cap: int = lattice.DEFAULT_CAP) -> Fraction:
    """Max |doubly refined / total - identity built from singly refined data| as an exact rational."""
    if n < 2:
        return Fraction(0)
    big = lattice.x_weighted_tables(n, x, cap)
    small = lattice.x_weighted_tables(n - 1, x, cap)
    built = ortho.two_point_table_from_one_point(big["H1"], small["H1"])
    return max(abs(a - b) for a, b in zip(_flat(big["H2"]), _flat(built)))


def check_exact_identity(n_max: int, cap: int) -> list[Check]:
    out = []
    for x in (1, 2, 3):
        worst = max((exact_identity_deviation(n, x, cap) for n in range(2, n_max + 1)), default=Fraction(0))
        out.append(Check(f"exact doubly refined identity x={x}", worst, Fraction(0)))
    return out


def check_special_points(n_max: int, cap: int) -> list[Check]:
    """Determinant route at lambda = pi/2 reproduces the exact x-enumeration ratios."""
    out = []
    for x in (1, 2, 3):
        p = special_params(x)
        worst = mpf(0)
        for n in range(1, n_max + 1):
            exact = lattice.x_weighted_tables(n, x, cap)
            worst = max(worst, _dev(hom.H_hom_table(n, p), [mpf(v.numerator) / v.denominator for v in exact["H1"]]))
            if n >= 2:
                h2 = [[mpf(v.numerator) / v.denominator for v in row] for row in exact["H2"]]
                worst = max(worst, _dev(hom.H2_hom_table(n, p), h2))
        out.append(Check(f"x-enumeration ratios x={x}", worst, tolerance(n_max)))
    return out


def bottom_row_convention(n: int, p: WeightParams, cap: int) -> str:
    """Which bottom-row labelling makes the determinant route match the oracle."""
    det = hom.H2_hom_table(n, p)
    o = lattice.oracle_tables(n, p, cap)["H2"]
    flipped = [row[::-1] for row in o]
    right, left = _dev(det, o), _dev(det, flipped)
    tol = tolerance(n)
    if right <= tol:
        return "right"
    if left <= tol:
        return "left"
    return "neither"


@dataclass
class SuiteConfig:
    n_max: int = 5
    seed: int = 0
    random_sets: int = 2
    cap: int = lattice.DEFAULT_CAP
    ortho_degree: int = 8
    genfun_n_max: int = 8
    omega: bool = True


def run_suite(cfg: SuiteConfig, progress: Callable[[Check], None] | None = None) -> dict:
    """Run every check; ``progress`` is called after each one."""
    rng = random.Random(cfg.seed)
    drawn = [random_params(rng) for _ in range(cfg.random_sets)]
    points = [special_params(x) for x in (1, 2, 3)]
    n = cfg.n_max
    n_oracle = min(n, cfg.cap, 6)
    checks: list[Check] = []

    def extend(items):
        for c in items:
            checks.append(c)
            if progress:
                progress(c)

    extend(check_census(min(n, cfg.cap, 7), cfg.cap))
    extend(check_partition(n_oracle, drawn + points[:1], cfg.cap))
    extend(check_onepoint(n_oracle, drawn + points[:1], cfg.cap))
    extend(check_twopoint(n, n_oracle, drawn + points, cfg.cap, cfg.omega))
    extend(check_crossing(n, drawn + points[:1]))
    extend(check_genfun(min(n, cfg.genfun_n_max), drawn + points))
    extend(check_ortho(cfg.ortho_degree, drawn + points[:1]))
    extend(check_inhomogeneous(min(n, 5), rng, cfg.random_sets, cfg.cap))
    extend(check_exact_identity(min(n, 5, cfg.cap), cfg.cap))
    extend(check_special_points(min(n, 5, cfg.cap), cfg.cap))
    convention = bottom_row_convention(min(n, 4), drawn[0] if drawn else points[0], cfg.cap) if n >= 2 else "n/a"
    return {
        "seed": cfg.seed,
        "random_params": [p.describe() for p in drawn],
        "bottom_row_convention": convention,
        "checks": checks,
        "passed": all(c.passed for c in checks) and convention in ("right", "n/a"),
    }
