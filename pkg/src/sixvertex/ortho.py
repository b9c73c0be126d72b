"""Orthogonal polynomials for the moment sequence of phi, and the routes they open.

The moments are ``c_n = d^n phi / d lam^n``; ``Phi`` is their Hankel matrix.
Polynomials are monic and built by the three-term recurrence evaluated
through the moment functional ``L[x^k] = c_k``, so no integration is
involved. Polynomials are ascending coefficient lists.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from mpmath import mp, mpf

from .errors import SingularHankel
from .homogeneous import H_hom_table, H2_hom_table, _nonsingular_weights, onepoint_jet, phi_jet
from .jets import UniJet
from .linalg import det, laplace_two_columns, one_column_minors, two_column_minors
from .params import WeightParams
from .polys import DensePoly, poly_divmod, u_minus_v


@dataclass(frozen=True)
class MomentSequence:
    c: tuple
    params: WeightParams

    def __len__(self) -> int:
        return len(self.c)

    def hankel(self, n: int) -> list[list[mpf]]:
        """(n+1) x (n+1) Hankel matrix (c_{i+j})."""
        if 2 * n >= len(self.c):
            raise ValueError(f"need moments up to c_{2 * n}")
        return [[self.c[i + j] for j in range(n + 1)] for i in range(n + 1)]

    def functional(self, poly: Sequence):
        """L[p] = sum_k p_k c_k."""
        if len(poly) > len(self.c):
            raise ValueError("polynomial degree exceeds available moments")
        return sum((pk * self.c[k] for k, pk in enumerate(poly)), mpf(0))


@lru_cache(maxsize=128)
def _moments_cached(n_max: int, p: WeightParams, prec: int) -> tuple:
    jet = phi_jet(p, n_max)
    return tuple(jet.derivative(k) for k in range(n_max + 1))


def moments(n_max: int, p: WeightParams) -> MomentSequence:
    """c_0 .. c_{n_max}."""
    return MomentSequence(_moments_cached(n_max, p, mp.prec), p)


def _pmul(a: Sequence, b: Sequence) -> list:
    out = [mpf(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _padd(a: Sequence, b: Sequence, scale=1) -> list:
    n = max(len(a), len(b))
    a = list(a) + [mpf(0)] * (n - len(a))
    b = list(b) + [mpf(0)] * (n - len(b))
    return [x + scale * y for x, y in zip(a, b)]


@dataclass(frozen=True)
class OrthoBasis:
    """Monic P_0..P_m with norms h_n = L[P_n^2] and recurrence coefficients."""

    polys: tuple
    norms: tuple
    alphas: tuple
    betas: tuple

    @property
    def degree(self) -> int:
        return len(self.polys) - 1

    def leading(self, n: int):
        return self.polys[n][-1]


def build_basis(m: int, mom: MomentSequence) -> OrthoBasis:
    """Monic orthogonal polynomials up to degree ``m``.

    P_{n+1} = (x - alpha_n) P_n - beta_n P_{n-1}, alpha_n = L[x P_n^2]/h_n,
    beta_n = h_n/h_{n-1}. Needs moments up to c_{2m}.
    """
    if len(mom) < 2 * m + 1:
        raise ValueError(f"degree {m} needs moments up to c_{2 * m}")
    floor = mpf(2) ** (-(mp.prec - 16))
    polys = [[mpf(1)]]
    norms = [mom.c[0]]
    alphas, betas = [], []
    if abs(norms[0]) <= floor:
        raise SingularHankel("c_0 vanishes")
    for n in range(m):
        pn = polys[n]
        xpn = [mpf(0)] + pn
        alpha = mom.functional(_pmul(xpn, pn)) / norms[n]
        nxt = _padd(xpn, pn, -alpha)
        if n > 0:
            beta = norms[n] / norms[n - 1]
            nxt = _padd(nxt, polys[n - 1], -beta)
        else:
            beta = mpf(0)
        alphas.append(alpha)
        betas.append(beta)
        h = mom.functional(_pmul(nxt, nxt))
        scale = mom.functional(_pmul(xpn, xpn))
        if abs(h) <= floor * abs(scale):
            raise SingularHankel(f"Hankel determinant of order {n + 1} vanishes numerically")
        polys.append(nxt)
        norms.append(h)
    return OrthoBasis(tuple(tuple(q) for q in polys), tuple(norms), tuple(alphas), tuple(betas))


@lru_cache(maxsize=128)
def _basis_cached(m: int, p: WeightParams, prec: int) -> OrthoBasis:
    return build_basis(m, moments(2 * m + 1, p))


def basis_for(m: int, p: WeightParams) -> OrthoBasis:
    return _basis_cached(m, p, mp.prec)


def orthogonality_defect(basis: OrthoBasis, mom: MomentSequence) -> mpf:
    """max over i >= j of |L[P_i P_j] - h_i delta_ij| / max(|h_i|, |h_j|)."""
    worst = mpf(0)
    for i, pi in enumerate(basis.polys):
        for j, pj in enumerate(basis.polys[: i + 1]):
            val = mom.functional(_pmul(pi, pj))
            if i == j:
                val -= basis.norms[i]
            worst = max(worst, abs(val) / max(abs(basis.norms[i]), abs(basis.norms[j])))
    return worst


def hankel_product_defect(basis: OrthoBasis, mom: MomentSequence) -> mpf:
    """max_n |Delta_n / prod_{k<=n} h_k - 1|."""
    worst = mpf(0)
    prod = mpf(1)
    for n, h in enumerate(basis.norms):
        prod *= h
        worst = max(worst, abs(det(mom.hankel(n)) / prod - 1))
    return worst


def parity_check(m: int, p: WeightParams) -> dict:
    """Deviation from P_n(x; lam) = (-1)^n P_n(-x; pi - lam) and h_n invariance."""
    q = p.reflected()
    b1, b2 = basis_for(m, p), basis_for(m, q)
    coeff_dev = mpf(0)
    norm_dev = mpf(0)
    lead_dev = mpf(0)
    for n in range(m + 1):
        for i, (x, y) in enumerate(zip(b1.polys[n], b2.polys[n])):
            coeff_dev = max(coeff_dev, abs(x - (-1) ** (n + i) * y))
        norm_dev = max(norm_dev, abs(b1.norms[n] / b2.norms[n] - 1))
        lead_dev = max(lead_dev, abs(b1.leading(n) - b2.leading(n)))
    return {"m": m, "coeff_dev": coeff_dev, "norm_rel_dev": norm_dev, "leading_dev": lead_dev}


# --- one-point routes ---------------------------------------------------


def crossed_onepoint_jet(n: int, r: int, p: WeightParams) -> UniJet:
    """(sin e)^(r-1) [sin(e+2eta)]^(n-r) / [sin(e+lam+eta)]^(n-1), order n-1."""
    lam, eta = p.lam_value, p.eta_value
    o = n - 1
    num = UniJet.sin_affine(mpf(0), o) ** (r - 1) * UniJet.sin_affine(2 * eta, o) ** (n - r)
    return num / UniJet.sin_affine(lam + eta, o) ** (n - 1)


def H_via_ortho(n: int, r: int, p: WeightParams, crossed: bool = False) -> mpf:
    """One-point function as P_{n-1}(d/de) acting on the boundary function.

    ``crossed`` selects the crossing-partner boundary function, equivalent
    to taking the limit e -> 2 eta instead of e -> 0.
    """
    if not 1 <= r <= n:
        raise ValueError(f"position {r} outside 1..{n}")
    a, b, c = _nonsingular_weights(p)
    basis = basis_for(n - 1, p)
    jet = crossed_onepoint_jet(n, r, p) if crossed else onepoint_jet(n, r, p)
    applied = jet.apply_polynomial_derivative(basis.polys[n - 1])
    pref = math.factorial(n - 1) * c / (a**r * b ** (n - r + 1))
    return pref / basis.norms[n - 1] * applied


def H_via_ortho_table(n: int, p: WeightParams, crossed: bool = False) -> list[mpf]:
    return [H_via_ortho(n, r, p, crossed) for r in range(1, n + 1)]


# --- omega / rho functions ------------------------------------------------


@dataclass(frozen=True)
class OmegaRhoJets:
    omega: UniJet
    rho: UniJet
    omega_t: UniJet
    rho_t: UniJet


def omega_rho_jets(p: WeightParams, order: int) -> OmegaRhoJets:
    a, b, c = _nonsingular_weights(p)
    lam, eta = p.lam_value, p.eta_value
    s = UniJet.sin_affine(mpf(0), order)
    sm = UniJet.sin_affine(-2 * eta, order)
    sp = UniJet.sin_affine(2 * eta, order)
    omega = s / sm * (a / b)
    rho = sm / UniJet.sin_affine(lam - eta, order) * (b / c)
    omega_t = s / sp * (b / a)
    rho_t = sp / UniJet.sin_affine(lam + eta, order) * (a / c)
    return OmegaRhoJets(omega, rho, omega_t, rho_t)


def omega_rho_defect(p: WeightParams, order: int) -> mpf:
    """Coefficientwise defect of rho (omega - 1) = 1 and rho~ (1 - omega~) = 1."""
    j = omega_rho_jets(p, order)
    one = UniJet.constant(mpf(1), order)
    d1 = j.rho * (j.omega - 1) - one
    d2 = j.rho_t * (1 - j.omega_t) - one
    return max(abs(x) for x in d1.coeffs + d2.coeffs)


def k_poly(m: int, p: WeightParams) -> list[mpf]:
    """K_m(x) = m! phi^(m+1) / h_m * P_m(x) (monic normalization)."""
    basis = basis_for(m, p)
    phi = moments(0, p).c[0]
    scale = math.factorial(m) * phi ** (m + 1) / basis.norms[m]
    return [scale * x for x in basis.polys[m]]


def H_via_omega(n: int, r: int, p: WeightParams, crossed: bool = False) -> mpf:
    """K_{n-1}(d/de) omega^(n-r) rho^(n-1) (or the tilde form omega~^(r-1) rho~^(n-1))."""
    j = omega_rho_jets(p, n - 1)
    if crossed:
        f = j.omega_t ** (r - 1) * j.rho_t ** (n - 1)
    else:
        f = j.omega ** (n - r) * j.rho ** (n - 1)
    return f.apply_polynomial_derivative(k_poly(n - 1, p))


def H2_via_omega(n: int, r1: int, r2: int, p: WeightParams) -> mpf:
    """Two-point function from the K-operator form with a truncated geometric series.

    1/(omega(e1) omega~(e2) - 1) = -sum_m (omega omega~)^m; terms with m >= n
    vanish at the orders probed, since omega and omega~ start at order e.
    """
    if n < 2:
        return mpf(1)
    j = omega_rho_jets(p, n - 1)
    k1, k2 = k_poly(n - 1, p), k_poly(n - 2, p)
    base1 = j.omega ** (n - r1) * j.rho ** (n - 2)
    base2 = j.omega_t ** (n - r2) * j.rho_t ** (n - 2)
    total = mpf(0)
    for m in range(n):
        f1 = base1 * j.omega**m
        f2 = base2 * j.omega_t**m
        total -= f1.apply_polynomial_derivative(k1) * f2.apply_polynomial_derivative(k2)
        total += f1.apply_polynomial_derivative(k2) * f2.apply_polynomial_derivative(k1)
    return total


# --- two-point from one-point -------------------------------------------


def _h(table: Sequence, r: int):
    """1-based lookup with zero outside 1..len(table)."""
    if 1 <= r <= len(table):
        return table[r - 1]
    return table[0] * 0 if table else 0


def two_point_from_one_point(h_n: Sequence, h_nm1: Sequence, r1: int, r2: int, j_max: int | None = None):
    """The four-term j-sum expressing H_N^(r1,r2) through H_N and H_{N-1}.

    Works for any number type (mpf, Fraction). ``j_max`` defaults to N.
    """
    n = len(h_n)
    if len(h_nm1) != n - 1:
        raise ValueError("one-point tables must have sizes N and N-1")
    j_max = n if j_max is None else j_max
    total = h_n[0] * 0
    for j in range(1, j_max + 1):
        total += _h(h_n, r1 - j + 1) * _h(h_nm1, n - r2 + j)
        total -= _h(h_n, r1 - j) * _h(h_nm1, n - r2 + j)
        total -= _h(h_nm1, r1 - j) * _h(h_n, n - r2 + j + 1)
        total += _h(h_nm1, r1 - j) * _h(h_n, n - r2 + j)
    return total


def two_point_table_from_one_point(h_n: Sequence, h_nm1: Sequence, j_max: int | None = None) -> list[list]:
    n = len(h_n)
    return [
        [two_point_from_one_point(h_n, h_nm1, r1, r2, j_max) for r2 in range(1, n + 1)]
        for r1 in range(1, n + 1)
    ]


def H2_identity(n: int, r1: int, r2: int, p: WeightParams, j_max: int | None = None) -> mpf:
    """Two-point function from the one-point tables at sizes n and n-1."""
    if n < 2:
        raise ValueError("the identity relates sizes n and n-1, so n >= 2")
    return two_point_from_one_point(H_hom_table(n, p), H_hom_table(n - 1, p), r1, r2, j_max)


def H2_identity_table(n: int, p: WeightParams, j_max: int | None = None) -> list[list[mpf]]:
    if n == 1:
        return [[mpf(1)]]
    return two_point_table_from_one_point(H_hom_table(n, p), H_hom_table(n - 1, p), j_max)


# --- generating functions -------------------------------------------------


def genfun_from_table(h: Sequence) -> DensePoly:
    """H_N(u) = sum_r H^(N-r+1) u^(r-1)."""
    n = len(h)
    return DensePoly({(k,): h[n - 1 - k] for k in range(n)}, 1, ("u",))


def genfun2_from_table(t: Sequence[Sequence]) -> DensePoly:
    """H_N(u, v) = sum_{r,s} H^(N-r+1, s) u^(r-1) v^(s-1)."""
    n = len(t)
    return DensePoly({(r, s): t[n - 1 - r][s] for r in range(n) for s in range(n)}, 2, ("u", "v"))


def genfun_onepoint(n: int, p: WeightParams) -> DensePoly:
    return genfun_from_table(H_hom_table(n, p))


def genfun_twopoint(n: int, p: WeightParams) -> DensePoly:
    return genfun2_from_table(H2_hom_table(n, p))


def _in_u(poly: DensePoly) -> DensePoly:
    return DensePoly({(e[0], 0): c for e, c in poly.terms.items()}, 2, ("u", "v"))


def _in_v(poly: DensePoly) -> DensePoly:
    return DensePoly({(0, e[0]): c for e, c in poly.terms.items()}, 2, ("u", "v"))


def genfun_identity_numerator(h_n: DensePoly, h_nm1: DensePoly) -> DensePoly:
    """(u-1) H_N(u) v H_{N-1}(v) - u H_{N-1}(u) (v-1) H_N(v)."""
    one = next(iter(h_n.terms.values())) * 0 + 1
    u = DensePoly({(1, 0): one}, 2, ("u", "v"))
    v = DensePoly({(0, 1): one}, 2, ("u", "v"))
    return (u - one) * _in_u(h_n) * v * _in_v(h_nm1) - u * _in_u(h_nm1) * (v - one) * _in_v(h_n)


def genfun_identity_check(h_n: Sequence, h_nm1: Sequence, two_point: Sequence[Sequence]) -> dict:
    """Divide the numerator by (u - v) and compare with the two-point generating function."""
    num = genfun_identity_numerator(genfun_from_table(h_n), genfun_from_table(h_nm1))
    one = h_n[0] * 0 + 1
    quot, rem = poly_divmod(num, u_minus_v(one))
    target = genfun2_from_table(two_point)
    diff = quot - target
    return {
        "remainder_max": rem.max_abs_coeff(),
        "deviation": diff.max_abs_coeff(),
        "quotient": quot,
    }


def verify_genfun_identity(n: int, p: WeightParams) -> dict:
    """Generating-function identity at (n, p), using the determinant route for the target."""
    if n < 2:
        raise ValueError("needs n >= 2")
    rep = genfun_identity_check(H_hom_table(n, p), H_hom_table(n - 1, p), H2_hom_table(n, p))
    rep["n"] = n
    return rep


# --- bordered Hankel determinants ---------------------------------------


def delta_1(n: int, mom: MomentSequence) -> DensePoly:
    """Delta_n^(1)(x): Hankel columns c_0..c_{n-1} bordered by (1, x, ..., x^n)."""
    head = [[mom.c[i + j] for j in range(n)] for i in range(n + 1)]
    minors = one_column_minors(head) if n else [mpf(1)]
    coeffs = {(i,): m if (i + n) % 2 == 0 else -m for i, m in enumerate(minors)}
    return DensePoly(coeffs, 1, ("x",))


def delta_2(n: int, mom: MomentSequence) -> DensePoly:
    """Delta_n^(2)(x1, x2): Hankel columns c_0..c_{n-2} bordered by powers of x1 and x2."""
    if n < 1:
        raise ValueError("needs n >= 1")
    head = [[mom.c[i + j] for j in range(n - 1)] for i in range(n + 1)]
    minors = two_column_minors(head, n=n + 1)
    terms: dict = {}
    for (alpha, beta), m in minors.items():
        i, j = alpha - 1, beta - 1
        # 2x2 minor of the bordered columns on rows i < j: x1^i x2^j - x1^j x2^i
        sgn = 1 if (alpha + beta) % 2 else -1
        terms[(i, j)] = terms.get((i, j), 0) + sgn * m
        terms[(j, i)] = terms.get((j, i), 0) - sgn * m
    return DensePoly(terms, 2, ("x1", "x2"))


def delta_k_polys(n: int, k: int, mom: MomentSequence) -> DensePoly:
    if k == 1:
        return delta_1(n, mom)
    if k == 2:
        return delta_2(n, mom)
    raise ValueError("only k = 1, 2 are supported")


def d1_defect(n: int, mom: MomentSequence, basis: OrthoBasis) -> mpf:
    """Relative coefficient defect of Delta_n^(1)/Delta_n = P_n / h_n."""
    lhs = delta_1(n, mom)
    dn = det(mom.hankel(n))
    rhs = DensePoly.from_coeffs([x * dn / basis.norms[n] for x in basis.polys[n]])
    return (lhs - rhs).max_abs_coeff() / max(lhs.max_abs_coeff(), 1)


def d2_defect(n: int, mom: MomentSequence, basis: OrthoBasis) -> mpf:
    """Relative defect of Delta_n^(2)/Delta_n = [P_{n-1}(x1)P_n(x2) - P_n(x1)P_{n-1}(x2)]/(h_n h_{n-1})."""
    lhs = delta_2(n, mom)
    dn = det(mom.hankel(n))
    scale = dn / (basis.norms[n] * basis.norms[n - 1])
    pa, pb = basis.polys[n - 1], basis.polys[n]
    terms: dict = {}
    for i, x in enumerate(pa):
        for j, y in enumerate(pb):
            terms[(i, j)] = terms.get((i, j), 0) + scale * x * y
            terms[(j, i)] = terms.get((j, i), 0) - scale * x * y
    rhs = DensePoly(terms, 2, ("x1", "x2"))
    return (lhs - rhs).max_abs_coeff() / max(lhs.max_abs_coeff(), 1)


def clear_caches() -> None:
    _moments_cached.cache_clear()
    _basis_cached.cache_clear()
