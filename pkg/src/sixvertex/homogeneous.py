"""Determinant formulas for the homogeneous model.

Everything is built from the Hankel matrix ``Phi[i][k] = d^(i+k) phi / d lam^(i+k)``
with ``phi = sin(2 eta) / (sin(lam - eta) sin(lam + eta))``. One-point
correlators replace its last column by derivatives of a boundary function
of ``e``; the two-point correlator replaces the last two columns by
derivative operators acting on a function of ``(e1, e2)``.
"""

from __future__ import annotations

import math
from functools import lru_cache

from mpmath import mp, mpf

from .errors import SingularParameters, UnsupportedSize
from .jets import BiJet, UniJet
from .linalg import det, laplace_two_columns, one_column_minors, two_column_minors
from .params import WeightParams, weights_abc


def _check_n(n: int) -> None:
    if n < 1:
        raise ValueError("n must be at least 1")


def _check_r(n: int, *rs: int) -> None:
    for r in rs:
        if not 1 <= r <= n:
            raise ValueError(f"position {r} outside 1..{n}")


def _nonsingular_weights(p: WeightParams) -> tuple[mpf, mpf, mpf]:
    a, b, c = weights_abc(p)
    floor = mpf(2) ** (-(mp.prec // 2))
    for name, w in (("a", a), ("b", b), ("c", c)):
        if abs(w) < floor:
            raise SingularParameters(f"weight {name} = sin(...) vanishes at {p.describe()}")
    return a, b, c


def phi_jet(p: WeightParams, order: int) -> UniJet:
    """Taylor jet of phi(lam + d, eta) in d at d = 0."""
    lam, eta = p.lam_value, p.eta_value
    _nonsingular_weights(p)
    den = UniJet.sin_affine(lam - eta, order) * UniJet.sin_affine(lam + eta, order)
    return UniJet.constant(mp.sin(2 * eta), order) / den


@lru_cache(maxsize=256)
def _phi_cached(n: int, p: WeightParams, prec: int) -> tuple:
    jet = phi_jet(p, 2 * n - 2)
    derivs = [jet.derivative(k) for k in range(2 * n - 1)]
    return tuple(tuple(derivs[i + k] for k in range(n)) for i in range(n))


def phi_matrix(n: int, p: WeightParams) -> list[list[mpf]]:
    """The n x n Hankel matrix of lambda-derivatives of phi."""
    _check_n(n)
    return [list(row) for row in _phi_cached(n, p, mp.prec)]


@lru_cache(maxsize=256)
def _det_phi(n: int, p: WeightParams, prec: int) -> mpf:
    return det(_phi_cached(n, p, prec))


@lru_cache(maxsize=256)
def _last_column_cofactors(n: int, p: WeightParams, prec: int) -> tuple:
    """Signed cofactors of the last column of Phi, so det = sum cof[i] * col[i]."""
    phi = _phi_cached(n, p, prec)
    head = [row[: n - 1] for row in phi]
    minors = one_column_minors(head) if n > 1 else [mpf(1)]
    # row i (0-based), column n-1 (0-based): sign (-1)^(i + n - 1)
    return tuple(m if (i + n - 1) % 2 == 0 else -m for i, m in enumerate(minors))


def Z_hom(n: int, p: WeightParams) -> mpf:
    """Partition function (a b)^(n^2) / prod_{k<n} (k!)^2 * det Phi."""
    _check_n(n)
    a, b, _ = _nonsingular_weights(p)
    norm = math.prod(math.factorial(k) ** 2 for k in range(1, n))
    return (a * b) ** (n * n) / norm * _det_phi(n, p, mp.prec)


def _boundary_jet(n: int, p: WeightParams, sin_power: int, shifted_power: int, den_power: int, shift_sign: int) -> UniJet:
    """Jet of (sin e)^sin_power [sin(e + s*2eta)]^shifted_power / [sin(e + lam + s*eta)]^den_power.

    ``shift_sign`` s = -1 gives the form used by the determinant formulas;
    s = +1 gives its crossing partner.
    """
    lam, eta = p.lam_value, p.eta_value
    order = n - 1
    num = UniJet.sin_affine(mpf(0), order) ** sin_power
    num = num * UniJet.sin_affine(shift_sign * 2 * eta, order) ** shifted_power
    den = UniJet.sin_affine(lam + shift_sign * eta, order) ** den_power
    return num / den


def onepoint_jet(n: int, r: int, p: WeightParams) -> UniJet:
    """(sin e)^(n-r) [sin(e-2eta)]^(r-1) / [sin(e+lam-eta)]^(n-1), order n-1."""
    return _boundary_jet(n, p, n - r, r - 1, n - 1, -1)


def polarization_jet(n: int, r: int, p: WeightParams) -> UniJet:
    """(sin e)^(n-r) [sin(e-2eta)]^r / [sin(e+lam-eta)]^n, order n-1."""
    return _boundary_jet(n, p, n - r, r, n, -1)


def H_hom(n: int, r: int, p: WeightParams) -> mpf:
    """Probability that the first-row type-5 vertex sits at position r (from the right)."""
    _check_n(n)
    _check_r(n, r)
    a, b, c = _nonsingular_weights(p)
    jet = onepoint_jet(n, r, p)
    cof = _last_column_cofactors(n, p, mp.prec)
    det_psi = sum((cof[i] * jet.derivative(i) for i in range(n)), mpf(0))
    pref = math.factorial(n - 1) * c / (a**r * b ** (n - r + 1))
    return pref * det_psi / _det_phi(n, p, mp.prec)


def G_hom(n: int, r: int, p: WeightParams) -> mpf:
    """Probability of a left arrow on the first-row edge between columns r and r+1."""
    _check_n(n)
    _check_r(n, r)
    a, b, _ = _nonsingular_weights(p)
    jet = polarization_jet(n, r, p)
    cof = _last_column_cofactors(n, p, mp.prec)
    det_theta = -sum((cof[i] * jet.derivative(i) for i in range(n)), mpf(0))
    pref = mpf(math.factorial(n - 1)) / (a**r * b ** (n - r))
    return pref * det_theta / _det_phi(n, p, mp.prec)


def H_hom_table(n: int, p: WeightParams) -> list[mpf]:
    return [H_hom(n, r, p) for r in range(1, n + 1)]


def G_hom_table(n: int, p: WeightParams) -> list[mpf]:
    return [G_hom(n, r, p) for r in range(1, n + 1)]


# --- two-point function -------------------------------------------------


def h2_numerator_factors(n: int, r1: int, r2: int, p: WeightParams) -> tuple[UniJet, UniJet]:
    """(sin e1)^(n-r1)[sin(e1-2eta)]^(r1-1) and (sin e2)^(n-r2)[sin(e2+2eta)]^(r2-1)."""
    eta = p.eta_value
    order = n - 1
    s = UniJet.sin_affine(mpf(0), order)
    f1 = s ** (n - r1) * UniJet.sin_affine(-2 * eta, order) ** (r1 - 1)
    f2 = s ** (n - r2) * UniJet.sin_affine(2 * eta, order) ** (r2 - 1)
    return f1, f2


def h2_denominator_inverse(n: int, p: WeightParams) -> BiJet:
    """1 / (sin(e2-e1+2eta) [sin(e1+lam-eta)]^(n-2) [sin(e2+lam+eta)]^(n-2))."""
    lam, eta = p.lam_value, p.eta_value
    o = n - 1
    cross = BiJet.sin_affine(2 * eta, -1, 1, o, o)
    d1 = BiJet.from_uni(UniJet.sin_affine(lam - eta, o) ** (n - 2), 1, o, o)
    d2 = BiJet.from_uni(UniJet.sin_affine(lam + eta, o) ** (n - 2), 2, o, o)
    return BiJet.constant(mpf(1), o, o) / (cross * d1 * d2)


def h2_jet(n: int, r1: int, r2: int, p: WeightParams) -> BiJet:
    """The full two-variable boundary function as a jet of orders (n-1, n-1)."""
    f1, f2 = h2_numerator_factors(n, r1, r2, p)
    return BiJet.outer(f1, f2) * h2_denominator_inverse(n, p)


@lru_cache(maxsize=256)
def _phi_two_column_minors(n: int, p: WeightParams, prec: int) -> dict:
    phi = _phi_cached(n, p, prec)
    return two_column_minors([row[: n - 2] for row in phi], n=n)


def block_determinant_weights(n: int, p: WeightParams) -> list[list[mpf]]:
    """Weights W with det(Phi_(., 1..n-2) | d_e2^(i) | d_e1^(i)) h = sum W[i][j] h[i][j].

    ``h[i][j]`` is the Taylor coefficient of e1^i e2^j. Obtained from the
    generalized Laplace expansion along the two operator columns.
    """
    minors = _phi_two_column_minors(n, p, mp.prec)
    w = [[mpf(0)] * n for _ in range(n)]
    fact = [math.factorial(k) for k in range(n)]
    for (alpha, beta), m in minors.items():
        i, j = alpha - 1, beta - 1
        term = m * (fact[i] * fact[j])
        if (alpha + beta) % 2 == 0:
            term = -term
        # pair (alpha, beta) contributes d_e2^i d_e1^j - d_e2^j d_e1^i
        w[j][i] += term
        w[i][j] -= term
    return w


def apply_block_determinant(n: int, p: WeightParams, h: BiJet) -> mpf:
    """The block determinant with operator columns applied to ``h`` at the origin.

    Straight generalized Laplace expansion; kept as the reference path.
    """
    minors = _phi_two_column_minors(n, p, mp.prec)

    total = mpf(0)
    for (alpha, beta), m in minors.items():
        i, j = alpha - 1, beta - 1
        pair = h.derivative(j, i) - h.derivative(i, j)
        term = m * pair
        total = total + term if (alpha + beta) % 2 else total - term
    return total


@lru_cache(maxsize=64)
def _contracted_kernel(n: int, p: WeightParams, prec: int) -> tuple:
    """G[p][q] = sum_{i>=p, j>=q} W[i][j] D[i-p][j-q] with D the denominator jet.

    With h = f1(e1) f2(e2) D(e1, e2) the block determinant becomes
    sum_{p,q} f1[p] f2[q] G[p][q], so each (r1, r2) costs O(n^2).
    """
    w = block_determinant_weights(n, p)
    d = h2_denominator_inverse(n, p).coeffs
    g = []
    for a in range(n):
        row = []
        for b in range(n):
            acc = mpf(0)
            for i in range(a, n):
                wi, di = w[i], d[i - a]
                for j in range(b, n):
                    if wi[j] != 0:
                        acc += wi[j] * di[j - b]
            row.append(acc)
        g.append(tuple(row))
    return tuple(g)


def _h2_prefactor(n: int, r1: int, r2: int, p: WeightParams) -> mpf:
    a, b, c = _nonsingular_weights(p)
    num = math.factorial(n - 1) * math.factorial(n - 2) * c**2
    return num / (a ** (n + r1 - r2 + 1) * b ** (n + r2 - r1 + 1) * _det_phi(n, p, mp.prec))


def H2_hom_det(n: int, r1: int, r2: int, p: WeightParams) -> mpf:
    """Probability of type-5 vertices at position r1 of the first row and r2 of the last row."""
    if n == 1:
        raise UnsupportedSize("the two-point determinant formula needs n >= 2")
    _check_n(n)
    _check_r(n, r1, r2)
    f1, f2 = h2_numerator_factors(n, r1, r2, p)
    g = _contracted_kernel(n, p, mp.prec)
    val = mpf(0)
    for i in range(n):
        if f1[i] == 0:
            continue
        gi = g[i]
        for j in range(n):
            if f2[j] != 0:
                val += f1[i] * f2[j] * gi[j]
    return _h2_prefactor(n, r1, r2, p) * val


def H2_hom_det_reference(n: int, r1: int, r2: int, p: WeightParams) -> mpf:
    """Same quantity via the explicit bivariate jet and Laplace expansion."""
    if n == 1:
        raise UnsupportedSize("the two-point determinant formula needs n >= 2")
    _check_r(n, r1, r2)
    return _h2_prefactor(n, r1, r2, p) * apply_block_determinant(n, p, h2_jet(n, r1, r2, p))


def H2_hom_table(n: int, p: WeightParams) -> list[list[mpf]]:
    """Full table; n = 1 is the single forced configuration."""
    if n == 1:
        return [[mpf(1)]]
    return [[H2_hom_det(n, r1, r2, p) for r2 in range(1, n + 1)] for r1 in range(1, n + 1)]


def cumulative_2d(table: list[list]) -> list[list]:
    n = len(table)
    out = [[None] * n for _ in range(n)]
    for i in range(n):
        run = 0
        for j in range(n):
            run = run + table[i][j]
            out[i][j] = run + (out[i - 1][j] if i else 0)
    return out


def G2_from_H2(n: int, r1: int, r2: int, p: WeightParams) -> mpf:
    """Double cumulative sum of the two-point table up to (r1, r2)."""
    _check_r(n, r1, r2)
    table = H2_hom_table(n, p)
    return sum((table[i][j] for i in range(r1) for j in range(r2)), mpf(0))


def G2_hom_table(n: int, p: WeightParams) -> list[list[mpf]]:
    return cumulative_2d(H2_hom_table(n, p))


def crossing_check(n: int, p: WeightParams) -> dict:
    """Deviations from H(r; lam) = H(n-r+1; pi-lam) for one- and two-point tables."""
    q = p.reflected()
    one = max(abs(H_hom(n, r, p) - H_hom(n, n - r + 1, q)) for r in range(1, n + 1))
    report = {"n": n, "onepoint_max_dev": one, "twopoint_max_dev": None}
    if n >= 2:
        t, u = H2_hom_table(n, p), H2_hom_table(n, q)
        report["twopoint_max_dev"] = max(
            abs(t[i][j] - u[n - 1 - i][n - 1 - j]) for i in range(n) for j in range(n)
        )
    return report


def clear_caches() -> None:
    for f in (_phi_cached, _det_phi, _last_column_cofactors, _phi_two_column_minors, _contracted_kernel):
        f.cache_clear()
