"""Fully inhomogeneous partition function and boundary correlators.

Columns carry ``lambda_alpha`` (alpha = 1 is the rightmost column), rows carry
``nu_k`` (k = 1 is the top row). Indices in the public functions are
1-based to match that labelling; the helpers below take 0-based lists.
"""

from __future__ import annotations

from mpmath import mp, mpf

from .errors import UnsupportedSize
from .linalg import det, two_column_minors
from .params import InhomParams


class _Model:
    """Weights and auxiliary functions evaluated on one parameter set."""

    def __init__(self, p: InhomParams):
        p.validate()
        self.p = p
        self.n = p.n
        self.lam = p.lams
        self.nu = p.nu_values
        self.eta = p.eta_value
        self.c = mp.sin(2 * self.eta)

    def a(self, lam, nu):
        return mp.sin(lam - nu + self.eta)

    def b(self, lam, nu):
        return mp.sin(lam - nu - self.eta)

    @staticmethod
    def d(x, y):
        return mp.sin(x - y)

    def e(self, x, y):
        return mp.sin(x - y + 2 * self.eta)

    def t(self, lam, nu):
        return self.c / (self.a(lam, nu) * self.b(lam, nu))

    def f(self, x, y):
        # f(x, y) = sin(y - x + 2 eta) / sin(y - x)
        return self.e(y, x) / self.d(y, x)

    def g_over_f(self, x, y):
        # g(x, y) / f(x, y) = sin(2 eta) / sin(y - x + 2 eta); finite at x = y
        return self.c / self.e(y, x)

    def matrix_t(self) -> list[list[mpf]]:
        return [[self.t(la, nu) for nu in self.nu] for la in self.lam]


def _prod(xs) -> mpf:
    out = mpf(1)
    for x in xs:
        out *= x
    return out


def Z_inhom(p: InhomParams) -> mpf:
    """Partition function: prod(a b) / (prod d(lam_b, lam_a) prod d(nu_j, nu_k)) * det T."""
    m = _Model(p)
    n = m.n
    ab = _prod(m.a(la, nu) * m.b(la, nu) for la in m.lam for nu in m.nu)
    vand_lam = _prod(m.d(m.lam[be], m.lam[al]) for al in range(n) for be in range(al + 1, n))
    vand_nu = _prod(m.d(m.nu[j], m.nu[k]) for j in range(n) for k in range(j + 1, n))
    return ab / (vand_lam * vand_nu) * det(m.matrix_t())


def _check_r(n: int, *rs: int) -> None:
    for r in rs:
        if not 1 <= r <= n:
            raise ValueError(f"position {r} outside 1..{n}")


def _replace_first_column(t: list[list[mpf]], col: list[mpf]) -> list[list[mpf]]:
    return [[col[i]] + list(row[1:]) for i, row in enumerate(t)]


def v_r(m: _Model, r: int, lam) -> mpf:
    n = m.n
    num = _prod(m.d(m.lam[al], lam) for al in range(r, n)) * _prod(m.e(m.lam[al], lam) for al in range(r - 1))
    return num / _prod(m.b(lam, m.nu[k]) for k in range(1, n))


def s_r(m: _Model, r: int, lam) -> mpf:
    n = m.n
    num = _prod(m.d(m.lam[al], lam) for al in range(r, n)) * _prod(m.e(m.lam[al], lam) for al in range(r))
    return num / _prod(m.b(lam, m.nu[k]) for k in range(n))


def H_inhom_det(r: int, p: InhomParams) -> mpf:
    """One-point function from the determinant with first column v_r."""
    m = _Model(p)
    n = m.n
    _check_r(n, r)
    nu1 = m.nu[0]
    pref = m.c * _prod(m.d(nu1, m.nu[k]) for k in range(1, n))
    pref /= _prod(m.a(m.lam[al], nu1) for al in range(r)) * _prod(m.b(m.lam[al], nu1) for al in range(r - 1, n))
    t = m.matrix_t()
    v = _replace_first_column(t, [v_r(m, r, la) for la in m.lam])
    return pref * det(v) / det(t)


def G_inhom_det(r: int, p: InhomParams) -> mpf:
    """Boundary polarization from the determinant with first column s_r."""
    m = _Model(p)
    n = m.n
    _check_r(n, r)
    nu1 = m.nu[0]
    pref = _prod(m.d(nu1, m.nu[k]) for k in range(1, n))
    pref /= _prod(m.a(m.lam[al], nu1) for al in range(r)) * _prod(m.b(m.lam[al], nu1) for al in range(r, n))
    t = m.matrix_t()
    s = _replace_first_column(t, [s_r(m, r, la) for la in m.lam])
    return pref * det(s) / det(t)


def _reduced(p: InhomParams, drop_lambdas, drop_nus) -> InhomParams:
    lams = tuple(x for i, x in enumerate(p.lams) if i not in drop_lambdas)
    nus = tuple(x for i, x in enumerate(p.nu_values) if i not in drop_nus)
    return InhomParams(lams, nus, p.eta_value)


def H_inhom_sum(r: int, p: InhomParams) -> mpf:
    """One-point function as a sum over reduced (n-1) x (n-1) partition functions."""
    m = _Model(p)
    n = m.n
    _check_r(n, r)
    if n == 1:
        return mpf(1)
    nu1 = m.nu[0]
    lr = m.lam[r - 1]
    pref = m.c * _prod(m.a(m.lam[al], nu1) for al in range(r, n)) * _prod(m.b(m.lam[al], nu1) for al in range(r - 1))
    total = mpf(0)
    for be in range(r):
        lb = m.lam[be]
        term = _prod(m.a(lb, m.nu[k]) for k in range(1, n))
        term *= m.g_over_f(lb, lr)
        term *= _prod(m.f(lb, m.lam[ga]) for ga in range(r) if ga != be)
        term *= Z_inhom(_reduced(p, {be}, {0}))
        total += term
    return pref * total / Z_inhom(p)


def G_inhom_sum(r: int, p: InhomParams) -> mpf:
    """Boundary polarization as a sum over reduced partition functions."""
    m = _Model(p)
    n = m.n
    _check_r(n, r)
    if n == 1:
        return mpf(1)
    nu1 = m.nu[0]
    pref = _prod(m.a(m.lam[al], nu1) for al in range(r, n)) * _prod(m.b(m.lam[al], nu1) for al in range(r))
    total = mpf(0)
    for be in range(r):
        lb = m.lam[be]
        term = m.c / m.b(lb, nu1)
        term *= _prod(m.a(lb, m.nu[k]) for k in range(1, n))
        term *= _prod(m.f(lb, m.lam[ga]) for ga in range(r) if ga != be)
        term *= Z_inhom(_reduced(p, {be}, {0}))
        total += term
    return pref * total / Z_inhom(p)


def w_r(m: _Model, r: int, lam) -> mpf:
    n = m.n
    num = _prod(m.d(m.lam[al], lam) for al in range(r, n)) * _prod(m.e(m.lam[al], lam) for al in range(r - 1))
    return num / _prod(m.b(lam, m.nu[k]) for k in range(1, n - 1))


def w_tilde_r(m: _Model, r: int, lam) -> mpf:
    n = m.n
    num = _prod(m.d(lam, m.lam[al]) for al in range(r, n)) * _prod(m.e(lam, m.lam[al]) for al in range(r - 1))
    return num / _prod(m.a(lam, m.nu[k]) for k in range(1, n - 1))


def _sign(alpha: int, beta: int) -> int:
    return (alpha > beta) - (alpha < beta)


class TwoPoint:
    """Two-point function evaluator sharing det T and its minors across (r1, r2)."""

    def __init__(self, p: InhomParams):
        self.m = m = _Model(p)
        n = m.n
        if n < 2:
            raise UnsupportedSize("the two-point double sum needs n >= 2")
        t = m.matrix_t()
        self.det_t = det(t)
        # minors of T with rows alpha, beta and columns 1, n removed
        self.minors = two_column_minors([row[1 : n - 1] for row in t], n=n)

    def value(self, r1: int, r2: int, upper: tuple[int, int] | None = None) -> mpf:
        """H(r1, r2). ``upper`` overrides the summation limits (default (r1, r2))."""
        m = self.m
        n = m.n
        _check_r(n, r1, r2)
        top1, top2 = upper or (r1, r2)
        nu1, nun = m.nu[0], m.nu[n - 1]
        num = m.c**2 * m.d(nu1, nun) * _prod(m.d(nu1, m.nu[k]) * m.d(m.nu[k], nun) for k in range(1, n - 1))
        den = (
            _prod(m.a(m.lam[al], nu1) for al in range(r1))
            * _prod(m.b(m.lam[al], nu1) for al in range(r1 - 1, n))
            * _prod(m.b(m.lam[al], nun) for al in range(r2))
            * _prod(m.a(m.lam[al], nun) for al in range(r2 - 1, n))
            * self.det_t
        )
        total = mpf(0)
        for alpha in range(1, top1 + 1):
            wa = w_r(m, r1, m.lam[alpha - 1])
            if wa == 0:
                continue
            for beta in range(1, top2 + 1):
                if beta == alpha:
                    continue
                wb = w_tilde_r(m, r2, m.lam[beta - 1])
                if wb == 0:
                    continue
                key = (min(alpha, beta), max(alpha, beta))
                sgn = _sign(alpha, beta) * (-1) ** (n + alpha + beta)
                term = wa * wb / m.e(m.lam[beta - 1], m.lam[alpha - 1]) * self.minors[key]
                total += term if sgn > 0 else -term
        return num / den * total

    def table(self) -> list[list[mpf]]:
        n = self.m.n
        return [[self.value(r1, r2) for r2 in range(1, n + 1)] for r1 in range(1, n + 1)]


def H2_inhom(r1: int, r2: int, p: InhomParams) -> mpf:
    return TwoPoint(p).value(r1, r2)


def H2_inhom_table(p: InhomParams) -> list[list[mpf]]:
    if p.n == 1:
        return [[mpf(1)]]
    return TwoPoint(p).table()


def H_inhom_table(p: InhomParams, route: str = "det") -> list[mpf]:
    f = {"det": H_inhom_det, "sum": H_inhom_sum}[route]
    return [f(r, p) for r in range(1, p.n + 1)]


def G_inhom_table(p: InhomParams, route: str = "det") -> list[mpf]:
    f = {"det": G_inhom_det, "sum": G_inhom_sum}[route]
    return [f(r, p) for r in range(1, p.n + 1)]
