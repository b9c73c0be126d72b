"""Sparse-backed polynomials in one or two variables with a dense view.

Coefficients are mpf for numerical work or int/Fraction for exact
combinatorics; exact coefficients are never rounded.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import InexactDivision


@dataclass(frozen=True)
class DensePoly:
    """Polynomial ``sum c[e] * x1^e1 * ...`` over ``nvars`` variables.

    ``terms`` maps exponent tuples to nonzero coefficients. Zero
    coefficients are dropped on construction, which is the normalization
    of trailing zeros in the dense view.
    """

    terms: Mapping[tuple[int, ...], object]
    nvars: int = 1
    names: tuple[str, ...] = field(default=("x",), compare=False)

    def __post_init__(self):
        clean = {}
        for exp, c in self.terms.items():
            exp = tuple(exp)
            if len(exp) != self.nvars or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent {exp} for {self.nvars} variables")
            if c != 0:
                clean[exp] = c
        object.__setattr__(self, "terms", clean)
        if len(self.names) != self.nvars:
            default = ("x",) if self.nvars == 1 else ("u", "v")
            object.__setattr__(self, "names", default)

    @classmethod
    def from_coeffs(cls, coeffs: Sequence, name: str = "x") -> "DensePoly":
        """Univariate polynomial from ascending coefficients."""
        return cls({(k,): c for k, c in enumerate(coeffs)}, 1, (name,))

    @classmethod
    def from_grid(cls, grid: Sequence[Sequence], names: tuple[str, str] = ("u", "v")) -> "DensePoly":
        """Bivariate polynomial, ``grid[i][j]`` multiplying u^i v^j."""
        return cls({(i, j): c for i, row in enumerate(grid) for j, c in enumerate(row)}, 2, names)

    @classmethod
    def monomial(cls, exp: tuple[int, ...], coeff=1, names=None) -> "DensePoly":
        names = names or (("x",) if len(exp) == 1 else ("u", "v"))
        return cls({exp: coeff}, len(exp), names)

    def degree(self, var: int = 0) -> int:
        """Degree in one variable; -1 for the zero polynomial."""
        return max((e[var] for e in self.terms), default=-1)

    def coeff(self, *exp: int):
        return self.terms.get(tuple(exp), 0)

    def dense(self) -> list:
        """Ascending coefficient list (1 variable) or nested rows (2 variables)."""
        if self.nvars == 1:
            return [self.terms.get((k,), 0) for k in range(self.degree(0) + 1)]
        du, dv = self.degree(0), self.degree(1)
        return [[self.terms.get((i, j), 0) for j in range(dv + 1)] for i in range(du + 1)]

    def is_zero(self) -> bool:
        return not self.terms

    def max_abs_coeff(self):
        return max((abs(c) for c in self.terms.values()), default=0)

    def _check(self, other: "DensePoly") -> None:
        if self.nvars != other.nvars:
            raise ValueError("polynomials live in different numbers of variables")

    def _lift(self, other) -> "DensePoly":
        if isinstance(other, DensePoly):
            self._check(other)
            return other
        return DensePoly({(0,) * self.nvars: other}, self.nvars, self.names)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return DensePoly(out, self.nvars, self.names)

    __radd__ = __add__

    def __neg__(self):
        return DensePoly({e: -c for e, c in self.terms.items()}, self.nvars, self.names)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, DensePoly):
            return DensePoly({e: c * other for e, c in self.terms.items()}, self.nvars, self.names)
        self._check(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out[e] + c1 * c2 if e in out else c1 * c2
        return DensePoly(out, self.nvars, self.names)

    __rmul__ = __mul__

    def __call__(self, *point):
        if len(point) != self.nvars:
            raise ValueError(f"expected {self.nvars} arguments")
        total = 0
        for e, c in self.terms.items():
            term = c
            for x, k in zip(point, e):
                term = term * x**k
            total = total + term
        return total

    def map_coeffs(self, f) -> "DensePoly":
        return DensePoly({e: f(c) for e, c in self.terms.items()}, self.nvars, self.names)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(self.names, e) if k
            )
            c = self.terms[e]
            parts.append(f"({c})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


def leading_exponent(p: DensePoly) -> tuple[int, ...]:
    """Lex-leading exponent (first variable dominates)."""
    return max(p.terms)


def poly_divmod(p: DensePoly, q: DensePoly) -> tuple[DensePoly, DensePoly]:
    """Multivariate division by a single polynomial in lex order.

    Returns ``(quotient, remainder)`` with ``p = quotient * q + remainder``
    and no remainder term divisible by the leading term of ``q``. Each step
    removes the current leading term outright, so round-off never re-enters
    as a spurious leading term.
    """
    p._check(q)
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    lq = leading_exponent(q)
    lc = q.terms[lq]
    rest = {e: c for e, c in q.terms.items() if e != lq}
    work = dict(p.terms)
    quot: dict = {}
    rem: dict = {}
    while work:
        le = max(work)
        c = work.pop(le)
        if c == 0:
            continue
        if all(a >= b for a, b in zip(le, lq)):
            shift = tuple(a - b for a, b in zip(le, lq))
            t = c / lc
            quot[shift] = quot[shift] + t if shift in quot else t
            for e, qc in rest.items():
                target = tuple(a + b for a, b in zip(shift, e))
                work[target] = work.get(target, 0) - t * qc
        else:
            rem[le] = c
    return DensePoly(quot, p.nvars, p.names), DensePoly(rem, p.nvars, p.names)


def poly_divide_exact(p: DensePoly, q: DensePoly, tol=0) -> DensePoly:
    """Quotient ``p / q``; raises :class:`InexactDivision` if the remainder exceeds ``tol``."""
    quot, rem = poly_divmod(p, q)
    worst = rem.max_abs_coeff()
    if worst > tol:
        raise InexactDivision(worst, tol)
    return quot


def u_minus_v(one=1) -> DensePoly:
    return DensePoly({(1, 0): one, (0, 1): -one}, 2, ("u", "v"))


def from_terms(items: Iterable[tuple[tuple[int, ...], object]], nvars: int) -> DensePoly:
    out: dict = {}
    for e, c in items:
        out[e] = out[e] + c if e in out else c
    return DensePoly(out, nvars)
