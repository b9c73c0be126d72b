"""Truncated Taylor jets in one or two variables.

A jet stores Taylor *coefficients*, never raw derivatives:
``f(e) = sum_k t_k e^k + O(e^(order+1))``. The k-th derivative at the
expansion point is ``k! * t_k`` and is only formed on request through
:meth:`UniJet.derivative` / :meth:`BiJet.derivative`, which keeps factorials
out of intermediate products.

Coefficients may be any field elements supporting ``+ - * /`` (``mpf`` in
practice, ``Fraction`` in tests). Exact zeros are preserved by the
arithmetic, so structural leading zeros such as those of ``(sin e)^m``
survive products untouched and are stripped before division.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from mpmath import mp, mpf

from .errors import SingularJetDivision


def _sin_derivatives(offset, count: int) -> list:
    """sin^(k)(offset) for k < count, using the 4-cycle so zeros stay exact."""
    if offset == 0:
        s, c = mpf(0), mpf(1)
    else:
        s, c = mp.sin(offset), mp.cos(offset)
    cycle = (s, c, -s, -c)
    return [cycle[k % 4] for k in range(count)]


@dataclass(frozen=True)
class UniJet:
    """Taylor coefficients of a function of one variable, truncated at ``order``."""

    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) == 0:
            raise ValueError("a jet needs at least the constant coefficient")
        object.__setattr__(self, "coeffs", tuple(self.coeffs))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def constant(cls, value, order: int) -> "UniJet":
        zero = value * 0
        return cls((value,) + (zero,) * order)

    @classmethod
    def variable(cls, order: int, one=None) -> "UniJet":
        """The jet of the identity function e -> e."""
        one = mpf(1) if one is None else one
        zero = one * 0
        cs = [zero] * (order + 1)
        if order >= 1:
            cs[1] = one
        return cls(tuple(cs))

    @classmethod
    def sin_affine(cls, offset, order: int, scale: int = 1) -> "UniJet":
        """Jet of e -> sin(offset + scale*e) at e = 0; ``scale`` is +1 or -1."""
        if order < 0:
            raise ValueError("order must be non-negative")
        ds = _sin_derivatives(offset, order + 1)
        return cls(tuple(ds[k] * scale**k / math.factorial(k) for k in range(order + 1)))

    def __getitem__(self, k: int):
        return self.coeffs[k]

    def derivative(self, k: int):
        """k-th derivative at the expansion point (k! * t_k)."""
        return self.coeffs[k] * math.factorial(k)

    def truncate(self, order: int) -> "UniJet":
        if order > self.order:
            raise ValueError(f"cannot extend a jet of order {self.order} to {order}")
        return UniJet(self.coeffs[: order + 1])

    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient, or None for the zero jet."""
        for k, c in enumerate(self.coeffs):
            if c != 0:
                return k
        return None

    def _coerce(self, other) -> "UniJet":
        if isinstance(other, UniJet):
            return other
        return UniJet.constant(other, self.order)

    def __add__(self, other):
        other = self._coerce(other)
        n = min(self.order, other.order) + 1
        return UniJet(tuple(self.coeffs[k] + other.coeffs[k] for k in range(n)))

    __radd__ = __add__

    def __neg__(self):
        return UniJet(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, UniJet):
            return UniJet(tuple(c * other for c in self.coeffs))
        n = min(self.order, other.order) + 1
        a, b = self.coeffs, other.coeffs
        out = []
        for k in range(n):
            acc = a[0] * b[k]
            for i in range(1, k + 1):
                if a[i] != 0 and b[k - i] != 0:
                    acc += a[i] * b[k - i]
            out.append(acc)
        return UniJet(tuple(out))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, UniJet):
            return UniJet(tuple(c / other for c in self.coeffs))
        return jet_div(self, other)

    def __rtruediv__(self, other):
        return jet_div(self._coerce(other), self)

    def __pow__(self, e: int):
        return jet_pow(self, e)

    def apply_polynomial_derivative(self, poly: Sequence):
        """Evaluate ``P(d/de) f |_{e=0}`` = sum_k p_k * k! * t_k."""
        if len(poly) - 1 > self.order:
            raise ValueError(f"polynomial degree {len(poly) - 1} exceeds jet order {self.order}")
        acc = self.coeffs[0] * 0
        for k, p in enumerate(poly):
            acc += p * self.derivative(k)
        return acc


def jet_sin_affine(offset, order: int) -> UniJet:
    return UniJet.sin_affine(offset, order)


def jet_add(a: UniJet, b) -> UniJet:
    return a + b


def jet_mul(a: UniJet, b) -> UniJet:
    return a * b


def jet_pow(a, e: int):
    """Integer power by repeated squaring; negative powers go through division."""
    if e < 0:
        return jet_div(_one_like(a), jet_pow(a, -e))
    result = _one_like(a)
    base = a
    while e:
        if e & 1:
            result = result * base
        e >>= 1
        if e:
            base = base * base
    return result


def _one_like(a):
    if isinstance(a, UniJet):
        return UniJet.constant(a.coeffs[0] * 0 + 1, a.order)
    return BiJet.constant(a.coeffs[0][0] * 0 + 1, a.order1, a.order2)


def _check_unit(c0, label: str) -> None:
    if c0 == 0:
        raise SingularJetDivision(f"{label}: constant term vanishes")
    if isinstance(c0, mpf) and abs(c0) < mpf(2) ** (-(mp.prec - 4)):
        raise SingularJetDivision(f"{label}: constant term {c0} below working precision")


def jet_div(num, den):
    """Quotient on the truncated algebra.

    For univariate jets a common power of ``e`` is removed first: a denominator
    with valuation v needs the numerator's first v coefficients to be exact
    zeros, and the quotient loses v orders. Bivariate denominators must have
    a unit constant term.
    """
    if isinstance(num, BiJet) or isinstance(den, BiJet):
        return _bijet_div(num, den)
    v = den.valuation()
    if v is None:
        raise SingularJetDivision("division by the zero jet")
    if v:
        nv = num.valuation()
        if nv is not None and nv < v:
            raise SingularJetDivision(
                f"numerator has valuation {nv} below denominator valuation {v}"
            )
        num = UniJet(num.coeffs[v:])
        den = UniJet(den.coeffs[v:])
    n = min(num.order, den.order) + 1
    d, a = den.coeffs, num.coeffs
    _check_unit(d[0], "jet_div")
    out = []
    for k in range(n):
        acc = a[k]
        for i in range(1, k + 1):
            if d[i] != 0:
                acc -= d[i] * out[k - i]
        out.append(acc / d[0])
    return UniJet(tuple(out))


@dataclass(frozen=True)
class BiJet:
    """Taylor coefficients in (e1, e2); ``coeffs[i][j]`` multiplies e1^i e2^j."""

    coeffs: tuple

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.coeffs)
        if not rows or not rows[0] or len({len(r) for r in rows}) != 1:
            raise ValueError("BiJet coefficients must form a non-empty rectangle")
        object.__setattr__(self, "coeffs", rows)

    @property
    def order1(self) -> int:
        return len(self.coeffs) - 1

    @property
    def order2(self) -> int:
        return len(self.coeffs[0]) - 1

    @classmethod
    def constant(cls, value, order1: int, order2: int) -> "BiJet":
        zero = value * 0
        rows = [[zero] * (order2 + 1) for _ in range(order1 + 1)]
        rows[0][0] = value
        return cls(rows)

    @classmethod
    def from_uni(cls, jet: UniJet, axis: int, order1: int, order2: int) -> "BiJet":
        """Lift a jet in e1 (axis=1) or e2 (axis=2) to a bivariate jet."""
        zero = jet.coeffs[0] * 0
        rows = [[zero] * (order2 + 1) for _ in range(order1 + 1)]
        if axis == 1:
            for i in range(min(order1, jet.order) + 1):
                rows[i][0] = jet.coeffs[i]
        elif axis == 2:
            for j in range(min(order2, jet.order) + 1):
                rows[0][j] = jet.coeffs[j]
        else:
            raise ValueError("axis must be 1 or 2")
        return cls(rows)

    @classmethod
    def outer(cls, f: UniJet, g: UniJet) -> "BiJet":
        """Jet of f(e1) * g(e2)."""
        return cls([[a * b for b in g.coeffs] for a in f.coeffs])

    @classmethod
    def sin_affine(cls, offset, s1: int, s2: int, order1: int, order2: int) -> "BiJet":
        """Jet of sin(offset + s1*e1 + s2*e2) for integer slopes s1, s2."""
        ds = _sin_derivatives(offset, order1 + order2 + 1)
        rows = []
        for i in range(order1 + 1):
            row = []
            for j in range(order2 + 1):
                scale = s1**i * s2**j
                if scale == 0:
                    row.append(ds[0] * 0)
                else:
                    row.append(ds[i + j] * scale / (math.factorial(i) * math.factorial(j)))
            rows.append(row)
        return cls(rows)

    def derivative(self, i: int, j: int):
        """Mixed derivative d^i/de1^i d^j/de2^j at the origin."""
        return self.coeffs[i][j] * (math.factorial(i) * math.factorial(j))

    def _coerce(self, other) -> "BiJet":
        if isinstance(other, BiJet):
            return other
        return BiJet.constant(other, self.order1, self.order2)

    def _shape(self, other: "BiJet") -> tuple[int, int]:
        return min(self.order1, other.order1) + 1, min(self.order2, other.order2) + 1

    def __add__(self, other):
        other = self._coerce(other)
        n1, n2 = self._shape(other)
        return BiJet([[self.coeffs[i][j] + other.coeffs[i][j] for j in range(n2)] for i in range(n1)])

    __radd__ = __add__

    def __neg__(self):
        return BiJet([[-c for c in row] for row in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        if not isinstance(other, BiJet):
            return BiJet([[c * other for c in row] for row in self.coeffs])
        n1, n2 = self._shape(other)
        a, b = self.coeffs, other.coeffs
        zero = a[0][0] * 0
        out = [[zero] * n2 for _ in range(n1)]
        for p in range(n1):
            for q in range(n2):
                apq = a[p][q]
                if apq == 0:
                    continue
                for i in range(p, n1):
                    brow = b[i - p]
                    orow = out[i]
                    for j in range(q, n2):
                        bij = brow[j - q]
                        if bij != 0:
                            orow[j] += apq * bij
        return BiJet(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, BiJet):
            return BiJet([[c / other for c in row] for row in self.coeffs])
        return _bijet_div(self, other)

    def __rtruediv__(self, other):
        return _bijet_div(self._coerce(other), self)

    def __pow__(self, e: int):
        return jet_pow(self, e)


def _bijet_div(num, den) -> BiJet:
    if not isinstance(den, BiJet):
        return num / den
    if not isinstance(num, BiJet):
        num = den._coerce(num)
    n1, n2 = num._shape(den)
    d, a = den.coeffs, num.coeffs
    d00 = d[0][0]
    _check_unit(d00, "bijet division")
    out = [[None] * n2 for _ in range(n1)]
    for i in range(n1):
        for j in range(n2):
            acc = a[i][j]
            for p in range(i + 1):
                drow = d[p]
                orow = out[i - p]
                for q in range(j + 1):
                    if p == 0 and q == 0:
                        continue
                    if drow[q] != 0:
                        acc -= drow[q] * orow[j - q]
            out[i][j] = acc / d00
    return BiJet(out)
