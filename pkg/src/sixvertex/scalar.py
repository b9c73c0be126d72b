"""Arbitrary-precision scalars and angle tokens.

All real arithmetic runs on :mod:`mpmath` ``mpf`` values under the global
``mp`` context. Precision is a property of the context, so every value built
inside ``precision(bits)`` carries that many mantissa bits.
"""

from __future__ import annotations

import contextlib
import os
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

import mpmath
from mpmath import mp, mpf

DEFAULT_PRECISION = 256
PRECISION_ENV = "SIXVERTEX_PRECISION"

Number = Union[int, Fraction, mpf]


def default_precision() -> int:
    """Precision in bits from the environment, falling back to 256."""
    raw = os.environ.get(PRECISION_ENV)
    if raw is None:
        return DEFAULT_PRECISION
    bits = int(raw)
    if bits <= 0:
        raise ValueError(f"{PRECISION_ENV} must be positive, got {raw!r}")
    return bits


def set_precision(bits: int) -> None:
    if bits <= 0:
        raise ValueError("precision must be a positive number of bits")
    mp.prec = bits


@contextlib.contextmanager
def precision(bits: int) -> Iterator[int]:
    """Run a block at ``bits`` of working precision, restoring the old value."""
    if bits <= 0:
        raise ValueError("precision must be a positive number of bits")
    with mp.workprec(bits):
        yield bits


def current_precision() -> int:
    return mp.prec


def tolerance(n: int = 1, bits: int | None = None) -> mpf:
    """Default comparison tolerance 2^(-bits/2) * n^2."""
    bits = mp.prec if bits is None else bits
    return mpf(2) ** (-(bits // 2)) * max(n, 1) ** 2


def to_mpf(x: Number | str | float) -> mpf:
    if isinstance(x, Fraction):
        return mpf(x.numerator) / x.denominator
    return mpf(x)


_PI_TOKEN = re.compile(
    r"^\s*(?P<sign>[-+]?)\s*(?:(?P<num>\d+)\s*\*?\s*)?pi(?:\s*/\s*(?P<den>\d+))?\s*$",
    re.IGNORECASE,
)


@dataclass(frozen=True)
class Angle:
    """An angle given either as a rational multiple of pi or as a decimal string.

    Keeping the exact description lets the same angle be re-evaluated at any
    precision without inheriting round-off from a lower-precision run.
    """

    pi_multiple: Fraction | None = None
    decimal: str | None = None

    def __post_init__(self):
        if (self.pi_multiple is None) == (self.decimal is None):
            raise ValueError("Angle needs exactly one of pi_multiple or decimal")

    @classmethod
    def parse(cls, token: "str | Angle | Number | float") -> "Angle":
        """Parse ``pi/6``, ``2pi/3``, ``-pi``, ``0.9`` or a number."""
        if isinstance(token, Angle):
            return token
        if isinstance(token, Fraction):
            return cls(decimal=_fraction_str(token))
        if isinstance(token, (int, float)):
            return cls(decimal=repr(token))
        if isinstance(token, mpf):
            return cls(decimal=mpmath.nstr(token, mp.dps + 5, strip_zeros=False))
        text = str(token).strip()
        m = _PI_TOKEN.match(text)
        if m:
            num = int(m.group("num") or 1)
            den = int(m.group("den") or 1)
            if den == 0:
                raise ValueError(f"zero denominator in angle {token!r}")
            frac = Fraction(num, den)
            if m.group("sign") == "-":
                frac = -frac
            return cls(pi_multiple=frac)
        try:
            mpf(text)
        except (ValueError, TypeError) as exc:
            raise ValueError(f"cannot parse angle {token!r}") from exc
        if not re.match(r"^[-+]?(\d+\.?\d*|\.\d+)([eE][-+]?\d+)?$", text):
            raise ValueError(f"cannot parse angle {token!r}")
        return cls(decimal=text)

    @property
    def value(self) -> mpf:
        if self.pi_multiple is not None:
            return mp.pi * self.pi_multiple.numerator / self.pi_multiple.denominator
        return mpf(self.decimal)

    def reflected(self) -> "Angle":
        """The angle pi - self, kept exact when possible."""
        if self.pi_multiple is not None:
            return Angle(pi_multiple=1 - self.pi_multiple)
        return Angle.parse(mp.pi - mpf(self.decimal))

    def __str__(self) -> str:
        if self.pi_multiple is None:
            return self.decimal
        f = self.pi_multiple
        sign = "-" if f < 0 else ""
        num, den = abs(f.numerator), f.denominator
        head = "pi" if num == 1 else f"{num}pi"
        if num == 0:
            return "0"
        return f"{sign}{head}" if den == 1 else f"{sign}{head}/{den}"


def _fraction_str(f: Fraction) -> str:
    # exact decimal only for terminating fractions; otherwise high-precision rounding
    with mp.workprec(max(mp.prec, 256) + 64):
        return mpmath.nstr(mpf(f.numerator) / f.denominator, mp.dps + 10, strip_zeros=False)


def fmt(x: Number, digits: int | None = None) -> str:
    """Decimal string of ``x`` carrying the full working precision."""
    if isinstance(x, (int, Fraction)):
        return str(x)
    digits = mp.dps if digits is None else digits
    return mpmath.nstr(x, digits)
