"""Model parameters: homogeneous (lambda, eta) and fully inhomogeneous sets."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from mpmath import mp, mpf

from .errors import DegenerateParameters, InadmissibleParameters, SingularParameters
from .scalar import Angle, to_mpf


def _as_angle(x) -> Angle:
    return Angle.parse(x)


@dataclass(frozen=True)
class WeightParams:
    """Spectral parameter ``lam`` and crossing parameter ``eta``.

    Vertex weights are a = sin(lam + eta), b = sin(lam - eta), c = sin(2 eta).
    By default the pair must lie in the disordered regime
    0 < eta < pi/2, eta < lam < pi - eta.
    """

    lam: Angle
    eta: Angle
    allow_any: bool = field(default=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "lam", _as_angle(self.lam))
        object.__setattr__(self, "eta", _as_angle(self.eta))
        if not self.allow_any and not self.admissible():
            raise InadmissibleParameters(
                f"(lambda, eta) = ({self.lam}, {self.eta}) is outside "
                "0 < eta < pi/2, eta < lambda < pi - eta; pass allow_any=True to override"
            )

    @classmethod
    def of(cls, lam, eta, allow_any: bool = False) -> "WeightParams":
        return cls(_as_angle(lam), _as_angle(eta), allow_any)

    def admissible(self) -> bool:
        lam, eta = self.lam.value, self.eta.value
        return 0 < eta < mp.pi / 2 and eta < lam < mp.pi - eta

    @property
    def lam_value(self) -> mpf:
        return self.lam.value

    @property
    def eta_value(self) -> mpf:
        return self.eta.value

    def weights(self) -> tuple[mpf, mpf, mpf]:
        return weights_abc(self)

    def reflected(self) -> "WeightParams":
        """Crossing partner lam -> pi - lam (swaps a and b)."""
        return WeightParams(self.lam.reflected(), self.eta, self.allow_any)

    def describe(self) -> dict:
        return {"lambda": str(self.lam), "eta": str(self.eta)}


def weights_abc(p: WeightParams) -> tuple[mpf, mpf, mpf]:
    lam, eta = p.lam_value, p.eta_value
    return mp.sin(lam + eta), mp.sin(lam - eta), mp.sin(2 * eta)


def min_gap() -> mpf:
    """Smallest allowed separation between inhomogeneities (2^-64 at 256 bits)."""
    return mpf(2) ** (-(mp.prec // 4))


@dataclass(frozen=True)
class InhomParams:
    """Column parameters ``lambdas`` (right to left), row parameters ``nus`` (top to bottom)."""

    lambdas: tuple
    nus: tuple
    eta: object

    def __post_init__(self):
        object.__setattr__(self, "lambdas", tuple(self.lambdas))
        object.__setattr__(self, "nus", tuple(self.nus))
        if len(self.lambdas) != len(self.nus) or not self.lambdas:
            raise ValueError("lambdas and nus must be non-empty and of equal length")

    @property
    def n(self) -> int:
        return len(self.lambdas)

    @property
    def lams(self) -> list[mpf]:
        return [_value(x) for x in self.lambdas]

    @property
    def nu_values(self) -> list[mpf]:
        return [_value(x) for x in self.nus]

    @property
    def eta_value(self) -> mpf:
        return _value(self.eta)

    @classmethod
    def homogeneous_perturbation(cls, n: int, lam, eta, delta) -> "InhomParams":
        """lambda_alpha = lam + alpha*delta, nu_k = k*delta."""
        lam, delta = _value(lam), to_mpf(delta)
        return cls(
            tuple(lam + a * delta for a in range(1, n + 1)),
            tuple(k * delta for k in range(1, n + 1)),
            eta,
        )

    def validate(self) -> None:
        gap = min_gap()
        for label, xs in (("lambda", self.lams), ("nu", self.nu_values)):
            for i in range(len(xs)):
                for j in range(i + 1, len(xs)):
                    if abs(mp.sin(xs[i] - xs[j])) < gap:
                        raise DegenerateParameters(
                            f"{label}_{i + 1} and {label}_{j + 1} coincide to within {gap}"
                        )
        eta = self.eta_value
        if abs(mp.sin(2 * eta)) < gap:
            raise SingularParameters("c = sin(2 eta) vanishes")
        for lam in self.lams:
            for nu in self.nu_values:
                if abs(mp.sin(lam - nu + eta)) < gap or abs(mp.sin(lam - nu - eta)) < gap:
                    raise DegenerateParameters("a vertex weight vanishes")

    def describe(self) -> dict:
        from .scalar import fmt

        return {
            "lambdas": [fmt(x) for x in self.lams],
            "nus": [fmt(x) for x in self.nu_values],
            "eta": fmt(self.eta_value),
        }


def _value(x) -> mpf:
    if isinstance(x, Angle):
        return x.value
    if isinstance(x, str):
        return Angle.parse(x).value
    return to_mpf(x)


def inhom_from_sequences(lambdas: Sequence, nus: Sequence, eta) -> InhomParams:
    p = InhomParams(tuple(lambdas), tuple(nus), eta)
    p.validate()
    return p
