"""Exact phases and roots of unity.

Phases are :class:`fractions.Fraction` values.  A nonzero root of unity is kept
as an integer exponent modulo a fixed order ``L`` so that equality is exponent
equality and never a floating-point comparison.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

PhaseLike = Union[Fraction, int, str]


class OrderMismatchError(ValueError):
    """Two scalars with different orders were combined."""


def as_phase(value: PhaseLike) -> Fraction:
    """Parse ``"num/den"``, an int or a Fraction into a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if "/" in text:
            num, den = text.split("/", 1)
            den = int(den)
            if den < 1:
                raise ValueError(f"phase denominator must be >= 1: {value!r}")
            return Fraction(int(num), den)
        return Fraction(int(text))
    raise TypeError(f"cannot interpret {value!r} as a phase")


def format_phase(phase: Fraction) -> str:
    """Reduced ``"num/den"`` string, e.g. ``"0/1"``, ``"2/3"``."""
    phase = Fraction(phase)
    return f"{phase.numerator}/{phase.denominator}"


def canonical_phase(phase: Fraction) -> Fraction:
    """Representative in [0, 1)."""
    return Fraction(phase) % 1


def phases_equivalent(a: Fraction, b: Fraction) -> bool:
    """X(a) and X(b) agree up to a global phase iff a - b is an integer."""
    return (Fraction(a) - Fraction(b)).denominator == 1


def working_order(dim: int, phases: Iterable[Fraction] = ()) -> int:
    """Smallest order L = D * lcm(denominators) covering every phase in play."""
    den = 1
    for p in phases:
        den = math.lcm(den, Fraction(p).denominator)
    return dim * den


@dataclass(frozen=True)
class CycScalar:
    """Zero or exp(2*pi*i*exponent/order)."""

    exponent: int
    order: int
    is_zero: bool = False

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be positive")
        object.__setattr__(self, "exponent", 0 if self.is_zero else self.exponent % self.order)

    @classmethod
    def zero(cls, order: int) -> "CycScalar":
        return cls(0, order, True)

    @classmethod
    def one(cls, order: int) -> "CycScalar":
        return cls(0, order)

    def _check(self, other: "CycScalar") -> None:
        if self.order != other.order:
            raise OrderMismatchError(f"orders differ: {self.order} vs {other.order}")

    def __mul__(self, other: "CycScalar") -> "CycScalar":
        return scalar_mul(self, other)

    def conj(self) -> "CycScalar":
        if self.is_zero:
            return self
        return CycScalar(-self.exponent, self.order)

    def __truediv__(self, other: "CycScalar") -> "CycScalar":
        if other.is_zero:
            raise ZeroDivisionError("division by the zero scalar")
        return scalar_mul(self, other.conj())

    def omega_power(self, dim: int) -> Fraction:
        """Exponent expressed in powers of exp(2*pi*i/dim)."""
        return Fraction(self.exponent * dim, self.order)

    def __complex__(self) -> complex:
        if self.is_zero:
            return 0j
        return cmath.exp(2j * math.pi * self.exponent / self.order)

    def __str__(self) -> str:
        return "0" if self.is_zero else f"exp(2pi i {self.exponent}/{self.order})"


def scalar_mul(a: CycScalar, b: CycScalar) -> CycScalar:
    a._check(b)
    if a.is_zero or b.is_zero:
        return CycScalar.zero(a.order)
    return CycScalar(a.exponent + b.exponent, a.order)


def omega_exponent(power: PhaseLike, dim: int, order: int) -> int:
    """Exponent modulo ``order`` of omega**power with omega = exp(2*pi*i/dim)."""
    scaled = as_phase(power) * order / dim
    if scaled.denominator != 1:
        raise OrderMismatchError(
            f"omega^{power} with D={dim} is not representable at order {order}"
        )
    return int(scaled) % order


def phase_scalar(alpha: PhaseLike, n: int, dim: int, order: int | None = None) -> CycScalar:
    """omega**(alpha*n), the phase-shifter entry for basis state n."""
    alpha = as_phase(alpha)
    if order is None:
        order = dim * alpha.denominator
    return CycScalar(omega_exponent(alpha * n, dim, order), order)
