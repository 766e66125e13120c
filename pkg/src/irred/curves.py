"""Weierstrass models over the field, reduction at primes, point counts,
and Frobenius traces.

Counting is exhaustive over the residue field: completed-square character
sums in odd characteristic, Artin-Schreier traces in characteristic 2.
A hard cap on the residue field size keeps runs predictable; larger fields
raise SizeCapError instead of silently grinding.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .errors import BadReductionError, InvalidInputError, SizeCapError
from .exact import IntPoly
from .field import (
    AlgebraicInteger,
    FieldDescriptor,
    PrimeIdeal,
    ResidueFieldElement,
    residue_map,
)

DEFAULT_COUNT_CAP = 10**6


class WeierstrassCurve:
    """Long Weierstrass model with coefficients in the ring of integers."""

    __slots__ = ("field", "a1", "a2", "a3", "a4", "a6",
                 "b2", "b4", "b6", "b8", "c4", "c6", "discriminant")

    def __init__(self, field: FieldDescriptor, a_invariants):
        if len(a_invariants) != 5:
            raise InvalidInputError("expected (a1, a2, a3, a4, a6)")
        coerced = []
        for a in a_invariants:
            if isinstance(a, AlgebraicInteger):
                if a.field is not field:
                    raise InvalidInputError("coefficient from a different field")
                coerced.append(a)
            elif isinstance(a, int):
                coerced.append(field.from_int(a))
            else:
                coerced.append(field.element(a))
        self.field = field
        self.a1, self.a2, self.a3, self.a4, self.a6 = coerced
        a1, a2, a3, a4, a6 = coerced
        self.b2 = a1 * a1 + 4 * a2
        self.b4 = 2 * a4 + a1 * a3
        self.b6 = a3 * a3 + 4 * a6
        self.b8 = a1 * a1 * a6 + 4 * (a2 * a6) - a1 * a3 * a4 + a2 * (a3 * a3) - a4 * a4
        self.c4 = self.b2 * self.b2 - 24 * self.b4
        self.c6 = -(self.b2 * self.b2 * self.b2) + 36 * self.b2 * self.b4 - 216 * self.b6
        self.discriminant = (
            -(self.b2 * self.b2 * self.b8)
            - 8 * (self.b4 * self.b4 * self.b4)
            - 27 * (self.b6 * self.b6)
            + 9 * self.b2 * self.b4 * self.b6
        )
        if self.discriminant.is_zero:
            raise InvalidInputError("singular model: the discriminant is zero")

    def a_invariants(self):
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def __repr__(self):
        return f"WeierstrassCurve(a={[list(a.coords) for a in self.a_invariants()]})"


@dataclass(frozen=True)
class ReducedCurve:
    q: PrimeIdeal
    a1: tuple
    a2: tuple
    a3: tuple
    a4: tuple
    a6: tuple
    delta: tuple
    c4bar: tuple

    @property
    def reduction_type(self):
        if self.delta:
            return "good"
        return "additive" if not self.c4bar else "multiplicative"

    @property
    def has_good_reduction(self):
        return self.reduction_type == "good"


def reduce_curve(curve: WeierstrassCurve, q: PrimeIdeal) -> ReducedCurve:
    imgs = [residue_map(a, q).coeffs for a in curve.a_invariants()]
    delta = residue_map(curve.discriminant, q).coeffs
    c4bar = residue_map(curve.c4, q).coeffs
    return ReducedCurve(q, *imgs, delta=delta, c4bar=c4bar)


def _count_points_prime_field(red: ReducedCurve) -> int:
    p = red.q.ell

    def lift(t):
        return t[0] if t else 0

    a1, a2, a3, a4, a6 = (lift(t) for t in (red.a1, red.a2, red.a3, red.a4, red.a6))
    squares = frozenset(z * z % p for z in range(1, p))
    total = 1
    for x in range(p):
        h = (a1 * x + a3) % p
        f = (((x + a2) * x + a4) * x + a6) % p
        u = (h * h + 4 * f) % p
        if u == 0:
            total += 1
        elif u in squares:
            total += 2
    return total


def _count_points_char2(red: ReducedCurve) -> int:
    F = red.q.residue_field
    total = 1
    a1, a2, a3, a4, a6 = red.a1, red.a2, red.a3, red.a4, red.a6
    for x in F.elements():
        h = F.add(F.mul(a1, x), a3)
        x2 = F.mul(x, x)
        f = F.add(F.add(F.mul(x2, F.add(x, a2)), F.mul(a4, x)), a6)
        if not h:
            total += 1  # y^2 = f has exactly one root: Frobenius is bijective
        else:
            w = F.mul(f, F.inv(F.mul(h, h)))
            if F.trace_to_f2(w) == 0:
                total += 2
    return total


def _count_points_extension(red: ReducedCurve) -> int:
    F = red.q.residue_field
    squares = F.squares()
    four = F.from_int(4)
    total = 1
    a1, a2, a3, a4, a6 = red.a1, red.a2, red.a3, red.a4, red.a6
    for x in F.elements():
        h = F.add(F.mul(a1, x), a3)
        f = F.add(F.add(F.mul(F.mul(x, x), F.add(x, a2)), F.mul(a4, x)), a6)
        u = F.add(F.mul(h, h), F.mul(four, f))
        if not u:
            total += 1
        elif u in squares:
            total += 2
    return total


def count_points(red: ReducedCurve, cap: int = DEFAULT_COUNT_CAP) -> int:
    """|E(F_q)| including the point at infinity, by full enumeration."""
    if not red.has_good_reduction:
        raise BadReductionError(f"bad reduction at the prime over {red.q.ell}")
    size = red.q.residue_field.size
    if size > cap:
        raise SizeCapError(
            f"residue field of size {size} exceeds the counting cap {cap}"
        )
    if red.q.ell == 2:
        return _count_points_char2(red)
    if red.q.residue_field.f == 1:
        return _count_points_prime_field(red)
    return _count_points_extension(red)


@dataclass(frozen=True)
class FrobeniusData:
    q: PrimeIdeal
    norm: int
    point_count: int
    trace: int

    @property
    def charpoly(self) -> IntPoly:
        return IntPoly.quadratic_frobenius(self.trace, self.norm)


def frobenius_data(curve: WeierstrassCurve, q: PrimeIdeal, cap: int = DEFAULT_COUNT_CAP) -> FrobeniusData:
    red = reduce_curve(curve, q)
    if not red.has_good_reduction:
        raise BadReductionError(
            f"curve has {red.reduction_type} reduction at the prime over {q.ell}"
        )
    n = count_points(red, cap=cap)
    trace = q.norm + 1 - n
    assert trace * trace <= 4 * q.norm, "Hasse bound violated; counting bug"
    return FrobeniusData(q=q, norm=q.norm, point_count=n, trace=trace)
