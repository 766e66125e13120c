"""Unit groups: fundamental units of real quadratic fields and certified
multiplicative independence of user-supplied unit bases.

Independence is certified with interval arithmetic: real embeddings are
enclosed by exact Sturm bisection, the (d-1) x (d-1) log-embedding
determinant is evaluated over intervals, and the basis is accepted only
when the determinant interval excludes zero with a 2x midpoint margin.
Precision is doubled on failure before giving up.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

import mpmath

from .errors import InvalidInputError, SizeCapError, VerificationError
from .field import (
    AlgebraicInteger,
    FieldDescriptor,
    field_norm,
    isolate_real_roots,
    make_quadratic_field,
)

_CF_ITERATION_CAP = 10**6
_INDEPENDENCE_START_BITS = 320
_INDEPENDENCE_RETRIES = 4


def fundamental_unit_quadratic(D: int, field: FieldDescriptor | None = None) -> AlgebraicInteger:
    """Fundamental unit (> 1) of Q(sqrt D) by the continued fraction of
    the integral generator; works on (1+sqrt D)/2 when D = 1 mod 4."""
    if field is None:
        field = make_quadratic_field(D)
    elif getattr(field, "quadratic_D", None) != D:
        raise InvalidInputError("field was not built as the quadratic field of this D")
    s = isqrt(D)
    if s * s == D:
        raise InvalidInputError("D must not be a square")
    if D % 4 == 1:
        P0, Q0 = 1, 2
    else:
        P0, Q0 = 0, 1
    P, Q = P0, Q0
    pm2, pm1 = 0, 1
    qm2, qm1 = 1, 0
    p = q = None
    for _ in range(_CF_ITERATION_CAP):
        a = (P + s) // Q
        p = a * pm1 + pm2
        q = a * qm1 + qm2
        P = a * Q - P
        num = D - P * P
        assert num % Q == 0
        Q = num // Q
        if Q == Q0:
            break
        pm2, pm1 = pm1, p
        qm2, qm1 = qm1, q
    else:
        raise SizeCapError("continued fraction period exceeded the iteration cap")
    if D % 4 == 1:
        eps = field.element((p - q, q))  # p - q*(1 - theta)
    else:
        eps = field.element((p, q))  # p + q*theta
    assert abs(field_norm(eps)) == 1
    return eps


@dataclass(frozen=True)
class UnitBasis:
    units: tuple
    provenance: str  # "computed_continued_fraction" | "user_supplied"
    certified_bits: int | None = None

    def with_certificate(self, bits):
        return UnitBasis(self.units, self.provenance, bits)


def unit_basis_for(field: FieldDescriptor, user_units=None) -> UnitBasis:
    if user_units is not None:
        elems = tuple(
            u if isinstance(u, AlgebraicInteger) else field.element(u)
            for u in user_units
        )
        return UnitBasis(elems, "user_supplied")
    D = getattr(field, "quadratic_D", None)
    if D is None:
        raise VerificationError(
            "a unit basis must be supplied for fields not constructed as quadratic"
        )
    return UnitBasis((fundamental_unit_quadratic(D, field),), "computed_continued_fraction")


class _PrecisionLoss(Exception):
    pass


def _interval_det(m, iv):
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    det = iv.mpf(0)
    sign = 1
    for j in range(n):
        minor = [row[:j] + row[j + 1 :] for row in m[1:]]
        det += sign * m[0][j] * _interval_det(minor, iv)
        sign = -sign
    return det


def _frac_iv(fr, iv):
    return iv.mpf(fr.numerator) / iv.mpf(fr.denominator)


def _log_embedding_det(field, units, bits):
    iv = mpmath.iv
    old_prec = iv.prec
    iv.prec = bits + 64
    try:
        boxes = isolate_real_roots(field.min_poly, width=Fraction(1, 2**bits))
        if len(boxes) != field.degree:
            raise VerificationError(
                f"found {len(boxes)} real roots of the minimal polynomial, "
                f"expected {field.degree}; the field is not totally real"
            )
        roots = []
        for lo, hi in boxes:
            a = _frac_iv(lo, iv)
            b = _frac_iv(hi, iv)
            roots.append(iv.mpf([a.a, b.b]))
        rows = []
        for u in units:
            coeffs = [_frac_iv(fr, iv) for fr in u.to_power_basis()]
            row = []
            for r in roots[: field.degree - 1]:
                acc = iv.mpf(0)
                for c in reversed(coeffs):
                    acc = acc * r + c
                mag = abs(acc)
                if not mag.a > 0:
                    raise _PrecisionLoss
                row.append(iv.log(mag))
            rows.append(row)
        return _interval_det(rows, iv)
    finally:
        iv.prec = old_prec


def verify_unit_basis(field: FieldDescriptor, units, start_bits=_INDEPENDENCE_START_BITS) -> int:
    """Check norms, torsion, count, and certified independence.

    Returns the precision (bits) at which independence was certified.
    Raises VerificationError when any check fails outright or the
    determinant cannot be separated from zero.
    """
    units = list(units)
    d = field.degree
    if len(units) != d - 1:
        raise VerificationError(
            f"expected {d - 1} units for a rank-{d - 1} unit lattice, got {len(units)}"
        )
    minus_one = (-field.one).coords
    for i, u in enumerate(units, start=1):
        if u.field is not field:
            raise VerificationError(f"unit {i} belongs to a different field")
        n = field_norm(u)
        if n not in (1, -1):
            raise VerificationError(f"unit {i} has norm {n}; not a unit")
        if u.coords == field.one.coords or u.coords == minus_one:
            raise VerificationError(f"unit {i} is torsion (+-1), not an independent unit")

    bits = start_bits
    for _ in range(_INDEPENDENCE_RETRIES):
        try:
            det = _log_embedding_det(field, units, bits)
        except _PrecisionLoss:
            bits *= 2
            continue
        excludes_zero = det.a > 0 or det.b < 0
        sharp = abs(det.mid) >= det.delta  # midpoint at least twice the radius
        if excludes_zero and sharp:
            return bits
        bits *= 2
    raise VerificationError(
        "could not certify multiplicative independence of the unit basis; "
        "the log-embedding determinant interval contains or hugs zero"
    )
