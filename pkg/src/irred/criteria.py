"""Per-prime irreducibility criteria and the final bad-prime assembly.

A good-reduction prime q with characteristic polynomial P_q forces every
reducible residue characteristic p to divide Res(P_q, X^{12r} - 1); the
assembly intersects those divisor sets across auxiliary rational primes
and unions the unconditional exclusions (small primes, ramified primes,
divisors of the unit bound B, additive residue characteristics).
"""
from __future__ import annotations

from dataclasses import dataclass

from .curves import FrobeniusData
from .errors import InvalidInputError
from .exact import (
    Factorization,
    factorize,
    gcd_set,
    is_prime,
    lucas_power_sum,
    resultant_quadratic_cyclotomic,
)
from .field import AlgebraicInteger, FieldDescriptor, field_norm

TWIST_EXPONENT = 12

# reducibility is only at issue for p below 17 other than 11
BASELINE_SMALL_PRIMES = (2, 3, 5, 7, 13)

REASON_SMALL = "small_prime_rule"
REASON_RAMIFIED = "ramified"
REASON_DIVIDES_B = "divides_B"
REASON_SURVIVOR = "survives_all_resultants"
REASON_ADDITIVE = "additive_residue_char"
REASON_AUXILIARY = "auxiliary_prime"


@dataclass(frozen=True)
class CriterionResult:
    """Resultant obstruction at one prime ideal."""

    ell: int
    q_gpoly: tuple
    norm: int
    trace: int
    r: int
    resultant: int
    factorization: Factorization | None  # None only for the degenerate zero value
    general_value_coords: tuple | None = None
    general_norm: int | None = None


def resultant_criterion(F: FrobeniusData, r: int) -> CriterionResult:
    """Res(P_q, X^{12r} - 1) by the Lucas closed form, factored.

    Nonzero for every genuine curve: eigenvalues have absolute value
    sqrt(Norm q) > 1, so none is a root of unity.
    """
    if r < 1:
        raise InvalidInputError("r must be a positive integer")
    value = resultant_quadratic_cyclotomic(F.trace, F.norm, TWIST_EXPONENT * r)
    if F.norm >= 2 and F.trace * F.trace <= 4 * F.norm:
        assert value != 0, "resultant vanished for a good-reduction prime"
    return CriterionResult(
        ell=F.q.ell,
        q_gpoly=F.q.gpoly,
        norm=F.norm,
        trace=F.trace,
        r=r,
        resultant=value,
        factorization=factorize(value) if value else None,
    )


def general_resultant_criterion(F: FrobeniusData, r: int, gamma: AlgebraicInteger):
    """Res(P_q, X^{12r} - gamma) as a ring element, plus its field norm.

    For eigenvalues u, v of Frobenius: (u^m - gamma)(v^m - gamma)
    = Norm(q)^m - gamma*(u^m + v^m) + gamma^2 with m = 12r; the power sum
    comes from the Lucas recurrence.  gamma is a twisted norm of a
    generator of q^r chosen by the caller.
    """
    if r < 1:
        raise InvalidInputError("r must be a positive integer")
    m = TWIST_EXPONENT * r
    field = gamma.field
    s_m = lucas_power_sum(F.trace, F.norm, m)
    value = field.from_int(F.norm**m) - gamma * s_m + gamma * gamma
    return value, field_norm(value)


def merel_bound(d: int, h: int) -> int:
    """Uniform torsion-style cutoff (1 + 3^(6dh))^2."""
    if d < 1 or h < 1:
        raise InvalidInputError("degree and class number must be >= 1")
    return (1 + 3 ** (6 * d * h)) ** 2


@dataclass(frozen=True)
class BadPrimeSet:
    """Sorted primes that escape the criteria, each with its reasons."""

    entries: tuple  # ((p, (reason, ...)), ...) sorted by p

    @property
    def primes(self):
        return [p for p, _ in self.entries]

    def reasons_for(self, p):
        for pp, reasons in self.entries:
            if pp == p:
                return reasons
        return ()

    def beyond_baseline(self, field: FieldDescriptor):
        """Primes not already excluded by the small-prime rule or ramification."""
        auto = set(BASELINE_SMALL_PRIMES)
        auto.update(factorize(field.discriminant).prime_support())
        return [p for p in self.primes if p not in auto]

    def as_dict_list(self):
        return [{"p": str(p), "reasons": list(rs)} for p, rs in self.entries]


def assemble_bad_primes(
    field: FieldDescriptor,
    B: int,
    per_prime_values: dict,
    additive_residue_chars=(),
) -> BadPrimeSet:
    """Union the unconditional exclusions with the intersection, over every
    auxiliary rational prime ell, of {divisors of gcd(resultants at ell)}
    together with ell itself.

    per_prime_values maps ell -> nonempty list of resultant values (for a
    fixed curve: one per good prime above ell; for a family: the single
    swept value R_ell).
    """
    if B < 1:
        raise InvalidInputError("B must be a positive integer")
    reasons: dict[int, set] = {}

    def mark(p, reason):
        reasons.setdefault(p, set()).add(reason)

    for p in BASELINE_SMALL_PRIMES:
        mark(p, REASON_SMALL)
    for p in factorize(field.discriminant).prime_support():
        mark(p, REASON_RAMIFIED)
    for p in factorize(B).prime_support():
        mark(p, REASON_DIVIDES_B)
    for c in additive_residue_chars:
        ok, _ = is_prime(c)
        if not ok:
            raise InvalidInputError(f"additive residue characteristic {c} is not prime")
        mark(c, REASON_ADDITIVE)

    if per_prime_values:
        aux = set(per_prime_values)
        per_ell_sets = {}
        per_ell_gcd = {}
        for ell, values in sorted(per_prime_values.items()):
            values = list(values)
            if not values:
                raise InvalidInputError(
                    f"auxiliary prime {ell} contributed no resultant values"
                )
            g = gcd_set([abs(v) for v in values])
            if g == 0:
                raise InvalidInputError(
                    f"all resultants at auxiliary prime {ell} vanished"
                )
            per_ell_gcd[ell] = g
            per_ell_sets[ell] = factorize(g).prime_support() | {ell}
        survivors = set.intersection(*per_ell_sets.values())
        for p in survivors:
            if any(per_ell_gcd[ell] % p == 0 for ell in aux):
                mark(p, REASON_SURVIVOR)
            if p in aux:
                mark(p, REASON_AUXILIARY)

    entries = tuple(
        (p, tuple(sorted(reasons[p]))) for p in sorted(reasons)
    )
    return BadPrimeSet(entries)
