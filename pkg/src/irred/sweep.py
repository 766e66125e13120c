"""Residue-pair sweeps of two-parameter curve families.

Each Weierstrass coefficient is a bivariate polynomial in the parameters
(a, b) with ring-of-integers coefficients.  Traces of Frobenius at a prime
q depend only on (a, b) modulo the rational prime under q, so sweeping all
residue pairs covers every specialization.  Per pair the resultants at the
primes above ell are gcd'd; the per-prime value R_ell is the lcm over
included pairs.  Skipped pairs (excluded by predicate, or singular models)
are recorded; bad-model skips mark the sweep as partial.

Pair evaluations are pure and order-independent; the parallel path uses
forked workers with an ordered reduction, so results are byte-stable for
any worker count.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import gcd
import multiprocessing

from .curves import DEFAULT_COUNT_CAP, ReducedCurve, WeierstrassCurve, count_points
from .errors import (
    BadReductionError,
    EmptySweepError,
    InvalidInputError,
    UnsupportedPrimeError,
)
from .exact import Factorization, factorize, gcd_set, lcm_set, resultant_quadratic_cyclotomic
from .field import AlgebraicInteger, FieldDescriptor, PrimeIdeal, residue_map, split_prime

TWIST_EXPONENT = 12

SKIP_PREDICATE_NAMES = ("both_zero", "shared_factor")

_COEFF_KEYS = ("a1", "a2", "a3", "a4", "a6")


def _skip_pair(name, a, b, ell):
    if name == "both_zero":
        return a % ell == 0 and b % ell == 0
    # shared_factor: the pair shares a factor with ell; for prime ell this
    # coincides with both residues vanishing, but is kept as a distinct
    # predicate for clarity of intent in configs
    return gcd(gcd(a, b), ell) > 1


class CurveFamily:
    """Parametrized Weierstrass model with bivariate coefficient polynomials.

    coefficients: dict "a1".."a6" -> iterable of monomials (i, j, c) where
    c is an AlgebraicInteger or a coordinate vector.  Missing keys are zero.
    """

    def __init__(self, field: FieldDescriptor, coefficients, skip="both_zero",
                 additive_residue_chars=()):
        self.field = field
        if skip not in SKIP_PREDICATE_NAMES:
            raise InvalidInputError(
                f"unknown skip predicate {skip!r}; expected one of {SKIP_PREDICATE_NAMES}"
            )
        self.skip = skip
        self.additive_residue_chars = tuple(sorted(set(additive_residue_chars)))
        polys = {}
        for key in _COEFF_KEYS:
            monos = []
            for entry in coefficients.get(key, ()):
                i, j, c = entry
                if i < 0 or j < 0:
                    raise InvalidInputError(f"{key}: monomial exponents must be >= 0")
                if not isinstance(c, AlgebraicInteger):
                    c = field.element(c)
                elif c.field is not field:
                    raise InvalidInputError(f"{key}: coefficient from a different field")
                monos.append((int(i), int(j), c))
            monos.sort(key=lambda m: (m[0], m[1]))
            polys[key] = tuple(monos)
        self.coefficients = polys
        unknown = set(coefficients) - set(_COEFF_KEYS)
        if unknown:
            raise InvalidInputError(f"unknown coefficient keys {sorted(unknown)}")
        if not self._has_nonsingular_specialization():
            raise InvalidInputError(
                "family is singular at every sampled integer pair; "
                "no honest specialization exists"
            )

    def specialize_integers(self, a: int, b: int) -> WeierstrassCurve:
        """Characteristic-zero specialization (used for validation and tests)."""
        coeffs = []
        for key in _COEFF_KEYS:
            acc = self.field.zero
            for i, j, c in self.coefficients[key]:
                acc = acc + c * (a**i) * (b**j)
            coeffs.append(acc)
        return WeierstrassCurve(self.field, coeffs)

    def _has_nonsingular_specialization(self):
        for a in range(-3, 4):
            for b in range(-3, 4):
                try:
                    self.specialize_integers(a, b)
                    return True
                except InvalidInputError:
                    continue
        return False


def _residue_invariants(F, a1, a2, a3, a4, a6):
    """(discriminant, c4) of the reduced model, inside the residue field."""
    c = F.from_int
    b2 = F.add(F.mul(a1, a1), F.mul(c(4), a2))
    b4 = F.add(F.mul(c(2), a4), F.mul(a1, a3))
    b6 = F.add(F.mul(a3, a3), F.mul(c(4), a6))
    b8 = F.add(
        F.sub(
            F.add(F.mul(F.mul(a1, a1), a6), F.mul(F.mul(c(4), a2), a6)),
            F.mul(F.mul(a1, a3), a4),
        ),
        F.sub(F.mul(a2, F.mul(a3, a3)), F.mul(a4, a4)),
    )
    c4 = F.sub(F.mul(b2, b2), F.mul(c(24), b4))
    delta = F.sub(
        F.add(
            F.neg(F.mul(F.mul(b2, b2), b8)),
            F.neg(F.mul(c(8), F.mul(F.mul(b4, b4), b4))),
        ),
        F.sub(F.mul(c(27), F.mul(b6, b6)), F.mul(F.mul(c(9), b2), F.mul(b4, b6))),
    )
    return delta, c4


def specialize(family: CurveFamily, q: PrimeIdeal, pair) -> ReducedCurve:
    """Evaluate the family at a residue pair inside the residue field of q."""
    a, b = pair
    F = q.residue_field
    a_img = F.from_int(a)
    b_img = F.from_int(b)
    reduced = []
    for key in _COEFF_KEYS:
        acc = F.zero
        for i, j, c in family.coefficients[key]:
            term = residue_map(c, q).coeffs
            term = F.mul(term, F.pow(a_img, i))
            term = F.mul(term, F.pow(b_img, j))
            acc = F.add(acc, term)
        reduced.append(acc)
    delta, c4 = _residue_invariants(F, *reduced)
    if not delta:
        raise BadReductionError(
            f"specialization at pair {tuple(pair)} is singular modulo the prime over {q.ell}",
            pair=tuple(pair),
        )
    return ReducedCurve(q, *reduced, delta=delta, c4bar=c4)


def _evaluate_pair(family, primes, r, cap, pair):
    a, b = pair
    ell = primes[0].ell
    if _skip_pair(family.skip, a, b, ell):
        return (pair, "skip_predicate", None)
    values = []
    for q in primes:
        try:
            red = specialize(family, q, pair)
        except BadReductionError:
            return (pair, "bad_reduction", None)
        n = count_points(red, cap=cap)
        trace = q.norm + 1 - n
        assert trace * trace <= 4 * q.norm
        values.append(abs(resultant_quadratic_cyclotomic(trace, q.norm, TWIST_EXPONENT * r)))
    return (pair, "ok", gcd_set(values))


_WORKER_STATE: dict = {}


def _init_sweep_worker(family, primes, r, cap):
    _WORKER_STATE["args"] = (family, primes, r, cap)


def _sweep_worker_task(pair):
    family, primes, r, cap = _WORKER_STATE["args"]
    return _evaluate_pair(family, primes, r, cap, pair)


@dataclass(frozen=True)
class SweepResult:
    ell: int
    r: int
    value: int
    factorization: Factorization
    pairs: tuple        # ((a, b), R) for every included pair, lex order
    skipped: tuple      # ((a, b), reason) in lex order
    partial: bool       # True when any pair was skipped for bad reduction


def sweep_prime(family: CurveFamily, ell: int, r: int,
                jobs: int = 1, cap: int = DEFAULT_COUNT_CAP) -> SweepResult:
    if r < 1:
        raise InvalidInputError("r must be a positive integer")
    primes = split_prime(family.field, ell)
    if any(q.ramification > 1 for q in primes):
        raise UnsupportedPrimeError(
            f"auxiliary prime {ell} is ramified in the field; choose an unramified prime"
        )
    pairs = [(a, b) for a in range(ell) for b in range(ell)]
    if jobs > 1:
        ctx = multiprocessing.get_context("fork")
        with ProcessPoolExecutor(
            max_workers=jobs,
            mp_context=ctx,
            initializer=_init_sweep_worker,
            initargs=(family, primes, r, cap),
        ) as pool:
            results = list(pool.map(_sweep_worker_task, pairs, chunksize=8))
    else:
        results = [_evaluate_pair(family, primes, r, cap, p) for p in pairs]

    included = []
    skipped = []
    for pair, status, value in results:
        if status == "ok":
            included.append((pair, value))
        else:
            skipped.append((pair, status))
    if not included:
        raise EmptySweepError(
            f"every residue pair at {ell} was skipped; the prime is unusable"
        )
    value = lcm_set([v for _, v in included])
    return SweepResult(
        ell=ell,
        r=r,
        value=value,
        factorization=factorize(value),
        pairs=tuple(included),
        skipped=tuple(skipped),
        partial=any(reason == "bad_reduction" for _, reason in skipped),
    )
