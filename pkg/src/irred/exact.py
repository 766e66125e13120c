"""Exact integer arithmetic: resultants, Lucas power sums, factorization.

Everything here is plain bignum arithmetic; no floats anywhere.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import gcd, isqrt

from .errors import InvalidInputError

TRIAL_DIVISION_BOUND = 10**6
# Jaeschke / Sorenson-Webster: the first seven prime bases are a complete
# Miller-Rabin certificate below this threshold.
_MR_DETERMINISTIC_BELOW = 3_317_044_064_679_887_385_961_981
_MR_SMALL_DETERMINISTIC = 341_550_071_728_321  # bases 2..17 suffice below this
_MR_ROUNDS = 64


class IntPoly:
    """Univariate integer polynomial, coefficients stored lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def quadratic_frobenius(cls, a, n):
        """X^2 - a*X + n."""
        return cls((n, -a, 1))

    @classmethod
    def power_minus_one(cls, m):
        """X^m - 1."""
        if m < 1:
            raise InvalidInputError("exponent must be >= 1")
        return cls((-1,) + (0,) * (m - 1) + (1,))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def is_zero(self):
        return not self.coeffs

    def leading(self):
        if self.is_zero:
            raise InvalidInputError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def evaluate(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self):
        return IntPoly(tuple(i * c for i, c in enumerate(self.coeffs) if i))

    def __mul__(self, other):
        if self.is_zero or other.is_zero:
            return IntPoly(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPoly(out)

    def __eq__(self, other):
        return isinstance(other, IntPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"IntPoly({list(self.coeffs)})"


def _bareiss_determinant(mat):
    """Exact determinant by fraction-free (Bareiss) elimination.

    Rows whose multiplier is zero only need the pivot/prev rescale, which is
    the identity whenever pivot == prev; skipping those keeps banded matrices
    with unit pivots (monic Sylvester blocks) at O(n) bignum work.
    """
    n = len(mat)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if mat[k][k] == 0:
            for i in range(k + 1, n):
                if mat[i][k] != 0:
                    mat[k], mat[i] = mat[i], mat[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = mat[k][k]
        rescale = pivot != prev
        rowk = mat[k]
        for i in range(k + 1, n):
            rowi = mat[i]
            mik = rowi[k]
            if mik == 0:
                if rescale:
                    for j in range(k + 1, n):
                        if rowi[j]:
                            rowi[j] = rowi[j] * pivot // prev
                continue
            for j in range(k + 1, n):
                rowi[j] = (rowi[j] * pivot - mik * rowk[j]) // prev
            rowi[k] = 0
        prev = pivot
    return sign * mat[n - 1][n - 1]


def resultant_sylvester(f: IntPoly, g: IntPoly) -> int:
    """Signed resultant of f and g from the Sylvester matrix (f-rows first).

    The value equals lc(g)^deg(f) * prod f(beta) over the roots beta of g,
    i.e. (-1)^(deg f * deg g) times the determinant of the standard
    f-rows-first Sylvester matrix. Slow but independent path; the production
    quadratic-cyclotomic case goes through the Lucas closed form.
    """
    if f.is_zero and g.is_zero:
        raise InvalidInputError("resultant of two zero polynomials")
    if f.is_zero or g.is_zero:
        return 0
    p, q = f.degree, g.degree
    if p == 0:
        return f.coeffs[0] ** q
    if q == 0:
        return g.coeffs[0] ** p
    fd = list(reversed(f.coeffs))
    gd = list(reversed(g.coeffs))
    size = p + q
    mat = []
    for i in range(q):
        mat.append([0] * i + fd + [0] * (q - 1 - i))
    for i in range(p):
        mat.append([0] * i + gd + [0] * (p - 1 - i))
    assert all(len(r) == size for r in mat)
    det = _bareiss_determinant(mat)
    return -det if (p * q) % 2 else det


def lucas_power_sum(a: int, n: int, m: int) -> int:
    """s_m where s_0 = 2, s_1 = a, s_k = a*s_{k-1} - n*s_{k-2}.

    Closed form: s_m = phi^m + phibar^m for the roots of X^2 - a*X + n.
    Fast doubling: s_{2k} = s_k^2 - 2 n^k, s_{2k+1} = s_k s_{k+1} - a n^k.
    """
    if m < 0:
        raise InvalidInputError("power-sum index must be >= 0")
    if m == 0:
        return 2
    sk, sk1, nk = 2, a, 1  # s_0, s_1, n^0
    for bit in bin(m)[2:]:
        # (s_k, s_{k+1}) -> (s_{2k}, s_{2k+1})
        sk, sk1, nk = sk * sk - 2 * nk, sk * sk1 - a * nk, nk * nk
        if bit == "1":
            sk, sk1, nk = sk1, a * sk1 - n * sk, nk * n
    return sk


def resultant_quadratic_cyclotomic(a: int, n: int, m: int) -> int:
    """Resultant of X^2 - a*X + n against X^m - 1 via the closed form.

    Equals resultant_sylvester on the same pair: n^m - s_m + 1.
    """
    if m < 1:
        raise InvalidInputError("cyclotomic exponent must be >= 1")
    if n < 1:
        raise InvalidInputError("constant term must be >= 1")
    return n**m - lucas_power_sum(a, n, m) + 1


@dataclass(frozen=True)
class Factorization:
    """Prime factorization with a sign; `probable` lists factors that only
    passed the probabilistic primality test."""

    sign: int
    factors: tuple  # ((prime, exponent), ...) sorted by prime
    probable: frozenset = field(default_factory=frozenset)

    @property
    def certified(self):
        return not self.probable

    def as_dict(self):
        return dict(self.factors)

    def value(self):
        v = self.sign
        for p, e in self.factors:
            v *= p**e
        return v

    def prime_support(self):
        return {p for p, _ in self.factors}

    def render(self):
        """Human-readable "2^6*3^4*5^2*13" form."""
        if not self.factors:
            core = "1"
        else:
            core = "*".join(f"{p}^{e}" if e > 1 else f"{p}" for p, e in self.factors)
        return ("-" if self.sign < 0 else "") + core


_prime_cache: list[int] = []


def _trial_primes():
    global _prime_cache
    if not _prime_cache:
        bound = TRIAL_DIVISION_BOUND
        sieve = bytearray([1]) * (bound + 1)
        sieve[0] = sieve[1] = 0
        for i in range(2, isqrt(bound) + 1):
            if sieve[i]:
                sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
        _prime_cache = [i for i in range(2, bound + 1) if sieve[i]]
    return _prime_cache


def _miller_rabin_witness(n, a):
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return False
    for _ in range(r - 1):
        x = x * x % n
        if x == n - 1:
            return False
    return True


def is_prime(n: int) -> tuple[bool, bool]:
    """(is_prime, certified). Deterministic Miller-Rabin below the published
    small-base thresholds, 64 seeded rounds above (certified=False there)."""
    if n < 2:
        return False, True
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p, True
    if n < 41 * 41:
        return True, True
    if n < _MR_SMALL_DETERMINISTIC:
        bases = (2, 3, 5, 7, 11, 13, 17)
        return all(not _miller_rabin_witness(n, a) for a in bases), True
    if n < _MR_DETERMINISTIC_BELOW:
        bases = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
        return all(not _miller_rabin_witness(n, a) for a in bases), True
    rng = random.Random(n)
    for _ in range(_MR_ROUNDS):
        a = rng.randrange(2, n - 1)
        if _miller_rabin_witness(n, a):
            return False, True
    return True, False


def _pollard_brent(n, rng):
    """One nontrivial factor of composite odd n (Brent's cycle variant)."""
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r <<= 1
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g


def factorize(n: int) -> Factorization:
    """Full factorization: trial division to 10^6, then Pollard rho (Brent).

    Deterministic for a given n (rho rng is seeded from the cofactor).
    """
    if n == 0:
        raise InvalidInputError("cannot factor 0")
    sign = 1 if n > 0 else -1
    n = abs(n)
    factors: dict[int, int] = {}
    probable = set()
    for p in _trial_primes():
        if p * p > n:
            break
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    if n > 1:
        if n <= TRIAL_DIVISION_BOUND * TRIAL_DIVISION_BOUND:
            # no factor up to 10^6 survived, so the cofactor is prime
            factors[n] = factors.get(n, 0) + 1
        else:
            stack = [n]
            while stack:
                m = stack.pop()
                prime, certified = is_prime(m)
                if prime:
                    factors[m] = factors.get(m, 0) + 1
                    if not certified:
                        probable.add(m)
                    continue
                d = _pollard_brent(m, random.Random(m))
                stack.append(d)
                stack.append(m // d)
    return Factorization(sign, tuple(sorted(factors.items())), frozenset(probable))


def gcd_set(values) -> int:
    """gcd of a collection (absolute values; gcd of all zeros is 0)."""
    g = 0
    for v in values:
        g = gcd(g, abs(v))
    return g


def lcm_set(values) -> int:
    """lcm of a collection of nonzero integers (positive result)."""
    out = 1
    seen = False
    for v in values:
        if v == 0:
            raise InvalidInputError("lcm of a set containing 0")
        seen = True
        v = abs(v)
        out = out // gcd(out, v) * v
    if not seen:
        raise InvalidInputError("lcm of an empty set")
    return out
