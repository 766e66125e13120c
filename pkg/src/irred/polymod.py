"""Polynomial arithmetic and factorization over prime fields F_p.

Polynomials are tuples of ints in [0, p), lowest degree first, normalized
(no trailing zeros; the zero polynomial is ()). Degrees here are tiny
(bounded by the number-field degree), so clarity beats asymptotics.
"""
from __future__ import annotations

import random

from .errors import InvalidInputError

X = (0, 1)


def trim(cs):
    cs = list(cs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def reduce_coeffs(cs, p):
    return trim(c % p for c in cs)


def deg(f):
    return len(f) - 1


def add(f, g, p):
    n = max(len(f), len(g))
    f = f + (0,) * (n - len(f))
    g = g + (0,) * (n - len(g))
    return trim((a + b) % p for a, b in zip(f, g))


def sub(f, g, p):
    n = max(len(f), len(g))
    f = f + (0,) * (n - len(f))
    g = g + (0,) * (n - len(g))
    return trim((a - b) % p for a, b in zip(f, g))


def scalar_mul(c, f, p):
    c %= p
    if c == 0:
        return ()
    return trim(c * a % p for a in f)


def mul(f, g, p):
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return trim(out)


def divmod_poly(f, g, p):
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(g[-1], p - 2, p)
    quot = [0] * max(0, len(f) - len(g) + 1)
    rem = list(f)
    dg = deg(g)
    while len(rem) >= len(g):
        c = rem[-1] * inv_lead % p
        k = len(rem) - len(g)
        if c:
            quot[k] = c
            for i, b in enumerate(g):
                rem[k + i] = (rem[k + i] - c * b) % p
        rem.pop()
    return trim(quot), trim(rem)


def mod(f, g, p):
    return divmod_poly(f, g, p)[1]


def monic(f, p):
    if not f:
        return f
    if f[-1] == 1:
        return f
    return scalar_mul(pow(f[-1], p - 2, p), f, p)


def gcd_poly(f, g, p):
    while g:
        f, g = g, mod(f, g, p)
    return monic(f, p)


def pow_mod(f, e, modulus, p):
    result = (1,)
    base = mod(f, modulus, p)
    while e:
        if e & 1:
            result = mod(mul(result, base, p), modulus, p)
        base = mod(mul(base, base, p), modulus, p)
        e >>= 1
    return result


def derivative(f, p):
    return trim(i * c % p for i, c in enumerate(f) if i)


def evaluate(f, x, p):
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % p
    return acc


def _pth_root(f, p):
    # in F_p, f = g(x^p) means f is g^p with g's coefficients at indices p*i
    return trim(f[i] for i in range(0, len(f), p))


def squarefree_decomposition(f, p):
    """Multiset {squarefree monic factor: multiplicity}, char-p aware."""
    out: dict[tuple, int] = {}
    e = 1
    f = monic(f, p)
    while deg(f) > 0:
        df = derivative(f, p)
        if not df:
            f = _pth_root(f, p)
            e *= p
            continue
        c = gcd_poly(f, df, p)
        w, _ = divmod_poly(f, c, p)
        j = 1
        while deg(w) > 0:
            y = gcd_poly(w, c, p)
            z, _ = divmod_poly(w, y, p)
            if deg(z) > 0:
                out[z] = out.get(z, 0) + e * j
            w = y
            c, _ = divmod_poly(c, y, p)
            j += 1
        f = c
    return out


def _distinct_degree(f, p):
    """[(product of irreducibles of degree k, k)] for squarefree monic f."""
    out = []
    h = X
    k = 0
    while deg(f) >= 2 * (k + 1):
        k += 1
        h = pow_mod(h, p, f, p)
        g = gcd_poly(f, sub(h, X, p), p)
        if deg(g) > 0:
            out.append((g, k))
            f, _ = divmod_poly(f, g, p)
            h = mod(h, f, p)
    if deg(f) > 0:
        out.append((f, deg(f)))
    return out


def _equal_degree_split(f, k, p, rng):
    """One nontrivial monic factor of f (product of >= 2 irreducibles, all of
    degree k), by Cantor-Zassenhaus (odd p) or trace splitting (p = 2)."""
    n = deg(f)
    while True:
        r = trim(rng.randrange(p) for _ in range(n))
        if deg(r) < 1:
            continue
        g = gcd_poly(f, r, p)
        if 0 < deg(g) < n:
            return g
        if p == 2:
            t = r
            acc = r
            for _ in range(k - 1):
                t = pow_mod(t, 2, f, p)
                acc = add(acc, t, p)
            g = gcd_poly(f, acc, p)
        else:
            t = pow_mod(r, (p**k - 1) // 2, f, p)
            g = gcd_poly(f, sub(t, (1,), p), p)
        if 0 < deg(g) < n:
            return g


def _equal_degree_factor(f, k, p, rng):
    if deg(f) == k:
        return [f]
    g = _equal_degree_split(f, k, p, rng)
    h, _ = divmod_poly(f, g, p)
    return _equal_degree_factor(g, k, p, rng) + _equal_degree_factor(h, k, p, rng)


def factor_monic(f, p):
    """Full factorization of monic f over F_p: sorted [(irreducible, mult)].

    Deterministic: the equal-degree rng is seeded from (p, f).
    """
    f = reduce_coeffs(f, p)
    if deg(f) < 1:
        raise InvalidInputError("cannot factor a constant polynomial")
    if f[-1] != 1:
        raise InvalidInputError("factor_monic expects a monic polynomial")
    rng = random.Random(repr((p, f)))
    factors: dict[tuple, int] = {}
    for sqfree, mult in squarefree_decomposition(f, p).items():
        for prod, k in _distinct_degree(sqfree, p):
            for irr in _equal_degree_factor(prod, k, p, rng):
                factors[irr] = factors.get(irr, 0) + mult
    result = sorted(factors.items(), key=lambda t: (deg(t[0]), t[0]))
    check = (1,)
    for g, e in result:
        for _ in range(e):
            check = mul(check, g, p)
    if check != f:
        raise AssertionError("factorization self-check failed")
    return result


def is_irreducible(f, p):
    f = monic(reduce_coeffs(f, p), p)
    if deg(f) < 1:
        return False
    facs = factor_monic(f, p)
    return len(facs) == 1 and facs[0][1] == 1


def random_irreducible(p, degree, seed):
    """Deterministic monic irreducible of the given degree over F_p."""
    rng = random.Random(repr((p, degree, seed)))
    if degree < 1:
        raise InvalidInputError("degree must be >= 1")
    while True:
        f = tuple(rng.randrange(p) for _ in range(degree)) + (1,)
        if is_irreducible(f, p):
            return f
