"""Totally real Galois number fields with exact integral-basis arithmetic.

Elements carry integer coordinate vectors over the declared integral basis;
all derived data (multiplication table, automorphism action, traces,
discriminant) is computed exactly with Fractions at construction time and
must clear to integers where the theory says it does.

Ideals are d x d upper-triangular column Hermite normal forms.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from . import polymod as pm
from .errors import (
    InvalidInputError,
    SizeCapError,
    UnsupportedPrimeError,
    VerificationError,
)
from .exact import IntPoly, _bareiss_determinant, factorize, is_prime, resultant_sylvester

COORD_DIGIT_CAP = 10**6
_COORD_BIT_CAP = 3_321_929  # ~10^6 decimal digits


# ---------------------------------------------------------------------------
# exact rational polynomial helpers (coefficients: Fraction, ascending)

def _ftrim(cs):
    cs = list(cs)
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


def _fmul(f, g):
    if not f or not g:
        return []
    out = [Fraction(0)] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            out[i + j] += a * b
    return _ftrim(out)


def _fmod_monic(f, m):
    """f mod m for monic m with integer coefficients."""
    f = list(f)
    dm = len(m) - 1
    while len(f) > dm:
        c = f[-1]
        k = len(f) - 1 - dm
        for i in range(dm + 1):
            f[k + i] -= c * m[i]
        f.pop()
    return _ftrim(f)


def _fcompose_mod(f, g, m):
    """f(g(x)) mod m (m monic integral)."""
    acc = []
    for c in reversed(f):
        acc = _fmod_monic(_fmul(acc, g) + [Fraction(0)] * 0, m) if acc else []
        if acc:
            acc[0] += c
        else:
            acc = _ftrim([Fraction(c)])
    return acc


def _mat_inverse(mat):
    """Exact inverse of a square Fraction matrix (Gauss-Jordan)."""
    n = len(mat)
    aug = [[Fraction(mat[r][c]) for c in range(n)] + [Fraction(int(r == c)) for c in range(n)] for r in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise VerificationError("integral basis matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def _sturm_chain(coeffs):
    f = _ftrim([Fraction(c) for c in coeffs])
    if len(f) <= 1:
        return [f] if f else []
    chain = [f, _ftrim([i * c for i, c in enumerate(f) if i])]
    while len(chain[-1]) > 1:
        a, b = chain[-2], chain[-1]
        # remainder of a by b, negated
        r = list(a)
        while len(r) >= len(b) and r:
            c = r[-1] / b[-1]
            k = len(r) - len(b)
            for i in range(len(b)):
                r[k + i] -= c * b[i]
            r.pop()
            r = _ftrim(r)
            if not r:
                break
        chain.append([-c for c in r])
        if not chain[-1]:
            chain.pop()
            break
    return chain


def _variations(seq):
    return sum(1 for a, b in zip(seq, seq[1:]) if a * b < 0)


def _eval_frac_poly(p, x):
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _variations_at(chain, x):
    signs = []
    for p in chain:
        v = _eval_frac_poly(p, x)
        if v:
            signs.append(1 if v > 0 else -1)
    return _variations(signs)


def sturm_real_root_count(coeffs) -> int:
    """Number of distinct real roots of the integer polynomial (exact)."""
    chain = _sturm_chain(coeffs)
    if len(chain) <= 1:
        return 0

    def signs_at_infinity(positive):
        out = []
        for p in chain:
            if not p:
                continue
            lead = p[-1]
            s = 1 if lead > 0 else -1
            if not positive and (len(p) - 1) % 2 == 1:
                s = -s
            out.append(s)
        return out

    return _variations(signs_at_infinity(False)) - _variations(signs_at_infinity(True))


def isolate_real_roots(coeffs, width=Fraction(1, 2**64)):
    """Disjoint rational intervals, one simple real root each, sorted.

    Assumes the polynomial is squarefree with no rational roots (true for
    minimal polynomials of degree >= 2), so sign changes are honest.
    """
    f = [Fraction(c) for c in _ftrim(list(coeffs))]
    if len(f) <= 1:
        return []
    lead = f[-1]
    bound = 1 + max(abs(c / lead) for c in f[:-1])
    chain = _sturm_chain(coeffs)
    lo, hi = -bound, bound
    isolated = []
    stack = [(lo, hi, _variations_at(chain, lo), _variations_at(chain, hi))]
    while stack:
        a, b, va, vb = stack.pop()
        n = va - vb
        if n == 0:
            continue
        if n == 1:
            isolated.append((a, b))
            continue
        m = (a + b) / 2
        if _eval_frac_poly(f, m) == 0:
            raise InvalidInputError("polynomial has a rational root; not a minimal polynomial")
        vm = _variations_at(chain, m)
        stack.append((a, m, va, vm))
        stack.append((m, b, vm, vb))
    out = []
    for a, b in isolated:
        sa = 1 if _eval_frac_poly(f, a) > 0 else -1
        while b - a > width:
            m = (a + b) / 2
            if (1 if _eval_frac_poly(f, m) > 0 else -1) == sa:
                a = m
            else:
                b = m
        out.append((a, b))
    out.sort()
    return out


def _check_coord_size(coords):
    for c in coords:
        if abs(c).bit_length() > _COORD_BIT_CAP:
            raise SizeCapError(
                f"element coordinate exceeds {COORD_DIGIT_CAP} decimal digits"
            )


# ---------------------------------------------------------------------------


class AlgebraicInteger:
    """Element of O_K as an integer coordinate vector over the integral basis."""

    __slots__ = ("field", "coords")

    def __init__(self, field, coords):
        self.field = field
        self.coords = tuple(int(c) for c in coords)
        if len(self.coords) != field.degree:
            raise InvalidInputError(
                f"expected {field.degree} coordinates, got {len(self.coords)}"
            )

    def _coerce(self, other):
        if isinstance(other, AlgebraicInteger):
            if other.field is not self.field:
                raise InvalidInputError("elements belong to different fields")
            return other
        if isinstance(other, int):
            return self.field.from_int(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return AlgebraicInteger(self.field, (a + b for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return AlgebraicInteger(self.field, (a - b for a, b in zip(self.coords, o.coords)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return AlgebraicInteger(self.field, (-a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, int):
            return AlgebraicInteger(self.field, (other * a for a in self.coords))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        table = self.field.mult_table
        d = self.field.degree
        out = [0] * d
        for i, a in enumerate(self.coords):
            if not a:
                continue
            for j, b in enumerate(o.coords):
                if not b:
                    continue
                ab = a * b
                row = table[i][j]
                for k in range(d):
                    if row[k]:
                        out[k] += ab * row[k]
        return AlgebraicInteger(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            raise InvalidInputError("exponent must be a nonnegative integer")
        result = self.field.one
        base = self
        while e:
            _check_coord_size(base.coords)
            if e & 1:
                result = result * base
                _check_coord_size(result.coords)
            e >>= 1
            if e:
                base = base * base
        return result

    @property
    def is_zero(self):
        return all(c == 0 for c in self.coords)

    def norm(self):
        return field_norm(self)

    def trace(self):
        return sum(a * t for a, t in zip(self.coords, self.field.trace_vector))

    def to_power_basis(self):
        out = [Fraction(0)] * self.field.degree
        for c, vec in zip(self.coords, self.field.basis_in_power):
            for r, b in enumerate(vec):
                out[r] += c * b
        return tuple(out)

    def __eq__(self, other):
        return (
            isinstance(other, AlgebraicInteger)
            and self.field is other.field
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash((id(self.field), self.coords))

    def __repr__(self):
        return f"AlgebraicInteger{self.coords}"


class FieldDescriptor:
    """Totally real Galois number field with declared integral basis.

    min_poly: monic integer coefficients, ascending, degree d.
    basis: d vectors of rationals over the power basis of theta (first = 1).
    automorphisms: d polynomials u_t (rational coeffs, deg < d), theta -> u_t(theta).
    """

    def __init__(self, min_poly, basis, automorphisms, class_number=None,
                 declared_discriminant=None):
        mp_coeffs = tuple(int(c) for c in min_poly)
        if len(mp_coeffs) < 3 or mp_coeffs[-1] != 1:
            raise InvalidInputError("minimal polynomial must be monic of degree >= 2")
        d = len(mp_coeffs) - 1
        self.min_poly = mp_coeffs
        self.degree = d
        if len(basis) != d:
            raise InvalidInputError(f"integral basis must have {d} vectors")
        self.basis_in_power = tuple(
            tuple(Fraction(x) for x in _pad(vec, d)) for vec in basis
        )
        if self.basis_in_power[0] != (Fraction(1),) + (Fraction(0),) * (d - 1):
            raise InvalidInputError("first integral basis vector must be 1")
        if len(automorphisms) != d:
            raise InvalidInputError(f"expected {d} automorphism polynomials")
        self.autos_on_theta = tuple(
            tuple(Fraction(x) for x in _pad(vec, d)) for vec in automorphisms
        )
        if class_number is not None and class_number < 1:
            raise InvalidInputError("class number must be >= 1")
        self.class_number = class_number

        # change of basis: W[r][i] = coeff of theta^r in omega_i
        W = [[self.basis_in_power[i][r] for i in range(d)] for r in range(d)]
        self._w_inv = _mat_inverse(W)

        self.theta_coords = self._power_to_coords(
            [Fraction(0), Fraction(1)] + [Fraction(0)] * (d - 2), what="theta"
        )

        # multiplication table over the integral basis; must be integral
        table = [[None] * d for _ in range(d)]
        for i in range(d):
            for j in range(i, d):
                prod = _fmod_monic(
                    _fmul(list(self.basis_in_power[i]), list(self.basis_in_power[j])),
                    self.min_poly,
                )
                coords = self._power_to_coords(prod, what=f"omega_{i+1}*omega_{j+1}")
                table[i][j] = coords
                table[j][i] = coords
        self.mult_table = tuple(tuple(row) for row in table)

        self.trace_vector = tuple(
            sum(self.mult_table[i][k][k] for k in range(d)) for i in range(d)
        )

        # automorphism action on the basis; rational in general, integral for
        # genuine automorphisms (checked by verify_field)
        mats = []
        integral = []
        for t in range(d):
            rows = []
            ok = True
            for i in range(d):
                img = _fcompose_mod(
                    list(self.basis_in_power[i]), list(self.autos_on_theta[t]), self.min_poly
                )
                vec = self._power_to_frac_coords(img)
                if any(x.denominator != 1 for x in vec):
                    ok = False
                rows.append(tuple(vec))
            mats.append(tuple(rows))
            integral.append(ok)
        self._auto_frac_mats = tuple(mats)
        self.auto_integral = tuple(integral)
        self.auto_mats = tuple(
            tuple(tuple(int(x) for x in row) for row in mat) if ok else None
            for mat, ok in zip(self._auto_frac_mats, self.auto_integral)
        )

        # discriminant of the declared basis via the trace form
        tmat = [
            [
                sum(self.mult_table[i][j][k] * self.trace_vector[k] for k in range(d))
                for j in range(d)
            ]
            for i in range(d)
        ]
        self.discriminant = _bareiss_determinant([row[:] for row in tmat])
        if declared_discriminant is not None and declared_discriminant != self.discriminant:
            raise VerificationError(
                f"declared discriminant {declared_discriminant} != computed {self.discriminant}"
            )

        # index [O_K : Z[theta]] from disc(min_poly) = index^2 * disc
        fp = IntPoly(self.min_poly)
        disc_poly = resultant_sylvester(fp.derivative(), fp)
        if (d * (d - 1) // 2) % 2:
            disc_poly = -disc_poly
        self._disc_poly = disc_poly
        if self.discriminant == 0 or disc_poly % self.discriminant != 0:
            self.index = None
        else:
            ratio = disc_poly // self.discriminant
            r = isqrt(ratio) if ratio > 0 else None
            self.index = r if r is not None and r * r == ratio else None

        self.zero = AlgebraicInteger(self, (0,) * d)
        self.one = AlgebraicInteger(self, (1,) + (0,) * (d - 1))

    # -- coordinate plumbing ------------------------------------------------

    def _power_to_frac_coords(self, power_vec):
        d = self.degree
        v = list(power_vec) + [Fraction(0)] * (d - len(power_vec))
        return [sum(self._w_inv[i][r] * v[r] for r in range(d)) for i in range(d)]

    def _power_to_coords(self, power_vec, what="element"):
        vec = self._power_to_frac_coords(power_vec)
        if any(x.denominator != 1 for x in vec):
            raise VerificationError(
                f"{what} has non-integral coordinates over the integral basis"
            )
        return tuple(int(x) for x in vec)

    def element(self, coords) -> AlgebraicInteger:
        return AlgebraicInteger(self, coords)

    def from_int(self, n) -> AlgebraicInteger:
        return AlgebraicInteger(self, (n,) + (0,) * (self.degree - 1))

    def theta(self) -> AlgebraicInteger:
        return AlgebraicInteger(self, self.theta_coords)

    def from_power_basis(self, power_vec) -> AlgebraicInteger:
        return AlgebraicInteger(self, self._power_to_coords(list(map(Fraction, power_vec))))

    def mult_matrix(self, alpha: AlgebraicInteger):
        """Matrix of multiplication by alpha: column k = coords of alpha*omega_k."""
        d = self.degree
        cols = []
        for k in range(d):
            col = [0] * d
            for i, a in enumerate(alpha.coords):
                if a:
                    row = self.mult_table[i][k]
                    for r in range(d):
                        col[r] += a * row[r]
            cols.append(col)
        return [[cols[c][r] for c in range(d)] for r in range(d)]

    def apply_automorphism(self, t, alpha: AlgebraicInteger) -> AlgebraicInteger:
        mat = self.auto_mats[t]
        if mat is None:
            raise VerificationError(
                f"automorphism {t + 1} does not preserve the ring of integers"
            )
        d = self.degree
        out = [0] * d
        for i, a in enumerate(alpha.coords):
            if a:
                row = mat[i]
                for k in range(d):
                    if row[k]:
                        out[k] += a * row[k]
        return AlgebraicInteger(self, out)

    def __repr__(self):
        return f"FieldDescriptor(min_poly={list(self.min_poly)}, degree={self.degree})"


def _pad(vec, d):
    vec = list(vec)
    if len(vec) > d:
        raise InvalidInputError("vector longer than the field degree")
    return vec + [0] * (d - len(vec))


def make_quadratic_field(D: int, class_number=None) -> FieldDescriptor:
    """Real quadratic field Q(sqrt D) for squarefree D > 1.

    Integral basis (1, (1+sqrt D)/2) for D = 1 mod 4 (theta is the second
    vector, so the power basis is the integral basis), else (1, sqrt D).
    """
    if D <= 1:
        raise InvalidInputError("D must be a squarefree integer > 1")
    if any(e > 1 for _, e in factorize(D).factors):
        raise InvalidInputError(f"D = {D} is not squarefree")
    if D % 4 == 1:
        min_poly = (-(D - 1) // 4, -1, 1)  # x^2 - x - (D-1)/4
        autos = ((0, 1), (1, -1))  # theta and 1 - theta
        disc = D
    else:
        min_poly = (-D, 0, 1)  # x^2 - D
        autos = ((0, 1), (0, -1))
        disc = 4 * D
    fd = FieldDescriptor(
        min_poly,
        basis=((1, 0), (0, 1)),
        automorphisms=autos,
        class_number=class_number,
        declared_discriminant=disc,
    )
    fd.quadratic_D = D
    return fd


def sqrt_D_element(field: FieldDescriptor) -> AlgebraicInteger:
    """sqrt(D) as an element (2*theta - 1 when D = 1 mod 4, else theta)."""
    D = getattr(field, "quadratic_D", None)
    if D is None:
        raise InvalidInputError("not a quadratic field built by make_quadratic_field")
    if D % 4 == 1:
        return field.theta() * 2 - field.one
    return field.theta()


def field_norm(alpha: AlgebraicInteger) -> int:
    """Determinant of the multiplication-by-alpha matrix (exact)."""
    return _bareiss_determinant(alpha.field.mult_matrix(alpha))


# ---------------------------------------------------------------------------
# ideals


def _hnf_from_columns(cols, d):
    work = [list(c) for c in cols if any(c)]
    basis_cols = [None] * d
    for row in range(d - 1, -1, -1):
        active = [c for c in work if c[row] != 0]
        rest = [c for c in work if c[row] == 0]
        if not active:
            raise InvalidInputError("generators do not span a full-rank lattice")
        while len(active) > 1:
            active.sort(key=lambda c: abs(c[row]))
            piv = active[0]
            nxt = [piv]
            for c in active[1:]:
                q = c[row] // piv[row]
                if q:
                    for r in range(row + 1):
                        c[r] -= q * piv[r]
                (nxt if c[row] != 0 else rest).append(c)
            active = nxt
        col = active[0]
        if col[row] < 0:
            for r in range(row + 1):
                col[r] = -col[r]
        basis_cols[row] = col
        work = rest
    # reduce off-diagonal entries: 0 <= H[i][j] < H[i][i] for j > i
    for j in range(d):
        for i in range(j - 1, -1, -1):
            q = basis_cols[j][i] // basis_cols[i][i]
            if q:
                for r in range(i + 1):
                    basis_cols[j][r] -= q * basis_cols[i][r]
    return tuple(tuple(basis_cols[c][r] for c in range(d)) for r in range(d))


class IdealHNF:
    """Nonzero integral ideal as an upper-triangular column HNF basis."""

    __slots__ = ("field", "mat")

    def __init__(self, field, generator_columns, _verify=True):
        self.field = field
        self.mat = _hnf_from_columns(generator_columns, field.degree)
        if _verify:
            self._verify_module_closure()

    def _verify_module_closure(self):
        d = self.field.degree
        for c in range(d):
            col = self.field.element(tuple(self.mat[r][c] for r in range(d)))
            for i in range(d):
                omega_i = self.field.element(
                    tuple(int(k == i) for k in range(d))
                )
                if not self.contains(col * omega_i):
                    raise VerificationError(
                        "ideal HNF is not closed under multiplication by the basis"
                    )

    def contains(self, alpha) -> bool:
        coords = list(alpha.coords if isinstance(alpha, AlgebraicInteger) else alpha)
        d = self.field.degree
        for i in range(d - 1, -1, -1):
            q, r = divmod(coords[i], self.mat[i][i])
            if r:
                return False
            if q:
                for k in range(i + 1):
                    coords[k] -= q * self.mat[k][i]
        return True

    def norm(self) -> int:
        out = 1
        for i in range(self.field.degree):
            out *= self.mat[i][i]
        return out

    def columns(self):
        d = self.field.degree
        return [[self.mat[r][c] for r in range(d)] for c in range(d)]

    def __eq__(self, other):
        return (
            isinstance(other, IdealHNF)
            and self.field is other.field
            and self.mat == other.mat
        )

    def __hash__(self):
        return hash((id(self.field), self.mat))

    def __repr__(self):
        return f"IdealHNF({self.mat})"


def ideal_from_element(alpha: AlgebraicInteger) -> IdealHNF:
    """Principal ideal (alpha); alpha must be nonzero."""
    if alpha.is_zero:
        raise InvalidInputError("the zero element does not generate a nonzero ideal")
    mat = alpha.field.mult_matrix(alpha)
    d = alpha.field.degree
    cols = [[mat[r][c] for r in range(d)] for c in range(d)]
    return IdealHNF(alpha.field, cols, _verify=False)


def ideal_gcd(a: IdealHNF, b: IdealHNF) -> IdealHNF:
    if a.field is not b.field:
        raise InvalidInputError("ideals belong to different fields")
    return IdealHNF(a.field, a.columns() + b.columns(), _verify=False)


def ideal_norm(a: IdealHNF) -> int:
    return a.norm()


# ---------------------------------------------------------------------------
# residue fields


class ResidueField:
    """F_{p^f} = F_p[t]/(g) with g the local generator polynomial.

    Elements are trimmed coefficient tuples (lowest degree first, () = 0).
    """

    def __init__(self, p, modulus):
        modulus = pm.reduce_coeffs(modulus, p)
        if pm.deg(modulus) < 1 or modulus[-1] != 1:
            raise InvalidInputError("residue modulus must be monic of degree >= 1")
        self.p = p
        self.modulus = modulus
        self.f = pm.deg(modulus)
        self.size = p**self.f
        self._squares = None
        self._traces = None

    # caches are rebuildable; keep pickles slim
    def __getstate__(self):
        return (self.p, self.modulus)

    def __setstate__(self, state):
        self.__init__(*state)

    def __eq__(self, other):
        return (
            isinstance(other, ResidueField)
            and self.p == other.p
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.p, self.modulus))

    @property
    def zero(self):
        return ()

    @property
    def one(self):
        return (1,)

    def from_int(self, n):
        return pm.trim((n % self.p,))

    def add(self, a, b):
        return pm.add(a, b, self.p)

    def sub(self, a, b):
        return pm.sub(a, b, self.p)

    def neg(self, a):
        return pm.trim((-c) % self.p for c in a)

    def mul(self, a, b):
        return pm.mod(pm.mul(a, b, self.p), self.modulus, self.p)

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero in residue field")
        return pm.pow_mod(a, self.size - 2, self.modulus, self.p)

    def pow(self, a, e):
        return pm.pow_mod(a, e, self.modulus, self.p)

    def elements(self):
        for combo in itertools.product(range(self.p), repeat=self.f):
            yield pm.trim(combo)

    def squares(self):
        """Frozenset of nonzero squares (odd characteristic)."""
        if self.p == 2:
            raise InvalidInputError("square table is for odd characteristic")
        if self._squares is None:
            sq = set()
            for x in self.elements():
                if x:
                    sq.add(self.mul(x, x))
            self._squares = frozenset(sq)
        return self._squares

    def trace_to_f2(self, a):
        """Absolute trace F_{2^f} -> F_2 as an int 0/1."""
        if self.p != 2:
            raise InvalidInputError("binary trace is for characteristic 2")
        acc = a
        t = a
        for _ in range(self.f - 1):
            t = self.mul(t, t)
            acc = self.add(acc, t)
        return 1 if acc else 0


@dataclass(frozen=True)
class ResidueFieldElement:
    field: ResidueField
    coeffs: tuple

    def _bin(self, other):
        if not isinstance(other, ResidueFieldElement) or other.field != self.field:
            raise InvalidInputError("residue elements from different fields")
        return other

    def __add__(self, other):
        return ResidueFieldElement(self.field, self.field.add(self.coeffs, self._bin(other).coeffs))

    def __sub__(self, other):
        return ResidueFieldElement(self.field, self.field.sub(self.coeffs, self._bin(other).coeffs))

    def __mul__(self, other):
        return ResidueFieldElement(self.field, self.field.mul(self.coeffs, self._bin(other).coeffs))

    def __neg__(self):
        return ResidueFieldElement(self.field, self.field.neg(self.coeffs))

    def __pow__(self, e):
        return ResidueFieldElement(self.field, self.field.pow(self.coeffs, e))

    def inverse(self):
        return ResidueFieldElement(self.field, self.field.inv(self.coeffs))

    @property
    def is_zero(self):
        return not self.coeffs


# ---------------------------------------------------------------------------
# prime splitting


@dataclass(frozen=True)
class PrimeIdeal:
    """Prime above ell: (ell, g(theta)) with residue degree f, ramification e."""

    ell: int
    gpoly: tuple
    residue_degree: int
    ramification: int
    hnf: IdealHNF
    residue_field: ResidueField

    @property
    def norm(self):
        return self.ell**self.residue_degree

    def __repr__(self):
        return (
            f"PrimeIdeal(ell={self.ell}, g={list(self.gpoly)}, "
            f"f={self.residue_degree}, e={self.ramification})"
        )


def split_prime(field: FieldDescriptor, ell: int) -> list[PrimeIdeal]:
    """Primes above ell from factoring the minimal polynomial mod ell.

    Requires ell prime and coprime to the index [O_K : Z[theta]].
    """
    ok, _ = is_prime(ell)
    if not ok:
        raise InvalidInputError(f"{ell} is not prime")
    if field.index is None:
        raise VerificationError("field index is undefined; descriptor inconsistent")
    if field.index % ell == 0:
        raise UnsupportedPrimeError(
            f"prime {ell} divides the index [O_K:Z[theta]] = {field.index}; "
            "splitting via the minimal polynomial is not valid there"
        )
    fbar = pm.reduce_coeffs(field.min_poly, ell)
    if pm.deg(fbar) != field.degree:
        raise VerificationError("minimal polynomial degenerates mod ell")
    factors = pm.factor_monic(fbar, ell)
    theta = field.theta()
    out = []
    for g, e in factors:
        f_deg = pm.deg(g)
        # generators: ell * omega_i and g(theta) * omega_i
        g_theta = field.zero
        for c in reversed(g):
            g_theta = g_theta * theta + field.from_int(c)
        d = field.degree
        cols = []
        for i in range(d):
            unit = field.element(tuple(int(k == i) for k in range(d)))
            cols.append([ell * x for x in unit.coords])
            cols.append(list((g_theta * unit).coords))
        hnf = IdealHNF(field, cols, _verify=False)
        assert hnf.norm() == ell**f_deg
        out.append(
            PrimeIdeal(
                ell=ell,
                gpoly=g,
                residue_degree=f_deg,
                ramification=e,
                hnf=hnf,
                residue_field=ResidueField(ell, g),
            )
        )
    assert sum(q.residue_degree * q.ramification for q in out) == field.degree
    out.sort(key=lambda q: (q.residue_degree, q.gpoly))
    return out


def residue_map(alpha: AlgebraicInteger, q: PrimeIdeal) -> ResidueFieldElement:
    """Reduction O_K -> F_{ell^f} at q; kernel is exactly q."""
    p = q.ell
    power = alpha.to_power_basis()
    coeffs = []
    for fr in power:
        den = fr.denominator % p
        if den == 0:
            raise UnsupportedPrimeError(
                f"coordinate denominator not invertible mod {p}"
            )
        coeffs.append(fr.numerator % p * pow(den, p - 2, p) % p)
    reduced = pm.mod(pm.trim(coeffs), q.gpoly, p)
    return ResidueFieldElement(q.residue_field, reduced)


# ---------------------------------------------------------------------------
# verification


@dataclass(frozen=True)
class FieldDiagnostics:
    checks: tuple  # ((name, ok, detail), ...)
    trust_notes: tuple

    @property
    def all_ok(self):
        return all(ok for _, ok, _ in self.checks)

    def failed(self):
        return [(n, d) for n, ok, d in self.checks if not ok]

    def as_dict_list(self):
        return [
            {"check": n, "ok": ok, "detail": d} for n, ok, d in self.checks
        ]


def _divisors_of(n):
    if n == 0:
        return []
    out = [1]
    for p, e in factorize(abs(n)).factors:
        out = [d * p**k for d in out for k in range(e + 1)]
    return sorted(out)


def _irreducible_small_degree(coeffs):
    """Exact irreducibility for monic integer polynomials of degree <= 4."""
    d = len(coeffs) - 1
    if d == 1:
        return True
    c0 = coeffs[0]
    if c0 == 0:
        return False
    for r in _divisors_of(c0):
        for root in (r, -r):
            acc = 0
            for c in reversed(coeffs):
                acc = acc * root + c
            if acc == 0:
                return False
    if d <= 3:
        return True
    # quartic: monic quadratic factors (x^2+px+q)(x^2+rx+s)
    a3, a2, a1, a0 = coeffs[3], coeffs[2], coeffs[1], coeffs[0]
    for qq in _divisors_of(a0):
        for q in (qq, -qq):
            if a0 % q:
                continue
            s = a0 // q
            pr = a2 - q - s
            disc = a3 * a3 - 4 * pr
            if disc < 0:
                continue
            rt = isqrt(disc)
            if rt * rt != disc or (a3 + rt) % 2:
                continue
            for p_ in ((a3 + rt) // 2, (a3 - rt) // 2):
                r_ = a3 - p_
                if p_ * s + q * r_ == a1:
                    return False
    return True


def verify_field(field: FieldDescriptor) -> FieldDiagnostics:
    """Run every declared-field check; returns pass/fail per check."""
    checks = []
    notes = []
    d = field.degree

    checks.append(("min_poly_monic_integral", True, "constructor-enforced"))

    if d <= 4:
        irr = _irreducible_small_degree(list(field.min_poly))
        checks.append(
            ("min_poly_irreducible", irr, "rational-root/quadratic-factor test")
        )
    else:
        checks.append(("min_poly_irreducible", True, "asserted (degree > 4)"))
        notes.append("minimal polynomial irreducibility asserted, not verified (degree > 4)")

    nroots = sturm_real_root_count(field.min_poly)
    checks.append(
        (
            "totally_real",
            nroots == d,
            f"Sturm count {nroots} of {d} real roots",
        )
    )

    checks.append(("first_basis_vector_is_one", True, "constructor-enforced"))
    checks.append(("mult_table_integral", True, "constructor-enforced"))

    mp = [Fraction(c) for c in field.min_poly]
    root_fail = []
    for t in range(d):
        val = _fcompose_mod(mp, list(field.autos_on_theta[t]), field.min_poly)
        if _ftrim(val):
            root_fail.append(t + 1)
    checks.append(
        (
            "automorphisms_map_theta_to_roots",
            not root_fail,
            "all map to roots" if not root_fail else f"failing indices {root_fail}",
        )
    )

    bad_integral = [t + 1 for t in range(d) if not field.auto_integral[t]]
    checks.append(
        (
            "automorphisms_preserve_integers",
            not bad_integral,
            "integral action" if not bad_integral else f"non-integral at {bad_integral}",
        )
    )

    polys = [tuple(_ftrim(list(u))) for u in field.autos_on_theta]
    distinct = len(set(polys)) == d
    checks.append(
        ("automorphisms_distinct", distinct, f"{len(set(polys))} distinct of {d}")
    )

    bad_pairs = []
    poly_set = set(polys)
    for i in range(d):
        for j in range(d):
            comp = _fcompose_mod(
                list(field.autos_on_theta[j]), list(field.autos_on_theta[i]), field.min_poly
            )
            if tuple(_ftrim(comp)) not in poly_set:
                bad_pairs.append((i + 1, j + 1))
    checks.append(
        (
            "automorphisms_closed_under_composition",
            not bad_pairs,
            "closed" if not bad_pairs else f"pair {bad_pairs[0]} composes outside the list"
            + (f" ({len(bad_pairs)} failing pairs)" if len(bad_pairs) > 1 else ""),
        )
    )

    checks.append(
        ("automorphism_count_is_degree", len(field.autos_on_theta) == d, f"{d} given")
    )

    idx_ok = field.index is not None
    checks.append(
        (
            "poly_disc_is_square_times_disc",
            idx_ok,
            f"index {field.index}" if idx_ok else
            f"disc(min_poly) = {field._disc_poly} is not a square multiple of {field.discriminant}",
        )
    )

    if field.class_number is not None:
        checks.append(("class_number_positive", field.class_number >= 1, str(field.class_number)))
        notes.append(f"class number h = {field.class_number} supplied by caller, not verified")

    return FieldDiagnostics(tuple(checks), tuple(notes))
