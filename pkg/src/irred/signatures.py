"""Signature-twisted unit norms and the composite level bound B.

For each non-constant exponent vector s over the automorphism group (every
entry 0 or 12), the twisted norm of a unit u is prod_t tau_t(u)^s_t.  The
per-signature invariant is the absolute norm of the gcd ideal of all
(twisted norm - 1); B is their lcm over every non-constant signature.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import DegeneracyError, InvalidInputError
from .exact import Factorization, factorize, lcm_set
from .field import AlgebraicInteger, FieldDescriptor, ideal_from_element, ideal_gcd
from .units import UnitBasis

TWIST_EXPONENT = 12


def enumerate_nonconstant_signatures(d: int):
    """All vectors in {0, 12}^d except the two constant ones, in binary
    counting order (low bit is the first slot)."""
    if d < 2:
        raise InvalidInputError("signatures need degree >= 2")
    out = []
    for mask in range(1, 2**d - 1):
        out.append(tuple(TWIST_EXPONENT if (mask >> i) & 1 else 0 for i in range(d)))
    return out


def _validate_signature(field, signature, require_nonconstant):
    s = tuple(signature)
    if len(s) != field.degree:
        raise InvalidInputError(
            f"signature length {len(s)} != field degree {field.degree}"
        )
    if any(x not in (0, TWIST_EXPONENT) for x in s):
        raise InvalidInputError(f"signature entries must be 0 or {TWIST_EXPONENT}")
    if require_nonconstant and len(set(s)) == 1:
        raise InvalidInputError("signature must be non-constant")
    return s


def twisted_norm(field: FieldDescriptor, signature, alpha: AlgebraicInteger) -> AlgebraicInteger:
    s = _validate_signature(field, signature, require_nonconstant=False)
    out = field.one
    for t, e in enumerate(s):
        if e:
            out = out * field.apply_automorphism(t, alpha) ** e
    return out


def compute_A_s(field: FieldDescriptor, units, signature) -> int:
    """Norm of the gcd ideal of (twisted norm - 1) over the units.

    Units whose twisted norm is exactly 1 contribute the zero ideal and are
    skipped; if every unit degenerates this way the result is 0.
    """
    _validate_signature(field, signature, require_nonconstant=True)
    ideal = None
    for u in units:
        term = twisted_norm(field, signature, u) - field.one
        if term.is_zero:
            continue
        pid = ideal_from_element(term)
        ideal = pid if ideal is None else ideal_gcd(ideal, pid)
    if ideal is None:
        return 0
    return ideal.norm()


@dataclass(frozen=True)
class BBound:
    value: int
    factorization: Factorization
    per_signature: tuple  # ((signature, A_s), ...) in enumeration order

    @property
    def prime_support(self):
        return self.factorization.prime_support()


def compute_B(field: FieldDescriptor, units) -> BBound:
    """lcm of the per-signature invariants over all non-constant signatures.

    Raises DegeneracyError when some signature degenerates to 0: the bound
    carries no information there and the caller must refuse to certify.
    """
    if isinstance(units, UnitBasis):
        units = units.units
    units = list(units)
    if not units:
        raise DegeneracyError("no units supplied; the bound is undefined")
    rows = []
    for s in enumerate_nonconstant_signatures(field.degree):
        a = compute_A_s(field, units, s)
        if a == 0:
            raise DegeneracyError(
                f"every twisted norm at signature {s} equals 1; "
                "the bound degenerates for this unit basis"
            )
        rows.append((s, a))
    value = lcm_set([a for _, a in rows])
    return BBound(value=value, factorization=factorize(value), per_signature=tuple(rows))
