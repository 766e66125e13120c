import pytest

from irred.errors import DegeneracyError, InvalidInputError
from irred.field import FieldDescriptor, make_quadratic_field
from irred.signatures import (
    compute_A_s,
    compute_B,
    enumerate_nonconstant_signatures,
    twisted_norm,
)
from irred.units import fundamental_unit_quadratic, unit_basis_for


def test_signature_enumeration_order():
    assert enumerate_nonconstant_signatures(2) == [(12, 0), (0, 12)]
    assert enumerate_nonconstant_signatures(3) == [
        (12, 0, 0),
        (0, 12, 0),
        (12, 12, 0),
        (0, 0, 12),
        (12, 0, 12),
        (0, 12, 12),
    ]
    assert len(enumerate_nonconstant_signatures(4)) == 14
    with pytest.raises(InvalidInputError):
        enumerate_nonconstant_signatures(1)


def test_signature_validation():
    K = make_quadratic_field(13)
    eps = K.element((1, 1))
    with pytest.raises(InvalidInputError):
        twisted_norm(K, (12, 7), eps)
    with pytest.raises(InvalidInputError):
        twisted_norm(K, (12,), eps)
    with pytest.raises(InvalidInputError):
        compute_A_s(K, [eps], (12, 12))


def test_twisted_norm_values():
    K = make_quadratic_field(13)
    eps = K.element((1, 1))
    assert twisted_norm(K, (12, 0), eps) == eps**12
    conj = K.apply_automorphism(1, eps)
    assert twisted_norm(K, (0, 12), eps) == conj**12
    # both-slots twist of a norm -1 unit: (eps * conj)^12 = (-1)^12 = 1
    assert twisted_norm(K, (12, 12), eps) == K.one


def test_A_s_frozen_13():
    K = make_quadratic_field(13)
    eps = K.element((1, 1))
    assert compute_A_s(K, [eps], (12, 0)) == 1684800
    assert compute_A_s(K, [eps], (0, 12)) == 1684800


def test_B_frozen_values():
    for D, expected, support in (
        (13, 1684800, {2, 3, 5, 13}),
        (5, 320, {2, 5}),
        (2, 39200, {2, 5, 7}),
    ):
        K = make_quadratic_field(D)
        bb = compute_B(K, unit_basis_for(K))
        assert bb.value == expected, f"D={D}"
        assert bb.prime_support == support
        assert bb.factorization.value() == expected
        assert len(bb.per_signature) == 2


def test_B_degenerate_unit():
    K = make_quadratic_field(13)
    with pytest.raises(DegeneracyError):
        compute_B(K, [K.one])
    with pytest.raises(DegeneracyError):
        compute_B(K, [])


def test_A_s_divisibility_under_powers():
    K = make_quadratic_field(13)
    eps = K.element((1, 1))
    for s in enumerate_nonconstant_signatures(2):
        a1 = compute_A_s(K, [eps], s)
        a3 = compute_A_s(K, [eps**3], s)
        assert a3 % a1 == 0
        assert a3 > a1


def test_A_s_gcd_shrinks_with_more_units():
    # adding units can only shrink (divide) the per-signature invariant
    K = make_quadratic_field(13)
    eps = K.element((1, 1))
    for s in enumerate_nonconstant_signatures(2):
        single = compute_A_s(K, [eps**2], s)
        both = compute_A_s(K, [eps**2, eps**3], s)
        assert single % both == 0


def test_quartic_signature_sweep_runs():
    K = FieldDescriptor(
        min_poly=(1, 0, -10, 0, 1),
        basis=((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)),
        automorphisms=(
            (0, 1, 0, 0),
            (0, 10, 0, -1),
            (0, -10, 0, 1),
            (0, -1, 0, 0),
        ),
    )
    units = [K.theta(), K.element((3, -9, 0, 1)), K.element((7, 22, 0, -2))]
    bb = compute_B(K, units)
    assert bb.value > 0
    assert len(bb.per_signature) == 14
    assert bb.value % compute_A_s(K, units, (12, 0, 0, 0)) == 0
