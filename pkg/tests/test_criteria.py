import pytest

from irred.criteria import (
    BadPrimeSet,
    CriterionResult,
    assemble_bad_primes,
    general_resultant_criterion,
    merel_bound,
    resultant_criterion,
)
from irred.curves import FrobeniusData, WeierstrassCurve, frobenius_data
from irred.errors import InvalidInputError
from irred.exact import IntPoly, resultant_sylvester
from irred.field import field_norm, make_quadratic_field, split_prime


@pytest.fixture(scope="module")
def K13():
    return make_quadratic_field(13, class_number=1)


@pytest.fixture(scope="module")
def fd_trace1(K13):
    # y^2 = x^3 + x^2 + 2 has exactly 3 points over F_3
    E = WeierstrassCurve(K13, (0, 1, 0, 0, 2))
    q3 = split_prime(K13, 3)[0]
    fd = frobenius_data(E, q3)
    assert (fd.norm, fd.trace) == (3, 1)
    return fd


def test_resultant_criterion_frozen_trace1(fd_trace1):
    res = resultant_criterion(fd_trace1, 1)
    assert res.resultant == 532800
    assert res.factorization.as_dict() == {2: 6, 3: 2, 5: 2, 37: 1}
    assert res.r == 1 and res.norm == 3


def test_resultant_criterion_frozen_trace0():
    K11 = make_quadratic_field(11)
    E = WeierstrassCurve(K11, (0, 0, 0, 0, 1))
    q5 = split_prime(K11, 5)[0]
    fd = frobenius_data(E, q5)
    assert (fd.norm, fd.trace) == (5, 0)
    res = resultant_criterion(fd, 1)
    assert res.resultant == 244109376
    assert res.factorization.as_dict() == {2: 6, 3: 4, 7: 2, 31: 2}


def test_resultant_criterion_degenerate_zero(K13):
    q3 = split_prime(K13, 3)[0]
    synthetic = FrobeniusData(q=q3, norm=1, point_count=0, trace=2)
    res = resultant_criterion(synthetic, 1)
    assert res.resultant == 0
    assert res.factorization is None


def test_resultant_matches_sylvester(fd_trace1):
    for r in (1, 2):
        res = resultant_criterion(fd_trace1, r)
        direct = resultant_sylvester(
            IntPoly.quadratic_frobenius(fd_trace1.trace, fd_trace1.norm),
            IntPoly.power_minus_one(12 * r),
        )
        assert res.resultant == direct


def test_resultant_divisibility_in_r(fd_trace1):
    base = resultant_criterion(fd_trace1, 1).resultant
    for k in (2, 3, 4):
        assert resultant_criterion(fd_trace1, k).resultant % base == 0
    with pytest.raises(InvalidInputError):
        resultant_criterion(fd_trace1, 0)


def _frobenius_power_linear(a, n, m):
    # X^m mod (X^2 - aX + n) as a pair (u, v) meaning u*X + v
    u, v = 0, 1  # X^0
    bit = 1 << (m.bit_length() - 1)
    while bit:
        # square: (uX + v)^2 = (u^2 a + 2uv) X + (v^2 - u^2 n)
        u, v = u * u * a + 2 * u * v, v * v - u * u * n
        if m & bit:
            u, v = u * a + v, -u * n
        bit >>= 1
    return u, v


def test_general_criterion_symmetric_function_oracle(K13, fd_trace1):
    eps = K13.element((1, 1))
    gamma = eps**12
    value, norm = general_resultant_criterion(fd_trace1, 1, gamma)
    u, v = _frobenius_power_linear(fd_trace1.trace, fd_trace1.norm, 12)
    shift = K13.from_int(v) - gamma
    oracle = K13.from_int(u * u * fd_trace1.norm) + shift * (u * fd_trace1.trace) + shift * shift
    assert value == oracle
    assert norm == field_norm(oracle)
    assert norm != 0


def test_general_criterion_constant_specializations(K13, fd_trace1):
    value, norm = general_resultant_criterion(fd_trace1, 1, K13.one)
    plain = resultant_criterion(fd_trace1, 1).resultant
    assert value == K13.from_int(plain)
    assert norm == plain**2
    value0, norm0 = general_resultant_criterion(fd_trace1, 1, K13.zero)
    assert value0 == K13.from_int(3**12)
    assert norm0 == 3 ** (12 * 2)


def test_merel_bound():
    assert merel_bound(2, 1) == 282430599364
    assert merel_bound(1, 1) == 532900
    assert merel_bound(2, 2) > merel_bound(2, 1)
    with pytest.raises(InvalidInputError):
        merel_bound(0, 1)
    with pytest.raises(InvalidInputError):
        merel_bound(2, 0)


R17_PUBLISHED = (
    2**8 * 3**4 * 5**2 * 7**2 * 13**2 * 19 * 23 * 53 * 97 * 281 * 21481 * 22777
)


def test_assembly_reproduces_empty_beyond_baseline(K13):
    bps = assemble_bad_primes(
        K13, 1684800, {3: [532800], 17: [R17_PUBLISHED]}
    )
    assert bps.primes == [2, 3, 5, 7, 13]
    assert bps.beyond_baseline(K13) == []
    assert "ramified" in bps.reasons_for(13)
    assert "small_prime_rule" in bps.reasons_for(13)
    assert "auxiliary_prime" in bps.reasons_for(3)


def test_assembly_no_aux_primes(K13):
    bps = assemble_bad_primes(K13, 1684800, {})
    assert bps.primes == [2, 3, 5, 7, 13]
    bps2 = assemble_bad_primes(K13, 1684800, {}, additive_residue_chars=[11])
    assert bps2.primes == [2, 3, 5, 7, 11, 13]
    assert bps2.reasons_for(11) == ("additive_residue_char",)


def test_assembly_single_prime_gains(K13):
    bps = assemble_bad_primes(K13, 1684800, {5: [244109376]})
    assert bps.primes == [2, 3, 5, 7, 13, 31]
    assert bps.reasons_for(31) == ("survives_all_resultants",)
    assert "auxiliary_prime" in bps.reasons_for(5)
    assert bps.beyond_baseline(K13) == [31]


def test_assembly_monotone_in_aux_primes(K13):
    one = assemble_bad_primes(K13, 1684800, {5: [244109376]})
    two = assemble_bad_primes(K13, 1684800, {5: [244109376], 3: [532800]})
    assert set(two.primes) <= set(one.primes)
    assert two.primes == [2, 3, 5, 7, 13]


def test_assembly_gcd_across_primes_above_ell(K13):
    # two values at the same ell are gcd'd before divisors are taken
    bps = assemble_bad_primes(K13, 1684800, {5: [244109376, 31 * 2**6]})
    assert 31 in bps.primes
    bps2 = assemble_bad_primes(K13, 1684800, {5: [244109376, 2**6 * 3]})
    assert 31 not in bps2.primes


def test_assembly_errors(K13):
    with pytest.raises(InvalidInputError):
        assemble_bad_primes(K13, 1684800, {5: []})
    with pytest.raises(InvalidInputError):
        assemble_bad_primes(K13, 0, {})
    with pytest.raises(InvalidInputError):
        assemble_bad_primes(K13, 1684800, {}, additive_residue_chars=[12])
    with pytest.raises(InvalidInputError):
        assemble_bad_primes(K13, 1684800, {5: [0, 0]})


def test_bad_prime_set_serialization(K13):
    bps = assemble_bad_primes(K13, 1684800, {5: [244109376]})
    rows = bps.as_dict_list()
    assert rows[0]["p"] == "2"
    assert all(isinstance(r["reasons"], list) and r["reasons"] for r in rows)
    assert isinstance(bps, BadPrimeSet)
    assert isinstance(resultant_criterion, object)  # module import sanity


def test_criterion_result_is_frozen(fd_trace1):
    res = resultant_criterion(fd_trace1, 1)
    with pytest.raises(AttributeError):
        res.resultant = 1
    assert isinstance(res, CriterionResult)
