import pytest
from hypothesis import given, strategies as st

from gl2lab.errors import InvalidModulus, MismatchedField, NotAUnit, NotPrime, ZeroInverse
from gl2lab.residue import (
    KENKU_DEGREES,
    QQ_ORBIT_PRIMES,
    QuadExtElem,
    divisors,
    euler_phi,
    inv_mod,
    is_eth_power,
    is_prime,
    large_prime_threshold,
    least_generator,
    minus_one_power_exception,
    multiplicative_order,
    primes_up_to,
    product_of_primes,
    product_of_primes_up_to,
    qpow,
    quad_ext_arith,
    quad_ext_generator,
    sqrt_mod,
)

SMALL_PRIMES = [p for p in primes_up_to(60) if p >= 3]


def test_is_prime_matches_trial_division():
    for n in range(-3, 400):
        assert is_prime(n) == (n >= 2 and all(n % d for d in range(2, n)))


def test_euler_phi_counts_units():
    from math import gcd

    for n in range(1, 120):
        assert euler_phi(n) == sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


def test_divisors():
    assert divisors(12) == [1, 2, 3, 4, 6, 12]


def test_inv_mod_examples():
    assert inv_mod(1, 9) == 1
    assert inv_mod(2, 5) == 3
    with pytest.raises(NotAUnit):
        inv_mod(2, 4)


@given(st.sampled_from(SMALL_PRIMES), st.integers(1, 10**6))
def test_inv_mod_is_inverse(ell, x):
    if x % ell:
        assert x * inv_mod(x, ell) % ell == 1


def test_least_generator_examples():
    assert least_generator(5) == 2
    assert least_generator(7) == 3
    assert least_generator(13) == 2
    for bad in (2, 9, 1, 15):
        with pytest.raises(InvalidModulus):
            least_generator(bad)


def test_least_generator_is_least():
    for ell in SMALL_PRIMES:
        g = least_generator(ell)
        assert multiplicative_order(g, ell) == ell - 1
        assert all(multiplicative_order(h, ell) < ell - 1 for h in range(2, g))


def test_sqrt_mod_examples():
    assert sqrt_mod(0, 7) == {0}
    assert sqrt_mod(4, 7) == {2, 5}
    assert sqrt_mod(3, 7) == set()


def test_is_eth_power_examples():
    assert is_eth_power(-1, 2, 13)
    assert not is_eth_power(-1, 2, 7)
    assert all(is_eth_power(x, 1, 11) for x in range(1, 11))
    with pytest.raises(NotAUnit):
        is_eth_power(14, 2, 7)


@given(st.sampled_from(SMALL_PRIMES), st.integers(1, 12), st.integers(1, 10**4))
def test_is_eth_power_matches_brute_force(ell, e, x):
    if x % ell == 0:
        return
    powers = {pow(y, e, ell) for y in range(1, ell)}
    assert is_eth_power(x, e, ell) == (x % ell in powers)


def test_minus_one_rule_on_cartan_powers():
    for ell in primes_up_to(2000):
        for e in (1, 2, 3, 4, 6):
            brute = (ell - 1) % ell in {pow(y, e, ell) for y in range(1, ell)} or ell == 2
            assert minus_one_power_exception(e, ell) == (not brute)


def test_minus_one_rule_is_not_meant_for_e8():
    # 40 / gcd(8, 40) = 5 is odd, so -1 is no 8th power mod 41, yet neither
    # congruence exception applies
    assert not is_eth_power(-1, 8, 41)
    assert not minus_one_power_exception(8, 41)


def test_product_of_primes():
    assert product_of_primes([]) == 1
    assert product_of_primes(QQ_ORBIT_PRIMES) == 18888870
    assert product_of_primes_up_to(7) == 210
    assert product_of_primes([2, 2, 3]) == 6
    with pytest.raises(NotPrime):
        product_of_primes([2, 4])


def test_named_constants():
    assert KENKU_DEGREES == tuple(range(1, 20)) + (21, 25, 27, 37, 43, 67, 163)
    assert large_prime_threshold(1) == 74
    assert large_prime_threshold(5) == 77
    with pytest.raises(ValueError):
        large_prime_threshold(0)


# -- F_l[sqrt(eps)] -------------------------------------------------------

def test_quad_ext_examples():
    ell = 5
    eps = least_generator(ell)
    r = QuadExtElem.make(0, 1, ell)
    assert r * r == QuadExtElem.make(eps, 0, ell)
    assert QuadExtElem.make(3, 0, ell).frobenius() == QuadExtElem.make(3, 0, ell)
    assert QuadExtElem.make(1, 1, ell).norm() == (1 - 2) % 5 == 4
    assert quad_ext_arith("norm", QuadExtElem.make(1, 1, ell)) == 4


def test_quad_ext_errors():
    with pytest.raises(ZeroInverse):
        QuadExtElem.make(0, 0, 7).inverse()
    with pytest.raises(MismatchedField):
        QuadExtElem.make(1, 1, 7) * QuadExtElem.make(1, 1, 11)


elems = st.sampled_from([5, 7, 11, 13]).flatmap(
    lambda ell: st.tuples(*[st.builds(QuadExtElem.make, st.integers(0, ell - 1),
                                      st.integers(0, ell - 1), st.just(ell))] * 3))


@given(elems)
def test_quad_ext_field_axioms(triple):
    x, y, z = triple
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert (x * y).frobenius() == x.frobenius() * y.frobenius()
    assert (x * y).norm() == x.norm() * y.norm() % x.ell
    if not x.is_zero():
        assert x * x.inverse() == QuadExtElem.make(1, 0, x.ell)


def test_quad_ext_generator_has_full_order():
    for ell in (3, 5, 7, 11, 13):
        z = quad_ext_generator(ell)
        one = QuadExtElem.make(1, 0, ell)
        n = ell * ell - 1
        assert qpow(z, n) == one
        for p in {q for q in primes_up_to(n) if n % q == 0}:
            assert qpow(z, n // p) != one
