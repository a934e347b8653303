from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from biquadsq.arith import (
    factorize,
    hensel_sqrt_2adic,
    hilbert_minus_one,
    is_probable_prime,
    is_squarefree,
    legendre,
    sqrt_mod_p,
    sqrt_mod_pk,
    squarefree_decompose,
    v_p,
)
from biquadsq.errors import IncompleteFactorization

SMALL_ODD_PRIMES = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 101, 1009]


def test_factorize_examples():
    assert factorize(20629).factors == ((7, 2), (421, 1))
    assert factorize(3130541).factors == ((3130541, 1),)
    f = factorize(1)
    assert f.factors == () and f.cofactor == 1 and f.complete


def test_factorize_large_semiprime():
    p, q = 1000000007, 998244353
    f = factorize(p * q * 12)
    assert f.complete and f.value() == p * q * 12
    assert set(f.primes) == {2, 3, p, q}


def test_factorize_budget_exhaustion():
    p, q = 2305843009213693951, 618970019642690137449562111  # Mersenne primes
    f = factorize(p * q, budget=10)
    assert not f.complete
    with pytest.raises(IncompleteFactorization):
        f.require_complete()
    assert f.value() == p * q


def test_primality_known():
    assert is_probable_prime(2305843009213693951)
    assert not is_probable_prime(3215031751)  # strong pseudoprime to 2, 3, 5, 7


@given(st.integers(min_value=-10**12, max_value=10**12).filter(bool))
@settings(max_examples=200, deadline=None)
def test_factorize_roundtrip(n):
    f = factorize(n)
    assert f.complete and f.value() == n
    assert all(is_probable_prime(p) for p in f.primes)


def test_squarefree_examples():
    assert squarefree_decompose(45) == (3, 5)
    assert squarefree_decompose(-7) == (1, -7)
    assert squarefree_decompose(48) == (4, 3)


@given(st.integers(min_value=-10**9, max_value=10**9).filter(bool))
@settings(max_examples=200, deadline=None)
def test_squarefree_property(n):
    s, m = squarefree_decompose(n)
    assert s > 0 and s * s * m == n
    assert all(e == 1 for _, e in factorize(m).factors)
    assert is_squarefree(m)


def test_legendre_examples():
    assert legendre(5, 7) == -1
    assert legendre(2, 7) == 1
    assert all(legendre(1, p) == 1 for p in SMALL_ODD_PRIMES)
    assert legendre(14, 7) == 0


@given(st.sampled_from(SMALL_ODD_PRIMES), st.integers(1, 10**6), st.integers(1, 10**6))
def test_legendre_multiplicative(p, a, b):
    if a % p and b % p:
        assert legendre(a * b, p) == legendre(a, p) * legendre(b, p)


def test_sqrt_mod_p_examples():
    assert sqrt_mod_p(4, 11) == 2
    assert sqrt_mod_p(0, 13) == 0
    assert sqrt_mod_p(2, 7) == 3


@given(st.sampled_from(SMALL_ODD_PRIMES), st.integers(0, 10**6))
def test_sqrt_mod_p_property(p, a):
    if legendre(a, p) >= 0:
        r = sqrt_mod_p(a, p)
        assert r * r % p == a % p
        assert 0 <= r <= (p - 1) // 2


@given(st.sampled_from(SMALL_ODD_PRIMES), st.integers(1, 10**6), st.integers(1, 6))
def test_sqrt_mod_pk(p, a, k):
    if a % p and legendre(a, p) == 1:
        r = sqrt_mod_pk(a, p, k)
        assert (r * r - a) % p**k == 0


def test_hensel_examples():
    assert hensel_sqrt_2adic(17, 8) == 23
    assert hensel_sqrt_2adic(1, 8) == 1
    brute = [E for E in range(1, 64, 2) if (E * E - 41) % 256 == 0]
    assert hensel_sqrt_2adic(41, 8) == brute[0] == 51
    assert hensel_sqrt_2adic(-7, 8) == 53


@given(st.integers(-10**6, 10**6).map(lambda t: 8 * t + 1), st.integers(4, 40))
def test_hensel_property(n, k):
    E = hensel_sqrt_2adic(n, k)
    assert E % 2 == 1 and (E * E - n) % (1 << k) == 0
    prev = hensel_sqrt_2adic(n, k - 1)
    m = 1 << (k - 2)
    assert (E - prev) % m == 0 or (E + prev) % m == 0


def test_v_p_examples():
    assert v_p(1009, 7) == 0
    assert v_p(Fraction(49, 3), 7) == 2
    assert v_p(Fraction(49, 3), 3) == -1
    assert v_p(1, 5) == 0


def test_hilbert_minus_one():
    assert hilbert_minus_one(3, 3) == -1
    assert hilbert_minus_one(9, 3) == 1
    assert hilbert_minus_one(5, 2) == 1
    assert hilbert_minus_one(3, 2) == -1
    assert hilbert_minus_one(7, 5) == 1
