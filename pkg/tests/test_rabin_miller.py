import random

import pytest

from parflow.bench.rabin_miller import (
    Verdict,
    decompose,
    mersenne,
    passes_base,
    rabin_miller,
    rabin_miller_direct,
    rabin_miller_sequential,
    random_bases,
)
from parflow.errors import InvalidInput

FIRST_20_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71]


def is_prime_trial(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def naive_strong_test(n, a):
    # big-integer powers without modular reduction, small n only
    s, d = 0, n - 1
    while d % 2 == 0:
        s, d = s + 1, d // 2
    if (a**d) % n in (1, n - 1):
        return True
    return any((a ** (d * 2**r)) % n == n - 1 for r in range(1, s))


def test_2047_is_strong_pseudoprime_to_base_2():
    assert 23 * 89 == 2047 and not is_prime_trial(2047)
    assert rabin_miller(2047, [2]).verdict is Verdict.PROBABLE_PRIME
    res = rabin_miller(2047, [2, 3])
    assert res.verdict is Verdict.COMPOSITE and res.failing_base == 3


def test_8191_passes_first_20_primes(backend):
    assert is_prime_trial(8191)
    res = rabin_miller(8191, FIRST_20_PRIMES, backend)
    assert res.probable_prime and res.failing_base is None


def test_first_failing_base_by_position(backend):
    # 2047 fails 3 and 5 but passes 2; order of the list decides which is reported
    assert rabin_miller(2047, [2, 5, 3], backend).failing_base == 5
    assert rabin_miller(2047, [2, 3, 5], backend).failing_base == 3


def test_decompose():
    for n in [5, 9, 2047, 8191, 2**61 - 1]:
        s, d = decompose(n)
        assert d % 2 == 1 and 2**s * d == n - 1


def test_subtest_matches_naive_powers():
    for n in range(5, 120, 2):
        for a in range(2, n - 1):
            assert passes_base(n, a) == naive_strong_test(n, a), (n, a)


def test_all_bases_decide_primality_for_small_n():
    for n in range(5, 400, 2):
        res = rabin_miller_sequential(n, range(2, n - 1))
        assert res.probable_prime == is_prime_trial(n), n


@pytest.mark.parametrize("n,bases", [(2046, [2]), (3, [2]), (1, [2]), (-7, [2]), (101, []), (101, [1]), (101, [100])])
def test_invalid_input(n, bases):
    with pytest.raises(InvalidInput):
        rabin_miller(n, bases)


def test_parallel_equals_sequential_on_64_bit_inputs(backend):
    rng = random.Random(2024)
    for _ in range(25):
        n = rng.getrandbits(64) | 1 | (1 << 63)
        bases = random_bases(n, 8, rng.randint(0, 10**6))
        want = rabin_miller_sequential(n, bases)
        assert rabin_miller(n, bases, backend, num_cores=3) == want
        assert rabin_miller_direct(n, bases, backend, num_cores=3) == want


def test_against_sympy_primality():
    sympy = pytest.importorskip("sympy")
    rng = random.Random(9)
    for _ in range(50):
        n = rng.getrandbits(64) | 1 | (1 << 63)
        res = rabin_miller_sequential(n, random_bases(n, 20, 1))
        assert res.probable_prime == sympy.isprime(n)


def test_mersenne_2203_is_probable_prime(pool):
    n = mersenne(2203)
    assert rabin_miller(n, random_bases(n, 4), pool).probable_prime
    assert not rabin_miller(mersenne(2201), random_bases(mersenne(2201), 4), pool).probable_prime
