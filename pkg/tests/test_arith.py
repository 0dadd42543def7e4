import itertools
import math
import random

import pytest

import mulshift.arith
from mulshift.arith import INFINITY, ONE, FactoredInteger, crt, factor_window, factorize, is_prime
from mulshift.exceptions import CoprimalityError, PreconditionError, UnsupportedInputError


@pytest.mark.unit
def test_factorize_small():
    n = factorize(360)
    assert n.value == 360
    assert n.factors == ((2, 3), (3, 2), (5, 1))
    assert n.format_factors() == '2^3 * 3^2 * 5'
    assert n.omega == 3
    assert n.p_minus() == 2
    assert n.p_plus() == 5
    assert not n.is_squarefree()


@pytest.mark.unit
def test_factorize_one():
    n = factorize(1)
    assert n == ONE
    assert n.factors == ()
    assert n.p_minus() is INFINITY
    assert n.p_plus() == 1
    assert n.is_squarefree()
    assert n.format_factors() == '1'


@pytest.mark.unit
@pytest.mark.parametrize("n", [0, -5, True, 2.0, 1 << 130])
def test_factorize_rejects(n):
    with pytest.raises(UnsupportedInputError):
        factorize(n)


@pytest.mark.unit
def test_factorize_rho():
    p, q = 2 ** 61 - 1, 2 ** 31 - 1
    n = factorize(p * q)
    assert n.factors == ((q, 1), (p, 1))
    assert n.is_valid()


@pytest.mark.unit
def test_factorize_large_square():
    p = 1000003
    n = factorize(p * p * 2 ** 61 - p * p)  # p^2 (2^61 - 1)
    assert n.factors == ((p, 2), (2 ** 61 - 1, 1))


@pytest.mark.unit
def test_factorize_is_repeatable():
    n = 10 ** 18 + 9 * 10 ** 9 + 7 * 13
    assert factorize(n).factors == factorize(n).factors


@pytest.mark.unit
@pytest.mark.parametrize("n, expected", [(2, True), (3, True), (4, False), (561, False), (41, True), (1681, False),
                                         (2 ** 61 - 1, True), (2 ** 89 - 1, True), ((2 ** 61 - 1) ** 2, False),
                                         (3317044064679887385961981, False), (2 ** 127 - 1, True)])
def test_is_prime(n, expected):
    assert is_prime(n) is expected


@pytest.mark.unit
def test_sieve_primes_and_count():
    assert mulshift.arith.sieve_primes(30).tolist() == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert mulshift.arith.sieve_primes(1).tolist() == []
    assert mulshift.arith.prime_count(100) == 25
    assert mulshift.arith.prime_count(10 ** 6) == 78498


@pytest.mark.unit
def test_segmented_primes_crosses_segments():
    primes = [int(p) for seg in mulshift.arith.segmented_primes(90, 200, segment=16) for p in seg]
    assert primes == [p for p in mulshift.arith.sieve_primes(200).tolist() if p >= 90]


@pytest.mark.unit
def test_factor_window_matches_factorize():
    lo, hi = 10 ** 9, 10 ** 9 + 500
    window = factor_window(lo, hi, range(lo, hi))
    for n in range(lo, hi, 7):
        assert window[n].factors == factorize(n).factors


@pytest.mark.unit
def test_factor_window_bounds():
    with pytest.raises(PreconditionError):
        factor_window(10, 20, [20])


@pytest.mark.unit
def test_crt():
    assert crt([(5, 36), (4, 25), (5, 49)]) == (28229, 44100)
    assert crt([(0, 1)]) == (0, 1)


@pytest.mark.unit
def test_crt_not_coprime():
    with pytest.raises(CoprimalityError) as e:
        crt([(1, 5), (2, 35)])
    assert e.value.pair == (5, 35)


@pytest.mark.unit
def test_primes_in_ap():
    assert mulshift.arith.primes_in_ap(1, 4, 1, 50) == [5, 13, 17, 29, 37, 41]
    assert mulshift.arith.primes_in_ap(1, 100, 1, 1000) == [101, 401, 601, 701]
    assert mulshift.arith.primes_in_ap(2, 4, 1, 50) == [2]


@pytest.mark.unit
def test_split_and_totient():
    n = factorize(2 * 3 * 3 * 101 * 103)
    smooth, rough = mulshift.arith.rough_smooth_split(n, 10)
    assert smooth.value == 18
    assert rough.value == 101 * 103
    assert mulshift.arith.totient(n) == 1 * 6 * 100 * 102
    assert mulshift.arith.totient(44100) == 10080


@pytest.mark.unit
def test_factored_integer_arithmetic():
    a = factorize(12)
    b = factorize(90)
    assert (a * b).factors == ((2, 3), (3, 3), (5, 1))
    assert (a * b).exact_divide(b) == a
    with pytest.raises(PreconditionError):
        a.exact_divide(factorize(5))
    with pytest.raises(PreconditionError):
        FactoredInteger.from_factors([(4, 1)])


@pytest.mark.api
def test_factored_integer_json():
    n = factorize(2 ** 61 - 2)
    assert FactoredInteger.from_json(n.to_json()) == n
    with pytest.raises(PreconditionError):
        FactoredInteger.from_json({'value': '7', 'factors': [['5', 1]]})


@pytest.mark.unit
@pytest.mark.parametrize("residue, modulus, lo, hi, expected", [(1, 4, 1, 30, [5, 13, 17, 29]),
                                                                 (2, 3, 1, 20, [2, 5, 11, 17]),
                                                                 (0, 5, 1, 100, [5])])
def test_primes_in_ap_examples(residue, modulus, lo, hi, expected):
    assert mulshift.arith.primes_in_ap(residue, modulus, lo, hi) == expected


@pytest.mark.unit
@pytest.mark.parametrize("lo, hi", [(1, 1000), (500, 3000), (10 ** 6, 10 ** 6 + 5000)])
def test_primes_in_ap_modulus_one(lo, hi):
    expected = [p for p in mulshift.arith.sieve_primes(hi).tolist() if p >= lo]
    assert mulshift.arith.primes_in_ap(0, 1, lo, hi) == expected


@pytest.mark.unit
def test_crt_order_independent():
    congruences = [(5, 36), (4, 25), (5, 49)]
    for order in itertools.permutations(congruences):
        assert crt(list(order)) == (28229, 44100)
    rng = random.Random(17)
    moduli = [8, 9, 25, 7, 11, 13]
    congruences = [(rng.randrange(m), m) for m in moduli]
    n, m = crt(congruences)
    assert m == math.prod(moduli)
    assert all(n % mi == ri for ri, mi in congruences)
    rng.shuffle(congruences)
    assert crt(congruences) == (n, m)


@pytest.mark.unit
def test_totient_multiplicative():
    rng = random.Random(3)
    pairs = 0
    while pairs < 200:
        m, n = rng.randint(1, 10 ** 6), rng.randint(1, 10 ** 6)
        if math.gcd(m, n) != 1:
            continue
        pairs += 1
        assert mulshift.arith.totient(m * n) == mulshift.arith.totient(m) * mulshift.arith.totient(n)


@pytest.mark.unit
def test_rough_smooth_split_random():
    rng = random.Random(11)
    for _ in range(200):
        n = factorize(rng.randint(1, 10 ** 9))
        y = rng.choice([2, 10, 100, 1000, 10 ** 5])
        smooth, rough = mulshift.arith.rough_smooth_split(n, y)
        assert smooth * rough == n
        assert smooth.p_plus() <= y
        assert rough.p_minus() > y
        assert mulshift.arith.rough_smooth_split(smooth, y) == (smooth, ONE)
        assert mulshift.arith.rough_smooth_split(rough, y) == (ONE, rough)


@pytest.mark.unit
@pytest.mark.parametrize("n, y, smooth, rough", [(84, 5, 12, 7), (720, 5, 720, 1), (1, 3, 1, 1)])
def test_rough_smooth_split_examples(n, y, smooth, rough):
    parts = mulshift.arith.rough_smooth_split(factorize(n), y)
    assert [part.value for part in parts] == [smooth, rough]


@pytest.mark.unit
def test_factorize_reconstructs_sample():
    for n in itertools.chain(range(1, 5000), range(5000, 10 ** 6 + 1, 997)):
        fn = factorize(n)
        assert fn.value == n
        assert math.prod(p ** e for p, e in fn.factors) == n
        assert all(is_prime(p) for p in fn.primes)


@pytest.mark.slow
def test_factorize_reconstructs_all():
    for n in range(1, 10 ** 6 + 1):
        assert math.prod(p ** e for p, e in factorize(n).factors) == n
