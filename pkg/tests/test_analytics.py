import math

import pytest

from mulshift.analytics import (bv_error, bv_weighted_sum, g_of_d, gd_check, main_term_estimate, residue_counts,
                                rough_count, squarefull_exclusion)
from mulshift.arith import factorize, is_prime, prime_count, totient
from mulshift.congruence import delta
from mulshift.exceptions import PreconditionError, UnsupportedInputError
from mulshift.properties import G_OF_D_LIMIT


@pytest.mark.unit
def test_main_term():
    assert main_term_estimate(100, 44100, 11, 2) == pytest.approx(25 / 10080 * 0.8)
    assert main_term_estimate(100, factorize(44100), 7, 2) == pytest.approx(25 / 10080)
    assert main_term_estimate(1, 44100, 11, 2) == 0.0


@pytest.mark.unit
def test_main_term_factor_not_positive():
    with pytest.raises(PreconditionError):
        main_term_estimate(100, 6, 11, 4)


@pytest.mark.unit
@pytest.mark.parametrize("d, k, expected", [(11, 2, 2), (11, 3, 3), (77, 2, 4), (1, 2, 1)])
def test_g_of_d(d, k, expected):
    assert g_of_d(d, k) == expected


@pytest.mark.basic
def test_gd_check():
    check = gd_check(500, 2)
    assert check.passed
    assert check.checked > 0
    assert check.to_json()['passed'] is True


@pytest.mark.unit
def test_residue_counts():
    counts = residue_counts(100, [3, 4])
    assert counts[3].tolist() == [1, 11, 13]
    assert counts[4].tolist() == [0, 11, 1, 13]


@pytest.mark.unit
@pytest.mark.parametrize("q, x, expected", [(3, 100, 1.5), (4, 20, 1.0), (2, 10, 1.0)])
def test_bv_error(q, x, expected):
    assert bv_error(q, x) == expected


@pytest.mark.unit
def test_bv_weighted_sum():
    assert bv_weighted_sum(2, 100, 2) == 0.0
    assert bv_weighted_sum(2, 100, 4) == pytest.approx(2 * 1.0 + 2 * 1.5)


@pytest.mark.basic
def test_rough_count(small_system):
    estimates = rough_count(small_system, [10 ** 6, 10 ** 7])
    assert [e.x for e in estimates] == [10 ** 6, 10 ** 7]
    for e in estimates:
        assert e.modulus == 44100
        assert e.normalized == pytest.approx(e.observed * math.log(e.x) ** 3 / e.x)
        assert e.main_term > 0
    assert estimates[0].to_json()['M_prime'] == 44100
    assert rough_count(small_system, []) == []


@pytest.mark.basic
def test_squarefull_exclusion(small_system):
    result = squarefull_exclusion(small_system, 10 ** 7, tail_limit=10 ** 5)
    assert result.count >= 0
    assert result.tail_bound > 0
    assert squarefull_exclusion(small_system, 10 ** 4, tail_limit=10 ** 5).count == 0


def oracle_rough_count(system, x, alpha=0.1):
    y = x ** alpha
    return sum(1 for p in system.members(x) if is_prime(p) and delta(p, system).p_minus() > y)


@pytest.mark.basic
@pytest.mark.parametrize("k", [2, 3, 4])
def test_gd_check_closed_form(k):
    check = gd_check(10 ** 4, k)
    assert check.passed, check.failures[:5]
    assert check.checked > 500


@pytest.mark.unit
@pytest.mark.parametrize("k", [2, 3])
@pytest.mark.parametrize("d1, d2", [(11, 13), (7, 17), (5, 23), (13, 19 * 29)])
def test_g_of_d_multiplicative(d1, d2, k):
    assert g_of_d(d1 * d2, k) == g_of_d(d1, k) * g_of_d(d2, k)


@pytest.mark.unit
def test_g_of_d_limit():
    with pytest.raises(UnsupportedInputError):
        g_of_d(G_OF_D_LIMIT + 1, 2)
    with pytest.raises(UnsupportedInputError):
        gd_check(G_OF_D_LIMIT + 1, 2)


@pytest.mark.unit
def test_bv_error_below_main_term():
    x = 10 ** 5
    pi_x = prime_count(x)
    for q in range(2, int(round(x ** (1 / 3))) + 1):
        assert bv_error(q, x) < pi_x / totient(q)


@pytest.mark.basic
def test_rough_count_oracle(small_system):
    estimates = rough_count(small_system, [28229, 10 ** 6, 10 ** 7])
    assert estimates[0].observed >= 1
    assert [e.observed for e in estimates[1:]] == [oracle_rough_count(small_system, 10 ** 6),
                                                   oracle_rough_count(small_system, 10 ** 7)]
    assert estimates[1].observed < estimates[2].observed
    assert rough_count(small_system, [10 ** 4])[0].observed == 0


@pytest.mark.basic
def test_rough_count_non_increasing_in_alpha(small_system):
    observed = [rough_count(small_system, [10 ** 7], alpha)[0].observed for alpha in (0.05, 0.1, 0.2, 0.3)]
    assert observed == sorted(observed, reverse=True)


@pytest.mark.basic
def test_squarefull_exclusion_oracle(small_system):
    x = 10 ** 6
    y = x ** 0.1
    expected = 0
    for p in small_system.members(x):
        if is_prime(p):
            d = delta(p, small_system)
            if d.p_minus() > y and not d.is_squarefree():
                expected += 1
    assert squarefull_exclusion(small_system, x).count == expected


@pytest.mark.slow
def test_rough_count_stable(small_system):
    x_points = [10 ** 6, 10 ** 7, 10 ** 8, 10 ** 9]
    estimates = rough_count(small_system, x_points, workers=4)
    observed = [e.observed for e in estimates]
    assert observed == sorted(set(observed))
    assert observed[:2] == [oracle_rough_count(small_system, x) for x in x_points[:2]]
    band = [e.normalized for e in estimates if e.observed >= 20]
    assert len(band) >= 2
    assert max(band) <= 4 * min(band)
