#
# mulshift library
#
# Copyright (c) 2020 mulshift developers
#
# This library is free software; you can redistribute it and/or
# modify it under the terms of the GNU Lesser General Public
# License as published by the Free Software Foundation; either
# version 2.1 of the License, or (at your option) any later version.
#
# This library is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the GNU
# Lesser General Public License for more details.
#
# You should have received a copy of the GNU Lesser General Public
# License along with this library; if not, write to the Free Software
# Foundation, Inc., 59 Temple Place, Suite 330, Boston, MA  02111-1307  USA
#
"""Sieve statistics for a solved congruence system."""
import math
from dataclasses import dataclass, field
from fractions import Fraction
from logging import getLogger
from typing import Any, Dict, Iterable, List, Sequence, Tuple, Union

import numpy as np  # type: ignore

from mulshift.arith import FactoredInteger, factorize, prime_count, segmented_primes, sieve_primes, totient
from mulshift.congruence import CongruenceSystem
from mulshift.exceptions import PreconditionError, UnsupportedInputError
from mulshift.properties import DEFAULT_ALPHA, DEFAULT_TAIL_LIMIT, G_OF_D_LIMIT, RHO_SEED
from mulshift.scanner import Scanner

logger = getLogger(__name__)

EXPONENT_NOTE = ('normalized = observed * (log x)^(k+1) / x; the lower bound is stated once with '
                 '(log x)^-k and derived with (log x)^-(k+1); the derived exponent is used')


@dataclass(frozen=True)
class SieveEstimate:
    x: int
    modulus: int
    y: float
    k: int
    main_term: float
    observed: int
    normalized: float

    def to_json(self) -> Dict[str, Any]:
        return {'x': self.x, 'M_prime': self.modulus, 'y': self.y, 'k': self.k, 'main_term': self.main_term,
                'observed': self.observed, 'normalized': self.normalized}


def _threshold(x: int, alpha: float, k: int) -> float:
    if not 0 < alpha < 1:
        raise PreconditionError('alpha must lie in (0, 1), got {}'.format(alpha))
    y = x ** alpha
    if y < k - 1:
        raise PreconditionError('x^alpha = {:.4g} < k - 1 = {} at x = {}'.format(y, k - 1, x))
    return y


def main_term_estimate(x: int, modulus: Union[int, FactoredInteger], y: float, k: int) -> float:
    """pi(x)/phi(M') * prod_{P+(M') < p <= y} (1 - k/(p-1))."""
    if x < 2:
        return 0.0
    if not isinstance(modulus, FactoredInteger):
        modulus = factorize(modulus)
    product = 1.0
    for p in sieve_primes(int(y)).tolist():
        if p > modulus.p_plus():
            if k >= p - 1:
                raise PreconditionError('factor 1 - {}/{} is not positive'.format(k, p - 1))
            product *= 1 - k / (p - 1)
    return prime_count(int(x)) / totient(modulus) * product


def rough_count(system: CongruenceSystem, x_points: Sequence[int], alpha: float = DEFAULT_ALPHA,
                workers: int = 1, seed: int = RHO_SEED) -> List[SieveEstimate]:
    """Class primes p <= x with P-(delta(p)) > x^alpha, for each x; no squarefree condition."""
    if not x_points:
        return []
    k = system.k
    thresholds = [_threshold(int(x), alpha, k) for x in x_points]
    with Scanner(None, k, alpha=alpha, workers=workers, seed=seed) as scanner:
        primes = scanner.class_primes(system, int(max(x_points)))
    least = [(p, min(part.p_minus() for part in parts)) for p, parts in primes]
    modulus = system.factored_modulus()
    estimates = []
    for x, y in zip(x_points, thresholds):
        x = int(x)
        observed = sum(1 for p, q in least if p <= x and q > y)
        normalized = observed * math.log(x) ** (k + 1) / x
        estimates.append(SieveEstimate(x, system.modulus, y, k, main_term_estimate(x, modulus, y, k), observed,
                                       normalized))
    return estimates


def g_of_d(d: Union[int, FactoredInteger], k: int) -> int:
    """#{a mod d : gcd(a, d) = 1, d | (a+1)...(a+k)} by brute force."""
    d = int(d)
    if d < 1:
        raise PreconditionError('d must be >= 1, got {}'.format(d))
    if d > G_OF_D_LIMIT:
        raise UnsupportedInputError('g(d) is brute force over residues mod d; d = {} exceeds {}'.format(d, G_OF_D_LIMIT))
    a = np.arange(d, dtype=np.int64)
    product = np.ones(d, dtype=np.int64)
    for i in range(1, k + 1):
        product = product * ((a + i) % d) % d
    return int(np.count_nonzero((product == 0) & (np.gcd(a, d) == 1)))


@dataclass
class GdCheck:
    k: int
    dmax: int
    checked: int = 0
    failures: List[Tuple[int, int, int]] = field(default_factory=list)  # (d, brute force, k^omega)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> Dict[str, Any]:
        return {'k': self.k, 'dmax': self.dmax, 'checked': self.checked, 'passed': self.passed,
                'failures': [list(f) for f in self.failures]}


def gd_check(dmax: int, k: int) -> GdCheck:
    """Compare g(d) with k^omega(d) for squarefree 2 <= d <= dmax with P-(d) > k+1."""
    if dmax > G_OF_D_LIMIT:
        raise UnsupportedInputError('dmax = {} exceeds {}'.format(dmax, G_OF_D_LIMIT))
    result = GdCheck(k, dmax)
    for d in range(2, dmax + 1):
        fd = factorize(d)
        if not fd.is_squarefree() or fd.p_minus() <= k + 1:
            continue
        result.checked += 1
        brute, closed = g_of_d(d, k), k ** fd.omega
        if brute != closed:
            result.failures.append((d, brute, closed))
    logger.debug('g(d) check k=%d dmax=%d: %d values, %d failures', k, dmax, result.checked, len(result.failures))
    return result


def residue_counts(x: int, moduli: Iterable[int]) -> Dict[int, np.ndarray]:
    """pi(x; q, b) for every b mod q, all q in one pass over the primes <= x."""
    moduli = sorted(set(moduli))
    for q in moduli:
        if q < 2:
            raise PreconditionError('q must be >= 2, got {}'.format(q))
    counts = {q: np.zeros(q, dtype=np.int64) for q in moduli}
    for seg in segmented_primes(2, x):
        for q in moduli:
            counts[q] += np.bincount(seg % q, minlength=q)
    return counts


def _max_deviation(q: int, x: int, counts: np.ndarray) -> Fraction:
    reduced = np.gcd(np.arange(q), q) == 1
    phi = int(np.count_nonzero(reduced))
    mean = Fraction(prime_count(x), phi)
    return max(abs(int(c) - mean) for c in counts[reduced].tolist())


def bv_error(q: int, x: int) -> float:
    """max over reduced b of |pi(x; q, b) - pi(x)/phi(q)|."""
    return float(_max_deviation(q, x, residue_counts(x, [q])[q]))


def bv_weighted_sum(k: int, x: int, Q: int) -> float:
    """sum over 2 <= q < Q of k^omega(q) E(q)."""
    if Q <= 2:
        return 0.0
    counts = residue_counts(x, range(2, Q))
    total = Fraction(0)
    for q in range(2, Q):
        total += k ** factorize(q).omega * _max_deviation(q, x, counts[q])
    return float(total)


@dataclass(frozen=True)
class SquarefullExclusion:
    count: int
    bound_ratio: float
    tail_bound: float

    def to_json(self) -> Dict[str, Any]:
        return {'count': self.count, 'bound_ratio': self.bound_ratio, 'tail_bound': self.tail_bound}


def squarefull_exclusion(system: CongruenceSystem, x: int, alpha: float = DEFAULT_ALPHA,
                         tail_limit: int = DEFAULT_TAIL_LIMIT, seed: int = RHO_SEED) -> SquarefullExclusion:
    """Class primes with P-(delta(p)) > x^alpha whose delta is not squarefree.

    ``tail_bound`` is (x+k) * sum of 1/q^2 over primes x^alpha < q <= tail_limit."""
    y = _threshold(x, alpha, system.k)
    tail = [1.0 / (q * q) for q in sieve_primes(tail_limit).tolist() if q > y]
    tail_bound = (x + system.k) * math.fsum(tail)
    if x < system.N:
        return SquarefullExclusion(0, 0.0, tail_bound)
    count = 0
    with Scanner(None, system.k, alpha=alpha, seed=seed) as scanner:
        for p, parts in scanner.class_primes(system, x):
            d = FactoredInteger(1)
            for part in parts:
                d = d * part
            if d.p_minus() > y and not d.is_squarefree():
                count += 1
    return SquarefullExclusion(count, count / x ** (1 - alpha), tail_bound)
