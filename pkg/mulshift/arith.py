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
"""Integer arithmetic underneath every other module: factorisation, primality,
CRT, rough/smooth parts and prime enumeration."""
import functools
import math
import random
from logging import getLogger
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import gmpy2  # type: ignore
import numpy as np  # type: ignore

from mulshift.exceptions import CoprimalityError, PreconditionError, UnsupportedInputError
from mulshift.properties import (AP_SIEVE_MODULUS, MAX_FACTOR_BITS, MR_DETERMINISTIC_LIMIT, MR_WITNESSES, RHO_SEED,
                                 SEGMENT_SIZE, TRIAL_DIVISION_BOUND)

logger = getLogger(__name__)

Number = Union[int, float]


@functools.total_ordering
class _Infinity:
    """Tagged +infinity used as P^-(1). Compares above every real number."""

    _instance = None  # type: Optional[_Infinity]

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __hash__(self):
        return hash('mulshift.INFINITY')

    def __repr__(self):
        return 'INFINITY'

    def __str__(self):
        return 'inf'


INFINITY = _Infinity()


class FactoredInteger:
    """A natural number together with its canonical prime factorisation.

    ``factors`` is a tuple of ``(prime, exponent)`` pairs with strictly increasing
    primes and exponents >= 1; it is empty exactly when ``value == 1``.
    """

    __slots__ = ('value', 'factors')

    def __init__(self, value: int, factors: Sequence[Tuple[int, int]] = ()) -> None:
        self.value = int(value)
        self.factors = tuple((int(p), int(e)) for p, e in factors)  # type: Tuple[Tuple[int, int], ...]

    @classmethod
    def from_factors(cls, factors: Iterable[Tuple[int, int]], check: bool = True) -> 'FactoredInteger':
        merged = {}  # type: Dict[int, int]
        for p, e in factors:
            if e < 0:
                raise PreconditionError('negative exponent {} for prime {}'.format(e, p))
            if e > 0:
                merged[p] = merged.get(p, 0) + e
        value = 1
        for p, e in merged.items():
            value *= p ** e
        result = cls(value, sorted(merged.items()))
        if check and not result.is_valid():
            raise PreconditionError('{} is not a prime factorisation'.format(list(merged.items())))
        return result

    @classmethod
    def from_primes(cls, primes: Iterable[int]) -> 'FactoredInteger':
        return cls.from_factors(((p, 1) for p in primes), check=False)

    def is_valid(self) -> bool:
        """Full invariant check, including primality of every listed prime."""
        if self.value < 1:
            return False
        product = 1
        last = 1
        for p, e in self.factors:
            if p <= last or e < 1 or not is_prime(p):
                return False
            product *= p ** e
            last = p
        return product == self.value

    def __int__(self) -> int:
        return self.value

    def __index__(self) -> int:
        return self.value

    def __eq__(self, other):
        if isinstance(other, FactoredInteger):
            return self.value == other.value
        if isinstance(other, int):
            return self.value == other
        return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def __repr__(self):
        return 'FactoredInteger({} = {})'.format(self.value, self.format_factors())

    def __mul__(self, other: 'FactoredInteger') -> 'FactoredInteger':
        if not isinstance(other, FactoredInteger):
            return NotImplemented
        return FactoredInteger.from_factors(self.factors + other.factors, check=False)

    def exact_divide(self, other: 'FactoredInteger') -> 'FactoredInteger':
        exps = dict(self.factors)
        for p, e in other.factors:
            if exps.get(p, 0) < e:
                raise PreconditionError('{} does not divide {}'.format(other.value, self.value))
            exps[p] -= e
        return FactoredInteger.from_factors(exps.items(), check=False)

    def format_factors(self) -> str:
        if not self.factors:
            return '1'
        return ' * '.join(str(p) if e == 1 else '{}^{}'.format(p, e) for p, e in self.factors)

    @property
    def primes(self) -> List[int]:
        return [p for p, _ in self.factors]

    @property
    def omega(self) -> int:
        return len(self.factors)

    def p_minus(self) -> Union[int, _Infinity]:
        return self.factors[0][0] if self.factors else INFINITY

    def p_plus(self) -> int:
        return self.factors[-1][0] if self.factors else 1

    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self.factors)

    def split(self, y: Number) -> Tuple['FactoredInteger', 'FactoredInteger']:
        smooth = [(p, e) for p, e in self.factors if p <= y]
        rough = [(p, e) for p, e in self.factors if p > y]
        return FactoredInteger.from_factors(smooth, check=False), FactoredInteger.from_factors(rough, check=False)

    def to_json(self) -> Dict[str, object]:
        return {'value': str(self.value), 'factors': [[str(p), e] for p, e in self.factors]}

    @classmethod
    def from_json(cls, data: Dict) -> 'FactoredInteger':
        result = cls.from_factors(((int(p), int(e)) for p, e in data['factors']), check=True)
        if result.value != int(data['value']):
            raise PreconditionError('factorisation does not reproduce {}'.format(data['value']))
        return result


ONE = FactoredInteger(1)


# --------------------
# prime enumeration
# --------------------
def sieve_primes(limit: int) -> np.ndarray:
    """All primes <= limit as an int64 array (plain Eratosthenes)."""
    if limit < 2:
        return np.array([], dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p::p] = False
    return np.flatnonzero(flags).astype(np.int64)


@functools.lru_cache(maxsize=8)
def small_primes(bound: int = TRIAL_DIVISION_BOUND) -> Tuple[int, ...]:
    return tuple(int(p) for p in sieve_primes(bound))


def segmented_primes(lo: int, hi: int, segment: int = SEGMENT_SIZE) -> Iterator[np.ndarray]:
    """Yield the primes of [lo, hi] in ascending segments."""
    lo = max(lo, 2)
    if hi < lo:
        return
    base = sieve_primes(math.isqrt(hi))
    start = lo
    while start <= hi:
        end = min(start + segment - 1, hi)
        mask = np.ones(end - start + 1, dtype=bool)
        for p in base:
            p = int(p)
            if p * p > end:
                break
            first = max(p * p, ((start + p - 1) // p) * p)
            if first > end:
                continue
            mask[first - start::p] = False
        yield np.flatnonzero(mask).astype(np.int64) + start
        start = end + 1


def iter_primes(lo: int, hi: int) -> Iterator[int]:
    for seg in segmented_primes(lo, hi):
        yield from (int(p) for p in seg)


@functools.lru_cache(maxsize=64)
def prime_count(x: int) -> int:
    """pi(x), exact."""
    if x < 2:
        return 0
    return sum(int(seg.size) for seg in segmented_primes(2, int(x)))


# --------------------
# primality
# --------------------
def _strong_probable_prime(n: int, a: int) -> bool:
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int) -> bool:
    """Deterministic below 3.3e24 (13-prime witness set); strong BPSW above."""
    if n < 2:
        return False
    for p in MR_WITNESSES:
        if n % p == 0:
            return n == p
    if n < MR_WITNESSES[-1] ** 2:
        return True
    if n >= MR_DETERMINISTIC_LIMIT:
        return bool(gmpy2.is_strong_bpsw_prp(n))
    return all(_strong_probable_prime(n, a) for a in MR_WITNESSES)


# --------------------
# factorisation
# --------------------
def _perfect_power(n: int) -> Optional[Tuple[int, int]]:
    for r in range(n.bit_length(), 1, -1):
        root, exact = gmpy2.iroot(n, r)
        if exact:
            return int(root), r
    return None


def _rho_brent(n: int, rng: random.Random) -> int:
    """A non-trivial factor of the odd composite n (Brent's cycle finding)."""
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def _split(n: int, rng: random.Random, out: Dict[int, int], mult: int = 1) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + mult
        return
    power = _perfect_power(n)
    if power is not None:
        _split(power[0], rng, out, mult * power[1])
        return
    d = _rho_brent(n, rng)
    _split(d, rng, out, mult)
    _split(n // d, rng, out, mult)


def factorize(n: int, bound: int = TRIAL_DIVISION_BOUND, seed: int = RHO_SEED) -> FactoredInteger:
    """Canonical factorisation of n >= 1.

    Trial division by primes up to ``bound``, a primality check on the cofactor,
    then a fixed-seed rho splitter for whatever is left."""
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise UnsupportedInputError('factorize needs an integer, got {!r}'.format(n))
    n = int(n)
    if n < 1:
        raise UnsupportedInputError('factorize needs n >= 1, got {}'.format(n))
    if n.bit_length() > MAX_FACTOR_BITS:
        raise UnsupportedInputError('{}-bit input exceeds the supported {} bits'.format(n.bit_length(), MAX_FACTOR_BITS))
    exps = {}  # type: Dict[int, int]
    checked = False
    for p in small_primes(bound):
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            exps[p] = e
        elif not checked and p > 1000:
            # large cofactors are usually prime; stop dividing as soon as that shows
            checked = True
            if is_prime(n):
                break
    if n > 1:
        if n < bound * bound or is_prime(n):
            exps[n] = exps.get(n, 0) + 1
        else:
            logger.debug('rho splitting cofactor %d', n)
            _split(n, random.Random(seed), exps)
    return FactoredInteger(int(math.prod(p ** e for p, e in exps.items())), sorted(exps.items()))


def factor_window(lo: int, hi: int, wanted: Iterable[int]) -> Dict[int, FactoredInteger]:
    """Factor the numbers ``wanted`` (all inside [lo, hi)) together.

    Each base prime p <= sqrt(hi) strikes its multiples in the window at once;
    what remains of a wanted number afterwards is 1 or a single prime."""
    wanted = sorted(set(wanted))
    if not wanted:
        return {}
    if wanted[0] < max(lo, 1) or wanted[-1] >= hi:
        raise PreconditionError('wanted numbers must lie in [{}, {})'.format(lo, hi))
    size = hi - lo
    needed = np.zeros(size, dtype=bool)
    offsets = np.array([w - lo for w in wanted], dtype=np.int64)
    needed[offsets] = True
    rem = np.arange(lo, hi, dtype=np.int64)
    found = {int(o): [] for o in offsets}  # type: Dict[int, List[Tuple[int, int]]]
    for p in sieve_primes(math.isqrt(hi - 1)):
        p = int(p)
        first = (-lo) % p
        idx = np.arange(first, size, p, dtype=np.int64)
        idx = idx[needed[idx]]
        if idx.size == 0:
            continue
        exps = np.zeros(idx.size, dtype=np.int64)
        pos = np.arange(idx.size)
        while pos.size:
            rem[idx[pos]] //= p
            exps[pos] += 1
            pos = pos[rem[idx[pos]] % p == 0]
        for o, e in zip(idx.tolist(), exps.tolist()):
            found[o].append((p, e))
    result = {}
    for o in offsets.tolist():
        factors = found[o]
        r = int(rem[o])
        if r > 1:
            factors.append((r, 1))
        result[lo + o] = FactoredInteger(lo + o, factors)
    return result


# --------------------
# residues
# --------------------
def crt(congruences: Sequence[Tuple[int, int]]) -> Tuple[int, int]:
    """Solve x = r_i mod m_i for pairwise coprime m_i; returns (N, M)."""
    moduli = [m for _, m in congruences]
    for i in range(len(moduli)):
        if moduli[i] < 1:
            raise PreconditionError('modulus must be positive, got {}'.format(moduli[i]))
        for j in range(i + 1, len(moduli)):
            if math.gcd(moduli[i], moduli[j]) != 1:
                raise CoprimalityError(moduli[i], moduli[j])
    n, modulus = 0, 1
    for r, m in congruences:
        if not 0 <= r < m:
            raise PreconditionError('residue {} out of range for modulus {}'.format(r, m))
        # lift n mod modulus to n' mod modulus*m with n' = r mod m
        t = (r - n) * pow(modulus, -1, m) % m if m > 1 else 0
        n += modulus * t
        modulus *= m
    return n % modulus, modulus


def primes_in_ap(residue: int, modulus: int, lo: int, hi: int) -> List[int]:
    """Primes p in [lo, hi] with p = residue mod modulus, ascending."""
    if modulus < 1 or not 0 <= residue < modulus:
        raise PreconditionError('need 0 <= residue < modulus, got ({}, {})'.format(residue, modulus))
    if hi < lo:
        raise PreconditionError('empty range [{}, {}]'.format(lo, hi))
    g = math.gcd(residue, modulus)
    if g > 1:
        return [g] if lo <= g <= hi and g % modulus == residue and is_prime(g) else []
    if modulus < AP_SIEVE_MODULUS:
        return [int(p) for seg in segmented_primes(lo, hi) for p in seg[seg % modulus == residue]]
    first = lo + (residue - lo) % modulus
    return [n for n in range(first, hi + 1, modulus) if is_prime(n)]


def rough_smooth_split(n: FactoredInteger, y: Number) -> Tuple[FactoredInteger, FactoredInteger]:
    return n.split(y)


def p_minus(n: FactoredInteger) -> Union[int, _Infinity]:
    return n.p_minus()


def p_plus(n: FactoredInteger) -> int:
    return n.p_plus()


def is_squarefree(n: FactoredInteger) -> bool:
    return n.is_squarefree()


def totient(n: Union[FactoredInteger, int]) -> int:
    if not isinstance(n, FactoredInteger):
        n = factorize(n)
    result = 1
    for p, e in n.factors:
        result *= (p - 1) * p ** (e - 1)
    return result
