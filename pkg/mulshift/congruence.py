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
"""The congruence system

    p + 1 = K     mod K^2
    p + i = a_i   mod a_i^2      (i = 1..k)

its CRT solution N mod M' (M' = K^2 a_1^2 ... a_k^2), and the integer

    delta(p) = (p+1)/(a_1 K) * prod_{i>=2} (p+i)/(a_i (i-1))

whose prime factors carry the shape of f(p+1), ..., f(p+k) for class members p.
"""
import math
from dataclasses import dataclass, field
from fractions import Fraction
from logging import getLogger
from typing import Dict, List, Sequence, Tuple, Union

from mulshift.arith import FactoredInteger, crt, factorize
from mulshift.exceptions import (BoxViolationError, ClassMembershipError, ClassMismatchError, CoprimalityError,
                                 InternalError, PreconditionError)
from mulshift.multfunc import MultiplicativeFunctionSpec, evaluate
from mulshift.properties import RHO_SEED, DivergenceClass

logger = getLogger(__name__)


def compute_K(k: int) -> FactoredInteger:
    if k < 2:
        raise PreconditionError('k must be >= 2, got {}'.format(k))
    return factorize(k * (k + 1) * math.factorial(k - 1) ** 2)


def compute_epsilon(f: MultiplicativeFunctionSpec, k: int, nu: int) -> Fraction:
    """min 1/(2 nu f(j)) over j in {1, ..., k-1, K}."""
    if nu < 1:
        raise PreconditionError('nu must be >= 1, got {}'.format(nu))
    K = compute_K(k)
    values = [evaluate(f, j) for j in range(1, k)] + [evaluate(f, K)]
    return min(Fraction(1) / (2 * nu * v) for v in values)


def targets_to_x(c: Sequence[Fraction], f: MultiplicativeFunctionSpec,
                 K: Union[int, FactoredInteger]) -> List[Fraction]:
    """x_1 = c_1/f(K), x_i = c_i/f(i-1); each c_i must lie on the class's side of its anchor."""
    declared = f.declared_class
    if declared is DivergenceClass.NON_DIVERGENT:
        raise ClassMismatchError('{} is non-divergent; its shifted-prime tuples are not dense'.format(f.name))
    anchors = [evaluate(f, K)] + [evaluate(f, i - 1) for i in range(2, len(c) + 1)]
    xs = []
    for i, (ci, anchor) in enumerate(zip(c, anchors), start=1):
        ci = Fraction(ci)
        label = 'f(K)' if i == 1 else 'f({})'.format(i - 1)
        if declared is DivergenceClass.ABOVE_ONE and ci < anchor:
            raise BoxViolationError('c_{} = {} is below {} = {}'.format(i, ci, label, anchor), i)
        if declared is DivergenceClass.BELOW_ONE and not 0 <= ci <= anchor:
            raise BoxViolationError('c_{} = {} is outside [0, {}] with {} = {}'.format(i, ci, anchor, label, anchor), i)
        xs.append(ci / anchor)
    return xs


@dataclass(frozen=True)
class CongruenceSystem:
    k: int
    K: FactoredInteger
    a: Tuple[FactoredInteger, ...]
    congruences: Tuple[Tuple[int, int], ...]
    N: int
    modulus: int  # M' = K^2 * prod a_i^2

    @property
    def M_prime(self) -> int:
        return self.modulus

    def factored_modulus(self) -> FactoredInteger:
        factors = [(p, 2 * e) for p, e in self.K.factors]
        factors += [(p, 2 * e) for ai in self.a for p, e in ai.factors]
        return FactoredInteger.from_factors(factors, check=False)

    def contains(self, n: int) -> bool:
        return n % self.modulus == self.N

    def members(self, x: int):
        return range(self.N, x + 1, self.modulus)

    def to_json(self) -> Dict[str, object]:
        return {
            'k': self.k,
            'K': self.K.value,
            'a': [ai.value for ai in self.a],
            'congruences': [[r, m] for r, m in self.congruences],
            'N': self.N,
            'M_prime': self.modulus,
        }

    @classmethod
    def from_json(cls, data: Dict) -> 'CongruenceSystem':
        system = build_system(int(data['K']), [int(ai) for ai in data['a']])
        if system.N != int(data['N']) or system.modulus != int(data['M_prime']):
            raise PreconditionError('stored solution ({}, {}) does not match the system'.format(
                data['N'], data['M_prime']))
        return system


def build_system(K: Union[int, FactoredInteger], a: Sequence[Union[int, FactoredInteger]]) -> CongruenceSystem:
    """Check the moduli, then solve the system by CRT."""
    if not isinstance(K, FactoredInteger):
        K = factorize(K)
    moduli = [ai if isinstance(ai, FactoredInteger) else factorize(ai) for ai in a]
    k = len(moduli)
    if k < 1:
        raise PreconditionError('at least one modulus a_i is needed')
    for i, ai in enumerate(moduli, start=1):
        if not ai.is_squarefree():
            raise PreconditionError('a_{} = {} is not squarefree'.format(i, ai.format_factors()))
        if math.gcd(ai.value, K.value) != 1:
            raise CoprimalityError(K.value, ai.value)
        for aj in moduli[i:]:
            if math.gcd(ai.value, aj.value) != 1:
                raise CoprimalityError(ai.value, aj.value)
        square = ai.value ** 2
        if math.gcd(ai.value - i, square) != 1:
            raise PreconditionError('a_{} - {} = {} shares a factor with a_{}^2'.format(i, i, ai.value - i, i))
    congruences = [((K.value - 1) % K.value ** 2, K.value ** 2)]
    congruences += [((ai.value - i) % ai.value ** 2, ai.value ** 2) for i, ai in enumerate(moduli, start=1)]
    N, modulus = crt(congruences)
    if math.gcd(N, modulus) != 1:
        raise InternalError('N = {} is not a reduced residue mod {}'.format(N, modulus))
    system = CongruenceSystem(k, K, tuple(moduli), tuple(congruences), N, modulus)
    logger.debug('solved system K=%d a=%s: N=%d mod %d', K.value, [ai.value for ai in moduli], N, modulus)
    return system


def solve(system: CongruenceSystem) -> Tuple[int, int]:
    """(N, M'), re-checked against every congruence."""
    for r, m in system.congruences:
        if system.N % m != r:
            raise InternalError('N = {} violates N = {} mod {}'.format(system.N, r, m))
    if system.modulus != math.prod(m for _, m in system.congruences):
        raise InternalError('class modulus {} is not the product of the moduli'.format(system.modulus))
    return system.N, system.modulus


def _check_member(p: int, system: CongruenceSystem) -> None:
    if not system.contains(p):
        raise ClassMembershipError('{} is not = {} mod {}'.format(p, system.N, system.modulus))


def cofactors(system: CongruenceSystem) -> List[int]:
    """a_1 K, then a_i (i-1) for i >= 2."""
    return [system.a[0].value * system.K.value] + [ai.value * (i - 1) for i, ai in enumerate(system.a, start=1)
                                                     if i >= 2]


def delta_parts(p: int, system: CongruenceSystem, seed: int = RHO_SEED) -> List[FactoredInteger]:
    """The k factors (p+i)/cofactor_i of delta(p), each factored."""
    _check_member(p, system)
    parts = []
    for i, cof in enumerate(cofactors(system), start=1):
        q, r = divmod(p + i, cof)
        if r:
            raise InternalError('{} does not divide {}'.format(cof, p + i))
        parts.append(factorize(q, seed=seed))
    return parts


def delta(p: int, system: CongruenceSystem, seed: int = RHO_SEED) -> FactoredInteger:
    result = FactoredInteger(1)
    for part in delta_parts(p, system, seed):
        result = result * part
    return result


@dataclass
class DivisibilityReport:
    p: int
    checks: Dict[str, bool] = field(default_factory=dict)

    @property
    def all_true(self) -> bool:
        return all(self.checks.values())

    def failures(self) -> List[str]:
        return [name for name, ok in self.checks.items() if not ok]


def verify_divisibility(p: int, system: CongruenceSystem) -> DivisibilityReport:
    """Divisibility and coprimality structure of p+1, ..., p+k for a class member p."""
    _check_member(p, system)
    K, a1 = system.K.value, system.a[0].value
    report = DivisibilityReport(p)
    checks = report.checks
    checks['a1K | p+1'] = (p + 1) % (a1 * K) == 0
    checks['gcd((p+1)/(a1K), a1) = 1'] = checks['a1K | p+1'] and math.gcd((p + 1) // (a1 * K), a1) == 1
    checks['gcd((p+1)/K, K) = 1'] = (p + 1) % K == 0 and math.gcd((p + 1) // K, K) == 1
    for i, ai in enumerate(system.a[1:], start=2):
        ai = ai.value
        j = i - 1
        divides = (p + i) % (j * ai) == 0
        checks['{}a{} | p+{}'.format(j, i, i)] = divides
        checks['gcd((p+{0})/({1}a{0}), a{0}) = 1'.format(i, j)] = divides and math.gcd((p + i) // (j * ai), ai) == 1
        checks['gcd((p+{0})/{1}, {1}) = 1'.format(i, j)] = (p + i) % j == 0 and math.gcd((p + i) // j, j) == 1
        checks['(p+{0})/{1} = ((p+1)/{1}^2){1} + 1'.format(i, j)] = (
            (p + 1) % (j * j) == 0 and (p + i) == ((p + 1) // (j * j)) * j * j + j)
    return report


@dataclass(frozen=True)
class Bracket:
    i: int
    lower: Fraction
    value: Fraction
    upper: Fraction

    @property
    def ok(self) -> bool:
        return self.lower < self.value < self.upper


def check_bracketing(f: MultiplicativeFunctionSpec, system: CongruenceSystem, c: Sequence[Fraction],
                     nu: int) -> List[Bracket]:
    """(c_i -+ 1/(2 nu)) / anchor_i around f(a_i), anchor_1 = f(K), anchor_i = f(i-1)."""
    if len(c) != system.k:
        raise PreconditionError('{} box centres for k = {}'.format(len(c), system.k))
    half = Fraction(1, 2 * nu)
    anchors = [evaluate(f, system.K)] + [evaluate(f, i - 1) for i in range(2, system.k + 1)]
    brackets = []
    for i, (ci, anchor, ai) in enumerate(zip(c, anchors, system.a), start=1):
        ci = Fraction(ci)
        brackets.append(Bracket(i, (ci - half) / anchor, evaluate(f, ai), (ci + half) / anchor))
    return brackets
