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
"""Positive multiplicative functions given by exact prime-power rules."""
import math
from dataclasses import dataclass
from fractions import Fraction
from logging import getLogger
from typing import Callable, Dict, Mapping, Optional, Tuple, Union

from mulshift.arith import FactoredInteger, factorize, iter_primes
from mulshift.exceptions import PositivityError, PreconditionError
from mulshift.properties import PRIME_DEVIATION_CAP, DivergenceClass

logger = getLogger(__name__)

ExactRational = Fraction
PrimePowerRule = Callable[[int, int], Fraction]


class MultiplicativeFunctionSpec:
    """f(n) = prod rule(p, a) over p^a || n, with f(1) = 1.

    ``overrides`` maps (p, a) to exact values replacing the rule there."""

    def __init__(self, name: str, prime_power_rule: PrimePowerRule, declared_class: DivergenceClass,
                 description: str = '', overrides: Optional[Mapping[Tuple[int, int], Fraction]] = None) -> None:
        self.name = name
        self._rule = prime_power_rule
        self.declared_class = DivergenceClass(declared_class)
        self.description = description
        self.overrides = dict(overrides or {})  # type: Dict[Tuple[int, int], Fraction]

    def rule(self, p: int, a: int) -> Fraction:
        value = self.overrides.get((p, a))
        if value is None:
            value = Fraction(self._rule(p, a))
        if value <= 0:
            raise PositivityError('{}: rule gives non-positive value {} at {}^{}'.format(self.name, value, p, a))
        return value

    def at_prime(self, p: int) -> Fraction:
        return self.rule(p, 1)

    def with_overrides(self, name: str, overrides: Mapping[Tuple[int, int], Fraction],
                       declared_class: Optional[DivergenceClass] = None) -> 'MultiplicativeFunctionSpec':
        table = dict(self.overrides)
        table.update({(int(p), int(a)): Fraction(v) for (p, a), v in overrides.items()})
        return MultiplicativeFunctionSpec(name, self._rule,
                                          declared_class if declared_class is not None else self.declared_class,
                                          description='{} with {} overrides'.format(self.name, len(table)),
                                          overrides=table)

    def __call__(self, n: Union[int, FactoredInteger]) -> Fraction:
        return evaluate(self, n)

    def __repr__(self):
        return 'MultiplicativeFunctionSpec({!r}, {})'.format(self.name, self.declared_class.value)


def _n_over_phi(p: int, a: int) -> Fraction:
    return Fraction(p, p - 1)


def _sigma_over_n(p: int, a: int) -> Fraction:
    return Fraction(p ** (a + 1) - 1, p ** a * (p - 1))


def _phi_over_n(p: int, a: int) -> Fraction:
    return Fraction(p - 1, p)


def _gamma_over_n(p: int, a: int) -> Fraction:
    return Fraction(1, p ** (a - 1))


BUILTIN_FUNCTIONS = {
    'n_over_phi': MultiplicativeFunctionSpec('n_over_phi', _n_over_phi, DivergenceClass.ABOVE_ONE,
                                             'n/phi(n): p^a -> p/(p-1)'),
    'sigma_over_n': MultiplicativeFunctionSpec('sigma_over_n', _sigma_over_n, DivergenceClass.ABOVE_ONE,
                                               'sigma(n)/n: p^a -> (p^(a+1)-1)/(p^a (p-1))'),
    'phi_over_n': MultiplicativeFunctionSpec('phi_over_n', _phi_over_n, DivergenceClass.BELOW_ONE,
                                             'phi(n)/n: p^a -> (p-1)/p'),
    'gamma_over_n': MultiplicativeFunctionSpec('gamma_over_n', _gamma_over_n, DivergenceClass.NON_DIVERGENT,
                                               'gamma(n)/n: p^a -> p^(1-a)'),
}  # type: Dict[str, MultiplicativeFunctionSpec]


def get_function(name: str) -> MultiplicativeFunctionSpec:
    try:
        return BUILTIN_FUNCTIONS[name]
    except KeyError:
        raise PreconditionError('unknown function {!r}; built-ins are {}'.format(name, ', '.join(BUILTIN_FUNCTIONS)))


def parse_override_key(key: str) -> Tuple[int, int]:
    """'p' or 'p^a' -> (p, a)."""
    head, _, tail = str(key).partition('^')
    try:
        return int(head), int(tail) if tail else 1
    except ValueError:
        raise PreconditionError('bad override key {!r}, expected "p" or "p^a"'.format(key))


def evaluate(f: MultiplicativeFunctionSpec, n: Union[int, FactoredInteger]) -> Fraction:
    if not isinstance(n, FactoredInteger):
        n = factorize(n)
    value = Fraction(1)
    for p, a in n.factors:
        value *= f.rule(p, a)
    return value


def prime_deviation(f: MultiplicativeFunctionSpec, p: int) -> Fraction:
    return f.at_prime(p) - 1


def divergence_partial_sums(f: MultiplicativeFunctionSpec, P: int) -> Tuple[float, float]:
    """(sum of f(p)-1 over f(p) > 1, sum of 1-f(p) over f(p) < 1), primes p <= P."""
    if P < 2:
        raise PreconditionError('P must be >= 2, got {}'.format(P))
    plus, minus = [], []
    for p in iter_primes(2, P):
        d = prime_deviation(f, p)
        if d > 0:
            plus.append(float(d))
        elif d < 0:
            minus.append(float(-d))
    return math.fsum(plus), math.fsum(minus)


@dataclass(frozen=True)
class LimitDiagnostic:
    max_deviation: Fraction  # max |f(p)-1| over primes in (P, 2P]
    argmax: Optional[int]
    p0: Optional[int]  # least prime <= P with |f(q)-1| <= 1/2 for all primes q in [p0, 2P]


def limit_diagnostic(f: MultiplicativeFunctionSpec, P: int) -> LimitDiagnostic:
    if P < 2:
        raise PreconditionError('P must be >= 2, got {}'.format(P))
    best, argmax = Fraction(0), None  # type: Fraction, Optional[int]
    p0 = None  # type: Optional[int]
    cap = Fraction(PRIME_DEVIATION_CAP)
    for p in iter_primes(2, 2 * P):
        d = abs(prime_deviation(f, p))
        if d > cap:
            p0 = None
        elif p0 is None and p <= P:
            p0 = p
        if p > P and (argmax is None or d > best):
            best, argmax = d, p
    return LimitDiagnostic(best, argmax, p0)


def audit_declared_class(f: MultiplicativeFunctionSpec, P: int = 10 ** 4) -> bool:
    """True when the partial sums up to P agree with the declared class; warns otherwise."""
    s_plus, s_minus = divergence_partial_sums(f, P)
    declared = f.declared_class
    if declared is DivergenceClass.ABOVE_ONE:
        ok = s_plus > 0 and s_plus >= s_minus
    elif declared is DivergenceClass.BELOW_ONE:
        ok = s_minus > 0 and s_minus >= s_plus
    else:
        ok = s_plus == 0 and s_minus == 0
    if not ok:
        logger.warning('%s declared %s but partial sums up to %d are S+=%.6g, S-=%.6g',
                       f.name, declared.value, P, s_plus, s_minus)
    return ok
