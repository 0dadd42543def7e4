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
"""Squarefree moduli a_1, ..., a_k with f(a_i) close to prescribed targets."""
import math
from dataclasses import dataclass, field
from fractions import Fraction
from logging import getLogger
from typing import Iterator, List, Optional, Tuple

from mulshift.arith import ONE, FactoredInteger, iter_primes
from mulshift.exceptions import BudgetExhaustedError, ClassMismatchError, InternalError, PreconditionError
from mulshift.multfunc import MultiplicativeFunctionSpec, evaluate
from mulshift.properties import BUILDER_RETRIES, DEFAULT_PRIME_BUDGET, PRIME_DEVIATION_CAP, DivergenceClass
from mulshift.selector import TermStream, select_to_target

logger = getLogger(__name__)


@dataclass
class ModulusRequest:
    f: MultiplicativeFunctionSpec
    targets: List[Fraction]
    epsilon: Fraction
    m: FactoredInteger = ONE
    prime_budget: int = DEFAULT_PRIME_BUDGET
    warnings: List[str] = field(default_factory=list)

    def __post_init__(self):
        self.targets = [Fraction(x) for x in self.targets]
        self.epsilon = Fraction(self.epsilon)
        if self.epsilon <= 0:
            raise PreconditionError('epsilon must be positive, got {}'.format(self.epsilon))
        if self.prime_budget < 2:
            raise PreconditionError('prime budget must be >= 2, got {}'.format(self.prime_budget))
        for i, x in enumerate(self.targets, start=1):
            if x < 0:
                raise PreconditionError('target x_{} = {} is negative'.format(i, x))


def _log_magnitude(value: Fraction) -> float:
    """log(value) for value >= 1, or log(1/value) below 1."""
    if value < 1:
        value = 1 / value
    return math.log(float(value))


def _mode_primes(f: MultiplicativeFunctionSpec, mode: DivergenceClass, start: int,
                 budget: int) -> Iterator[Tuple[int, Fraction]]:
    if mode is not f.declared_class or mode is DivergenceClass.NON_DIVERGENT:
        return
    cap = Fraction(PRIME_DEVIATION_CAP)
    for p in iter_primes(start, budget):
        value = f.at_prime(p)
        if abs(value - 1) > cap:
            continue
        if (value > 1) if mode is DivergenceClass.ABOVE_ONE else (value < 1):
            yield p, value


def log_term_stream(f: MultiplicativeFunctionSpec, mode: DivergenceClass, exclude: FactoredInteger = ONE,
                    budget: int = DEFAULT_PRIME_BUDGET) -> TermStream:
    """(p, |log f(p)|) over primes P+(exclude) < p <= budget on the mode's side of 1.

    A mode that differs from the declared class yields nothing."""
    mode = DivergenceClass(mode)
    start = exclude.p_plus() + 1
    terms = ((p, _log_magnitude(value)) for p, value in _mode_primes(f, mode, start, budget))
    return TermStream(terms, '{} {} after {}'.format(f.name, mode.value, exclude.p_plus()))


def _mode_for(f: MultiplicativeFunctionSpec, i: int, x: Fraction) -> DivergenceClass:
    declared = f.declared_class
    if declared is DivergenceClass.NON_DIVERGENT:
        raise ClassMismatchError('{} is non-divergent; no moduli can be built'.format(f.name))
    if x > 1 and declared is not DivergenceClass.ABOVE_ONE:
        raise ClassMismatchError('x_{} = {} > 1 needs an above-one function, {} is {}'.format(
            i, x, f.name, declared.value))
    if x < 1 and declared is not DivergenceClass.BELOW_ONE:
        raise ClassMismatchError('x_{} = {} < 1 needs a below-one function, {} is {}'.format(
            i, x, f.name, declared.value))
    return declared


def _single_prime(f: MultiplicativeFunctionSpec, mode: DivergenceClass, epsilon: Fraction, start: int,
                  budget: int) -> Optional[int]:
    for p, value in _mode_primes(f, mode, start, budget):
        if abs(value - 1) < epsilon:
            return p
    return None


def _accumulate_to_zero(f: MultiplicativeFunctionSpec, epsilon: Fraction, start: int,
                        budget: int) -> Tuple[List[int], Fraction]:
    chosen = []  # type: List[int]
    value = Fraction(1)
    for p, fp in _mode_primes(f, DivergenceClass.BELOW_ONE, start, budget):
        chosen.append(p)
        value *= fp
        if value < epsilon:
            break
    return chosen, value


def _log_tolerance(x: Fraction, epsilon: Fraction) -> float:
    upper = math.log(float((x + epsilon) / x))
    if x - epsilon <= 0:
        return upper
    return min(math.log(float(x / (x - epsilon))), upper)


def build_moduli(req: ModulusRequest) -> List[FactoredInteger]:
    """Pairwise coprime squarefree a_i, coprime to m, with |f(a_i) - x_i| < epsilon.

    Every prime of a_i exceeds every prime of m * a_1 * ... * a_{i-1}."""
    f = req.f
    built = []  # type: List[FactoredInteger]
    exclude = req.m
    for i, x in enumerate(req.targets, start=1):
        mode = _mode_for(f, i, x)
        start = exclude.p_plus() + 1
        if x == 1:
            p = _single_prime(f, mode, req.epsilon, start, req.prime_budget)
            if p is None:
                raise BudgetExhaustedError('no prime in ({}, {}] has |f(p) - 1| < {}'.format(
                    start - 1, req.prime_budget, req.epsilon), partial=built, residual=float(req.epsilon))
            a = FactoredInteger.from_primes([p])
        elif x == 0:
            primes, value = _accumulate_to_zero(f, req.epsilon, start, req.prime_budget)
            if value >= req.epsilon:
                raise BudgetExhaustedError('f(a_{}) only fell to {:.6g} within the prime budget'.format(
                    i, float(value)), partial=built + [FactoredInteger.from_primes(primes)],
                    residual=float(value - req.epsilon))
            a = FactoredInteger.from_primes(primes)
        else:
            a = _select_modulus(req, i, x, mode, exclude, built)
        logger.debug('a_%d = %s', i, a.format_factors())
        built.append(a)
        exclude = exclude * a
    return built


def _select_modulus(req: ModulusRequest, i: int, x: Fraction, mode: DivergenceClass, exclude: FactoredInteger,
                    built: List[FactoredInteger]) -> FactoredInteger:
    beta = _log_magnitude(x)
    tol = _log_tolerance(x, req.epsilon)
    for attempt in range(BUILDER_RETRIES):
        stream = log_term_stream(req.f, mode, exclude, req.prime_budget)
        try:
            selection = select_to_target(stream, beta, tol)
        except BudgetExhaustedError as e:
            partial = FactoredInteger.from_primes(e.partial.chosen) if e.partial is not None else ONE
            raise BudgetExhaustedError('prime budget {} exhausted while building a_{}: log gap {:.6g}'.format(
                req.prime_budget, i, e.residual), partial=built + [partial], residual=e.residual)
        a = FactoredInteger.from_primes(selection.chosen)
        if abs(evaluate(req.f, a) - x) < req.epsilon:
            return a
        message = 'a_{} = {} misses x_{} = {} exactly; retrying with tol {:.3g}'.format(
            i, a.value, i, x, tol / 2)
        logger.warning(message)
        req.warnings.append(message)
        tol /= 2
    raise InternalError('could not build a_{} after {} retries'.format(i, BUILDER_RETRIES))
