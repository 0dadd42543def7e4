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
"""Choose a sub-collection of a vanishing, divergent term stream summing to a target."""
import sys
from dataclasses import dataclass, field
from logging import getLogger
from typing import Hashable, Iterable, Iterator, List, Tuple

from mulshift.exceptions import BudgetExhaustedError, PreconditionError
from mulshift.properties import DEFAULT_SELECTOR_BUDGET, SELECTOR_PRECISION_FACTOR

logger = getLogger(__name__)


class TermStream:
    """Ordered (index, magnitude) pairs with non-negative magnitudes.

    The caller asserts that the magnitudes tend to zero and their sum diverges."""

    def __init__(self, terms: Iterable[Tuple[Hashable, float]], description: str = '') -> None:
        self._terms = terms
        self.description = description

    def __iter__(self) -> Iterator[Tuple[Hashable, float]]:
        for index, magnitude in self._terms:
            if magnitude < 0:
                raise PreconditionError('negative term {} at index {!r}'.format(magnitude, index))
            yield index, float(magnitude)

    def __repr__(self):
        return 'TermStream({})'.format(self.description or '...')


@dataclass
class SelectionResult:
    chosen: List[Hashable] = field(default_factory=list)
    achieved: float = 0.0
    gap: float = 0.0
    terms_consumed: int = 0


def select_to_target(stream: Iterable[Tuple[Hashable, float]], beta: float, tol: float,
                     budget: int = DEFAULT_SELECTOR_BUDGET) -> SelectionResult:
    """Never-overshoot greedy.

    Walk the stream in order and keep a term iff the running sum stays <= beta;
    stop once beta - sum < tol. The running sum is Neumaier-compensated."""
    if beta < 0:
        raise PreconditionError('beta must be >= 0, got {}'.format(beta))
    if tol <= 0:
        raise PreconditionError('tol must be > 0, got {}'.format(tol))
    if budget < 1:
        raise PreconditionError('budget must be >= 1, got {}'.format(budget))
    result = SelectionResult(gap=float(beta))
    if beta == 0:
        return result
    eps = sys.float_info.epsilon
    total, comp = 0.0, 0.0
    for index, b in stream:
        result.terms_consumed += 1
        if tol <= SELECTOR_PRECISION_FACTOR * eps * result.terms_consumed:
            raise PreconditionError('tol {} is below the rounding floor after {} terms'.format(
                tol, result.terms_consumed))
        if (total + comp) + b <= beta:
            t = total + b
            if abs(total) >= abs(b):
                comp += (total - t) + b
            else:
                comp += (b - t) + total
            total = t
            result.chosen.append(index)
            result.achieved = min(total + comp, beta)
            result.gap = beta - result.achieved
            if result.gap < tol:
                logger.debug('target %.12g reached with %d terms out of %d',
                             beta, len(result.chosen), result.terms_consumed)
                return result
        if result.terms_consumed >= budget:
            break
    raise BudgetExhaustedError('stream gave out after {} terms with gap {:.6g} >= tol {:.3g}'.format(
        result.terms_consumed, result.gap, tol), partial=result, residual=result.gap)
