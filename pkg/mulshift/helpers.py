#!/usr/bin/python -u
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
#
from datetime import datetime, timezone
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from mulshift.exceptions import PreconditionError

Rational = Union[Fraction, int, str]

_INFINITE = {'inf', '+inf', 'infinity', '+infinity'}


def parse_rational(text: Rational) -> Fraction:
    """Exact value of "p/q", an integer, or a decimal/scientific literal such as "1e9"."""
    if isinstance(text, (Fraction, int)) and not isinstance(text, bool):
        return Fraction(text)
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError):
        raise PreconditionError('{!r} is not a rational number'.format(text))


def parse_natural(text: Rational) -> int:
    value = parse_rational(text)
    if value.denominator != 1 or value < 0:
        raise PreconditionError('{!r} is not a natural number'.format(text))
    return int(value)


def parse_rational_list(text: Union[str, List[Rational]]) -> List[Fraction]:
    items = text.split(',') if isinstance(text, str) else list(text)
    return [parse_rational(item) for item in items]


def parse_natural_list(text: Union[str, List[Rational]]) -> List[int]:
    items = text.split(',') if isinstance(text, str) else list(text)
    return [parse_natural(item) for item in items]


def parse_bound(text: str) -> Optional[Fraction]:
    text = text.strip().lower()
    if text in _INFINITE or text in {'-' + t.lstrip('+') for t in _INFINITE}:
        return None
    return parse_rational(text)


def parse_box(text: str) -> List[Tuple[Optional[Fraction], Optional[Fraction]]]:
    """'lo:hi,lo:hi,...' with 'inf' and '-inf' for unbounded ends."""
    bounds = []
    for item in text.split(','):
        lo, sep, hi = item.partition(':')
        if not sep:
            raise PreconditionError('box coordinate {!r} is not of the form lo:hi'.format(item))
        bounds.append((parse_bound(lo), parse_bound(hi)))
    return bounds


def parse_permutation(text: str) -> Tuple[int, ...]:
    try:
        return tuple(int(item) for item in text.split(','))
    except ValueError:
        raise PreconditionError('{!r} is not a comma separated list of shifts'.format(text))


def format_decimal(value: Fraction, digits: int = 12) -> str:
    return '{:.{}g}'.format(float(value), digits)


def utc_timestamp() -> str:
    return datetime.now(timezone.utc).isoformat(timespec='seconds')
