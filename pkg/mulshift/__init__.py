#!/usr/bin/env python
#
#    mulshift: shifted-prime constructions for multiplicative functions
#    Copyright (C) 2020 mulshift developers
#
#    This library is free software; you can redistribute it and/or
#    modify it under the terms of the GNU Lesser General Public
#    License as published by the Free Software Foundation; either
#    version 2.1 of the License, or (at your option) any later version.
#
#    This library is distributed in the hope that it will be useful,
#    but WITHOUT ANY WARRANTY; without even the implied warranty of
#    MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the GNU
#    Lesser General Public License for more details.
#
#    You should have received a copy of the GNU Lesser General Public
#    License along with this library; if not, write to the Free Software
#    Foundation, Inc., 51 Franklin Street, Fifth Floor, Boston, MA  02110-1301  USA

from importlib.metadata import PackageNotFoundError, version

from mulshift.arith import INFINITY, FactoredInteger, crt, factorize, is_prime
from mulshift.congruence import CongruenceSystem, build_system, compute_epsilon, compute_K, delta, verify_divisibility
from mulshift.exceptions import (BoxViolationError, BudgetExhaustedError, ClassMismatchError, MulshiftError,
                                 PreconditionError)
from mulshift.moduli import ModulusRequest, build_moduli
from mulshift.multfunc import BUILTIN_FUNCTIONS, MultiplicativeFunctionSpec, evaluate, get_function
from mulshift.properties import DivergenceClass
from mulshift.scanner import Scanner, TargetBox, find_orderings, members_of_S, scan_constructed, scan_direct
from mulshift.selector import TermStream, select_to_target

__copyright__ = 'Copyright (C) 2020 mulshift developers'

try:
    __version__ = version(__name__)
except PackageNotFoundError:  # pragma: no-cover
    # package is not installed
    __version__ = "unknown"

__all__ = ['__version__', 'INFINITY', 'FactoredInteger', 'crt', 'factorize', 'is_prime',
           'MultiplicativeFunctionSpec', 'BUILTIN_FUNCTIONS', 'DivergenceClass', 'evaluate', 'get_function',
           'TermStream', 'select_to_target', 'ModulusRequest', 'build_moduli',
           'CongruenceSystem', 'build_system', 'compute_K', 'compute_epsilon', 'delta', 'verify_divisibility',
           'Scanner', 'TargetBox', 'members_of_S', 'scan_constructed', 'scan_direct', 'find_orderings',
           'MulshiftError', 'PreconditionError', 'ClassMismatchError', 'BoxViolationError', 'BudgetExhaustedError']
