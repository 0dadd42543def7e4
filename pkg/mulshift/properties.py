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
from enum import Enum, IntEnum

SCHEMA_VERSION = 1

# factorisation and primality
TRIAL_DIVISION_BOUND = 10 ** 6  # type: int
MAX_FACTOR_BITS = 128
RHO_SEED = 0x5eed
# first 13 primes are a deterministic Miller-Rabin witness set below this bound
MR_DETERMINISTIC_LIMIT = 3317044064679887385961981
MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)

# sieving
SEGMENT_SIZE = 1 << 20
AP_SIEVE_MODULUS = 64
CLASS_CHUNK = 4096  # class members per work chunk

# construction
DEFAULT_ALPHA = 0.1
DEFAULT_PRIME_BUDGET = 10 ** 8
DEFAULT_RECORD_CAP = 1000
DEFAULT_SELECTOR_BUDGET = 10 ** 7
DEFAULT_TAIL_LIMIT = 10 ** 6
G_OF_D_LIMIT = 10 ** 7  # g_of_d keeps O(d) int64 arrays; products stay below d^2 < 2^63
BUILDER_RETRIES = 8
PRIME_DEVIATION_CAP = 0.5
SELECTOR_PRECISION_FACTOR = 1000

COMMAND_HELP_STRING = '''<Commands>
  construct : build the congruence system for a target box and scan its residue class
  scan      : enumerate primes directly and keep tuples inside a box
  order     : first occurrences of strict orderings of f(p+1),...,f(p+k)
  sieve     : sieve statistics, g(d) checks and prime-race deviations
  info      : show built-in multiplicative functions
'''


class ExitCode(IntEnum):
    SUCCESS = 0
    FAILURE = 1
    PRECONDITION = 2
    BUDGET = 3
    NOTHING_FOUND = 4


class DivergenceClass(str, Enum):
    """Which side of 1 the prime values diverge on."""
    ABOVE_ONE = 'above-one'
    BELOW_ONE = 'below-one'
    NON_DIVERGENT = 'non-divergent'


class RunMode(str, Enum):
    CONSTRUCT = 'construct'
    SCAN = 'scan'
    ORDER = 'order'
    SIEVE = 'sieve'
