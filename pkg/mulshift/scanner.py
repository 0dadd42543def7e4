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
"""Prime scans.

Two independent routes reach the tuples (f(p+1), ..., f(p+k)):

* the class route walks N, N + M', N + 2M', ... of a solved congruence system and
  reads f(p+i) off the construction, f(anchor_i) f(a_i) f(delta part_i);
* the direct route sieves every prime up to x and factors p+1, ..., p+k together
  in windows.
"""
import contextlib
import itertools
import math
import queue
import threading
import time
from dataclasses import dataclass, field
from fractions import Fraction
from logging import getLogger
from typing import Any, Callable, Dict, Iterator, List, Optional, Sequence, Tuple, TypeVar

from mulshift.arith import FactoredInteger, factor_window, is_prime, segmented_primes
from mulshift.callbacks import ScanCallback
from mulshift.congruence import (Bracket, CongruenceSystem, build_system, check_bracketing, compute_epsilon,
                                 compute_K, delta_parts, solve, targets_to_x, verify_divisibility)
from mulshift.exceptions import BoxViolationError, ClassMismatchError, InternalError, MulshiftError, PreconditionError
from mulshift.moduli import ModulusRequest, build_moduli
from mulshift.multfunc import MultiplicativeFunctionSpec, audit_declared_class, evaluate
from mulshift.properties import (CLASS_CHUNK, DEFAULT_ALPHA, DEFAULT_PRIME_BUDGET, DEFAULT_RECORD_CAP, RHO_SEED,
                                 SEGMENT_SIZE, DivergenceClass)

logger = getLogger(__name__)

T = TypeVar('T')
Permutation = Tuple[int, ...]


# ------------------
# Boxes and records
# ------------------
@dataclass(frozen=True)
class Interval:
    """Interval of rationals; a bound of None is unbounded."""
    lower: Optional[Fraction]
    upper: Optional[Fraction]
    closed: bool = False

    def __post_init__(self):
        if self.lower is not None and self.upper is not None:
            if self.upper < self.lower or (self.upper == self.lower and not self.closed):
                raise PreconditionError('empty interval {}'.format(self))

    def __contains__(self, value) -> bool:
        if self.lower is not None and (value < self.lower if self.closed else value <= self.lower):
            return False
        if self.upper is not None and (value > self.upper if self.closed else value >= self.upper):
            return False
        return True

    def __str__(self):
        left, right = ('[', ']') if self.closed else ('(', ')')
        lower = '-inf' if self.lower is None else str(self.lower)
        upper = 'inf' if self.upper is None else str(self.upper)
        return '{}{}, {}{}'.format(left, lower, upper, right)

    def to_json(self) -> Dict[str, Any]:
        return {'lower': None if self.lower is None else str(self.lower),
                'upper': None if self.upper is None else str(self.upper),
                'closed': self.closed}


@dataclass(frozen=True)
class TargetBox:
    intervals: Tuple[Interval, ...]
    c: Optional[Tuple[Fraction, ...]] = None
    nu: Optional[int] = None

    @classmethod
    def from_center(cls, c: Sequence[Fraction], nu: int) -> 'TargetBox':
        """Open box prod (c_i - 1/nu, c_i + 1/nu)."""
        if nu < 1:
            raise PreconditionError('nu must be >= 1, got {}'.format(nu))
        half = Fraction(1, nu)
        centres = tuple(Fraction(ci) for ci in c)
        return cls(tuple(Interval(ci - half, ci + half) for ci in centres), centres, nu)

    @classmethod
    def from_bounds(cls, bounds: Sequence[Tuple[Optional[Fraction], Optional[Fraction]]],
                    closed: bool = True) -> 'TargetBox':
        return cls(tuple(Interval(None if lo is None else Fraction(lo), None if hi is None else Fraction(hi), closed)
                         for lo, hi in bounds))

    def __len__(self) -> int:
        return len(self.intervals)

    def contains(self, values: Sequence[Fraction]) -> bool:
        return len(values) == len(self.intervals) and all(v in iv for v, iv in zip(values, self.intervals))

    def __str__(self):
        return ' x '.join(str(iv) for iv in self.intervals)

    def to_json(self) -> Dict[str, Any]:
        result = {'intervals': [iv.to_json() for iv in self.intervals]}  # type: Dict[str, Any]
        if self.c is not None:
            result['c'] = [str(ci) for ci in self.c]
            result['nu'] = self.nu
        return result


@dataclass
class RoughPart:
    """The delta part of p+i: its f-value against the bound 2 * sum |f(q) - 1|, and omega against its cap."""
    shift: int
    cofactor: FactoredInteger
    value: Fraction
    bound: Fraction
    omega: int
    omega_cap: float

    @property
    def within_bound(self) -> bool:
        return abs(self.value - 1) <= self.bound

    @property
    def omega_ok(self) -> bool:
        return self.omega <= self.omega_cap

    def to_json(self) -> Dict[str, Any]:
        return {'shift': self.shift, 'cofactor': self.cofactor.to_json(), 'value': str(self.value),
                'bound': str(self.bound), 'within_bound': self.within_bound, 'omega': self.omega,
                'omega_cap': self.omega_cap, 'omega_ok': self.omega_ok}


@dataclass
class TupleRecord:
    p: int
    values: Tuple[Fraction, ...]
    in_box: bool
    rough: Optional[bool] = None  # P-(delta(p)) > x^alpha; class route only
    squarefree: Optional[bool] = None
    divisibility: Optional[bool] = None
    rough_parts: List[RoughPart] = field(default_factory=list)

    def to_json(self) -> Dict[str, Any]:
        result = {'p': self.p, 'values': [str(v) for v in self.values], 'in_box': self.in_box,
                  'rough': self.rough, 'squarefree': self.squarefree}  # type: Dict[str, Any]
        if self.divisibility is not None:
            result['divisibility'] = self.divisibility
            result['rough_parts'] = [part.to_json() for part in self.rough_parts]
        return result


@dataclass
class ScanReport:
    kind: str
    function: str
    k: int
    x: int
    box: TargetBox
    record_cap: int = DEFAULT_RECORD_CAP
    alpha: Optional[float] = None
    system: Optional[CongruenceSystem] = None
    epsilon: Optional[Fraction] = None
    targets: List[Fraction] = field(default_factory=list)
    bracketing: List[Bracket] = field(default_factory=list)
    class_primes: int = 0
    members_in_S: int = 0
    box_misses: List[int] = field(default_factory=list)
    count: int = 0
    records: List[TupleRecord] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def truncated(self) -> bool:
        return self.count > len(self.records)

    def to_json(self) -> Dict[str, Any]:
        """Deterministic payload; timing stays out."""
        result = {
            'kind': self.kind,
            'function': self.function,
            'k': self.k,
            'x': self.x,
            'box': self.box.to_json(),
            'count': self.count,
            'record_cap': self.record_cap,
            'truncated': self.truncated,
            'records': [r.to_json() for r in self.records],
            'warnings': list(self.warnings),
        }  # type: Dict[str, Any]
        if self.system is not None:
            result.update({
                'alpha': self.alpha,
                'system': self.system.to_json(),
                'epsilon': str(self.epsilon),
                'targets': [str(t) for t in self.targets],
                'bracketing': [{'i': b.i, 'lower': str(b.lower), 'value': str(b.value), 'upper': str(b.upper),
                                'ok': b.ok} for b in self.bracketing],
                'class_primes': self.class_primes,
                'members_in_S': self.members_in_S,
                'box_misses': list(self.box_misses),
            })
        return result


@dataclass
class OrderingRow:
    first: Optional[int] = None
    count: int = 0

    def add(self, p: int) -> None:
        if self.first is None or p < self.first:
            self.first = p
        self.count += 1

    def merge(self, other: 'OrderingRow') -> None:
        if other.first is not None and (self.first is None or other.first < self.first):
            self.first = other.first
        self.count += other.count


@dataclass
class OrderingTable:
    """First occurrence and count per strict ordering f(p+i_1) < ... < f(p+i_k); ties apart."""
    function: str
    k: int
    x: int
    rows: Dict[Permutation, OrderingRow] = field(default_factory=dict)
    ties: Dict[Tuple[int, int], OrderingRow] = field(default_factory=dict)
    tied_primes: int = 0
    primes: int = 0

    def to_json(self) -> Dict[str, Any]:
        return {
            'function': self.function,
            'k': self.k,
            'x': self.x,
            'primes': self.primes,
            'orderings': [{'permutation': list(perm), 'first': row.first, 'count': row.count}
                          for perm, row in sorted(self.rows.items())],
            'ties': [{'pair': list(pair), 'first': row.first, 'count': row.count}
                     for pair, row in sorted(self.ties.items())],
            'tied_primes': self.tied_primes,
        }


@dataclass
class CrossCheckResult:
    checked: int
    mismatches: List[int] = field(default_factory=list)

    @property
    def agree(self) -> bool:
        return not self.mismatches


# ------------------
# Work partitioning
# ------------------
def partition(lo: int, hi: int, size: int) -> List[Tuple[int, int]]:
    """Disjoint inclusive chunks covering [lo, hi]."""
    return [(start, min(start + size - 1, hi)) for start in range(lo, hi + 1, size)]


class Worker:
    """Scan worker class to run a task over chunks, one after another or on threads."""

    def __init__(self, workers: int = 1, q: Optional[queue.Queue] = None) -> None:
        self.workers = workers
        self.q = q

    def run(self, chunks: Sequence[Tuple[int, int]], task: Callable[[int, int], T],
            measure: Callable[[T], int] = len) -> List[T]:  # type: ignore
        """Results come back in chunk order whatever the thread scheduling."""
        results = [None] * len(chunks)  # type: List[Any]
        if self.workers <= 1 or len(chunks) <= 1:
            for n in range(len(chunks)):
                results[n] = self.run_single(chunks[n], task, measure)
        else:
            errors = []  # type: List[BaseException]
            threads = []
            for w in range(min(self.workers, len(chunks))):
                t = threading.Thread(target=self.run_share, args=(w, chunks, task, measure, results, errors))
                t.start()
                threads.append(t)
            for t in threads:
                t.join()
            if errors:
                raise errors[0]
        return results

    def run_share(self, w: int, chunks, task, measure, results: List[Any], errors: List[BaseException]) -> None:
        try:
            for n in range(w, len(chunks), self.workers):
                results[n] = self.run_single(chunks[n], task, measure)
        except BaseException as e:  # noqa
            errors.append(e)

    def run_single(self, chunk: Tuple[int, int], task, measure):
        lo, hi = chunk
        label = '{}..{}'.format(lo, hi)
        if self.q is not None:
            self.q.put(('s', label, str(hi - lo + 1)))
        out = task(lo, hi)
        if self.q is not None:
            self.q.put(('e', label, str(measure(out))))
        return out


@contextlib.contextmanager
def _stage(name: str) -> Iterator[None]:
    try:
        yield
    except MulshiftError as e:
        if e.stage is None:
            e.stage = name
        raise


def _delta_flags(parts: Sequence[FactoredInteger], y: float) -> Tuple[bool, bool]:
    d = FactoredInteger(1)
    for part in parts:
        d = d * part
    return d.p_minus() > y, d.is_squarefree()


def ordering_targets(f: MultiplicativeFunctionSpec, k: int, permutation: Sequence[int], nu: int) -> List[Fraction]:
    """Box centres inside the admissible box with c_{i_1} < ... < c_{i_k}, neighbours 3/nu apart.

    Every prime of the matching constructed scan then realises the ordering."""
    perm = _check_permutation(permutation, k)
    K = compute_K(k)
    anchors = [evaluate(f, K)] + [evaluate(f, i - 1) for i in range(2, k + 1)]
    step = Fraction(3, nu)
    c = [Fraction(0)] * k
    if f.declared_class is DivergenceClass.ABOVE_ONE:
        previous = None  # type: Optional[Fraction]
        for i in perm:
            ci = anchors[i - 1] if previous is None else max(anchors[i - 1], previous + step)
            c[i - 1] = previous = ci
    elif f.declared_class is DivergenceClass.BELOW_ONE:
        following = None  # type: Optional[Fraction]
        for i in reversed(perm):
            ci = anchors[i - 1] if following is None else min(anchors[i - 1], following - step)
            if ci < 0:
                raise BoxViolationError('nu = {} is too small to separate the ordering {}'.format(nu, perm), i)
            c[i - 1] = following = ci
    else:
        raise ClassMismatchError('{} is non-divergent; orderings cannot be constructed'.format(f.name))
    return c


def _check_permutation(permutation: Sequence[int], k: int) -> Permutation:
    perm = tuple(int(i) for i in permutation)
    if sorted(perm) != list(range(1, k + 1)):
        raise PreconditionError('{} is not a permutation of 1..{}'.format(list(perm), k))
    return perm


# ------------------
# Scanner
# ------------------
class Scanner(contextlib.AbstractContextManager):
    """Scans shifted primes of one function and tuple length.

    With a callback, progress events go through a queue to a reporter thread that
    is joined on close."""

    def __init__(self, f: Optional[MultiplicativeFunctionSpec], k: int, *, alpha: float = DEFAULT_ALPHA,
                 workers: int = 1, record_cap: int = DEFAULT_RECORD_CAP, prime_budget: int = DEFAULT_PRIME_BUDGET,
                 callback: Optional[ScanCallback] = None, seed: int = RHO_SEED) -> None:
        if k < 1:
            raise PreconditionError('k must be >= 1, got {}'.format(k))
        if not 0 < alpha < 1:
            raise PreconditionError('alpha must lie in (0, 1), got {}'.format(alpha))
        if workers < 1 or record_cap < 0:
            raise PreconditionError('workers must be >= 1 and record_cap >= 0')
        if callback is not None and not isinstance(callback, ScanCallback):
            raise ValueError('Callback specified is not a subclass of mulshift.callbacks.ScanCallback class')
        self.f = f
        self.k = k
        self.alpha = alpha
        self.record_cap = record_cap
        self.prime_budget = prime_budget
        self.seed = seed
        self.warnings = []  # type: List[str]
        self._values = {}  # type: Dict[Tuple[int, int], Fraction]
        self.q = queue.Queue()  # type: queue.Queue[Any]
        self.reporterd = None  # type: Optional[threading.Thread]
        if callback is not None:
            self.reporterd = threading.Thread(target=self.reporter, args=(callback,), daemon=True)
            self.reporterd.start()
        self.worker = Worker(workers, self.q if callback is not None else None)

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.close()

    def reporter(self, callback: ScanCallback):
        while True:
            try:
                item = self.q.get(timeout=1)  # type: Optional[Tuple[str, Optional[str], Optional[str]]]
            except queue.Empty:
                pass
            else:
                if item is None:
                    break
                elif item[0] == 's':
                    callback.report_start(item[1], item[2])
                elif item[0] == 'e':
                    callback.report_end(item[1], item[2])
                elif item[0] == 'pre':
                    callback.report_start_preparation()
                elif item[0] == 'post':
                    callback.report_postprocess()
                elif item[0] == 'w':
                    callback.report_warning(item[1])
                self.q.task_done()

    def close(self):
        if self.reporterd is not None:
            self.q.put_nowait(None)
            self.reporterd.join(1)
            if self.reporterd.is_alive():
                raise InternalError("Progress report thread terminate error.")
            self.reporterd = None

    def _event(self, kind: str) -> None:
        if self.reporterd is not None:
            self.q.put((kind, None, None))

    def _warn(self, message: str, log: bool = True) -> None:
        if log:
            logger.warning(message)
        self.warnings.append(message)
        if self.reporterd is not None:
            self.q.put(('w', message, None))

    def _function(self) -> MultiplicativeFunctionSpec:
        if self.f is None:
            raise PreconditionError('this scan needs a multiplicative function')
        return self.f

    def _f_of(self, n: FactoredInteger) -> Fraction:
        """f(n) with prime-power values memoised for the direct route."""
        f = self._function()
        value = Fraction(1)
        for pa in n.factors:
            v = self._values.get(pa)
            if v is None:
                v = self._values[pa] = f.rule(*pa)
            value *= v
        return value

    # --------------------------------------------------------------------------
    # class route
    def _rough_threshold(self, x: int) -> float:
        y = x ** self.alpha
        if y < self.k - 1:
            raise PreconditionError('x^alpha = {:.4g} < k - 1 = {}; raise x or alpha'.format(y, self.k - 1))
        return y

    def class_primes(self, system: CongruenceSystem, x: int) -> List[Tuple[int, List[FactoredInteger]]]:
        """(p, delta parts) for every prime p <= x in the class N mod M', ascending."""
        if system.k != self.k:
            raise PreconditionError('system has k = {}, scanner has k = {}'.format(system.k, self.k))
        count = 0 if x < system.N else (x - system.N) // system.modulus + 1

        def task(lo: int, hi: int) -> List[Tuple[int, List[FactoredInteger]]]:
            out = []
            for t in range(lo, hi + 1):
                n = system.N + t * system.modulus
                if is_prime(n):
                    out.append((n, delta_parts(n, system, self.seed)))
            return out

        chunks = partition(0, count - 1, CLASS_CHUNK)
        return [item for chunk in self.worker.run(chunks, task) for item in chunk]

    def members_of_S(self, system: CongruenceSystem, x: int) -> List[int]:
        """Primes p <= x in the class N mod M' with delta(p) squarefree and free of primes <= x^alpha."""
        y = self._rough_threshold(x)
        members = []
        for p, parts in self.class_primes(system, x):
            rough, squarefree = _delta_flags(parts, y)
            if rough and squarefree:
                members.append(p)
        return members

    def _class_values(self, system: CongruenceSystem, parts: Sequence[FactoredInteger]) -> Tuple[Fraction, ...]:
        """f(p+i) = f(anchor_i) f(a_i) f(part_i), anchor_1 = K and anchor_i = i-1."""
        f = self._function()
        values = []
        for i, (ai, part) in enumerate(zip(system.a, parts), start=1):
            anchor = evaluate(f, system.K) if i == 1 else evaluate(f, i - 1)
            values.append(anchor * evaluate(f, ai) * evaluate(f, part))
        return tuple(values)

    def _rough_parts(self, parts: Sequence[FactoredInteger], x: int) -> List[RoughPart]:
        f = self._function()
        result = []
        for i, part in enumerate(parts, start=1):
            deviation = sum((abs(f.at_prime(q) - 1) for q in part.primes), Fraction(0))
            cap = math.log(x + i) / (self.alpha * math.log(x))
            result.append(RoughPart(i, part, evaluate(f, part), 2 * deviation, part.omega, cap))
        return result

    def scan_constructed(self, c: Sequence[Fraction], nu: int, x: int) -> ScanReport:
        """Build moduli and the congruence system for the box centred at c, then scan its class up to x."""
        started = time.perf_counter()
        f, k = self._function(), self.k
        c = [Fraction(ci) for ci in c]
        if k < 2 or len(c) != k:
            raise PreconditionError('need k >= 2 centres, got k = {} and {} centres'.format(k, len(c)))
        if x < 2:
            raise PreconditionError('x must be >= 2, got {}'.format(x))
        self._event('pre')
        if not audit_declared_class(f):
            self._warn('{} partial sums contradict its declared class {}'.format(f.name, f.declared_class.value),
                       log=False)
        with _stage('compute_K'):
            K = compute_K(k)
        with _stage('compute_epsilon'):
            epsilon = compute_epsilon(f, k, nu)
        with _stage('targets_to_x'):
            xs = targets_to_x(c, f, K)
        with _stage('build_moduli'):
            request = ModulusRequest(f, xs, epsilon, m=K, prime_budget=self.prime_budget)
            a = build_moduli(request)
        for message in request.warnings:
            self._warn(message, log=False)
        with _stage('build_system'):
            system = build_system(K, a)
            solve(system)
        brackets = check_bracketing(f, system, c, nu)
        for b in brackets:
            if not b.ok:
                self._warn('f(a_{}) = {} escapes ({}, {})'.format(b.i, b.value, b.lower, b.upper))
        box = TargetBox.from_center(c, nu)
        report = ScanReport('construct', f.name, k, x, box, self.record_cap, alpha=self.alpha, system=system,
                            epsilon=epsilon, targets=xs, bracketing=brackets)
        with _stage('members_of_S'):
            y = self._rough_threshold(x)
            primes = self.class_primes(system, x)
        self._event('post')
        report.class_primes = len(primes)
        records = []
        with _stage('evaluate'):
            for p, parts in primes:
                rough, squarefree = _delta_flags(parts, y)
                if not (rough and squarefree):
                    continue
                report.members_in_S += 1
                values = self._class_values(system, parts)
                record = TupleRecord(p, values, box.contains(values), rough=True, squarefree=True,
                                     divisibility=verify_divisibility(p, system).all_true,
                                     rough_parts=self._rough_parts(parts, x))
                if not record.divisibility:
                    raise InternalError('divisibility structure fails at class member {}'.format(p))
                if record.in_box:
                    records.append(record)
                else:
                    report.box_misses.append(p)
        if report.box_misses:
            self._warn('{} members of S lie outside the box; x is below the containment threshold'.format(
                len(report.box_misses)))
        report.count = len(records)
        report.records = records[:self.record_cap]
        report.warnings = list(self.warnings)
        report.elapsed = time.perf_counter() - started
        logger.info('constructed scan: %d class primes, %d in S, %d in box', report.class_primes,
                    report.members_in_S, report.count)
        return report

    def cross_check(self, system: CongruenceSystem, x: int) -> CrossCheckResult:
        """Compare class-route tuples with window-factored tuples for every class prime <= x."""
        primes = self.class_primes(system, x)
        result = CrossCheckResult(len(primes))
        for p, parts in primes:
            window = factor_window(p + 1, p + self.k + 1, range(p + 1, p + self.k + 1))
            direct = tuple(self._f_of(window[p + i]) for i in range(1, self.k + 1))
            if direct != self._class_values(system, parts):
                result.mismatches.append(p)
        if result.mismatches:
            self._warn('class and direct routes disagree at {}'.format(result.mismatches[:10]))
        return result

    # --------------------------------------------------------------------------
    # direct route
    def _direct_tuples(self, lo: int, hi: int) -> Iterator[Tuple[int, Tuple[Fraction, ...]]]:
        k = self.k
        for seg in segmented_primes(lo, hi):
            if seg.size == 0:
                continue
            primes = seg.tolist()
            wanted = [p + i for p in primes for i in range(1, k + 1)]
            window = factor_window(primes[0] + 1, primes[-1] + k + 1, wanted)
            for p in primes:
                yield p, tuple(self._f_of(window[p + i]) for i in range(1, k + 1))

    def scan_direct(self, x: int, box: TargetBox) -> ScanReport:
        """Every prime p <= x whose tuple lies in the box."""
        started = time.perf_counter()
        f = self._function()
        if x < 2:
            raise PreconditionError('x must be >= 2, got {}'.format(x))
        if len(box) != self.k:
            raise PreconditionError('box has {} coordinates, k = {}'.format(len(box), self.k))

        def task(lo: int, hi: int) -> List[TupleRecord]:
            return [TupleRecord(p, values, True) for p, values in self._direct_tuples(lo, hi) if box.contains(values)]

        self._event('pre')
        chunks = partition(2, x, SEGMENT_SIZE)
        records = sorted((r for chunk in self.worker.run(chunks, task) for r in chunk), key=lambda r: r.p)
        self._event('post')
        report = ScanReport('scan', f.name, self.k, x, box, self.record_cap)
        report.count = len(records)
        report.records = records[:self.record_cap]
        report.warnings = list(self.warnings)
        report.elapsed = time.perf_counter() - started
        return report

    def find_orderings(self, x: int, which: Optional[Sequence[Sequence[int]]] = None) -> OrderingTable:
        """Least prime <= x realising each requested strict ordering; all k! when which is None."""
        f = self._function()
        k = self.k
        if k < 2:
            raise PreconditionError('orderings need k >= 2, got {}'.format(k))
        if which is None:
            perms = list(itertools.permutations(range(1, k + 1)))  # type: List[Permutation]
        else:
            perms = [_check_permutation(w, k) for w in which]
        pairs = list(itertools.combinations(range(k), 2))

        def task(lo: int, hi: int) -> OrderingTable:
            part = OrderingTable(f.name, k, x)
            for p, values in self._direct_tuples(lo, hi):
                part.primes += 1
                tied = [(i + 1, j + 1) for i, j in pairs if values[i] == values[j]]
                if tied:
                    part.tied_primes += 1
                    for pair in tied:
                        part.ties.setdefault(pair, OrderingRow()).add(p)
                    continue
                perm = tuple(sorted(range(1, k + 1), key=lambda i: values[i - 1]))
                part.rows.setdefault(perm, OrderingRow()).add(p)
            return part

        self._event('pre')
        table = OrderingTable(f.name, k, x, rows={perm: OrderingRow() for perm in perms})
        for part in self.worker.run(partition(2, x, SEGMENT_SIZE), task, measure=lambda t: t.primes):
            table.primes += part.primes
            table.tied_primes += part.tied_primes
            for perm, row in part.rows.items():
                if perm in table.rows:
                    table.rows[perm].merge(row)
            for pair, row in part.ties.items():
                table.ties.setdefault(pair, OrderingRow()).merge(row)
        self._event('post')
        return table


# ------------------
# Function interface
# ------------------
def members_of_S(system: CongruenceSystem, x: int, alpha: float = DEFAULT_ALPHA, seed: int = RHO_SEED) -> List[int]:
    with Scanner(None, system.k, alpha=alpha, seed=seed) as scanner:
        return scanner.members_of_S(system, x)


def scan_constructed(f: MultiplicativeFunctionSpec, k: int, c: Sequence[Fraction], nu: int, x: int,
                     alpha: float = DEFAULT_ALPHA, prime_budget: int = DEFAULT_PRIME_BUDGET,
                     record_cap: int = DEFAULT_RECORD_CAP, workers: int = 1,
                     callback: Optional[ScanCallback] = None, seed: int = RHO_SEED) -> ScanReport:
    with Scanner(f, k, alpha=alpha, workers=workers, record_cap=record_cap, prime_budget=prime_budget,
                 callback=callback, seed=seed) as scanner:
        return scanner.scan_constructed(c, nu, x)


def scan_direct(f: MultiplicativeFunctionSpec, k: int, x: int, box: TargetBox, record_cap: int = DEFAULT_RECORD_CAP,
                workers: int = 1, callback: Optional[ScanCallback] = None) -> ScanReport:
    with Scanner(f, k, workers=workers, record_cap=record_cap, callback=callback) as scanner:
        return scanner.scan_direct(x, box)


def find_orderings(f: MultiplicativeFunctionSpec, k: int, x: int, which: Optional[Sequence[Sequence[int]]] = None,
                   workers: int = 1, callback: Optional[ScanCallback] = None) -> OrderingTable:
    with Scanner(f, k, workers=workers, callback=callback) as scanner:
        return scanner.find_orderings(x, which)
