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
"""Run configuration.

Precedence, lowest first: defaults, a TOML file or the ``config`` block of an
earlier JSON report, then command-line flags."""
import json
import pathlib
from dataclasses import dataclass, field, fields
from fractions import Fraction
from logging import getLogger
from typing import Any, Dict, List, Mapping, Optional, Tuple, Type, TypeVar, Union

from mulshift.exceptions import PreconditionError
from mulshift.helpers import (parse_bound, parse_box, parse_natural, parse_natural_list, parse_permutation,
                              parse_rational, parse_rational_list)
from mulshift.multfunc import BUILTIN_FUNCTIONS, MultiplicativeFunctionSpec, get_function, parse_override_key
from mulshift.properties import (DEFAULT_ALPHA, DEFAULT_PRIME_BUDGET, DEFAULT_RECORD_CAP, RHO_SEED, SCHEMA_VERSION,
                                 DivergenceClass, RunMode)

try:
    import tomllib  # type: ignore
except ImportError:  # pragma: no-cover
    import tomli as tomllib  # type: ignore

logger = getLogger(__name__)

Bounds = List[Tuple[Optional[Fraction], Optional[Fraction]]]
E = TypeVar('E', RunMode, DivergenceClass)


@dataclass
class RunConfig:
    mode: RunMode = RunMode.CONSTRUCT
    function: Optional[str] = None
    function_base: Optional[str] = None
    function_class: Optional[DivergenceClass] = None
    overrides: Dict[str, str] = field(default_factory=dict)
    k: Optional[int] = None
    c: Optional[List[Fraction]] = None
    nu: Optional[int] = None
    box: Optional[Bounds] = None
    permutations: Optional[List[Tuple[int, ...]]] = None
    all_orderings: bool = False
    x: Optional[int] = None
    x_points: Optional[List[int]] = None
    alpha: float = DEFAULT_ALPHA
    seed: int = RHO_SEED
    system: Optional[Dict[str, Any]] = None
    moduli: Optional[List[int]] = None
    gd_check: bool = False
    dmax: Optional[int] = None
    bv: bool = False
    q: Optional[int] = None
    prime_budget: int = DEFAULT_PRIME_BUDGET
    record_cap: int = DEFAULT_RECORD_CAP
    workers: int = 1
    json_out: Optional[str] = None
    csv_out: Optional[str] = None

    # ------------------
    # loading
    # ------------------
    @classmethod
    def from_mapping(cls, data: Mapping[str, Any]) -> 'RunConfig':
        """Build from the TOML layout; JSON reports embed the same layout."""
        config = cls()
        flat = dict(data)
        function = flat.pop('function', None)
        if isinstance(function, str):
            config.function = function
        elif isinstance(function, Mapping):
            config.function = function.get('name')
            config.function_base = function.get('base')
            if function.get('class') is not None:
                config.function_class = _enum(DivergenceClass, function['class'], 'function class')
            config.overrides = {str(key): str(value) for key, value in function.get('overrides', {}).items()}
        for table in ('budgets', 'output', 'sieve'):
            flat.update(flat.pop(table, None) or {})
        if 'json' in flat:
            flat['json_out'] = flat.pop('json')
        if 'csv' in flat:
            flat['csv_out'] = flat.pop('csv')
        if 'all' in flat:
            flat['all_orderings'] = flat.pop('all')
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(flat) - known)
        if unknown:
            raise PreconditionError('unknown configuration keys: {}'.format(', '.join(unknown)))
        config.update(**flat)
        return config

    @classmethod
    def from_file(cls, path: Union[str, pathlib.Path]) -> 'RunConfig':
        path = pathlib.Path(path)
        if not path.is_file():
            raise PreconditionError('configuration file {} not found'.format(path))
        try:
            if path.suffix == '.json':
                with path.open('r', encoding='utf-8') as fp:
                    document = json.load(fp)
            else:
                with path.open('rb') as fp:
                    data = tomllib.load(fp)
        except OSError as e:
            raise PreconditionError('cannot read {}: {}'.format(path, e))
        except (json.JSONDecodeError, tomllib.TOMLDecodeError, UnicodeDecodeError) as e:
            raise PreconditionError('{}: {}'.format(path, e))
        if path.suffix == '.json':
            if not isinstance(document, dict) or document.get('schema_version') != SCHEMA_VERSION \
                    or not isinstance(document.get('config'), dict):
                raise PreconditionError('{} is not a mulshift report (schema {})'.format(path, SCHEMA_VERSION))
            return cls.from_mapping(document['config'])
        return cls.from_mapping(data)

    def update(self, **values: Any) -> 'RunConfig':
        """Apply values that are not None, parsing exact numbers from strings."""
        for name, value in values.items():
            if value is None:
                continue
            setattr(self, name, _coerce(name, value))
        return self

    # ------------------
    # use
    # ------------------
    def function_spec(self) -> MultiplicativeFunctionSpec:
        if self.function is None:
            raise PreconditionError('no function given; use --function or [function] name')
        if self.function in BUILTIN_FUNCTIONS and not self.overrides and self.function_class is None \
                and self.function_base is None:
            return BUILTIN_FUNCTIONS[self.function]
        base = get_function(self.function_base or self.function)
        table = {parse_override_key(key): parse_rational(value) for key, value in self.overrides.items()}
        return base.with_overrides(self.function, table, self.function_class)

    def validate(self) -> 'RunConfig':
        missing = []
        if self.mode in (RunMode.CONSTRUCT, RunMode.SCAN, RunMode.ORDER):
            missing += [name for name in ('function', 'k', 'x') if getattr(self, name) is None]
        if self.mode is RunMode.CONSTRUCT:
            if self.c is None and not self.permutations:
                missing.append('c')
            if self.nu is None:
                missing.append('nu')
            if self.permutations and len(self.permutations) > 1:
                raise PreconditionError('construct takes one --perm, got {}'.format(len(self.permutations)))
        elif self.mode is RunMode.SCAN:
            if self.box is None and (self.c is None or self.nu is None):
                missing.append('box (or c and nu)')
        elif self.mode is RunMode.ORDER:
            if not self.permutations and not self.all_orderings:
                missing.append('permutations (or all)')
        elif self.mode is RunMode.SIEVE:
            if self.gd_check:
                missing += [name for name in ('k', 'dmax') if getattr(self, name) is None]
            if self.bv:
                missing += [name for name in ('q', 'x') if getattr(self, name) is None]
            if not self.gd_check and not self.bv:
                if self.system is None and self.moduli is None:
                    missing.append('system (or moduli)')
                if self.x_points is None and self.x is None:
                    missing.append('x_points')
        if missing:
            raise PreconditionError('{} needs {}'.format(self.mode.value, ', '.join(missing)))
        if not 0 < self.alpha < 1:
            raise PreconditionError('alpha must lie in (0, 1), got {}'.format(self.alpha))
        return self

    def to_json(self) -> Dict[str, Any]:
        """The TOML layout with rationals as strings; None entries dropped."""
        result = {'mode': self.mode.value, 'alpha': self.alpha, 'seed': self.seed,
                  'all': self.all_orderings}  # type: Dict[str, Any]
        if self.function is not None:
            function = {'name': self.function}  # type: Dict[str, Any]
            if self.function_base is not None:
                function['base'] = self.function_base
            if self.function_class is not None:
                function['class'] = self.function_class.value
            if self.overrides:
                function['overrides'] = dict(self.overrides)
            result['function'] = function
        for name in ('k', 'nu', 'x', 'x_points', 'system', 'moduli'):
            value = getattr(self, name)
            if value is not None:
                result[name] = value
        if self.c is not None:
            result['c'] = [str(ci) for ci in self.c]
        if self.box is not None:
            result['box'] = [[_bound_str(lo, '-inf'), _bound_str(hi, 'inf')] for lo, hi in self.box]
        if self.permutations is not None:
            result['permutations'] = [list(p) for p in self.permutations]
        result['budgets'] = {'prime_budget': self.prime_budget, 'record_cap': self.record_cap,
                             'workers': self.workers}
        result['sieve'] = {'gd_check': self.gd_check, 'bv': self.bv}
        if self.dmax is not None:
            result['sieve']['dmax'] = self.dmax
        if self.q is not None:
            result['sieve']['q'] = self.q
        result['output'] = {}
        if self.json_out is not None:
            result['output']['json'] = self.json_out
        if self.csv_out is not None:
            result['output']['csv'] = self.csv_out
        return result


def _bound_str(value: Optional[Fraction], infinite: str) -> str:
    return infinite if value is None else str(value)


def _enum(kind: Type[E], value: Any, what: str) -> E:
    try:
        return kind(value)
    except ValueError:
        raise PreconditionError('{} must be one of {}, got {!r}'.format(what, ', '.join(m.value for m in kind), value))


_NATURALS = {'k', 'nu', 'x', 'seed', 'dmax', 'q', 'prime_budget', 'record_cap', 'workers'}


def _coerce(name: str, value: Any) -> Any:
    if name in _NATURALS:
        return parse_natural(value)
    if name == 'mode':
        return _enum(RunMode, value, 'mode')
    if name == 'function_class':
        return _enum(DivergenceClass, value, 'function class')
    if name == 'alpha':
        return float(parse_rational(value))
    if name == 'c':
        return parse_rational_list(value)
    if name in ('x_points', 'moduli'):
        return parse_natural_list(value)
    if name == 'box':
        if isinstance(value, str):
            return parse_box(value)
        return [(parse_bound(str(lo)), parse_bound(str(hi))) for lo, hi in value]
    if name == 'permutations':
        return [parse_permutation(v) if isinstance(v, str) else tuple(int(i) for i in v) for v in value]
    if name in ('all_orderings', 'gd_check', 'bv'):
        return bool(value)
    if name == 'overrides':
        return {str(key): str(v) for key, v in dict(value).items()}
    return value
