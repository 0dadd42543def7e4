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
"""JSON reports and CSV tables.

A report is ``{schema_version, kind, config, result, metadata}``; only
``metadata`` (timestamp, elapsed seconds, version) differs between two runs of
the same configuration."""
import csv
import json
import pathlib
from typing import Any, Dict, Iterable, Optional, Union

from mulshift import __version__
from mulshift.analytics import SieveEstimate
from mulshift.exceptions import PreconditionError
from mulshift.helpers import format_decimal, utc_timestamp
from mulshift.properties import SCHEMA_VERSION
from mulshift.scanner import TupleRecord

PathLike = Union[str, pathlib.Path]


def build_document(kind: str, config: Dict[str, Any], result: Dict[str, Any], elapsed: float = 0.0,
                   version: Optional[str] = None) -> Dict[str, Any]:
    if version is None:
        version = __version__
    return {
        'schema_version': SCHEMA_VERSION,
        'kind': kind,
        'config': config,
        'result': result,
        'metadata': {'timestamp': utc_timestamp(), 'elapsed': round(elapsed, 3), 'version': version},
    }


def dumps(document: Dict[str, Any]) -> str:
    return json.dumps(document, sort_keys=True, indent=2) + '\n'


def reproducible_part(document: Dict[str, Any]) -> Dict[str, Any]:
    return {key: value for key, value in document.items() if key != 'metadata'}


def write_json(path: PathLike, document: Dict[str, Any]) -> None:
    with pathlib.Path(path).open('w', encoding='utf-8', newline='\n') as fp:
        fp.write(dumps(document))


def load_document(path: PathLike) -> Dict[str, Any]:
    try:
        with pathlib.Path(path).open('r', encoding='utf-8') as fp:
            document = json.load(fp)
    except FileNotFoundError:
        raise PreconditionError('report {} not found'.format(path))
    except OSError as e:
        raise PreconditionError('cannot read {}: {}'.format(path, e))
    except (json.JSONDecodeError, UnicodeDecodeError) as e:
        raise PreconditionError('{} is not valid JSON: {}'.format(path, e))
    if not isinstance(document, dict):
        raise PreconditionError('{} is not a mulshift report'.format(path))
    if document.get('schema_version') != SCHEMA_VERSION:
        raise PreconditionError('{} has schema {!r}, expected {}'.format(path, document.get('schema_version'),
                                                                         SCHEMA_VERSION))
    return document


def load_system_json(path: PathLike) -> Dict[str, Any]:
    """The congruence system echoed by a construct report."""
    document = load_document(path)
    system = document.get('result', {}).get('system')
    if system is None:
        raise PreconditionError('{} holds no congruence system'.format(path))
    return system


def _flag(value: Optional[bool]) -> str:
    return '' if value is None else str(value).lower()


def write_tuples_csv(path: PathLike, records: Iterable[TupleRecord], k: int) -> None:
    """p, f(p+i) exact, f(p+i)~ decimal approximations, rough, squarefree, in_box."""
    header = ['p'] + ['f(p+{})'.format(i) for i in range(1, k + 1)]
    header += ['f(p+{})~'.format(i) for i in range(1, k + 1)] + ['rough', 'squarefree', 'in_box']
    with pathlib.Path(path).open('w', encoding='utf-8', newline='') as fp:
        writer = csv.writer(fp, lineterminator='\n')
        writer.writerow(header)
        for r in records:
            writer.writerow([r.p] + [str(v) for v in r.values] + [format_decimal(v) for v in r.values]
                            + [_flag(r.rough), _flag(r.squarefree), _flag(r.in_box)])


def write_sieve_csv(path: PathLike, estimates: Iterable[SieveEstimate]) -> None:
    with pathlib.Path(path).open('w', encoding='utf-8', newline='') as fp:
        writer = csv.writer(fp, lineterminator='\n')
        writer.writerow(['x', 'observed', 'main_term', 'normalized'])
        for e in estimates:
            writer.writerow([e.x, e.observed, repr(e.main_term), repr(e.normalized)])
