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
#
import argparse
import logging
import platform
import sys
from typing import Any, List, Optional

import texttable  # type: ignore

import mulshift
from mulshift.analytics import (EXPONENT_NOTE, bv_error, bv_weighted_sum, gd_check, rough_count,
                                squarefull_exclusion)
from mulshift.callbacks import ScanCallback
from mulshift.config import RunConfig
from mulshift.congruence import CongruenceSystem, build_system, compute_K
from mulshift.exceptions import MulshiftError
from mulshift.helpers import format_decimal
from mulshift.multfunc import BUILTIN_FUNCTIONS
from mulshift.properties import COMMAND_HELP_STRING, ExitCode, RunMode
from mulshift.report import build_document, load_system_json, write_json, write_sieve_csv, write_tuples_csv
from mulshift.scanner import Scanner, ScanReport, TargetBox, ordering_targets

CSV_HELP = '''CSV columns:
  construct/scan : p, f(p+1)..f(p+k) as exact fractions, f(p+1)~..f(p+k)~ decimal approximations,
                   rough, squarefree, in_box
  sieve          : x, observed, main_term, normalized'''


class CliScanCallback(ScanCallback):

    def __init__(self, ofd=sys.stderr):
        self.ofd = ofd
        self.found = 0

    def report_start_preparation(self):
        self.ofd.write('preparing\n')

    def report_start(self, chunk_label, candidates):
        self.ofd.write('- {} ({} candidates)'.format(chunk_label, candidates))

    def report_end(self, chunk_label, found):
        self.found += int(found)
        self.ofd.write(' {} found, {} total\n'.format(found, self.found))

    def report_postprocess(self):
        self.ofd.write('merging\n')

    def report_warning(self, message):
        self.ofd.write('warning: {}\n'.format(message))


class Cli():

    def __init__(self):
        self.parser = self._create_parser()

    def run(self, arg: Optional[Any] = None) -> int:
        args = self.parser.parse_args(arg)
        if args.version:
            self.show_version()
            return 0
        logging.basicConfig(level=logging.DEBUG if getattr(args, 'verbose', None) else logging.WARNING,
                            format='%(levelname)s %(name)s: %(message)s')
        try:
            return int(args.func(args))
        except MulshiftError as e:
            sys.stderr.write('Error: {}\n'.format(e))
            return int(e.exit_code)

    def _create_parser(self):
        common = argparse.ArgumentParser(add_help=False)
        common.add_argument("--config", help="TOML run file, or a JSON report whose config is reused")
        common.add_argument("--function", help="built-in function name ({})".format(', '.join(BUILTIN_FUNCTIONS)))
        common.add_argument("-k", type=int, help="tuple length")
        common.add_argument("-x", help="scan bound, e.g. 1e9")
        common.add_argument("--alpha", help="sifting exponent in (0, 1)")
        common.add_argument("--prime-budget", dest="prime_budget", help="largest prime the builder may use")
        common.add_argument("--record-cap", dest="record_cap", help="records kept in reports")
        common.add_argument("--workers", help="worker threads")
        common.add_argument("--seed", help="seed for the rho factoriser used on delta(p)")
        common.add_argument("--json-out", dest="json_out", help="write the JSON report here")
        common.add_argument("--csv-out", dest="csv_out", help="write the CSV table here")
        common.add_argument("--verbose", action="store_true", default=None, help="verbose output")
        parser = argparse.ArgumentParser(prog='mulshift', description='mulshift', epilog=CSV_HELP,
                                         formatter_class=argparse.RawTextHelpFormatter, add_help=True)
        subparsers = parser.add_subparsers(title='subcommands', help=COMMAND_HELP_STRING)
        construct_parser = subparsers.add_parser('construct', parents=[common])
        construct_parser.set_defaults(func=self.run_construct)
        construct_parser.add_argument("-c", help="box centres, e.g. 2,1 or 3/2,1")
        construct_parser.add_argument("--nu", help="box half-width is 1/nu")
        construct_parser.add_argument("--perm", action="append", help="choose centres realising this ordering")
        scan_parser = subparsers.add_parser('scan', parents=[common])
        scan_parser.set_defaults(func=self.run_scan)
        scan_parser.add_argument("--box", help="closed box lo:hi,lo:hi (inf allowed)")
        scan_parser.add_argument("-c", help="open box centres")
        scan_parser.add_argument("--nu", help="open box half-width is 1/nu")
        order_parser = subparsers.add_parser('order', parents=[common])
        order_parser.set_defaults(func=self.run_order)
        order_parser.add_argument("--perm", action="append", help="shifts in increasing order of f, e.g. 2,1")
        order_parser.add_argument("--all", dest="all_orderings", action="store_true", default=None,
                                  help="all k! orderings")
        sieve_parser = subparsers.add_parser('sieve', parents=[common])
        sieve_parser.set_defaults(func=self.run_sieve)
        sieve_parser.add_argument("--system-from", dest="system_from", help="construct report holding the system")
        sieve_parser.add_argument("--moduli", help="a_1,...,a_k; K follows from k")
        sieve_parser.add_argument("--x-points", dest="x_points", help="e.g. 1e6,1e7,1e8")
        sieve_parser.add_argument("--gd-check", dest="gd_check", action="store_true", default=None,
                                  help="compare g(d) with k^omega(d)")
        sieve_parser.add_argument("--dmax", help="largest d for --gd-check")
        sieve_parser.add_argument("--bv", action="store_true", default=None, help="print E(q) at x")
        sieve_parser.add_argument("--bv-sum", dest="bv_sum", action="store_true",
                                  help="also print sum over 2 <= q' < q of k^omega(q') E(q')")
        sieve_parser.add_argument("-q", help="modulus for --bv")
        info_parser = subparsers.add_parser("info")
        info_parser.set_defaults(func=self.run_info)
        parser.add_argument("--version", action="store_true", help="Show version")
        parser.set_defaults(func=self.show_help)
        return parser

    def show_version(self):
        print(self._get_version())

    @staticmethod
    def _get_version():
        py_version = platform.python_version()
        py_impl = platform.python_implementation()
        py_build = platform.python_compiler()
        return "mulshift Version {} : {} (Python {} [{} {}])".format(mulshift.__version__, mulshift.__copyright__,
                                                                     py_version, py_impl, py_build)

    def show_help(self, args):
        self.show_version()
        self.parser.print_help()
        return 0

    def _config(self, args: argparse.Namespace, mode: RunMode) -> RunConfig:
        config = RunConfig.from_file(args.config) if args.config else RunConfig()
        config.update(mode=mode)
        values = {name: getattr(args, name, None) for name in (
            'function', 'k', 'x', 'alpha', 'prime_budget', 'record_cap', 'workers', 'seed', 'json_out', 'csv_out',
            'c', 'nu', 'box', 'all_orderings', 'moduli', 'x_points', 'gd_check', 'dmax', 'bv', 'q')}
        values['permutations'] = getattr(args, 'perm', None)
        config.update(**values)
        system_from = getattr(args, 'system_from', None)
        if system_from is not None:
            config.system = load_system_json(system_from)
        return config.validate()

    @staticmethod
    def _callback(args) -> Optional[CliScanCallback]:
        return CliScanCallback(ofd=sys.stderr) if args.verbose else None

    @staticmethod
    def _write_outputs(config: RunConfig, kind: str, result: dict, elapsed: float) -> None:
        if config.json_out is not None:
            write_json(config.json_out, build_document(kind, config.to_json(), result, elapsed))

    @staticmethod
    def _print_records(report: ScanReport, file=None) -> None:
        file = file or sys.stdout
        table = texttable.Texttable(max_width=0)
        table.set_deco(texttable.Texttable.HEADER)
        table.set_cols_dtype(['t'] * (report.k + 2))
        table.header(['p'] + ['f(p+{})'.format(i) for i in range(1, report.k + 1)] + ['in box'])
        for r in report.records:
            table.add_row([str(r.p)] + ['{} ~{}'.format(v, format_decimal(v, 6)) for v in r.values]
                          + ['yes' if r.in_box else 'no'])
        file.write(table.draw() + '\n')
        file.write('{} primes found up to {}{}\n'.format(report.count, report.x,
                                                         ' (records truncated)' if report.truncated else ''))

    @staticmethod
    def _print_system(report: ScanReport, file=None) -> None:
        file = file or sys.stdout
        system = report.system
        assert system is not None
        file.write("K = {}\n".format(system.K.format_factors()))
        file.write("epsilon = {}\n".format(report.epsilon))
        file.write("x = {}\n".format(', '.join(str(t) for t in report.targets)))
        for i, ai in enumerate(system.a, start=1):
            file.write("a_{} = {} = {}\n".format(i, ai.value, ai.format_factors()))
        file.write("N = {} mod M' = {}\n".format(system.N, system.modulus))
        table = texttable.Texttable(max_width=0)
        table.set_deco(texttable.Texttable.HEADER)
        table.set_cols_dtype(['i', 't', 't', 't', 't'])
        table.header(['i', 'lower', 'f(a_i)', 'upper', 'ok'])
        for b in report.bracketing:
            table.add_row([b.i, str(b.lower), str(b.value), str(b.upper), 'yes' if b.ok else 'no'])
        file.write(table.draw() + '\n')
        file.write("class primes {}, members of S {}, outside the box {}\n".format(
            report.class_primes, report.members_in_S, len(report.box_misses)))

    def run_construct(self, args: argparse.Namespace) -> int:
        config = self._config(args, RunMode.CONSTRUCT)
        f = config.function_spec()
        if config.permutations:
            config.c = ordering_targets(f, config.k, config.permutations[0], config.nu)
        with Scanner(f, config.k, alpha=config.alpha, workers=config.workers, record_cap=config.record_cap,
                     prime_budget=config.prime_budget, callback=self._callback(args), seed=config.seed) as scanner:
            report = scanner.scan_constructed(config.c, config.nu, config.x)
        self._print_system(report)
        self._print_records(report)
        self._write_outputs(config, 'construct', report.to_json(), report.elapsed)
        if config.csv_out is not None:
            write_tuples_csv(config.csv_out, report.records, report.k)
        return ExitCode.SUCCESS if report.count else ExitCode.NOTHING_FOUND

    def run_scan(self, args: argparse.Namespace) -> int:
        config = self._config(args, RunMode.SCAN)
        f = config.function_spec()
        if config.box is not None:
            box = TargetBox.from_bounds(config.box)
        else:
            box = TargetBox.from_center(config.c, config.nu)
        with Scanner(f, config.k, workers=config.workers, record_cap=config.record_cap,
                     callback=self._callback(args), seed=config.seed) as scanner:
            report = scanner.scan_direct(config.x, box)
        sys.stdout.write('box {}\n'.format(box))
        self._print_records(report)
        self._write_outputs(config, 'scan', report.to_json(), report.elapsed)
        if config.csv_out is not None:
            write_tuples_csv(config.csv_out, report.records, report.k)
        return ExitCode.SUCCESS if report.count else ExitCode.NOTHING_FOUND

    def run_order(self, args: argparse.Namespace) -> int:
        config = self._config(args, RunMode.ORDER)
        f = config.function_spec()
        which = None if config.all_orderings else config.permutations
        with Scanner(f, config.k, workers=config.workers, callback=self._callback(args), seed=config.seed) as scanner:
            result = scanner.find_orderings(config.x, which)
        table = texttable.Texttable(max_width=0)
        table.set_deco(texttable.Texttable.HEADER)
        table.set_cols_dtype(['t', 't', 'i'])
        table.header(['ordering', 'first p', 'count'])
        for perm, row in sorted(result.rows.items()):
            chain = ' < '.join('f(p+{})'.format(i) for i in perm)
            table.add_row([chain, '-' if row.first is None else str(row.first), row.count])
        print(table.draw())
        if result.ties:
            ties = texttable.Texttable(max_width=0)
            ties.set_deco(texttable.Texttable.HEADER)
            ties.set_cols_dtype(['t', 't', 'i'])
            ties.header(['equality', 'first p', 'count'])
            for (i, j), row in sorted(result.ties.items()):
                ties.add_row(['f(p+{}) = f(p+{})'.format(i, j), str(row.first), row.count])
            print(ties.draw())
        print('{} primes up to {}, {} with ties'.format(result.primes, result.x, result.tied_primes))
        self._write_outputs(config, 'order', result.to_json(), 0.0)
        realized = all(row.first is not None for row in result.rows.values())
        return ExitCode.SUCCESS if realized else ExitCode.NOTHING_FOUND

    def run_sieve(self, args: argparse.Namespace) -> int:
        config = self._config(args, RunMode.SIEVE)
        status = ExitCode.SUCCESS
        result = {}  # type: dict
        if config.gd_check:
            check = gd_check(config.dmax, config.k)
            print('g(d) = {}^omega(d) for {} squarefree d <= {}: {}'.format(
                config.k, check.checked, config.dmax, 'all pass' if check.passed else 'FAILED'))
            for d, brute, closed in check.failures[:20]:
                print('  d = {}: brute force {}, closed form {}'.format(d, brute, closed))
            result['gd_check'] = check.to_json()
            if not check.passed:
                status = ExitCode.FAILURE
        if config.bv:
            error = bv_error(config.q, config.x)
            print(error)
            result['bv_error'] = {'q': config.q, 'x': config.x, 'E': error}
            if args.bv_sum:
                weighted = bv_weighted_sum(config.k or 1, config.x, config.q)
                print(weighted)
                result['bv_error']['weighted_sum'] = weighted
        if not config.gd_check and not config.bv:
            system = self._system(config)
            x_points = config.x_points or [config.x]
            estimates = rough_count(system, x_points, config.alpha, workers=config.workers, seed=config.seed)
            table = texttable.Texttable(max_width=0)
            table.set_deco(texttable.Texttable.HEADER)
            table.set_cols_dtype(['i', 'i', 'e', 'e'])
            table.header(['x', 'observed', 'main term', 'normalized'])
            for e in estimates:
                table.add_row([e.x, e.observed, e.main_term, e.normalized])
            print(table.draw())
            exclusion = squarefull_exclusion(system, max(x_points), config.alpha, seed=config.seed)
            print('squarefull delta: {} (ratio {:.3g}, tail bound {:.3g})'.format(
                exclusion.count, exclusion.bound_ratio, exclusion.tail_bound))
            print(EXPONENT_NOTE)
            result.update({'system': system.to_json(), 'estimates': [e.to_json() for e in estimates],
                           'squarefull': exclusion.to_json(), 'exponent_note': EXPONENT_NOTE})
            if config.csv_out is not None:
                write_sieve_csv(config.csv_out, estimates)
        self._write_outputs(config, 'sieve', result, 0.0)
        return status

    @staticmethod
    def _system(config: RunConfig) -> CongruenceSystem:
        if config.system is not None:
            return CongruenceSystem.from_json(config.system)
        moduli = config.moduli or []  # type: List[int]
        return build_system(compute_K(len(moduli)), moduli)

    def run_info(self, args):
        self.show_version()
        print("\nFunctions:")
        table = texttable.Texttable(max_width=0)
        table.set_deco(texttable.Texttable.HEADER)
        table.set_cols_dtype(['t', 't', 't'])
        table.set_cols_align(["l", "l", "l"])
        table.header(['name', 'class', 'rule'])
        for name, f in BUILTIN_FUNCTIONS.items():
            table.add_row([name, f.declared_class.value, f.description])
        print(table.draw())
        return 0
