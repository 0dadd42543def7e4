import os

import pytest

import mulshift.cli
import mulshift.congruence
from mulshift.__main__ import main
from mulshift.properties import RHO_SEED, ExitCode
from mulshift.report import reproducible_part

from . import load_report, testdata_path


@pytest.mark.cli
def test_cli_info(capsys):
    assert main(['info']) == 0
    out, err = capsys.readouterr()
    assert 'mulshift Version' in out
    for name in ('n_over_phi', 'sigma_over_n', 'phi_over_n', 'gamma_over_n'):
        assert name in out
    assert 'non-divergent' in out


@pytest.mark.cli
def test_cli_version(capsys):
    assert main(['--version']) == 0
    out, err = capsys.readouterr()
    assert out.startswith('mulshift Version')


@pytest.mark.cli
def test_cli_no_subcommand(capsys):
    assert main([]) == 0
    out, err = capsys.readouterr()
    assert 'usage: mulshift' in out
    assert 'construct' in out


@pytest.mark.cli
def test_cli_help(capsys):
    with pytest.raises(SystemExit):
        mulshift.cli.Cli().run(['sieve', '--help'])
    out, err = capsys.readouterr()
    assert '--gd-check' in out


@pytest.mark.cli
def test_cli_scan(capsys, tmp_path):
    csv_path = tmp_path.joinpath('tuples.csv')
    ret = main(['scan', '--function', 'n_over_phi', '-k', '2', '-x', '1000', '--box', '13/6:13/6,35/16:35/16',
                '--csv-out', str(csv_path)])
    assert ret == 0
    out, err = capsys.readouterr()
    assert '103' in out
    assert '13/6' in out
    assert csv_path.read_text().splitlines()[1].startswith('103,13/6,35/16,')


@pytest.mark.cli
def test_cli_scan_nothing(capsys):
    ret = main(['scan', '--function', 'n_over_phi', '-k', '2', '-x', '100', '--box', '0:1/2,0:1/2'])
    assert ret == ExitCode.NOTHING_FOUND
    out, err = capsys.readouterr()
    assert '0 primes found up to 100' in out


@pytest.mark.cli
def test_cli_scan_verbose(capsys):
    ret = main(['scan', '--function', 'n_over_phi', '-k', '2', '-x', '1000', '-c', '2,2', '--nu', '1',
                '--verbose'])
    assert ret in (ExitCode.SUCCESS, ExitCode.NOTHING_FOUND)
    out, err = capsys.readouterr()
    assert 'preparing' in err
    assert '2..1000 (999 candidates)' in err


@pytest.mark.cli
def test_cli_construct(capsys, tmp_path):
    json_path = tmp_path.joinpath('construct.json')
    ret = main(['construct', '--function', 'sigma_over_n', '-k', '2', '-c', '2,1', '--nu', '2', '-x', '1e6',
                '--json-out', str(json_path)])
    out, err = capsys.readouterr()
    assert 'a_1 = 11 = 11' in out
    assert 'a_2 = 13 = 13' in out
    assert "M' = 736164" in out
    document = load_report(str(json_path))
    assert document['kind'] == 'construct'
    assert document['config']['c'] == ['2', '1']
    assert document['result']['system']['a'] == [11, 13]
    assert ret == (ExitCode.SUCCESS if document['result']['count'] else ExitCode.NOTHING_FOUND)


@pytest.mark.cli
def test_cli_construct_is_reproducible(capsys, tmp_path):
    json_path = tmp_path.joinpath('construct.json')
    args = ['construct', '--config', os.path.join(testdata_path, 'sigma_construct.toml'), '--json-out',
            str(json_path)]
    main(args)
    first = load_report(str(json_path))
    main(args)
    second = load_report(str(json_path))
    assert reproducible_part(first) == reproducible_part(second)
    assert first['config']['budgets']['record_cap'] == 50


@pytest.mark.cli
def test_cli_construct_from_ordering(capsys):
    ret = main(['construct', '--function', 'n_over_phi', '-k', '2', '--perm', '2,1', '--nu', '10', '-x', '1e5'])
    out, err = capsys.readouterr()
    assert ret in (ExitCode.SUCCESS, ExitCode.NOTHING_FOUND)
    assert 'x = 1, 1' in out


@pytest.mark.cli
def test_cli_construct_non_divergent(capsys):
    ret = main(['construct', '--function', 'gamma_over_n', '-k', '2', '-c', '1,1', '--nu', '2', '-x', '1e6'])
    assert ret == ExitCode.PRECONDITION
    out, err = capsys.readouterr()
    assert err.startswith('Error: [targets_to_x]')


@pytest.mark.cli
def test_cli_construct_missing(capsys):
    ret = main(['construct', '--function', 'sigma_over_n', '-k', '2', '-x', '1e6'])
    assert ret == ExitCode.PRECONDITION
    out, err = capsys.readouterr()
    assert 'construct needs c, nu' in err


@pytest.mark.cli
def test_cli_order(capsys, tmp_path):
    json_path = tmp_path.joinpath('order.json')
    ret = main(['order', '--function', 'n_over_phi', '-k', '2', '-x', '100', '--all', '--json-out', str(json_path)])
    assert ret == 0
    out, err = capsys.readouterr()
    assert 'f(p+1) < f(p+2)' in out
    assert 'f(p+2) < f(p+1)' in out
    assert '25 primes up to 100' in out
    orderings = load_report(str(json_path))['result']['orderings']
    assert {'permutation': [2, 1], 'first': 3, 'count': orderings[1]['count']} == orderings[1]


@pytest.mark.cli
def test_cli_order_selected(capsys):
    ret = main(['order', '--function', 'n_over_phi', '-k', '2', '-x', '100', '--perm', '1,2'])
    assert ret == 0
    out, err = capsys.readouterr()
    assert 'f(p+2) < f(p+1)' not in out


@pytest.mark.cli
def test_cli_sieve_bv(capsys):
    assert main(['sieve', '--bv', '-q', '3', '-x', '100']) == 0
    out, err = capsys.readouterr()
    assert out.splitlines()[0] == '1.5'


@pytest.mark.cli
def test_cli_sieve_gd_check(capsys):
    assert main(['sieve', '--gd-check', '-k', '2', '--dmax', '200']) == 0
    out, err = capsys.readouterr()
    assert 'all pass' in out


@pytest.mark.cli
def test_cli_sieve_moduli(capsys, tmp_path):
    csv_path = tmp_path.joinpath('sieve.csv')
    ret = main(['sieve', '--moduli', '5,7', '--x-points', '1e5,1e6', '--csv-out', str(csv_path)])
    assert ret == 0
    out, err = capsys.readouterr()
    assert 'squarefull delta' in out
    lines = csv_path.read_text().splitlines()
    assert lines[0] == 'x,observed,main_term,normalized'
    assert [line.split(',')[0] for line in lines[1:]] == ['100000', '1000000']


@pytest.mark.cli
def test_cli_sieve_system_from(capsys, tmp_path):
    json_path = tmp_path.joinpath('sieve.json')
    ret = main(['sieve', '--system-from', os.path.join(testdata_path, 'small_system.json'), '--x-points', '1e6',
                '--json-out', str(json_path)])
    assert ret == 0
    result = load_report(str(json_path))['result']
    assert result['system']['N'] == 28229
    assert result['estimates'][0]['M_prime'] == 44100
    assert 'exponent_note' in result


@pytest.mark.cli
def test_cli_unknown_function(capsys):
    ret = main(['order', '--function', 'tau', '-k', '2', '-x', '100', '--all'])
    assert ret == ExitCode.PRECONDITION
    out, err = capsys.readouterr()
    assert "unknown function 'tau'" in err


def _write(tmp_path, name, text):
    path = tmp_path.joinpath(name)
    path.write_text(text)
    return str(path)


@pytest.mark.cli
@pytest.mark.parametrize("name, text", [
    ('bad.json', '{"schema_version": 1, "config": '),
    ('bad.toml', 'k = ['),
    ('class.toml', 'mode = "order"\nk = 2\nx = 100\nall = true\n[function]\nname = "mine"\nbase = "n_over_phi"\n'
                   'class = "above"\n'),
    ('mode.toml', 'mode = "bogus"\n'),
    ('list.json', '[1, 2, 3]'),
])
def test_cli_bad_config(capsys, tmp_path, name, text):
    ret = main(['order', '--config', _write(tmp_path, name, text)])
    assert ret == ExitCode.PRECONDITION
    out, err = capsys.readouterr()
    assert err.startswith('Error:')


@pytest.mark.cli
def test_cli_config_not_found(capsys, tmp_path):
    ret = main(['scan', '--config', str(tmp_path.joinpath('nowhere.toml'))])
    assert ret == ExitCode.PRECONDITION
    out, err = capsys.readouterr()
    assert 'not found' in err


@pytest.mark.cli
@pytest.mark.parametrize("name, text", [
    ('missing.json', None),
    ('garbage.json', 'not json at all'),
    ('list.json', '[]'),
    ('old.json', '{"schema_version": 0}'),
])
def test_cli_sieve_bad_system_from(capsys, tmp_path, name, text):
    path = str(tmp_path.joinpath(name)) if text is None else _write(tmp_path, name, text)
    ret = main(['sieve', '--system-from', path, '--x-points', '1e5'])
    assert ret == ExitCode.PRECONDITION
    out, err = capsys.readouterr()
    assert err.startswith('Error:')


@pytest.mark.cli
def test_cli_construct_two_perms(capsys):
    ret = main(['construct', '--function', 'n_over_phi', '-k', '2', '--perm', '2,1', '--perm', '1,2', '--nu', '10',
                '-x', '1e5'])
    assert ret == ExitCode.PRECONDITION
    out, err = capsys.readouterr()
    assert 'one --perm' in err


@pytest.mark.cli
def test_cli_sieve_seed(monkeypatch, capsys, tmp_path):
    seeds = set()
    factorize = mulshift.congruence.factorize

    def recording(n, *args, seed=RHO_SEED, **kwargs):
        seeds.add(seed)
        return factorize(n, *args, seed=seed, **kwargs)

    monkeypatch.setattr(mulshift.congruence, 'factorize', recording)
    json_path = tmp_path.joinpath('sieve.json')
    ret = main(['sieve', '--moduli', '5,7', '--x-points', '1e5', '--seed', '7', '--json-out', str(json_path)])
    assert ret == 0
    assert 7 in seeds
    assert seeds <= {7, RHO_SEED}
    assert load_report(str(json_path))['config']['seed'] == 7
