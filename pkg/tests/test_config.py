import os
from fractions import Fraction

import pytest

from mulshift.config import RunConfig
from mulshift.exceptions import PreconditionError
from mulshift.properties import DivergenceClass, RunMode

from . import fractions, testdata_path


@pytest.mark.api
def test_from_toml():
    config = RunConfig.from_file(os.path.join(testdata_path, 'sigma_construct.toml'))
    assert config.mode is RunMode.CONSTRUCT
    assert config.function == 'sigma_over_n'
    assert config.k == 2
    assert config.c == fractions(2, 1)
    assert config.nu == 2
    assert config.x == 10 ** 6
    assert config.alpha == 0.1
    assert config.prime_budget == 10 ** 6
    assert config.record_cap == 50
    config.validate()


@pytest.mark.api
def test_flags_override_file():
    config = RunConfig.from_file(os.path.join(testdata_path, 'sigma_construct.toml'))
    config.update(x='1e7', nu=None, c='3/2,1')
    assert config.x == 10 ** 7
    assert config.nu == 2
    assert config.c == fractions('3/2', 1)


@pytest.mark.api
def test_function_overrides():
    config = RunConfig.from_file(os.path.join(testdata_path, 'patched_scan.toml'))
    f = config.function_spec()
    assert f.name == 'sigma_patched'
    assert f.declared_class is DivergenceClass.ABOVE_ONE
    assert f(2) == Fraction(5, 4)
    assert f(9) == 1
    assert f(3) == Fraction(4, 3)
    assert config.box == [(Fraction(2), None), (None, None)]
    config.validate()


@pytest.mark.api
def test_from_report():
    config = RunConfig.from_file(os.path.join(testdata_path, 'small_system.json'))
    assert config.mode is RunMode.SIEVE
    assert config.moduli == [5, 7]
    assert config.x_points == [100000]
    assert config.seed == 0x5eed


@pytest.mark.api
@pytest.mark.parametrize("name", ['not_a_report.json', 'broken.toml'])
def test_bad_files(name):
    with pytest.raises(PreconditionError):
        RunConfig.from_file(os.path.join(testdata_path, name))


@pytest.mark.api
def test_unknown_keys():
    with pytest.raises(PreconditionError) as e:
        RunConfig.from_mapping({'k': 2, 'colour': 'blue'})
    assert 'colour' in str(e.value)


@pytest.mark.api
def test_validate_missing():
    config = RunConfig(mode=RunMode.CONSTRUCT, function='sigma_over_n', k=2, x=1000, c=fractions(2, 1))
    with pytest.raises(PreconditionError) as e:
        config.validate()
    assert 'nu' in str(e.value)
    with pytest.raises(PreconditionError):
        RunConfig(mode=RunMode.ORDER, function='n_over_phi', k=2, x=100).validate()
    with pytest.raises(PreconditionError):
        RunConfig(mode=RunMode.SIEVE, bv=True, q=3).validate()
    with pytest.raises(PreconditionError):
        RunConfig(mode=RunMode.SCAN, function='n_over_phi', k=2, x=100, alpha=1.5, c=fractions(2, 1),
                  nu=2).validate()


@pytest.mark.api
def test_bad_values():
    with pytest.raises(PreconditionError):
        RunConfig().update(k='-2')
    with pytest.raises(PreconditionError):
        RunConfig().update(x='1.5')
    with pytest.raises(PreconditionError):
        RunConfig().update(box='1:2,3')
    with pytest.raises(PreconditionError):
        RunConfig(function='tau').function_spec()


@pytest.mark.api
def test_to_json_reloads():
    config = RunConfig.from_file(os.path.join(testdata_path, 'patched_scan.toml'))
    config.update(json_out='out.json')
    data = config.to_json()
    assert data['function'] == {'name': 'sigma_patched', 'base': 'sigma_over_n', 'class': 'above-one',
                                'overrides': {'2': '5/4', '3^2': '1'}}
    assert data['box'] == [['2', 'inf'], ['-inf', 'inf']]
    again = RunConfig.from_mapping(data)
    assert again == config


@pytest.mark.api
def test_bad_enums():
    with pytest.raises(PreconditionError) as e:
        RunConfig.from_mapping({'function': {'name': 'mine', 'base': 'n_over_phi', 'class': 'above'}})
    assert 'function class' in str(e.value)
    with pytest.raises(PreconditionError) as e:
        RunConfig.from_mapping({'mode': 'bogus'})
    assert 'construct' in str(e.value)
    with pytest.raises(PreconditionError):
        RunConfig().update(function_class='sideways')


@pytest.mark.api
def test_missing_and_malformed_files(tmp_path):
    with pytest.raises(PreconditionError) as e:
        RunConfig.from_file(tmp_path.joinpath('nowhere.toml'))
    assert 'not found' in str(e.value)
    path = tmp_path.joinpath('cut.json')
    path.write_text('{"schema_version": ')
    with pytest.raises(PreconditionError):
        RunConfig.from_file(path)
    path.write_text('{"schema_version": 1, "config": []}')
    with pytest.raises(PreconditionError):
        RunConfig.from_file(path)


@pytest.mark.api
def test_construct_single_permutation():
    config = RunConfig(mode=RunMode.CONSTRUCT, function='n_over_phi', k=2, x=1000, nu=10,
                       permutations=[(2, 1), (1, 2)])
    with pytest.raises(PreconditionError) as e:
        config.validate()
    assert 'one --perm' in str(e.value)
    config.permutations = [(2, 1)]
    config.validate()
