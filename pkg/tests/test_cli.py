import json

import pytest

import unipred
from unipred import EXIT_OK, EXIT_USAGE, EXIT_VIOLATION, main

TWO_POINTS = {'members': [
    {'kind': 'point', 'parameters': {'cycle': '0'}, 'weight': '1/2'},
    {'kind': 'point', 'parameters': {'cycle': '1'}, 'weight': '1/2'},
]}


@pytest.fixture
def sequence_file(tmp_path):
    path = tmp_path / 'seq.txt'
    path.write_text('1 0\n')
    return path


class TestPredict:
    def test_csv(self, sequence_file, capsys):
        assert main(['predict', '--input', str(sequence_file), '--pool-size', '2']) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == 't,observed,prob_one,prob_one_decimal'
        assert lines[1].startswith('0,1,7/12,')
        assert len(lines) == 3

    def test_weights_json(self, sequence_file, capsys):
        assert main(['predict', '-i', str(sequence_file), '--pool-size', '2',
                     '--emit-weights', '--format', 'json']) == EXIT_OK
        records = json.loads(capsys.readouterr().out)
        assert records[0]['w1'] == '2/3' and records[0]['w2'] == '1/3'

    def test_pool_file(self, sequence_file, tmp_path, capsys):
        pool = tmp_path / 'pool.json'
        pool.write_text(json.dumps(TWO_POINTS))
        assert main(['predict', '-i', str(sequence_file), '--pool', str(pool)]) == EXIT_VIOLATION
        captured = capsys.readouterr()
        assert 'zero probability' in captured.err
        # Rows up to the failing update are already out
        lines = captured.out.splitlines()
        assert lines[0] == 't,observed,prob_one,prob_one_decimal'
        assert lines[1].startswith('0,1,1/2,')
        assert lines[2].startswith('1,0,1/1,')
        assert len(lines) == 3

    def test_partial_json(self, sequence_file, tmp_path, capsys):
        pool = tmp_path / 'pool.json'
        pool.write_text(json.dumps(TWO_POINTS))
        assert main(['predict', '-i', str(sequence_file), '--pool', str(pool),
                     '--format', 'json']) == EXIT_VIOLATION
        records = json.loads(capsys.readouterr().out)
        assert [r['prob_one'] for r in records] == ['1/2', '1/1']

    def test_float_bias(self, sequence_file, tmp_path, capsys):
        pool = tmp_path / 'pool.json'
        pool.write_text(json.dumps({'members': [
            {'kind': 'bernoulli', 'parameters': {'bias': 0.75}, 'weight': '1/1'}]}))
        assert main(['predict', '-i', str(sequence_file), '--pool', str(pool)]) == EXIT_USAGE
        captured = capsys.readouterr()
        assert captured.err.startswith('Error: Bernoulli bias')
        assert captured.out == ''


class TestPool:
    def test_show_and_save(self, tmp_path, capsys):
        path = tmp_path / 'pool.json'
        assert main(['pool', '--pool-size', '3', '-o', str(path)]) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert len(lines) == 3 and 'uniform' in lines[0]
        assert main(['pool', '--pool', str(path)]) == EXIT_OK
        assert capsys.readouterr().out.splitlines() == lines


class TestDiag:
    def test_uniform(self, capsys):
        assert main(['diag', '--victim-kind', 'uniform', '-T', '4']) == EXIT_OK
        captured = capsys.readouterr()
        assert len(captured.out.splitlines()) == 5
        assert 'sequence 0000' in captured.err

    def test_undefined_victim(self, tmp_path):
        victim = tmp_path / 'victim.json'
        victim.write_text(json.dumps(TWO_POINTS))
        assert main(['diag', '--victim', str(victim), '-T', '5']) == EXIT_VIOLATION

    def test_hypothesis_victim(self, tmp_path, capsys):
        victim = tmp_path / 'victim.json'
        victim.write_text(json.dumps({'kind': 'bernoulli', 'parameters': {'bias': '3/4'}}))
        assert main(['diag', '--victim', str(victim), '-T', '3', '--tie', '1']) == EXIT_OK
        assert 'sequence 000' in capsys.readouterr().err


class TestMachines:
    def test_km(self, capsys):
        assert main(['km', '--string', '0', '--max-len', '6', '--max-steps', '10']) == EXIT_OK
        assert capsys.readouterr().out == 'string,km,shortest,algprob\n0,6,011111,1/64\n'

    def test_km_not_found(self, capsys):
        assert main(['km', '-s', '1', '--max-len', '6', '--max-steps', '10']) == EXIT_OK
        assert '1,not-found,,0/1' in capsys.readouterr().out

    def test_km_bad_string(self):
        assert main(['km', '--string', '012']) == EXIT_USAGE

    def test_algoprob(self, capsys):
        assert main(['algoprob', '--max-len', '6', '--max-steps', '10', '--depth', '2',
                     '--quiet']) == EXIT_OK
        captured = capsys.readouterr()
        assert len(captured.out.splitlines()) == 8
        assert 'relative to MONO' in captured.err

    def test_trace(self, capsys):
        assert main(['trace', '--program', '010100011101111', '--steps', '6']) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == 'FLIP JZ OUT JNZ RUN'
        assert len(lines) == 8
        assert lines[-1] == 'output=11 status=out-of-steps consumed=15 steps=6'


class TestLz:
    def test_string(self, capsys):
        assert main(['lz', '--string', '00000000']) == EXIT_OK
        out = capsys.readouterr().out
        assert 'phrases: 0 0000000' in out
        assert 'C = 2' in out
        assert 'K̃ = 8 bits' in out

    def test_compare(self, tmp_path, capsys):
        strings = tmp_path / 'strings.txt'
        strings.write_text('00000000\n01101001\n')
        assert main(['lz', '--compare', str(strings), '--max-len', '9', '--max-steps', '20',
                     '--quiet']) == EXIT_OK
        assert capsys.readouterr().out.startswith('string,phrases,lz_bits')


class TestIngest:
    def test_round_trip(self, sequence_file, capsys):
        assert main(['ingest-check', '--input', str(sequence_file)]) == EXIT_OK
        captured = capsys.readouterr()
        assert captured.out == '10\n'
        assert '2 bits' in captured.err

    def test_illegal(self, tmp_path, capsys):
        path = tmp_path / 'bad.txt'
        path.write_text('012')
        assert main(['ingest-check', '--input', str(path)]) == EXIT_USAGE
        assert 'byte offset 2' in capsys.readouterr().err


class TestExperiment:
    def _config(self, tmp_path, data):
        path = tmp_path / 'run.json'
        path.write_text(json.dumps(data))
        return path

    def test_writes_results(self, tmp_path):
        config = self._config(tmp_path, {'kind': 'identity', 'seed': 2,
                                         'params': {'pool_size': 3, 'sequences': 2,
                                                    'length': 8}})
        out = tmp_path / 'results'
        assert main(['experiment', str(config), '-o', str(out), '--quiet']) == EXIT_OK
        assert (out / 'run.csv').exists()
        assert json.loads((out / 'run.json').read_text())['seed'] == 2

    def test_seed_override(self, tmp_path):
        config = self._config(tmp_path, {'kind': 'identity', 'seed': 2,
                                         'params': {'pool_size': 2, 'sequences': 1,
                                                    'length': 4}})
        out = tmp_path / 'results'
        assert main(['experiment', str(config), '-o', str(out), '--seed', '9']) == EXIT_OK
        assert json.loads((out / 'run.json').read_text())['seed'] == 9

    def test_violation(self, tmp_path):
        config = self._config(tmp_path, {'kind': 'anti-limit', 'params': {
            'blocks': 2, 'budget': 4, 'victims': [{'constant': '3/4', 'expect_sequence': '1'}]}})
        assert main(['experiment', str(config), '-o', str(tmp_path)]) == EXIT_VIOLATION

    def test_unknown_kind(self, tmp_path):
        config = self._config(tmp_path, {'kind': 'bogus'})
        assert main(['experiment', str(config), '-o', str(tmp_path)]) == EXIT_USAGE

    def test_missing_config(self, tmp_path):
        assert main(['experiment', str(tmp_path / 'absent.json')]) == EXIT_USAGE


class TestUsage:
    def test_regret(self, capsys):
        assert main(['regret', '--pool-size', '3', '--samples', '2', '--length', '8',
                     '--quiet']) == EXIT_OK
        assert capsys.readouterr().out.startswith('sample,member,weight_bits')

    def test_argparse_errors(self):
        with pytest.raises(SystemExit) as info:
            main(['diag'])
        assert info.value.code == EXIT_USAGE

    def test_logger_name(self):
        assert unipred.logger.name == 'unipred'
