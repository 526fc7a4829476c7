import json

import pandas as pd
import pytest

import fs as cli
from services.fs_family import build
from services.matchings import enumerate_perfect_matchings
from services.two_factor import complement_two_factor, eligible_anchors


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestCount:
    def test_total(self, capsys):
        code, out, _ = run(capsys, 'count', '--j', '2', '--k', '5')
        assert code == 0
        assert out == '32\n'

    def test_by_type(self, capsys):
        code, out, _ = run(capsys, 'count', '--j', '2', '--k', '4', '--by-type')
        assert code == 0
        assert out.splitlines() == ['34', 'type 1: 16', 'type 2.0: 9', 'type 2.1: 9']

    def test_output_is_deterministic(self, capsys):
        first = run(capsys, 'enumerate', '--j', '1', '--k', '4')
        second = run(capsys, 'enumerate', '--j', '1', '--k', '4', '--threads', '1')
        assert first == second


class TestBuild:
    def test_edgelist(self, capsys):
        code, out, _ = run(capsys, 'build', '--j', '2', '--k', '5')
        assert code == 0
        lines = out.splitlines()
        assert len(lines) == 30
        assert lines[0] == 't0 x0 #0'
        assert lines[-1] == 'z4 y0 #29'

    def test_json_to_file(self, capsys, tmp_path):
        path = tmp_path / 'fs.json'
        code, out, _ = run(capsys, 'build', '--j', '1', '--k', '3', '--format', 'json', '--out', str(path))
        assert code == 0
        assert out == ''
        data = json.loads(path.read_text())
        assert len(data['vertices']) == 12
        assert len(data['edges']) == 18


class TestEnumerate:
    def test_lists_every_matching(self, capsys):
        code, out, _ = run(capsys, 'enumerate', '--j', '1', '--k', '3')
        assert code == 0
        rows = [json.loads(line) for line in out.splitlines()]
        assert len(rows) == 9
        assert all(len(r) == 6 and r == sorted(r) for r in rows)

    @pytest.mark.parametrize("j,k,flag,expected", [
        (1, 3, '--hamiltonian', 9),
        (1, 3, '--no-hamiltonian', 0),
        (2, 5, '--hamiltonian', 0),
        (2, 5, '--no-hamiltonian', 32),
    ])
    def test_hamiltonian_filter(self, capsys, j, k, flag, expected):
        code, out, _ = run(capsys, 'enumerate', '--j', str(j), '--k', str(k), flag)
        assert code == 0
        assert len(out.splitlines()) == expected

    def test_hamiltonian_split_is_complete(self, capsys):
        _, yes, _ = run(capsys, 'enumerate', '--j', '1', '--k', '4', '--hamiltonian')
        _, no, _ = run(capsys, 'enumerate', '--j', '1', '--k', '4', '--no-hamiltonian')
        assert len(yes.splitlines()) + len(no.splitlines()) == 33
        assert set(yes.splitlines()).isdisjoint(no.splitlines())

    def test_type_filter_and_limit(self, capsys):
        code, out, _ = run(capsys, 'enumerate', '--j', '2', '--k', '4', '--type', '2.0', '--limit', '2')
        assert code == 0
        assert len(out.splitlines()) == 2


class TestTwoFactor:
    def test_by_index(self, capsys):
        code, out, _ = run(capsys, 'two-factor', '--j', '2', '--k', '3', '--matching', '0')
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == 'type: 1'
        assert lines[2] == 'hamiltonian: no'
        assert lines[3].startswith('majors: ')
        assert lines[4].startswith('k1: ')

    def test_type2_from_file(self, capsys, tmp_path):
        path = tmp_path / 'm.json'
        path.write_text(json.dumps([0, 3, 6, 9, 13, 14, 19, 20]))
        code, out, _ = run(capsys, 'two-factor', '--j', '3', '--k', '4', '--matching', str(path))
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == 'type: 2.0'
        assert lines[-1] == 'long cycle: 4 six-cycles: 2'

    def test_hamiltonian(self, capsys):
        code, out, _ = run(capsys, 'two-factor', '--j', '1', '--k', '3', '--matching', '4')
        assert code == 0
        assert out.splitlines() == ['type: 1', 'lengths: 12', 'hamiltonian: yes']

    def test_index_out_of_range(self, capsys):
        code, _, err = run(capsys, 'two-factor', '--j', '1', '--k', '3', '--matching', '9')
        assert code == 2
        assert err.startswith('fs: error:')

    def test_invalid_file(self, capsys, tmp_path):
        path = tmp_path / 'm.json'
        path.write_text(json.dumps([0, 1]))
        code, _, err = run(capsys, 'two-factor', '--j', '3', '--k', '4', '--matching', str(path))
        assert code == 2
        assert 'fs: error:' in err


class TestTransform:
    def test_variant1(self, capsys, tmp_path, two_cycle):
        for m in two_cycle(2, 7):
            anchors = eligible_anchors(m, complement_two_factor(m), 1)
            if anchors:
                break
        else:
            pytest.fail("no eligible variant-1 instance in FS(2,7)")

        path = tmp_path / 'm.json'
        path.write_text(json.dumps(list(m.serials)))
        code, out, _ = run(
            capsys, 'transform', '--j', '2', '--k', '7', '--variant', '1',
            '--anchor', str(anchors[0]), '--matching', str(path),
        )
        assert code == 0
        lines = out.splitlines()
        assert len(json.loads(lines[0])) == 14
        before, after = lines[1][len('lengths: '):].split(' -> ')
        b1, b2 = map(int, before.split())
        a1, a2 = map(int, after.split())
        assert (a1 - b1, a2 - b2) == (-4, 4)

    def test_precondition_failure_is_reported(self, capsys):
        code, _, err = run(capsys, 'transform', '--j', '1', '--k', '5', '--variant', '1', '--anchor', '0', '--matching', '0')
        assert code == 2
        assert 'two_cycles' in err


class TestChromatic:
    def test_snark(self, capsys):
        code, out, _ = run(capsys, 'chromatic', '--j', '2', '--k', '5')
        assert code == 0
        assert out == '4\n'

    def test_colouring(self, capsys):
        code, out, _ = run(capsys, 'chromatic', '--j', '1', '--k', '3')
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == '3'
        assert [line.split(':')[0] for line in lines[1:]] == ['0', '1', '2']


class TestJaeger:
    def test_enumerate_and_cover(self, capsys):
        code, out, _ = run(capsys, 'jaeger', '--j', '1', '--k', '4', '--enumerate', '--bf-check')
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == '3'
        rows = [json.loads(line) for line in lines[1:4]]
        assert sum(len(r['blue']) + len(r['red']) for r in rows) == 24
        assert all(len(r['blue']) + len(r['red']) == 8 for r in rows)
        assert lines[-1] == 'berge-fulkerson: pass'

    def test_six_matchings_cover(self, capsys):
        code, out, _ = run(capsys, 'jaeger', '--j', '3', '--k', '6', '--bf-check')
        assert code == 0
        assert out.splitlines() == ['6', 'berge-fulkerson: pass']

    def test_cover_skipped(self, capsys):
        code, out, _ = run(capsys, 'jaeger', '--j', '2', '--k', '4', '--bf-check')
        assert code == 0
        assert out.splitlines() == ['0', 'berge-fulkerson: skipped (0 Jaeger matchings, need 3 or 6)']

    def test_none(self, capsys):
        code, out, _ = run(capsys, 'jaeger', '--j', '2', '--k', '4')
        assert code == 0
        assert out == '0\n'


class TestWords:
    def test_list(self, capsys):
        code, out, _ = run(capsys, 'words', '--j', '3', '--k', '4', '--list-hamiltonian')
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == '12'
        assert len(lines) == 13
        assert 'XY@2.0' in lines
        assert 'ZX@2.1' in lines

    def test_odd_k_rejected(self, capsys):
        code, _, err = run(capsys, 'words', '--j', '1', '--k', '5')
        assert code == 2
        assert err.startswith('fs: error:')


class TestVerify:
    def test_table(self, capsys):
        code, out, _ = run(capsys, 'verify', '--kmax', '4')
        assert code == 0
        last = out.splitlines()[-1]
        passed, total = last.split()[0].split('/')
        assert passed == total
        assert last.endswith('checks passed')

    def test_json_and_csv(self, capsys, tmp_path):
        path = tmp_path / 'counts.csv'
        code, out, _ = run(capsys, 'verify', '--kmax', '3', '--json', '--csv', str(path))
        assert code == 0
        rows = [json.loads(line) for line in out.splitlines()]
        assert all(r['pass'] for r in rows)
        assert path.read_bytes().startswith(b'j,k,quantity')
        df = pd.read_csv(path, encoding='utf-8')
        assert list(df.columns) == ['j', 'k', 'quantity', 'enumerated', 'closed_form', 'pass']
        assert len(df) == len(rows)

    def test_excel(self, capsys, tmp_path):
        path = tmp_path / 'counts.xlsx'
        code, _, _ = run(capsys, 'verify', '--kmax', '2', '--excel', str(path))
        assert code == 0
        df = pd.read_excel(path, sheet_name='Counts')
        assert set(df['quantity']) >= {'mu', 'mu1', 'jaeger'}

    def test_failure_exit_status(self, capsys, monkeypatch):
        monkeypatch.setattr('services.formulas.mu1_closed', lambda j, k: -1)
        code, out, _ = run(capsys, 'verify', '--kmax', '2')
        assert code == 1
        assert 'checks passed' in out


class TestUsage:
    @pytest.mark.parametrize("argv", [
        ['count', '--j', '4', '--k', '3'],
        ['count', '--j', '1', '--k', '1'],
        ['count', '--j', '1'],
        ['count', '--j', '1', '--k', '3', '--bogus'],
        ['frobnicate'],
        [],
        ['verify', '--kmax', '1'],
    ])
    def test_exit_two(self, capsys, argv):
        code, out, err = run(capsys, *argv)
        assert code == 2
        assert out == ''
        assert err.startswith('fs: error:')
        assert len(err.strip().splitlines()) == 1
