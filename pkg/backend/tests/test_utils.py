import io
import logging
import threading

import pandas as pd
import pytest

import config
from services.export_service import export_to_csv, export_to_excel, write_export
from services.fs_family import build
from services.matchings import MatchingType, enumerate_perfect_matchings
from utils.classification import classify_family, is_jaeger_closed, jaeger_count_closed
from utils.filters import filter_by_type, filter_hamiltonian, limit_results
from utils.parallel import ordered_map, resolve_threads
from utils.recall import compare_counts


class TestFilters:
    def test_by_type(self):
        matchings = enumerate_perfect_matchings(build(2, 4))
        assert len(filter_by_type(matchings, [MatchingType.TYPE1])) == 16
        assert len(filter_by_type(matchings, [MatchingType.TYPE2_0, MatchingType.TYPE2_1])) == 18
        assert filter_by_type(matchings, None) is matchings

    def test_hamiltonian(self):
        matchings = enumerate_perfect_matchings(build(1, 4))
        yes = filter_hamiltonian(matchings)
        no = filter_hamiltonian(matchings, hamiltonian=False)
        assert len(yes) + len(no) == 33
        assert filter_hamiltonian(enumerate_perfect_matchings(build(2, 5))) == []

    @pytest.mark.parametrize("limit,expected", [(None, 9), (-1, 9), (0, 0), (4, 4), (20, 9)])
    def test_limit(self, limit, expected):
        assert len(limit_results(enumerate_perfect_matchings(build(1, 3)), limit)) == expected


class TestClassification:
    @pytest.mark.parametrize("j,k,expected", [
        (2, 5, {'chromatic_index': 4, 'snark': True, 'two_factor_hamiltonian': False, 'jaeger': False, 'jaeger_count': 0}),
        (1, 3, {'chromatic_index': 3, 'snark': False, 'two_factor_hamiltonian': True, 'jaeger': False, 'jaeger_count': 0}),
        (1, 4, {'chromatic_index': 3, 'snark': False, 'two_factor_hamiltonian': False, 'jaeger': True, 'jaeger_count': 3}),
        (3, 6, {'chromatic_index': 3, 'snark': False, 'two_factor_hamiltonian': False, 'jaeger': True, 'jaeger_count': 6}),
    ])
    def test_profiles(self, j, k, expected):
        assert classify_family(j, k) == expected

    def test_cube(self):
        assert is_jaeger_closed(1, 2)
        assert jaeger_count_closed(1, 2) == 3
        assert not is_jaeger_closed(3, 2)


class TestRecall:
    def test_marks_rows(self):
        rows = [
            {'j': 1, 'k': 2, 'quantity': 'mu', 'enumerated': 9, 'closed_form': 9},
            {'j': 2, 'k': 2, 'quantity': 'mu', 'enumerated': 11, 'closed_form': 10},
        ]
        summary = compare_counts(rows)
        assert [r['pass'] for r in rows] == [True, False]
        assert summary['total'] == 2
        assert summary['failed'] == 1
        assert summary['pass_rate'] == 0.5
        assert summary['failures'][0]['enumerated'] == 11

    def test_empty(self):
        assert compare_counts([])['pass_rate'] == 0


class TestConfig:
    @pytest.mark.parametrize("raw,expected", [(None, 7), ('', 7), ('4', 4), ('four', 7), ('2.5', 7)])
    def test_int_env(self, monkeypatch, raw, expected):
        if raw is None:
            monkeypatch.delenv('FS_TEST_SETTING', raising=False)
        else:
            monkeypatch.setenv('FS_TEST_SETTING', raw)
        assert config._int_env('FS_TEST_SETTING', 7) == expected

    def test_malformed_value_is_logged(self, monkeypatch, caplog):
        monkeypatch.setenv('FS_TEST_SETTING', 'many')
        with caplog.at_level(logging.WARNING, logger='config'):
            config._int_env('FS_TEST_SETTING', 2)
        assert "FS_TEST_SETTING='many' is not an integer" in caplog.text


class TestParallel:
    def test_resolve(self, monkeypatch):
        monkeypatch.setattr('utils.parallel.FS_THREADS', 3)
        assert resolve_threads() == 3
        assert resolve_threads(0) == 1
        assert resolve_threads(8) == 8

    @pytest.mark.parametrize("threads", [1, 2, 8])
    def test_order_preserved(self, threads):
        assert ordered_map(lambda x: x * x, range(20), threads) == [x * x for x in range(20)]

    def test_single_thread_runs_inline(self):
        seen = ordered_map(lambda _: threading.get_ident(), range(3), 1)
        assert set(seen) == {threading.get_ident()}


class TestExport:
    ROWS = [
        {'j': 1, 'k': 2, 'quantity': 'mu', 'enumerated': 9, 'closed_form': 9, 'pass': True},
        {'j': 1, 'k': 2, 'quantity': 'mu1', 'enumerated': 3, 'closed_form': 4, 'pass': False},
    ]

    def test_csv(self):
        text = export_to_csv(self.ROWS).getvalue().decode('utf-8')
        assert text.splitlines() == [
            'j,k,quantity,enumerated,closed_form,pass',
            '1,2,mu,9,9,true',
            '1,2,mu1,3,4,false',
        ]

    def test_csv_bom_is_opt_in(self):
        assert export_to_csv(self.ROWS).getvalue().startswith(b'j,k,')
        assert export_to_csv(self.ROWS, bom=True).getvalue().startswith(b'\xef\xbb\xbfj,k,')

    def test_csv_keeps_integers_beside_blanks(self):
        rows = [
            {'j': 1, 'k': 2, 'quantity': 'mu', 'enumerated': 9, 'closed_form': 9, 'pass': True},
            {'j': 1, 'k': 3, 'quantity': 'recurrence', 'enumerated': 9, 'closed_form': None, 'pass': True},
        ]
        text = export_to_csv(rows).getvalue().decode('utf-8')
        assert text.splitlines()[1:] == ['1,2,mu,9,9,true', '1,3,recurrence,9,,true']

    def test_csv_empty(self):
        assert export_to_csv([]).getvalue() == b'No data to export'

    def test_excel(self):
        df = pd.read_excel(export_to_excel(self.ROWS, columns=['quantity', 'pass']), sheet_name='Counts')
        assert list(df.columns) == ['quantity', 'pass']
        assert len(df) == 2

    def test_write(self, tmp_path):
        path = tmp_path / 'out.csv'
        write_export(str(path), io.BytesIO(b'abc'))
        assert path.read_bytes() == b'abc'
