"""
Tests for input parsing, the cache, the thread fan-out, run logging and configuration.
"""
import time
from fractions import Fraction

import pytest

from src.config import Config, THREADS_ENV
from src.utils import (CacheManager, DeskError, ParseError, RunLogger, format_error_message,
                       parallel_map)
from src.utils.errors import BUDGET_EXCEEDED
from src.utils.validation import InputValidator

pytestmark = pytest.mark.unit


class TestInputValidator:
    @pytest.mark.parametrize('text,value', [
        ('3', Fraction(3)), ('-1/2', Fraction(-1, 2)), (' 4 / 6 ', Fraction(2, 3)), (7, Fraction(7)),
    ])
    def test_parse_rational(self, text, value):
        assert InputValidator.parse_rational(text) == value

    @pytest.mark.parametrize('text', ['1/0', '0.5', 'x', True, None, '1//2'])
    def test_rejects_bad_rationals(self, text):
        with pytest.raises(ParseError):
            InputValidator.parse_rational(text)

    def test_format_rational(self):
        assert InputValidator.format_rational(Fraction(4, 2)) == '2'
        assert InputValidator.format_rational(Fraction(-3, 6)) == '-1/2'

    def test_parse_builtin(self):
        assert InputValidator.parse_builtin('builtin:torus_gca(2)') == ('torus_gca', ['2'])
        assert InputValidator.parse_builtin('sl2') == ('sl2', [])
        assert InputValidator.parse_builtin('gravity(-1/2)') == ('gravity', ['-1/2'])

    def test_malformed_builtin(self):
        with pytest.raises(ParseError):
            InputValidator.parse_builtin('torus_gca(2')

    def test_split_product_respects_parentheses(self):
        assert InputValidator.split_product('torus_gca(3)*gravity(1)') == ['torus_gca(3)', 'gravity(1)']
        with pytest.raises(ParseError):
            InputValidator.split_product('sl2*')

    def test_parse_terms(self):
        terms = InputValidator.parse_terms('th1:E:t=2, th2:H:t2=-1/2, 1:F')
        assert terms == [(('th1', 'E', 't'), Fraction(2)), (('th2', 'H', 't2'), Fraction(-1, 2)),
                         (('1', 'F'), Fraction(1))]

    def test_malformed_term(self):
        with pytest.raises(ParseError):
            InputValidator.parse_terms('th1::t')

    def test_index_tuple(self):
        assert InputValidator.parse_index_tuple('(0, 0, 2)') == (0, 0, 2)
        assert InputValidator.parse_index_tuple('[]') == ()


class TestCache:
    def test_get_or_create_builds_once(self):
        cache = CacheManager()
        calls = []
        first = cache.get_or_create('builtin.lie', 'x', lambda: calls.append(1) or object())
        second = cache.get_or_create('builtin.lie', 'x', lambda: calls.append(1) or object())
        assert first is second
        assert len(calls) == 1
        assert cache.get_stats()['hits'] == 1

    def test_namespaces_clear_separately(self):
        cache = CacheManager()
        cache.set('group', 'Z2', 1)
        cache.set('builtin.site', 'circle2', 2)
        assert cache.clear_namespace('group') == 1
        assert not cache.exists('group', 'Z2')
        assert cache.exists('builtin.site', 'circle2')
        assert cache.get_stats()['namespaces'] == {'builtin.site': 1}

    def test_expired_entries_are_dropped(self, mocker):
        cache = CacheManager()
        cache.set('group', 'Z2', 1, expiry_minutes=1)
        mocker.patch.object(cache, '_is_expired', return_value=True)
        assert cache.get('group', 'Z2') is None

    def test_disabled_cache_always_builds(self, mocker):
        mocker.patch('src.config.Config.CACHE_ENABLED', return_value=False)
        cache = CacheManager()
        assert cache.get_or_create('group', 'a', list) is not cache.get_or_create('group', 'a', list)
        assert cache.get_stats()['total_entries'] == 0


class TestParallelMap:
    def test_order_is_preserved(self):
        def slow_square(x):
            time.sleep(0.001 * (5 - x))
            return x * x
        assert parallel_map(slow_square, range(6), threads=4) == [0, 1, 4, 9, 16, 25]

    def test_threads_from_config(self, mocker):
        threads = mocker.patch('src.config.Config.THREADS', return_value=1)
        assert parallel_map(str, [1, 2]) == ['1', '2']
        threads.assert_called_once()

    def test_explicit_threads_skip_config(self, mocker):
        threads = mocker.patch('src.config.Config.THREADS', return_value=8)
        parallel_map(str, [1, 2], threads=2)
        threads.assert_not_called()


class TestRunLogger:
    def test_stats(self):
        runs = RunLogger()
        runs.log_run('ce cohomology', 'ok', 0.5)
        runs.log_run('stack descent', 'fail', 1.5)
        runs.log_run('holonomy enumerate', 'error', error=BUDGET_EXCEEDED)
        stats = runs.get_run_stats()
        assert (stats['total_runs'], stats['ok'], stats['fail'], stats['error']) == (3, 1, 1, 1)
        assert stats['avg_elapsed'] == 1.0
        assert runs.get_recent_runs(1)[0]['error'] == BUDGET_EXCEEDED

    def test_empty_stats(self):
        assert RunLogger().get_run_stats()['total_runs'] == 0


class TestErrors:
    def test_message_carries_code_and_hint(self):
        message = format_error_message(DeskError(BUDGET_EXCEEDED, "too many tuples"))
        assert message.startswith(f"error [{BUDGET_EXCEEDED}]: too many tuples")
        assert '--budget' in message

    def test_payload(self):
        error = DeskError(BUDGET_EXCEEDED, "too many", {'size': 10})
        assert error.to_payload() == {'code': BUDGET_EXCEEDED, 'message': "too many", 'details': {'size': 10}}

    def test_foreign_exception(self):
        assert format_error_message(KeyError('x')).endswith('(KeyError)')


class TestConfig:
    def test_shipped_config_is_valid(self):
        valid, problems = Config.validate_config()
        assert valid, problems

    def test_threads_env_override(self, monkeypatch):
        monkeypatch.setenv(THREADS_ENV, '3')
        assert Config.THREADS() == 3

    def test_bad_threads_env_falls_back(self, monkeypatch):
        monkeypatch.setenv(THREADS_ENV, 'many')
        assert Config.THREADS() >= 1

    def test_invalid_convention_is_reported(self, mocker):
        mocker.patch('src.config.Config.SIMPLICIAL_CONVENTION', return_value='sideways')
        valid, problems = Config.validate_config()
        assert not valid
        assert any('simplicial.convention' in p for p in problems)

    def test_reload_reads_the_shipped_sections(self):
        Config.reload_config()
        sections = Config.get_all_config()
        assert {'application', 'computation', 'simplicial', 'cache'} <= set(sections)
        assert Config.SIMPLICIAL_CONVENTION() == sections['simplicial']['convention']

    def test_missing_key_uses_default(self):
        assert Config._get_nested_value('computation.no_such_key', 'fallback') == 'fallback'
