#!/usr/bin/env python3
"""
Тесты наборов проверок: каждый набор на небольшом корпусе проходит без провалов
"""

import logging
import os
import sys
import time

import pytest

# Добавляем путь к модулям
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from src.config import SUITES
from src.main import run_suite
from src.utils.logger import setup_main_logger
from src.verify.checker import ANCHORS
from src.verify.suites import SuiteConfig, SuiteContext, run_named_suite

logger = logging.getLogger(__name__)

SMALL_RUN = {
    "plan": {"kind": "grid", "points_per_axis": 9},
    "corpus": {"count": 6},
    "product_pairs": 4,
    "chain_steps": 4,
    "k_max": 3,
    "seed": 5,
}

# Полный корпус из final_production_test.py и бюджет времени на весь прогон
FULL_RUN = {
    "corpus": {"count": 200},
    "product_pairs": 200,
}
FULL_RUN_SECONDS = 120.0

_contexts = {}


def _context(overrides=None) -> SuiteContext:
    key = repr(sorted((overrides or {}).items()))
    if key not in _contexts:
        _contexts[key] = SuiteContext(SuiteConfig.from_mapping({**SMALL_RUN, **(overrides or {})}))
    return _contexts[key]


def _assert_clean(name: str, ctx: SuiteContext):
    records = run_named_suite(name, ctx)
    failed = [f"{record.check_id}: {record.message}" for record in records if not record.passed]
    assert records, f"Набор {name} не дал ни одной записи"
    assert not failed, "\n".join(failed[:10])
    assert all(record.suite == name for record in records)
    assert all(record.anchor in ANCHORS.values() for record in records)
    return records


@pytest.mark.parametrize("name", SUITES)
def test_suite_passes(name):
    """Каждый набор на малом корпусе проходит без проваленных проверок"""
    _assert_clean(name, _context())


def test_convexity_on_cubics():
    """Логарифмическая выпуклость на корпусе из 50 кубических полиномов"""
    ctx = _context({"corpus": {"count": 50, "degree": 3, "envelope_share": 0.0}})
    assert len(ctx.corpus) == 50
    assert all(entry.kind == "polynomial" for entry in ctx.corpus)
    records = _assert_clean("convexity", ctx)
    anchors = {record.anchor for record in records}
    assert {ANCHORS["log_convexity"], ANCHORS["log_convexity_norm"], ANCHORS["unit_ball"]} <= anchors


def test_shared_profiles():
    """Профиль функции корпуса строится один раз и общий для наборов"""
    ctx = _context()
    entry = ctx.corpus[0]
    profile = ctx.profile(entry.function_id, entry.jet)
    assert ctx.profile(entry.function_id, entry.jet) is profile
    assert profile.samples is ctx.samples
    run_named_suite("chain", ctx)
    assert ctx.profile(entry.function_id, entry.jet) is profile


def test_anchors_russian():
    """Утверждения записей сформулированы по-русски"""
    for key, text in ANCHORS.items():
        assert any("а" <= letter.lower() <= "я" for letter in text), key


def test_full_corpus_time_budget():
    """Все наборы на корпусе из 200 функций и 200 пар произведений укладываются в бюджет времени"""
    config = SuiteConfig.from_mapping(FULL_RUN)
    started = time.perf_counter()
    report = run_suite(config)
    elapsed = time.perf_counter() - started
    logger.info(f"📊 Полный прогон: {report.get_statistics()['total']} проверок за {elapsed:.1f}s")
    assert report.passed
    assert elapsed <= FULL_RUN_SECONDS


TESTS = [(f"Набор {name}", lambda name=name: test_suite_passes(name)) for name in SUITES] + [
    ("Выпуклость на кубиках", test_convexity_on_cubics),
    ("Общие профили корпуса", test_shared_profiles),
    ("Русские формулировки", test_anchors_russian),
    ("Бюджет времени полного прогона", test_full_corpus_time_budget),
]


def main() -> int:
    """Главная функция тестирования"""
    setup_main_logger()
    logger.info("🧪 === ТЕСТИРОВАНИЕ НАБОРОВ ПРОВЕРОК ===")
    passed = 0
    for name, test in TESTS:
        try:
            test()
            logger.info(f"✅ {name}")
            passed += 1
        except Exception as e:
            logger.error(f"❌ {name}: {type(e).__name__}: {e}")

    logger.info(f"📈 Пройдено тестов: {passed}/{len(TESTS)}")
    return 0 if passed == len(TESTS) else 1


if __name__ == "__main__":
    sys.exit(main())
