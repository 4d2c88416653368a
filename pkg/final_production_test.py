#!/usr/bin/env python3
"""
Финальный прогон всех наборов на полном корпусе (200 функций, 200 пар произведений)
"""

import asyncio
import os
import sys
import tempfile
import time

sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from src.config import SUITES
from src.main import run_suite_async
from src.utils.logger import setup_main_logger
from src.verify.report import save_constants_csv, save_report
from src.verify.suites import SuiteConfig

FULL_CONFIG = {
    "corpus": {"count": 200},
    "product_pairs": 200,
    "chain_steps": 10,
    "chain_s_values": [0.0, 0.25],
    "k_max": 4,
}


async def main():
    """Финальный прогон с полным корпусом"""
    logger = setup_main_logger()

    logger.info("🎯 === ФИНАЛЬНЫЙ ПРОГОН ВСЕХ НАБОРОВ ===")

    try:
        config = SuiteConfig.from_mapping(FULL_CONFIG)
        started = time.perf_counter()
        report = await run_suite_async(config)
        elapsed = time.perf_counter() - started

        with tempfile.TemporaryDirectory() as directory:
            save_report(report, os.path.join(directory, "holder_report.json"))
            save_constants_csv(report.constants["rows"], os.path.join(directory, "constants.csv"))

        statistics = report.get_statistics()
        missing = [name for name in SUITES if name not in statistics["suites"]]
        rows = report.constants["rows"]

        logger.info(f"📊 Проверок: {statistics['total']}, провалено: {statistics['failed']}, время {elapsed:.1f}s")
        for name in SUITES:
            entry = statistics["suites"].get(name, {"total": 0, "failed": 0})
            marker = "✅" if entry["total"] and entry["failed"] == 0 else "❌"
            logger.info(f"{marker} {name}: {entry['total'] - entry['failed']}/{entry['total']}")
        constants_line = ", ".join(f"{row['C_k']:.6g}" for row in rows)
        logger.info(f"📈 C_k: {constants_line}")

        if missing:
            logger.error(f"❌ Наборы без записей: {missing}")
            return False
        if rows[0]["C_k"] != 2.0:
            logger.error(f"❌ C_0 = {rows[0]['C_k']}, ожидалось 2")
            return False
        for record in report.failed[:20]:
            logger.error(f"❌ {record.check_id}: {record.message}")

        if report.passed:
            logger.info("🎉 ВСЕ ПРОВЕРКИ ПРОЙДЕНЫ!")
        return report.passed

    except Exception as e:
        logger.error(f"❌ Ошибка в финальном прогоне: {e}")
        return False

if __name__ == "__main__":
    success = asyncio.run(main())
    sys.exit(0 if success else 1)
