"""
Точка входа: численная проверка неравенств пространств Гёльдера BC^{k,s}(Ω, Z)
и конструкций групп Ли BC^{k,s}(Ω, G)

Подкоманды:
    run        - выполнить наборы проверок и записать JSON-отчёт
    constants  - вывести таблицу констант (F, λ, Σ|λ|, ε₀, C₁…C₄, D_k, C_k)

Наборы выполняются параллельно в потоках; записи отчёта сортируются по
check_id, поэтому отчёт не зависит от порядка завершения наборов.
"""

import argparse
import asyncio
import json
import logging
import sys
import time
import tomllib
from asyncio import TaskGroup
from pathlib import Path
from typing import Any, Dict, List, Optional

from src.config import EXIT_CODES, LOG_LEVEL, SUITES
from src.geometry.domain import make_domain
from src.utils.errors import ConfigInvalid, HolderToolkitError
from src.utils.logger import setup_main_logger
from src.verify.report import Report, ReportCollector, canonical_json, save_constants_csv, save_report
from src.verify.suites import SuiteConfig, SuiteContext, build_constants_table, run_named_suite

logger = logging.getLogger(__name__)


def load_config_file(path: str) -> Dict[str, Any]:
    """
    Чтение файла конфигурации JSON или TOML

    Raises:
        ConfigInvalid: файл не читается или имеет неизвестное расширение
    """
    target = Path(path)
    try:
        if target.suffix == ".toml":
            with open(target, "rb") as f:
                return tomllib.load(f)
        if target.suffix == ".json":
            with open(target, encoding="utf-8") as f:
                return json.load(f)
    except (OSError, tomllib.TOMLDecodeError, json.JSONDecodeError) as e:
        raise ConfigInvalid(f"Не удалось прочитать конфигурацию {path}: {e}") from e
    raise ConfigInvalid(f"Неизвестный формат конфигурации: {target.suffix or path}")


def _suite_list(value: str) -> List[str]:
    return [name.strip() for name in value.split(",") if name.strip()]


def build_config(args: argparse.Namespace) -> SuiteConfig:
    """Файл конфигурации поверх умолчаний, затем флаги командной строки"""
    mapping = load_config_file(args.config) if args.config else {}
    if getattr(args, "suite", None) is not None:
        mapping["suites"] = _suite_list(args.suite)
    if args.seed is not None:
        mapping["seed"] = args.seed
    if getattr(args, "out", None):
        mapping["output"] = args.out
    if args.kmax is not None:
        mapping["k_max"] = args.kmax
    if getattr(args, "tol", None) is not None:
        mapping["tolerances"] = {**mapping.get("tolerances", {}), "inequality": args.tol}
    if args.csv:
        mapping["csv_path"] = args.csv
    return SuiteConfig.from_mapping(mapping)


def emit_constants(config: SuiteConfig) -> Dict[str, Any]:
    """Таблица констант для области из конфигурации"""
    return build_constants_table(make_domain(config.domain), config.k_max)


async def _run_timed(name: str, ctx: SuiteContext, collector: ReportCollector):
    started = time.perf_counter()
    logger.info(f"🧪 Набор {name}: старт")
    records = await asyncio.to_thread(run_named_suite, name, ctx)
    collector.add_records(records)
    failed = sum(1 for record in records if not record.passed)
    elapsed = time.perf_counter() - started
    marker = "✅" if failed == 0 else "❌"
    logger.info(f"{marker} Набор {name}: {len(records) - failed}/{len(records)} проверок пройдено за {elapsed:.2f}s")


async def run_suite_async(config: SuiteConfig) -> Report:
    """
    Выполнение выбранных наборов проверок

    Args:
        config (SuiteConfig): Проверенная конфигурация

    Returns:
        Report: Отчёт; пустой, если наборы не выбраны

    Raises:
        ConfigInvalid: корпус или выборку нельзя построить по конфигурации
    """
    collector = ReportCollector()
    if config.suites:
        try:
            ctx = await asyncio.to_thread(SuiteContext, config)
        except (OSError, json.JSONDecodeError, HolderToolkitError) as e:
            raise ConfigInvalid(f"Не удалось подготовить выборку или корпус: {e}") from e

        async with TaskGroup() as tg:
            for name in config.suites:
                tg.create_task(_run_timed(name, ctx, collector))

    return collector.build(config.to_dict(), emit_constants(config))


def run_suite(config: SuiteConfig) -> Report:
    """Синхронная обёртка над run_suite_async"""
    return asyncio.run(run_suite_async(config))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="python -m src.main",
                                     description="Проверка неравенств пространств Гёльдера и групп Ли BC^{k,s}(Ω, G)")
    parser.add_argument("--log-level", default=LOG_LEVEL, help="Уровень логирования")
    subparsers = parser.add_subparsers(dest="command", required=True)

    def add_common(sub: argparse.ArgumentParser):
        sub.add_argument("--config", help="Файл конфигурации (.json или .toml)")
        sub.add_argument("--seed", type=int, help="Зерно корпуса и случайных проб")
        sub.add_argument("--kmax", type=int, help="Наибольший k в таблице констант")
        sub.add_argument("--csv", help="Путь для таблицы констант в CSV")

    run = subparsers.add_parser("run", help="Выполнить наборы проверок")
    add_common(run)
    run.add_argument("--suite", help=f"Наборы через запятую из {', '.join(SUITES)}; пустая строка - ни одного")
    run.add_argument("--out", help="Путь к JSON-отчёту")
    run.add_argument("--tol", type=float, help="Мультипликативный допуск неравенств")

    constants = subparsers.add_parser("constants", help="Вывести таблицу констант")
    add_common(constants)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """
    Точка входа CLI

    Returns:
        int: 0 - все проверки пройдены, 1 - есть проваленные, 2 - ошибка конфигурации
    """
    args = build_parser().parse_args(argv)
    setup_main_logger(level=args.log_level)

    try:
        config = build_config(args)
    except ConfigInvalid as e:
        logger.error(f"❌ Ошибка конфигурации: {e}")
        return EXIT_CODES["config_error"]

    if args.command == "constants":
        table = emit_constants(config)
        sys.stdout.write(canonical_json(table) + "\n")
        if config.csv_path:
            save_constants_csv(table["rows"], config.csv_path)
        return EXIT_CODES["ok"]

    logger.info(f"🎯 Запуск наборов: {', '.join(config.suites) or 'нет'}")
    started = time.perf_counter()
    try:
        report = run_suite(config)
    except ConfigInvalid as e:
        logger.error(f"❌ Ошибка конфигурации: {e}")
        return EXIT_CODES["config_error"]

    save_report(report, config.output)
    if config.csv_path:
        save_constants_csv(report.constants["rows"], config.csv_path)

    statistics = report.get_statistics()
    logger.info("📊 === РЕЗУЛЬТАТЫ ===")
    for name, entry in sorted(statistics["suites"].items()):
        marker = "✅" if entry["failed"] == 0 else "❌"
        logger.info(f"{marker} {name}: {entry['total'] - entry['failed']}/{entry['total']}")
    logger.info(f"📈 Пройдено проверок: {statistics['total'] - statistics['failed']}/{statistics['total']} "
                f"за {time.perf_counter() - started:.2f}s")

    if report.passed:
        logger.info("🎉 ВСЕ ПРОВЕРКИ ПРОЙДЕНЫ!")
        return EXIT_CODES["ok"]
    for record in report.failed[:20]:
        logger.error(f"❌ {record.check_id}: {record.message}")
    return EXIT_CODES["check_failed"]


if __name__ == "__main__":
    sys.exit(main())
