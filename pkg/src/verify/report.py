"""
Сборка отчёта проверок и запись в канонический JSON и CSV таблицы констант
"""

import csv
import hashlib
import json
import logging
import threading
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

from src.config import REPORT_CONFIG
from src.verify.checker import CheckRecord

logger = logging.getLogger(__name__)


def canonical_json(payload: Any) -> str:
    """JSON с отсортированными ключами: одинаковые данные дают одинаковые байты"""
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False, allow_nan=False)


def config_hash(config: Dict[str, Any]) -> str:
    """sha256 канонического представления конфигурации"""
    text = json.dumps(config, sort_keys=True, separators=(",", ":"), ensure_ascii=False, default=str)
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


@dataclass
class Report:
    """
    Отчёт одного запуска
    """
    schema_version: int = REPORT_CONFIG["schema_version"]  # Версия формата отчёта
    config_hash: str = ""                                   # Хэш конфигурации запуска
    records: List[CheckRecord] = field(default_factory=list)  # Записи, упорядоченные по check_id
    constants: Dict[str, Any] = field(default_factory=dict)   # Таблица констант
    metadata: Dict[str, Any] = field(default_factory=dict)    # Конфигурация и сводка

    @classmethod
    def from_records(cls, records: List[CheckRecord], config: Dict[str, Any],
                     constants: Optional[Dict[str, Any]] = None) -> 'Report':
        """
        Создание отчёта из записей, собранных в любом порядке

        Args:
            records (List[CheckRecord]): Записи всех наборов
            config (Dict): Конфигурация запуска
            constants (Dict): Таблица констант

        Returns:
            Report: Отчёт с записями, отсортированными по check_id
        """
        ordered = sorted(records, key=lambda record: record.check_id)
        return cls(config_hash=config_hash(config), records=ordered, constants=constants or {},
                   metadata={"config": config})

    @property
    def failed(self) -> List[CheckRecord]:
        return [record for record in self.records if not record.passed]

    @property
    def passed(self) -> bool:
        return not self.failed

    def get_statistics(self) -> Dict[str, Any]:
        """Число проверок по наборам: всего и проваленных"""
        suites: Dict[str, Dict[str, int]] = {}
        for record in self.records:
            entry = suites.setdefault(record.suite, {"total": 0, "failed": 0})
            entry["total"] += 1
            entry["failed"] += 0 if record.passed else 1
        return {"total": len(self.records), "failed": len(self.failed), "suites": suites}

    def to_dict(self) -> Dict[str, Any]:
        return {
            "schema_version": self.schema_version,
            "config_hash": self.config_hash,
            "metadata": self.metadata,
            "summary": self.get_statistics(),
            "constants": self.constants,
            "records": [record.to_dict() for record in self.records],
        }

    def to_json(self) -> str:
        return canonical_json(self.to_dict())


class ReportCollector:
    """
    Потокобезопасный буфер записей: наборы, работающие параллельно,
    добавляют записи по мере готовности
    """

    def __init__(self):
        self._records: List[CheckRecord] = []
        self._lock = threading.Lock()

    def add_records(self, records: List[CheckRecord]):
        with self._lock:
            self._records.extend(records)

    def get_buffer_size(self) -> int:
        with self._lock:
            return len(self._records)

    def build(self, config: Dict[str, Any], constants: Optional[Dict[str, Any]] = None) -> Report:
        with self._lock:
            return Report.from_records(list(self._records), config, constants)


def save_report(report: Report, path: str) -> Path:
    """
    Запись отчёта в файл

    Args:
        report (Report): Отчёт
        path (str): Путь к JSON-файлу

    Returns:
        Path: Путь к записанному файлу
    """
    target = Path(path)
    if target.parent != Path(""):
        target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(report.to_json() + "\n", encoding="utf-8")
    logger.info(f"💾 Отчёт сохранён: {target} ({len(report.records)} записей)")
    return target


def load_report(path: str) -> Dict[str, Any]:
    with open(Path(path), encoding="utf-8") as f:
        return json.load(f)


CONSTANTS_CSV_FIELDS = ["k", "nodes", "interpolation_sums", "epsilon", "c1", "c2", "c3", "c4", "D_k", "C_k"]


def save_constants_csv(rows: List[Dict[str, Any]], path: str) -> Path:
    """
    Таблица констант в CSV (одна строка на k)

    Списки (узлы, суммы) записываются через ';'.
    """
    target = Path(path)
    if target.parent != Path(""):
        target.parent.mkdir(parents=True, exist_ok=True)
    with open(target, "w", encoding="utf-8", newline="") as f:
        writer = csv.DictWriter(f, fieldnames=CONSTANTS_CSV_FIELDS, extrasaction="ignore")
        writer.writeheader()
        for row in rows:
            writer.writerow({key: ";".join(f"{v:.17g}" for v in value) if isinstance(value, list)
                             else ("" if value is None else value)
                             for key, value in row.items()})
    logger.info(f"💾 Таблица констант сохранена: {target}")
    return target
