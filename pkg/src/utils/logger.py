"""
Система логирования для проекта проверки неравенств в пространствах Гёльдера
"""

import logging
import sys
from typing import Optional
from src.config import LOG_LEVEL, LOG_FORMAT, LOG_FILE


def setup_main_logger(level: str = LOG_LEVEL, log_file: Optional[str] = LOG_FILE) -> logging.Logger:
    """
    Настройка корневого логгера приложения

    Args:
        level (str): Уровень логирования
        log_file (str): Путь к лог-файлу; None - только консоль

    Returns:
        logging.Logger: Корневой логгер
    """
    root_logger = logging.getLogger()
    root_logger.setLevel(getattr(logging, level.upper(), logging.INFO))

    # Очищаем существующие handlers
    for handler in root_logger.handlers[:]:
        root_logger.removeHandler(handler)

    formatter = logging.Formatter(LOG_FORMAT)

    # stdout занят JSON-выводом подкоманды constants
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(logging.DEBUG)
    console_handler.setFormatter(formatter)
    root_logger.addHandler(console_handler)

    # Файловый handler (только если задан LOG_FILE)
    if log_file:
        try:
            file_handler = logging.FileHandler(log_file, encoding='utf-8')
            file_handler.setLevel(logging.INFO)
            file_handler.setFormatter(formatter)
            root_logger.addHandler(file_handler)
        except OSError as e:
            root_logger.warning(f"Не удалось создать лог-файл {log_file}: {e}")

    logging.getLogger(__name__).debug("Система логирования инициализирована")

    return root_logger
