"""
Корпус тестовых функций: случайные симметричные полиномы, гладкие огибающие
и полиномы со значениями в матричной алгебре Ли; загрузка корпуса из JSON
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, NamedTuple, Optional

import numpy as np

from src.config import CORPUS_CONFIG
from src.functions.jets import (JetFunction, Polynomial, SCALAR_FAMILIES, envelope_jet, poly_jet)
from src.utils.errors import HolderToolkitError

logger = logging.getLogger(__name__)


class CorpusEntry(NamedTuple):
    """Элемент корпуса"""
    function_id: str
    jet: JetFunction
    kind: str


def random_polynomial(rng: np.random.Generator, in_dim: int, out_dim: int, degree: int,
                      scale: float = 1.0) -> Polynomial:
    """
    Случайный полином с коэффициентами из [-scale, scale], каждая часть симметризована

    Args:
        rng (np.random.Generator): Генератор случайных чисел
        in_dim (int): Размерность n
        out_dim (int): Размерность m
        degree (int): Степень
        scale (float): Масштаб коэффициентов

    Returns:
        Polynomial: Полином степени degree
    """
    tensors = [rng.uniform(-scale, scale, size=(in_dim,) * order + (out_dim,)) for order in range(degree + 1)]
    return Polynomial.from_tensors(tensors, in_dim)


def random_algebra_polynomial(rng: np.random.Generator, basis: np.ndarray, in_dim: int, degree: int,
                              scale: float = 1.0) -> Polynomial:
    """
    Полином со значениями в подалгебре, натянутой на basis (массив (b, d, d))

    Коэффициенты по базису берутся из [-scale, scale]; значения хранятся как векторы ℝ^{d²}.
    """
    flat_basis = np.asarray(basis, dtype=float).reshape(len(basis), -1)
    tensors = []
    for order in range(degree + 1):
        weights = rng.uniform(-scale, scale, size=(in_dim,) * order + (len(flat_basis),))
        tensors.append(weights @ flat_basis)
    return Polynomial.from_tensors(tensors, in_dim)


def random_envelope(rng: np.random.Generator, in_dim: int, out_dim: int) -> JetFunction:
    """f(<a, x>)·w для f из {sin, cos, exp} со случайными a, w"""
    name = sorted(SCALAR_FAMILIES)[int(rng.integers(len(SCALAR_FAMILIES)))]
    covector = rng.uniform(-1.0, 1.0, size=in_dim)
    weight = rng.uniform(-1.0, 1.0, size=out_dim)
    return envelope_jet(SCALAR_FAMILIES[name], covector, weight=weight)


def build_corpus(count: int = CORPUS_CONFIG["count"],
                 degree: int = CORPUS_CONFIG["degree"],
                 in_dim: int = 2,
                 out_dim: int = CORPUS_CONFIG["out_dim"],
                 seed: int = CORPUS_CONFIG["seed"],
                 envelope_share: float = CORPUS_CONFIG["envelope_share"]) -> List[CorpusEntry]:
    """
    Детерминированный корпус из полиномов и огибающих

    Args:
        count (int): Число функций
        degree (int): Степень полиномов
        in_dim (int): Размерность области
        out_dim (int): Размерность значений
        seed (int): Зерно генератора
        envelope_share (float): Доля огибающих f(<a, x>)·w

    Returns:
        List[CorpusEntry]: Функции корпуса в порядке построения
    """
    rng = np.random.default_rng(seed)
    envelopes = int(round(count * envelope_share))
    entries = []
    for index in range(count):
        if index < count - envelopes:
            jet = poly_jet(random_polynomial(rng, in_dim, out_dim, degree))
            kind = "polynomial"
        else:
            jet = random_envelope(rng, in_dim, out_dim)
            kind = "envelope"
        entries.append(CorpusEntry(function_id=f"{kind}-{index:04d}", jet=jet, kind=kind))

    logger.debug(f"Корпус: {count - envelopes} полиномов, {envelopes} огибающих (seed={seed})")
    return entries


def _entry_from_json(item: Dict[str, Any], index: int) -> CorpusEntry:
    kind = item.get("kind", "polynomial")
    function_id = str(item.get("id", f"{kind}-{index:04d}"))
    if kind == "polynomial":
        in_dim = int(item["in_dim"])
        polynomial = Polynomial.from_tensors([np.asarray(t, dtype=float) for t in item["parts"]], in_dim)
        return CorpusEntry(function_id=function_id, jet=poly_jet(polynomial), kind=kind)
    if kind == "envelope":
        family = SCALAR_FAMILIES[item["family"]]
        jet = envelope_jet(family, item["covector"], max_order=item.get("max_order"), weight=item.get("weight"))
        return CorpusEntry(function_id=function_id, jet=jet, kind=kind)
    raise ValueError(f"Неизвестный тип функции: {kind!r}")


def load_corpus(path: str) -> List[CorpusEntry]:
    """
    Загрузка корпуса из JSON-файла

    Формат: {"functions": [{"id": ..., "kind": "polynomial", "in_dim": n,
    "parts": [тензор порядка 0, тензор порядка 1, ...]}, {"kind": "envelope",
    "family": "sin", "covector": [...], "weight": [...]}]}. Тензоры симметризуются
    при загрузке, некорректные записи пропускаются с предупреждением.

    Args:
        path (str): Путь к файлу

    Returns:
        List[CorpusEntry]: Успешно загруженные функции
    """
    with open(Path(path), encoding="utf-8") as f:
        payload = json.load(f)

    entries = []
    for index, item in enumerate(payload.get("functions", [])):
        try:
            entries.append(_entry_from_json(item, index))
        except (KeyError, TypeError, ValueError, HolderToolkitError) as e:
            logger.warning(f"Пропущена запись корпуса #{index}: {e}")

    logger.info(f"📚 Загружено {len(entries)} функций из {path}")
    return entries


def corpus_from_config(config: Optional[Dict[str, Any]] = None, in_dim: int = 2) -> List[CorpusEntry]:
    """Корпус по CORPUS_CONFIG: из файла, если указан path, иначе случайный"""
    config = {**CORPUS_CONFIG, **(config or {})}
    if config.get("path"):
        return load_corpus(config["path"])
    return build_corpus(count=int(config["count"]), degree=int(config["degree"]), in_dim=in_dim,
                        out_dim=int(config["out_dim"]), seed=int(config["seed"]),
                        envelope_share=float(config["envelope_share"]))
