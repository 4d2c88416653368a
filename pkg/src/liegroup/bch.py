"""
Усечённый ряд Бейкера-Кэмпбелла-Хаусдорфа z = log(exp x · exp y)

Члены строятся по формуле Дынкина один раз для каждого порядка N и хранятся
как словарь {слово: коэффициент}, где слово (a₁, …, a_m) из букв x, y
означает правовложенную скобку [a₁, [a₂, …, [a_{m-1}, a_m]…]].
"""

import logging
import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np

from src.config import BCH_CONFIG
from src.liegroup.algebra import LieAlgebra
from src.utils.errors import OutsideConvergenceDomain

logger = logging.getLogger(__name__)

X, Y = 0, 1

Word = Tuple[int, ...]


@dataclass(frozen=True)
class BCHConfig:
    """Порядок усечения N >= 2 и доля ρ области сходимости ||x|| + ||y|| < log 2"""
    truncation_order: int = BCH_CONFIG["truncation_order"]
    domain_margin: float = BCH_CONFIG["domain_margin"]

    def __post_init__(self):
        if self.truncation_order < 2:
            raise ValueError(f"Порядок усечения должен быть >= 2, получено {self.truncation_order}")
        if not 0.0 < self.domain_margin < 1.0:
            raise ValueError(f"ρ должно лежать в (0, 1), получено {self.domain_margin}")

    @property
    def radius(self) -> float:
        return self.domain_margin * math.log(2.0)


def _exponent_blocks(total: int) -> Iterator[Tuple[Tuple[int, int], ...]]:
    """Последовательности пар (r_i, s_i), r_i + s_i >= 1, с суммой степеней total"""
    if total == 0:
        yield ()
        return
    for degree in range(1, total + 1):
        for r in range(degree + 1):
            for rest in _exponent_blocks(total - degree):
                yield ((r, degree - r),) + rest


def _word(blocks: Tuple[Tuple[int, int], ...]) -> Word:
    letters: List[int] = []
    for r, s in blocks:
        letters.extend([X] * r + [Y] * s)
    return tuple(letters)


@lru_cache(maxsize=8)
def dynkin_terms(order: int) -> Tuple[Tuple[Word, Fraction], ...]:
    """
    Точные коэффициенты ряда БКХ до суммарной степени order

    Args:
        order (int): Порядок усечения N

    Returns:
        Tuple: Пары (слово, коэффициент), упорядоченные по длине и слову
    """
    coefficients: Dict[Word, Fraction] = defaultdict(Fraction)
    for total in range(1, order + 1):
        for blocks in _exponent_blocks(total):
            word = _word(blocks)
            # [a, a] = 0: слова с повторённой последней буквой не дают вклада
            if len(word) > 1 and word[-1] == word[-2]:
                continue
            count = len(blocks)
            denominator = count * total * math.prod(math.factorial(r) * math.factorial(s) for r, s in blocks)
            coefficients[word] += Fraction((-1) ** (count - 1), denominator)

    terms = tuple(sorted(((word, c) for word, c in coefficients.items() if c != 0),
                         key=lambda item: (len(item[0]), item[0])))
    logger.debug(f"Ряд БКХ порядка {order}: {len(terms)} ненулевых слов")
    return terms


def bracket_word(word: Word, x: np.ndarray, y: np.ndarray, cache: Optional[Dict[Word, np.ndarray]] = None) -> np.ndarray:
    """Правовложенная скобка слова; общие суффиксы считаются один раз через cache"""
    cache = {} if cache is None else cache
    if word in cache:
        return cache[word]
    letter = (x, y)[word[0]]
    if len(word) == 1:
        value = letter
    else:
        inner = bracket_word(word[1:], x, y, cache)
        value = letter @ inner - inner @ letter
    cache[word] = value
    return value


def _norms(values: np.ndarray, algebra: Optional[LieAlgebra]) -> np.ndarray:
    scale = algebra.scale if algebra is not None else 1.0
    return scale * np.linalg.norm(values, axis=(-2, -1))


def bch_truncated(x, y, config: BCHConfig = BCHConfig(), algebra: Optional[LieAlgebra] = None) -> np.ndarray:
    """
    Сумма членов ряда БКХ до степени N

    Допускаются пакеты матриц формы (..., d, d): скобки считаются поэлементно.

    Args:
        x, y: Элементы алгебры (матрицы d×d)
        config (BCHConfig): Порядок усечения и запас области сходимости
        algebra (LieAlgebra): Алгебра, чья норма проверяется (по умолчанию Фробениус)

    Returns:
        np.ndarray: z ≈ log(exp x · exp y)

    Raises:
        OutsideConvergenceDomain: ||x|| + ||y|| > ρ·log 2
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    size = float(np.max(_norms(x, algebra) + _norms(y, algebra)))
    if size > config.radius:
        raise OutsideConvergenceDomain(f"||x|| + ||y|| = {size:.6g} > {config.radius:.6g}")

    cache: Dict[Word, np.ndarray] = {}
    result = np.zeros_like(x)
    for word, coefficient in dynkin_terms(config.truncation_order):
        result += float(coefficient) * bracket_word(word, x, y, cache)
    return result


def bch_degree_terms(order: int) -> Dict[int, List[Tuple[str, Fraction]]]:
    """Члены ряда по степеням в читаемом виде, например {2: [('xy', 1/2)]}"""
    grouped: Dict[int, List[Tuple[str, Fraction]]] = {}
    for word, coefficient in dynkin_terms(order):
        grouped.setdefault(len(word), []).append(("".join("xy"[letter] for letter in word), coefficient))
    return grouped
