"""
Группы BC^{k,s}(Ω, G), порождённые экспонентами функций со значениями в алгебре Ли

Элемент группы хранится как слово ((±1, γ₁), …, (±1, γ_r)) и вычисляется
поточечно: x ↦ ∏ exp(±γ_i(x)). Вблизи единицы слово сворачивается в одну
функцию γ̃ поточечным рядом БКХ и сравнивается с матричным логарифмом.
"""

import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, List, NamedTuple, Optional, Tuple

import numpy as np

from src.functions.jets import JetFunction
from src.geometry.domain import Domain, SamplePlan, SampleSet, build_sample_set
from src.holder.norms import HolderIndex, HolderProfile, NormEstimate, norm_estimate_from_values
from src.liegroup.algebra import LieAlgebra
from src.liegroup.bch import BCHConfig, bch_truncated
from src.liegroup.matfuncs import matrix_exp_batch, matrix_log
from src.utils.errors import DimensionMismatch

logger = logging.getLogger(__name__)


class Letter(NamedTuple):
    """Буква слова: знак и функция со значениями в ℝ^{d²}"""
    sign: int
    jet: JetFunction


def matrix_dim_of(jet: JetFunction) -> int:
    """d по размерности значений d²"""
    dim = math.isqrt(jet.out_dim)
    if dim * dim != jet.out_dim:
        raise DimensionMismatch(f"Размерность значений {jet.out_dim} не является квадратом")
    return dim


@dataclass(frozen=True)
class GroupElementWord:
    """Конечное слово из экспонент; пустое слово - единица"""
    letters: Tuple[Letter, ...]
    matrix_dim: int

    def __len__(self) -> int:
        return len(self.letters)

    def letter_values(self, points: np.ndarray) -> List[np.ndarray]:
        """±γ_i во всех точках: список массивов (N, d, d)"""
        points = np.asarray(points, dtype=float)
        return [letter.sign * letter.jet.values_batch(points).reshape(len(points), self.matrix_dim, self.matrix_dim)
                for letter in self.letters]

    def describe(self) -> List[List[Any]]:
        return [[letter.sign, letter.jet.describe()] for letter in self.letters]


def identity_word(matrix_dim: int) -> GroupElementWord:
    return GroupElementWord(letters=(), matrix_dim=matrix_dim)


def exp_map(jet: JetFunction) -> GroupElementWord:
    """
    Exp_{(k,s)}: γ ↦ exp_G ∘ γ как слово длины 1

    Args:
        jet (JetFunction): Функция со значениями в ℝ^{d²}

    Returns:
        GroupElementWord: Слово ((+1, γ),)
    """
    return GroupElementWord(letters=(Letter(sign=1, jet=jet),), matrix_dim=matrix_dim_of(jet))


def _check_dims(first: GroupElementWord, second: GroupElementWord):
    if first.matrix_dim != second.matrix_dim:
        raise DimensionMismatch(f"Слова над матрицами {first.matrix_dim}×{first.matrix_dim} "
                                f"и {second.matrix_dim}×{second.matrix_dim}")


def group_mul(first: GroupElementWord, second: GroupElementWord) -> GroupElementWord:
    """Поточечное произведение: конкатенация слов"""
    _check_dims(first, second)
    return GroupElementWord(letters=first.letters + second.letters, matrix_dim=first.matrix_dim)


def group_inv(word: GroupElementWord) -> GroupElementWord:
    """Обратный элемент: обратный порядок букв и смена знаков"""
    letters = tuple(Letter(sign=-letter.sign, jet=letter.jet) for letter in reversed(word.letters))
    return GroupElementWord(letters=letters, matrix_dim=word.matrix_dim)


def word_power(word: GroupElementWord, exponent: int) -> GroupElementWord:
    """wⁿ для n >= 0; отрицательные степени через group_inv"""
    if exponent < 0:
        return word_power(group_inv(word), -exponent)
    return GroupElementWord(letters=word.letters * exponent, matrix_dim=word.matrix_dim)


def evaluate(word: GroupElementWord, x) -> np.ndarray:
    """
    Значение элемента группы в точке: ∏ exp(±γ_i(x)) в порядке букв

    Args:
        word (GroupElementWord): Слово
        x: Точка Ω

    Returns:
        np.ndarray: Матрица d×d
    """
    return evaluate_batch(word, np.asarray(x, dtype=float).reshape(1, -1))[0]


def evaluate_batch(word: GroupElementWord, points) -> np.ndarray:
    """Значения слова во всех точках: (N, d, d)"""
    points = np.asarray(points, dtype=float)
    result = np.broadcast_to(np.eye(word.matrix_dim), (len(points), word.matrix_dim, word.matrix_dim)).copy()
    for values in word.letter_values(points):
        result = result @ matrix_exp_batch(values)
    return result


class NormalFormRecord(NamedTuple):
    """Свёрнутая функция γ̃ в точках выборки и её сравнение с матричным логарифмом"""
    values: np.ndarray
    log_values: np.ndarray
    defect: float
    estimate: NormEstimate


def collapse_word(word: GroupElementWord, points: np.ndarray, config: BCHConfig,
                  algebra: Optional[LieAlgebra] = None) -> np.ndarray:
    """
    Поточечная свёртка слова рядом БКХ: z ← bch(z, ±γ_i(x))

    Raises:
        OutsideConvergenceDomain: очередная пара аргументов вне области сходимости
    """
    dim = word.matrix_dim
    collapsed = np.zeros((len(points), dim, dim))
    for index, values in enumerate(word.letter_values(points)):
        collapsed = values if index == 0 else bch_truncated(collapsed, values, config, algebra)
    return collapsed


def local_normal_form(word: GroupElementWord, index: HolderIndex, config: BCHConfig,
                      domain: Domain, plan: SamplePlan, algebra: Optional[LieAlgebra] = None,
                      samples: Optional[SampleSet] = None) -> NormalFormRecord:
    """
    Сворачивание слова вблизи единицы в одну функцию γ̃ со значениями в алгебре

    Args:
        word (GroupElementWord): Элемент группы
        index (HolderIndex): Используется показатель s; оценивается норма (0, s)
        config (BCHConfig): Порядок усечения и область сходимости ряда
        domain (Domain): Область Ω
        plan (SamplePlan): План выборки
        algebra (LieAlgebra): Норма для области сходимости (по умолчанию Фробениус)
        samples (SampleSet): Готовая выборка

    Returns:
        NormalFormRecord: γ̃ в точках, log(evaluate(w, x)), max ||γ̃ - log||_F и оценка ||γ̃||_{(0,s)}

    Raises:
        OutsideConvergenceDomain: аргументы ряда БКХ вне области
        LogDomain: произведение вне области главного логарифма
    """
    samples = samples or build_sample_set(domain, plan)
    points = samples.points
    collapsed = collapse_word(word, points, config, algebra)
    products = evaluate_batch(word, points)
    logs = np.array([matrix_log(product) for product in products])
    defect = float(np.max(np.linalg.norm(collapsed - logs, axis=(1, 2)))) if len(points) else 0.0

    estimate = norm_estimate_from_values(collapsed.reshape(len(points), -1), index.s, samples,
                                         index=HolderIndex(0, index.s))
    logger.debug(f"Нормальная форма слова длины {len(word)}: расхождение с log {defect:.3g}")
    return NormalFormRecord(values=collapsed, log_values=logs, defect=defect, estimate=estimate)


def chain_steps(s: float, steps: int) -> List[float]:
    """t_n = s + (1 - s)/n, n = 1…N"""
    return [s + (1.0 - s) / n for n in range(1, steps + 1)]


def chain_norms(jet: JetFunction, k: int, s: float, steps: int, domain: Domain, plan: SamplePlan,
                samples: Optional[SampleSet] = None,
                profile: Optional[HolderProfile] = None) -> List[NormEstimate]:
    """
    Оценки ||γ||_{(k,t_n)} вдоль убывающей последовательности t_n → s

    Args:
        jet (JetFunction): Функция γ с max_order >= k
        k (int): Порядок
        s (float): Предел s ∈ [0, 1)
        steps (int): Число шагов N >= 2
        domain (Domain): Область Ω
        plan (SamplePlan): План выборки
        samples (SampleSet): Готовая выборка
        profile (HolderProfile): Готовый профиль γ на этой выборке

    Returns:
        List[NormEstimate]: Оценки на общей выборке, невозрастающие по n
    """
    if not 0.0 <= s < 1.0:
        raise ValueError(f"s должно лежать в [0, 1), получено {s}")
    if steps < 2:
        raise ValueError(f"Нужно не меньше двух шагов, получено {steps}")
    profile = profile or HolderProfile(jet, samples or build_sample_set(domain, plan))
    exponents = chain_steps(s, steps)
    jet.check_order(k)
    profile.quotient_maxima(k, [t for t in exponents if t > 0.0])
    return [profile.norm(HolderIndex(k, t)) for t in exponents]


def normal_form_chain(word: GroupElementWord, s: float, steps: int, config: BCHConfig,
                      domain: Domain, plan: SamplePlan, samples: Optional[SampleSet] = None) -> List[NormEstimate]:
    """
    Оценки ||γ̃||_{(0,t_n)} свёрнутой функции элемента группы вдоль цепочки t_n

    Значения γ̃ не зависят от шага цепочки (отображения связи - включения).
    """
    samples = samples or build_sample_set(domain, plan)
    collapsed = collapse_word(word, samples.points, config).reshape(len(samples.points), -1)
    return [norm_estimate_from_values(collapsed, t, samples) for t in chain_steps(s, steps)]
