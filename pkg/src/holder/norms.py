"""
Нормы и полунормы пространств BC^{k,s}(Ω, Z)

    ||γ||_{(0,0)} = ||γ||∞
    p_{(0,s)}(γ)  = sup_{x ≠ y} ||γ(x) - γ(y)|| / ||x - y||^s
    p_{(k,s)}(γ)  = p_{(0,s)}(γ^{(k)})
    ||γ||_{(k,s)} = ||γ||∞ + p_{(k,s)}(γ)

Все оценки - нижние: супремум берётся по конечной выборке. Обе части любого
проверяемого неравенства читаются из одного HolderProfile, поэтому на общих
точках и парах сравниваются одни и те же приращения.
"""

import logging
from dataclasses import dataclass
from functools import total_ordering
from typing import Any, Dict, NamedTuple, Optional, Tuple

import numpy as np

from src.functions.jets import JetFunction
from src.functions.multilinear import opnorm_lower_batch, opnorm_upper_batch
from src.geometry.domain import Domain, SamplePlan, SampleSet, build_sample_set

logger = logging.getLogger(__name__)


@total_ordering
@dataclass(frozen=True)
class HolderIndex:
    """Индекс (k, s) пространства BC^{k,s}; упорядочен по k + s"""
    k: int
    s: float

    def __post_init__(self):
        if self.k < 0 or not 0.0 <= self.s <= 1.0:
            raise ValueError(f"Некорректный индекс Гёльдера ({self.k}, {self.s})")

    @property
    def weight(self) -> float:
        return self.k + self.s

    def __lt__(self, other: 'HolderIndex') -> bool:
        return self.weight < other.weight

    @property
    def is_sup(self) -> bool:
        """(0, 0): норма сводится к ||·||∞"""
        return self.k == 0 and self.s == 0.0

    def label(self) -> str:
        return f"({self.k},{self.s:g})"


class NormEstimate(NamedTuple):
    """Оценка ||γ||_{(k,s)} снизу по выборке"""
    index: HolderIndex
    sup_part: float
    seminorm_part: float
    total: float
    sample_meta: Dict[str, Any]

    def to_dict(self) -> Dict[str, Any]:
        return {"index": [self.index.k, self.index.s], "sup_part": self.sup_part,
                "seminorm_part": self.seminorm_part, "total": self.total, "plan": self.sample_meta}


def compose_estimate(index: HolderIndex, sup_part: float, seminorm_part: float,
                     sample_meta: Dict[str, Any]) -> NormEstimate:
    """Сборка NormEstimate: для (0,0) total = sup, иначе sup + полунорма"""
    total = sup_part if index.is_sup else sup_part + seminorm_part
    return NormEstimate(index=index, sup_part=sup_part, seminorm_part=seminorm_part,
                        total=total, sample_meta=sample_meta)


class HolderProfile:
    """
    Кэш производных одной функции на общей выборке

    Хранит тензоры γ^{(j)} в точках выборки, их операторные нормы и
    приращения γ^{(j)}(x) - γ^{(j)}(y) по парам. Параметр shift позволяет
    считать нормы производной γ^{(shift)} как отдельной функции Ω → L^shift.
    """

    def __init__(self, jet: JetFunction, samples: SampleSet):
        self.jet = jet
        self.samples = samples
        self._tensors: Dict[int, np.ndarray] = {}
        self._point_norms: Dict[tuple, np.ndarray] = {}
        self._increment_norms: Dict[int, np.ndarray] = {}
        self._seminorms: Dict[Tuple[int, float], float] = {}
        self._meta: Optional[Dict[str, Any]] = None

    @classmethod
    def build(cls, jet: JetFunction, domain: Domain, plan: SamplePlan) -> 'HolderProfile':
        return cls(jet, build_sample_set(domain, plan))

    @property
    def in_dim(self) -> int:
        return self.jet.in_dim

    def tensors(self, order: int) -> np.ndarray:
        """γ^{(j)} во всех точках выборки: (N,) + (n,)*j + (m,)"""
        if order not in self._tensors:
            self._tensors[order] = self.jet.derivatives_batch(self.samples.points, order)
        return self._tensors[order]

    def values(self) -> np.ndarray:
        return self.tensors(0)

    def point_norms(self, order: int, bound: str = "lower") -> np.ndarray:
        """||γ^{(j)}(x)||_op в точках выборки (нижняя или верхняя оценка)"""
        key = (order, bound)
        if key not in self._point_norms:
            estimator = opnorm_lower_batch if bound == "lower" else opnorm_upper_batch
            self._point_norms[key] = estimator(self.tensors(order), order, self.in_dim)
        return self._point_norms[key]

    def increment_norms(self, order: int) -> np.ndarray:
        """Нижние оценки ||γ^{(j)}(x) - γ^{(j)}(y)||_op по парам выборки"""
        if order not in self._increment_norms:
            pairs = self.samples.pairs
            tensors = self.tensors(order)
            increments = tensors[pairs.first_index] - tensors[pairs.second_index]
            self._increment_norms[order] = opnorm_lower_batch(increments, order, self.in_dim)
        return self._increment_norms[order]

    def quotients(self, order: int, s: float) -> np.ndarray:
        """Разностные отношения ||Δγ^{(j)}|| / ||x - y||^s по парам"""
        return self.increment_norms(order) / self.samples.pairs.distances ** s

    def quotient_maxima(self, order: int, exponents) -> np.ndarray:
        """
        max по парам ||Δγ^{(j)}|| / ||x - y||^s сразу для набора показателей s > 0

        Args:
            order (int): Порядок j
            exponents: Показатели s

        Returns:
            np.ndarray: Максимумы в порядке exponents
        """
        exponents = np.asarray(exponents, dtype=float).reshape(-1)
        missing = [s for s in exponents.tolist() if (order, s) not in self._seminorms]
        if missing:
            increments = self.increment_norms(order)
            powers = self.samples.pairs.distances[np.newaxis, :] ** np.asarray(missing)[:, np.newaxis]
            maxima = (increments[np.newaxis, :] / powers).max(axis=1)
            for s, value in zip(missing, maxima):
                self._seminorms[(order, s)] = float(value)
        return np.array([self._seminorms[(order, s)] for s in exponents.tolist()])

    def sup_norm(self, shift: int = 0) -> float:
        """max_x ||γ^{(shift)}(x)||"""
        norms = self.point_norms(shift)
        return float(norms.max()) if len(norms) else 0.0

    def seminorm(self, index: HolderIndex, shift: int = 0) -> float:
        """
        Оценка p_{(k,s)}(γ^{(shift)}) = p_{(0,s)}(γ^{(k+shift)})

        Args:
            index (HolderIndex): Индекс (k, s)
            shift (int): Номер производной, рассматриваемой как функция

        Returns:
            float: Максимум по выборке
        """
        order = index.k + shift
        self.jet.check_order(order)
        if index.s == 0.0:
            return self.sup_norm(order)
        return float(self.quotient_maxima(order, [index.s])[0])

    def sample_meta(self) -> Dict[str, Any]:
        if self._meta is None:
            self._meta = self.samples.describe()
        return self._meta

    def norm(self, index: HolderIndex, shift: int = 0) -> NormEstimate:
        """Оценка ||γ^{(shift)}||_{(k,s)}"""
        sup_part = self.sup_norm(shift)
        seminorm_part = sup_part if index.is_sup else self.seminorm(index, shift)
        return compose_estimate(index, sup_part, seminorm_part, self.sample_meta())

    def derivative_upper(self, x, order: int) -> float:
        """Верхняя оценка ||γ^{(j)}(x)||_op в произвольной точке"""
        tensor = self.jet.derivatives_batch(np.asarray(x, dtype=float).reshape(1, self.in_dim), order)
        return float(opnorm_upper_batch(tensor, order, self.in_dim)[0])


def sup_norm_estimate(jet: JetFunction, domain: Domain, plan: SamplePlan) -> float:
    """
    Оценка ||γ||∞ снизу: максимум ||γ(x)|| по точкам выборки

    Args:
        jet (JetFunction): Функция γ
        domain (Domain): Область Ω
        plan (SamplePlan): План выборки

    Returns:
        float: Максимум по выборке
    """
    return HolderProfile.build(jet, domain, plan).sup_norm()


def holder_seminorm_estimate(jet: JetFunction, index: HolderIndex, domain: Domain, plan: SamplePlan) -> float:
    """
    Оценка p_{(k,s)}(γ) снизу

    Для s > 0 - максимум по парам отношения ||Δγ^{(k)}||_op / ||x - y||^s,
    для s = 0 и k >= 1 - максимум ||γ^{(k)}(x)||_op по точкам,
    для (0, 0) - ||γ||∞.

    Raises:
        OrderExceeded: у γ нет производных порядка k
    """
    return HolderProfile.build(jet, domain, plan).seminorm(index)


def holder_norm_estimate(jet: JetFunction, index: HolderIndex, domain: Domain, plan: SamplePlan) -> NormEstimate:
    """Оценка ||γ||_{(k,s)} = ||γ||∞ + p_{(k,s)}(γ) (для (0,0) только ||γ||∞)"""
    return HolderProfile.build(jet, domain, plan).norm(index)


class ValueProfile:
    """
    Профиль функции, заданной только значениями в точках выборки
    (производные не строятся, доступны индексы вида (0, s))
    """

    def __init__(self, values: np.ndarray, samples: SampleSet):
        self.values = np.asarray(values, dtype=float).reshape(len(samples.points), -1)
        self.samples = samples

    def sup_norm(self) -> float:
        return float(np.linalg.norm(self.values, axis=1).max())

    def seminorm(self, s: float) -> float:
        if s == 0.0:
            return self.sup_norm()
        pairs = self.samples.pairs
        increments = np.linalg.norm(self.values[pairs.first_index] - self.values[pairs.second_index], axis=1)
        return float((increments / pairs.distances ** s).max())


def norm_estimate_from_values(values: np.ndarray, s: float, samples: SampleSet,
                              index: Optional[HolderIndex] = None) -> NormEstimate:
    """
    Оценка ||γ||_{(0,s)} для функции, известной значениями в точках samples

    Args:
        values (np.ndarray): Значения (N, m) в точках samples.points
        s (float): Показатель Гёльдера
        samples (SampleSet): Выборка
        index (HolderIndex): Индекс для записи в результат (по умолчанию (0, s))

    Returns:
        NormEstimate: Оценка снизу
    """
    profile = ValueProfile(values, samples)
    index = index or HolderIndex(0, s)
    return compose_estimate(index, profile.sup_norm(), profile.seminorm(s), samples.describe())
