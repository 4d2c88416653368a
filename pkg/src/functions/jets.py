"""
Функции γ: Ω → ℝᵐ вместе с точными производными Фреше до заявленного порядка

Производная порядка j в точке - симметричное j-линейное отображение
(SymMultilinearMap). Встроенные семейства: полиномы (сумма однородных
частей γ_j) и огибающие x ↦ f(<a, x>)·w с известными производными f⁽ʲ⁾.
"""

import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Callable, Dict, Optional, Sequence, Tuple

import numpy as np

from src.functions.multilinear import SymMultilinearMap, contract_diagonal
from src.utils.errors import DimensionMismatch, OrderExceeded

logger = logging.getLogger(__name__)


def _as_points(points, in_dim: int) -> np.ndarray:
    points = np.asarray(points, dtype=float)
    if points.ndim == 1:
        points = points.reshape(-1, in_dim) if in_dim == 1 else points.reshape(1, in_dim)
    if points.shape[1] != in_dim:
        raise DimensionMismatch(f"Точки размерности {points.shape[1]}, ожидалась {in_dim}")
    return points


def _contract_points(coeffs: np.ndarray, points: np.ndarray, times: int) -> np.ndarray:
    """Подстановка x_p в первые times слотов тензора для каждой точки: (N,) + хвост"""
    result = np.broadcast_to(coeffs, (len(points),) + coeffs.shape)
    for _ in range(times):
        result = np.einsum("pa,pa...->p...", points, result)
    return np.array(result)


def tensor_power(vector: np.ndarray, times: int, weight: np.ndarray) -> np.ndarray:
    """a ⊗ … ⊗ a ⊗ w (times копий a)"""
    result = np.asarray(weight, dtype=float)
    for _ in range(times):
        result = np.multiply.outer(vector, result)
    return result


class JetFunction(ABC):
    """
    Функция с точными производными до порядка max_order (None - без ограничения)
    """
    in_dim: int
    out_dim: int
    max_order: Optional[int]

    def check_order(self, order: int):
        if order < 0:
            raise OrderExceeded(f"Порядок производной должен быть >= 0, получено {order}")
        if self.max_order is not None and order > self.max_order:
            raise OrderExceeded(f"Запрошена производная порядка {order}, доступно до {self.max_order}")

    @abstractmethod
    def derivatives_batch(self, points, order: int) -> np.ndarray:
        """
        Производные порядка order во всех точках

        Args:
            points: Массив точек (N, n)
            order (int): Порядок j

        Returns:
            np.ndarray: Массив (N,) + (n,)*j + (m,)
        """

    def values_batch(self, points) -> np.ndarray:
        return self.derivatives_batch(points, 0)

    def __call__(self, x) -> np.ndarray:
        return self.values_batch(np.asarray(x, dtype=float).reshape(1, self.in_dim))[0]

    def derivative(self, x, order: int) -> SymMultilinearMap:
        """γ^{(j)}(x) как симметричное j-линейное отображение"""
        x = np.asarray(x, dtype=float).reshape(1, self.in_dim)
        return SymMultilinearMap(coeffs=self.derivatives_batch(x, order)[0], in_dim=self.in_dim)

    def describe(self) -> str:
        return type(self).__name__


@dataclass(frozen=True, eq=False)
class Polynomial:
    """
    Полином Σ_j γ_j(x, …, x) с однородными частями γ_j порядка j
    """
    parts: Tuple[SymMultilinearMap, ...]

    def __post_init__(self):
        if not self.parts:
            raise DimensionMismatch("Полином должен содержать хотя бы постоянную часть")
        for order, part in enumerate(self.parts):
            if part.order != order:
                raise DimensionMismatch(f"Часть {order} имеет порядок {part.order}")
            if part.in_dim != self.in_dim or part.out_dim != self.out_dim:
                raise DimensionMismatch("Однородные части имеют разные размерности")

    @classmethod
    def from_tensors(cls, tensors: Sequence, in_dim: int) -> 'Polynomial':
        """Построение из списка тензоров с симметризацией каждой части"""
        return cls(parts=tuple(SymMultilinearMap.from_tensor(t, in_dim) for t in tensors))

    @classmethod
    def constant(cls, value, in_dim: int) -> 'Polynomial':
        return cls(parts=(SymMultilinearMap(coeffs=np.atleast_1d(np.asarray(value, dtype=float)), in_dim=in_dim),))

    @property
    def in_dim(self) -> int:
        return self.parts[0].in_dim

    @property
    def out_dim(self) -> int:
        return self.parts[0].out_dim

    @property
    def degree(self) -> int:
        return len(self.parts) - 1

    def homogeneous_value(self, order: int, v) -> np.ndarray:
        """γ_j(v, …, v)"""
        if order > self.degree:
            return np.zeros(self.out_dim)
        return self.parts[order].diagonal(v)

    def evaluate(self, x) -> np.ndarray:
        return sum((part.diagonal(x) for part in self.parts), np.zeros(self.out_dim))


class PolynomialJet(JetFunction):
    """Точные производные полинома: γ^{(r)}(x) = Σ_{j>=r} j!/(j-r)! · γ_j(x, …, x, ·, …, ·)"""

    def __init__(self, polynomial: Polynomial):
        self.polynomial = polynomial
        self.in_dim = polynomial.in_dim
        self.out_dim = polynomial.out_dim
        self.max_order = None

    def derivatives_batch(self, points, order: int) -> np.ndarray:
        self.check_order(order)
        points = _as_points(points, self.in_dim)
        shape = (len(points),) + (self.in_dim,) * order + (self.out_dim,)
        result = np.zeros(shape)
        for degree in range(order, self.polynomial.degree + 1):
            factor = math.factorial(degree) / math.factorial(degree - order)
            result += factor * _contract_points(self.polynomial.parts[degree].coeffs, points, degree - order)
        return result

    def describe(self) -> str:
        return f"polynomial(deg={self.polynomial.degree}, n={self.in_dim}, m={self.out_dim})"


def poly_jet(polynomial: Polynomial) -> PolynomialJet:
    """
    Jet полинома с точными производными всех порядков

    Args:
        polynomial (Polynomial): Полином с однородными частями

    Returns:
        PolynomialJet: Производные порядка выше степени равны нулю
    """
    return PolynomialJet(polynomial)


@dataclass(frozen=True)
class ScalarFamily:
    """
    Скалярная гладкая функция f с производными f⁽ʲ⁾ до порядка max_order
    """
    name: str
    max_order: Optional[int]
    nth_derivative: Callable[[np.ndarray, int], np.ndarray]

    def __call__(self, u, order: int = 0) -> np.ndarray:
        if self.max_order is not None and order > self.max_order:
            raise OrderExceeded(f"{self.name}: производная порядка {order} недоступна (K = {self.max_order})")
        return self.nth_derivative(np.asarray(u, dtype=float), order)


def _sin_derivative(u: np.ndarray, order: int) -> np.ndarray:
    return np.sin(u + order * np.pi / 2.0)


def _cos_derivative(u: np.ndarray, order: int) -> np.ndarray:
    return np.cos(u + order * np.pi / 2.0)


def _exp_derivative(u: np.ndarray, order: int) -> np.ndarray:
    return np.exp(u)


SIN = ScalarFamily(name="sin", max_order=None, nth_derivative=_sin_derivative)
COS = ScalarFamily(name="cos", max_order=None, nth_derivative=_cos_derivative)
EXP = ScalarFamily(name="exp", max_order=None, nth_derivative=_exp_derivative)


def power_family(exponent: float, max_order: int = 0) -> ScalarFamily:
    """
    f(u) = u^exponent для u > 0

    При 0 < exponent < 1 и max_order = 0 получается функция, гёльдерова без производных.
    """
    def nth_derivative(u: np.ndarray, order: int) -> np.ndarray:
        falling = math.prod(exponent - i for i in range(order))
        return falling * np.power(u, exponent - order)

    return ScalarFamily(name=f"power({exponent:g})", max_order=max_order, nth_derivative=nth_derivative)


SCALAR_FAMILIES: Dict[str, ScalarFamily] = {"sin": SIN, "cos": COS, "exp": EXP}


class EnvelopeJet(JetFunction):
    """x ↦ f(<a, x>)·w; γ^{(j)}(x) = f⁽ʲ⁾(<a, x>) · a ⊗ … ⊗ a ⊗ w"""

    def __init__(self, family: ScalarFamily, covector, max_order: Optional[int] = None, weight=None):
        self.family = family
        self.covector = np.atleast_1d(np.asarray(covector, dtype=float))
        self.weight = np.ones(1) if weight is None else np.atleast_1d(np.asarray(weight, dtype=float))
        self.in_dim = len(self.covector)
        self.out_dim = len(self.weight)
        if max_order is None:
            self.max_order = family.max_order
        elif family.max_order is None:
            self.max_order = max_order
        else:
            self.max_order = min(max_order, family.max_order)

    def derivatives_batch(self, points, order: int) -> np.ndarray:
        self.check_order(order)
        points = _as_points(points, self.in_dim)
        scalars = self.family(points @ self.covector, order)
        direction = tensor_power(self.covector, order, self.weight)
        return np.multiply.outer(scalars, direction)

    def describe(self) -> str:
        return f"envelope({self.family.name}, a={self.covector.tolist()}, w={self.weight.tolist()})"


def envelope_jet(family: ScalarFamily, covector, max_order: Optional[int] = None, weight=None) -> EnvelopeJet:
    """
    Функция f(<a, x>)·w с производными по цепному правилу

    Args:
        family (ScalarFamily): Скалярное семейство f с производными
        covector: Ковектор a ∈ ℝⁿ
        max_order (int): Порядок K (None - порядок семейства)
        weight: Выходное направление w ∈ ℝᵐ (по умолчанию скаляр 1)

    Returns:
        EnvelopeJet: Jet с max_order = min(K, порядок семейства)
    """
    return EnvelopeJet(family, covector, max_order=max_order, weight=weight)


class ScaledJet(JetFunction):
    """c·γ"""

    def __init__(self, base: JetFunction, factor: float):
        self.base = base
        self.factor = float(factor)
        self.in_dim = base.in_dim
        self.out_dim = base.out_dim
        self.max_order = base.max_order

    def derivatives_batch(self, points, order: int) -> np.ndarray:
        return self.factor * self.base.derivatives_batch(points, order)

    def describe(self) -> str:
        return f"{self.factor:g}·{self.base.describe()}"


def jet_consistency_defect(jet: JetFunction, x, v, order: int, step: float) -> float:
    """
    Расхождение разностной производной порядка order с точной производной порядка order + 1

    ||(γ^{(j)}(x + hv) - γ^{(j)}(x))(v, …, v)/h - γ^{(j+1)}(x)(v, …, v)||

    Args:
        jet (JetFunction): Проверяемая функция (нужен max_order >= order + 1)
        x: Внутренняя точка
        v: Направление
        order (int): Порядок j
        step (float): Шаг h

    Returns:
        float: Норма расхождения, O(h) для согласованного jet
    """
    x = np.asarray(x, dtype=float)
    v = np.asarray(v, dtype=float)
    jet.check_order(order + 1)
    shifted = contract_diagonal(jet.derivative(x + step * v, order).coeffs, v, order)
    current = contract_diagonal(jet.derivative(x, order).coeffs, v, order)
    exact = jet.derivative(x, order + 1).diagonal(v)
    return float(np.linalg.norm((shifted - current) / step - exact))
