"""
Интерполяция Лагранжа по узлам F ⊂ (0, 1) и извлечение однородных частей полинома

Λ_μ(t) = ∏_{ν ≠ μ} (t - ν)/(μ - ν) = Σ_j λ_{μ,j} t^j. Для полинома γ степени <= k
и луча t ↦ γ(t·v) коэффициент при t^j равен γ_j(v, …, v), поэтому
γ_j(v) = Σ_μ λ_{μ,j} γ(μv).
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence, Tuple

import numpy as np
from numpy.polynomial import polynomial as P

from src.config import INTERPOLATION_CONFIG
from src.utils.errors import DuplicateNodes, NodeOutOfRange, SizeMismatch

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class InterpolationNodes:
    """Узлы F (k + 1 различных чисел из (0, 1)) и матрица λ_{μ,j}"""
    nodes: np.ndarray
    lagrange_coeffs: np.ndarray

    @property
    def degree(self) -> int:
        return len(self.nodes) - 1

    def basis_values(self, t) -> np.ndarray:
        """Λ_μ(t) для всех μ: массив (|F|,) + shape(t)"""
        return np.stack([P.polyval(t, row) for row in self.lagrange_coeffs])


def _validate_nodes(nodes: Sequence[float]) -> Tuple[float, ...]:
    values = tuple(float(node) for node in nodes)
    if not values:
        raise SizeMismatch("Набор узлов пуст")
    for node in values:
        if not 0.0 < node < 1.0:
            raise NodeOutOfRange(f"Узел {node} вне интервала (0, 1)")
    if len(set(values)) != len(values):
        raise DuplicateNodes(f"Узлы интерполяции повторяются: {values}")
    return values


def default_nodes(k: int) -> np.ndarray:
    """F = {i/(k+2) : i = 1…k+1}"""
    return np.arange(1, k + 2) / (k + 2)


@lru_cache(maxsize=64)
def _coefficients(nodes: Tuple[float, ...]) -> np.ndarray:
    rows = []
    for index, mu in enumerate(nodes):
        others = nodes[:index] + nodes[index + 1:]
        numerator = P.polyfromroots(others) if others else np.ones(1)
        denominator = np.prod([mu - nu for nu in others]) if others else 1.0
        rows.append(numerator / denominator)
    matrix = np.array(rows, dtype=float)
    matrix.setflags(write=False)
    return matrix


def lagrange_coefficients(nodes: Sequence[float]) -> np.ndarray:
    """
    Матрица λ_{μ,j}: строка μ - коэффициенты Λ_μ по степеням t^0 … t^k

    Args:
        nodes: Различные узлы из (0, 1)

    Returns:
        np.ndarray: Матрица (k+1) × (k+1)

    Raises:
        DuplicateNodes: узлы совпадают
        NodeOutOfRange: узел вне (0, 1)
    """
    values = _validate_nodes(nodes)
    if len(values) - 1 > INTERPOLATION_CONFIG["max_degree"]:
        logger.warning(f"Раскрытие произведений для степени {len(values) - 1} может быть неустойчивым")
    return np.array(_coefficients(values))


def lagrange_coefficients_vandermonde(nodes: Sequence[float]) -> np.ndarray:
    """Та же матрица через обращение матрицы Вандермонда V[μ, j] = μ^j (λ = V^{-T})"""
    values = np.asarray(_validate_nodes(nodes))
    vandermonde = np.vander(values, increasing=True)
    return np.linalg.inv(vandermonde).T


def make_nodes(nodes: Sequence[float]) -> InterpolationNodes:
    values = np.asarray(_validate_nodes(nodes))
    return InterpolationNodes(nodes=values, lagrange_coeffs=lagrange_coefficients(values))


def interpolation_constant(nodes: Sequence[float], order: int) -> float:
    """
    Σ_μ |λ_{μ,j}|: ||γ_j||∞ <= (Σ_μ |λ_{μ,j}|)·||γ||∞ на единичном шаре

    Args:
        nodes: Узлы F
        order (int): Номер однородной части j <= k

    Returns:
        float: Константа извлечения
    """
    matrix = lagrange_coefficients(nodes)
    if not 0 <= order < matrix.shape[1]:
        raise SizeMismatch(f"j = {order} вне диапазона 0…{matrix.shape[1] - 1}")
    return float(np.abs(matrix[:, order]).sum())


def extract_homogeneous(values, nodes: Sequence[float]) -> np.ndarray:
    """
    Коэффициенты c_j = Σ_μ g(μ) λ_{μ,j} по значениям g на узлах

    Args:
        values: Значения g(μ), массив (|F|,) или (|F|, m)
        nodes: Узлы F

    Returns:
        np.ndarray: Коэффициенты (k+1,) или (k+1, m)

    Raises:
        SizeMismatch: число значений не совпадает с числом узлов
    """
    values = np.asarray(values, dtype=float)
    matrix = lagrange_coefficients(nodes)
    if values.shape[0] != matrix.shape[0]:
        raise SizeMismatch(f"Получено {values.shape[0]} значений для {matrix.shape[0]} узлов")
    return np.tensordot(matrix, values, axes=([0], [0]))
