"""
Симметричные полилинейные отображения ℝⁿ × … × ℝⁿ → ℝᵐ и оценки их операторных норм

Тензор коэффициентов порядка j хранится массивом формы (n,)*j + (m,).
Для симметричных отображений между евклидовыми пространствами супремум
||T(v, …, v)|| по единичной сфере совпадает с операторной нормой, поэтому
нижняя оценка строится по диагонали.
"""

import itertools
import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from src.config import OPNORM_CONFIG
from src.utils.errors import DimensionMismatch

logger = logging.getLogger(__name__)


class OpNormBracket(NamedTuple):
    """Вилка lower <= ||T||_op <= upper"""
    lower: float
    upper: float


def symmetrize(tensor: np.ndarray, order: int) -> np.ndarray:
    """
    Симметризация по первым order осям (последняя ось - выход)

    Args:
        tensor (np.ndarray): Тензор формы (..., n^order, m) с ведущими пакетными осями
        order (int): Число входных слотов

    Returns:
        np.ndarray: Тензор, инвариантный относительно перестановок входных слотов
    """
    if order <= 1:
        return np.array(tensor, dtype=float)
    lead = tensor.ndim - order - 1
    slots = list(range(lead, lead + order))
    total = np.zeros_like(tensor, dtype=float)
    for perm in itertools.permutations(slots):
        axes = list(range(lead)) + list(perm) + [tensor.ndim - 1]
        total += np.transpose(tensor, axes)
    return total / math.factorial(order)


def contract_diagonal(tensor: np.ndarray, vector: np.ndarray, times: int) -> np.ndarray:
    """Подстановка одного вектора в первые times входных слотов"""
    result = tensor
    for _ in range(times):
        result = np.tensordot(vector, result, axes=([0], [0]))
    return result


@dataclass(frozen=True, eq=False)
class SymMultilinearMap:
    """
    Симметричное j-линейное отображение (ℝⁿ)^j → ℝᵐ

    Порядок 0 - вектор ℝᵐ (значение функции в точке).
    """
    coeffs: np.ndarray
    in_dim: int

    def __post_init__(self):
        coeffs = np.asarray(self.coeffs, dtype=float)
        if coeffs.ndim < 1 or any(size != self.in_dim for size in coeffs.shape[:-1]):
            raise DimensionMismatch(f"Форма коэффициентов {coeffs.shape} не согласована с n = {self.in_dim}")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def from_tensor(cls, tensor, in_dim: int) -> 'SymMultilinearMap':
        """Построение из произвольного тензора с симметризацией"""
        tensor = np.asarray(tensor, dtype=float)
        return cls(coeffs=symmetrize(tensor, tensor.ndim - 1), in_dim=in_dim)

    @classmethod
    def zero(cls, order: int, in_dim: int, out_dim: int) -> 'SymMultilinearMap':
        return cls(coeffs=np.zeros((in_dim,) * order + (out_dim,)), in_dim=in_dim)

    @property
    def order(self) -> int:
        return self.coeffs.ndim - 1

    @property
    def out_dim(self) -> int:
        return self.coeffs.shape[-1]

    def __call__(self, *vectors) -> np.ndarray:
        if len(vectors) != self.order:
            raise DimensionMismatch(f"Ожидалось {self.order} аргументов, получено {len(vectors)}")
        result = self.coeffs
        for vector in vectors:
            result = np.tensordot(np.asarray(vector, dtype=float), result, axes=([0], [0]))
        return result

    def diagonal(self, vector) -> np.ndarray:
        """T(v, …, v)"""
        return contract_diagonal(self.coeffs, np.asarray(vector, dtype=float), self.order)

    def is_symmetric(self, tol: float = 1e-12) -> bool:
        return bool(np.allclose(symmetrize(self.coeffs, self.order), self.coeffs, atol=tol, rtol=0.0))

    def __add__(self, other: 'SymMultilinearMap') -> 'SymMultilinearMap':
        return SymMultilinearMap(coeffs=self.coeffs + other.coeffs, in_dim=self.in_dim)

    def __sub__(self, other: 'SymMultilinearMap') -> 'SymMultilinearMap':
        return SymMultilinearMap(coeffs=self.coeffs - other.coeffs, in_dim=self.in_dim)

    def __mul__(self, scalar: float) -> 'SymMultilinearMap':
        return SymMultilinearMap(coeffs=self.coeffs * float(scalar), in_dim=self.in_dim)

    __rmul__ = __mul__

    def op_norm(self) -> OpNormBracket:
        return multilinear_op_norm(self)


@lru_cache(maxsize=16)
def unit_sphere_sample(dim: int, count: int, seed: int) -> np.ndarray:
    """
    Детерминированный набор единичных направлений (достаточно полусферы: ||T(-v,…)|| = ||T(v,…)||)

    Args:
        dim (int): Размерность n
        count (int): Число направлений
        seed (int): Зерно для n >= 4

    Returns:
        np.ndarray: Массив формы (S, n)
    """
    if dim == 1:
        directions = np.ones((1, 1))
    elif dim == 2:
        angles = np.pi * np.arange(count) / count
        directions = np.stack([np.cos(angles), np.sin(angles)], axis=1)
    elif dim == 3:
        # Спираль Фибоначчи на верхней полусфере
        index = np.arange(count) + 0.5
        z = index / count
        phi = np.pi * (1.0 + 5.0 ** 0.5) * index
        rho = np.sqrt(1.0 - z ** 2)
        directions = np.stack([rho * np.cos(phi), rho * np.sin(phi), z], axis=1)
    else:
        rng = np.random.default_rng(seed)
        directions = rng.standard_normal((count, dim))
    directions = np.concatenate([np.eye(dim), directions], axis=0)
    directions /= np.linalg.norm(directions, axis=1, keepdims=True)
    directions.setflags(write=False)
    return directions


def _diagonal_norms(tensors: np.ndarray, order: int, directions: np.ndarray) -> np.ndarray:
    """||T_p(v_s, …, v_s)|| для пакета тензоров (N, n^order, m) и направлений (S, n)"""
    count = tensors.shape[0]
    dim = directions.shape[1]
    out_dim = tensors.shape[-1]
    # Первый слот - одно умножение матриц (N·R, n) @ (n, S), дальше диагональ по s
    current = np.tensordot(tensors.reshape(count, dim, -1), directions, axes=([1], [1]))
    weights = directions.T[:, np.newaxis, :]
    for _ in range(order - 1):
        current = current.reshape(count, dim, -1, len(directions))
        current = (current * weights).sum(axis=1)
    return np.linalg.norm(current.reshape(count, out_dim, len(directions)), axis=1)


def opnorm_lower_batch(tensors: np.ndarray, order: int, in_dim: int) -> np.ndarray:
    """
    Нижние оценки операторных норм для пакета тензоров

    Args:
        tensors (np.ndarray): Массив формы (N,) + (n,)*order + (m,)
        order (int): Порядок j
        in_dim (int): Размерность n

    Returns:
        np.ndarray: Массив (N,) нижних оценок (точных для j <= 1 и для n = 1)
    """
    count = tensors.shape[0]
    if count == 0:
        return np.zeros(0)
    if order == 0 or in_dim == 1:
        return np.linalg.norm(tensors.reshape(count, -1), axis=1)
    if order == 1:
        return np.linalg.norm(tensors, ord=2, axis=(1, 2))

    directions = unit_sphere_sample(in_dim, OPNORM_CONFIG["sphere_samples"], OPNORM_CONFIG["seed"])
    chunk = OPNORM_CONFIG["chunk_size"]
    result = np.empty(count)
    for start in range(0, count, chunk):
        block = tensors[start:start + chunk]
        result[start:start + chunk] = _diagonal_norms(block, order, directions).max(axis=1)
    return result


def opnorm_upper_batch(tensors: np.ndarray, order: int, in_dim: int) -> np.ndarray:
    """
    Верхние оценки операторных норм: min(сумма модулей, норма Гильберта-Шмидта)

    Для j <= 1 и n = 1 оценка точная и совпадает с нижней.
    """
    count = tensors.shape[0]
    if count == 0:
        return np.zeros(0)
    if order <= 1 or in_dim == 1:
        return opnorm_lower_batch(tensors, order, in_dim)
    flat = tensors.reshape(count, -1)
    return np.minimum(np.abs(flat).sum(axis=1), np.linalg.norm(flat, axis=1))


def _refine_lower(tensor: SymMultilinearMap, start: np.ndarray, steps: int) -> float:
    """Итерации v <- T(v,…,v,·)ᵀ T(v,…,v); каждое значение - честная нижняя оценка"""
    best = float(np.linalg.norm(tensor.diagonal(start)))
    vector = start
    for _ in range(steps):
        image = tensor.diagonal(vector)
        partial = contract_diagonal(tensor.coeffs, vector, tensor.order - 1)  # (n, m)
        gradient = partial @ image
        norm = np.linalg.norm(gradient)
        if norm == 0.0:
            break
        vector = gradient / norm
        best = max(best, float(np.linalg.norm(tensor.diagonal(vector))))
    return best


def multilinear_op_norm(tensor: SymMultilinearMap) -> OpNormBracket:
    """
    Вилка для операторной нормы симметричного полилинейного отображения

    Args:
        tensor (SymMultilinearMap): Отображение T

    Returns:
        OpNormBracket: lower - максимум ||T(v,…,v)|| по выборке сферы с уточнением,
            upper - min(сумма модулей коэффициентов, норма Гильберта-Шмидта)
    """
    batch = tensor.coeffs[np.newaxis]
    upper = float(opnorm_upper_batch(batch, tensor.order, tensor.in_dim)[0])
    if tensor.order <= 1 or tensor.in_dim == 1:
        return OpNormBracket(lower=upper, upper=upper)

    directions = unit_sphere_sample(tensor.in_dim, OPNORM_CONFIG["sphere_samples"], OPNORM_CONFIG["seed"])
    norms = _diagonal_norms(batch, tensor.order, directions)[0]
    best_direction = directions[int(np.argmax(norms))]
    lower = max(float(norms.max()), _refine_lower(tensor, best_direction, OPNORM_CONFIG["refine_steps"]))
    logger.debug(f"Операторная норма порядка {tensor.order}: [{lower:.6g}, {upper:.6g}]")
    return OpNormBracket(lower=min(lower, upper), upper=upper)
