"""
Формула Тейлора с интегральным остатком и оценка остатка производной Фреше

    γ(x₀ + v) = Σ_{j<k} γ^{(j)}(x₀)(v^j)/j! + ∫₀¹ (1-t)^{k-1}/(k-1)! · γ^{(k)}(x₀ + tv)(v^k) dt      (форма a)
    γ(x₀ + v) = Σ_{j<=k} γ^{(j)}(x₀)(v^j)/j!
                + ∫₀¹ (1-t)^{k-1}/(k-1)! · (γ^{(k)}(x₀ + tv) - γ^{(k)}(x₀))(v^k) dt          (форма b)

Интегралы считаются квадратурой Гаусса-Лежандра на [0, 1], вес (1-t)^{k-1}
остаётся внутри подынтегрального выражения.
"""

import logging
import math
from enum import Enum
from functools import lru_cache
from typing import NamedTuple, Optional, Tuple

import numpy as np

from src.config import QUADRATURE_CONFIG
from src.functions.jets import JetFunction
from src.functions.multilinear import contract_diagonal, opnorm_upper_batch
from src.geometry.domain import Domain
from src.utils.errors import OrderExceeded, SegmentLeavesDomain

logger = logging.getLogger(__name__)


class RemainderForm(Enum):
    """Форма интегрального остатка"""
    A = "a"
    B = "b"


class FrechetRemainder(NamedTuple):
    """lhs = ||γ(x+v) - γ(x) - γ'(x)v|| / ||v||, rhs = ∫₀¹ ||γ'(x+tv) - γ'(x)||_op dt"""
    lhs: float
    rhs: float


@lru_cache(maxsize=8)
def gauss_legendre(nodes: int = QUADRATURE_CONFIG["nodes"]) -> Tuple[np.ndarray, np.ndarray]:
    """
    Узлы и веса Гаусса-Лежандра, перенесённые на [0, 1]

    Args:
        nodes (int): Число узлов

    Returns:
        Tuple[np.ndarray, np.ndarray]: (t, w), Σ w = 1
    """
    points, weights = np.polynomial.legendre.leggauss(nodes)
    t = (points + 1.0) / 2.0
    w = weights / 2.0
    t.setflags(write=False)
    w.setflags(write=False)
    return t, w


def _diagonal_values(jet: JetFunction, points: np.ndarray, v: np.ndarray, order: int) -> np.ndarray:
    """γ^{(j)}(p)(v, …, v) для всех точек p: (N, m)"""
    result = jet.derivatives_batch(points, order)
    for _ in range(order):
        result = np.tensordot(result, v, axes=([1], [0]))
    return result


def _segment(domain: Optional[Domain], x0: np.ndarray, v: np.ndarray):
    if domain is not None and not domain.contains_segment(x0, v):
        raise SegmentLeavesDomain(f"Отрезок [{x0.tolist()}, {(x0 + v).tolist()}] выходит из области")


def taylor_polynomial(jet: JetFunction, x0, v, k: int) -> np.ndarray:
    """
    Σ_{j<=k} γ^{(j)}(x₀)(v, …, v)/j!

    Args:
        jet (JetFunction): Функция γ с max_order >= k
        x0: Точка разложения
        v: Приращение
        k (int): Степень

    Returns:
        np.ndarray: Значение в ℝᵐ

    Raises:
        OrderExceeded: у γ нет производных порядка k
    """
    x0 = np.asarray(x0, dtype=float)
    v = np.asarray(v, dtype=float)
    jet.check_order(k)
    total = np.zeros(jet.out_dim)
    for order in range(k + 1):
        total += contract_diagonal(jet.derivative(x0, order).coeffs, v, order) / math.factorial(order)
    return total


def taylor_remainder(jet: JetFunction, x0, v, k: int, form: RemainderForm = RemainderForm.A,
                     quadrature_nodes: int = QUADRATURE_CONFIG["nodes"],
                     domain: Optional[Domain] = None) -> np.ndarray:
    """
    Интегральный остаток формулы Тейлора

    Для формы a остаток дополняет taylor_polynomial(k - 1), для формы b -
    taylor_polynomial(k).

    Args:
        jet (JetFunction): Функция γ с max_order >= k
        x0: Точка разложения
        v: Приращение
        k (int): Порядок, k >= 1
        form (RemainderForm): Форма остатка
        quadrature_nodes (int): Число узлов квадратуры
        domain (Domain): Если задана, проверяется [x₀, x₀ + v] ⊂ Ω

    Returns:
        np.ndarray: Значение остатка в ℝᵐ

    Raises:
        SegmentLeavesDomain: отрезок выходит из области
    """
    if k < 1:
        raise OrderExceeded(f"Интегральный остаток определён для k >= 1, получено {k}")
    x0 = np.asarray(x0, dtype=float)
    v = np.asarray(v, dtype=float)
    _segment(domain, x0, v)
    jet.check_order(k)

    t, w = gauss_legendre(quadrature_nodes)
    points = x0[np.newaxis, :] + t[:, np.newaxis] * v[np.newaxis, :]
    integrand = _diagonal_values(jet, points, v, k)
    if form is RemainderForm.B:
        integrand = integrand - _diagonal_values(jet, x0[np.newaxis, :], v, k)
    kernel = (1.0 - t) ** (k - 1) / math.factorial(k - 1)
    return (w * kernel) @ integrand


def taylor_expansion(jet: JetFunction, x0, v, k: int, form: RemainderForm = RemainderForm.A,
                     quadrature_nodes: int = QUADRATURE_CONFIG["nodes"]) -> np.ndarray:
    """Полином Тейлора нужной степени плюс остаток: должно совпадать с γ(x₀ + v)"""
    degree = k - 1 if form is RemainderForm.A else k
    return taylor_polynomial(jet, x0, v, degree) + taylor_remainder(jet, x0, v, k, form, quadrature_nodes)


def frechet_remainder_estimate(jet: JetFunction, x, v, domain: Optional[Domain] = None,
                               quadrature_nodes: int = QUADRATURE_CONFIG["nodes"]) -> FrechetRemainder:
    """
    Оценка остатка дифференцируемости: lhs <= rhs

    Args:
        jet (JetFunction): Функция γ с max_order >= 1
        x: Точка
        v: Ненулевое приращение
        domain (Domain): Если задана, проверяется [x, x + v] ⊂ Ω
        quadrature_nodes (int): Число узлов квадратуры

    Returns:
        FrechetRemainder: lhs и квадратура верхних оценок ||γ'(x+tv) - γ'(x)||_op
    """
    x = np.asarray(x, dtype=float)
    v = np.asarray(v, dtype=float)
    _segment(domain, x, v)
    jet.check_order(1)
    length = float(np.linalg.norm(v))
    if length == 0.0:
        return FrechetRemainder(lhs=0.0, rhs=0.0)

    linear = jet.derivative(x, 1)(v)
    lhs = float(np.linalg.norm(jet(x + v) - jet(x) - linear)) / length

    t, w = gauss_legendre(quadrature_nodes)
    points = x[np.newaxis, :] + t[:, np.newaxis] * v[np.newaxis, :]
    differences = jet.derivatives_batch(points, 1) - jet.derivatives_batch(x[np.newaxis, :], 1)
    rhs = float(w @ opnorm_upper_batch(differences, 1, jet.in_dim))
    return FrechetRemainder(lhs=lhs, rhs=rhs)
