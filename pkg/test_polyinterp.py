#!/usr/bin/env python3
"""
Тесты интерполяции Лагранжа и формулы Тейлора
"""

import logging
import os
import sys

import numpy as np
import pytest

# Добавляем путь к модулям
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from src.functions.corpus import random_polynomial
from src.functions.jets import EXP, SIN, Polynomial, envelope_jet, poly_jet
from src.geometry.domain import make_domain
from src.interp.lagrange import (default_nodes, extract_homogeneous, interpolation_constant, lagrange_coefficients,
                                 lagrange_coefficients_vandermonde, make_nodes)
from src.interp.taylor import (RemainderForm, frechet_remainder_estimate, gauss_legendre, taylor_expansion,
                               taylor_polynomial, taylor_remainder)
from src.utils.errors import DuplicateNodes, NodeOutOfRange, SegmentLeavesDomain, SizeMismatch
from src.utils.logger import setup_main_logger

logger = logging.getLogger(__name__)

DISK = make_domain({"shape": "ball", "center": [0.0, 0.0], "radius": 0.5})


def test_lagrange_two_nodes():
    """F = {1/3, 2/3}: Λ = 2 - 3t и -1 + 3t"""
    matrix = lagrange_coefficients([1 / 3, 2 / 3])
    assert np.allclose(matrix, [[2.0, -3.0], [-1.0, 3.0]])
    assert interpolation_constant([1 / 3, 2 / 3], 0) == pytest.approx(3.0)
    assert interpolation_constant([1 / 3, 2 / 3], 1) == pytest.approx(6.0)


def test_lagrange_vandermonde():
    """Раскрытие произведений совпадает с обращением матрицы Вандермонда"""
    for k in range(5):
        nodes = default_nodes(k)
        assert np.allclose(lagrange_coefficients(nodes), lagrange_coefficients_vandermonde(nodes), atol=1e-9)


def test_lagrange_delta():
    """Λ_μ(ν) = δ_{μν}, Σ_μ Λ_μ = 1"""
    nodes = make_nodes(default_nodes(3))
    assert nodes.degree == 3
    assert np.allclose(nodes.basis_values(nodes.nodes), np.eye(4))
    assert np.allclose(nodes.basis_values(np.linspace(0, 1, 7)).sum(axis=0), 1.0)


def test_node_errors():
    """Повторы, узлы вне (0, 1), несогласованные размеры"""
    with pytest.raises(DuplicateNodes):
        lagrange_coefficients([0.5, 0.5])
    with pytest.raises(NodeOutOfRange):
        lagrange_coefficients([0.0, 0.5])
    with pytest.raises(NodeOutOfRange):
        lagrange_coefficients([0.5, 1.0])
    with pytest.raises(SizeMismatch):
        lagrange_coefficients([])
    with pytest.raises(SizeMismatch):
        extract_homogeneous([1.0, 2.0, 3.0], [0.25, 0.75])
    with pytest.raises(SizeMismatch):
        interpolation_constant([0.25, 0.75], 2)


def test_extract_homogeneous():
    """Коэффициенты скалярного полинома восстанавливаются по значениям в узлах"""
    coefficients = np.array([1.0, -2.0, 0.5, 3.0])
    nodes = default_nodes(3)
    values = np.polynomial.polynomial.polyval(nodes, coefficients)
    assert np.allclose(extract_homogeneous(values, nodes), coefficients)


def test_extract_linear():
    """γ(t) = 2 + 5t по значениям (11/3, 16/3) в F = {1/3, 2/3}"""
    assert np.allclose(extract_homogeneous([11 / 3, 16 / 3], [1 / 3, 2 / 3]), [2.0, 5.0])


def test_square_remainders():
    """γ(t) = t² в нуле: остаток формы a при k = 1 равен h², остаток Фреше |v| = ∫₀¹ 2t|v| dt"""
    square = poly_jet(Polynomial.from_tensors([np.zeros(1), np.zeros((1, 1)), np.ones((1, 1, 1))], 1))
    h = 0.2
    assert taylor_remainder(square, [0.0], [h], 1, RemainderForm.A)[0] == pytest.approx(h ** 2)
    estimate = frechet_remainder_estimate(square, [0.0], [h])
    assert estimate.lhs == pytest.approx(h)
    assert estimate.rhs == pytest.approx(h)


def test_extract_along_ray():
    """γ_j(v) = Σ_μ λ_{μ,j} γ(μv) для векторного полинома"""
    rng = np.random.default_rng(11)
    polynomial = random_polynomial(rng, 2, 3, 3)
    v = np.array([0.4, -0.7])
    nodes = default_nodes(3)
    values = np.stack([polynomial.evaluate(mu * v) for mu in nodes])
    parts = extract_homogeneous(values, nodes)
    for order in range(4):
        assert np.allclose(parts[order], polynomial.homogeneous_value(order, v))


def test_quadrature():
    """Гаусс-Лежандр на [0, 1] точен для полиномов степени 2n - 1"""
    t, w = gauss_legendre(4)
    assert w.sum() == pytest.approx(1.0)
    assert w @ t ** 7 == pytest.approx(1 / 8)


def test_taylor_forms():
    """Обе формы остатка восстанавливают γ(x₀ + v)"""
    jet = envelope_jet(SIN, [1.0, -2.0], weight=[1.0, 0.5])
    x0, v = np.array([0.1, 0.0]), np.array([0.15, 0.2])
    exact = jet(x0 + v)
    for k in (1, 2, 4):
        for form in RemainderForm:
            assert np.allclose(taylor_expansion(jet, x0, v, k, form), exact, atol=1e-12)


def test_taylor_polynomial_exact():
    """Для полинома степени <= k полином Тейлора совпадает с функцией, остаток b равен нулю"""
    rng = np.random.default_rng(12)
    jet = poly_jet(random_polynomial(rng, 2, 2, 3))
    x0, v = np.array([0.1, -0.1]), np.array([0.2, 0.25])
    assert np.allclose(taylor_polynomial(jet, x0, v, 3), jet(x0 + v), atol=1e-12)
    assert np.allclose(taylor_remainder(jet, x0, v, 3, RemainderForm.B), 0.0, atol=1e-12)


def test_segment_leaves_domain():
    """Отрезок, выходящий из Ω, отклоняется"""
    jet = envelope_jet(EXP, [1.0, 1.0])
    with pytest.raises(SegmentLeavesDomain):
        taylor_remainder(jet, [0.3, 0.0], [0.4, 0.0], 1, domain=DISK)
    with pytest.raises(SegmentLeavesDomain):
        frechet_remainder_estimate(jet, [0.0, 0.4], [0.0, 0.2], domain=DISK)


def test_frechet_remainder():
    """||γ(x+v) - γ(x) - γ'(x)v|| / ||v|| <= ∫₀¹ ||γ'(x+tv) - γ'(x)|| dt"""
    jet = envelope_jet(SIN, [2.0, 1.0], weight=[1.0, -1.0])
    rng = np.random.default_rng(13)
    for _ in range(20):
        x = rng.uniform(-0.15, 0.15, size=2)
        v = rng.uniform(-0.15, 0.15, size=2)
        estimate = frechet_remainder_estimate(jet, x, v, domain=DISK)
        assert estimate.lhs <= estimate.rhs * (1 + 1e-9) + 1e-15
    assert frechet_remainder_estimate(jet, [0.0, 0.0], [0.0, 0.0]).rhs == 0.0


TESTS = [
    ("Два узла Лагранжа", test_lagrange_two_nodes),
    ("Матрица Вандермонда", test_lagrange_vandermonde),
    ("Базис Лагранжа", test_lagrange_delta),
    ("Ошибки узлов", test_node_errors),
    ("Восстановление коэффициентов", test_extract_homogeneous),
    ("Линейный полином по двум узлам", test_extract_linear),
    ("Остатки для t²", test_square_remainders),
    ("Однородные части вдоль луча", test_extract_along_ray),
    ("Квадратура", test_quadrature),
    ("Формы остатка Тейлора", test_taylor_forms),
    ("Точность для полиномов", test_taylor_polynomial_exact),
    ("Отрезок вне области", test_segment_leaves_domain),
    ("Остаток Фреше", test_frechet_remainder),
]


def main() -> int:
    """Главная функция тестирования"""
    setup_main_logger()
    logger.info("🧪 === ТЕСТИРОВАНИЕ ИНТЕРПОЛЯЦИИ И ФОРМУЛЫ ТЕЙЛОРА ===")
    passed = 0
    for name, test in TESTS:
        try:
            test()
            logger.info(f"✅ {name}")
            passed += 1
        except Exception as e:
            logger.error(f"❌ {name}: {type(e).__name__}: {e}")

    logger.info(f"📈 Пройдено тестов: {passed}/{len(TESTS)}")
    return 0 if passed == len(TESTS) else 1


if __name__ == "__main__":
    sys.exit(main())
