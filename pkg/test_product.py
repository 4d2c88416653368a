#!/usr/bin/env python3
"""
Тесты билинейных произведений и констант C_k
"""

import logging
import os
import sys

import numpy as np
import pytest

# Добавляем путь к модулям
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from src.functions.corpus import random_polynomial
from src.functions.jets import COS, SIN, envelope_jet, poly_jet
from src.geometry.domain import SamplePlan, build_sample_set, make_domain
from src.holder.constants import inclusion_constant_Dk
from src.holder.norms import HolderIndex, HolderProfile
from src.product.leibniz import (ProductProfiles, bilinear_op_norm, commutator_form, cross_product, inner_product,
                                 matrix_product, pointwise_product, polynomial_product, product_constant,
                                 product_constants, product_inequality_check, scalar_vector, seminorm_split_check,
                                 star_one, star_two)
from src.utils.errors import DimensionMismatch
from src.utils.logger import setup_main_logger

logger = logging.getLogger(__name__)

DISK = make_domain({"shape": "ball", "center": [0.0, 0.0], "radius": 0.5})
PLAN = SamplePlan.grid(9)


def test_product_constants():
    """C₀ = 2, C₁ = (2D₀ + 2)·C₀ = 80 на круге радиуса 1/2"""
    constants = product_constants(DISK, 3)
    assert constants.k_max == 3
    assert constants.product[0] == 2.0
    assert constants.product[1] == pytest.approx(80.0)
    for k in range(3):
        expected = (2.0 * inclusion_constant_Dk(k, DISK) + 2.0) * constants.product[k]
        assert constants.product[k + 1] == pytest.approx(expected)
    assert constants.rows()[0] == {"k": 0, "D_k": constants.inclusion[0], "C_k": 2.0}
    assert product_constant(2, DISK) == pytest.approx(constants.product[2])


def test_form_brackets():
    """Нормы стандартных произведений равны 1, коммутатора - не больше 2"""
    for form in (matrix_product(2), cross_product(), inner_product(3), scalar_vector(2)):
        bracket = bilinear_op_norm(form)
        assert bracket.upper == pytest.approx(1.0)
        assert bracket.lower == pytest.approx(1.0, rel=1e-6)
    bracket = commutator_form(2).op_norm_bracket()
    assert bracket.lower <= bracket.upper <= 2.0


def test_matrix_product_form():
    """Форма matmul совпадает с умножением матриц на построчных векторах"""
    rng = np.random.default_rng(21)
    a, b = rng.standard_normal((2, 2)), rng.standard_normal((2, 2))
    assert np.allclose(matrix_product(2)(a.ravel(), b.ravel()), (a @ b).ravel())
    assert np.allclose(commutator_form(2)(a.ravel(), b.ravel()), (a @ b - b @ a).ravel())


def test_leibniz_polynomials():
    """Производные по правилу Лейбница совпадают с производными раскрытого произведения"""
    rng = np.random.default_rng(22)
    first = random_polynomial(rng, 2, 3, 2)
    second = random_polynomial(rng, 2, 3, 2)
    form = cross_product()
    leibniz = pointwise_product(poly_jet(first), poly_jet(second), form)
    expanded = poly_jet(polynomial_product(first, second, form))
    points = rng.uniform(-0.3, 0.3, size=(5, 2))
    for order in range(5):
        assert np.allclose(leibniz.derivatives_batch(points, order), expanded.derivatives_batch(points, order))


def test_dimension_mismatch():
    """Несогласованные размерности отклоняются"""
    with pytest.raises(DimensionMismatch):
        pointwise_product(envelope_jet(SIN, [1.0]), envelope_jet(SIN, [1.0, 0.0]), inner_product(1))
    with pytest.raises(DimensionMismatch):
        pointwise_product(envelope_jet(SIN, [1.0], weight=[1.0, 2.0]), envelope_jet(SIN, [1.0]), cross_product())


def test_product_inequality():
    """||γ₁ • γ₂||_{(k,s)} <= C_k·||•||·||γ₁||_{(k,s)}·||γ₂||_{(k,s)}"""
    rng = np.random.default_rng(23)
    first = poly_jet(random_polynomial(rng, 2, 3, 3))
    second = envelope_jet(COS, [1.0, -0.5], weight=[0.5, 1.0, -1.0])
    for index in (HolderIndex(0, 0.0), HolderIndex(0, 0.5), HolderIndex(1, 1.0), HolderIndex(2, 0.3)):
        verdict = product_inequality_check(first, second, cross_product(), index, DISK, PLAN)
        assert verdict.passed
        assert verdict.margin >= 0.0


def test_shared_profiles():
    """Профили на общей выборке дают тот же вердикт"""
    first = envelope_jet(SIN, [1.0, 2.0], weight=[1.0, 0.0, 1.0])
    second = envelope_jet(COS, [0.5, 0.5], weight=[0.0, 1.0, 1.0])
    samples = build_sample_set(DISK, PLAN)
    profiles = ProductProfiles.build(first, second, inner_product(3), samples)
    index = HolderIndex(1, 0.5)
    direct = product_inequality_check(first, second, inner_product(3), index, DISK, PLAN, samples=samples)
    assert profiles.verdict(index, DISK) == direct


def test_prebuilt_factor_profiles():
    """Готовые профили сомножителей переиспользуются и дают тот же вердикт и разбиение"""
    first = envelope_jet(SIN, [1.0, 2.0], weight=[1.0, 0.0, 1.0])
    second = envelope_jet(COS, [0.5, 0.5], weight=[0.0, 1.0, 1.0])
    samples = build_sample_set(DISK, PLAN)
    left, right = HolderProfile(first, samples), HolderProfile(second, samples)
    shared = ProductProfiles.build(first, second, inner_product(3), samples, first_profile=left, second_profile=right)
    fresh = ProductProfiles.build(first, second, inner_product(3), samples)
    assert shared.first is left and shared.second is right
    for index in (HolderIndex(0, 0.5), HolderIndex(2, 1.0)):
        assert shared.verdict(index, DISK) == fresh.verdict(index, DISK)
    assert shared.split(0.5) == seminorm_split_check(first, second, inner_product(3), 0.5, samples)


def test_seminorm_split():
    """p_{(0,s)}(γ₁ • γ₂) <= ||•||·(||γ₁||∞ p(γ₂) + p(γ₁) ||γ₂||∞)"""
    rng = np.random.default_rng(24)
    first = poly_jet(random_polynomial(rng, 2, 4, 2))
    second = poly_jet(random_polynomial(rng, 2, 4, 2))
    samples = build_sample_set(DISK, PLAN)
    for s in (0.25, 0.5, 1.0):
        assert seminorm_split_check(first, second, matrix_product(2), s, samples).passed


def test_star_operators():
    """||z *₁ A|| <= ||•||·||z||·||A||, ||A *₂ z|| <= ||•||·||A||·||z||"""
    rng = np.random.default_rng(25)
    form = cross_product()
    for _ in range(10):
        z = rng.standard_normal(3)
        linear = rng.standard_normal((2, 3))
        left = star_one(form, z, linear)
        right = star_two(form, linear, z)
        bound = np.linalg.norm(z) * np.linalg.norm(linear, 2)
        assert np.linalg.norm(left, 2) <= bound * (1 + 1e-12)
        assert np.linalg.norm(right, 2) <= bound * (1 + 1e-12)
        assert np.allclose(left, -right)


TESTS = [
    ("Константы C_k", test_product_constants),
    ("Нормы произведений", test_form_brackets),
    ("Умножение матриц", test_matrix_product_form),
    ("Правило Лейбница", test_leibniz_polynomials),
    ("Несогласованные размерности", test_dimension_mismatch),
    ("Неравенство для произведения", test_product_inequality),
    ("Общие профили", test_shared_profiles),
    ("Готовые профили сомножителей", test_prebuilt_factor_profiles),
    ("Разложение полунормы", test_seminorm_split),
    ("Операторы *₁ и *₂", test_star_operators),
]


def main() -> int:
    """Главная функция тестирования"""
    setup_main_logger()
    logger.info("🧪 === ТЕСТИРОВАНИЕ ПРОИЗВЕДЕНИЙ ===")
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
