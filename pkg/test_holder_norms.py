#!/usr/bin/env python3
"""
Тесты оценок норм Гёльдера и констант вложений
"""

import logging
import os
import sys

import numpy as np
import pytest

# Добавляем путь к модулям
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from src.functions.jets import SIN, Polynomial, envelope_jet, poly_jet, power_family
from src.geometry.domain import SamplePlan, build_sample_set, make_domain
from src.holder.constants import (inclusion_chain_constant, inclusion_constant_Dk, lagrange_table,
                                  lemma24_constants, lemma24b_constant)
from src.holder.norms import (HolderIndex, HolderProfile, holder_norm_estimate, holder_seminorm_estimate,
                              norm_estimate_from_values, sup_norm_estimate)
from src.utils.errors import BoundaryPoint, OrderExceeded
from src.utils.logger import setup_main_logger

logger = logging.getLogger(__name__)

LINE = make_domain({"shape": "ball", "center": [0.0], "radius": 0.5})
UNIT_INTERVAL = make_domain({"shape": "box", "lower": [0.0], "upper": [1.0]})
DISK = make_domain({"shape": "ball", "center": [0.0, 0.0], "radius": 0.5})
GRID = SamplePlan.grid(41)


def test_holder_index():
    """Индексы упорядочены по k + s, некорректные отклоняются"""
    assert HolderIndex(0, 1.0) < HolderIndex(1, 0.5)
    assert not HolderIndex(1, 0.0) < HolderIndex(0, 1.0)
    assert HolderIndex(0, 0.0).is_sup
    assert HolderIndex(2, 0.3).label() == "(2,0.3)"
    with pytest.raises(ValueError):
        HolderIndex(0, 1.5)
    with pytest.raises(ValueError):
        HolderIndex(-1, 0.5)


def test_constant_function():
    """Постоянная функция: sup = |c|, полунорма 0"""
    jet = poly_jet(Polynomial.constant([2.0], 1))
    assert sup_norm_estimate(jet, LINE, GRID) == pytest.approx(2.0)
    assert holder_seminorm_estimate(jet, HolderIndex(0, 0.5), LINE, GRID) == pytest.approx(0.0)
    assert holder_norm_estimate(jet, HolderIndex(0, 0.5), LINE, GRID).total == pytest.approx(2.0)


def test_linear_function():
    """γ(x) = a·x: p_{(0,1)} = p_{(1,0)} = |a|, p_{(1,s)} = 0"""
    jet = poly_jet(Polynomial.from_tensors([np.zeros(1), np.array([[-3.0]])], 1))
    profile = HolderProfile.build(jet, LINE, GRID)
    assert profile.seminorm(HolderIndex(0, 1.0)) == pytest.approx(3.0)
    assert profile.seminorm(HolderIndex(1, 0.0)) == pytest.approx(3.0)
    assert profile.seminorm(HolderIndex(1, 0.5)) == pytest.approx(0.0)
    estimate = profile.norm(HolderIndex(0, 1.0))
    assert estimate.total == pytest.approx(estimate.sup_part + estimate.seminorm_part)


def test_square_root():
    """√t на [0, 1]: p_{(0,1/2)} <= 1 и приближается к 1 у нуля"""
    jet = envelope_jet(power_family(0.5), [1.0])
    seminorm = holder_seminorm_estimate(jet, HolderIndex(0, 0.5), UNIT_INTERVAL, SamplePlan.grid(401))
    assert 0.9 <= seminorm <= 1.0 + 1e-12
    with pytest.raises(OrderExceeded):
        holder_seminorm_estimate(jet, HolderIndex(1, 0.0), UNIT_INTERVAL, GRID)


def test_sup_norm_only():
    """Для индекса (0, 0) норма сводится к sup"""
    jet = envelope_jet(SIN, [1.0, 1.0])
    estimate = holder_norm_estimate(jet, HolderIndex(0, 0.0), DISK, SamplePlan.grid(9))
    assert estimate.total == pytest.approx(estimate.sup_part)
    assert estimate.to_dict()["index"] == [0, 0.0]


def test_shift():
    """p_{(0,s)}(γ') = p_{(1,s)}(γ)"""
    jet = envelope_jet(SIN, [2.0])
    profile = HolderProfile.build(jet, LINE, GRID)
    assert profile.seminorm(HolderIndex(0, 0.5), shift=1) == pytest.approx(profile.seminorm(HolderIndex(1, 0.5)))


def test_values_profile():
    """Оценка по значениям совпадает с оценкой по jet-функции"""
    jet = envelope_jet(SIN, [2.0])
    samples = build_sample_set(LINE, GRID)
    from_values = norm_estimate_from_values(jet.values_batch(samples.points), 0.5, samples)
    from_jet = HolderProfile(jet, samples).norm(HolderIndex(0, 0.5))
    assert from_values.total == pytest.approx(from_jet.total)


def test_quotient_maxima():
    """Максимумы разностных отношений для набора показателей совпадают с поштучными"""
    jet = envelope_jet(SIN, [2.0, -1.0], weight=[1.0, 0.5])
    profile = HolderProfile.build(jet, DISK, SamplePlan.grid(9))
    exponents = [0.1, 0.5, 1.0]
    maxima = profile.quotient_maxima(2, exponents)
    for s, value in zip(exponents, maxima):
        assert value == pytest.approx(float(profile.quotients(2, s).max()), rel=1e-14)
        assert profile.seminorm(HolderIndex(2, s)) == value
    assert profile.norm(HolderIndex(0, 0.5)).sample_meta is profile.norm(HolderIndex(1, 0.5)).sample_meta


def test_lemma_constants():
    """k = 1, s = 1 на шаре радиуса 1/2: ε₀ = 1/2, C₁ = 1/4, C₂ = 5/4, Σ|λ| = 6, C₄ = 15"""
    constants = lemma24_constants(1, 1.0, LINE)
    assert constants.epsilon == pytest.approx(0.5)
    assert constants.c1 == pytest.approx(0.25)
    assert constants.c2 == pytest.approx(1.25)
    assert constants.interpolation_sum == pytest.approx(6.0)
    assert constants.c3 == pytest.approx(7.5)
    assert constants.c4 == pytest.approx(15.0)
    assert constants.to_dict()["x0"] == [0.0]


def test_lemma_errors():
    """Граничная точка, недопустимые k, s и отступ margin вне [0, 1)"""
    with pytest.raises(BoundaryPoint):
        lemma24_constants(1, 0.5, LINE, x0=[0.5])
    with pytest.raises(ValueError):
        lemma24_constants(0, 0.5, LINE)
    with pytest.raises(ValueError):
        lemma24_constants(1, 0.0, LINE)
    for margin in (1.0, 1.5, -0.1, float("nan")):
        with pytest.raises(ValueError):
            lemma24_constants(1, 0.5, LINE, margin=margin)
    assert lemma24_constants(1, 0.5, LINE, margin=0.5).epsilon == pytest.approx(0.25)


def test_point_derivative_bound():
    """||γ'(x₀)|| <= C₄·||γ||_{(1,s)}"""
    jet = envelope_jet(SIN, [3.0, -1.0])
    profile = HolderProfile.build(jet, DISK, SamplePlan.grid(13))
    for s in (0.5, 1.0):
        constants = lemma24_constants(1, s, DISK)
        bound = constants.c4 * profile.norm(HolderIndex(1, s)).total
        assert profile.derivative_upper(constants.x0, 1) <= bound


def test_inclusion_constants():
    """D_0 = 19 на круге радиуса 1/2, все константы вложений >= 1"""
    assert inclusion_constant_Dk(0, DISK) == pytest.approx(19.0)
    for k in range(4):
        assert inclusion_constant_Dk(k, DISK) >= 1.0
    assert lemma24b_constant(0, 0.5, DISK) == 1.0
    assert lemma24b_constant(1, 1.0, DISK) == pytest.approx(16.0)
    assert inclusion_chain_constant(HolderIndex(0, 0.5), HolderIndex(0, 1.0), DISK) == 1.0
    chain = inclusion_chain_constant(HolderIndex(0, 0.5), HolderIndex(2, 0.3), DISK)
    assert chain >= inclusion_constant_Dk(1, DISK)
    with pytest.raises(ValueError):
        inclusion_chain_constant(HolderIndex(1, 0.5), HolderIndex(1, 0.5), DISK)


def test_inclusion_holds():
    """||γ||_{(0,1/2)} <= D_0·||γ||_{(1,1/2)} на корпусной функции"""
    jet = envelope_jet(SIN, [1.5, 0.5], weight=[1.0, -1.0])
    profile = HolderProfile.build(jet, DISK, SamplePlan.grid(13))
    lhs = profile.norm(HolderIndex(0, 0.5)).total
    rhs = inclusion_constant_Dk(0, DISK) * profile.norm(HolderIndex(1, 0.5)).total
    assert lhs <= rhs


def test_lagrange_table():
    """Таблица узлов: при k = 1 узлы {1/3, 2/3} и суммы (3, 6)"""
    table = lagrange_table(2)
    assert sorted(table) == [0, 1, 2]
    assert table[1]["nodes"] == pytest.approx([1 / 3, 2 / 3])
    assert table[1]["sums"] == pytest.approx([3.0, 6.0])
    assert np.allclose(table[0]["lambda"], [[1.0]])


TESTS = [
    ("Индексы Гёльдера", test_holder_index),
    ("Постоянная функция", test_constant_function),
    ("Линейная функция", test_linear_function),
    ("Квадратный корень", test_square_root),
    ("Индекс (0, 0)", test_sup_norm_only),
    ("Сдвиг производной", test_shift),
    ("Оценка по значениям", test_values_profile),
    ("Отношения для набора показателей", test_quotient_maxima),
    ("Константы оценки производной", test_lemma_constants),
    ("Ошибки констант", test_lemma_errors),
    ("Оценка производной в точке", test_point_derivative_bound),
    ("Константы вложений", test_inclusion_constants),
    ("Вложение на функции", test_inclusion_holds),
    ("Таблица Лагранжа", test_lagrange_table),
]


def main() -> int:
    """Главная функция тестирования"""
    setup_main_logger()
    logger.info("🧪 === ТЕСТИРОВАНИЕ НОРМ ГЁЛЬДЕРА ===")
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
