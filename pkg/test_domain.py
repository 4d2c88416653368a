#!/usr/bin/env python3
"""
Тесты области Ω и выборок точек и пар
"""

import logging
import os
import sys

import numpy as np
import pytest

# Добавляем путь к модулям
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from src.geometry.domain import (SamplePlan, build_sample_set, make_domain, pairs_max_distance, sample_pairs,
                                 sample_points, unit_ball_points)
from src.utils.errors import DegeneratePlan, DiameterExceeded, EmptyDomain
from src.utils.logger import setup_main_logger

logger = logging.getLogger(__name__)

BALL = {"shape": "ball", "center": [0.0, 0.0], "radius": 0.5}
LINE = {"shape": "ball", "center": [0.0], "radius": 0.5}


def test_ball_geometry():
    """Диаметр, центр и расстояние до границы шара"""
    domain = make_domain(BALL)
    assert domain.diameter == pytest.approx(1.0)
    assert np.allclose(domain.incenter, [0.0, 0.0])
    assert domain.boundary_distance([0.1, 0.0]) == pytest.approx(0.4)
    assert domain.contains([0.3, 0.3])
    assert not domain.contains([0.4, 0.4])


def test_box_geometry():
    """Брус [0, 0.6] × [0, 0.8]: диаметр 1, вписанный радиус 0.3"""
    domain = make_domain({"shape": "box", "lower": [0.0, 0.0], "upper": [0.6, 0.8]})
    assert domain.diameter == pytest.approx(1.0)
    assert domain.inradius == pytest.approx(0.3)
    assert np.allclose(domain.incenter, [0.3, 0.4])
    assert domain.contains_segment([0.1, 0.1], [0.3, 0.5])
    assert not domain.contains_segment([0.1, 0.1], [0.6, 0.0])


def test_domain_errors():
    """Слишком большие и пустые области отклоняются"""
    with pytest.raises(DiameterExceeded):
        make_domain({"shape": "ball", "center": [0.0], "radius": 0.6})
    with pytest.raises(EmptyDomain):
        make_domain({"shape": "ball", "center": [0.0], "radius": 0.0})
    with pytest.raises(EmptyDomain):
        make_domain({"shape": "box", "lower": [0.0, 0.5], "upper": [0.5, 0.5]})
    with pytest.raises(EmptyDomain):
        make_domain({"shape": "simplex"})


def test_grid_on_line():
    """Сетка из трёх точек на шаре радиуса 0.5 в ℝ¹"""
    points = sample_points(make_domain(LINE), SamplePlan.grid(3))
    assert np.allclose(np.sort(points[:, 0]), [-0.25, 0.0, 0.25])


def test_grid_inside_ball():
    """Все точки сетки лежат строго внутри шара, центр попадает в сетку при нечётном числе узлов"""
    domain = make_domain(BALL)
    points = sample_points(domain, SamplePlan.grid(13))
    assert all(domain.contains(point) for point in points)
    assert np.any(np.all(np.isclose(points, 0.0), axis=1))


def test_pairs_unordered():
    """Каждая неупорядоченная пара встречается один раз"""
    domain = make_domain(LINE)
    plan = SamplePlan.grid(5)
    pairs = sample_pairs(domain, plan)
    count = len(sample_points(domain, plan))
    assert len(pairs.distances) == count * (count - 1) // 2
    assert np.all(pairs.first_index < pairs.second_index)
    assert np.all(pairs.distances >= plan.separation(domain))
    assert pairs_max_distance(pairs) <= domain.diameter


def test_pairs_max_distance():
    """Ограничение расстояния оставляет только соседние точки"""
    domain = make_domain(LINE)
    plan = SamplePlan.grid(9, max_pair_distance=0.11)
    pairs = sample_pairs(domain, plan)
    assert len(pairs.distances) == 8
    assert pairs_max_distance(pairs) == pytest.approx(0.1)


def test_degenerate_plan():
    """Одна точка не даёт ни одной пары"""
    with pytest.raises(DegeneratePlan):
        sample_pairs(make_domain(LINE), SamplePlan.grid(1))
    with pytest.raises(DegeneratePlan):
        sample_points(make_domain(LINE), SamplePlan.grid(0))


def test_quasirandom_deterministic():
    """Квазислучайная выборка воспроизводима и лежит в области"""
    domain = make_domain(BALL)
    plan = SamplePlan.quasirandom(count=64, seed=3)
    first = sample_points(domain, plan)
    second = sample_points(domain, plan)
    assert first.shape == (64, 2)
    assert np.array_equal(first, second)
    assert all(domain.contains(point) for point in first)


def test_sample_set_describe():
    """SampleSet хранит план и область для отчёта"""
    samples = build_sample_set(make_domain(BALL), SamplePlan.from_config({"kind": "grid", "points_per_axis": 5}))
    described = samples.describe()
    assert described["domain"]["shape"] == "ball"
    assert described["plan"]["points_per_axis"] == 5
    assert len(samples.pairs.distances) > 0


def test_unit_ball_points():
    """Точки единичного шара лежат строго внутри B₁(0)"""
    points = unit_ball_points(2, 9)
    assert len(points) > 0
    assert np.all(np.linalg.norm(points, axis=1) < 1.0)


def test_invalid_coordinates():
    """NaN и бесконечности в радиусе, центре и углах, пустой центр отклоняются"""
    nan, inf = float("nan"), float("inf")
    for spec in ({"shape": "ball", "center": [0.0], "radius": nan},
                 {"shape": "ball", "center": [nan, 0.0], "radius": 0.25},
                 {"shape": "ball", "center": [0.0], "radius": inf},
                 {"shape": "ball", "center": [], "radius": 0.25},
                 {"shape": "box", "lower": [0.0], "upper": [nan]},
                 {"shape": "box", "lower": [-inf], "upper": [0.5]}):
        with pytest.raises(EmptyDomain):
            make_domain(spec)


def test_plan_thresholds():
    """min_pair_separation и max_pair_distance должны быть положительными"""
    for value in (0.0, -1e-3, float("nan")):
        with pytest.raises(DegeneratePlan):
            SamplePlan.grid(5, min_pair_separation=value)
        with pytest.raises(DegeneratePlan):
            SamplePlan.grid(5, max_pair_distance=value)
    with pytest.raises(DegeneratePlan):
        SamplePlan.from_config({"kind": "grid", "min_pair_separation": 0.0})
    assert SamplePlan.grid(5, min_pair_separation=1e-3).separation(make_domain(LINE)) == 1e-3


TESTS = [
    ("Геометрия шара", test_ball_geometry),
    ("Геометрия бруса", test_box_geometry),
    ("Ошибки области", test_domain_errors),
    ("Сетка на прямой", test_grid_on_line),
    ("Сетка в шаре", test_grid_inside_ball),
    ("Неупорядоченные пары", test_pairs_unordered),
    ("Ограничение расстояния пар", test_pairs_max_distance),
    ("Вырожденный план", test_degenerate_plan),
    ("Квазислучайная выборка", test_quasirandom_deterministic),
    ("Описание выборки", test_sample_set_describe),
    ("Единичный шар", test_unit_ball_points),
    ("Нечисловые координаты области", test_invalid_coordinates),
    ("Пороги плана выборки", test_plan_thresholds),
]


def main() -> int:
    """Главная функция тестирования"""
    setup_main_logger()
    logger.info("🧪 === ТЕСТИРОВАНИЕ ОБЛАСТЕЙ И ВЫБОРОК ===")
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
