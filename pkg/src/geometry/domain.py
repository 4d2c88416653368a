"""
Область Ω (шар или брус с диаметром не больше 1) и детерминированные
выборки точек и пар точек для оценки супремумов
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property, lru_cache
from typing import Any, Dict, NamedTuple, Optional, Tuple

import numpy as np
from scipy.spatial import cKDTree
from scipy.stats import qmc

from src.config import DEFAULT_SEPARATION_FACTOR
from src.utils.errors import DegeneratePlan, DiameterExceeded, EmptyDomain

logger = logging.getLogger(__name__)

# Запас на округление при проверке diam Ω <= 1
DIAMETER_SLACK = 1e-12


class ShapeKind(Enum):
    """Форма области"""
    BALL = "ball"
    BOX = "box"


class PlanKind(Enum):
    """Тип плана выборки"""
    GRID = "grid"
    QUASIRANDOM = "quasirandom"


@dataclass(frozen=True)
class Domain:
    """
    Выпуклое ограниченное открытое множество Ω ⊂ ℝⁿ

    Шар задаётся центром и радиусом, брус - нижним и верхним углами.
    Норма на ℝⁿ евклидова.
    """
    kind: ShapeKind
    dim: int
    center: Tuple[float, ...] = ()
    radius: float = 0.0
    lower: Tuple[float, ...] = ()
    upper: Tuple[float, ...] = ()

    @property
    def diameter(self) -> float:
        if self.kind is ShapeKind.BALL:
            return 2.0 * self.radius
        return float(np.linalg.norm(np.subtract(self.upper, self.lower)))

    @property
    def incenter(self) -> np.ndarray:
        """Самая глубокая точка области"""
        if self.kind is ShapeKind.BALL:
            return np.asarray(self.center, dtype=float)
        return (np.asarray(self.lower, dtype=float) + np.asarray(self.upper, dtype=float)) / 2.0

    @property
    def inradius(self) -> float:
        if self.kind is ShapeKind.BALL:
            return self.radius
        return float(np.min(np.subtract(self.upper, self.lower))) / 2.0

    def bounding_box(self) -> Tuple[np.ndarray, np.ndarray]:
        if self.kind is ShapeKind.BALL:
            center = np.asarray(self.center, dtype=float)
            return center - self.radius, center + self.radius
        return np.asarray(self.lower, dtype=float), np.asarray(self.upper, dtype=float)

    def boundary_distance(self, x) -> float:
        """
        Расстояние от точки до границы (отрицательно снаружи)

        Args:
            x: Точка ℝⁿ

        Returns:
            float: Расстояние до ∂Ω
        """
        x = np.asarray(x, dtype=float).reshape(self.dim)
        if self.kind is ShapeKind.BALL:
            return self.radius - float(np.linalg.norm(x - np.asarray(self.center)))
        return float(np.min(np.minimum(x - np.asarray(self.lower), np.asarray(self.upper) - x)))

    def contains(self, x) -> bool:
        """Строгая внутренность"""
        return self.boundary_distance(x) > 0.0

    def contains_segment(self, x0, v) -> bool:
        """Отрезок [x₀, x₀ + v] лежит в Ω (по выпуклости достаточно концов)"""
        x0 = np.asarray(x0, dtype=float)
        return self.contains(x0) and self.contains(x0 + np.asarray(v, dtype=float))

    def describe(self) -> Dict[str, Any]:
        """Описание для отчёта и конфигурации"""
        if self.kind is ShapeKind.BALL:
            return {"shape": "ball", "center": list(self.center), "radius": self.radius}
        return {"shape": "box", "lower": list(self.lower), "upper": list(self.upper)}


def make_domain(spec: Dict[str, Any]) -> Domain:
    """
    Построение области по описанию формы

    Args:
        spec (Dict): {"shape": "ball", "center": [...], "radius": r}
            или {"shape": "box", "lower": [...], "upper": [...]}

    Returns:
        Domain: Область с diam Ω <= 1

    Raises:
        EmptyDomain: радиус <= 0, lower >= upper по какой-то оси, нечисловые координаты или n = 0
        DiameterExceeded: диаметр больше 1
    """
    shape = str(spec.get("shape", "")).lower()

    if shape == ShapeKind.BALL.value:
        center = tuple(float(c) for c in np.atleast_1d(spec.get("center", [0.0])))
        radius = float(spec.get("radius", 0.0))
        if not center:
            raise EmptyDomain("Центр шара должен иметь хотя бы одну координату")
        if not np.all(np.isfinite(center)):
            raise EmptyDomain(f"Центр шара содержит нечисловые координаты: {center}")
        if not np.isfinite(radius) or radius <= 0.0:
            raise EmptyDomain(f"Радиус шара должен быть положительным числом, получено {radius}")
        domain = Domain(kind=ShapeKind.BALL, dim=len(center), center=center, radius=radius)
    elif shape == ShapeKind.BOX.value:
        lower = tuple(float(c) for c in np.atleast_1d(spec.get("lower", [])))
        upper = tuple(float(c) for c in np.atleast_1d(spec.get("upper", [])))
        if not lower or len(lower) != len(upper):
            raise EmptyDomain(f"Некорректные углы бруса: {lower} / {upper}")
        if not (np.all(np.isfinite(lower)) and np.all(np.isfinite(upper))):
            raise EmptyDomain(f"Углы бруса содержат нечисловые координаты: {lower} / {upper}")
        if any(lo >= hi for lo, hi in zip(lower, upper)):
            raise EmptyDomain(f"Брус пуст: lower={lower}, upper={upper}")
        domain = Domain(kind=ShapeKind.BOX, dim=len(lower), lower=lower, upper=upper)
    else:
        raise EmptyDomain(f"Неизвестная форма области: {spec.get('shape')!r}")

    if domain.diameter > 1.0 + DIAMETER_SLACK:
        raise DiameterExceeded(f"diam Ω = {domain.diameter:.6g} > 1")

    logger.debug(f"Построена область {domain.describe()} с диаметром {domain.diameter:.6g}")
    return domain


@dataclass(frozen=True)
class SamplePlan:
    """
    План выборки: регулярная сетка или квазислучайная последовательность Холтона
    """
    kind: PlanKind = PlanKind.GRID
    points_per_axis: int = 13
    count: int = 150
    seed: int = 7
    min_pair_separation: Optional[float] = None
    max_pair_distance: Optional[float] = None

    def __post_init__(self):
        for name in ("min_pair_separation", "max_pair_distance"):
            value = getattr(self, name)
            if value is not None and not (np.isfinite(value) and value > 0.0):
                raise DegeneratePlan(f"{name} должно быть положительным числом, получено {value}")

    @classmethod
    def grid(cls, points_per_axis: int, **kwargs) -> 'SamplePlan':
        return cls(kind=PlanKind.GRID, points_per_axis=points_per_axis, **kwargs)

    @classmethod
    def quasirandom(cls, count: int, seed: int, **kwargs) -> 'SamplePlan':
        return cls(kind=PlanKind.QUASIRANDOM, count=count, seed=seed, **kwargs)

    @classmethod
    def from_config(cls, config: Dict[str, Any]) -> 'SamplePlan':
        """Построение плана из словаря SAMPLE_PLAN_CONFIG"""
        return cls(
            kind=PlanKind(config.get("kind", "grid")),
            points_per_axis=int(config.get("points_per_axis", 13)),
            count=int(config.get("count", 150)),
            seed=int(config.get("seed", 7)),
            min_pair_separation=config.get("min_pair_separation"),
            max_pair_distance=config.get("max_pair_distance"),
        )

    def separation(self, domain: Domain) -> float:
        if self.min_pair_separation is None:
            return DEFAULT_SEPARATION_FACTOR * domain.diameter
        return float(self.min_pair_separation)

    def describe(self) -> Dict[str, Any]:
        described = {"kind": self.kind.value,
                     "min_pair_separation": self.min_pair_separation,
                     "max_pair_distance": self.max_pair_distance}
        if self.kind is PlanKind.GRID:
            described["points_per_axis"] = self.points_per_axis
        else:
            described.update(count=self.count, seed=self.seed)
        return described


class SamplePairs(NamedTuple):
    """Неупорядоченные пары (x, y), x ≠ y, по индексам точек выборки"""
    first_index: np.ndarray
    second_index: np.ndarray
    first: np.ndarray
    second: np.ndarray
    distances: np.ndarray


def _grid_points(domain: Domain, points_per_axis: int) -> np.ndarray:
    lower, upper = domain.bounding_box()
    # Внутренние узлы равномерного разбиения на points_per_axis + 1 интервалов
    axes = [np.linspace(lo, hi, points_per_axis + 2)[1:-1] for lo, hi in zip(lower, upper)]
    mesh = np.meshgrid(*axes, indexing="ij")
    points = np.stack([m.ravel() for m in mesh], axis=1)
    if domain.kind is ShapeKind.BALL:
        center = np.asarray(domain.center)
        points = points[np.linalg.norm(points - center, axis=1) < domain.radius]
    return points


def _quasirandom_points(domain: Domain, count: int, seed: int) -> np.ndarray:
    lower, upper = domain.bounding_box()
    engine = qmc.Halton(d=domain.dim, scramble=True, seed=seed)
    eps = np.finfo(float).eps
    accepted = []
    total = 0
    # Для шара отбрасываем точки вне Ω; доля принятых не меньше объёма шара в кубе
    for _ in range(64):
        unit = np.clip(engine.random(count), eps, 1.0 - eps)
        batch = lower + unit * (upper - lower)
        if domain.kind is ShapeKind.BALL:
            batch = batch[np.linalg.norm(batch - np.asarray(domain.center), axis=1) < domain.radius]
        accepted.append(batch)
        total += len(batch)
        if total >= count:
            break
    return np.concatenate(accepted, axis=0)[:count]


@lru_cache(maxsize=64)
def _cached_points(domain: Domain, plan: SamplePlan) -> np.ndarray:
    if plan.kind is PlanKind.GRID:
        if plan.points_per_axis < 1:
            raise DegeneratePlan(f"points_per_axis должно быть >= 1, получено {plan.points_per_axis}")
        points = _grid_points(domain, plan.points_per_axis)
    else:
        if plan.count < 1:
            raise DegeneratePlan(f"count должно быть >= 1, получено {plan.count}")
        points = _quasirandom_points(domain, plan.count, plan.seed)
    points.setflags(write=False)
    logger.debug(f"Выборка {plan.describe()}: {len(points)} точек")
    return points


def sample_points(domain: Domain, plan: SamplePlan) -> np.ndarray:
    """
    Детерминированная выборка внутренних точек области

    Args:
        domain (Domain): Область Ω
        plan (SamplePlan): План выборки

    Returns:
        np.ndarray: Массив точек формы (N, n)
    """
    return np.array(_cached_points(domain, plan))


@lru_cache(maxsize=64)
def _cached_pairs(domain: Domain, plan: SamplePlan) -> SamplePairs:
    points = _cached_points(domain, plan)
    if len(points) < 2 or len(np.unique(points, axis=0)) < 2:
        raise DegeneratePlan(f"План {plan.describe()} даёт меньше двух различных точек")

    if plan.max_pair_distance is not None:
        pairs = cKDTree(points).query_pairs(float(plan.max_pair_distance), output_type="ndarray")
        if len(pairs):
            pairs = pairs[np.lexsort((pairs[:, 1], pairs[:, 0]))]
        first_index, second_index = pairs[:, 0], pairs[:, 1]
    else:
        first_index, second_index = np.triu_indices(len(points), k=1)

    distances = np.linalg.norm(points[first_index] - points[second_index], axis=1)
    keep = distances >= plan.separation(domain)
    first_index, second_index, distances = first_index[keep], second_index[keep], distances[keep]

    if len(distances) == 0:
        raise DegeneratePlan(f"После фильтрации по расстоянию не осталось пар: {plan.describe()}")

    result = SamplePairs(first_index=first_index, second_index=second_index,
                         first=points[first_index], second=points[second_index],
                         distances=distances)
    for array in result:
        array.setflags(write=False)
    logger.debug(f"Выборка пар {plan.describe()}: {len(distances)} пар")
    return result


def sample_pairs(domain: Domain, plan: SamplePlan) -> SamplePairs:
    """
    Пары различных точек выборки с ||x - y|| >= min_pair_separation

    Args:
        domain (Domain): Область Ω
        plan (SamplePlan): План выборки

    Returns:
        SamplePairs: Неупорядоченные пары (каждая пара встречается один раз)

    Raises:
        DegeneratePlan: меньше двух различных точек
    """
    return _cached_pairs(domain, plan)


@dataclass(eq=False)
class SampleSet:
    """Общая выборка точек и пар, на которой сравниваются обе части неравенств"""
    domain: Domain
    plan: SamplePlan
    points: np.ndarray = field(init=False)

    def __post_init__(self):
        self.points = _cached_points(self.domain, self.plan)

    @cached_property
    def pairs(self) -> SamplePairs:
        return sample_pairs(self.domain, self.plan)

    def describe(self) -> Dict[str, Any]:
        return {"domain": self.domain.describe(), "plan": self.plan.describe()}


def build_sample_set(domain: Domain, plan: SamplePlan) -> SampleSet:
    """Выборка точек и (лениво) пар для пары (Ω, план)"""
    return SampleSet(domain=domain, plan=plan)


def pairs_max_distance(pairs: SamplePairs) -> float:
    """Наибольшее расстояние среди пар выборки"""
    return float(np.max(pairs.distances)) if len(pairs.distances) else 0.0


def unit_ball_points(dim: int, points_per_axis: int) -> np.ndarray:
    """
    Сетка во внутренности единичного шара B₁(0) ⊂ ℝⁿ (вне класса Domain, так как diam = 2)
    """
    half_ball = make_domain({"shape": "ball", "center": [0.0] * dim, "radius": 0.5})
    return 2.0 * sample_points(half_ball, SamplePlan.grid(points_per_axis))
