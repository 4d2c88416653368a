"""
Явные константы вложений пространств Гёльдера

    ε₀ = dist(x₀, ∂Ω)·(1 - margin)
    C₁ = ε₀^{k+s}/(k-1)!,  C₂ = 1 + C₁,  C₃ = C₂·Σ_μ |λ_{μ,k}|,  C₄ = C₃·k!/ε₀^k
    ||γ^{(k)}(x₀)||_op <= C₄·||γ||_{(k,s)}

D_k - оценка нормы вложения BC^{k+1,s} → BC^{k,s}, одна для всех s ∈ [0, 1]
и всех Z (diam Ω <= 1, x₀ - центр вписанного шара).
"""

import logging
import math
from functools import lru_cache
from typing import Any, Dict, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from src.config import PRODUCT_CONFIG
from src.geometry.domain import Domain
from src.holder.norms import HolderIndex
from src.interp.lagrange import default_nodes, interpolation_constant, lagrange_coefficients
from src.utils.errors import BoundaryPoint

logger = logging.getLogger(__name__)


class Lemma24Constants(NamedTuple):
    """Цепочка констант оценки γ^{(k)}(x₀) через ||γ||_{(k,s)}"""
    k: int
    s: float
    x0: Tuple[float, ...]
    epsilon: float
    c1: float
    c2: float
    c3: float
    c4: float
    interpolation_sum: float

    def to_dict(self) -> Dict[str, Any]:
        return self._asdict() | {"x0": list(self.x0)}


def _chain(k: int, s: float, epsilon: float, nodes: Sequence[float]) -> Tuple[float, float, float, float, float]:
    interpolation_sum = interpolation_constant(nodes, k)
    c1 = epsilon ** (k + s) / math.factorial(k - 1)
    c2 = 1.0 + c1
    c3 = c2 * interpolation_sum
    c4 = c3 * math.factorial(k) / epsilon ** k
    return c1, c2, c3, c4, interpolation_sum


def lemma24_constants(k: int, s: float, domain: Domain, x0=None,
                      margin: float = PRODUCT_CONFIG["lemma_margin"],
                      nodes: Optional[Sequence[float]] = None) -> Lemma24Constants:
    """
    Константы ε₀, C₁…C₄ оценки ||γ^{(k)}(x₀)||_op <= C₄·||γ||_{(k,s)}

    Args:
        k (int): Порядок производной, k >= 1
        s (float): Показатель, 0 < s <= 1
        domain (Domain): Область Ω
        x0: Внутренняя точка (по умолчанию центр вписанного шара)
        margin (float): Отступ 0 <= margin < 1 от границы при выборе ε₀
        nodes: Узлы интерполяции (по умолчанию i/(k+2))

    Returns:
        Lemma24Constants: Константы цепочки

    Raises:
        BoundaryPoint: x₀ не лежит строго внутри Ω
        ValueError: k < 1, s вне (0, 1] или margin вне [0, 1)
    """
    if k < 1:
        raise ValueError(f"Константы определены для k >= 1, получено {k}")
    if not 0.0 < s <= 1.0:
        raise ValueError(f"Показатель s должен лежать в (0, 1], получено {s}")
    if not 0.0 <= margin < 1.0:
        raise ValueError(f"Отступ margin должен лежать в [0, 1), получено {margin}")
    x0 = domain.incenter if x0 is None else np.asarray(x0, dtype=float)
    if not domain.contains(x0):
        raise BoundaryPoint(f"Точка {np.asarray(x0).tolist()} не лежит внутри области")

    epsilon = domain.boundary_distance(x0) * (1.0 - margin)
    nodes = default_nodes(k) if nodes is None else nodes
    c1, c2, c3, c4, interpolation_sum = _chain(k, s, epsilon, nodes)
    return Lemma24Constants(k=k, s=float(s), x0=tuple(float(c) for c in x0), epsilon=epsilon,
                            c1=c1, c2=c2, c3=c3, c4=c4, interpolation_sum=interpolation_sum)


def _c4_uniform(k: int, domain: Domain) -> float:
    """Максимум C₄ по s ∈ (0, 1]: при ε₀ <= 1 достигается в пределе s → 0"""
    epsilon = domain.inradius
    return _chain(k, 0.0, epsilon, default_nodes(k))[3]


def lemma24b_constant(k: int, s: float, domain: Domain) -> float:
    """
    Константа вложения BC^{k,s} → BC^{k,0}

    ||γ||_{(k,0)} <= ||γ||∞ + diam·p_{(k,s)}(γ) + C₄||γ||_{(k,s)} <= (1 + C₄)·||γ||_{(k,s)}
    """
    if k == 0 or s == 0.0:
        return 1.0
    return 1.0 + lemma24_constants(k, s, domain).c4


@lru_cache(maxsize=64)
def inclusion_constant_Dk(k: int, domain: Domain) -> float:
    """
    Оценка D_k нормы вложения BC^{k+1,s}(Ω, Z) → BC^{k,s}(Ω, Z), общая для всех s и Z

    Для s > 0: p_{(k,s)} <= p_{(k,1)} = p_{(k+1,0)} <= p_{(k+1,s)} + C₄(k+1)·||γ||_{(k+1,s)},
    откуда ||γ||_{(k,s)} <= (1 + C₄(k+1))·||γ||_{(k+1,s)} с C₄ при s → 0.
    Для s = 0, k >= 1: ||γ^{(k)}||∞ <= ||γ^{(k)}(x₀)|| + ||γ^{(k+1)}||∞ и
    ||γ^{(k)}(x₀)|| <= C₄(k, 1)·||γ||_{(k,1)} = C₄(k, 1)·||γ||_{(k+1,0)}.

    Args:
        k (int): Порядок k >= 0
        domain (Domain): Область Ω с diam Ω <= 1

    Returns:
        float: D_k >= 1
    """
    positive_s = 1.0 + _c4_uniform(k + 1, domain)
    zero_s = 1.0 + lemma24_constants(k, 1.0, domain).c4 if k >= 1 else 1.0
    value = max(positive_s, zero_s)
    logger.debug(f"D_{k} = {value:.6g} для {domain.describe()}")
    return value


def _same_level_constant(k: int, s: float, t: float, domain: Domain) -> float:
    """BC^{k,t} → BC^{k,s} при s <= t"""
    if s == t or s > 0.0 or k == 0:
        # max{1, diam^{t-s}} = 1
        return 1.0
    return lemma24b_constant(k, t, domain)


def inclusion_chain_constant(target: HolderIndex, source: HolderIndex, domain: Domain) -> float:
    """
    Константа вложения BC^{l,t} → BC^{k,s} при k + s < l + t

    Спуск по k через D_{l-1}…D_{k+1}, затем шаг (k+1, t) → (k, s): через D_k
    при s <= t, иначе через (k+1, 0) и изометрию BC^{k+1,0} ≅ BC^{k,1}.

    Args:
        target (HolderIndex): (k, s)
        source (HolderIndex): (l, t)
        domain (Domain): Область Ω

    Returns:
        float: Константа c с ||γ||_{(k,s)} <= c·||γ||_{(l,t)}
    """
    if not target < source:
        raise ValueError(f"Ожидалось {target.label()} < {source.label()}")
    k, s, l, t = target.k, target.s, source.k, source.s
    if k == l:
        return _same_level_constant(k, s, t, domain)

    factor = math.prod(inclusion_constant_Dk(j, domain) for j in range(k + 1, l))
    if s <= t:
        return factor * inclusion_constant_Dk(k, domain) * _same_level_constant(k, s, t, domain)
    return factor * lemma24b_constant(k + 1, t, domain)


def lagrange_table(k_max: int) -> Dict[int, Dict[str, Any]]:
    """Узлы F, матрица λ и суммы Σ_μ |λ_{μ,j}| для k = 0…k_max"""
    table = {}
    for k in range(k_max + 1):
        nodes = default_nodes(k)
        table[k] = {"nodes": nodes.tolist(),
                    "lambda": lagrange_coefficients(nodes).tolist(),
                    "sums": [interpolation_constant(nodes, j) for j in range(k + 1)]}
    return table
