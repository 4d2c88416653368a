"""
Матричные алгебры Ли с коммутатором и масштабированной нормой Фробениуса

||x||_𝔤 = c·||x||_F. Так как ||[x, y]||_F <= 2·||x||_F·||y||_F, при c = 2·C_k
выполняется ||[x, y]||_𝔤 <= (1/C_k)·||x||_𝔤·||y||_𝔤.
"""

import logging
from dataclasses import dataclass, replace
from typing import Callable, Dict

import numpy as np

from src.utils.errors import DimensionMismatch

logger = logging.getLogger(__name__)

# Оценка ||[x, y]||_F <= M·||x||_F·||y||_F
FROBENIUS_BRACKET_BOUND = 2.0


@dataclass(frozen=True, eq=False)
class LieAlgebra:
    """
    Подалгебра gl(d, ℝ), натянутая на basis (массив (b, d, d))
    """
    name: str
    basis: np.ndarray
    scale: float = 1.0
    bracket_bound: float = FROBENIUS_BRACKET_BOUND

    @property
    def matrix_dim(self) -> int:
        return self.basis.shape[1]

    @property
    def dimension(self) -> int:
        return self.basis.shape[0]

    @staticmethod
    def bracket(x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return x @ y - y @ x

    def norm(self, x) -> float:
        return self.scale * float(np.linalg.norm(np.asarray(x, dtype=float)))

    def compatibility_constant(self) -> float:
        """c' с ||[x, y]||_𝔤 <= c'·||x||_𝔤·||y||_𝔤"""
        return self.bracket_bound / self.scale

    def combine(self, weights) -> np.ndarray:
        """Σ w_i e_i"""
        return np.tensordot(np.asarray(weights, dtype=float), self.basis, axes=([-1], [0]))

    def random_element(self, rng: np.random.Generator, frobenius_radius: float) -> np.ndarray:
        """Случайный элемент с ||x||_F = frobenius_radius·u, u ~ U(0, 1]"""
        element = self.combine(rng.standard_normal(self.dimension))
        norm = np.linalg.norm(element)
        if norm == 0.0:
            return element
        return element * (frobenius_radius * (1.0 - rng.random()) / norm)

    def as_matrix(self, value) -> np.ndarray:
        return as_matrix(value, self.matrix_dim)

    def describe(self) -> Dict[str, object]:
        return {"name": self.name, "matrix_dim": self.matrix_dim, "dimension": self.dimension, "scale": self.scale}


def as_matrix(value, dim: int) -> np.ndarray:
    """Вектор ℝ^{d²} (построчно) → матрица d×d"""
    value = np.asarray(value, dtype=float)
    if value.size != dim * dim:
        raise DimensionMismatch(f"Значение размера {value.size} не является матрицей {dim}×{dim}")
    return value.reshape(dim, dim)


def _unit(dim: int, i: int, j: int) -> np.ndarray:
    matrix = np.zeros((dim, dim))
    matrix[i, j] = 1.0
    return matrix


def so3() -> LieAlgebra:
    """Кососимметричные 3×3 матрицы"""
    basis = np.array([
        _unit(3, 2, 1) - _unit(3, 1, 2),
        _unit(3, 0, 2) - _unit(3, 2, 0),
        _unit(3, 1, 0) - _unit(3, 0, 1),
    ])
    return LieAlgebra(name="so3", basis=basis)


def sl2() -> LieAlgebra:
    """Бесследовые 2×2 матрицы: H, E, F"""
    basis = np.array([
        _unit(2, 0, 0) - _unit(2, 1, 1),
        _unit(2, 0, 1),
        _unit(2, 1, 0),
    ])
    return LieAlgebra(name="sl2", basis=basis)


def heisenberg3() -> LieAlgebra:
    """Строго верхнетреугольные 3×3 матрицы (двухступенно нильпотентная)"""
    basis = np.array([_unit(3, 0, 1), _unit(3, 1, 2), _unit(3, 0, 2)])
    return LieAlgebra(name="heisenberg", basis=basis)


def abelian(dim: int = 2) -> LieAlgebra:
    """Диагональные d×d матрицы, скобка тождественно равна нулю"""
    basis = np.array([_unit(dim, i, i) for i in range(dim)])
    return LieAlgebra(name="abelian", basis=basis)


BUILTIN_ALGEBRAS: Dict[str, Callable[[], LieAlgebra]] = {
    "so3": so3,
    "sl2": sl2,
    "heisenberg": heisenberg3,
    "abelian": abelian,
}


def make_algebra(name: str) -> LieAlgebra:
    """Встроенная алгебра по имени"""
    try:
        return BUILTIN_ALGEBRAS[name]()
    except KeyError:
        raise ValueError(f"Неизвестная алгебра Ли: {name!r}") from None


def rescale_compatible(algebra: LieAlgebra, product_constant: float) -> LieAlgebra:
    """
    Масштабирование нормы до ||[x, y]||_𝔤 <= (1/C_k)·||x||_𝔤·||y||_𝔤

    Args:
        algebra (LieAlgebra): Алгебра с нормой c·||·||_F
        product_constant (float): C_k > 0

    Returns:
        LieAlgebra: Та же алгебра с масштабом c = M·C_k относительно нормы Фробениуса
    """
    if product_constant <= 0.0:
        raise ValueError(f"C_k должно быть положительным, получено {product_constant}")
    scale = algebra.bracket_bound * product_constant
    logger.debug(f"{algebra.name}: масштаб нормы {scale:.6g} для C_k = {product_constant:.6g}")
    return replace(algebra, scale=scale)
