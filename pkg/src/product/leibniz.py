"""
Поточечные билинейные произведения функций Гёльдера

    (γ₁ • γ₂)^{(r)} = Sym Σ_i C(r, i) · γ₁^{(i)} • γ₂^{(r-i)}
    ||γ₁ • γ₂||_{(k,s)} <= C_k · ||•||_op · ||γ₁||_{(k,s)} · ||γ₂||_{(k,s)},  C₀ = 2, C_{k+1} = (2D_k + 2)·C_k
"""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Dict, List, NamedTuple, Optional

import numpy as np

from src.config import OPNORM_CONFIG, PRODUCT_CONFIG, TOLERANCES
from src.functions.jets import JetFunction, Polynomial
from src.functions.multilinear import OpNormBracket, SymMultilinearMap, symmetrize, unit_sphere_sample
from src.geometry.domain import Domain, SamplePlan, SampleSet, build_sample_set
from src.holder.constants import inclusion_constant_Dk
from src.holder.norms import HolderIndex, HolderProfile
from src.utils.errors import DimensionMismatch

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class BilinearForm:
    """
    Билинейное отображение ℝ^{m₁} × ℝ^{m₂} → ℝᵐ, коэффициенты формы (m₁, m₂, m)

    norm_bound - известная верхняя оценка нормы (например, 1 для умножения
    матриц в норме Фробениуса); итоговая верхняя оценка - минимум с вычисленной.
    """
    name: str
    coeffs: np.ndarray
    norm_bound: Optional[float] = None

    @property
    def first_dim(self) -> int:
        return self.coeffs.shape[0]

    @property
    def second_dim(self) -> int:
        return self.coeffs.shape[1]

    @property
    def out_dim(self) -> int:
        return self.coeffs.shape[2]

    def __call__(self, first, second) -> np.ndarray:
        return np.einsum("p,q,pqm->m", np.asarray(first, dtype=float), np.asarray(second, dtype=float), self.coeffs)

    def apply_batch(self, first: np.ndarray, second: np.ndarray) -> np.ndarray:
        """B(a_p, b_p) для пакетов (N, m₁), (N, m₂)"""
        return np.einsum("np,nq,pqm->nm", first, second, self.coeffs)

    def op_norm_bracket(self) -> OpNormBracket:
        return bilinear_op_norm(self)


@lru_cache(maxsize=32)
def _bilinear_bracket(coeffs_bytes: bytes, shape: tuple, norm_bound: Optional[float]) -> OpNormBracket:
    coeffs = np.frombuffer(coeffs_bytes).reshape(shape)
    first_dim = shape[0]
    # Верхняя: sqrt(Σ_p ||B(e_p, ·)||²) по неравенству Коши-Буняковского
    slices = np.linalg.norm(coeffs, ord=2, axis=(1, 2))
    upper = float(np.sqrt(np.sum(slices ** 2)))
    if norm_bound is not None:
        upper = min(upper, float(norm_bound))

    # Нижняя: max_u ||B(u, ·)||_op по сфере с попеременным уточнением
    directions = unit_sphere_sample(first_dim, OPNORM_CONFIG["sphere_samples"], OPNORM_CONFIG["seed"])
    matrices = np.einsum("sp,pqm->sqm", directions, coeffs)
    norms = np.linalg.norm(matrices, ord=2, axis=(1, 2))
    u = directions[int(np.argmax(norms))]
    lower = float(norms.max())
    for _ in range(OPNORM_CONFIG["refine_steps"]):
        _, _, vh = np.linalg.svd(np.einsum("p,pqm->qm", u, coeffs).T)
        v = vh[0]
        left = np.einsum("q,pqm->pm", v, coeffs)
        uu, sigma, _ = np.linalg.svd(left)
        lower = max(lower, float(sigma[0]))
        u = uu[:, 0]
    return OpNormBracket(lower=min(lower, upper), upper=upper)


def bilinear_op_norm(form: BilinearForm) -> OpNormBracket:
    """
    Вилка для ||•||_op = sup ||B(u, v)|| по единичным u, v

    Args:
        form (BilinearForm): Билинейное отображение

    Returns:
        OpNormBracket: lower <= ||•||_op <= upper
    """
    coeffs = np.ascontiguousarray(form.coeffs, dtype=float)
    return _bilinear_bracket(coeffs.tobytes(), coeffs.shape, form.norm_bound)


def scalar_multiplication() -> BilinearForm:
    """ℝ × ℝ → ℝ"""
    return BilinearForm(name="scalar", coeffs=np.ones((1, 1, 1)), norm_bound=1.0)


def scalar_vector(dim: int) -> BilinearForm:
    """ℝ × ℝᵐ → ℝᵐ: (c, v) ↦ c·v"""
    return BilinearForm(name=f"scalar_vector({dim})", coeffs=np.eye(dim)[np.newaxis], norm_bound=1.0)


def inner_product(dim: int) -> BilinearForm:
    """ℝᵐ × ℝᵐ → ℝ"""
    return BilinearForm(name=f"inner({dim})", coeffs=np.eye(dim)[:, :, np.newaxis], norm_bound=1.0)


def matrix_product(dim: int) -> BilinearForm:
    """Умножение d×d матриц, хранимых как векторы ℝ^{d²} (построчно); ||AB||_F <= ||A||_F ||B||_F"""
    coeffs = np.zeros((dim,) * 6)
    for i in range(dim):
        for j in range(dim):
            for k in range(dim):
                coeffs[i, j, j, k, i, k] = 1.0
    return BilinearForm(name=f"matmul({dim})", coeffs=coeffs.reshape(dim * dim, dim * dim, dim * dim),
                        norm_bound=1.0)


def commutator_form(dim: int) -> BilinearForm:
    """Коммутатор [A, B] = AB - BA на ℝ^{d²}; ||[A, B]||_F <= 2 ||A||_F ||B||_F"""
    product = matrix_product(dim).coeffs
    coeffs = product - np.transpose(product, (1, 0, 2))
    return BilinearForm(name=f"commutator({dim})", coeffs=coeffs, norm_bound=2.0)


def cross_product() -> BilinearForm:
    """Векторное произведение в ℝ³"""
    coeffs = np.zeros((3, 3, 3))
    for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        coeffs[i, j, k] = 1.0
        coeffs[j, i, k] = -1.0
    return BilinearForm(name="cross", coeffs=coeffs, norm_bound=1.0)


def star_one(form: BilinearForm, value: np.ndarray, linear: np.ndarray) -> np.ndarray:
    """
    z *₁ A: v ↦ z • A v для z ∈ Z₁, A ∈ L(X, Z₂) (тензор (n, m₂))

    Returns:
        np.ndarray: Линейное отображение X → Z как тензор (n, m)
    """
    return np.einsum("p,iq,pqm->im", value, linear, form.coeffs)


def star_two(form: BilinearForm, linear: np.ndarray, value: np.ndarray) -> np.ndarray:
    """A *₂ z: v ↦ A v • z для A ∈ L(X, Z₁) (тензор (n, m₁)), z ∈ Z₂"""
    return np.einsum("ip,q,pqm->im", linear, value, form.coeffs)


class ProductJet(JetFunction):
    """Поточечное произведение γ₁ • γ₂ с производными по общему правилу Лейбница"""

    def __init__(self, first: JetFunction, second: JetFunction, form: BilinearForm):
        if first.in_dim != second.in_dim:
            raise DimensionMismatch(f"Разные области определения: n₁ = {first.in_dim}, n₂ = {second.in_dim}")
        if first.out_dim != form.first_dim or second.out_dim != form.second_dim:
            raise DimensionMismatch(f"Размерности ({first.out_dim}, {second.out_dim}) не согласованы "
                                    f"с формой {form.name} ({form.first_dim}, {form.second_dim})")
        self.first = first
        self.second = second
        self.form = form
        self.in_dim = first.in_dim
        self.out_dim = form.out_dim
        orders = [order for order in (first.max_order, second.max_order) if order is not None]
        self.max_order = min(orders) if orders else None

    def derivatives_batch(self, points, order: int) -> np.ndarray:
        self.check_order(order)
        points = np.asarray(points, dtype=float).reshape(-1, self.in_dim)
        count = len(points)
        result = np.zeros((count,) + (self.in_dim,) * order + (self.out_dim,))
        for i in range(order + 1):
            left = self.first.derivatives_batch(points, i).reshape(count, -1, self.form.first_dim)
            right = self.second.derivatives_batch(points, order - i).reshape(count, -1, self.form.second_dim)
            term = np.einsum("nip,njq,pqm->nijm", left, right, self.form.coeffs)
            result += math.comb(order, i) * term.reshape(result.shape)
        return symmetrize(result, order)

    def describe(self) -> str:
        return f"({self.first.describe()}) {self.form.name} ({self.second.describe()})"


def pointwise_product(first: JetFunction, second: JetFunction, form: BilinearForm) -> ProductJet:
    """
    Произведение x ↦ γ₁(x) • γ₂(x)

    Args:
        first (JetFunction): γ₁ со значениями в ℝ^{m₁}
        second (JetFunction): γ₂ со значениями в ℝ^{m₂}
        form (BilinearForm): •

    Returns:
        ProductJet: max_order = минимум порядков сомножителей

    Raises:
        DimensionMismatch: размерности не согласованы
    """
    return ProductJet(first, second, form)


def polynomial_product(first: Polynomial, second: Polynomial, form: BilinearForm) -> Polynomial:
    """Раскрытие произведения полиномов по однородным частям"""
    dim = first.in_dim
    degree = first.degree + second.degree
    parts = []
    for total in range(degree + 1):
        tensor = np.zeros((dim,) * total + (form.out_dim,))
        for i in range(max(0, total - second.degree), min(total, first.degree) + 1):
            left = first.parts[i].coeffs.reshape(-1, form.first_dim)
            right = second.parts[total - i].coeffs.reshape(-1, form.second_dim)
            tensor += np.einsum("ip,jq,pqm->ijm", left, right, form.coeffs).reshape(tensor.shape)
        parts.append(SymMultilinearMap(coeffs=symmetrize(tensor, total), in_dim=dim))
    return Polynomial(parts=tuple(parts))


@dataclass(frozen=True)
class ProductConstants:
    """D_k и C_k для k = 0…k_max на фиксированной области"""
    domain: Domain
    inclusion: tuple
    product: tuple

    @property
    def k_max(self) -> int:
        return len(self.product) - 1

    def rows(self) -> List[Dict[str, Any]]:
        return [{"k": k, "D_k": self.inclusion[k], "C_k": self.product[k]} for k in range(len(self.product))]


@lru_cache(maxsize=16)
def product_constants(domain: Domain, k_max: int = PRODUCT_CONFIG["k_max"]) -> ProductConstants:
    """
    Рекурсия C₀ = 2, C_{k+1} = (2D_k + 2)·C_k до k_max включительно

    Args:
        domain (Domain): Область Ω с diam Ω <= 1
        k_max (int): Наибольший k

    Returns:
        ProductConstants: Константы D_0…D_{k_max}, C_0…C_{k_max}
    """
    inclusion = tuple(inclusion_constant_Dk(k, domain) for k in range(k_max + 1))
    product = [2.0]
    for k in range(k_max):
        product.append((2.0 * inclusion[k] + 2.0) * product[k])
    logger.debug(f"C_k для {domain.describe()}: {[round(c, 6) for c in product]}")
    return ProductConstants(domain=domain, inclusion=inclusion, product=tuple(product))


def product_constant(k: int, domain: Domain) -> float:
    """C_k из рекурсии; не зависит от s и Z"""
    return product_constants(domain, max(k, PRODUCT_CONFIG["k_max"])).product[k]


class ProductVerdict(NamedTuple):
    """Результат проверки неравенства для произведения"""
    lhs: float
    rhs: float
    passed: bool

    @property
    def margin(self) -> float:
        return self.rhs - self.lhs


class ProductProfiles(NamedTuple):
    """Профили γ₁, γ₂ и γ₁ • γ₂ на общей выборке; переиспользуются для всех (k, s)"""
    product: HolderProfile
    first: HolderProfile
    second: HolderProfile
    form: BilinearForm

    @classmethod
    def build(cls, first: JetFunction, second: JetFunction, form: BilinearForm, samples: SampleSet,
              first_profile: Optional[HolderProfile] = None,
              second_profile: Optional[HolderProfile] = None) -> 'ProductProfiles':
        """Профили сомножителей можно передать готовыми (из общего кэша набора)"""
        return cls(product=HolderProfile(pointwise_product(first, second, form), samples),
                   first=first_profile or HolderProfile(first, samples),
                   second=second_profile or HolderProfile(second, samples), form=form)

    def verdict(self, index: HolderIndex, domain: Domain, tol: float = TOLERANCES["inequality"]) -> ProductVerdict:
        lhs = self.product.norm(index).total
        rhs = (product_constant(index.k, domain) * self.form.op_norm_bracket().upper
               * self.first.norm(index).total * self.second.norm(index).total)
        return ProductVerdict(lhs=lhs, rhs=rhs, passed=lhs <= rhs * (1.0 + tol))

    def split(self, s: float, tol: float = TOLERANCES["inequality"]) -> ProductVerdict:
        """p_{(0,s)}(γ₁ • γ₂) <= ||•||_op·(||γ₁||∞ p_{(0,s)}(γ₂) + p_{(0,s)}(γ₁) ||γ₂||∞)"""
        index = HolderIndex(0, s)
        lhs = self.product.seminorm(index)
        rhs = self.form.op_norm_bracket().upper * (self.first.sup_norm() * self.second.seminorm(index)
                                                   + self.first.seminorm(index) * self.second.sup_norm())
        return ProductVerdict(lhs=lhs, rhs=rhs, passed=lhs <= rhs * (1.0 + tol))


def product_inequality_check(first: JetFunction, second: JetFunction, form: BilinearForm,
                             index: HolderIndex, domain: Domain, plan: SamplePlan,
                             tol: float = TOLERANCES["inequality"],
                             samples: Optional[SampleSet] = None) -> ProductVerdict:
    """
    ||γ₁ • γ₂||_{(k,s)} <= C_k · ||•||_op · ||γ₁||_{(k,s)} · ||γ₂||_{(k,s)} на общей выборке

    Правая часть использует верхнюю оценку ||•||_op.

    Args:
        first, second (JetFunction): Сомножители
        form (BilinearForm): Произведение •
        index (HolderIndex): (k, s)
        domain (Domain): Область Ω
        plan (SamplePlan): План выборки
        tol (float): Мультипликативный допуск
        samples (SampleSet): Готовая выборка (иначе строится по плану)

    Returns:
        ProductVerdict: lhs, rhs и признак lhs <= rhs·(1 + tol)
    """
    samples = samples or build_sample_set(domain, plan)
    profiles = ProductProfiles.build(first, second, form, samples)
    return profiles.verdict(index, domain, tol)


def seminorm_split_check(first: JetFunction, second: JetFunction, form: BilinearForm, s: float,
                         samples: SampleSet, tol: float = TOLERANCES["inequality"]) -> ProductVerdict:
    """
    p_{(0,s)}(γ₁ • γ₂) <= ||•||_op·(||γ₁||∞ p_{(0,s)}(γ₂) + p_{(0,s)}(γ₁) ||γ₂||∞)

    На общих парах неравенство выполняется для каждой пары точно.
    """
    return ProductProfiles.build(first, second, form, samples).split(s, tol)
