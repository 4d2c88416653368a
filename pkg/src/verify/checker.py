"""
Проверка неравенств с мультипликативным допуском и запись результатов
"""

import logging
import math
from typing import Any, Dict, List, NamedTuple, Optional

from src.config import TOLERANCES

logger = logging.getLogger(__name__)

# Утверждения, которые проверяют записи отчёта (формулировка с формулой неравенства)
ANCHORS = {
    "jet_consistency": "Производная Фреше: (γ^{(j)}(x + hv) - γ^{(j)}(x))/h → γ^{(j+1)}(x)(v, …) при h → 0",
    "taylor_identity": "Формула Тейлора с интегральным остатком: γ(x₀ + v) = Σ_{j<k} γ^{(j)}(x₀)v^j/j! + R_k",
    "taylor_forms": "Две формы интегрального остатка отличаются на γ^{(k)}(x₀)v^k/k!",
    "taylor_polynomial_exact": "Остаток Тейлора полинома степени <= k равен нулю",
    "frechet_remainder": "Остаток первого порядка: ||γ(x+v) - γ(x) - γ'(x)v|| <= ||v||·∫₀¹ ||γ'(x+tv) - γ'(x)|| dt",
    "lagrange_vandermonde": "Коэффициенты λ_{μ,j} базиса Лагранжа = обратная матрица Вандермонда",
    "lagrange_delta": "Базис Лагранжа: Λ_μ(ν) = δ_{μν} на узлах F",
    "interp_exactness": "Однородные части γ_j(v) = Σ_μ λ_{μ,j}·γ(μv) для полинома степени <= k",
    "interp_bound": "||γ_j(v)|| <= Σ_μ |λ_{μ,j}|·sup ||γ|| на единичном шаре",
    "sup_norm": "Равномерная норма: ||γ||∞ = sup_x ||γ(x)||",
    "holder_seminorm": "Полунорма Гёльдера: p_{(k,s)}(γ) = sup_{x≠y} ||γ^{(k)}(x) - γ^{(k)}(y)|| / ||x - y||^s",
    "holder_norm": "Норма Гёльдера: ||γ||_{(k,s)} = ||γ||∞ + p_{(k,s)}(γ)",
    "isometry": "p_{(k,1)}(γ) = p_{(k+1,0)}(γ) на выпуклой области: BC^{k+1,0} ≅ BC^{k,1}",
    "inclusion_exponent": "Вложение по показателю: p_{(k,s₁)} <= diam^{s₂-s₁}·p_{(k,s₂)} при s₁ < s₂",
    "point_derivative": "Оценка в точке: ||γ^{(k)}(x₀)||_op <= C₄·||γ||_{(k,s)}",
    "inclusion_k0": "Вложение BC^{k,s} → BC^{k,0}: ||γ||_{(k,0)} <= (1 + C₄)·||γ||_{(k,s)}",
    "inclusion_Dk": "Вложение BC^{k+1,s} → BC^{k,s}: ||γ||_{(k,s)} <= D_k·||γ||_{(k+1,s)}",
    "inclusion_chain": "Вложение BC^{l,t} → BC^{k,s} при k + s < l + t с явной константой",
    "embedding": "Вложение через производную: ||γ||_{(k+1,s)} <= ||γ||∞ + ||γ'||_{(k,s)} <= ||γ||_{(k+1,s)} + ||γ||_{(1,0)}",
    "log_convexity": "Логарифмическая выпуклость: p_{(0,t)} <= p_{(0,s)}^λ·p_{(0,u)}^{1-λ}, t = λs + (1-λ)u",
    "log_convexity_norm": "Выпуклость норм: ||γ||_{(0,t)} <= 2·||γ||_{(0,s)}^λ·||γ||_{(0,u)}^{1-λ}",
    "unit_ball": "На единичном шаре BC^{k,u}: p_{(k,t)}(γ) <= p_{(k,s)}(γ)^λ",
    "product_constant": "Константы произведений: C₀ = 2, C_{k+1} = (2D_k + 2)·C_k",
    "product": "Произведение: ||γ₁ • γ₂||_{(k,s)} <= C_k·||•||_op·||γ₁||_{(k,s)}·||γ₂||_{(k,s)}",
    "product_split": "Разбиение полунормы произведения: p_{(0,s)}(γ₁ • γ₂) <= ||•||_op·(||γ₁||∞·p_{(0,s)}(γ₂) + p_{(0,s)}(γ₁)·||γ₂||∞)",
    "star_operators": "Операторы правила Лейбница: ||z *₁ A||_op, ||A *₂ z||_op <= ||•||_op·||z||·||A||",
    "bracket": "Поточечная скобка Ли: ||[γ₁, γ₂]||_{(k,s)} <= C_k·||[·,·]||_op·||γ₁||_{(k,s)}·||γ₂||_{(k,s)}",
    "compatible_norm": "Согласованная норма алгебры после масштабирования: ||[x, y]||' <= ||x||'·||y||'/C_k",
    "bch_fidelity": "Ряд БКХ: exp(x)·exp(y) = exp(H(x, y)) в области сходимости",
    "bch_nilpotent": "Для двухступенчато нильпотентной алгебры H(x, y) = x + y + [x, y]/2 точно",
    "bch_degree_two": "Усечение БКХ второго порядка равно x + y + [x, y]/2",
    "exp_log": "Главный логарифм обращает экспоненту вблизи нуля: log(exp x) = x",
    "rotation": "Экспонента генератора so(3) - поворот на угол θ",
    "local_inverse": "Exp: BC^{k,s}(Ω, 𝔤) → BC^{k,s}(Ω, G) - локальный диффеоморфизм в нуле",
    "group_axioms": "Поточечная групповая структура слов: единица, обратный, ассоциативность",
    "generator_power": "exp(γ) = exp(γ/n)^n поточечно",
    "homomorphism": "Поточечное умножение по БКХ совпадает с произведением экспонент",
    "chain_steps": "Убывающая последовательность t_n = s + (1 - s)/n → s",
    "chain_monotone": "Нормы ||γ||_{(k,t_n)} не возрастают вдоль цепочки вложений",
    "chain_bonding": "Отображения связи цепочки групп BC^{k,t_n}(Ω, G) - включения",
    "suite_error": "Набор проверок завершился исключением",
}


class CheckRecord(NamedTuple):
    """
    Результат одной проверки
    """
    check_id: str           # Уникальный идентификатор проверки
    suite: str              # Набор проверок
    anchor: str             # Проверяемое утверждение
    lhs: Optional[float]    # Левая часть
    rhs: Optional[float]    # Правая часть (с учётом допуска)
    margin: Optional[float] # rhs - lhs
    passed: bool
    message: str

    def to_dict(self) -> Dict[str, Any]:
        return self._asdict()


def _clean(value: Optional[float]) -> Optional[float]:
    if value is None:
        return None
    value = float(value)
    return value if math.isfinite(value) else None


class InequalityChecker:
    """
    Сборщик результатов проверок одного набора

    Все проверки сводятся к виду lhs <= rhs: для неравенств rhs умножается
    на (1 + tol), для приближённых равенств lhs - расхождение, rhs - допуск.
    """

    def __init__(self, suite: str, tolerance: float = TOLERANCES["inequality"]):
        """
        Args:
            suite (str): Имя набора проверок
            tolerance (float): Мультипликативный допуск неравенств
        """
        self.suite = suite
        self.tolerance = tolerance
        self.records: List[CheckRecord] = []
        logger.debug(f"Инициализирован проверяльщик набора {suite}, допуск {tolerance:g}")

    def _anchor(self, anchor_key: str) -> str:
        return ANCHORS.get(anchor_key, anchor_key)

    def _add(self, check_id: str, anchor_key: str, lhs: Optional[float], rhs: Optional[float],
             passed: bool, message: str) -> CheckRecord:
        lhs, rhs = _clean(lhs), _clean(rhs)
        margin = rhs - lhs if lhs is not None and rhs is not None else None
        record = CheckRecord(check_id=f"{self.suite}/{check_id}", suite=self.suite,
                             anchor=self._anchor(anchor_key), lhs=lhs, rhs=rhs, margin=margin,
                             passed=bool(passed), message=message)
        if not record.passed:
            logger.warning(f"❌ {record.check_id}: {message}")
        self.records.append(record)
        return record

    def check_le(self, check_id: str, anchor_key: str, lhs: float, rhs: float,
                 tol: Optional[float] = None) -> CheckRecord:
        """
        lhs <= rhs·(1 + tol)

        Args:
            check_id (str): Идентификатор внутри набора
            anchor_key (str): Ключ утверждения из ANCHORS
            lhs (float): Левая часть
            rhs (float): Правая часть
            tol (float): Допуск (по умолчанию допуск набора)

        Returns:
            CheckRecord: Запись результата
        """
        tol = self.tolerance if tol is None else tol
        bound = rhs * (1.0 + tol) if rhs >= 0 else rhs * (1.0 - tol)
        passed = bool(math.isfinite(lhs) and math.isfinite(bound) and lhs <= bound)
        return self._add(check_id, anchor_key, lhs, bound, passed, f"{lhs:.6g} <= {bound:.6g}")

    def check_close(self, check_id: str, anchor_key: str, value: float, reference: float,
                    tol: float, relative: bool = False) -> CheckRecord:
        """
        |value - reference| <= tol (или tol·|reference| при relative)
        """
        deviation = abs(value - reference)
        bound = tol * abs(reference) if relative else tol
        passed = bool(math.isfinite(deviation) and deviation <= bound)
        return self._add(check_id, anchor_key, deviation, bound, passed,
                         f"|{value:.6g} - {reference:.6g}| = {deviation:.3g} (допуск {bound:.3g})")

    def check_small(self, check_id: str, anchor_key: str, deviation: float, tol: float) -> CheckRecord:
        """Расхождение deviation >= 0 не превышает tol"""
        passed = bool(math.isfinite(deviation) and deviation <= tol)
        return self._add(check_id, anchor_key, deviation, tol, passed, f"расхождение {deviation:.3g} (допуск {tol:.3g})")

    def record_failure(self, check_id: str, anchor_key: str, error: Exception) -> CheckRecord:
        """Исключение внутри проверки записывается как проваленная проверка"""
        logger.error(f"Ошибка в проверке {self.suite}/{check_id}: {error}")
        return self._add(check_id, anchor_key, None, None, False, f"{type(error).__name__}: {error}")

    def get_statistics(self) -> Dict[str, Any]:
        """
        Сводка по записям набора

        Returns:
            Dict: Число проверок, пройденных, проваленных и наименьший запас
        """
        margins = [record.margin for record in self.records if record.margin is not None]
        failed = sum(1 for record in self.records if not record.passed)
        return {
            "total": len(self.records),
            "passed": len(self.records) - failed,
            "failed": failed,
            "min_margin": min(margins) if margins else None,
        }
