"""
Наборы проверок: каждый набор проходит по корпусу функций на общей выборке
и возвращает список записей CheckRecord

Исключения внутри одной проверки не прерывают набор: они записываются как
проваленные проверки, и набор переходит к следующей функции.
"""

import logging
import math
import threading
from dataclasses import asdict, dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

from src.config import (CHAIN_CONFIG, CONVEXITY_TRIPLES, CORPUS_CONFIG, DOMAIN_CONFIG, EXPONENT_PAIRS,
                        HOLDER_INDICES, INCLUSION_PAIRS, INTERP_CHECK_CONFIG, LIE_ALGEBRAS,
                        LIE_CHECK_CONFIG, NORMS_CHECK_CONFIG, PRODUCT_CONFIG, REPORT_CONFIG,
                        SAMPLE_PLAN_CONFIG, SUITES, TOLERANCES)
from src.functions.corpus import CorpusEntry, corpus_from_config, random_algebra_polynomial, random_polynomial
from src.functions.jets import (JetFunction, Polynomial, ScaledJet, envelope_jet, jet_consistency_defect, poly_jet,
                               power_family)
from src.functions.multilinear import contract_diagonal
from src.geometry.domain import Domain, SamplePlan, build_sample_set, make_domain, unit_ball_points
from src.holder.constants import (inclusion_chain_constant, inclusion_constant_Dk, lagrange_table,
                                  lemma24_constants, lemma24b_constant)
from src.holder.norms import HolderIndex, HolderProfile
from src.interp.lagrange import (default_nodes, extract_homogeneous, lagrange_coefficients,
                                 lagrange_coefficients_vandermonde, make_nodes)
from src.interp.taylor import (RemainderForm, frechet_remainder_estimate, taylor_expansion,
                               taylor_remainder)
from src.liegroup.algebra import as_matrix, make_algebra, rescale_compatible
from src.liegroup.bch import BCHConfig, bch_truncated
from src.liegroup.group import (chain_norms, chain_steps, evaluate_batch, exp_map, group_inv, group_mul,
                                identity_word, local_normal_form, normal_form_chain, word_power)
from src.liegroup.matfuncs import matrix_exp, matrix_log
from src.product.leibniz import (ProductProfiles, commutator_form, cross_product, inner_product,
                                 matrix_product, product_constants, scalar_vector, star_one, star_two)
from src.utils.errors import ConfigInvalid, HolderToolkitError
from src.verify.checker import CheckRecord, InequalityChecker

logger = logging.getLogger(__name__)


@dataclass
class SuiteConfig:
    """
    Конфигурация запуска: значения по умолчанию из src/config.py
    """
    domain: Dict[str, Any] = field(default_factory=lambda: dict(DOMAIN_CONFIG))
    plan: Dict[str, Any] = field(default_factory=lambda: dict(SAMPLE_PLAN_CONFIG))
    corpus: Dict[str, Any] = field(default_factory=lambda: {key: value for key, value in CORPUS_CONFIG.items()
                                                            if key != "seed"})
    indices: List[Tuple[int, float]] = field(default_factory=lambda: list(HOLDER_INDICES))
    triples: List[Tuple[float, float, float]] = field(default_factory=lambda: list(CONVEXITY_TRIPLES))
    suites: List[str] = field(default_factory=lambda: list(SUITES))
    tolerances: Dict[str, float] = field(default_factory=lambda: dict(TOLERANCES))
    k_max: int = PRODUCT_CONFIG["k_max"]
    seed: int = CORPUS_CONFIG["seed"]
    product_pairs: int = PRODUCT_CONFIG["pair_count"]
    chain_steps: int = CHAIN_CONFIG["steps"]
    chain_s_values: List[float] = field(default_factory=lambda: list(CHAIN_CONFIG["s_values"]))
    output: str = REPORT_CONFIG["path"]
    csv_path: Optional[str] = REPORT_CONFIG["csv_path"]

    @classmethod
    def from_mapping(cls, mapping: Dict[str, Any]) -> 'SuiteConfig':
        """
        Конфигурация из словаря (JSON/TOML): словари сливаются с умолчаниями,
        остальные поля заменяются

        Raises:
            ConfigInvalid: неизвестный ключ или недопустимое значение
        """
        config = cls()
        for key, value in mapping.items():
            if key not in cls.__dataclass_fields__:
                raise ConfigInvalid(f"Неизвестный параметр конфигурации: {key!r}")
            current = getattr(config, key)
            if isinstance(current, dict):
                if not isinstance(value, dict):
                    raise ConfigInvalid(f"Параметр {key!r} должен быть словарём")
                value = {**current, **value}
            setattr(config, key, value)
        config.validate()
        return config

    def validate(self):
        """
        Raises:
            ConfigInvalid: недопустимые наборы, индексы, тройки, область или план
        """
        unknown = [name for name in self.suites if name not in SUITES]
        if unknown:
            raise ConfigInvalid(f"Неизвестные наборы проверок: {unknown}; доступны {SUITES}")
        try:
            self.indices = [(int(k), float(s)) for k, s in self.indices]
            for k, s in self.indices:
                HolderIndex(k, s)
            self.triples = [(float(s), float(u), float(lam)) for s, u, lam in self.triples]
            self.chain_s_values = [float(s) for s in self.chain_s_values]
            self.k_max = int(self.k_max)
            self.seed = int(self.seed)
            self.product_pairs = int(self.product_pairs)
            self.chain_steps = int(self.chain_steps)
            make_domain(self.domain)
            SamplePlan.from_config(self.plan)
        except (TypeError, ValueError, KeyError) as e:
            raise ConfigInvalid(f"Некорректная конфигурация: {e}") from e

        for s, u, lam in self.triples:
            if not (0.0 < s < u <= 1.0 and 0.0 < lam < 1.0):
                raise ConfigInvalid(f"Тройка (s, u, λ) = ({s}, {u}, {lam}) вне 0 < s < u <= 1, 0 < λ < 1")
        if self.k_max < 0:
            raise ConfigInvalid(f"k_max должно быть >= 0, получено {self.k_max}")
        if self.seed < 0:
            raise ConfigInvalid(f"Зерно должно быть неотрицательным, получено {self.seed}")
        if self.chain_steps < 2 or any(not 0.0 <= s < 1.0 for s in self.chain_s_values):
            raise ConfigInvalid("Цепочка требует steps >= 2 и s ∈ [0, 1)")
        for key, value in self.tolerances.items():
            if not isinstance(value, (int, float)) or value < 0:
                raise ConfigInvalid(f"Допуск {key!r} должен быть неотрицательным числом, получено {value!r}")

    def to_dict(self) -> Dict[str, Any]:
        # Пути вывода не входят в хэш: отчёт зависит только от параметров проверки
        payload = {key: value for key, value in asdict(self).items() if key not in ("output", "csv_path")}
        payload["indices"] = [list(index) for index in self.indices]
        payload["triples"] = [list(triple) for triple in self.triples]
        return payload


class SuiteContext:
    """Общие для всех наборов область, выборка и корпус"""

    def __init__(self, config: SuiteConfig):
        self.config = config
        self.domain = make_domain(config.domain)
        self.plan = SamplePlan.from_config(config.plan)
        self.samples = build_sample_set(self.domain, self.plan)
        # Пары строятся до запуска наборов в потоках
        self.samples.pairs
        self.corpus: List[CorpusEntry] = corpus_from_config({**config.corpus, "seed": config.seed},
                                                            in_dim=self.domain.dim)
        self.indices = [HolderIndex(k, s) for k, s in config.indices]
        self._profiles: Dict[str, HolderProfile] = {}
        self._profiles_lock = threading.Lock()
        logger.info(f"📐 Область {self.domain.describe()}, {len(self.samples.points)} точек, "
                    f"{len(self.samples.pairs.distances)} пар, корпус {len(self.corpus)} функций")

    def tol(self, key: str) -> float:
        return float(self.config.tolerances.get(key, TOLERANCES[key]))

    def rng(self, suite: str) -> np.random.Generator:
        return np.random.default_rng([self.config.seed, SUITES.index(suite)])

    def checker(self, suite: str) -> InequalityChecker:
        return InequalityChecker(suite, self.tol("inequality"))

    def profile(self, function_id: str, jet: JetFunction) -> HolderProfile:
        """Общий для всех наборов профиль функции корпуса на выборке контекста"""
        with self._profiles_lock:
            if function_id not in self._profiles:
                self._profiles[function_id] = HolderProfile(jet, self.samples)
            return self._profiles[function_id]


def _ball_vector(rng: np.random.Generator, dim: int, radius: float) -> np.ndarray:
    direction = rng.standard_normal(dim)
    return direction / np.linalg.norm(direction) * radius * (1.0 - rng.random())


def _unit_interval() -> Domain:
    return make_domain({"shape": "box", "lower": [0.0], "upper": [1.0]})


def run_taylor(ctx: SuiteContext) -> List[CheckRecord]:
    """Формула Тейлора, формы остатка, остаток Фреше и согласованность производных"""
    checker = ctx.checker("taylor")
    rng = ctx.rng("taylor")
    center = ctx.domain.incenter
    radius = 0.4 * ctx.domain.inradius
    tol = ctx.tol("taylor")

    for entry in ctx.corpus:
        jet = entry.jet
        x0 = center + _ball_vector(rng, ctx.domain.dim, radius)
        v = _ball_vector(rng, ctx.domain.dim, radius)
        try:
            exact = jet(x0 + v)
            scale = 1.0 + float(np.linalg.norm(exact))
            for k in (1, 2, 3):
                for form in RemainderForm:
                    error = float(np.linalg.norm(taylor_expansion(jet, x0, v, k, form) - exact))
                    checker.check_small(f"{entry.function_id}/identity/k={k}/form={form.value}",
                                        "taylor_identity", error, tol * scale)

                remainder_a = taylor_remainder(jet, x0, v, k, RemainderForm.A, domain=ctx.domain)
                remainder_b = taylor_remainder(jet, x0, v, k, RemainderForm.B, domain=ctx.domain)
                top = contract_diagonal(jet.derivative(x0, k).coeffs, v, k) / math.factorial(k)
                split = float(np.linalg.norm(remainder_a - remainder_b - top))
                checker.check_small(f"{entry.function_id}/forms/k={k}", "taylor_forms", split, tol * scale)

                if entry.kind == "polynomial" and jet.polynomial.degree <= k:
                    checker.check_small(f"{entry.function_id}/polynomial/k={k}", "taylor_polynomial_exact",
                                        float(np.linalg.norm(remainder_b)), ctx.tol("taylor_polynomial"))

            frechet = frechet_remainder_estimate(jet, x0, v, domain=ctx.domain)
            checker.check_le(f"{entry.function_id}/frechet", "frechet_remainder",
                             frechet.lhs, frechet.rhs + 1e-15 * scale)

            for order in range(3):
                coarse = jet_consistency_defect(jet, x0, v, order, 1e-3)
                fine = jet_consistency_defect(jet, x0, v, order, 1e-4)
                checker.check_le(f"{entry.function_id}/consistency/j={order}", "jet_consistency",
                                 fine, 0.2 * coarse + 1e-8, tol=0.0)
        except Exception as e:
            checker.record_failure(f"{entry.function_id}/error", "taylor_identity", e)

    return checker.records


def run_interp(ctx: SuiteContext) -> List[CheckRecord]:
    """Коэффициенты Лагранжа, восстановление коэффициентов и оценка однородных частей"""
    checker = ctx.checker("interp")
    rng = ctx.rng("interp")
    tol = ctx.tol("interp")
    max_degree = INTERP_CHECK_CONFIG["max_degree"]

    for k in range(max(ctx.config.k_max, max_degree) + 1):
        nodes = default_nodes(k)
        coefficients = lagrange_coefficients(nodes)
        scale = max(1.0, float(np.abs(coefficients).max()))
        deviation = float(np.abs(coefficients - lagrange_coefficients_vandermonde(nodes)).max())
        checker.check_small(f"k={k}/vandermonde", "lagrange_vandermonde", deviation, tol * scale)
        basis = make_nodes(nodes).basis_values(nodes)
        checker.check_small(f"k={k}/delta", "lagrange_delta",
                            float(np.abs(basis - np.eye(k + 1)).max()), tol * scale)

    # Скалярные полиномы степени <= max_degree по узлам степени max_degree
    nodes = default_nodes(max_degree)
    for index in range(len(ctx.corpus)):
        degree = index % (max_degree + 1)
        coefficients = np.zeros(max_degree + 1)
        coefficients[:degree + 1] = rng.uniform(-1.0, 1.0, size=degree + 1)
        values = np.polynomial.polynomial.polyval(nodes, coefficients)
        recovered = extract_homogeneous(values, nodes)
        checker.check_small(f"recovery/{index:04d}", "interp_exactness",
                            float(np.abs(recovered - coefficients).max()), tol)

    # ||γ_j(v)|| <= Σ_μ |λ_{μ,j}|·max ||γ||; справа точки шара вместе с μv
    dim = ctx.domain.dim
    ball = unit_ball_points(dim, INTERP_CHECK_CONFIG["unit_ball_points_per_axis"])
    for k in range(1, max_degree + 1):
        nodes = default_nodes(k)
        matrix = lagrange_coefficients(nodes)
        support = np.concatenate([ball] + [mu * ball for mu in nodes], axis=0)
        for index in range(INTERP_CHECK_CONFIG["polynomials_per_degree"]):
            polynomial = random_polynomial(rng, dim, CORPUS_CONFIG["out_dim"], k)
            sup = float(np.linalg.norm(poly_jet(polynomial).values_batch(support), axis=1).max())
            for j in range(k + 1):
                lhs = max(float(np.linalg.norm(polynomial.homogeneous_value(j, v))) for v in ball)
                rhs = float(np.abs(matrix[:, j]).sum()) * sup
                checker.check_le(f"bound/k={k}/{index:02d}/j={j}", "interp_bound", lhs, rhs)

    return checker.records


def _line_polynomial(coefficients) -> Polynomial:
    return Polynomial.from_tensors([np.asarray(c, dtype=float).reshape((1,) * order + (1,))
                                    for order, c in enumerate(coefficients)], 1)


def run_norms(ctx: SuiteContext) -> List[CheckRecord]:
    """Эталонные значения оценок и совпадение p(k,1) с p(k+1,0) на плотной сетке"""
    checker = ctx.checker("norms")
    rng = ctx.rng("norms")
    sampling = ctx.tol("sampling")
    interval = _unit_interval()
    examples = build_sample_set(interval, SamplePlan.grid(NORMS_CHECK_CONFIG["example_points"]))

    constant = rng.uniform(-1.0, 1.0, size=CORPUS_CONFIG["out_dim"])
    constant_jet = poly_jet(Polynomial.constant(constant, ctx.domain.dim))
    constant_profile = HolderProfile(constant_jet, ctx.samples)
    checker.check_close("constant/sup", "sup_norm", constant_profile.sup_norm(),
                        float(np.linalg.norm(constant)), 1e-12)
    checker.check_small("constant/seminorm", "holder_seminorm",
                        constant_profile.seminorm(HolderIndex(0, 1.0)), 1e-12)

    covector = rng.uniform(-1.0, 1.0, size=ctx.domain.dim)
    linear = poly_jet(Polynomial.from_tensors([np.zeros(1), covector.reshape(-1, 1)], ctx.domain.dim))
    checker.check_close("linear/seminorm", "holder_seminorm",
                        HolderProfile(linear, ctx.samples).seminorm(HolderIndex(0, 1.0)),
                        float(np.linalg.norm(covector)), sampling, relative=True)

    identity = poly_jet(_line_polynomial([0.0, 1.0]))
    checker.check_close("identity/norm", "holder_norm",
                        HolderProfile(identity, examples).norm(HolderIndex(0, 1.0)).total, 2.0,
                        sampling, relative=True)

    root = envelope_jet(power_family(0.5), [1.0])
    checker.check_close("sqrt/seminorm", "holder_seminorm",
                        HolderProfile(root, examples).seminorm(HolderIndex(0, 0.5)), 1.0,
                        sampling, relative=True)

    dense = build_sample_set(interval, SamplePlan.grid(
        NORMS_CHECK_CONFIG["isometry_points"],
        max_pair_distance=NORMS_CHECK_CONFIG["isometry_pair_distance"]))
    for index in range(NORMS_CHECK_CONFIG["isometry_functions"]):
        cubic = poly_jet(random_polynomial(rng, 1, 1, 3))
        profile = HolderProfile(cubic, dense)
        for k in (0, 1):
            try:
                lipschitz = profile.seminorm(HolderIndex(k, 1.0))
                derivative = profile.seminorm(HolderIndex(k + 1, 0.0))
                checker.check_close(f"isometry/{index:02d}/k={k}", "isometry", lipschitz, derivative,
                                    ctx.tol("isometry"), relative=True)
            except Exception as e:
                checker.record_failure(f"isometry/{index:02d}/k={k}", "isometry", e)

    return checker.records


def run_inclusions(ctx: SuiteContext) -> List[CheckRecord]:
    """Вложения по показателю, оценка γ^{(k)}(x₀), вложения через D_k и вложение через производную"""
    checker = ctx.checker("inclusions")
    diameter = ctx.domain.diameter
    lemma = {(index.k, index.s): (lemma24_constants(index.k, index.s, ctx.domain),
                                  lemma24b_constant(index.k, index.s, ctx.domain))
             for index in ctx.indices if index.k >= 1 and index.s > 0.0}
    inclusion_pairs = [(HolderIndex(*target), HolderIndex(*source)) for target, source in INCLUSION_PAIRS]
    chain_constants = [inclusion_chain_constant(target, source, ctx.domain) for target, source in inclusion_pairs]
    dk = {k: inclusion_constant_Dk(k, ctx.domain) for k in (0, 1)}

    for entry in ctx.corpus:
        fid = entry.function_id
        try:
            profile = ctx.profile(fid, entry.jet)
            for k in (0, 1):
                for s1, s2 in EXPONENT_PAIRS:
                    lhs = profile.seminorm(HolderIndex(k, s1))
                    rhs = diameter ** (s2 - s1) * profile.seminorm(HolderIndex(k, s2))
                    checker.check_le(f"{fid}/exponent/k={k}/{s1:g}<{s2:g}", "inclusion_exponent", lhs, rhs)

            for (k, s), (constants, to_sup) in lemma.items():
                index = HolderIndex(k, s)
                norm = profile.norm(index).total
                checker.check_le(f"{fid}/point/{index.label()}", "point_derivative",
                                 profile.derivative_upper(constants.x0, k), constants.c4 * norm)
                checker.check_le(f"{fid}/k0/{index.label()}", "inclusion_k0",
                                 profile.norm(HolderIndex(k, 0.0)).total, to_sup * norm)

            for k in (0, 1):
                for s in (0.0, 0.5, 1.0):
                    checker.check_le(f"{fid}/D/k={k}/s={s:g}", "inclusion_Dk",
                                     profile.norm(HolderIndex(k, s)).total,
                                     dk[k] * profile.norm(HolderIndex(k + 1, s)).total)

            for (target, source), constant in zip(inclusion_pairs, chain_constants):
                checker.check_le(f"{fid}/chain/{target.label()}<{source.label()}", "inclusion_chain",
                                 profile.norm(target).total, constant * profile.norm(source).total)

            # ||γ||_{(k+1,s)} <= ||γ||∞ + ||γ'||_{(k,s)} <= ||γ||_{(k+1,s)} + ||γ||_{(1,0)}
            for index in ctx.indices:
                upper = HolderIndex(index.k + 1, index.s)
                middle = profile.sup_norm() + profile.norm(index, shift=1).total
                checker.check_le(f"{fid}/embedding/{index.label()}/lower", "embedding",
                                 profile.norm(upper).total, middle)
                checker.check_le(f"{fid}/embedding/{index.label()}/upper", "embedding",
                                 middle, profile.norm(upper).total + profile.norm(HolderIndex(1, 0.0)).total)
        except Exception as e:
            checker.record_failure(f"{fid}/error", "inclusion_exponent", e)

    return checker.records


def run_convexity(ctx: SuiteContext) -> List[CheckRecord]:
    """Логарифмическая выпуклость полунорм и норм, неравенство на единичном шаре"""
    checker = ctx.checker("convexity")

    for entry in ctx.corpus:
        fid = entry.function_id
        try:
            profile = ctx.profile(fid, entry.jet)
            for s, u, lam in ctx.config.triples:
                t = lam * s + (1.0 - lam) * u
                label = f"s={s:g},u={u:g},lam={lam:g}"
                seminorms = [profile.seminorm(HolderIndex(0, r)) for r in (t, s, u)]
                checker.check_le(f"{fid}/seminorm/{label}", "log_convexity",
                                 seminorms[0], seminorms[1] ** lam * seminorms[2] ** (1.0 - lam))
                norms = [profile.norm(HolderIndex(0, r)).total for r in (t, s, u)]
                checker.check_le(f"{fid}/norm/{label}", "log_convexity_norm",
                                 norms[0], 2.0 * norms[1] ** lam * norms[2] ** (1.0 - lam))

                # γ/||γ||_{(k,u)} лежит в единичном шаре; полунормы однородны
                for k in (0, 1):
                    total = profile.norm(HolderIndex(k, u)).total
                    if total == 0.0:
                        continue
                    checker.check_le(f"{fid}/unit_ball/k={k}/{label}", "unit_ball",
                                     profile.seminorm(HolderIndex(k, t)) / total,
                                     (profile.seminorm(HolderIndex(k, s)) / total) ** lam)
        except Exception as e:
            checker.record_failure(f"{fid}/error", "log_convexity", e)

    return checker.records


def _star_operator_checks(checker: InequalityChecker, rng: np.random.Generator, dim: int, count: int = 20):
    forms = [inner_product(2), matrix_product(2), commutator_form(2), cross_product(), scalar_vector(3)]
    for form in forms:
        bound = form.op_norm_bracket().upper
        for index in range(count):
            value = rng.standard_normal(form.first_dim)
            left, right = rng.standard_normal(dim), rng.standard_normal(form.second_dim)
            linear = np.outer(left, right)
            operator = star_one(form, value, linear)
            checker.check_le(f"star/{form.name}/one/{index:02d}", "star_operators",
                             float(np.linalg.norm(operator, 2)),
                             bound * float(np.linalg.norm(value)) * float(np.linalg.norm(left) * np.linalg.norm(right)))

            value = rng.standard_normal(form.second_dim)
            right = rng.standard_normal(form.first_dim)
            linear = np.outer(left, right)
            operator = star_two(form, linear, value)
            checker.check_le(f"star/{form.name}/two/{index:02d}", "star_operators",
                             float(np.linalg.norm(operator, 2)),
                             bound * float(np.linalg.norm(value)) * float(np.linalg.norm(left) * np.linalg.norm(right)))


def run_product(ctx: SuiteContext) -> List[CheckRecord]:
    """Неравенство для произведений с C_k, разбиение полунормы, операторы *₁, *₂ и скобка Ли"""
    checker = ctx.checker("product")
    rng = ctx.rng("product")
    constants = product_constants(ctx.domain, ctx.config.k_max)

    checker.check_small("constants/C_0", "product_constant", abs(constants.product[0] - 2.0), 0.0)
    for k in range(constants.k_max):
        expected = (2.0 * constants.inclusion[k] + 2.0) * constants.product[k]
        checker.check_close(f"constants/C_{k + 1}", "product_constant", constants.product[k + 1], expected,
                            1e-12, relative=True)
    for k, value in enumerate(constants.inclusion):
        checker.check_le(f"constants/D_{k}", "inclusion_Dk", 1.0, value, tol=0.0)

    count = min(ctx.config.product_pairs, len(ctx.corpus))
    for index in range(count):
        first, second = ctx.corpus[index], ctx.corpus[(index + 1) % len(ctx.corpus)]
        pair_id = f"{first.function_id}*{second.function_id}"
        try:
            form = inner_product(first.jet.out_dim)
            profiles = ProductProfiles.build(first.jet, second.jet, form, ctx.samples,
                                             first_profile=ctx.profile(first.function_id, first.jet),
                                             second_profile=ctx.profile(second.function_id, second.jet))
            for k in (0, 1, 2):
                for s in (0.0, 0.5, 1.0):
                    verdict = profiles.verdict(HolderIndex(k, s), ctx.domain, ctx.tol("inequality"))
                    checker.check_le(f"{pair_id}/k={k}/s={s:g}", "product", verdict.lhs, verdict.rhs)
            for s in (0.5, 1.0):
                verdict = profiles.split(s, ctx.tol("inequality"))
                checker.check_le(f"{pair_id}/split/s={s:g}", "product_split", verdict.lhs, verdict.rhs)
        except Exception as e:
            checker.record_failure(f"{pair_id}/error", "product", e)

    _star_operator_checks(checker, rng, ctx.domain.dim)

    for name in ("so3", "sl2", "heisenberg"):
        algebra = make_algebra(name)
        form = commutator_form(algebra.matrix_dim)
        for index in range(LIE_CHECK_CONFIG["bracket_pairs"]):
            jets = [poly_jet(random_algebra_polynomial(rng, algebra.basis, ctx.domain.dim, 2, 0.5)) for _ in range(2)]
            profiles = ProductProfiles.build(jets[0], jets[1], form, ctx.samples)
            for k in (0, 1):
                for s in (0.5, 1.0):
                    verdict = profiles.verdict(HolderIndex(k, s), ctx.domain, ctx.tol("inequality"))
                    checker.check_le(f"bracket/{name}/{index:02d}/k={k}/s={s:g}", "bracket",
                                     verdict.lhs, verdict.rhs)

    return checker.records


def run_bch(ctx: SuiteContext) -> List[CheckRecord]:
    """Ряд БКХ против матричной экспоненты, exp/log и совместимые нормы"""
    checker = ctx.checker("bch")
    rng = ctx.rng("bch")
    radius = LIE_CHECK_CONFIG["element_radius"]
    truncated = BCHConfig()
    second_order = BCHConfig(truncation_order=2)

    for name in ("so3", "sl2"):
        algebra = make_algebra(name)
        for index in range(LIE_CHECK_CONFIG["bch_pairs"]):
            x = algebra.random_element(rng, radius)
            y = algebra.random_element(rng, radius)
            try:
                z = bch_truncated(x, y, truncated)
                deviation = float(np.linalg.norm(matrix_exp(x) @ matrix_exp(y) - matrix_exp(z)))
                checker.check_small(f"fidelity/{name}/{index:03d}", "bch_fidelity", deviation, ctx.tol("bch"))
                quadratic = x + y + 0.5 * algebra.bracket(x, y)
                checker.check_small(f"degree_two/{name}/{index:03d}", "bch_degree_two",
                                    float(np.linalg.norm(bch_truncated(x, y, second_order) - quadratic)), 1e-14)
            except Exception as e:
                checker.record_failure(f"fidelity/{name}/{index:03d}", "bch_fidelity", e)

    heisenberg = make_algebra("heisenberg")
    for index in range(LIE_CHECK_CONFIG["bch_pairs"]):
        x = heisenberg.random_element(rng, radius)
        y = heisenberg.random_element(rng, radius)
        z = bch_truncated(x, y, second_order)
        deviation = float(np.linalg.norm(matrix_exp(x) @ matrix_exp(y) - matrix_exp(z)))
        checker.check_small(f"nilpotent/{index:03d}", "bch_nilpotent", deviation, ctx.tol("heisenberg"))

    for name in ("so3", "sl2", "heisenberg"):
        algebra = make_algebra(name)
        for index in range(10):
            x = algebra.random_element(rng, LIE_CHECK_CONFIG["log_radius"])
            checker.check_small(f"exp_log/{name}/{index:02d}", "exp_log",
                                float(np.linalg.norm(matrix_log(matrix_exp(x)) - x)), ctx.tol("log"))

    angle = 0.3
    rotation = np.array([[math.cos(angle), -math.sin(angle), 0.0],
                         [math.sin(angle), math.cos(angle), 0.0],
                         [0.0, 0.0, 1.0]])
    generator = make_algebra("so3").basis[2]
    checker.check_small("rotation", "rotation", float(np.linalg.norm(matrix_exp(angle * generator) - rotation)), 1e-14)

    # ||[x,y]||' <= (1/C_k)·||x||'·||y||' для c = 2·C_k
    constants = product_constants(ctx.domain, ctx.config.k_max)
    count = LIE_CHECK_CONFIG["compatibility_pairs"]
    for name in LIE_ALGEBRAS:
        algebra = make_algebra(name)
        x = algebra.combine(rng.standard_normal((count, algebra.dimension)))
        y = algebra.combine(rng.standard_normal((count, algebra.dimension)))
        brackets = x @ y - y @ x
        for k, product_constant in enumerate(constants.product):
            scaled = rescale_compatible(algebra, product_constant)
            norms = [scaled.scale * np.linalg.norm(value, axis=(1, 2)) for value in (x, y, brackets)]
            ratio = float(np.max(norms[2] * product_constant / (norms[0] * norms[1])))
            checker.check_le(f"compatible/{name}/k={k}", "compatible_norm", ratio, 1.0)

    return checker.records


def _algebra_functions(ctx: SuiteContext, rng: np.random.Generator, count: int) -> List[Tuple[str, Any]]:
    """Малые функции со значениями в алгебрах: max ||γ(x)||_F на выборке равен group_radius"""
    functions = []
    for index in range(count):
        name = LIE_ALGEBRAS[index % len(LIE_ALGEBRAS)]
        algebra = make_algebra(name)
        jet = poly_jet(random_algebra_polynomial(rng, algebra.basis, ctx.domain.dim, 2))
        sup = float(np.linalg.norm(jet.values_batch(ctx.samples.points), axis=1).max())
        if sup > 0.0:
            jet = ScaledJet(jet, LIE_CHECK_CONFIG["group_radius"] / sup)
        functions.append((f"{name}-{index:03d}", jet))
    return functions


def run_group(ctx: SuiteContext) -> List[CheckRecord]:
    """Exp как локальный диффеоморфизм, аксиомы группы, степени и гомоморфизм БКХ"""
    checker = ctx.checker("group")
    rng = ctx.rng("group")
    points = ctx.samples.points
    functions = _algebra_functions(ctx, rng, LIE_CHECK_CONFIG["group_functions"])
    index = HolderIndex(0, 0.5)
    tol = ctx.tol("group")
    power = LIE_CHECK_CONFIG["power"]

    for position, (fid, jet) in enumerate(functions):
        try:
            word = exp_map(jet)
            dim = word.matrix_dim
            identity = np.broadcast_to(np.eye(dim), (len(points), dim, dim))
            values = evaluate_batch(word, points)

            record = local_normal_form(word, index, BCHConfig(), ctx.domain, ctx.plan, samples=ctx.samples)
            expected = jet.values_batch(points).reshape(len(points), dim, dim)
            checker.check_small(f"{fid}/normal_form", "local_inverse",
                                float(np.abs(record.values - expected).max()), ctx.tol("log"))
            checker.check_small(f"{fid}/log", "local_inverse", record.defect, ctx.tol("log"))

            right = evaluate_batch(group_mul(word, group_inv(word)), points)
            left = evaluate_batch(group_mul(group_inv(word), word), points)
            checker.check_small(f"{fid}/inverse/right", "group_axioms", float(np.abs(right - identity).max()), tol)
            checker.check_small(f"{fid}/inverse/left", "group_axioms", float(np.abs(left - identity).max()), tol)
            unit = evaluate_batch(group_mul(identity_word(dim), word), points)
            checker.check_small(f"{fid}/identity", "group_axioms", float(np.abs(unit - values).max()), tol)

            root = exp_map(ScaledJet(jet, 1.0 / power))
            powered = evaluate_batch(word_power(root, power), points)
            checker.check_small(f"{fid}/power={power}", "generator_power", float(np.abs(powered - values).max()), tol)

            partner_id, partner = functions[(position + len(LIE_ALGEBRAS)) % len(functions)]
            if partner.out_dim == jet.out_dim:
                product = group_mul(word, exp_map(partner))
                third = group_mul(exp_map(partner), word)
                grouped = evaluate_batch(group_mul(product, word), points)
                regrouped = evaluate_batch(group_mul(word, third), points)
                checker.check_small(f"{fid}/associativity", "group_axioms",
                                    float(np.abs(grouped - regrouped).max()), tol)
                combined = local_normal_form(product, index, BCHConfig(), ctx.domain, ctx.plan, samples=ctx.samples)
                checker.check_small(f"{fid}/homomorphism/{partner_id}", "homomorphism",
                                    combined.defect, ctx.tol("normal_form"))
        except Exception as e:
            checker.record_failure(f"{fid}/error", "local_inverse", e)

    return checker.records


def run_chain(ctx: SuiteContext) -> List[CheckRecord]:
    """Невозрастание норм вдоль t_n = s + (1 - s)/n и отображения связи цепочки групп"""
    checker = ctx.checker("chain")
    rng = ctx.rng("chain")
    steps = ctx.config.chain_steps

    for s in ctx.config.chain_s_values:
        expected = np.array([s + (1.0 - s) / n for n in range(1, steps + 1)])
        checker.check_small(f"steps/s={s:g}", "chain_steps",
                            float(np.abs(np.array(chain_steps(s, steps)) - expected).max()), 1e-15)

    for entry in ctx.corpus:
        for s in ctx.config.chain_s_values:
            for k in (0, 1):
                check_id = f"{entry.function_id}/k={k}/s={s:g}"
                try:
                    totals = [estimate.total for estimate in
                              chain_norms(entry.jet, k, s, steps, ctx.domain, ctx.plan, samples=ctx.samples,
                                          profile=ctx.profile(entry.function_id, entry.jet))]
                    increase = max(later - earlier for earlier, later in zip(totals, totals[1:]))
                    checker.check_le(check_id, "chain_monotone", increase,
                                     ctx.tol("inequality") * totals[0], tol=0.0)
                except Exception as e:
                    checker.record_failure(check_id, "chain_monotone", e)

    for fid, jet in _algebra_functions(ctx, rng, min(10, len(ctx.corpus))):
        word = exp_map(jet)
        for s in ctx.config.chain_s_values:
            check_id = f"bonding/{fid}/s={s:g}"
            try:
                totals = [estimate.total for estimate in
                          normal_form_chain(word, s, steps, BCHConfig(), ctx.domain, ctx.plan, samples=ctx.samples)]
                increase = max(later - earlier for earlier, later in zip(totals, totals[1:]))
                checker.check_le(check_id, "chain_bonding", increase, ctx.tol("inequality") * totals[0], tol=0.0)
                first = local_normal_form(word, HolderIndex(0, chain_steps(s, steps)[0]), BCHConfig(),
                                          ctx.domain, ctx.plan, samples=ctx.samples)
                last = local_normal_form(word, HolderIndex(0, chain_steps(s, steps)[-1]), BCHConfig(),
                                         ctx.domain, ctx.plan, samples=ctx.samples)
                checker.check_small(f"{check_id}/values", "chain_bonding",
                                    float(np.abs(first.values - last.values).max()), 0.0)
            except Exception as e:
                checker.record_failure(check_id, "chain_bonding", e)

    return checker.records


SUITE_RUNNERS: Dict[str, Callable[[SuiteContext], List[CheckRecord]]] = {
    "taylor": run_taylor,
    "interp": run_interp,
    "norms": run_norms,
    "inclusions": run_inclusions,
    "convexity": run_convexity,
    "product": run_product,
    "bch": run_bch,
    "group": run_group,
    "chain": run_chain,
}


def run_named_suite(name: str, ctx: SuiteContext) -> List[CheckRecord]:
    """
    Запуск одного набора; исключение набора превращается в проваленную запись

    Args:
        name (str): Имя набора из SUITES
        ctx (SuiteContext): Общий контекст

    Returns:
        List[CheckRecord]: Записи набора
    """
    try:
        return SUITE_RUNNERS[name](ctx)
    except Exception as e:
        checker = ctx.checker(name)
        checker.record_failure("suite", "suite_error", e)
        return checker.records


def build_constants_table(domain: Domain, k_max: int,
                          s_values=PRODUCT_CONFIG["lemma_s_values"]) -> Dict[str, Any]:
    """
    Таблица констант для k = 0…k_max: узлы F, λ, Σ|λ_{·,j}|, ε₀, C₁…C₄, D_k, C_k

    Плоские столбцы epsilon, c1…c4 берутся при s = max(s_values); полный набор -
    в поле lemma по всем s.
    """
    constants = product_constants(domain, k_max)
    lagrange = lagrange_table(k_max)
    top_s = max(s_values)
    rows = []
    for k in range(k_max + 1):
        row: Dict[str, Any] = {
            "k": k,
            "nodes": lagrange[k]["nodes"],
            "lambda": lagrange[k]["lambda"],
            "interpolation_sums": lagrange[k]["sums"],
            "D_k": constants.inclusion[k],
            "C_k": constants.product[k],
            "lemma": [],
            "epsilon": None, "c1": None, "c2": None, "c3": None, "c4": None,
        }
        if k >= 1:
            lemma = {s: lemma24_constants(k, s, domain) for s in s_values}
            row["lemma"] = [lemma[s].to_dict() for s in s_values]
            top = lemma[top_s]
            row.update(epsilon=top.epsilon, c1=top.c1, c2=top.c2, c3=top.c3, c4=top.c4)
        rows.append(row)
    return {"domain": domain.describe(), "rows": rows}
