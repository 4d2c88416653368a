"""
Конфигурация проекта: численная проверка неравенств в пространствах Гёльдера
и построение групп Ли BC^{k,s}(Ω, G) над матричными группами
"""

import os
from dotenv import load_dotenv

# Загружаем переменные окружения из .env файла
load_dotenv()

# Область Ω по умолчанию (шар или брус, диаметр не больше 1)
DOMAIN_CONFIG = {
    "shape": "ball",
    "center": [0.0, 0.0],
    "radius": 0.5
}

# План выборки точек и пар точек
SAMPLE_PLAN_CONFIG = {
    "kind": "grid",                 # grid или quasirandom
    "points_per_axis": 13,          # Для сетки
    "count": 150,                   # Для квазислучайной выборки
    "seed": int(os.getenv("HOLDER_SAMPLE_SEED", "7")),
    "min_pair_separation": None,    # None = 1e-6 * diam Ω
    "max_pair_distance": None       # None = все пары
}

# Относительный множитель минимального расстояния между точками пары
DEFAULT_SEPARATION_FACTOR = 1e-6

# Корпус тестовых функций
CORPUS_CONFIG = {
    "count": 50,
    "degree": 3,
    "seed": int(os.getenv("HOLDER_CORPUS_SEED", "20240601")),
    "out_dim": 2,
    "envelope_share": 0.25,         # Доля гладких функций f(<a, x>) в корпусе
    "path": os.getenv("HOLDER_CORPUS_PATH")  # JSON-файл корпуса (опционально)
}

# Оценка операторных норм полилинейных отображений
OPNORM_CONFIG = {
    "sphere_samples": 128,          # Направления на единичной сфере
    "seed": 0,
    "chunk_size": 2048,             # Размер пакета при обходе пар
    "refine_steps": 25              # Итерации уточнения нижней оценки
}

# Квадратура Гаусса-Лежандра на [0, 1]
QUADRATURE_CONFIG = {
    "nodes": 32
}

# Узлы интерполяции Лагранжа
INTERPOLATION_CONFIG = {
    "max_degree": 8                 # Прямое раскрытие произведений до этой степени
}

# Индексы (k, s), для которых проверяются неравенства
HOLDER_INDICES = [
    (0, 0.5),
    (0, 1.0),
    (1, 0.5),
    (1, 1.0),
    (2, 0.3)
]

# Тройки (s, u, λ) для логарифмической выпуклости, 0 < s < u <= 1
CONVEXITY_TRIPLES = [
    (0.1, 0.9, 0.5),
    (0.2, 1.0, 0.3),
    (0.25, 0.75, 0.6),
    (0.5, 1.0, 0.5),
    (0.05, 0.5, 0.8)
]

# Ряд Бейкера-Кэмпбелла-Хаусдорфа
BCH_CONFIG = {
    "truncation_order": 8,
    "domain_margin": 0.3            # Допустимо ||x|| + ||y|| <= margin * log 2
}

# Матричные экспонента и логарифм
MATFUNC_CONFIG = {
    "exp_tol": 1e-16,
    "log_tol": 1e-15,
    "max_terms": 80,
    "log_root_threshold": 0.25      # Извлекаем корни, пока ||g - I|| больше порога
}

# Константы теоремы о произведениях
PRODUCT_CONFIG = {
    "k_max": 4,
    "lemma_margin": 0.0,            # Отступ от границы для ε₀
    "pair_count": 30,
    "lemma_s_values": [0.5, 1.0]    # Показатели s в таблице констант
}

# Цепочка вложений t_n = s + (1 - s) / n
CHAIN_CONFIG = {
    "steps": 10,
    "s_values": [0.0, 0.25]
}

# Проверка интерполяции
INTERP_CHECK_CONFIG = {
    "max_degree": 4,                # Степени скалярных полиномов для восстановления коэффициентов
    "polynomials_per_degree": 10,   # Полиномы на единичном шаре для оценки однородных частей
    "unit_ball_points_per_axis": 9
}

# Проверка оценок норм на одномерных сетках
NORMS_CHECK_CONFIG = {
    "isometry_points": 20000,       # Плотная сетка на [0, 1]
    "isometry_pair_distance": 1.5e-4,
    "isometry_functions": 20,
    "example_points": 1000
}

# Пары индексов (k, s) -> (l, t) для вложений BC^{l,t} в BC^{k,s}
INCLUSION_PAIRS = [
    ((0, 0.5), (1, 0.5)),
    ((0, 1.0), (2, 0.3)),
    ((1, 0.5), (2, 0.3)),
    ((0, 0.5), (0, 1.0)),
    ((1, 0.0), (1, 0.5))
]

# Пары показателей 0 < s1 < s2 <= 1 для вложения по показателю
EXPONENT_PAIRS = [(0.25, 0.5), (0.5, 1.0), (0.1, 0.9)]

# Проверки групп Ли
LIE_CHECK_CONFIG = {
    "bch_pairs": 100,
    "element_radius": 0.05,         # ||x||_F, ||y||_F для проверки ряда БКХ
    "log_radius": 0.1,
    "compatibility_pairs": 10000,
    "group_functions": 50,
    "group_radius": 0.05,           # max ||γ(x)||_F функций со значениями в алгебре
    "power": 3,
    "bracket_pairs": 5
}

# Встроенные алгебры Ли
LIE_ALGEBRAS = ["so3", "sl2", "heisenberg", "abelian"]

# Допуски проверок
TOLERANCES = {
    "inequality": 1e-9,             # Мультипликативный допуск неравенств
    "isometry": 2e-2,               # Совпадение p(k,1) и p(k+1,0)
    "sampling": 5e-2,               # Эталонные значения норм на сетке
    "taylor": 1e-9,
    "taylor_polynomial": 1e-12,
    "interp": 1e-10,
    "bch": 1e-10,
    "heisenberg": 1e-12,
    "log": 1e-9,
    "group": 1e-10,
    "normal_form": 1e-8
}

# Наборы проверок
SUITES = [
    "taylor",
    "interp",
    "norms",
    "inclusions",
    "convexity",
    "product",
    "bch",
    "group",
    "chain"
]

# Отчёт
REPORT_CONFIG = {
    "path": os.getenv("HOLDER_REPORT_PATH", "holder_report.json"),
    "csv_path": os.getenv("HOLDER_CONSTANTS_CSV"),
    "schema_version": 1,
    "record_timings": False         # Время выполнения только в логах
}

# Коды завершения CLI
EXIT_CODES = {
    "ok": 0,
    "check_failed": 1,
    "config_error": 2
}

# Настройки логирования
LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO")
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
LOG_FILE = os.getenv("LOG_FILE")
