"""
Иерархия исключений проекта
"""


class HolderToolkitError(Exception):
    """Базовое исключение для всех ошибок библиотеки"""


class DiameterExceeded(HolderToolkitError, ValueError):
    """Диаметр области больше 1"""


class EmptyDomain(HolderToolkitError, ValueError):
    """Область пуста или задана некорректно (радиус <= 0, нижняя граница >= верхней, NaN, n = 0)"""


class DegeneratePlan(HolderToolkitError, ValueError):
    """План выборки даёт меньше двух различных точек или задан с недопустимыми порогами"""


class BoundaryPoint(HolderToolkitError, ValueError):
    """Точка не лежит строго внутри области"""


class OrderExceeded(HolderToolkitError, ValueError):
    """Запрошена производная порядка выше доступного"""


class DuplicateNodes(HolderToolkitError, ValueError):
    """Узлы интерполяции совпадают"""


class NodeOutOfRange(HolderToolkitError, ValueError):
    """Узел интерполяции вне интервала (0, 1)"""


class SizeMismatch(HolderToolkitError, ValueError):
    """Число значений не совпадает с числом узлов"""


class SegmentLeavesDomain(HolderToolkitError, ValueError):
    """Отрезок [x₀, x₀ + v] выходит из области"""


class DimensionMismatch(HolderToolkitError, ValueError):
    """Несовместимые размерности сомножителей"""


class OutsideConvergenceDomain(HolderToolkitError, ValueError):
    """Аргументы ряда БКХ вне области ||x|| + ||y|| <= ρ·log 2"""


class LogDomain(HolderToolkitError, ValueError):
    """Матрица вне области главного логарифма (||g - I|| >= 1)"""


class ConfigInvalid(HolderToolkitError, ValueError):
    """Некорректная конфигурация запуска"""
