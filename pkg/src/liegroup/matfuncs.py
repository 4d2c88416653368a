"""
Матричные экспонента и главный логарифм

exp - масштабирование и возведение в квадрат с рядом Тейлора,
log - обратное масштабирование (квадратные корни) и ряд log(I + X) при ||g - I||_F < 1.
"""

import logging
import math

import numpy as np
from scipy.linalg import sqrtm

from src.config import MATFUNC_CONFIG
from src.utils.errors import LogDomain

logger = logging.getLogger(__name__)

# Порог нормы после масштабирования в экспоненте
EXP_SCALING_THRESHOLD = 0.5


def matrix_exp(x, tol: float = MATFUNC_CONFIG["exp_tol"], max_terms: int = MATFUNC_CONFIG["max_terms"]) -> np.ndarray:
    """
    Экспонента квадратной матрицы

    Args:
        x: Матрица d×d
        tol (float): Относительный порог обрыва ряда
        max_terms (int): Наибольшее число членов ряда

    Returns:
        np.ndarray: exp(x)
    """
    x = np.asarray(x, dtype=float)
    identity = np.eye(x.shape[0])
    norm = np.linalg.norm(x, ord=1)
    if norm == 0.0:
        return identity

    squarings = max(0, math.ceil(math.log2(norm / EXP_SCALING_THRESHOLD)))
    scaled = x / 2.0 ** squarings

    result = identity.copy()
    term = identity.copy()
    for index in range(1, max_terms + 1):
        term = term @ scaled / index
        result += term
        if np.linalg.norm(term, ord=1) <= tol * np.linalg.norm(result, ord=1):
            break

    for _ in range(squarings):
        result = result @ result
    return result


def matrix_exp_batch(x, tol: float = MATFUNC_CONFIG["exp_tol"],
                     max_terms: int = MATFUNC_CONFIG["max_terms"]) -> np.ndarray:
    """
    Экспонента пакета матриц (N, d, d) с общим числом возведений в квадрат

    Args:
        x: Пакет матриц
        tol (float): Относительный порог обрыва ряда
        max_terms (int): Наибольшее число членов ряда

    Returns:
        np.ndarray: exp(x_p) для каждой матрицы пакета
    """
    x = np.asarray(x, dtype=float)
    identity = np.broadcast_to(np.eye(x.shape[-1]), x.shape)
    norm = float(np.abs(x).sum(axis=-2).max()) if x.size else 0.0
    if norm == 0.0:
        return identity.copy()

    squarings = max(0, math.ceil(math.log2(norm / EXP_SCALING_THRESHOLD)))
    scaled = x / 2.0 ** squarings

    result = identity.copy()
    term = identity.copy()
    for index in range(1, max_terms + 1):
        term = term @ scaled / index
        result += term
        if np.abs(term).sum(axis=-2).max() <= tol * np.abs(result).sum(axis=-2).max(axis=-1).min():
            break

    for _ in range(squarings):
        result = result @ result
    return result


def _log_series(x: np.ndarray, tol: float, max_terms: int) -> np.ndarray:
    """log(I + x) = Σ (-1)^{i-1} x^i / i при ||x||_F < 1"""
    result = np.zeros_like(x)
    power = np.eye(x.shape[0])
    for index in range(1, max_terms + 1):
        power = power @ x
        term = power / index
        result += term if index % 2 else -term
        if np.linalg.norm(term) <= tol:
            break
    return result


def matrix_log(g, tol: float = MATFUNC_CONFIG["log_tol"], max_terms: int = MATFUNC_CONFIG["max_terms"],
               root_threshold: float = MATFUNC_CONFIG["log_root_threshold"]) -> np.ndarray:
    """
    Главный логарифм матрицы из окрестности ||g - I||_F < 1

    Пока ||g - I||_F > root_threshold, извлекается главный квадратный корень
    (log g = 2^r · log g^{1/2^r}), затем суммируется ряд.

    Args:
        g: Матрица d×d
        tol (float): Порог обрыва ряда
        max_terms (int): Наибольшее число членов ряда
        root_threshold (float): Порог для извлечения корней

    Returns:
        np.ndarray: log(g)

    Raises:
        LogDomain: ||g - I||_F >= 1
    """
    g = np.asarray(g, dtype=float)
    identity = np.eye(g.shape[0])
    distance = np.linalg.norm(g - identity)
    if not distance < 1.0:
        raise LogDomain(f"||g - I||_F = {distance:.6g} >= 1")

    roots = 0
    current = g
    while np.linalg.norm(current - identity) > root_threshold and roots < 16:
        current = np.real(sqrtm(current))
        roots += 1

    result = 2.0 ** roots * _log_series(current - identity, tol, max_terms)
    logger.debug(f"matrix_log: ||g - I|| = {distance:.3g}, корней {roots}")
    return result
