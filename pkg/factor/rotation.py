import logging
import math
from dataclasses import dataclass

import numpy as np

from analise_temas.exceptions import ArgumentError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class RotationResult:
    loadings: np.ndarray
    rotation: np.ndarray
    iterations: int
    converged: bool
    history: tuple

    @property
    def criterion(self):
        return self.history[-1]


def varimax_criterion(loadings):
    squares = np.asarray(loadings, dtype=np.float64) ** 2
    return float(np.sum(np.var(squares, axis=0)))


def kaiser_normalize(loadings):
    # Linhas nulas ficam como estão.
    norms = np.sqrt(np.sum(loadings ** 2, axis=1))
    norms[norms == 0] = 1.0
    return loadings / norms[:, None], norms


def _planar_angle(x, y):
    p = x.size
    u = x * x - y * y
    v = 2.0 * x * y
    u_sum, v_sum = u.sum(), v.sum()
    numerator = 2.0 * (np.dot(u, v) - u_sum * v_sum / p)
    denominator = np.dot(u, u) - np.dot(v, v) - (u_sum ** 2 - v_sum ** 2) / p
    return math.atan2(numerator, denominator) / 4.0


def varimax(loadings, tol=1e-10, max_iter=1000, normalize=True) -> RotationResult:
    loadings = np.asarray(loadings, dtype=np.float64)
    if loadings.ndim != 2 or loadings.shape[1] < 1:
        raise ArgumentError("São precisas cargas com pelo menos uma componente")
    if not np.all(np.isfinite(loadings)):
        raise ArgumentError("Cargas com valores não finitos")
    if tol <= 0 or max_iter < 1:
        raise ArgumentError(f"Parâmetros de convergência inválidos (tol={tol}, max_iter={max_iter})")

    k = loadings.shape[1]
    working = kaiser_normalize(loadings)[0] if normalize else loadings.copy()
    rotation = np.eye(k)
    history = [varimax_criterion(working)]
    if k == 1:
        return RotationResult(loadings.copy(), rotation, 0, True, tuple(history))

    converged = False
    iterations = 0
    while iterations < max_iter:
        iterations += 1
        for i in range(k - 1):
            for j in range(i + 1, k):
                theta = _planar_angle(working[:, i], working[:, j])
                c, s = math.cos(theta), math.sin(theta)
                plane = np.array([[c, -s], [s, c]])
                working[:, [i, j]] = working[:, [i, j]] @ plane
                rotation[:, [i, j]] = rotation[:, [i, j]] @ plane
        history.append(varimax_criterion(working))
        if history[-1] - history[-2] < tol:
            converged = True
            break

    if not converged:
        logger.warning("Varimax sem convergência após %d iterações", iterations)
    logger.debug("Varimax: %d iterações, critério %.10f", iterations, history[-1])
    return RotationResult(loadings @ rotation, rotation, iterations, converged, tuple(history))
