import logging

import numpy as np

from analise_temas.exceptions import ArgumentError, DataError, NonConvergenceError

logger = logging.getLogger(__name__)


def _values(corr):
    return np.asarray(getattr(corr, 'values', corr), dtype=np.float64)


def apply_sign_convention(loadings):
    loadings = np.array(loadings, dtype=np.float64)
    if loadings.size == 0:
        return loadings, np.ones(loadings.shape[1])
    peaks = np.argmax(np.abs(loadings), axis=0)
    signs = np.where(loadings[peaks, np.arange(loadings.shape[1])] < 0, -1.0, 1.0)
    return loadings * signs, signs


def extract_components(corr, k):
    values = _values(corr)
    dim = values.shape[0]
    if not 1 <= k <= dim:
        raise ArgumentError(f"k deve estar entre 1 e {dim} (recebido {k})")
    try:
        eigenvalues, eigenvectors = np.linalg.eigh(values)
    except np.linalg.LinAlgError as exc:
        raise NonConvergenceError(f"Decomposição em valores próprios não convergiu: {exc}") from exc

    order = np.argsort(-eigenvalues, kind='stable')[:k]
    eigenvalues = eigenvalues[order]
    loadings = eigenvectors[:, order] * np.sqrt(np.clip(eigenvalues, 0.0, None))
    loadings, _ = apply_sign_convention(loadings)
    return loadings, eigenvalues


def proportion_explained(loadings):
    # Devolve (pe, order); order ordena as colunas de loadings.
    loadings = np.asarray(loadings, dtype=np.float64)
    if loadings.ndim != 2 or loadings.shape[1] < 1:
        raise ArgumentError("É preciso pelo menos uma componente")
    squares = np.sum(loadings ** 2, axis=0)
    total = squares.sum()
    if total == 0:
        raise DataError("Todas as cargas são nulas")
    order = np.argsort(-squares, kind='stable')
    return 100.0 * squares[order] / total, order


def total_variance_share(eigenvalues, dim):
    eigenvalues = np.asarray(eigenvalues, dtype=np.float64)
    if eigenvalues.size > dim:
        raise ArgumentError(f"{eigenvalues.size} valores próprios para dimensão {dim}")
    return 100.0 * float(eigenvalues.sum()) / dim


def fit_statistic(corr, loadings):
    # Ajuste fora da diagonal: 1 - soma(resíduo²) / soma(corr²).
    values = _values(corr)
    dim = values.shape[0]
    loadings = np.asarray(loadings, dtype=np.float64).reshape(dim, -1)
    if dim < 2:
        raise DataError("A estatística de ajuste exige pelo menos dois termos")
    off = ~np.eye(dim, dtype=bool)
    mass = float(np.sum(values[off] ** 2))
    if mass == 0:
        raise DataError("Correlações fora da diagonal todas nulas")
    residual = values - loadings @ loadings.T
    fit = 1.0 - float(np.sum(residual[off] ** 2)) / mass
    if fit < 0:
        logger.warning("Estatística de ajuste negativa (%.6f) truncada para 0", fit)
        return 0.0
    return min(fit, 1.0)


def select_terms(loadings, terms, threshold=0.1):
    # Cargas comparadas a 12 casas decimais; empates pelo termo.
    if threshold < 0:
        raise ArgumentError(f"O limiar de cargas deve ser >= 0 (recebido {threshold})")
    loadings = np.asarray(loadings, dtype=np.float64)
    selected = []
    for column in loadings.T:
        positive = sorted(
            ((terms[i], float(v)) for i, v in enumerate(column) if v > threshold),
            key=lambda item: (-round(item[1], 12), item[0]),
        )
        negative = sorted(
            ((terms[i], float(v)) for i, v in enumerate(column) if v < -threshold),
            key=lambda item: (round(item[1], 12), item[0]),
        )
        selected.append((positive, negative))
    return selected
