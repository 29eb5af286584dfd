import csv
import json
import logging
from dataclasses import dataclass

import numpy as np

from analise_temas.exceptions import ArgumentError, DataError

from .correlation import correlation_matrix
from .extraction import (
    apply_sign_convention, extract_components, fit_statistic, proportion_explained, total_variance_share,
)
from .rotation import varimax

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class FactorModel:
    terms: tuple
    loadings: np.ndarray
    rotation: np.ndarray
    eigenvalues: np.ndarray
    pe: np.ndarray
    fit: float
    variance_share: float
    iterations: int
    converged: bool
    criterion: float

    @property
    def k(self):
        return self.loadings.shape[1]

    @property
    def dim(self):
        return self.loadings.shape[0]

    def component(self, index):
        return self.loadings[:, index]

    def communalities(self):
        return np.sum(self.loadings ** 2, axis=1)


def fit_factor_model(matrix, k, tol=1e-10, max_iter=1000) -> FactorModel:
    corr = correlation_matrix(matrix)
    if k > corr.dim:
        raise ArgumentError(f"k={k} maior do que o vocabulário ({corr.dim} termos)")
    unrotated, eigenvalues = extract_components(corr, k)
    rotated = varimax(unrotated, tol=tol, max_iter=max_iter)

    pe, order = proportion_explained(rotated.loadings)
    loadings, signs = apply_sign_convention(rotated.loadings[:, order])
    rotation = rotated.rotation[:, order] * signs

    model = FactorModel(
        terms=corr.terms,
        loadings=loadings,
        rotation=rotation,
        eigenvalues=eigenvalues,
        pe=pe,
        fit=fit_statistic(corr, loadings),
        variance_share=total_variance_share(eigenvalues, corr.dim),
        iterations=rotated.iterations,
        converged=rotated.converged,
        criterion=rotated.criterion,
    )
    logger.info(
        "Modelo fatorial: k=%d, ajuste %.4f, variância explicada %.2f%%",
        model.k, model.fit, model.variance_share,
    )
    return model


def write_loadings_csv(model: FactorModel, path):
    with open(path, 'w', encoding='utf-8', newline='') as handle:
        writer = csv.writer(handle, lineterminator='\n')
        writer.writerow(['term', *(f'component_{j + 1}' for j in range(model.k))])
        for term, row in zip(model.terms, model.loadings):
            writer.writerow([term, *(f'{value:.6f}' for value in row)])


def model_metadata(model: FactorModel, **extra):
    metadata = {
        'k': model.k,
        'dim': model.dim,
        'eigenvalues': [round(float(v), 10) for v in model.eigenvalues],
        'pe': [round(float(v), 10) for v in model.pe],
        'fit': round(model.fit, 10),
        'variance_share': round(model.variance_share, 10),
        'iterations': model.iterations,
        'converged': model.converged,
        'criterion': round(model.criterion, 10),
    }
    metadata.update(extra)
    return metadata


def write_model_json(model: FactorModel, path, **extra):
    with open(path, 'w', encoding='utf-8', newline='\n') as handle:
        json.dump(model_metadata(model, **extra), handle, indent=2, sort_keys=True, ensure_ascii=False)
        handle.write('\n')


def read_model_json(path):
    try:
        with open(path, encoding='utf-8') as handle:
            return json.load(handle)
    except (OSError, ValueError) as exc:
        raise DataError(f"Metadados do modelo ilegíveis em {path}: {exc}") from exc
