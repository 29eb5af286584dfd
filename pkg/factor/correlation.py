from dataclasses import dataclass

import numpy as np
from scipy import sparse

from analise_temas.exceptions import DataError


@dataclass(frozen=True, eq=False)
class CorrelationMatrix:
    terms: tuple
    values: np.ndarray

    @property
    def dim(self):
        return self.values.shape[0]


def phi_coefficients(cells, terms):
    # Correlação de Pearson de colunas 0/1 a partir das coocorrências.
    cells = sparse.csr_matrix(cells, dtype=np.float64)
    n = cells.shape[0]
    together = (cells.T @ cells).toarray()
    counts = np.diag(together).copy()

    constant = np.flatnonzero((counts == 0) | (counts == n))
    if constant.size:
        names = ', '.join(terms[i] for i in constant[:5])
        raise DataError(f"Coluna constante (variância nula) para os termos: {names}; aumente a frequência mínima")

    spread = counts * (n - counts)
    values = (n * together - np.outer(counts, counts)) / np.sqrt(np.outer(spread, spread))
    values = np.clip((values + values.T) / 2.0, -1.0, 1.0)
    np.fill_diagonal(values, 1.0)
    return CorrelationMatrix(terms=tuple(terms), values=values)


def correlation_matrix(matrix) -> CorrelationMatrix:
    return phi_coefficients(matrix.cells, matrix.vocabulary.terms)
