import csv
import json
import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy import sparse

from analise_temas.exceptions import ArgumentError, DataError

from .vocabulary import Vocabulary

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class DocTermMatrix:
    doc_ids: tuple
    vocabulary: Vocabulary
    cells: sparse.csr_matrix
    dropped: int = 0

    @property
    def shape(self):
        return self.cells.shape

    def column_sums(self):
        return np.asarray(self.cells.sum(axis=0), dtype=np.int64).ravel()

    def retained_frequency(self):
        return 100.0 * self.column_sums() / len(self.doc_ids)

    def row_terms(self, row):
        start, end = self.cells.indptr[row], self.cells.indptr[row + 1]
        return [self.vocabulary.terms[i] for i in self.cells.indices[start:end]]


def build_matrix(docs, vocab: Vocabulary, min_terms=1) -> DocTermMatrix:
    if not len(vocab):
        raise ArgumentError("Vocabulário vazio")
    if min_terms < 0:
        raise ArgumentError(f"min_terms deve ser >= 0 (recebido {min_terms})")

    index = vocab.index
    doc_ids, indptr, indices = [], [0], []
    for doc in docs:
        columns = sorted({index[t] for t in doc.tokens if t in index})
        if len(columns) < min_terms:
            continue
        doc_ids.append(doc.doc_id)
        indices.extend(columns)
        indptr.append(len(indices))

    dropped = len(docs) - len(doc_ids)
    if not doc_ids:
        raise DataError(f"Nenhum documento com pelo menos {min_terms} termos do vocabulário")

    cells = sparse.csr_matrix(
        (np.ones(len(indices), dtype=np.int8), np.asarray(indices, dtype=np.int64), np.asarray(indptr, dtype=np.int64)),
        shape=(len(doc_ids), len(vocab)),
    )
    logger.info("Matriz %d x %d, %d uns, %d documentos descartados", cells.shape[0], cells.shape[1], cells.nnz, dropped)
    return DocTermMatrix(doc_ids=tuple(doc_ids), vocabulary=vocab, cells=cells, dropped=dropped)


def write_matrix_csv(matrix: DocTermMatrix, path):
    width = len(matrix.vocabulary)
    with open(path, 'w', encoding='utf-8', newline='') as handle:
        writer = csv.writer(handle, lineterminator='\n')
        writer.writerow(['doc_id', *matrix.vocabulary.terms])
        for row, doc_id in enumerate(matrix.doc_ids):
            values = ['0'] * width
            start, end = matrix.cells.indptr[row], matrix.cells.indptr[row + 1]
            for column in matrix.cells.indices[start:end]:
                values[column] = '1'
            writer.writerow([doc_id, *values])


def write_sparse_matrix(matrix: DocTermMatrix, directory):
    # Ficheiros .npy simples: os .npz guardam datas.
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    np.save(directory / 'indptr.npy', matrix.cells.indptr.astype(np.int64), allow_pickle=False)
    np.save(directory / 'indices.npy', matrix.cells.indices.astype(np.int64), allow_pickle=False)
    with open(directory / 'shape.json', 'w', encoding='utf-8', newline='\n') as handle:
        json.dump({'shape': list(matrix.shape)}, handle, sort_keys=True)
        handle.write('\n')


def load_sparse_matrix(directory):
    directory = Path(directory)
    try:
        indptr = np.load(directory / 'indptr.npy', allow_pickle=False)
        indices = np.load(directory / 'indices.npy', allow_pickle=False)
        with open(directory / 'shape.json', encoding='utf-8') as handle:
            shape = tuple(json.load(handle)['shape'])
    except (OSError, KeyError, ValueError) as exc:
        raise DataError(f"Matriz esparsa ilegível em {directory}: {exc}") from exc
    return sparse.csr_matrix((np.ones(indices.size, dtype=np.int8), indices, indptr), shape=shape)


def write_vocabulary_csv(matrix: DocTermMatrix, path):
    vocab = matrix.vocabulary
    retained = matrix.retained_frequency()
    with open(path, 'w', encoding='utf-8', newline='') as handle:
        writer = csv.writer(handle, lineterminator='\n')
        writer.writerow(['term', 'doc_frequency', 'retained_frequency'])
        for position, term in enumerate(vocab.terms):
            writer.writerow([term, f'{vocab.doc_frequency[position]:.4f}', f'{retained[position]:.4f}'])
