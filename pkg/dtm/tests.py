import os
import tempfile

import numpy as np
from django.test import SimpleTestCase

from analise_temas.exceptions import ArgumentError, DataError
from textprep.lexicon import TokenizedDoc

from .matrix import build_matrix, load_sparse_matrix, write_matrix_csv, write_sparse_matrix, write_vocabulary_csv
from .vocabulary import Vocabulary, build_vocab


def docs_of(*token_lists):
    return [TokenizedDoc(f'd{i}', tuple(tokens)) for i, tokens in enumerate(token_lists, start=1)]


class VocabularyTests(SimpleTestCase):
    def test_presence_percentage(self):
        docs = docs_of(['data', 'data'], ['data', 'user'], ['law'], ['user'])
        vocab = build_vocab(docs, 300)
        self.assertEqual(vocab.frequency('data'), 50.0)

    def test_tie_break_by_term(self):
        docs = docs_of(['a', 'b', 'c'], ['a', 'c', 'b'], ['a'], [])
        vocab = build_vocab(docs, 2)
        self.assertEqual(vocab.terms, ('a', 'b'))
        self.assertEqual(vocab.doc_frequency, (75.0, 50.0))

    def test_all_empty(self):
        with self.assertRaises(DataError):
            build_vocab(docs_of([], []), 10)
        with self.assertRaises(ArgumentError):
            build_vocab(docs_of(['a']), 0)

    def test_rejects_duplicates(self):
        with self.assertRaises(ArgumentError):
            Vocabulary(terms=('a', 'a'), doc_frequency=(1.0, 1.0))


class MatrixTests(SimpleTestCase):
    vocab = Vocabulary(terms=('data', 'user', 'law'), doc_frequency=(50.0, 25.0, 25.0))

    def test_binary_presence(self):
        matrix = build_matrix(docs_of(['data', 'data', 'user']), self.vocab)
        self.assertEqual(matrix.cells.toarray().tolist(), [[1, 1, 0]])

    def test_min_terms(self):
        docs = docs_of(['data'], ['sol'], [])
        matrix = build_matrix(docs, self.vocab, min_terms=1)
        self.assertEqual(matrix.doc_ids, ('d1',))
        self.assertEqual(matrix.dropped, 2)
        self.assertEqual(build_matrix(docs, self.vocab, min_terms=0).shape, (3, 3))

    def test_nothing_survives(self):
        with self.assertRaises(DataError):
            build_matrix(docs_of(['sol']), self.vocab)

    def test_column_sums_match_frequency_and_nnz(self):
        docs = docs_of(['a', 'b'], ['a', 'c', 'c'], ['b', 'z'], ['a'], ['q'])
        vocab = build_vocab(docs, 3)
        matrix = build_matrix(docs, vocab, min_terms=1)
        recomputed = build_vocab([d for d in docs if d.doc_id in matrix.doc_ids], 10)
        for term, value in zip(vocab.terms, matrix.retained_frequency()):
            self.assertAlmostEqual(value, recomputed.frequency(term))
        self.assertEqual(matrix.cells.nnz, sum(len(set(d.tokens) & set(vocab.terms)) for d in docs))

    def test_row_permutation(self):
        docs = docs_of(['data', 'law'], ['user'], ['law', 'user'])
        a = build_matrix(docs, self.vocab)
        b = build_matrix(list(reversed(docs)), self.vocab)
        self.assertEqual(a.doc_ids, tuple(reversed(b.doc_ids)))
        self.assertTrue(np.array_equal(a.cells.toarray(), b.cells.toarray()[::-1]))


class SerialisationTests(SimpleTestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)
        docs = docs_of(['datos', 'ley'], ['ley'], ['sol'])
        self.matrix = build_matrix(docs, build_vocab(docs, 2), min_terms=1)

    def test_csv_layout(self):
        path = os.path.join(self.tmp.name, 'dtm.csv')
        write_matrix_csv(self.matrix, path)
        with open(path, 'rb') as handle:
            self.assertEqual(handle.read(), b'doc_id,ley,datos\nd1,1,1\nd2,1,0\n')

    def test_sparse_sidecar(self):
        folder = os.path.join(self.tmp.name, 'dtm_sparse')
        write_sparse_matrix(self.matrix, folder)
        self.assertEqual(sorted(os.listdir(folder)), ['indices.npy', 'indptr.npy', 'shape.json'])
        loaded = load_sparse_matrix(folder)
        self.assertTrue(np.array_equal(loaded.toarray(), self.matrix.cells.toarray()))

    def test_vocabulary_csv_has_both_frequencies(self):
        path = os.path.join(self.tmp.name, 'vocabulary.csv')
        write_vocabulary_csv(self.matrix, path)
        with open(path, encoding='utf-8') as handle:
            lines = handle.read().splitlines()
        self.assertEqual(lines[0], 'term,doc_frequency,retained_frequency')
        self.assertEqual(lines[1], 'ley,66.6667,100.0000')
        self.assertEqual(lines[2], 'datos,33.3333,50.0000')

    def test_missing_sidecar(self):
        with self.assertRaises(DataError):
            load_sparse_matrix(os.path.join(self.tmp.name, 'nada'))
