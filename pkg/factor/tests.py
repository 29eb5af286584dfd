import json
import os
import tempfile

import numpy as np
from django.test import SimpleTestCase
from scipy import linalg

from analise_temas.exceptions import ArgumentError, DataError
from dtm.matrix import build_matrix
from dtm.vocabulary import build_vocab
from textprep.lexicon import TokenizedDoc

from .correlation import phi_coefficients
from .extraction import (
    extract_components, fit_statistic, proportion_explained, select_terms, total_variance_share,
)
from .model import fit_factor_model, read_model_json, write_loadings_csv, write_model_json
from .rotation import kaiser_normalize, varimax, varimax_criterion

PAIR = np.array([[1.0, 0.6], [0.6, 1.0]])


def random_correlation(rng, dim):
    sample = rng.standard_normal((dim, dim + 3))
    covariance = sample @ sample.T
    scale = np.sqrt(np.diag(covariance))
    corr = covariance / np.outer(scale, scale)
    np.fill_diagonal(corr, 1.0)
    return corr


def two_topic_matrix(seed=5, docs=200):
    rng = np.random.default_rng(seed)
    token_lists = []
    for _ in range(docs):
        topic = rng.random() < 0.5
        words = ('lei', 'dados', 'multa') if topic else ('voto', 'campanha', 'anúncio')
        tokens = [w for w in words if rng.random() < 0.6]
        tokens += [w for w in ('hoje', 'rede') if rng.random() < 0.4]
        token_lists.append(tokens)
    token_docs = [TokenizedDoc(f'd{i}', tuple(t)) for i, t in enumerate(token_lists)]
    return build_matrix(token_docs, build_vocab(token_docs, 10), min_terms=1)


class CorrelationTests(SimpleTestCase):
    def test_phi_examples(self):
        columns = np.array([[1, 1, 0, 0], [1, 1, 0, 0], [1, 0, 1, 0], [0, 0, 1, 1]]).T
        corr = phi_coefficients(columns, ('a', 'b', 'c', 'd')).values
        self.assertEqual(corr[0, 1], 1.0)
        self.assertAlmostEqual(corr[0, 2], 0.0, places=12)
        self.assertAlmostEqual(corr[0, 3], -1.0, places=12)
        self.assertTrue(np.array_equal(corr, corr.T))
        self.assertTrue(np.all(np.diag(corr) == 1.0))

    def test_constant_column_names_term(self):
        columns = np.array([[1, 0, 1], [1, 1, 1]]).T
        with self.assertRaisesMessage(DataError, 'sempre'):
            phi_coefficients(columns, ('varia', 'sempre'))

    def test_matches_pearson(self):
        matrix = two_topic_matrix()
        corr = phi_coefficients(matrix.cells, matrix.vocabulary.terms).values
        reference = np.corrcoef(matrix.cells.toarray().astype(float), rowvar=False)
        np.testing.assert_allclose(corr, reference, atol=1e-12)


class ExtractionTests(SimpleTestCase):
    def test_two_by_two(self):
        loadings, eigenvalues = extract_components(PAIR, 1)
        self.assertAlmostEqual(eigenvalues[0], 1.6, places=12)
        np.testing.assert_allclose(loadings[:, 0], [np.sqrt(0.8)] * 2, atol=1e-12)

    def test_identity(self):
        loadings, eigenvalues = extract_components(np.eye(4), 4)
        np.testing.assert_allclose(eigenvalues, np.ones(4), atol=1e-12)
        np.testing.assert_allclose(np.sort(np.abs(loadings), axis=None)[-4:], np.ones(4), atol=1e-12)
        np.testing.assert_allclose(loadings @ loadings.T, np.eye(4), atol=1e-12)

    def test_rank_one(self):
        _, eigenvalues = extract_components(np.ones((3, 3)), 3)
        np.testing.assert_allclose(eigenvalues, [3.0, 0.0, 0.0], atol=1e-12)

    def test_k_out_of_range(self):
        with self.assertRaises(ArgumentError):
            extract_components(PAIR, 0)
        with self.assertRaises(ArgumentError):
            extract_components(PAIR, 3)

    def test_sign_convention(self):
        loadings, _ = extract_components(random_correlation(np.random.default_rng(1), 6), 6)
        peaks = np.argmax(np.abs(loadings), axis=0)
        self.assertTrue(np.all(loadings[peaks, np.arange(6)] > 0))

    def test_against_reference_solver(self):
        rng = np.random.default_rng(2018)
        for _ in range(200):
            dim = int(rng.integers(2, 21))
            corr = random_correlation(rng, dim)
            loadings, eigenvalues = extract_components(corr, dim)
            values, vectors = linalg.eigh(corr)
            values, vectors = values[::-1], vectors[:, ::-1]
            np.testing.assert_allclose(eigenvalues, values, rtol=1e-9, atol=1e-12)
            self.assertLessEqual(np.max(np.abs(corr - loadings @ loadings.T)), 1e-6)
            gaps = np.abs(np.subtract.outer(values, values)) + np.eye(dim)
            for j in range(dim):
                if gaps[j].min() > 1e-4:
                    np.testing.assert_allclose(
                        np.abs(loadings[:, j]), np.abs(vectors[:, j]) * np.sqrt(max(values[j], 0.0)), atol=1e-6,
                    )


class VarimaxTests(SimpleTestCase):
    def test_simple_structure_is_fixed(self):
        result = varimax(np.eye(2))
        np.testing.assert_allclose(np.abs(result.loadings), np.eye(2), atol=1e-12)
        self.assertTrue(result.converged)

    def test_rotates_diagonal_structure(self):
        result = varimax(np.array([[0.707, 0.707], [0.707, -0.707]]))
        magnitudes = np.abs(result.loadings)
        peak = np.sqrt(2 * 0.707 ** 2)
        np.testing.assert_allclose(np.sort(magnitudes, axis=1), [[0.0, peak], [0.0, peak]], atol=1e-9)
        self.assertNotEqual(np.argmax(magnitudes[0]), np.argmax(magnitudes[1]))

    def test_single_component(self):
        loadings = np.array([[0.3], [0.8]])
        result = varimax(loadings)
        np.testing.assert_array_equal(result.rotation, np.eye(1))
        np.testing.assert_array_equal(result.loadings, loadings)

    def test_rejects_non_finite(self):
        with self.assertRaises(ArgumentError):
            varimax(np.array([[np.nan, 0.1], [0.2, 0.3]]))

    def test_orthogonality_communality_and_monotonicity(self):
        rng = np.random.default_rng(9)
        for _ in range(30):
            terms, k = int(rng.integers(4, 25)), int(rng.integers(2, 6))
            loadings = rng.uniform(-0.8, 0.8, size=(terms, k))
            result = varimax(loadings)
            self.assertLessEqual(np.max(np.abs(result.rotation.T @ result.rotation - np.eye(k))), 1e-8)
            np.testing.assert_allclose(
                np.sum(result.loadings ** 2, axis=1), np.sum(loadings ** 2, axis=1), atol=1e-8,
            )
            self.assertTrue(all(b >= a - 1e-12 for a, b in zip(result.history, result.history[1:])))

    def test_two_components_match_grid_search(self):
        rng = np.random.default_rng(21)
        angles = np.arange(0.0, np.pi / 2, 1e-4)
        cos, sin = np.cos(angles)[:, None], np.sin(angles)[:, None]
        for _ in range(20):
            loadings = rng.uniform(-0.9, 0.9, size=(int(rng.integers(3, 15)), 2))
            normalized, _ = kaiser_normalize(loadings)
            x, y = normalized[:, 0], normalized[:, 1]
            first, second = cos * x + sin * y, -sin * x + cos * y
            grid = np.max(np.var(first ** 2, axis=1) + np.var(second ** 2, axis=1))
            result = varimax(loadings)
            self.assertLessEqual(abs(result.criterion - grid), 1e-8)
            self.assertAlmostEqual(result.criterion, varimax_criterion(kaiser_normalize(result.loadings)[0]), places=10)


class SummaryStatisticTests(SimpleTestCase):
    def test_proportion_explained(self):
        pe, _ = proportion_explained(np.array([[1.0, 1.0], [1.0, -1.0]]))
        np.testing.assert_allclose(pe, [50.0, 50.0])
        pe, _ = proportion_explained(np.array([[0.4], [0.2]]))
        np.testing.assert_allclose(pe, [100.0])
        pe, order = proportion_explained(np.array([[0.1, 0.9], [0.2, 0.3]]))
        self.assertEqual(list(order), [1, 0])
        self.assertAlmostEqual(pe.sum(), 100.0, places=9)
        with self.assertRaises(DataError):
            proportion_explained(np.zeros((2, 2)))

    def test_total_variance_share(self):
        self.assertAlmostEqual(total_variance_share([1.6, 0.4], 2), 100.0)
        self.assertAlmostEqual(total_variance_share([1.6], 2), 80.0)
        self.assertAlmostEqual(total_variance_share([1.0, 1.0], 5), 40.0)

    def test_fit_anchors(self):
        corr = random_correlation(np.random.default_rng(4), 7)
        full, _ = extract_components(corr, 7)
        self.assertLessEqual(abs(fit_statistic(corr, full) - 1.0), 1e-9)
        self.assertEqual(fit_statistic(corr, np.zeros((7, 0))), 0.0)
        loadings, _ = extract_components(PAIR, 1)
        self.assertAlmostEqual(fit_statistic(PAIR, loadings), 1 - 0.04 / 0.36, delta=1e-6)

    def test_fit_needs_off_diagonal_mass(self):
        with self.assertRaises(DataError):
            fit_statistic(np.eye(1), np.ones((1, 1)))
        with self.assertRaises(DataError):
            fit_statistic(np.eye(3), np.eye(3))

    def test_negative_fit_is_clamped(self):
        with self.assertLogs('factor.extraction', level='WARNING'):
            self.assertEqual(fit_statistic(PAIR, np.array([[2.0], [2.0]])), 0.0)

    def test_select_terms(self):
        loadings = np.array([[0.5, -0.4], [0.09, 0.05], [0.3, 0.2]])
        (positive, negative), (positive_2, negative_2) = select_terms(loadings, ('a', 'b', 'c'), 0.1)
        self.assertEqual([t for t, _ in positive], ['a', 'c'])
        self.assertEqual(negative, [])
        self.assertEqual(positive_2, [('c', 0.2)])
        self.assertEqual(negative_2, [('a', -0.4)])
        self.assertEqual(select_terms(np.array([[0.05]]), ('a',), 0.1), [([], [])])


class FactorModelTests(SimpleTestCase):
    def test_fit_factor_model(self):
        matrix = two_topic_matrix()
        model = fit_factor_model(matrix, 2)
        self.assertEqual(model.loadings.shape, (len(matrix.vocabulary), 2))
        self.assertAlmostEqual(model.pe.sum(), 100.0, places=9)
        self.assertGreaterEqual(model.pe[0], model.pe[1])
        self.assertLessEqual(np.max(np.abs(model.rotation.T @ model.rotation - np.eye(2))), 1e-8)
        self.assertTrue(model.converged)
        self.assertTrue(0.0 <= model.fit <= 1.0)

        corr = np.corrcoef(matrix.cells.toarray().astype(float), rowvar=False)
        unrotated, _ = extract_components(corr, 2)
        np.testing.assert_allclose(model.communalities(), np.sum(unrotated ** 2, axis=1), atol=1e-8)

    def test_deterministic(self):
        first, second = fit_factor_model(two_topic_matrix(), 3), fit_factor_model(two_topic_matrix(), 3)
        np.testing.assert_array_equal(first.loadings, second.loadings)
        np.testing.assert_array_equal(first.pe, second.pe)

    def test_k_larger_than_vocabulary(self):
        with self.assertRaises(ArgumentError):
            fit_factor_model(two_topic_matrix(), 50)

    def test_writers(self):
        model = fit_factor_model(two_topic_matrix(), 2)
        with tempfile.TemporaryDirectory() as folder:
            write_loadings_csv(model, os.path.join(folder, 'loadings.csv'))
            write_model_json(model, os.path.join(folder, 'factor_model.json'), top_n=10)
            with open(os.path.join(folder, 'loadings.csv'), encoding='utf-8') as handle:
                header = handle.readline().strip()
            metadata = read_model_json(os.path.join(folder, 'factor_model.json'))
            with open(os.path.join(folder, 'factor_model.json'), encoding='utf-8') as handle:
                self.assertEqual(json.load(handle), metadata)
        self.assertEqual(header, 'term,component_1,component_2')
        self.assertEqual(metadata['k'], 2)
        self.assertEqual(metadata['top_n'], 10)
        self.assertEqual(len(metadata['pe']), 2)
