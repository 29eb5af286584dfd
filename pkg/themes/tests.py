import csv
import os
import tempfile

from django.test import SimpleTestCase

from analise_temas.exceptions import ArgumentError, DataError
from dtm.matrix import build_matrix
from dtm.vocabulary import Vocabulary
from factor.model import fit_factor_model
from factor.tests import two_topic_matrix
from textprep.lexicon import TokenizedDoc

from .reports import (
    ComponentReport, build_component_reports, comparison_table, label_prefix, read_component_reports,
    render_comparison_text, write_comparison_csv, write_components_csv, write_components_json,
)
from .scoring import score_documents, top_documents

VOCAB = Vocabulary(terms=('lei', 'dados', 'voto'), doc_frequency=(50.0, 50.0, 25.0))


def small_matrix():
    docs = [
        TokenizedDoc('d1', ('lei', 'dados')),
        TokenizedDoc('d2', ('voto',)),
        TokenizedDoc('d3', ('lei', 'voto')),
    ]
    return build_matrix(docs, VOCAB, min_terms=0)


def report(label, pe, *terms):
    return ComponentReport(component_id=label, pe=pe, terms=tuple((t, 0.5) for t in terms))


class ScoringTests(SimpleTestCase):
    def test_sum_of_positive_loadings(self):
        scores = score_documents(small_matrix(), [0.5, 0.3, -0.4])
        self.assertAlmostEqual(scores['d1'], 0.8)
        self.assertEqual(scores['d2'], 0.0)
        self.assertAlmostEqual(scores['d3'], 0.5)

    def test_adding_positive_term_never_lowers_score(self):
        column = [0.2, 0.1, 0.4]
        before = score_documents(small_matrix(), column)
        docs = [TokenizedDoc('d1', ('lei', 'dados', 'voto'))]
        after = score_documents(build_matrix(docs, VOCAB), column)
        self.assertGreaterEqual(after['d1'], before['d1'])

    def test_wrong_width(self):
        with self.assertRaises(ArgumentError):
            score_documents(small_matrix(), [0.1, 0.2])

    def test_top_documents(self):
        self.assertEqual([d for d, _ in top_documents({'d1': 0.8, 'd2': 0.8, 'd3': 0.1}, 2)], ['d1', 'd2'])
        self.assertEqual(top_documents({'b': 0.8, 'a': 0.8}, 5), [('a', 0.8), ('b', 0.8)])
        self.assertEqual(top_documents({'d1': 0.0, 'd2': 0.0}, 30), [])
        with self.assertRaises(ArgumentError):
            top_documents({'d1': 1.0}, 0)


class ComponentReportTests(SimpleTestCase):
    def setUp(self):
        self.matrix = two_topic_matrix()
        self.model = fit_factor_model(self.matrix, 2)
        self.texts = {doc_id: f'texto {doc_id}' for doc_id in self.matrix.doc_ids}

    def test_reports_follow_model(self):
        reports = build_component_reports(self.model, self.matrix, self.texts, threshold=0.1, top_k=5, prefix='S')
        self.assertEqual([r.component_id for r in reports], ['S1', 'S2'])
        for item in reports:
            self.assertTrue(all(loading > 0.1 for _, loading in item.terms))
            loadings = [loading for _, loading in item.terms]
            self.assertEqual(loadings, sorted(loadings, reverse=True))
            self.assertLessEqual(len(item.top_docs), 5)
            scores = [(-score, doc_id) for doc_id, score, _ in item.top_docs]
            self.assertEqual(scores, sorted(scores))
            self.assertTrue(all(text == f'texto {doc_id}' for doc_id, _, text in item.top_docs))

    def test_high_threshold_flags_component(self):
        with self.assertLogs('themes.reports', level='WARNING'):
            reports = build_component_reports(self.model, self.matrix, self.texts, threshold=1.0, prefix='E')
        self.assertTrue(all(r.is_empty for r in reports))

    def test_label_prefix(self):
        self.assertEqual(label_prefix('es'), 'S')
        self.assertEqual(label_prefix('en'), 'E')
        self.assertEqual(label_prefix('pt'), 'P')
        self.assertEqual(label_prefix('es', 'X'), 'X')

    def test_components_csv_and_json(self):
        reports = [
            ComponentReport('S1', 13.04, terms=(('datos', 0.61), ('facebook', 0.4)),
                            negative_terms=(('sol', -0.2),), top_docs=(('7', 1.01, 'Mis datos'),)),
            report('S2', 7.0),
        ]
        with tempfile.TemporaryDirectory() as folder:
            csv_path = os.path.join(folder, 'components.csv')
            json_path = os.path.join(folder, 'components.json')
            write_components_csv(reports, csv_path)
            write_components_json(reports, json_path)
            with open(csv_path, encoding='utf-8', newline='') as handle:
                rows = list(csv.reader(handle))
            loaded = read_component_reports(json_path)
        self.assertEqual(rows[0], ['id', 'PE%', 'word1', 'word2', 'word3', 'word4', 'word5', 'word6', 'word7'])
        self.assertEqual(rows[1], ['S1', '13.0', 'datos', 'facebook', '', '', '', '', ''])
        self.assertEqual(rows[2][:3], ['S2', '7.0', ''])
        self.assertEqual(loaded, reports)

    def test_unreadable_json(self):
        with self.assertRaises(DataError):
            read_component_reports('/nao/existe/components.json')


class ComparisonTests(SimpleTestCase):
    def test_pairs_by_rank(self):
        spanish = [report(f'S{i}', 20.0 - i, 'datos') for i in range(1, 12)]
        english = [report(f'E{i}', 20.0 - i, 'data') for i in range(1, 12)]
        table = comparison_table(spanish, english)
        self.assertEqual(len(table), 11)
        self.assertEqual((table[0].left.component_id, table[0].right.component_id), ('S1', 'E1'))

    def test_unequal_lengths_are_padded(self):
        table = comparison_table([report('S1', 60.0), report('S2', 40.0)], [report('E1', 100.0)])
        self.assertIsNone(table[1].right)
        with tempfile.TemporaryDirectory() as folder:
            path = os.path.join(folder, 'comparison.csv')
            write_comparison_csv(table, path, names=('es', 'en'))
            with open(path, encoding='utf-8', newline='') as handle:
                rows = list(csv.reader(handle))
        self.assertEqual(rows[0], ['rank', 'es_id', 'es_PE%', 'es_terms', 'en_id', 'en_PE%', 'en_terms'])
        self.assertEqual(rows[2], ['2', 'S2', '40.0', '', '', '', ''])

    def test_single_and_identity(self):
        one = [report('S1', 100.0, 'datos', 'ley')]
        table = comparison_table(one, one)
        self.assertEqual(len(table), 1)
        self.assertEqual(table[0].left, table[0].right)
        text = render_comparison_text(table)
        self.assertIn('datos, ley', text)
        self.assertTrue(text.endswith('\n'))

    def test_sorted_by_pe(self):
        table = comparison_table([report('S2', 10.0), report('S1', 90.0)], [report('E1', 100.0)])
        self.assertEqual(table[0].left.component_id, 'S1')

    def test_empty_side(self):
        with self.assertRaises(ArgumentError):
            comparison_table([], [report('E1', 100.0)])
