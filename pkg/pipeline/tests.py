import csv
import json
import os
import tempfile
from io import StringIO
from pathlib import Path

import openpyxl
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, TestCase, override_settings

from analise_temas.exceptions import ArgumentError, ConfigError, IncompleteRunError, NonConvergenceError

from .compare import compare_runs
from .config import load_config, read_config_file
from .exports import export_pdf, export_xlsx
from .models import AnalysisRun
from .runner import STAGES, run_pipeline, sweep_components
from .synthetic import PLANTED_TOPICS, generate_corpus, generate_tweets, write_corpus

GOLDEN = Path(__file__).resolve().parent / 'golden'
GOLDEN_ENV = str(GOLDEN / 'run.env')


def golden_config(output_dir, **overrides):
    return load_config(GOLDEN_ENV, {'output_dir': str(output_dir), **overrides})


def tree_bytes(folder):
    folder = Path(folder)
    return {
        str(path.relative_to(folder)): path.read_bytes()
        for path in sorted(folder.rglob('*')) if path.is_file()
    }


class TempDirMixin:
    def make_dir(self):
        folder = tempfile.TemporaryDirectory()
        self.addCleanup(folder.cleanup)
        return Path(folder.name)


@override_settings(TEMAS_OUTPUT_DIR='')
class ConfigTests(TempDirMixin, SimpleTestCase):
    def write_env(self, content):
        path = self.make_dir() / 'run.env'
        path.write_text(content, encoding='utf-8')
        return str(path)

    def test_file_and_defaults(self):
        config = golden_config('/tmp/saida')
        self.assertEqual(config.input, str(GOLDEN / 'corpus.jsonl'))
        self.assertEqual(config.language, 'es')
        self.assertEqual(config.keywords, ('facebook',))
        self.assertEqual((config.k, config.min_terms), (2, 0))
        self.assertEqual((config.top_n, config.bot_k, config.top_docs), (300, 5, 30))
        self.assertEqual(config.loading_threshold, 0.1)
        self.assertIsNone(config.top_users)
        self.assertIsNone(config.gazetteer)
        self.assertFalse(config.bot_dedup)

    def test_override_beats_file(self):
        self.assertEqual(golden_config('/tmp/saida', k=3).k, 3)

    def test_invalid_k_is_config_error(self):
        with self.assertRaises(ConfigError) as ctx:
            golden_config('/tmp/saida', k=0)
        self.assertIn('k', str(ctx.exception))
        self.assertEqual(ctx.exception.exit_code, 1)

    def test_bot_groups_fixed_for_runs(self):
        with self.assertRaises(ConfigError):
            golden_config('/tmp/saida', bot_k=4)
        config = load_config(GOLDEN_ENV, {'output_dir': '/tmp/saida', 'bot_k': 4}, strict_bot_groups=False)
        self.assertEqual(config.bot_k, 4)

    def test_bot_dedup_values(self):
        for raw, expected in (('1', True), ('yes', True), ('True', True), ('off', False), ('0', False)):
            path = self.write_env(f'INPUT={GOLDEN / "corpus.jsonl"}\nLANGUAGE=es\nOUTPUT_DIR=saida\nBOT_DEDUP={raw}\n')
            self.assertIs(load_config(path).bot_dedup, expected, raw)
        self.assertIs(golden_config('/tmp/saida', bot_dedup=True).bot_dedup, True)
        path = self.write_env(f'INPUT={GOLDEN / "corpus.jsonl"}\nLANGUAGE=es\nOUTPUT_DIR=saida\nBOT_DEDUP=talvez\n')
        with self.assertRaises(ConfigError) as ctx:
            load_config(path)
        self.assertIn('bot_dedup', str(ctx.exception))

    def test_missing_input(self):
        path = self.write_env('INPUT=nao_existe.jsonl\nLANGUAGE=es\nOUTPUT_DIR=saida\n')
        with self.assertRaises(ConfigError):
            load_config(path)

    def test_missing_config_file(self):
        with self.assertRaises(ConfigError):
            load_config('/nao/existe.env', {'output_dir': '/tmp/saida'})

    def test_hashtag_keywords_and_relative_paths(self):
        folder = self.make_dir()
        (folder / 'tweets.jsonl').write_text('', encoding='utf-8')
        env = folder / 'run.env'
        env.write_text('INPUT=tweets.jsonl\nLANGUAGE=ES\nKEYWORDS=#DeleteFacebook, zuckerberg\nOUTPUT_DIR=saida\n', encoding='utf-8')
        config = load_config(str(env))
        self.assertEqual(config.keywords, ('#DeleteFacebook', 'zuckerberg'))
        self.assertEqual(config.language, 'es')
        self.assertEqual(config.output_dir, str(folder / 'saida'))

    def test_unknown_key_warns(self):
        path = self.write_env(f'INPUT={GOLDEN / "corpus.jsonl"}\nLANGUAGE=es\nCOLOUR=azul\n')
        with self.assertLogs('pipeline.config', level='WARNING'):
            values = read_config_file(path)
        self.assertNotIn('colour', values)

    @override_settings(TEMAS_OUTPUT_DIR='/tmp/do_ambiente')
    def test_output_dir_precedence(self):
        path = self.write_env(f'INPUT={GOLDEN / "corpus.jsonl"}\nLANGUAGE=es\nOUTPUT_DIR=/tmp/do_ficheiro\n')
        self.assertEqual(load_config(path).output_dir, '/tmp/do_ambiente')
        self.assertEqual(load_config(path, {'output_dir': '/tmp/da_linha'}).output_dir, '/tmp/da_linha')


class GoldenRunTests(TempDirMixin, SimpleTestCase):
    def setUp(self):
        self.output = self.make_dir() / 'es'
        with self.assertLogs('ingest.archive', level='WARNING'):
            self.report = run_pipeline(golden_config(self.output))

    def test_golden_files(self):
        for name in ('report.txt', 'components.csv', 'geo.csv'):
            self.assertEqual(
                (self.output / name).read_bytes(), (GOLDEN / name).read_bytes(), name,
            )

    def test_output_tree(self):
        self.assertEqual(self.report.files, [
            'bot_clusters.json', 'components.csv', 'components.json', 'dtm.csv',
            'dtm_sparse/indices.npy', 'dtm_sparse/indptr.npy', 'dtm_sparse/shape.json',
            'factor_model.json', 'geo.csv', 'loadings.csv', 'report.txt', 'vocabulary.csv',
        ])
        self.assertFalse(self.output.with_name('es.staging').exists())

    def test_stage_counts(self):
        self.assertEqual(
            [(s.name, s.tweets, s.users) for s in self.report.stages],
            [('Total', 7, 5), ('Without retweets', 6, 5), ('Most active users', 6, 5), ('Humans', 4, 3)],
        )
        meta = json.loads((self.output / 'factor_model.json').read_text(encoding='utf-8'))
        self.assertEqual(meta['stages'][-1], ['Humans', 4, 3])
        self.assertEqual(meta['language'], 'es')
        self.assertEqual(meta['label_prefix'], 'S')

    def test_bot_clusters(self):
        clusters = json.loads((self.output / 'bot_clusters.json').read_text(encoding='utf-8'))
        self.assertEqual(clusters['sizes'], [1, 1, 1, 1, 1])
        self.assertEqual(clusters['threshold'], 0.45)
        self.assertTrue(clusters['within_recommended_range'])

    def test_rerun_replaces_output(self):
        (self.output / 'velho.txt').write_text('x', encoding='utf-8')
        first = tree_bytes(self.output)
        run_pipeline(golden_config(self.output))
        second = tree_bytes(self.output)
        self.assertNotIn('velho.txt', second)
        first.pop('velho.txt')
        self.assertEqual(first, second)

    def test_failure_keeps_previous_output(self):
        before = tree_bytes(self.output)
        with self.assertRaises(ArgumentError):
            run_pipeline(golden_config(self.output, k=6))
        self.assertEqual(tree_bytes(self.output), before)
        self.assertFalse(self.output.with_name('es.staging').exists())

    def test_sweep(self):
        rows = sweep_components(golden_config(self.output), (30, 2, 1))
        self.assertEqual([row[0] for row in rows], [1, 2])
        self.assertAlmostEqual(rows[0][1], 0.75, places=9)
        self.assertAlmostEqual(rows[1][1], 1.0, places=9)
        self.assertEqual(rows[0][3], 0)


class PlantedTopicTests(TempDirMixin, SimpleTestCase):
    def test_recovers_planted_topics(self):
        folder = self.make_dir()
        archive = folder / 'planted.jsonl'
        write_corpus(generate_tweets('es', 3000, seed=7), archive)
        config = load_config(overrides={
            'input': str(archive), 'language': 'es', 'k': 3, 'output_dir': str(folder / 'saida'),
        })
        report = run_pipeline(config)

        planted = {frozenset(topic) for topic in PLANTED_TOPICS['es']}
        recovered = {frozenset(component.preview(10)) for component in report.components}
        self.assertEqual(recovered, planted)
        for component in report.components:
            self.assertLess(abs(component.pe - 100 / 3), 5.0)

        tweets = [stage.tweets for stage in report.stages]
        self.assertEqual([stage.name for stage in report.stages], list(STAGES))
        self.assertEqual(tweets, sorted(tweets, reverse=True))
        self.assertEqual(report.stages[-1].tweets, 3000)

    def test_unconverged_rotation_keeps_previous_output(self):
        folder = self.make_dir()
        archive = folder / 'planted.jsonl'
        write_corpus(generate_tweets('es', 300, seed=7), archive)
        overrides = {'input': str(archive), 'language': 'es', 'k': 3, 'output_dir': str(folder / 'saida')}
        run_pipeline(load_config(overrides=overrides))
        before = tree_bytes(folder / 'saida')

        with self.assertRaises(NonConvergenceError) as ctx:
            run_pipeline(load_config(overrides={**overrides, 'varimax_max_iter': 1}))
        self.assertEqual(ctx.exception.exit_code, 3)
        self.assertEqual(tree_bytes(folder / 'saida'), before)
        self.assertFalse((folder / 'saida.staging').exists())

    def test_generator_is_seeded(self):
        self.assertEqual(generate_tweets('en', 50, seed=3), generate_tweets('en', 50, seed=3))
        self.assertNotEqual(generate_tweets('en', 50, seed=3), generate_tweets('en', 50, seed=4))
        originals = [r for r in generate_tweets('es', 50) if not r['is_retweet'] and r['author_id'].startswith('es_h')]
        self.assertEqual(len(originals), 50)

    def test_unknown_language(self):
        with self.assertRaises(ArgumentError):
            generate_tweets('fr', 10)


class DeterminismTests(TempDirMixin, SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.folder = tempfile.TemporaryDirectory()
        cls.archive = os.path.join(cls.folder.name, 'bilingue.jsonl')
        write_corpus(generate_corpus(120), cls.archive)

    @classmethod
    def tearDownClass(cls):
        cls.folder.cleanup()
        super().tearDownClass()

    def run_language(self, language, output):
        return run_pipeline(load_config(overrides={
            'input': self.archive, 'language': language, 'keywords': 'facebook',
            'k': 3, 'output_dir': str(output),
        }))

    def test_byte_identical_runs(self):
        folder = self.make_dir()
        for language in ('es', 'en'):
            self.run_language(language, folder / f'{language}_1')
            self.run_language(language, folder / f'{language}_2')
            self.assertEqual(tree_bytes(folder / f'{language}_1'), tree_bytes(folder / f'{language}_2'))

    def test_compare_languages(self):
        folder = self.make_dir()
        self.run_language('es', folder / 'es')
        self.run_language('en', folder / 'en')
        table, names = compare_runs(folder / 'es', folder / 'en', folder / 'cmp')
        self.assertEqual(names, ('es', 'en'))
        self.assertEqual(len(table), 3)
        self.assertTrue(table[0].left.component_id.startswith('S'))
        self.assertTrue(table[0].right.component_id.startswith('E'))
        with open(folder / 'cmp' / 'comparison.csv', encoding='utf-8', newline='') as handle:
            rows = list(csv.reader(handle))
        self.assertEqual(rows[0], ['rank', 'es_id', 'es_PE%', 'es_terms', 'en_id', 'en_PE%', 'en_terms'])
        self.assertEqual(len(rows), 4)
        with open(folder / 'cmp' / 'stages_comparison.csv', encoding='utf-8', newline='') as handle:
            stages = list(csv.reader(handle))
        self.assertEqual([row[0] for row in stages[1:]], list(STAGES))


class CompareTests(TempDirMixin, SimpleTestCase):
    def setUp(self):
        self.folder = self.make_dir()
        with self.assertLogs('ingest.archive', level='WARNING'):
            run_pipeline(golden_config(self.folder / 'es'))

    def test_identity_is_symmetric(self):
        table, names = compare_runs(self.folder / 'es', self.folder / 'es', self.folder / 'cmp')
        self.assertEqual(names, ('es_a', 'es_b'))
        for row in table:
            self.assertEqual(row.left, row.right)
        geo = (self.folder / 'cmp' / 'geo_comparison.csv').read_text(encoding='utf-8').splitlines()
        self.assertEqual(geo[1], 'not found,25.0,33.4,25.0,33.4')

    def test_missing_artifact_is_named(self):
        os.remove(self.folder / 'es' / 'factor_model.json')
        with self.assertRaises(IncompleteRunError) as ctx:
            compare_runs(self.folder / 'es', self.folder / 'es', self.folder / 'cmp')
        self.assertIn('factor_model.json', str(ctx.exception))

    def test_missing_directory(self):
        with self.assertRaises(IncompleteRunError):
            compare_runs(self.folder / 'nada', self.folder / 'es', self.folder / 'cmp')

    def test_exports(self):
        pdf_a, pdf_b = self.folder / 'a.pdf', self.folder / 'b.pdf'
        export_pdf(self.folder / 'es', pdf_a)
        export_pdf(self.folder / 'es', pdf_b)
        self.assertTrue(pdf_a.read_bytes().startswith(b'%PDF'))
        self.assertEqual(pdf_a.read_bytes(), pdf_b.read_bytes())

        xlsx = self.folder / 'relatorio.xlsx'
        export_xlsx(self.folder / 'es', xlsx)
        workbook = openpyxl.load_workbook(xlsx)
        self.assertEqual(workbook.sheetnames, ['Relatório', 'Componentes', 'Geografia'])
        self.assertEqual(workbook['Relatório']['A1'].value, 'Relatório de execução')
        row = [cell.value for cell in workbook['Componentes'][2]][:5]
        self.assertEqual(row, ['S1', 60.0, 'multa', 'privacidad', 'rgpd'])


class CommandTests(TempDirMixin, TestCase):
    def call(self, name, *args, **options):
        out = StringIO()
        call_command(name, *args, stdout=out, **options)
        return out.getvalue()

    def test_run_records_analysis(self):
        output = self.make_dir() / 'es'
        with self.assertLogs('ingest.archive', level='WARNING'):
            text = self.call('run', config=GOLDEN_ENV, output_dir=str(output))
        humans = (GOLDEN / 'report.txt').read_text(encoding='utf-8').splitlines()[9]
        self.assertTrue(humans.startswith('Humans'))
        self.assertIn(humans, text)
        run = AnalysisRun.objects.get()
        self.assertEqual((run.kind, run.status, run.language), ('RUN', 'DONE', 'es'))
        self.assertEqual(run.components, 2)
        self.assertAlmostEqual(run.fit, 1.0, places=6)
        self.assertEqual(run.bot_threshold, 0.45)
        self.assertEqual(run.stage_counts['Total'], [7, 5])
        self.assertIsNotNone(run.finished_at)

    def test_config_error_exit_code(self):
        with self.assertRaises(CommandError) as ctx:
            self.call('run', config=GOLDEN_ENV, output_dir=str(self.make_dir()), k=0)
        self.assertEqual(ctx.exception.returncode, 1)
        self.assertFalse(AnalysisRun.objects.exists())

    def test_failed_run_is_recorded(self):
        output = self.make_dir() / 'es'
        with self.assertRaises(CommandError) as ctx:
            self.call('run', config=GOLDEN_ENV, output_dir=str(output), k=9)
        self.assertEqual(ctx.exception.returncode, 2)
        run = AnalysisRun.objects.get()
        self.assertEqual(run.status, 'FAILED')
        self.assertIn('k=9', run.error_message)
        self.assertFalse(output.exists())

    def test_unconverged_run_exit_code(self):
        folder = self.make_dir()
        archive = folder / 'sintetico.jsonl'
        write_corpus(generate_tweets('es', 300, seed=7), archive)
        with self.assertRaises(CommandError) as ctx:
            self.call('run', '--input', str(archive), '--lang', 'es', '--k', '3',
                      '--varimax-max-iter', '1', '--output-dir', str(folder / 'es'))
        self.assertEqual(ctx.exception.returncode, 3)
        run = AnalysisRun.objects.get()
        self.assertEqual((run.status, run.language), ('FAILED', 'es'))
        self.assertIn('convergência', run.error_message)
        self.assertFalse((folder / 'es').exists())

    def test_sweep_command(self):
        output = self.make_dir() / 'sweep'
        text = self.call('sweep_k', config=GOLDEN_ENV, output_dir=str(output), grid='1,2,30')
        self.assertIn('[30]', text)
        lines = (output / 'sweep.csv').read_text(encoding='utf-8').splitlines()
        self.assertEqual(lines[0], 'k,fit,variance_share,iterations,converged')
        self.assertEqual([line.split(',')[0] for line in lines[1:]], ['1', '2'])
        self.assertEqual(lines[2].split(',')[1], '1.000000')
        self.assertEqual(AnalysisRun.objects.get().kind, 'SWEEP')

    def test_bot_threshold_command(self):
        summary = json.loads(self.call('bot_threshold', config=GOLDEN_ENV, json=True))
        self.assertEqual(summary['sizes'], [1, 2, 1, 1, 1])
        self.assertEqual(summary['threshold'], 0.45)
        self.assertTrue(summary['within_recommended_range'])

        text = self.call('bot_threshold', config=GOLDEN_ENV, bot_k=3)
        self.assertIn('Grupo 3', text)
        self.assertIn('5 grupos', text)

    def test_generate_and_compare_commands(self):
        folder = self.make_dir()
        archive = folder / 'sintetico.jsonl'
        self.call('generate_corpus', str(archive), docs=20)
        self.assertEqual(len(archive.read_text(encoding='utf-8').splitlines()), 88)

        with self.assertLogs('ingest.archive', level='WARNING'):
            self.call('run', config=GOLDEN_ENV, output_dir=str(folder / 'es'))
        text = self.call('compare', str(folder / 'es'), str(folder / 'es'), output_dir=str(folder / 'cmp'))
        self.assertIn('es_a_id', text)
        self.assertTrue((folder / 'cmp' / 'comparison.txt').exists())
        self.assertEqual(AnalysisRun.objects.filter(kind='COMPARE', status='DONE').count(), 1)

    def test_compare_incomplete_run(self):
        with self.assertRaises(CommandError) as ctx:
            self.call('compare', str(self.make_dir()), str(self.make_dir()), output_dir=str(self.make_dir()))
        self.assertEqual(ctx.exception.returncode, 2)
        self.assertIn('report.txt', str(ctx.exception))

    def test_export_command(self):
        folder = self.make_dir()
        with self.assertLogs('ingest.archive', level='WARNING'):
            self.call('run', config=GOLDEN_ENV, output_dir=str(folder / 'es'))
        self.call('export_report', str(folder / 'es'), str(folder / 'es.xlsx'), format='xlsx')
        self.assertEqual(openpyxl.load_workbook(folder / 'es.xlsx')['Geografia']['A2'].value, 'not found')
