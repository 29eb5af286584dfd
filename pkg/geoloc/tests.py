import os
import tempfile
from datetime import timedelta

from django.test import SimpleTestCase

from analise_temas.exceptions import ArgumentError, ConfigError
from ingest.corpus import TweetRecord
from ingest.tests import STAMP, corpus_of, tweet

from .gazetteer import Gazetteer, default_gazetteer, load_gazetteer, normalize_place, resolve_location
from .tables import NOT_FOUND, OTHER, largest_remainder, location_table, user_locations, write_geo_csv

TEST_GAZETTEER = Gazetteer({
    'chile': 'Chile', 'valparaíso': 'Chile', 'santiago de chile': 'Chile',
    'españa': 'Spain', 'madrid': 'Spain', 'barcelona': 'Spain', 'sevilla': 'Spain',
    'méxico': 'Mexico', 'cdmx': 'Mexico', 'bogotá': 'Colombia', 'colombia': 'Colombia',
    'usa': 'United States', 'seattle': 'United States', 'wa': 'United States', 'new york': 'United States',
    'argentina': 'Argentina', 'buenos aires': 'Argentina', 'perú': 'Peru', 'lima': 'Peru',
    'uk': 'United Kingdom',
})

CASES = [
    ("Valparaíso, Chile", 'Chile'),
    ("CHILE", 'Chile'),
    ("chile", 'Chile'),
    ("Chilé", 'Chile'),
    ("the moon 🌙", None),
    ("", None),
    (None, None),
    ("Seattle, WA, USA", 'United States'),
    ("Seattle", 'United States'),
    ("  Madrid  ", 'Spain'),
    ("Madrid, España", 'Spain'),
    ("Barcelona, Catalunya", 'Spain'),
    ("Catalunya", None),
    ("Sevilla,Andalucía", 'Spain'),
    ("MÉXICO", 'Mexico'),
    ("Mexico", 'Mexico'),
    ("CDMX, México", 'Mexico'),
    ("Bogota", 'Colombia'),
    ("Medellín, Colombia", 'Colombia'),
    ("New   York", 'United States'),
    ("new york, usa", 'United States'),
    ("Buenos Aires, Argentina", 'Argentina'),
    ("Lima - Perú", None),
    ("Lima, Peru", 'Peru'),
    ("Santiago de Chile", 'Chile'),
    ("Santiago", None),
    ("London, UK", 'United Kingdom'),
    ("Earth", None),
    ("Madrid, USA", 'United States'),
    (",,,", None),
]


def located_tweet(tweet_id, author, location, minutes=0):
    return TweetRecord(
        id=tweet_id, text='texto', language='es', author_id=author, is_retweet=False,
        created_at=STAMP + timedelta(minutes=minutes), user_location=location,
    )


class GazetteerTests(SimpleTestCase):
    def test_resolution_suite(self):
        self.assertEqual(len(TEST_GAZETTEER), 20)
        self.assertEqual(len(CASES), 30)
        for raw, expected in CASES:
            self.assertEqual(resolve_location(raw, TEST_GAZETTEER), expected, raw)

    def test_normalize_place(self):
        self.assertEqual(normalize_place("  Ciudad   de MÉXICO "), 'ciudad de mexico')
        self.assertEqual(normalize_place(None), '')

    def test_load_first_entry_wins(self):
        handle = tempfile.NamedTemporaryFile('w', delete=False, encoding='utf-8', suffix='.tsv')
        with handle:
            handle.write("# alias\tcountry\nCórdoba\tArgentina\ncordoba\tSpain\n\nlima\tPeru\n")
        self.addCleanup(os.unlink, handle.name)
        with self.assertLogs('geoloc.gazetteer', level='WARNING'):
            gazetteer = load_gazetteer(handle.name)
        self.assertEqual(len(gazetteer), 2)
        self.assertEqual(gazetteer.resolve('Córdoba'), 'Argentina')

    def test_bad_gazetteer(self):
        with self.assertRaises(ConfigError):
            load_gazetteer('/nao/existe.tsv')

    def test_shipped_gazetteer(self):
        gazetteer = default_gazetteer()
        self.assertEqual(gazetteer.resolve('Seattle, WA, USA'), 'United States')
        self.assertEqual(gazetteer.resolve('Córdoba, Argentina'), 'Argentina')
        self.assertEqual(gazetteer.resolve('Bogotá D.C., Colombia'), 'Colombia')


class LocationTableTests(SimpleTestCase):
    def test_two_users(self):
        corpus = corpus_of(
            *(tweet(f'c{i}', author='a', location='Valparaíso, Chile') for i in range(3)),
            tweet('x', author='b', location='the moon'),
        )
        table = location_table(corpus, TEST_GAZETTEER)
        self.assertEqual(table.rounded(), [(NOT_FOUND, 25.0, 50.0), ('Chile', 75.0, 50.0)])

    def test_all_unresolved(self):
        corpus = corpus_of(tweet('1', author='a'), tweet('2', author='b', location='Mars'))
        self.assertEqual(location_table(corpus, TEST_GAZETTEER).rounded(), [(NOT_FOUND, 100.0, 100.0)])

    def test_other_row_and_exact_sums(self):
        corpus = corpus_of(
            tweet('1', author='a', location='Chile'),
            tweet('2', author='b', location='Madrid'),
            tweet('3', author='c', location='Lima'),
        )
        rounded = location_table(corpus, TEST_GAZETTEER, top_n=1).rounded()
        self.assertEqual([row[0] for row in rounded], [NOT_FOUND, 'Chile', OTHER])
        self.assertEqual(rounded[1][1:], (33.3, 33.3))
        self.assertEqual(rounded[2][1:], (66.7, 66.7))
        self.assertAlmostEqual(sum(row[1] for row in rounded), 100.0, places=9)
        self.assertAlmostEqual(sum(row[2] for row in rounded), 100.0, places=9)

    def test_rows_ordered_by_tweets(self):
        corpus = corpus_of(
            tweet('1', author='a', location='Chile'),
            tweet('2', author='b', location='Madrid'),
            tweet('3', author='b', location='Madrid'),
        )
        table = location_table(corpus, TEST_GAZETTEER)
        self.assertEqual([row.country for row in table.rows], [NOT_FOUND, 'Spain', 'Chile'])

    def test_latest_location_wins(self):
        corpus = corpus_of(
            located_tweet('1', 'a', 'Madrid', minutes=0),
            located_tweet('2', 'a', 'Lima, Peru', minutes=5),
            located_tweet('3', 'a', None, minutes=10),
        )
        self.assertEqual(user_locations(corpus), {'a': 'Lima, Peru'})

    def test_invalid_top_n(self):
        with self.assertRaises(ArgumentError):
            location_table(corpus_of(tweet('1')), TEST_GAZETTEER, top_n=0)

    def test_largest_remainder(self):
        self.assertEqual(largest_remainder([100 / 3] * 3), [33.4, 33.3, 33.3])
        self.assertEqual(largest_remainder([12.25, 87.75]), [12.3, 87.7])

    def test_geo_csv(self):
        corpus = corpus_of(tweet('1', author='a', location='Chile'), tweet('2', author='b'))
        with tempfile.TemporaryDirectory() as folder:
            path = os.path.join(folder, 'geo.csv')
            write_geo_csv(location_table(corpus, TEST_GAZETTEER), path)
            with open(path, 'rb') as handle:
                content = handle.read()
        self.assertEqual(content, b'country,% tweets,% users\nnot found,50.0,50.0\nChile,50.0,50.0\n')
