import os
import tempfile

from django.test import SimpleTestCase

from analise_temas.exceptions import ArgumentError, ConfigError
from ingest.tests import corpus_of, tweet

from .lexicon import Lexicon, default_lexicon, load_lexicon, normalize, prepare_documents
from .tokenizer import tokenize


class TokenizeTests(SimpleTestCase):
    def test_whitespace_and_case(self):
        self.assertEqual(tokenize("Zuckerberg testifies today"), ['zuckerberg', 'testifies', 'today'])

    def test_hashtag_url_and_mention(self):
        self.assertEqual(
            tokenize("#CambridgeAnalytica scandal https://t.co/x @user"),
            ['cambridgeanalytica', 'scandal'],
        )

    def test_empty(self):
        self.assertEqual(tokenize(""), [])
        self.assertEqual(tokenize("   \n\t"), [])

    def test_edge_punctuation_only(self):
        self.assertEqual(tokenize('"Datos," (privacidad)... follow-us!'), ['datos', 'privacidad', 'follow-us'])

    def test_diacritics_and_unicode_case(self):
        self.assertEqual(tokenize("PROTECCIÓN Información"), ['protección', 'información'])

    def test_symbols_and_www(self):
        self.assertEqual(tokenize("🌙 www.facebook.com ¿qué? .@usuario: hola"), ['qué', 'hola'])

    def test_never_emits_reserved_characters(self):
        text = "a#b @c d@e #f http://x.y/z RT:@g #h#i www.j.k @"
        for token in tokenize(text):
            self.assertNotIn('#', token)
            self.assertNotIn('@', token)
            self.assertNotIn('://', token)


class NormalizeTests(SimpleTestCase):
    def test_conversions(self):
        self.assertEqual(normalize(['bf'], Lexicon(conversions={'bf': 'boyfriend'})), ['boyfriend'])
        self.assertEqual(normalize(['hieght'], Lexicon(conversions={'hieght': 'height'})), ['height'])

    def test_stopwords(self):
        self.assertEqual(normalize(['the', 'data'], Lexicon(stopwords={'the'})), ['data'])

    def test_conversion_then_lemma(self):
        lexicon = Lexicon(conversions={'usrs': 'users'}, lemmas={'users': 'user'})
        self.assertEqual(normalize(['usrs', 'users', 'law'], lexicon), ['user', 'user', 'law'])

    def test_lexicon_invariants(self):
        with self.assertRaises(ArgumentError):
            Lexicon(stopwords={'The'})
        with self.assertRaises(ArgumentError):
            Lexicon(stopwords={'the'}, conversions={'teh': 'the'})

    def test_open_lexicon_detected(self):
        self.assertFalse(Lexicon(lemmas={'a1': 'a2', 'a2': 'a3'}).is_closed())

    def test_shipped_lexicons_are_idempotent(self):
        for language in ('es', 'en'):
            lexicon = default_lexicon(language)
            self.assertTrue(lexicon.is_closed(), language)
            self.assertTrue(lexicon.stopwords)
            tokens = list(lexicon.conversions) + list(lexicon.lemmas) + ['sol', 'data']
            once = normalize(tokens, lexicon)
            self.assertEqual(normalize(once, lexicon), once)

    def test_shipped_english_examples(self):
        lexicon = default_lexicon('en')
        self.assertEqual(normalize(tokenize("The BF leaked users data"), lexicon), ['boyfriend', 'leak', 'user', 'data'])

    def test_unknown_language_is_empty(self):
        with self.assertLogs('textprep.lexicon', level='WARNING'):
            self.assertEqual(default_lexicon('xx'), Lexicon())


class LexiconFileTests(SimpleTestCase):
    def write(self, content):
        handle = tempfile.NamedTemporaryFile('w', delete=False, encoding='utf-8', suffix='.txt')
        with handle:
            handle.write(content)
        self.addCleanup(os.unlink, handle.name)
        return handle.name

    def test_files_override_base(self):
        stopwords = self.write("# lista\nel\nla\n\n")
        lemmas = self.write("perros\tperro\n")
        lexicon = load_lexicon(stopwords=stopwords, lemmas=lemmas, base=Lexicon(conversions={'q': 'k'}))
        self.assertEqual(lexicon.stopwords, frozenset({'el', 'la'}))
        self.assertEqual(dict(lexicon.lemmas), {'perros': 'perro'})
        self.assertEqual(dict(lexicon.conversions), {'q': 'k'})

    def test_bad_files_are_config_errors(self):
        with self.assertRaises(ConfigError):
            load_lexicon(lemmas=self.write("sem tab\n"))
        with self.assertRaises(ConfigError):
            load_lexicon(stopwords='/nao/existe.txt')
        with self.assertRaises(ConfigError):
            load_lexicon(stopwords=self.write("Mayúscula\n"))


class PrepareDocumentsTests(SimpleTestCase):
    def test_keeps_order_and_empty_docs(self):
        corpus = corpus_of(tweet('1', text='el dato'), tweet('2', text='@solo https://t.co/z'))
        docs = prepare_documents(corpus, Lexicon(stopwords={'el'}))
        self.assertEqual([(d.doc_id, d.tokens) for d in docs], [('1', ('dato',)), ('2', ())])
