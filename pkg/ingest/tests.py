import json
import os
import tempfile
from datetime import datetime, timezone

from django.test import SimpleTestCase

from analise_temas.exceptions import ArgumentError, DataError, MalformedRecordError

from .archive import apply_bot_scores, load_bot_scores, load_keywords, parse_archive
from .corpus import (
    Corpus, TweetRecord, drop_retweets, filter_keywords, rank_users_by_activity, restrict_to_users,
)

STAMP = datetime(2018, 4, 10, 12, 0, tzinfo=timezone.utc)


def tweet(tweet_id, author='a', text='texto', retweet=False, language='es', location=None):
    return TweetRecord(
        id=tweet_id, text=text, language=language, author_id=author,
        is_retweet=retweet, created_at=STAMP, user_location=location,
    )


def corpus_of(*tweets, language='es'):
    return Corpus.build(language, tweets)


class ArchiveMixin:
    def write_archive(self, lines):
        handle = tempfile.NamedTemporaryFile('w', suffix='.jsonl', delete=False, encoding='utf-8')
        with handle:
            for line in lines:
                handle.write(line if isinstance(line, str) else json.dumps(line, ensure_ascii=False))
                handle.write('\n')
        self.addCleanup(os.unlink, handle.name)
        return handle.name


def record(tweet_id, lang='es', author='u1', **extra):
    payload = {
        'id': tweet_id, 'text': f'tweet {tweet_id}', 'lang': lang, 'author_id': author,
        'is_retweet': False, 'created_at': '2018-04-10T12:00:00Z',
    }
    payload.update(extra)
    return payload


class ParseArchiveTests(ArchiveMixin, SimpleTestCase):
    def test_filters_by_language(self):
        path = self.write_archive([record('1'), record('2', lang='en'), record('3', author='u2')])
        corpus, stats = parse_archive(path, 'es')
        self.assertEqual([t.id for t in corpus.tweets], ['1', '3'])
        self.assertEqual(stats.other_language, 1)
        self.assertEqual({u: p.tweet_count for u, p in corpus.users.items()}, {'u1': 1, 'u2': 1})

    def test_empty_file(self):
        corpus, stats = parse_archive(self.write_archive([]), 'es')
        self.assertEqual(corpus.tweet_count, 0)
        self.assertEqual(corpus.user_count, 0)
        self.assertEqual(stats.malformed_count, 0)

    def test_malformed_line_is_skipped_with_warning(self):
        path = self.write_archive([record('1'), '{not json', record('2')])
        with self.assertLogs('ingest.archive', level='WARNING'):
            corpus, stats = parse_archive(path, 'es')
        self.assertEqual(corpus.tweet_count, 2)
        self.assertEqual(stats.malformed_count, 1)
        self.assertEqual(stats.malformed[0].line_number, 2)

    def test_malformed_line_aborts_when_asked(self):
        path = self.write_archive([record('1'), record('2', text='')])
        with self.assertRaises(MalformedRecordError) as ctx:
            parse_archive(path, 'es', on_malformed='abort')
        self.assertEqual(ctx.exception.line_number, 2)

    def write_bytes_archive(self, content):
        handle = tempfile.NamedTemporaryFile('wb', suffix='.jsonl', delete=False)
        with handle:
            handle.write(content)
        self.addCleanup(os.unlink, handle.name)
        return handle.name

    def test_invalid_utf8_line_is_skipped(self):
        good = [json.dumps(record(i), ensure_ascii=False).encode('utf-8') for i in ('1', '3')]
        bad = json.dumps(record('2')).encode('utf-8').replace(b'tweet 2', b'tweet \xff\xfe')
        path = self.write_bytes_archive(b'\n'.join([good[0], bad, good[1]]) + b'\n')
        with self.assertLogs('ingest.archive', level='WARNING'):
            corpus, stats = parse_archive(path, 'es')
        self.assertEqual([t.id for t in corpus.tweets], ['1', '3'])
        self.assertEqual(stats.malformed_count, 1)
        self.assertEqual(stats.malformed[0].line_number, 2)

    def test_invalid_utf8_line_aborts_when_asked(self):
        path = self.write_bytes_archive(b'\xff\xfe\n' + json.dumps(record('1')).encode('utf-8') + b'\n')
        with self.assertRaises(MalformedRecordError) as ctx:
            parse_archive(path, 'es', on_malformed='abort')
        self.assertEqual(ctx.exception.line_number, 1)
        self.assertEqual(ctx.exception.exit_code, 2)

    def test_duplicate_id_is_malformed(self):
        path = self.write_archive([record('1'), record('1')])
        with self.assertLogs('ingest.archive', level='WARNING'):
            corpus, stats = parse_archive(path, 'es')
        self.assertEqual(corpus.tweet_count, 1)
        self.assertEqual(stats.malformed_count, 1)

    def test_inline_bot_score_and_location(self):
        path = self.write_archive([
            record('1', bot_score=0.25, user_location='Madrid, España', is_retweet='true'),
        ])
        corpus, _ = parse_archive(path, 'ES')
        self.assertEqual(corpus.users['u1'].bot_score, 0.25)
        self.assertTrue(corpus.tweets[0].is_retweet)
        self.assertEqual(corpus.tweets[0].user_location, 'Madrid, España')

    def test_missing_file(self):
        with self.assertRaises(DataError):
            parse_archive('/nao/existe.jsonl', 'es')


class CorpusOperationTests(SimpleTestCase):
    def test_keyword_substring_match(self):
        corpus = corpus_of(tweet('1', text='Zuckerberg testifies'), tweet('2', text='weather'))
        self.assertEqual([t.id for t in filter_keywords(corpus, ['zuckerberg']).tweets], ['1'])

    def test_keyword_is_case_insensitive_with_hashtag(self):
        corpus = corpus_of(tweet('1', text='so much #cambridgeanalytica today'))
        self.assertEqual(filter_keywords(corpus, ['#CambridgeAnalytica']).tweet_count, 1)

    def test_keyword_filter_identity_and_idempotence(self):
        corpus = corpus_of(tweet('1', text='data leak'), tweet('2', text='data law'), tweet('3', text='sol'))
        once = filter_keywords(corpus, ['data'])
        self.assertEqual(once.tweets, filter_keywords(once, ['data']).tweets)
        everything = corpus_of(tweet('1', text='data'), tweet('2', text='Data'))
        self.assertEqual(filter_keywords(everything, ['data']).tweets, everything.tweets)

    def test_empty_keyword_list(self):
        with self.assertRaises(ArgumentError):
            filter_keywords(corpus_of(tweet('1')), [])

    def test_drop_retweets(self):
        corpus = corpus_of(tweet('1'), tweet('2', retweet=True), tweet('3', author='b'))
        dropped = drop_retweets(corpus)
        self.assertEqual([t.id for t in dropped.tweets], ['1', '3'])
        self.assertEqual(dropped.users['a'].tweet_count, 1)
        self.assertEqual(drop_retweets(dropped).tweets, dropped.tweets)

    def test_drop_retweets_without_retweets_is_identity(self):
        corpus = corpus_of(tweet('1'), tweet('2'))
        self.assertEqual(drop_retweets(corpus).tweets, corpus.tweets)

    def test_all_retweets_gives_valid_empty_corpus(self):
        dropped = drop_retweets(corpus_of(tweet('1', retweet=True)))
        self.assertEqual(dropped.tweet_count, 0)
        self.assertEqual(dropped.user_count, 0)

    def test_user_counts_sum_to_tweets(self):
        corpus = corpus_of(*(tweet(str(i), author=f'u{i % 3}', retweet=i % 4 == 0) for i in range(20)))
        for derived in (corpus, drop_retweets(corpus), filter_keywords(corpus, ['texto'])):
            self.assertEqual(sum(u.tweet_count for u in derived.users.values()), derived.tweet_count)

    def test_rank_users_tie_break(self):
        tweets = [tweet(f'a{i}', author='a') for i in range(5)]
        tweets += [tweet(f'b{i}', author='b') for i in range(9)]
        tweets += [tweet(f'c{i}', author='c') for i in range(5)]
        corpus = corpus_of(*tweets)
        self.assertEqual([u.user_id for u in rank_users_by_activity(corpus, 2)], ['b', 'a'])
        self.assertEqual(rank_users_by_activity(corpus, 2), rank_users_by_activity(corpus, 2))

    def test_rank_users_clamps_and_single_user(self):
        corpus = corpus_of(tweet('1', author='x'), tweet('2', author='y'))
        self.assertEqual(len(rank_users_by_activity(corpus, 10)), 2)
        single = corpus_of(tweet('1', author='x'))
        self.assertEqual([u.user_id for u in rank_users_by_activity(single, 1)], ['x'])
        with self.assertRaises(ArgumentError):
            rank_users_by_activity(single, 0)

    def test_restrict_to_users(self):
        corpus = corpus_of(tweet('1', author='x'), tweet('2', author='y'), tweet('3', author='x'))
        top = rank_users_by_activity(corpus, 1)
        restricted = restrict_to_users(corpus, top)
        self.assertEqual([t.id for t in restricted.tweets], ['1', '3'])
        self.assertEqual(list(restricted.users), ['x'])

    def test_tweet_invariants(self):
        with self.assertRaises(ArgumentError):
            tweet('', text='x')
        with self.assertRaises(ArgumentError):
            tweet('1', text='')
        with self.assertRaises(ArgumentError):
            corpus_of(tweet('1', language='en'))


class SidecarTests(ArchiveMixin, SimpleTestCase):
    def test_bot_scores_with_header_and_tabs(self):
        path = self.write_archive(['user_id\tscore', 'a\t0.2', 'b\t0.7'])
        self.assertEqual(load_bot_scores(path), {'a': 0.2, 'b': 0.7})

    def test_bot_scores_out_of_range(self):
        path = self.write_archive(['a,1.5'])
        with self.assertRaises(MalformedRecordError):
            load_bot_scores(path)

    def test_sidecar_overrides_inline_scores(self):
        corpus = corpus_of(tweet('1', author='a'), tweet('2', author='b'))
        scored = apply_bot_scores(corpus, {'a': 0.9, 'zz': 0.1})
        self.assertEqual(scored.users['a'].bot_score, 0.9)
        self.assertIsNone(scored.users['b'].bot_score)
        self.assertNotIn('zz', scored.users)

    def test_keywords_file(self):
        path = self.write_archive(['#DeleteFacebook', '', 'Zuckerberg', '# comentário'])
        self.assertEqual(load_keywords(path), ['#DeleteFacebook', 'Zuckerberg'])
