import itertools
import random
from fractions import Fraction

from django.test import SimpleTestCase

from analise_temas.exceptions import ArgumentError
from ingest.corpus import Corpus, UserProfile
from ingest.tests import tweet

from .ckmeans import ClusterResult, ckmeans_1d, segment_ssq
from .threshold import BotThreshold, cluster_bot_scores, derive_bot_threshold, filter_bots


def brute_force_wcss(values, k, number=float):
    """Menor WCSS entre todas as partições contíguas dos valores ordenados em k grupos."""
    values = sorted(number(v) for v in values)
    n = len(values)
    best = None
    for cuts in itertools.combinations(range(1, n), k - 1):
        bounds = (0,) + cuts + (n,)
        total = number(0)
        for lo, hi in zip(bounds, bounds[1:]):
            segment = values[lo:hi]
            mean = sum(segment, number(0)) / len(segment)
            total += sum(((v - mean) ** 2 for v in segment), number(0))
        if best is None or total < best:
            best = total
    return best


def exact_wcss(result):
    total = Fraction(0)
    for cluster in range(1, result.k + 1):
        segment = [Fraction(v) for v in result.members(cluster)]
        mean = sum(segment) / len(segment)
        total += sum((v - mean) ** 2 for v in segment)
    return total


class CkmeansTests(SimpleTestCase):
    def test_two_clear_groups(self):
        result = ckmeans_1d([0.50, 0.10, 0.52, 0.12], 2)
        self.assertEqual(result.members(1), [0.10, 0.12])
        self.assertEqual(result.members(2), [0.50, 0.52])
        self.assertAlmostEqual(result.wcss, 0.0004, places=12)
        self.assertEqual(result.assignments, (1, 1, 2, 2))

    def test_single_cluster_is_total_ssq(self):
        scores = [0.3, 0.9, 0.1, 0.45, 0.7]
        result = ckmeans_1d(scores, 1)
        self.assertEqual(result.sizes, (5,))
        self.assertAlmostEqual(result.wcss, segment_ssq(scores), places=14)

    def test_k_equals_n_gives_singletons(self):
        result = ckmeans_1d([0.4, 0.1, 0.3, 0.2], 4)
        self.assertEqual(result.sizes, (1, 1, 1, 1))
        self.assertEqual(result.wcss, 0.0)

    def test_invalid_k(self):
        with self.assertRaises(ArgumentError):
            ckmeans_1d([0.1, 0.2], 3)
        with self.assertRaises(ArgumentError):
            ckmeans_1d([0.1, 0.2], 0)
        with self.assertRaises(ArgumentError):
            ckmeans_1d([], 1)

    def test_centers_ascending_and_contiguous(self):
        result = ckmeans_1d([0.9, 0.05, 0.5, 0.52, 0.07, 0.88, 0.3], 3)
        self.assertEqual(list(result.centers), sorted(result.centers))
        self.assertEqual(list(result.assignments), sorted(result.assignments))

    def test_ties_stay_together(self):
        result = ckmeans_1d([0.2, 0.2, 0.2, 0.5, 0.5, 0.9], 3)
        self.assertEqual(result.sizes, (3, 2, 1))
        result = ckmeans_1d([0.1, 0.4, 0.4, 0.4, 0.4, 0.7], 2)
        groups = [set(result.members(c)) for c in (1, 2)]
        self.assertEqual(sum(0.4 in g for g in groups), 1)

    def test_matches_brute_force_on_random_lists(self):
        rng = random.Random(20180401)
        for case in range(500):
            n = rng.randint(1, 12)
            k = rng.randint(1, min(4, n))
            if case % 5 == 0:
                scores = [rng.choice([0.1, 0.25, 0.25, 0.6, 0.9]) for _ in range(n)]
            else:
                scores = [rng.random() for _ in range(n)]
            expected = brute_force_wcss(scores, k)
            result = ckmeans_1d(scores, k)
            self.assertLessEqual(abs(result.wcss - expected), 1e-12 * abs(expected) + 1e-15, (scores, k))

    def test_matches_brute_force_exactly_on_rationals(self):
        rng = random.Random(7)
        for _ in range(100):
            n = rng.randint(2, 10)
            k = rng.randint(1, min(4, n))
            scores = [rng.randint(0, 20) / 20 for _ in range(n)]
            result = ckmeans_1d(scores, k)
            self.assertEqual(exact_wcss(result), brute_force_wcss(scores, k, number=Fraction))

    def test_wcss_is_monotone_in_k(self):
        rng = random.Random(3)
        scores = [rng.random() for _ in range(40)]
        values = [ckmeans_1d(scores, k).wcss for k in range(1, 8)]
        for previous, current in zip(values, values[1:]):
            self.assertLessEqual(current, previous + 1e-15)

    def test_permutation_invariance(self):
        rng = random.Random(11)
        scores = [rng.random() for _ in range(25)]
        shuffled = scores[:]
        rng.shuffle(shuffled)
        a, b = ckmeans_1d(scores, 4), ckmeans_1d(shuffled, 4)
        self.assertEqual(a.centers, b.centers)
        self.assertEqual(a.wcss, b.wcss)


def clustering(values, sizes):
    assignments = []
    for index, size in enumerate(sizes, start=1):
        assignments.extend([index] * size)
    return ClusterResult(
        k=len(sizes), values=tuple(values), assignments=tuple(assignments),
        centers=(0.0,) * len(sizes), sizes=tuple(sizes), wcss=0.0,
    )


class ThresholdTests(SimpleTestCase):
    def test_spanish_threshold(self):
        result = clustering([0.05, 0.1, 0.2, 0.3, 0.4, 0.4745, 0.6, 0.7, 0.9], [2, 2, 2, 2, 1])
        threshold = derive_bot_threshold(result)
        self.assertEqual(threshold.value, 0.4745)
        self.assertTrue(threshold.within_recommended_range)

    def test_english_threshold(self):
        result = clustering([0.05, 0.2, 0.4849, 0.6, 0.9], [1, 1, 1, 1, 1])
        self.assertEqual(derive_bot_threshold(result).value, 0.4849)

    def test_evenly_spaced_scores(self):
        scores = [i / 10 for i in range(10)]
        result = ckmeans_1d(scores, 5)
        self.assertEqual(result.sizes, (2, 2, 2, 2, 2))
        with self.assertLogs('botfilter.threshold', level='WARNING'):
            threshold = derive_bot_threshold(result)
        self.assertEqual(threshold.value, 0.5)
        self.assertFalse(threshold.within_recommended_range)

    def test_requires_five_groups(self):
        with self.assertRaises(ArgumentError):
            derive_bot_threshold(ckmeans_1d([0.1, 0.2, 0.3], 3))

    def test_boundary_score_is_human(self):
        threshold = BotThreshold(value=0.5)
        self.assertFalse(threshold.is_bot(0.5))
        self.assertTrue(threshold.is_bot(0.5001))
        self.assertFalse(threshold.is_bot(None))


def scored_corpus(scores, tweets_per_user=2):
    tweets = []
    for user in scores:
        tweets.extend(tweet(f'{user}-{i}', author=user) for i in range(tweets_per_user))
    corpus = Corpus.build('es', tweets)
    return corpus.with_profiles({
        user: UserProfile(user_id=user, bot_score=score) for user, score in scores.items()
    })


class FilterBotsTests(SimpleTestCase):
    def test_removes_bots_and_their_tweets(self):
        corpus = scored_corpus({'a': 0.2, 'b': 0.6})
        filtered = filter_bots(corpus, BotThreshold(value=0.5))
        self.assertEqual(list(filtered.users), ['a'])
        self.assertEqual({t.author_id for t in filtered.tweets}, {'a'})
        self.assertEqual(corpus.tweet_count - filtered.tweet_count, corpus.users['b'].tweet_count)

    def test_all_humans_is_identity(self):
        corpus = scored_corpus({'a': 0.2, 'b': 0.4})
        self.assertEqual(filter_bots(corpus, BotThreshold(value=0.5)).tweets, corpus.tweets)

    def test_unscored_user_retained(self):
        corpus = scored_corpus({'a': None, 'b': 0.99})
        self.assertEqual(list(filter_bots(corpus, BotThreshold(value=0.5)).users), ['a'])

    def test_cluster_bot_scores_dedup(self):
        corpus = scored_corpus({'a': 0.1, 'b': 0.1, 'c': 0.5, 'd': None})
        self.assertEqual(cluster_bot_scores(corpus, k=2).values, (0.1, 0.1, 0.5))
        self.assertEqual(cluster_bot_scores(corpus, k=2, dedup=True).values, (0.1, 0.5))
