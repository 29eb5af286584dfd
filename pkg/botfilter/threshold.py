import logging
from dataclasses import dataclass

from django.conf import settings

from analise_temas.exceptions import ArgumentError
from ingest.corpus import Corpus

from .ckmeans import ckmeans_1d

logger = logging.getLogger(__name__)

BOT_GROUPS = 5
HUMAN_GROUPS = frozenset({1, 2, 3})


@dataclass(frozen=True)
class BotThreshold:
    """Scores acima de ``value`` são bots; o próprio limiar conta como humano."""

    value: float
    human_clusters: frozenset = HUMAN_GROUPS
    bot_clusters: frozenset = frozenset({4, 5})

    def is_bot(self, score):
        return score is not None and score > self.value

    @property
    def within_recommended_range(self):
        low, high = settings.BOT_THRESHOLD_RANGE
        return low <= self.value <= high


def collect_bot_scores(corpus: Corpus, dedup=False):
    scores = [u.bot_score for _, u in sorted(corpus.users.items()) if u.bot_score is not None]
    if dedup:
        scores = sorted(set(scores))
    return scores


def cluster_bot_scores(corpus: Corpus, k=BOT_GROUPS, dedup=False):
    return ckmeans_1d(collect_bot_scores(corpus, dedup=dedup), k)


def derive_bot_threshold(clusters) -> BotThreshold:
    if clusters.k != BOT_GROUPS:
        raise ArgumentError(f"O limiar exige {BOT_GROUPS} grupos (recebido k={clusters.k})")
    _, upper = clusters.bounds(max(HUMAN_GROUPS))
    threshold = BotThreshold(value=upper)
    if not threshold.within_recommended_range:
        low, high = settings.BOT_THRESHOLD_RANGE
        logger.warning("Limiar de bots %.4f fora do intervalo recomendado [%.2f, %.2f]", upper, low, high)
    return threshold


def filter_bots(corpus: Corpus, threshold: BotThreshold) -> Corpus:
    # Utilizadores sem score ficam.
    bots = {uid for uid, user in corpus.users.items() if threshold.is_bot(user.bot_score)}
    kept = corpus.with_tweets(t for t in corpus.tweets if t.author_id not in bots)
    logger.info(
        "Bots removidos: %d utilizadores, %d tweets (limiar %.4f)",
        len(bots), corpus.tweet_count - kept.tweet_count, threshold.value,
    )
    return kept
