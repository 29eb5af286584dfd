import logging
from dataclasses import dataclass, field, replace
from datetime import datetime
from types import MappingProxyType
from typing import Iterable, Mapping, Optional

from analise_temas.exceptions import ArgumentError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TweetRecord:
    id: str
    text: str
    language: str
    author_id: str
    is_retweet: bool
    created_at: datetime
    user_location: Optional[str] = None

    def __post_init__(self):
        if not self.id:
            raise ArgumentError("Tweet sem id")
        if not self.text:
            raise ArgumentError(f"Tweet {self.id} sem texto")
        if self.language != self.language.lower():
            raise ArgumentError(f"Código de língua deve ser minúsculo: {self.language!r}")


@dataclass(frozen=True)
class UserProfile:
    user_id: str
    tweet_count: int = 0
    bot_score: Optional[float] = None
    country: Optional[str] = None

    def __post_init__(self):
        if self.tweet_count < 0:
            raise ArgumentError(f"Contagem negativa para {self.user_id}")
        if self.bot_score is not None and not 0.0 <= self.bot_score <= 1.0:
            raise ArgumentError(f"Bot score fora de [0,1] para {self.user_id}: {self.bot_score}")


@dataclass(frozen=True)
class Corpus:
    # Criar com Corpus.build para as contagens baterem com os tweets.

    language: str
    tweets: tuple = ()
    users: Mapping[str, UserProfile] = field(default_factory=lambda: MappingProxyType({}))

    @classmethod
    def build(cls, language, tweets: Iterable[TweetRecord], profiles: Mapping[str, UserProfile] = None):
        tweets = tuple(tweets)
        profiles = profiles or {}
        counts = {}
        for tweet in tweets:
            if tweet.language != language:
                raise ArgumentError(f"Tweet {tweet.id} em '{tweet.language}' num corpus '{language}'")
            counts[tweet.author_id] = counts.get(tweet.author_id, 0) + 1
        users = {}
        for user_id, count in counts.items():
            previous = profiles.get(user_id)
            if previous is None:
                users[user_id] = UserProfile(user_id=user_id, tweet_count=count)
            else:
                users[user_id] = replace(previous, tweet_count=count)
        return cls(language=language, tweets=tweets, users=MappingProxyType(users))

    def with_tweets(self, tweets):
        return Corpus.build(self.language, tweets, self.users)

    def with_profiles(self, profiles: Mapping[str, UserProfile]):
        merged = dict(self.users)
        merged.update(profiles)
        return Corpus.build(self.language, self.tweets, merged)

    @property
    def tweet_count(self):
        return len(self.tweets)

    @property
    def user_count(self):
        return len(self.users)


def filter_keywords(corpus: Corpus, keywords) -> Corpus:
    patterns = [k.lower() for k in keywords if k and k.strip()]
    if not patterns:
        raise ArgumentError("A lista de palavras-chave está vazia")
    kept = [t for t in corpus.tweets if any(p in t.text.lower() for p in patterns)]
    logger.info("Filtro de palavras-chave: %d -> %d tweets", corpus.tweet_count, len(kept))
    return corpus.with_tweets(kept)


def drop_retweets(corpus: Corpus) -> Corpus:
    kept = [t for t in corpus.tweets if not t.is_retweet]
    logger.info("Retweets removidos: %d", corpus.tweet_count - len(kept))
    return corpus.with_tweets(kept)


def rank_users_by_activity(corpus: Corpus, top_k: int) -> list:
    # Empates: user_id menor primeiro.
    if top_k < 1:
        raise ArgumentError(f"top_k deve ser >= 1 (recebido {top_k})")
    ranked = sorted(corpus.users.values(), key=lambda u: (-u.tweet_count, u.user_id))
    return ranked[:top_k]


def restrict_to_users(corpus: Corpus, users) -> Corpus:
    wanted = {u.user_id if isinstance(u, UserProfile) else u for u in users}
    return corpus.with_tweets(t for t in corpus.tweets if t.author_id in wanted)
