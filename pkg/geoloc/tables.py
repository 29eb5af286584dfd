import csv
import logging
import math
from dataclasses import dataclass, replace

from analise_temas.exceptions import ArgumentError, DataError

from .gazetteer import LocationResolver

logger = logging.getLogger(__name__)

NOT_FOUND = 'not found'
OTHER = 'other'


@dataclass(frozen=True)
class GeoRow:
    country: str
    tweets: int
    users: int
    pct_tweets: float
    pct_users: float


@dataclass(frozen=True)
class GeoTable:
    rows: tuple
    total_tweets: int
    total_users: int

    def rounded(self, decimals=1):
        # Maiores restos: cada coluna soma exatamente 100.
        tweets = largest_remainder([r.pct_tweets for r in self.rows], decimals)
        users = largest_remainder([r.pct_users for r in self.rows], decimals)
        return [(row.country, t, u) for row, t, u in zip(self.rows, tweets, users)]


def largest_remainder(percentages, decimals=1):
    scale = 10 ** decimals
    scaled = [p * scale for p in percentages]
    floors = [math.floor(value) for value in scaled]
    missing = round(100 * scale) - sum(floors)
    by_remainder = sorted(range(len(scaled)), key=lambda i: (-(scaled[i] - floors[i]), i))
    for index in by_remainder[:max(missing, 0)]:
        floors[index] += 1
    return [value / scale for value in floors]


def user_locations(corpus):
    # Localização do tweet mais recente que a tenha.
    latest = {}
    for tweet in corpus.tweets:
        if not tweet.user_location or not tweet.user_location.strip():
            continue
        key = (tweet.created_at, tweet.id)
        current = latest.get(tweet.author_id)
        if current is None or key > current[0]:
            latest[tweet.author_id] = (key, tweet.user_location)
    return {user: value for user, (_, value) in latest.items()}


def assign_countries(corpus, resolver: LocationResolver):
    locations = user_locations(corpus)
    profiles = {
        user_id: replace(profile, country=resolver.resolve(locations.get(user_id)))
        for user_id, profile in corpus.users.items()
    }
    return corpus.with_profiles(profiles)


def location_table(corpus, resolver: LocationResolver, top_n=10) -> GeoTable:
    if top_n < 1:
        raise ArgumentError(f"top_n deve ser >= 1 (recebido {top_n})")
    if not corpus.user_count:
        raise DataError("Sem utilizadores para geolocalizar")

    located = assign_countries(corpus, resolver)
    tweets, users = {}, {}
    for profile in located.users.values():
        country = profile.country or NOT_FOUND
        tweets[country] = tweets.get(country, 0) + profile.tweet_count
        users[country] = users.get(country, 0) + 1

    countries = sorted((c for c in tweets if c != NOT_FOUND), key=lambda c: (-tweets[c], -users[c], c))
    shown, rest = countries[:top_n], countries[top_n:]
    counts = [(NOT_FOUND, tweets.get(NOT_FOUND, 0), users.get(NOT_FOUND, 0))]
    counts += [(c, tweets[c], users[c]) for c in shown]
    if rest:
        counts.append((OTHER, sum(tweets[c] for c in rest), sum(users[c] for c in rest)))

    total_tweets, total_users = located.tweet_count, located.user_count
    rows = tuple(
        GeoRow(country, t, u, 100.0 * t / total_tweets, 100.0 * u / total_users)
        for country, t, u in counts
    )
    logger.info(
        "Geolocalização: %d utilizadores, %d sem país, %d países",
        total_users, users.get(NOT_FOUND, 0), len(countries),
    )
    return GeoTable(rows=rows, total_tweets=total_tweets, total_users=total_users)


def write_geo_csv(table: GeoTable, path):
    with open(path, 'w', encoding='utf-8', newline='') as handle:
        writer = csv.writer(handle, lineterminator='\n')
        writer.writerow(['country', '% tweets', '% users'])
        for country, tweets, users in table.rounded():
            writer.writerow([country, f'{tweets:.1f}', f'{users:.1f}'])


def read_geo_csv(path):
    try:
        with open(path, encoding='utf-8', newline='') as handle:
            rows = list(csv.reader(handle))
    except OSError as exc:
        raise DataError(f"Tabela geográfica ilegível em {path}: {exc}") from exc
    return rows[1:]
