import csv
import json
import logging
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone

from analise_temas.exceptions import ArgumentError, DataError, MalformedRecordError

from .corpus import Corpus, TweetRecord, UserProfile

logger = logging.getLogger(__name__)

ON_MALFORMED_CHOICES = ('skip', 'abort')


@dataclass
class ParseStats:
    lines: int = 0
    parsed: int = 0
    other_language: int = 0
    malformed: list = field(default_factory=list)

    @property
    def malformed_count(self):
        return len(self.malformed)


def _parse_timestamp(value):
    if not isinstance(value, str) or not value:
        raise ValueError("created_at ausente")
    stamp = datetime.fromisoformat(value.replace('Z', '+00:00'))
    if stamp.tzinfo is None:
        stamp = stamp.replace(tzinfo=timezone.utc)
    return stamp.astimezone(timezone.utc)


def _parse_bool(value):
    if isinstance(value, bool):
        return value
    if isinstance(value, (int, float)):
        return bool(value)
    if isinstance(value, str) and value.strip().lower() in ('true', '1', 'yes', 'false', '0', 'no', ''):
        return value.strip().lower() in ('true', '1', 'yes')
    raise ValueError(f"is_retweet inválido: {value!r}")


def _parse_score(value):
    if value is None or value == '':
        return None
    score = float(value)
    if not 0.0 <= score <= 1.0:
        raise ValueError(f"bot_score fora de [0,1]: {score}")
    return score


def parse_record(payload):
    if not isinstance(payload, dict):
        raise ValueError("registo não é um objeto JSON")
    for key in ('id', 'text', 'lang', 'author_id'):
        if payload.get(key) in (None, ''):
            raise ValueError(f"campo '{key}' em falta")
    location = payload.get('user_location')
    record = TweetRecord(
        id=str(payload['id']),
        text=str(payload['text']),
        language=str(payload['lang']).lower(),
        author_id=str(payload['author_id']),
        is_retweet=_parse_bool(payload.get('is_retweet', False)),
        created_at=_parse_timestamp(payload.get('created_at')),
        user_location=str(location) if location not in (None, '') else None,
    )
    return record, _parse_score(payload.get('bot_score'))


def parse_archive(path, language, on_malformed='skip'):
    # Linhas malformadas (e ids repetidos) são ignoradas ou abortam conforme on_malformed.
    if on_malformed not in ON_MALFORMED_CHOICES:
        raise ArgumentError(f"on_malformed inválido: {on_malformed!r}")
    language = language.lower()
    stats = ParseStats()
    tweets = []
    seen = set()
    scores = {}

    try:
        handle = open(path, 'rb')
    except OSError as exc:
        raise DataError(f"Não foi possível ler {path}: {exc}") from exc

    with handle:
        for number, raw in enumerate(handle, start=1):
            if not raw.strip():
                continue
            stats.lines += 1
            try:
                record, score = parse_record(json.loads(raw.decode('utf-8')))
                if record.id in seen:
                    raise ValueError(f"id duplicado {record.id}")
            except (ValueError, TypeError, ArgumentError) as exc:
                error = MalformedRecordError(number, str(exc))
                if on_malformed == 'abort':
                    raise error from exc
                logger.warning("%s (ignorada)", error)
                stats.malformed.append(error)
                continue
            seen.add(record.id)
            stats.parsed += 1
            if record.language != language:
                stats.other_language += 1
                continue
            tweets.append(record)
            if score is not None:
                scores[record.author_id] = score

    profiles = {
        author: UserProfile(user_id=author, bot_score=scores.get(author))
        for author in {t.author_id for t in tweets}
    }
    corpus = Corpus.build(language, tweets, profiles)
    logger.info(
        "Arquivo %s: %d linhas, %d tweets em '%s', %d utilizadores, %d malformadas",
        path, stats.lines, corpus.tweet_count, language, corpus.user_count, stats.malformed_count,
    )
    return corpus, stats


def load_keywords(path):
    try:
        with open(path, encoding='utf-8') as handle:
            lines = [line.strip() for line in handle]
    except OSError as exc:
        raise DataError(f"Não foi possível ler {path}: {exc}") from exc
    return [value for value in lines if value and not value.startswith('# ')]


def load_bot_scores(path):
    # Primeira linha com score não numérico é cabeçalho.
    scores = {}
    try:
        with open(path, encoding='utf-8', newline='') as handle:
            content = handle.read()
    except OSError as exc:
        raise DataError(f"Não foi possível ler {path}: {exc}") from exc
    delimiter = '\t' if '\t' in content else ','
    for number, row in enumerate(csv.reader(content.splitlines(), delimiter=delimiter), start=1):
        if not row or not ''.join(row).strip():
            continue
        if len(row) < 2:
            raise MalformedRecordError(number, "esperadas duas colunas (user_id, score)")
        user_id, raw = row[0].strip(), row[1].strip()
        try:
            score = float(raw)
        except ValueError:
            if number == 1:
                continue
            raise MalformedRecordError(number, f"score não numérico {raw!r}")
        if not 0.0 <= score <= 1.0:
            raise MalformedRecordError(number, f"score fora de [0,1]: {score}")
        scores[user_id] = score
    return scores


def apply_bot_scores(corpus: Corpus, scores) -> Corpus:
    # Os scores do ficheiro substituem os dos registos.
    profiles = {
        user_id: replace(profile, bot_score=scores[user_id])
        for user_id, profile in corpus.users.items()
        if user_id in scores
    }
    return corpus.with_profiles(profiles)
