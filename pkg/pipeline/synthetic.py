"""Arquivos sintéticos com temas plantados.

Cada tweet original ativa cada tema com probabilidade 1/3 e usa cada termo
do tema com probabilidade 1/2; os termos de fundo aparecem com probabilidade 0.3.
"""
import json
import logging
from datetime import datetime, timedelta, timezone

import numpy as np

from analise_temas.exceptions import ArgumentError

logger = logging.getLogger(__name__)

TOPIC_PROBABILITY = 1 / 3
TERM_PROBABILITY = 0.5
NOISE_PROBABILITY = 0.3
START = datetime(2018, 3, 17, 9, 0, tzinfo=timezone.utc)

PLANTED_TOPICS = {
    'es': (
        ('privacidad', 'rgpd', 'multa', 'consentimiento', 'cookies',
         'regulador', 'sanción', 'vigilancia', 'cifrado', 'filtración'),
        ('campaña', 'voto', 'propaganda', 'votantes', 'candidato',
         'encuestas', 'manipulación', 'segmentación', 'perfiles', 'psicológicos'),
        ('zuckerberg', 'congreso', 'senado', 'testimonio', 'audiencia',
         'disculpa', 'senadores', 'comparecencia', 'preguntas', 'washington'),
    ),
    'en': (
        ('privacy', 'gdpr', 'fine', 'consent', 'cookies',
         'regulator', 'penalty', 'surveillance', 'encryption', 'breach'),
        ('campaign', 'vote', 'propaganda', 'voters', 'candidate',
         'polls', 'manipulation', 'targeting', 'profiles', 'psychological'),
        ('zuckerberg', 'congress', 'senate', 'testimony', 'hearing',
         'apology', 'senators', 'questions', 'washington', 'lawmakers'),
    ),
}

NOISE_TERMS = {
    'es': ('hoy', 'gente', 'mundo', 'vida', 'tiempo', 'semana', 'noticia', 'video', 'foto', 'amigos',
           'casa', 'ciudad', 'trabajo', 'música', 'partido', 'libro', 'café', 'lunes', 'verano', 'familia'),
    'en': ('today', 'people', 'world', 'life', 'time', 'week', 'news', 'tomorrow', 'video', 'photo',
           'friends', 'home', 'city', 'work', 'music', 'game', 'book', 'monday', 'summer', 'family'),
}

PLACES = {
    'es': ('Madrid, España', 'Valparaíso, Chile', 'Buenos Aires, Argentina', 'Bogotá, Colombia',
           'CDMX', 'Lima, Perú', 'Barcelona', 'la luna', ''),
    'en': ('Seattle, WA', 'London, UK', 'New York, NY', 'Toronto, Canada', 'Dublin',
           'Mumbai, India', 'Sydney', 'Earth', ''),
}

SPAM = {
    'es': 'gana seguidores gratis ya',
    'en': 'get free followers now',
}

# Bandas de score: três grupos humanos abaixo de 0.46, dois de bots acima de 0.6.
HUMAN_BANDS = ((0.02, 0.12), (0.20, 0.30), (0.36, 0.46))
BOT_BANDS = ((0.62, 0.72), (0.85, 0.95))


def _score(rng, band):
    low, high = band
    return round(low + (high - low) * float(rng.random()), 4)


def planted_text(rng, language, number):
    words = []
    for topic in PLANTED_TOPICS[language]:
        if rng.random() < TOPIC_PROBABILITY:
            words += [term for term in topic if rng.random() < TERM_PROBABILITY]
    words += [term for term in NOISE_TERMS[language] if rng.random() < NOISE_PROBABILITY]
    words = [words[i] for i in rng.permutation(len(words))]
    words = [f'#{w}' if rng.random() < 0.1 else w for w in words]
    if rng.random() < 0.2:
        words.insert(0, f'@{language}_amigo{int(rng.integers(100))}')
    words.append(f'https://facebook.com/{language}{number}')
    return ' '.join(words)


def generate_tweets(language, n_docs, seed=2018, docs_per_user=10, bot_share=0.1, retweet_share=0.2):
    if language not in PLANTED_TOPICS:
        raise ArgumentError(f"Sem tópicos plantados para '{language}'")
    rng = np.random.default_rng(seed)
    n_humans = max(1, n_docs // docs_per_user)
    n_bots = max(2, round(n_humans * bot_share / (1 - bot_share)))
    places = PLACES[language]

    users = {}
    for i in range(n_humans):
        band = HUMAN_BANDS[int(rng.integers(len(HUMAN_BANDS)))]
        score = _score(rng, band) if rng.random() >= 0.1 else None
        users[f'{language}_h{i:04d}'] = (score, places[int(rng.integers(len(places)))])
    humans = list(users)
    for i in range(n_bots):
        users[f'{language}_b{i:03d}'] = (_score(rng, BOT_BANDS[i % 2]), places[int(rng.integers(len(places)))])
    bots = [u for u in users if u not in humans]

    drafts = [(humans[i % n_humans], planted_text(rng, language, i), False) for i in range(n_docs)]
    originals = [text for _, text, _ in drafts]
    for _ in range(round(n_docs * retweet_share)):
        author = humans[int(rng.integers(n_humans))]
        source = humans[int(rng.integers(n_humans))]
        drafts.append((author, f'RT @{source}: {originals[int(rng.integers(n_docs))]}', True))
    for j, bot in enumerate(bots):
        for m in range(docs_per_user):
            drafts.append((bot, f'{SPAM[language]} #promo https://facebook.com/promo{j}x{m}', False))

    records = []
    for index, position in enumerate(rng.permutation(len(drafts))):
        author, text, retweet = drafts[position]
        score, location = users[author]
        records.append({
            'id': f'{language}-{index:06d}',
            'text': text,
            'lang': language,
            'author_id': author,
            'is_retweet': retweet,
            'created_at': (START + timedelta(minutes=index)).strftime('%Y-%m-%dT%H:%M:%SZ'),
            'user_location': location,
            'bot_score': score,
        })
    logger.info(
        "Corpus sintético '%s': %d originais, %d registos, %d humanos, %d bots",
        language, n_docs, len(records), n_humans, n_bots,
    )
    return records


def generate_corpus(n_docs=300, languages=('es', 'en'), seed=2018):
    records = []
    for offset, language in enumerate(languages):
        records += generate_tweets(language, n_docs, seed=seed + offset)
    return records


def write_corpus(records, path):
    with open(path, 'w', encoding='utf-8', newline='\n') as handle:
        for record in records:
            handle.write(json.dumps(record, ensure_ascii=False, sort_keys=True))
            handle.write('\n')
