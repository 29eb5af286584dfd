import csv
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from types import MappingProxyType
from typing import Mapping

from analise_temas.exceptions import ArgumentError, ConfigError

from .tokenizer import tokenize

logger = logging.getLogger(__name__)

DATA_DIR = Path(__file__).resolve().parent / 'data'


def _frozen_map(pairs):
    return MappingProxyType(dict(pairs or {}))


@dataclass(frozen=True)
class Lexicon:
    stopwords: frozenset = frozenset()
    conversions: Mapping[str, str] = field(default_factory=lambda: MappingProxyType({}))
    lemmas: Mapping[str, str] = field(default_factory=lambda: MappingProxyType({}))

    def __post_init__(self):
        object.__setattr__(self, 'stopwords', frozenset(self.stopwords))
        object.__setattr__(self, 'conversions', _frozen_map(self.conversions))
        object.__setattr__(self, 'lemmas', _frozen_map(self.lemmas))
        entries = list(self.stopwords)
        for table in (self.conversions, self.lemmas):
            entries.extend(table.keys())
            entries.extend(table.values())
        for entry in entries:
            if not entry or entry != entry.lower():
                raise ArgumentError(f"Entrada do léxico deve ser minúscula e não vazia: {entry!r}")
        clashes = sorted(set(self.conversions.values()) & self.stopwords)
        if clashes:
            raise ArgumentError(f"Conversões produzem stopwords: {', '.join(clashes)}")

    def normalize_token(self, token):
        token = self.conversions.get(token, token)
        token = self.lemmas.get(token, token)
        return None if token in self.stopwords else token

    def is_closed(self):
        # Cada forma normalizada é ponto fixo da normalização.
        for table in (self.conversions, self.lemmas):
            for token in list(table.keys()) + list(table.values()):
                once = self.normalize_token(token)
                if once is not None and self.normalize_token(once) != once:
                    return False
        return True


@dataclass(frozen=True)
class TokenizedDoc:
    doc_id: str
    tokens: tuple = ()


def normalize(tokens, lexicon: Lexicon):
    result = []
    for token in tokens:
        lemma = lexicon.normalize_token(token)
        if lemma is not None:
            result.append(lemma)
    return result


def _read_lines(path):
    try:
        with open(path, encoding='utf-8') as handle:
            return [line.strip() for line in handle if line.strip() and not line.startswith('# ')]
    except OSError as exc:
        raise ConfigError(f"Não foi possível ler o léxico {path}: {exc}") from exc


def _read_pairs(path):
    pairs = {}
    try:
        with open(path, encoding='utf-8', newline='') as handle:
            for number, row in enumerate(csv.reader(handle, delimiter='\t'), start=1):
                if not row or row[0].startswith('# '):
                    continue
                if len(row) != 2:
                    raise ConfigError(f"{path}, linha {number}: esperados dois campos separados por tab")
                pairs[row[0].strip()] = row[1].strip()
    except OSError as exc:
        raise ConfigError(f"Não foi possível ler o léxico {path}: {exc}") from exc
    return pairs


def load_lexicon(stopwords=None, conversions=None, lemmas=None, base: Lexicon = None):
    # Tabelas sem ficheiro vêm de base.
    base = base or Lexicon()
    try:
        return Lexicon(
            stopwords=_read_lines(stopwords) if stopwords else base.stopwords,
            conversions=_read_pairs(conversions) if conversions else base.conversions,
            lemmas=_read_pairs(lemmas) if lemmas else base.lemmas,
        )
    except ArgumentError as exc:
        raise ConfigError(str(exc)) from exc


@lru_cache(maxsize=None)
def default_lexicon(language):
    folder = DATA_DIR / language
    if not folder.is_dir():
        logger.warning("Sem léxico incluído para '%s'; a usar léxico vazio", language)
        return Lexicon()
    return load_lexicon(
        stopwords=folder / 'stopwords.txt',
        conversions=folder / 'conversions.tsv',
        lemmas=folder / 'lemmas.tsv',
    )


def prepare_documents(corpus, lexicon: Lexicon):
    docs = [TokenizedDoc(t.id, tuple(normalize(tokenize(t.text), lexicon))) for t in corpus.tweets]
    empty = sum(1 for d in docs if not d.tokens)
    logger.info("Documentos preparados: %d (%d sem termos)", len(docs), empty)
    return docs
