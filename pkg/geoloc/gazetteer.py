"""Gazetteer offline em vez de um serviço de geocodificação."""
import csv
import logging
import unicodedata
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from types import MappingProxyType
from typing import Mapping, Optional, Protocol

from analise_temas.exceptions import ConfigError

logger = logging.getLogger(__name__)

DEFAULT_PATH = Path(__file__).resolve().parent / 'data' / 'gazetteer.tsv'


def normalize_place(text):
    if not text:
        return ''
    decomposed = unicodedata.normalize('NFD', text.lower())
    folded = ''.join(c for c in decomposed if unicodedata.category(c) != 'Mn')
    return ' '.join(folded.split())


class LocationResolver(Protocol):
    def resolve(self, raw: Optional[str]) -> Optional[str]:
        ...


@dataclass(frozen=True)
class Gazetteer:
    entries: Mapping[str, str] = field(default_factory=lambda: MappingProxyType({}))

    def __post_init__(self):
        object.__setattr__(self, 'entries', MappingProxyType({normalize_place(k): v for k, v in self.entries.items()}))

    def __len__(self):
        return len(self.entries)

    def resolve(self, raw):
        # String inteira primeiro, depois os segmentos da direita para a esquerda.
        whole = normalize_place(raw)
        if not whole:
            return None
        if whole in self.entries:
            return self.entries[whole]
        for segment in reversed(raw.split(',')):
            key = normalize_place(segment)
            if key in self.entries:
                return self.entries[key]
        return None


def resolve_location(raw, gazetteer: LocationResolver):
    return gazetteer.resolve(raw)


def load_gazetteer(path) -> Gazetteer:
    entries = {}
    try:
        with open(path, encoding='utf-8', newline='') as handle:
            for number, row in enumerate(csv.reader(handle, delimiter='\t'), start=1):
                if not row or not ''.join(row).strip() or row[0].startswith('# '):
                    continue
                if len(row) != 2 or not row[1].strip():
                    raise ConfigError(f"{path}, linha {number}: esperado 'alias<TAB>país'")
                alias, country = normalize_place(row[0]), row[1].strip()
                previous = entries.get(alias)
                if previous is None:
                    entries[alias] = country
                elif previous != country:
                    logger.warning("Alias '%s' em conflito (%s / %s); mantido %s", alias, previous, country, previous)
    except OSError as exc:
        raise ConfigError(f"Não foi possível ler o gazetteer {path}: {exc}") from exc
    logger.info("Gazetteer %s: %d entradas", path, len(entries))
    return Gazetteer(entries)


@lru_cache(maxsize=None)
def default_gazetteer():
    return load_gazetteer(DEFAULT_PATH)
