import logging
from collections import Counter
from dataclasses import dataclass
from functools import cached_property

from analise_temas.exceptions import ArgumentError, DataError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Vocabulary:
    # doc_frequency em percentagem dos documentos.

    terms: tuple
    doc_frequency: tuple

    def __post_init__(self):
        if len(self.terms) != len(self.doc_frequency):
            raise ArgumentError("Termos e frequências com tamanhos diferentes")
        if len(set(self.terms)) != len(self.terms):
            raise ArgumentError("Vocabulário com termos repetidos")

    def __len__(self):
        return len(self.terms)

    @cached_property
    def index(self):
        return {term: position for position, term in enumerate(self.terms)}

    def frequency(self, term):
        return self.doc_frequency[self.index[term]]


def build_vocab(docs, top_n) -> Vocabulary:
    if top_n < 1:
        raise ArgumentError(f"top_n deve ser >= 1 (recebido {top_n})")
    presence = Counter()
    for doc in docs:
        presence.update(set(doc.tokens))
    if not presence:
        raise DataError("Todos os documentos estão vazios: não há termos para modelar")
    total = len(docs)
    ranked = sorted(presence.items(), key=lambda item: (-item[1], item[0]))[:top_n]
    logger.info("Vocabulário: %d termos distintos, %d retidos", len(presence), len(ranked))
    return Vocabulary(
        terms=tuple(term for term, _ in ranked),
        doc_frequency=tuple(100.0 * count / total for _, count in ranked),
    )
