import logging
import os
from dataclasses import dataclass, fields
from typing import Optional

from decouple import RepositoryEnv
from django.conf import settings

from analise_temas.exceptions import ConfigError

from .forms import FILE_FIELDS, PipelineConfigForm

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PipelineConfig:
    input: str
    language: str
    output_dir: str
    keywords: tuple = ()
    keywords_file: Optional[str] = None
    stopwords: Optional[str] = None
    conversions: Optional[str] = None
    lemmas: Optional[str] = None
    top_n: int = 300
    min_terms: int = 1
    top_users: Optional[int] = None
    bot_scores: Optional[str] = None
    bot_k: int = 5
    bot_dedup: bool = False
    k: int = 11
    loading_threshold: float = 0.1
    top_docs: int = 30
    gazetteer: Optional[str] = None
    geo_top_n: int = 10
    on_malformed: str = 'skip'
    label_prefix: str = ''
    varimax_tol: float = 1e-10
    varimax_max_iter: int = 1000


FIELD_NAMES = tuple(f.name for f in fields(PipelineConfig))
PATH_FIELDS = ('input', 'output_dir') + FILE_FIELDS


def default_values():
    return {name.lower(): value for name, value in settings.ANALYSIS_DEFAULTS.items()}


def read_config_file(path):
    # Caminhos relativos contam a partir da pasta do ficheiro.
    try:
        repository = RepositoryEnv(path)
    except OSError as exc:
        raise ConfigError(f"Não foi possível ler a configuração {path}: {exc}") from exc
    base = os.path.dirname(os.path.abspath(path))
    values = {}
    for key, value in repository.data.items():
        name = key.strip().lower()
        if name not in FIELD_NAMES:
            logger.warning("Chave de configuração desconhecida ignorada: %s", key)
            continue
        if name in PATH_FIELDS and value and not os.path.isabs(value):
            value = os.path.join(base, value)
        values[name] = value
    return values


def load_config(path=None, overrides=None, strict_bot_groups=True) -> PipelineConfig:
    data = default_values()
    if path:
        data.update(read_config_file(path))
    if settings.TEMAS_OUTPUT_DIR:
        data['output_dir'] = settings.TEMAS_OUTPUT_DIR
    data.update({k: v for k, v in (overrides or {}).items() if v is not None})

    form = PipelineConfigForm(data, strict_bot_groups=strict_bot_groups)
    if not form.is_valid():
        problems = '; '.join(
            f"{field}: {' '.join(messages)}" for field, messages in sorted(form.errors.items())
        )
        raise ConfigError(f"Configuração inválida: {problems}")
    return PipelineConfig(**{name: form.cleaned_data[name] for name in FIELD_NAMES})
