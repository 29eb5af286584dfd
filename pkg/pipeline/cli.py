import logging
from contextlib import contextmanager

from django.core.management.base import CommandError
from django.utils import timezone

from analise_temas.exceptions import AnalysisError

from .config import load_config
from .models import AnalysisRun

logger = logging.getLogger(__name__)

# flag -> (campo do PipelineConfig, tipo, ajuda)
CONFIG_FLAGS = {
    '--input': ('input', str, 'Arquivo de tweets (JSON lines)'),
    '--language': ('language', str, 'Língua a analisar (es, en, ...)'),
    '--keywords': ('keywords', str, 'Palavras-chave separadas por vírgulas'),
    '--keywords-file': ('keywords_file', str, 'Ficheiro com uma palavra-chave por linha'),
    '--stopwords': ('stopwords', str, 'Lista de stopwords adicional'),
    '--conversions': ('conversions', str, 'Tabela de conversões adicional'),
    '--lemmas': ('lemmas', str, 'Tabela de lemas adicional'),
    '--top-n': ('top_n', int, 'Tamanho do vocabulário'),
    '--min-terms': ('min_terms', int, 'Mínimo de termos por documento'),
    '--top-users': ('top_users', int, 'Limitar aos utilizadores mais ativos'),
    '--bot-scores': ('bot_scores', str, 'Ficheiro user_id,score'),
    '--bot-k': ('bot_k', int, 'Número de grupos Ckmeans'),
    '--k': ('k', int, 'Número de componentes'),
    '--loading-threshold': ('loading_threshold', float, 'Limiar das cargas'),
    '--top-docs': ('top_docs', int, 'Tweets representativos por componente'),
    '--gazetteer': ('gazetteer', str, 'Gazetteer alias<TAB>país'),
    '--geo-top-n': ('geo_top_n', int, 'Países listados na tabela geográfica'),
    '--output-dir': ('output_dir', str, 'Diretório de saída'),
    '--on-malformed': ('on_malformed', str, 'skip ou abort'),
    '--label-prefix': ('label_prefix', str, 'Prefixo dos rótulos das componentes'),
    '--varimax-tol': ('varimax_tol', float, 'Tolerância do varimax'),
    '--varimax-max-iter': ('varimax_max_iter', int, 'Máximo de varrimentos do varimax'),
}

FLAG_ALIASES = {'--language': ('--lang',)}


def add_config_arguments(parser):
    parser.add_argument('--config', help='Ficheiro de configuração KEY=VALUE')
    for flag, (dest, kind, text) in CONFIG_FLAGS.items():
        parser.add_argument(flag, *FLAG_ALIASES.get(flag, ()), dest=dest, type=kind, help=text)
    parser.add_argument('--bot-dedup', dest='bot_dedup', action='store_true', default=None,
                        help='Remover scores repetidos antes do Ckmeans')


def config_from_options(options, strict_bot_groups=True):
    overrides = {dest: options.get(dest) for dest, _, _ in CONFIG_FLAGS.values()}
    overrides['bot_dedup'] = options.get('bot_dedup')
    try:
        return load_config(options.get('config'), overrides, strict_bot_groups=strict_bot_groups)
    except AnalysisError as exc:
        raise CommandError(str(exc), returncode=exc.exit_code) from exc


@contextmanager
def recorded_run(kind, output_dir, language='', input_path=''):
    # Erros da análise passam a CommandError com o exit_code respetivo.
    run = AnalysisRun.objects.create(
        kind=kind, language=language, input_path=input_path, output_dir=str(output_dir),
    )
    try:
        yield run
    except AnalysisError as exc:
        _finish(run, 'FAILED', str(exc))
        logger.error("Execução %s falhou: %s", run.pk, exc)
        raise CommandError(str(exc), returncode=exc.exit_code) from exc
    except Exception as exc:
        _finish(run, 'FAILED', str(exc))
        raise
    _finish(run, 'DONE')


def _finish(run, status, message=None):
    run.status = status
    run.error_message = message
    run.finished_at = timezone.now()
    run.save()
