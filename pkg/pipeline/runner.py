import json
import logging
import os
import shutil
from dataclasses import dataclass, field
from pathlib import Path

from analise_temas.exceptions import DataError, NonConvergenceError
from botfilter.threshold import cluster_bot_scores, collect_bot_scores, derive_bot_threshold, filter_bots
from dtm.matrix import build_matrix, write_matrix_csv, write_sparse_matrix, write_vocabulary_csv
from dtm.vocabulary import build_vocab
from factor.model import fit_factor_model, write_loadings_csv, write_model_json
from geoloc.gazetteer import default_gazetteer, load_gazetteer
from geoloc.tables import location_table, write_geo_csv
from ingest.archive import apply_bot_scores, load_bot_scores, load_keywords, parse_archive
from ingest.corpus import drop_retweets, filter_keywords, rank_users_by_activity, restrict_to_users
from textprep.lexicon import default_lexicon, load_lexicon, prepare_documents
from themes.reports import build_component_reports, label_prefix, write_components_csv, write_components_json

from .config import PipelineConfig

logger = logging.getLogger(__name__)

STAGES = ('Total', 'Without retweets', 'Most active users', 'Humans')
REQUIRED_OUTPUTS = ('report.txt', 'factor_model.json', 'components.json', 'geo.csv')


@dataclass(frozen=True)
class StageCount:
    name: str
    tweets: int
    users: int


@dataclass
class PreparedCorpus:
    config: PipelineConfig
    parse_stats: object
    stages: list
    humans: object
    matrix: object
    classified_share: float = 0.0
    clusters: object = None
    threshold: object = None


@dataclass
class RunReport:
    prepared: PreparedCorpus
    model: object
    components: list
    geo: object
    output_dir: str = ''
    files: list = field(default_factory=list)

    @property
    def stages(self):
        return self.prepared.stages


def _stage(name, corpus):
    logger.info("Etapa %s: %d tweets, %d utilizadores", name, corpus.tweet_count, corpus.user_count)
    return StageCount(name, corpus.tweet_count, corpus.user_count)


def prepare_corpus(config: PipelineConfig) -> PreparedCorpus:
    corpus, stats = parse_archive(config.input, config.language, on_malformed=config.on_malformed)
    if config.bot_scores:
        corpus = apply_bot_scores(corpus, load_bot_scores(config.bot_scores))

    keywords = list(config.keywords)
    if config.keywords_file:
        keywords += load_keywords(config.keywords_file)
    if keywords:
        corpus = filter_keywords(corpus, keywords)
    if not corpus.tweet_count:
        raise DataError(f"Nenhum tweet em '{config.language}' para analisar em {config.input}")
    stages = [_stage(STAGES[0], corpus)]

    corpus = drop_retweets(corpus)
    stages.append(_stage(STAGES[1], corpus))

    top_users = config.top_users or max(corpus.user_count, 1)
    corpus = restrict_to_users(corpus, rank_users_by_activity(corpus, top_users))
    stages.append(_stage(STAGES[2], corpus))

    scored = sum(1 for user in corpus.users.values() if user.bot_score is not None)
    classified_share = 100.0 * scored / corpus.user_count if corpus.user_count else 0.0
    clusters = threshold = None
    if len(collect_bot_scores(corpus, dedup=config.bot_dedup)) >= config.bot_k:
        clusters = cluster_bot_scores(corpus, k=config.bot_k, dedup=config.bot_dedup)
        threshold = derive_bot_threshold(clusters)
        corpus = filter_bots(corpus, threshold)
    else:
        logger.warning(
            "%d utilizadores com bot score para %d grupos: filtro de bots ignorado", scored, config.bot_k,
        )
    stages.append(_stage(STAGES[3], corpus))

    lexicon = load_lexicon(
        stopwords=config.stopwords, conversions=config.conversions, lemmas=config.lemmas,
        base=default_lexicon(config.language),
    )
    docs = prepare_documents(corpus, lexicon)
    vocab = build_vocab(docs, config.top_n)
    matrix = build_matrix(docs, vocab, config.min_terms)
    return PreparedCorpus(
        config=config, parse_stats=stats, stages=stages, humans=corpus, matrix=matrix,
        classified_share=classified_share, clusters=clusters, threshold=threshold,
    )


def analyse(prepared: PreparedCorpus) -> RunReport:
    config = prepared.config
    model = fit_factor_model(prepared.matrix, config.k, tol=config.varimax_tol, max_iter=config.varimax_max_iter)
    texts = {t.id: t.text for t in prepared.humans.tweets}
    components = build_component_reports(
        model, prepared.matrix, texts,
        threshold=config.loading_threshold, top_k=config.top_docs,
        prefix=label_prefix(config.language, config.label_prefix),
    )
    gazetteer = load_gazetteer(config.gazetteer) if config.gazetteer else default_gazetteer()
    geo = location_table(prepared.humans, gazetteer, config.geo_top_n)
    return RunReport(prepared=prepared, model=model, components=components, geo=geo)


def render_stage_table(stages):
    lines = [f"{'Etapa':<18}{'#Tweets':>8}{'#Users':>8}"]
    lines += [f"{s.name:<18}{s.tweets:>8}{s.users:>8}" for s in stages]
    return '\n'.join(lines) + '\n'


def render_stage_report(report: RunReport):
    prepared, model = report.prepared, report.model
    config, stats, matrix = prepared.config, prepared.parse_stats, prepared.matrix
    lines = [
        'Relatório de execução',
        f'Língua: {config.language}',
        f'Arquivo: {os.path.basename(config.input)}',
        f'Linhas: {stats.lines} lidas, {stats.parsed} válidas, '
        f'{stats.malformed_count} malformadas, {stats.other_language} noutra língua',
        '',
        render_stage_table(prepared.stages).rstrip('\n'),
        '',
        f'Utilizadores classificados: {prepared.classified_share:.1f}%',
    ]
    if prepared.threshold is None:
        lines.append('Limiar de bots: não aplicado')
    else:
        inside = 'sim' if prepared.threshold.within_recommended_range else 'não'
        lines.append(f'Limiar de bots: {prepared.threshold.value:.4f} (recomendado: {inside})')
    empty = [c.component_id for c in report.components if c.is_empty]
    lines += [
        f'Vocabulário: {len(matrix.vocabulary)} termos; matriz {matrix.shape[0]} x {matrix.shape[1]}; '
        f'{matrix.dropped} documentos descartados',
        f'Modelo: k={model.k}; ajuste {model.fit:.4f}; variância explicada {model.variance_share:.2f}%; '
        f'varimax {model.iterations} iterações ({"convergiu" if model.converged else "sem convergência"})',
        f'Componentes sem termos: {", ".join(empty) if empty else "nenhum"}',
    ]
    return '\n'.join(lines) + '\n'


def _write_text(path, content):
    with open(path, 'w', encoding='utf-8', newline='\n') as handle:
        handle.write(content)


def write_outputs(report: RunReport, folder):
    folder = Path(folder)
    prepared, config = report.prepared, report.prepared.config
    _write_text(folder / 'report.txt', render_stage_report(report))
    write_vocabulary_csv(prepared.matrix, folder / 'vocabulary.csv')
    write_matrix_csv(prepared.matrix, folder / 'dtm.csv')
    write_sparse_matrix(prepared.matrix, folder / 'dtm_sparse')
    write_loadings_csv(report.model, folder / 'loadings.csv')
    write_model_json(
        report.model, folder / 'factor_model.json',
        language=config.language,
        label_prefix=label_prefix(config.language, config.label_prefix),
        stages=[[s.name, s.tweets, s.users] for s in prepared.stages],
        loading_threshold=config.loading_threshold,
        top_n=config.top_n,
    )
    write_components_csv(report.components, folder / 'components.csv')
    write_components_json(report.components, folder / 'components.json')
    write_geo_csv(report.geo, folder / 'geo.csv')
    if prepared.clusters is not None:
        clusters = prepared.clusters
        payload = {
            'k': clusters.k,
            'centers': [round(c, 10) for c in clusters.centers],
            'sizes': list(clusters.sizes),
            'bounds': [list(clusters.bounds(c)) for c in range(1, clusters.k + 1)],
            'wcss': round(clusters.wcss, 12),
            'threshold': prepared.threshold.value,
            'within_recommended_range': prepared.threshold.within_recommended_range,
            'dedup': config.bot_dedup,
        }
        _write_text(folder / 'bot_clusters.json', json.dumps(payload, indent=2, sort_keys=True) + '\n')
    return sorted(str(p.relative_to(folder)) for p in folder.rglob('*') if p.is_file())


def run_pipeline(config: PipelineConfig) -> RunReport:
    # A pasta de saída só é publicada se todas as etapas terminarem.
    output = Path(config.output_dir)
    staging = output.with_name(output.name + '.staging')
    if staging.exists():
        shutil.rmtree(staging)
    staging.mkdir(parents=True)
    try:
        report = analyse(prepare_corpus(config))
        if not report.model.converged:
            raise NonConvergenceError(
                f"Varimax sem convergência após {report.model.iterations} iterações "
                f"(tol={config.varimax_tol}); aumente VARIMAX_MAX_ITER"
            )
        report.files = write_outputs(report, staging)
        if output.exists():
            shutil.rmtree(output)
        staging.rename(output)
    except BaseException:
        shutil.rmtree(staging, ignore_errors=True)
        raise
    report.output_dir = str(output)
    logger.info("Execução concluída em %s (%d ficheiros)", output, len(report.files))
    return report


def sweep_components(config: PipelineConfig, grid):
    prepared = prepare_corpus(config)
    dim = len(prepared.matrix.vocabulary)
    rows = []
    for k in sorted(set(grid)):
        if k > dim:
            logger.warning("k=%d ignorado: vocabulário com %d termos", k, dim)
            continue
        model = fit_factor_model(prepared.matrix, k, tol=config.varimax_tol, max_iter=config.varimax_max_iter)
        rows.append((k, model.fit, model.variance_share, model.iterations, model.converged))
    return rows


def write_sweep_csv(rows, path):
    lines = ['k,fit,variance_share,iterations,converged']
    lines += [f'{k},{fit:.6f},{share:.4f},{iterations},{str(converged).lower()}' for k, fit, share, iterations, converged in rows]
    _write_text(path, '\n'.join(lines) + '\n')
