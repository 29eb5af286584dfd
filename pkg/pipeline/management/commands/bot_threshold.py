import json

from django.core.management.base import BaseCommand, CommandError

from analise_temas.exceptions import AnalysisError
from botfilter.threshold import BOT_GROUPS, cluster_bot_scores, derive_bot_threshold
from ingest.archive import apply_bot_scores, load_bot_scores, parse_archive
from pipeline.cli import add_config_arguments, config_from_options


class Command(BaseCommand):
    help = 'Agrupa os bot scores com Ckmeans e mostra o limiar derivado'

    def add_arguments(self, parser):
        add_config_arguments(parser)
        parser.add_argument('--json', action='store_true', help='Saída em JSON')

    def handle(self, *args, **options):
        # Nada é escrito; o diretório de saída só tem de ser válido.
        options['output_dir'] = options.get('output_dir') or '.'
        config = config_from_options(options, strict_bot_groups=False)
        try:
            corpus, _ = parse_archive(config.input, config.language, on_malformed=config.on_malformed)
            if config.bot_scores:
                corpus = apply_bot_scores(corpus, load_bot_scores(config.bot_scores))
            clusters = cluster_bot_scores(corpus, k=config.bot_k, dedup=config.bot_dedup)
            threshold = derive_bot_threshold(clusters) if clusters.k == BOT_GROUPS else None
        except AnalysisError as exc:
            raise CommandError(str(exc), returncode=exc.exit_code) from exc

        summary = {
            'k': clusters.k,
            'centers': [round(c, 6) for c in clusters.centers],
            'sizes': list(clusters.sizes),
            'bounds': [list(clusters.bounds(c)) for c in range(1, clusters.k + 1)],
            'wcss': round(clusters.wcss, 10),
            'threshold': threshold.value if threshold else None,
            'within_recommended_range': threshold.within_recommended_range if threshold else None,
        }
        if options['json']:
            self.stdout.write(json.dumps(summary, indent=2, sort_keys=True))
            return

        for number, (center, size) in enumerate(zip(clusters.centers, clusters.sizes), start=1):
            low, high = clusters.bounds(number)
            self.stdout.write(f'Grupo {number}: {size:>6} utilizadores  [{low:.4f}, {high:.4f}]  centro {center:.4f}')
        if threshold is None:
            self.stdout.write(self.style.WARNING(f'O limiar só é derivado com {BOT_GROUPS} grupos'))
        elif threshold.within_recommended_range:
            self.stdout.write(self.style.SUCCESS(f'Limiar de bots: {threshold.value:.4f}'))
        else:
            self.stdout.write(self.style.WARNING(
                f'Limiar de bots: {threshold.value:.4f} (fora do intervalo recomendado)'
            ))
