from django.core.management.base import BaseCommand, CommandError

from analise_temas.exceptions import AnalysisError
from pipeline.synthetic import generate_corpus, write_corpus


class Command(BaseCommand):
    help = 'Gera um arquivo sintético de tweets com tópicos plantados'

    def add_arguments(self, parser):
        parser.add_argument('output', help='Ficheiro JSON lines a escrever')
        parser.add_argument('--docs', type=int, default=300, help='Tweets originais humanos por língua')
        parser.add_argument('--languages', default='es,en', help='Línguas separadas por vírgulas')
        parser.add_argument('--seed', type=int, default=2018)

    def handle(self, *args, **options):
        if options['docs'] < 1:
            raise CommandError('--docs deve ser >= 1', returncode=2)
        languages = tuple(value.strip() for value in options['languages'].split(',') if value.strip())
        try:
            records = generate_corpus(options['docs'], languages, options['seed'])
        except AnalysisError as exc:
            raise CommandError(str(exc), returncode=exc.exit_code) from exc
        write_corpus(records, options['output'])
        self.stdout.write(self.style.SUCCESS(f"{len(records)} registos escritos em {options['output']}"))
