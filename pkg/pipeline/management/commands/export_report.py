from django.core.management.base import BaseCommand, CommandError

from analise_temas.exceptions import AnalysisError
from pipeline.exports import EXPORT_FORMATS, export_report


class Command(BaseCommand):
    help = 'Exporta o relatório de uma execução para PDF ou Excel'

    def add_arguments(self, parser):
        parser.add_argument('run_dir', help='Diretório de uma execução concluída')
        parser.add_argument('output', help='Ficheiro a escrever (fora do diretório da execução)')
        parser.add_argument('--format', choices=EXPORT_FORMATS, default='pdf')

    def handle(self, *args, **options):
        try:
            export_report(options['run_dir'], options['output'], options['format'])
        except AnalysisError as exc:
            raise CommandError(str(exc), returncode=exc.exit_code) from exc
        self.stdout.write(self.style.SUCCESS(f"Relatório exportado para {options['output']}"))
