from django.core.management.base import BaseCommand

from pipeline.cli import recorded_run
from pipeline.compare import compare_runs
from themes.reports import render_comparison_text


class Command(BaseCommand):
    help = 'Compara os temas de duas execuções concluídas lado a lado'

    def add_arguments(self, parser):
        parser.add_argument('run_a', help='Diretório da primeira execução')
        parser.add_argument('run_b', help='Diretório da segunda execução')
        parser.add_argument('--output-dir', required=True, help='Onde escrever as tabelas comparativas')

    def handle(self, *args, **options):
        with recorded_run('COMPARE', options['output_dir'], input_path=f"{options['run_a']} {options['run_b']}") as run:
            table, names = compare_runs(options['run_a'], options['run_b'], options['output_dir'])
            run.components = len(table)

        self.stdout.write(render_comparison_text(table, names), ending='')
        self.stdout.write(self.style.SUCCESS(f"Comparação escrita em {options['output_dir']}"))
