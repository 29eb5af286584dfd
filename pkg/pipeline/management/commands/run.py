from django.core.management.base import BaseCommand

from pipeline.cli import add_config_arguments, config_from_options, recorded_run
from pipeline.runner import render_stage_table, run_pipeline


class Command(BaseCommand):
    help = 'Executa a análise completa (ingestão, bots, texto, componentes, temas, geografia)'

    def add_arguments(self, parser):
        add_config_arguments(parser)

    def handle(self, *args, **options):
        config = config_from_options(options)
        with recorded_run('RUN', config.output_dir, config.language, config.input) as run:
            report = run_pipeline(config)
            run.components = report.model.k
            run.fit = report.model.fit
            run.variance_share = report.model.variance_share
            if report.prepared.threshold is not None:
                run.bot_threshold = report.prepared.threshold.value
            run.stage_counts = {s.name: [s.tweets, s.users] for s in report.stages}

        self.stdout.write(render_stage_table(report.stages), ending='')
        for component in report.components:
            if component.is_empty:
                self.stdout.write(self.style.WARNING(f'Componente {component.component_id} sem termos'))
        self.stdout.write(self.style.SUCCESS(
            f'Execução concluída: {len(report.files)} ficheiros em {report.output_dir}'
        ))
