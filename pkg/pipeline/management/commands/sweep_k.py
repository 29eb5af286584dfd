import os

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from pipeline.cli import add_config_arguments, config_from_options, recorded_run
from pipeline.runner import sweep_components, write_sweep_csv


class Command(BaseCommand):
    help = 'Ajusta o modelo para vários k e regista o ajuste de cada um'

    def add_arguments(self, parser):
        add_config_arguments(parser)
        parser.add_argument('--grid', help='Valores de k separados por vírgulas (omissão: 5,8,11,30,100)')

    def handle(self, *args, **options):
        grid = settings.K_SWEEP_GRID
        if options.get('grid'):
            try:
                grid = tuple(int(value) for value in options['grid'].split(',') if value.strip())
            except ValueError as exc:
                raise CommandError(f"--grid inválido: {options['grid']}", returncode=1) from exc
            if not grid or min(grid) < 1:
                raise CommandError('--grid precisa de valores de k >= 1', returncode=1)
        config = config_from_options(options)

        with recorded_run('SWEEP', config.output_dir, config.language, config.input):
            rows = sweep_components(config, grid)
            os.makedirs(config.output_dir, exist_ok=True)
            write_sweep_csv(rows, os.path.join(config.output_dir, 'sweep.csv'))

        for k, fit, share, iterations, converged in rows:
            line = f'k={k:<4} ajuste {fit:.4f}  variância {share:6.2f}%  varimax {iterations}'
            self.stdout.write(line if converged else self.style.WARNING(line + ' (sem convergência)'))
        skipped = sorted(set(grid) - {row[0] for row in rows})
        if skipped:
            self.stdout.write(self.style.WARNING(f'k ignorados (vocabulário pequeno): {skipped}'))
        self.stdout.write(self.style.SUCCESS(f'sweep.csv escrito em {config.output_dir}'))
