from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='AnalysisRun',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('kind', models.CharField(choices=[('RUN', 'Execução completa'), ('SWEEP', 'Varrimento de k'), ('COMPARE', 'Comparação')], default='RUN', max_length=10)),
                ('status', models.CharField(choices=[('RUNNING', 'Em curso'), ('DONE', 'Concluída'), ('FAILED', 'Falhada')], default='RUNNING', max_length=10)),
                ('language', models.CharField(blank=True, max_length=8)),
                ('input_path', models.CharField(blank=True, max_length=500)),
                ('output_dir', models.CharField(max_length=500)),
                ('components', models.PositiveIntegerField(blank=True, null=True)),
                ('fit', models.FloatField(blank=True, null=True)),
                ('variance_share', models.FloatField(blank=True, null=True)),
                ('bot_threshold', models.FloatField(blank=True, null=True)),
                ('stage_counts', models.JSONField(blank=True, default=dict)),
                ('started_at', models.DateTimeField(auto_now_add=True)),
                ('finished_at', models.DateTimeField(blank=True, null=True)),
                ('error_message', models.TextField(blank=True, null=True)),
            ],
            options={
                'verbose_name': 'Execução de análise',
                'verbose_name_plural': 'Execuções de análise',
                'ordering': ['-started_at'],
            },
        ),
    ]
