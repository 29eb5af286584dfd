from django.db import models


class AnalysisRun(models.Model):
    KIND_CHOICES = [
        ('RUN', 'Execução completa'),
        ('SWEEP', 'Varrimento de k'),
        ('COMPARE', 'Comparação'),
    ]
    STATUS_CHOICES = [
        ('RUNNING', 'Em curso'),
        ('DONE', 'Concluída'),
        ('FAILED', 'Falhada'),
    ]

    kind = models.CharField(max_length=10, choices=KIND_CHOICES, default='RUN')
    status = models.CharField(max_length=10, choices=STATUS_CHOICES, default='RUNNING')
    language = models.CharField(max_length=8, blank=True)
    input_path = models.CharField(max_length=500, blank=True)
    output_dir = models.CharField(max_length=500)
    components = models.PositiveIntegerField(null=True, blank=True)
    fit = models.FloatField(null=True, blank=True)
    variance_share = models.FloatField(null=True, blank=True)
    bot_threshold = models.FloatField(null=True, blank=True)
    stage_counts = models.JSONField(default=dict, blank=True)
    started_at = models.DateTimeField(auto_now_add=True)
    finished_at = models.DateTimeField(null=True, blank=True)
    error_message = models.TextField(blank=True, null=True)

    class Meta:
        verbose_name = 'Execução de análise'
        verbose_name_plural = 'Execuções de análise'
        ordering = ['-started_at']

    def __str__(self):
        return f"{self.get_kind_display()} {self.language} - {self.started_at.strftime('%d/%m/%Y %H:%M')}"
