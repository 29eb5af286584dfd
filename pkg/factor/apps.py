from django.apps import AppConfig


class FactorConfig(AppConfig):
    name = 'factor'
    verbose_name = 'Análise fatorial'
