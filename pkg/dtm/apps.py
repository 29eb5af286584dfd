from django.apps import AppConfig


class DtmConfig(AppConfig):
    name = 'dtm'
    verbose_name = 'Matriz documento-termo'
