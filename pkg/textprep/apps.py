from django.apps import AppConfig


class TextprepConfig(AppConfig):
    name = 'textprep'
    verbose_name = 'Pré-processamento de texto'
