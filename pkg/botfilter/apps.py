from django.apps import AppConfig


class BotfilterConfig(AppConfig):
    name = 'botfilter'
    verbose_name = 'Filtro de bots'
