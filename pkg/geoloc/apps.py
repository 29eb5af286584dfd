from django.apps import AppConfig


class GeolocConfig(AppConfig):
    name = 'geoloc'
    verbose_name = 'Geolocalização'
