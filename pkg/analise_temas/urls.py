"""
URL configuration for analise_temas.

Only the admin is exposed; analysis runs are driven from management commands.
"""
from django.contrib import admin
from django.urls import path

urlpatterns = [
    path('admin/', admin.site.urls),
]
