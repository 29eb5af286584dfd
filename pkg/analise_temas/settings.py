"""
Django settings for the analise_temas project.

Only the admin (to browse recorded analysis runs) and the management commands
that drive the theme-extraction pipeline are served; no other web surface.
"""

from pathlib import Path
from decouple import config

BASE_DIR = Path(__file__).resolve().parent.parent


# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = config('SECRET_KEY', default='django-insecure-temas-4n1l1s3-l0c4l-0nly')

DEBUG = config('DEBUG', default=True, cast=bool)

ALLOWED_HOSTS = config('ALLOWED_HOSTS', default='localhost,127.0.0.1', cast=lambda v: [h.strip() for h in v.split(',')])


INSTALLED_APPS = [
    'django.contrib.admin',
    'django.contrib.auth',
    'django.contrib.contenttypes',
    'django.contrib.sessions',
    'django.contrib.messages',
    'django.contrib.staticfiles',
    'ingest',
    'botfilter',
    'textprep',
    'dtm',
    'factor',
    'themes',
    'geoloc',
    'pipeline',
]

MIDDLEWARE = [
    'django.middleware.security.SecurityMiddleware',
    'django.contrib.sessions.middleware.SessionMiddleware',
    'django.middleware.common.CommonMiddleware',
    'django.middleware.csrf.CsrfViewMiddleware',
    'django.contrib.auth.middleware.AuthenticationMiddleware',
    'django.contrib.messages.middleware.MessageMiddleware',
    'django.middleware.clickjacking.XFrameOptionsMiddleware',
]

ROOT_URLCONF = 'analise_temas.urls'

TEMPLATES = [
    {
        'BACKEND': 'django.template.backends.django.DjangoTemplates',
        'DIRS': [],
        'APP_DIRS': True,
        'OPTIONS': {
            'context_processors': [
                'django.template.context_processors.request',
                'django.contrib.auth.context_processors.auth',
                'django.contrib.messages.context_processors.messages',
            ],
        },
    },
]


DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': config('DATABASE_PATH', default=str(BASE_DIR / 'db.sqlite3')),
    }
}


LANGUAGE_CODE = 'pt-pt'

TIME_ZONE = 'UTC'

USE_I18N = True

USE_TZ = True

STATIC_URL = 'static/'
STATIC_ROOT = BASE_DIR / 'staticfiles'

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'


# Logging
LOG_LEVEL = config('LOG_LEVEL', default='INFO')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {asctime} {name} {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'verbose',
        },
    },
    'loggers': {
        app: {'handlers': ['console'], 'level': LOG_LEVEL, 'propagate': False}
        for app in ('ingest', 'botfilter', 'textprep', 'dtm', 'factor', 'themes', 'geoloc', 'pipeline')
    },
}


# Analysis pipeline
# Environment override for every run's output directory (beats the config file).
TEMAS_OUTPUT_DIR = config('TEMAS_OUTPUT_DIR', default='')

# Defaults: 300 unigrams, five Ckmeans groups,
# 11 components, loadings above 0.1, top-30 tweets, top-10 countries.
ANALYSIS_DEFAULTS = {
    'TOP_N': config('TOP_N', default=300, cast=int),
    'MIN_TERMS': config('MIN_TERMS', default=1, cast=int),
    'BOT_K': config('BOT_K', default=5, cast=int),
    'K': config('COMPONENTS', default=11, cast=int),
    'LOADING_THRESHOLD': config('LOADING_THRESHOLD', default=0.1, cast=float),
    'TOP_DOCS': config('TOP_DOCS', default=30, cast=int),
    'GEO_TOP_N': config('GEO_TOP_N', default=10, cast=int),
    'VARIMAX_TOL': config('VARIMAX_TOL', default=1e-10, cast=float),
    'VARIMAX_MAX_ITER': config('VARIMAX_MAX_ITER', default=1000, cast=int),
    'ON_MALFORMED': config('ON_MALFORMED', default='skip'),
}

K_SWEEP_GRID = (5, 8, 11, 30, 100)

# Recommended band for Botometer thresholds.
BOT_THRESHOLD_RANGE = (0.43, 0.49)
