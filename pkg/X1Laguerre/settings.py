"""
Django settings for the X1Laguerre project.

The project is a numerical library driven through management commands:
there is no database, no URL routing and no template layer.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/5.2/ref/settings/
"""

from pathlib import Path
from decouple import config, Csv

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


# Only used by Django's signing machinery; nothing here is served.
SECRET_KEY = config('SECRET_KEY', default='x1lag-local-only')

DEBUG = config('DEBUG', default=False, cast=bool)

ALLOWED_HOSTS = config('ALLOWED_HOSTS', default='localhost', cast=Csv())

# Application definition

INSTALLED_APPS = [
    'django.contrib.contenttypes',
    'django.contrib.auth',
    'rest_framework',

    'core',
]

REST_FRAMEWORK = {
    'DEFAULT_RENDERER_CLASSES': (
        'rest_framework.renderers.JSONRenderer',
        'core.renderers.MomentTableCSVRenderer',
    ),
    'UNAUTHENTICATED_USER': None,
    # Floats keep their repr(); digit rounding happens in the serializers.
    'COERCE_DECIMAL_TO_STRING': False,
}

# No persistence layer.
DATABASES = {}

# Internationalization

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'


# =========================
# Numerical configuration
# =========================
# Every tolerance and strategy knob lives here; core.conf.PrecisionConfig
# layers the X1LAG_CONFIG file and command-line flags on top.

X1LAG = {
    'TARGET_REL_TOL': config('X1LAG_TARGET_REL_TOL', default=1e-10, cast=float),
    'QUAD_STRATEGY': config('X1LAG_QUAD_STRATEGY', default='split_tanh_sinh'),
    'QUAD_MAX_LEVELS': config('X1LAG_QUAD_MAX_LEVELS', default=10, cast=int),
    'QUAD_TRUNCATION': config('X1LAG_QUAD_TRUNCATION', default=0.0, cast=float),
    'GAUSS_NODES': config('X1LAG_GAUSS_NODES', default=120, cast=int),
    'EXPINT_SWITCH': config('X1LAG_EXPINT_SWITCH', default=1.0, cast=float),
    'EXTENDED_PRECISION': config('X1LAG_EXTENDED_PRECISION', default=False, cast=bool),
    'EXTENDED_DPS': config('X1LAG_EXTENDED_DPS', default=30, cast=int),
    'DIGITS': config('X1LAG_DIGITS', default=17, cast=int),
    'WORKERS': config('X1LAG_WORKERS', default=4, cast=int),
    'MAX_FLOAT_DEGREE': config('X1LAG_MAX_FLOAT_DEGREE', default=10, cast=int),
    'REPRESENTATION_TOL': config('X1LAG_REPRESENTATION_TOL', default=1e-8, cast=float),
    'ROUTE_TOL': config('X1LAG_ROUTE_TOL', default=1e-9, cast=float),
}

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {asctime} {module} {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            # stdout carries data; diagnostics go to stderr.
            'class': 'logging.StreamHandler',
            'stream': 'ext://sys.stderr',
            'formatter': 'verbose',
        },
    },
    'root': {
        'handlers': ['console'],
        'level': 'WARNING',
    },
    'loggers': {
        'django': {
            'handlers': ['console'],
            'level': 'WARNING',
            'propagate': False,
        },
        'core': {
            'handlers': ['console'],
            'level': config('X1LAG_LOG_LEVEL', default='WARNING'),
            'propagate': False,
        },
    },
}
