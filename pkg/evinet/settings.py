"""
Django settings for evinet project.

No hay base de datos ni vistas web: el proyecto se usa desde manage.py
(validate, run, table, equations, conflicts) y como biblioteca.
"""

from pathlib import Path
import os

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# Lee de variable de entorno, si no existe usa una por defecto (solo para desarrollo)
SECRET_KEY = os.environ.get('SECRET_KEY', 'django-insecure-evinet-key-change-me')

DEBUG = os.environ.get('DEBUG', 'True') == 'True'

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    # Apps de estimación (orden: núcleo primero, la consola al final)
    'estimacion.nucleo_red',
    'estimacion.evidencial',
    'estimacion.tabla_simbolica',
    'estimacion.dsl_red',
    'estimacion.consola',
]

# Sin base de datos: los tests usan SimpleTestCase
DATABASES = {}

USE_I18N = True

LANGUAGE_CODE = 'es-ar'

TIME_ZONE = 'America/Argentina/Buenos_Aires'

USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'


# Límites de tamaño para la tabla de transferencia y las ecuaciones.
# El costo es (2^n - 1) * 2^m transformaciones.
EVINET_MAX_PLACES = int(os.environ.get('EVINET_MAX_PLACES', '16'))
EVINET_MAX_TRANSITIONS = int(os.environ.get('EVINET_MAX_TRANSITIONS', '16'))


# Logging: todo a stderr, así stdout queda limpio para los registros de trayectoria
EVINET_LOG_LEVEL = os.environ.get('EVINET_LOG_LEVEL', 'WARNING').upper()

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {asctime} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'stream': 'ext://sys.stderr',
            'formatter': 'verbose',
        },
    },
    'loggers': {
        'estimacion': {
            'handlers': ['console'],
            'level': EVINET_LOG_LEVEL,
            'propagate': False,
        },
    },
}
