"""
Django settings for the animalab testing project.

Only the animalab app is installed; there are no models, views or
templates. Experiments run their streams through celery, eagerly unless
ANIMALAB_TASKS_EAGER is turned off and a broker is configured.
"""

import os

# Build paths inside the project like this: os.path.join(BASE_DIR, ...)
BASE_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))

SECRET_KEY = os.environ.get('DJANGO_SECRET_KEY', 'animalab-testing')

DEBUG = True

ALLOWED_HOSTS = []

INSTALLED_APPS = [
    'animalab',
]

DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': os.path.join(BASE_DIR, 'db.sqlite3'),
    }
}

# ANIMALAB
ANIMALAB_STEP_CAP = 10 ** 7
ANIMALAB_ENUMERATION_CAP = 22
ANIMALAB_ENUMERATE_MAX_SIZE = 12
ANIMALAB_RETRY_BUDGET = 10 ** 5
ANIMALAB_TASKS_EAGER = True

# CELERY STUFF
CELERY_BROKER_URL = os.environ.get('CELERY_BROKER_URL', 'memory://')
CELERY_RESULT_BACKEND = os.environ.get(
    'CELERY_RESULT_BACKEND', 'cache+memory://')
CELERY_ACCEPT_CONTENT = ['application/json']
CELERY_TASK_SERIALIZER = 'json'
CELERY_RESULT_SERIALIZER = 'json'
CELERY_TASK_ALWAYS_EAGER = True

# Internationalization
LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = True

USE_TZ = True

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'simple': {
            'format': '%(asctime)s %(levelname)s %(name)s: %(message)s',
        },
    },
    'handlers': {
        'console': {
            'level': 'DEBUG',
            'class': 'logging.StreamHandler',
            'formatter': 'simple',
        },
    },
    'loggers': {
        'animalab': {
            'handlers': ['console'],
            'level': os.environ.get('ANIMALAB_LOG_LEVEL', 'WARNING'),
            'propagate': False,
        },
        'celery': {
            'handlers': ['console'],
            'level': 'WARNING',
        },
    }
}
