"""
`animalab` console script: the management command without a project.

Outside a Django project the app is configured with in-memory settings so
`animalab count --kind pyramid --n 10` works from any shell.
"""
import os
import sys

import django
from django.conf import settings

from . import get_version_string

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'simple': {'format': '%(levelname)s %(name)s: %(message)s'},
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
        },
    },
}


def configure():
    if 'DJANGO_SETTINGS_MODULE' not in os.environ and \
            not settings.configured:
        settings.configure(
            INSTALLED_APPS=['animalab'],
            LOGGING=LOGGING,
            USE_I18N=True,
        )
    django.setup()


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    if argv in (['--version'], ['-V']):
        sys.stdout.write(get_version_string() + '\n')
        return
    configure()
    from .management.commands.animalab import Command

    Command().run_from_argv(['animalab', 'animalab'] + argv)


if __name__ == '__main__':
    main()
