from django.conf import settings
from django.core.exceptions import ImproperlyConfigured
from django.utils.translation import gettext, gettext_lazy

default_app_config = 'animalab.apps.AnimalabConfig'

__version__ = '0.4.0'


def start():
    # Only validates what the project declared, defaults live in hardcode.
    STEP_CAP = getattr(settings, 'ANIMALAB_STEP_CAP', None)
    ENUMERATION_CAP = getattr(settings, 'ANIMALAB_ENUMERATION_CAP', None)
    ENUMERATE_MAX_SIZE = getattr(
        settings, 'ANIMALAB_ENUMERATE_MAX_SIZE', None)
    RETRY_BUDGET = getattr(settings, 'ANIMALAB_RETRY_BUDGET', None)
    TASKS_EAGER = getattr(settings, 'ANIMALAB_TASKS_EAGER', None)

    if STEP_CAP is not None and (
            not isinstance(STEP_CAP, int) or STEP_CAP < 1):
        raise ImproperlyConfigured(
            "ANIMALAB_STEP_CAP must be a positive number. (Integer)"
        )
    if ENUMERATION_CAP is not None and (
            not isinstance(ENUMERATION_CAP, int) or
            not (1 <= ENUMERATION_CAP <= 30)):
        raise ImproperlyConfigured(
            "ANIMALAB_ENUMERATION_CAP must be between 1 and 30. (Integer)"
        )
    if ENUMERATE_MAX_SIZE is not None and (
            not isinstance(ENUMERATE_MAX_SIZE, int) or
            ENUMERATE_MAX_SIZE < 1):
        raise ImproperlyConfigured(
            "ANIMALAB_ENUMERATE_MAX_SIZE must be a positive number. (Integer)"
        )
    if RETRY_BUDGET is not None and (
            not isinstance(RETRY_BUDGET, int) or RETRY_BUDGET < 1):
        raise ImproperlyConfigured(
            "ANIMALAB_RETRY_BUDGET must be a positive number. (Integer)"
        )
    if TASKS_EAGER is not None and TASKS_EAGER not in [True, False]:
        raise ImproperlyConfigured(
            "ANIMALAB_TASKS_EAGER must be defined as True or False. (Boolean)"
        )


def get_version_string():
    return 'animalab %s' % __version__
