from functools import wraps

import logging

from . import exceptions
from .utils import get_setting

logger = logging.getLogger(__name__)


def retrying(attempt_func):
    # attempt_func returns None on rejection; `budget` may be passed by
    # keyword to override ANIMALAB_RETRY_BUDGET.
    @wraps(attempt_func)
    def _wrapped(*args, **kwargs):
        budget = kwargs.pop('budget', None) or \
            get_setting('ANIMALAB_RETRY_BUDGET')
        for attempt in range(1, budget + 1):
            result = attempt_func(*args, **kwargs)
            if result is not None:
                logger.debug('%s accepted after %d attempts',
                             attempt_func.__name__, attempt)
                return result
        logger.warning('%s exhausted its retry budget of %d',
                       attempt_func.__name__, budget)
        raise exceptions.RetryBudgetExceeded(budget)
    return _wrapped


def trace_kinds(*kinds):
    # Rejects WalkTrace arguments whose kind is not listed.
    def _decorator(func):
        @wraps(func)
        def _wrapped(trace, *args, **kwargs):
            if trace.kind not in kinds:
                raise exceptions.DomainError(func.__name__, trace.kind)
            return func(trace, *args, **kwargs)
        return _wrapped
    return _decorator
